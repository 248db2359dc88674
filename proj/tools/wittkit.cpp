// wittkit: exact truncated Witt vector arithmetic, Gauss norms, Newton
// polygons, Teichmuller expansions, localization norms and Hensel lifting
// over F_p polynomial rings. All output is deterministic for scripting.

#include <CLI11.hpp>
#include <json.hpp>

#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "wittkit/check.hpp"
#include "wittkit/error.hpp"
#include "wittkit/etale.hpp"
#include "wittkit/expand.hpp"
#include "wittkit/gauss.hpp"
#include "wittkit/valuation.hpp"
#include "wittkit/witt.hpp"

namespace {

using namespace wittkit;

struct RingFlags {
  unsigned p = 2;
  unsigned len = 1;
  unsigned vars = 0;
  std::string mod;

  CtxPtr ctx() const {
    CoeffRing ring = CoeffRing::fp(p);
    if (mod.empty()) return PolyRingCtx::make(ring, vars);
    return PolyRingCtx::quotient(ring, vars, MultiPoly::parse(ring, vars, mod));
  }
};

void add_ring_flags(CLI::App* cmd, RingFlags& rf, bool with_len = true) {
  cmd->add_option("--p", rf.p, "prime of the base ring")->required();
  if (with_len) cmd->add_option("--len", rf.len, "truncation length n+1")->required();
  cmd->add_option("--vars", rf.vars, "number of variables T1..Td");
  cmd->add_option("--mod", rf.mod, "monic modulus in the last variable (quotient base)");
}

std::vector<Rat> parse_weights(const std::string& text) {
  std::vector<Rat> out;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t comma = text.find(',', start);
    std::string item = text.substr(start, comma == std::string::npos ? comma : comma - start);
    if (!item.empty()) out.push_back(rat_parse(item));
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  return out;
}

SpecPtr spec_from_flags(const RingFlags& rf, const std::string& weights,
                        const std::string& spec_text) {
  if (!spec_text.empty()) return ValuationSpec::parse(CoeffRing::fp(rf.p), spec_text);
  if (rf.vars == 0) return ValuationSpec::trivial();
  std::vector<Rat> w =
      weights.empty() ? std::vector<Rat>(rf.vars, Rat(1)) : parse_weights(weights);
  return ValuationSpec::weighted_degree(std::move(w));
}

WittVector read_wv(const RingFlags& rf, const std::string& literal) {
  return WittVector::parse(literal, rf.ctx(), rf.len);
}

int run(int argc, char** argv) {
  CLI::App app{"exact arithmetic for truncated Witt vectors over F_p polynomial rings"};
  app.require_subcommand(1);
  app.footer(
      "Grammar:\n"
      "  polynomial   terms joined by + or -, term = [coeff*]T<i>[^e] products,\n"
      "               e.g. 2*T1^3*T2 + T3 + 1; variables T1..Td; whitespace ignored\n"
      "  witt vector  wv[f0;f1;...] with the ring taken from --p/--vars/--mod,\n"
      "               or self-contained wv(p=2, vars=1)[f0;f1]\n"
      "  rational     num/den in lowest terms, den > 0; integers omit /den;\n"
      "               infinite values print as inf / -inf\n"
      "  spec         trivial | degree(d=[w1,...]) |\n"
      "               quotient(inner=<spec>, d=<rat>, f=<poly>) |\n"
      "               loc(inner=<spec>, f=<poly>, d=<rat>)\n"
      "Exit codes: 0 success, 1 domain error (name on stderr), 2 usage error.");

  // add / mul
  RingFlags rf_add, rf_mul;
  std::vector<std::string> operands_add, operands_mul;
  auto* cmd_add = app.add_subcommand("add", "Witt vector sum");
  add_ring_flags(cmd_add, rf_add);
  cmd_add->add_option("operands", operands_add)->expected(2);
  auto* cmd_mul = app.add_subcommand("mul", "Witt vector product");
  add_ring_flags(cmd_mul, rf_mul);
  cmd_mul->add_option("operands", operands_mul)->expected(2);

  // inv / v / f / teich / ghost
  RingFlags rf_inv, rf_v, rf_f, rf_teich, rf_ghost;
  std::string arg_inv, arg_v, arg_f, arg_teich, arg_ghost;
  auto* cmd_inv = app.add_subcommand("inv", "multiplicative inverse");
  add_ring_flags(cmd_inv, rf_inv);
  cmd_inv->add_option("operand", arg_inv)->required();
  auto* cmd_v = app.add_subcommand("v", "Verschiebung shift");
  add_ring_flags(cmd_v, rf_v);
  cmd_v->add_option("operand", arg_v)->required();
  auto* cmd_f = app.add_subcommand("f", "Frobenius");
  add_ring_flags(cmd_f, rf_f);
  cmd_f->add_option("operand", arg_f)->required();
  auto* cmd_teich = app.add_subcommand("teich", "Teichmuller representative");
  add_ring_flags(cmd_teich, rf_teich);
  cmd_teich->add_option("element", arg_teich)->required();
  auto* cmd_ghost = app.add_subcommand("ghost", "ghost components of the integral lift");
  add_ring_flags(cmd_ghost, rf_ghost);
  cmd_ghost->add_option("operand", arg_ghost)->required();

  // gauss / np / radius / expand / breve
  RingFlags rf_gauss, rf_np, rf_radius, rf_expand, rf_breve;
  std::string arg_gauss, arg_np, arg_radius, arg_expand, arg_breve;
  std::string w_gauss, w_np, w_radius, spec_gauss, spec_np, spec_radius;
  std::string eps_gauss = "1", eps_breve = "1", delta_radius = "1", out_np = "tsv";
  auto* cmd_gauss = app.add_subcommand("gauss", "truncated Gauss norm");
  add_ring_flags(cmd_gauss, rf_gauss);
  cmd_gauss->add_option("--weights", w_gauss, "comma-separated positive weights");
  cmd_gauss->add_option("--spec", spec_gauss, "valuation spec literal");
  cmd_gauss->add_option("--epsilon", eps_gauss, "positive rational epsilon");
  cmd_gauss->add_option("operand", arg_gauss)->required();
  auto* cmd_np = app.add_subcommand("np", "Newton polygon vertices");
  add_ring_flags(cmd_np, rf_np);
  cmd_np->add_option("--weights", w_np, "comma-separated positive weights");
  cmd_np->add_option("--spec", spec_np, "valuation spec literal");
  cmd_np->add_option("--out", out_np, "tsv or svg")->check(CLI::IsMember({"tsv", "svg"}));
  cmd_np->add_option("operand", arg_np)->required();
  auto* cmd_radius = app.add_subcommand("radius", "convergence radius certificate");
  add_ring_flags(cmd_radius, rf_radius);
  cmd_radius->add_option("--weights", w_radius, "comma-separated positive weights");
  cmd_radius->add_option("--spec", spec_radius, "valuation spec literal");
  cmd_radius->add_option("--delta", delta_radius, "positive rational delta");
  cmd_radius->add_option("operand", arg_radius)->required();
  auto* cmd_expand = app.add_subcommand("expand", "Teichmuller monomial expansion (JSON lines)");
  add_ring_flags(cmd_expand, rf_expand);
  cmd_expand->add_option("operand", arg_expand)->required();
  auto* cmd_breve = app.add_subcommand("breve", "breve norm from the expansion");
  add_ring_flags(cmd_breve, rf_breve);
  cmd_breve->add_option("--epsilon", eps_breve, "positive rational epsilon");
  cmd_breve->add_option("operand", arg_breve)->required();

  // hensel
  RingFlags rf_hensel;
  std::vector<std::string> hensel_coeffs;
  std::string hensel_root;
  auto* cmd_hensel = app.add_subcommand("hensel", "lift a simple residue root");
  add_ring_flags(cmd_hensel, rf_hensel);
  cmd_hensel->add_option("--coeff", hensel_coeffs, "coefficients, constant term first")
      ->required();
  cmd_hensel->add_option("--root", hensel_root, "residue root in the base ring")->required();

  // locnorm
  RingFlags rf_loc;
  std::string loc_num, loc_f, loc_weights;
  unsigned loc_m = 0;
  std::string loc_d = "1";
  unsigned loc_bound = 0;
  auto* cmd_loc = app.add_subcommand("locnorm", "localization norm profile of a/f^m");
  cmd_loc->add_option("--p", rf_loc.p, "prime of the base ring")->required();
  cmd_loc->add_option("--vars", rf_loc.vars, "number of variables")->required();
  cmd_loc->add_option("--weights", loc_weights, "comma-separated positive weights");
  cmd_loc->add_option("--f", loc_f, "localized element")->required();
  cmd_loc->add_option("--m", loc_m, "denominator exponent");
  cmd_loc->add_option("--d", loc_d, "localization parameter d");
  cmd_loc->add_option("--bound", loc_bound, "representation search bound (default m+4)");
  cmd_loc->add_option("numerator", loc_num)->required();

  // check
  std::string suite = "all";
  std::uint64_t seed = 0;
  unsigned check_p = 0;
  long check_cases = 0;
  auto* cmd_check = app.add_subcommand("check", "run a property suite");
  cmd_check->add_option("suite", suite, "axioms|ghost|norms|sandwich|expand|etale|hensel|all");
  cmd_check->add_option("--seed", seed, "random seed");
  cmd_check->add_option("--p", check_p, "restrict to one prime");
  cmd_check->add_option("--cases", check_cases, "override the case count");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  if (cmd_add->parsed()) {
    std::cout << witt_add(read_wv(rf_add, operands_add[0]), read_wv(rf_add, operands_add[1])).str()
              << "\n";
  } else if (cmd_mul->parsed()) {
    std::cout << witt_mul(read_wv(rf_mul, operands_mul[0]), read_wv(rf_mul, operands_mul[1])).str()
              << "\n";
  } else if (cmd_inv->parsed()) {
    std::cout << witt_inverse(read_wv(rf_inv, arg_inv)).str() << "\n";
  } else if (cmd_v->parsed()) {
    std::cout << verschiebung(read_wv(rf_v, arg_v)).str() << "\n";
  } else if (cmd_f->parsed()) {
    std::cout << frobenius(read_wv(rf_f, arg_f)).str() << "\n";
  } else if (cmd_teich->parsed()) {
    auto ctx = rf_teich.ctx();
    MultiPoly a = MultiPoly::parse(ctx->ring, ctx->num_vars, arg_teich);
    std::cout << teichmuller(ctx, rf_teich.len, a).str() << "\n";
  } else if (cmd_ghost->parsed()) {
    std::cout << ghost_of(read_wv(rf_ghost, arg_ghost)).str() << "\n";
  } else if (cmd_gauss->parsed()) {
    auto spec = spec_from_flags(rf_gauss, w_gauss, spec_gauss);
    std::cout << gauss_norm(read_wv(rf_gauss, arg_gauss), *spec, rat_parse(eps_gauss)).str()
              << "\n";
  } else if (cmd_np->parsed()) {
    auto spec = spec_from_flags(rf_np, w_np, spec_np);
    WittVector x = read_wv(rf_np, arg_np);
    NewtonPolygon np = newton_polygon(x, *spec);
    if (out_np == "tsv")
      std::cout << polygon_tsv(np);
    else
      std::cout << polygon_svg(np, norm_profile(x, *spec));
  } else if (cmd_radius->parsed()) {
    auto spec = spec_from_flags(rf_radius, w_radius, spec_radius);
    RadiusCertificate cert =
        radius_certificate(read_wv(rf_radius, arg_radius), *spec, rat_parse(delta_radius));
    std::cout << "epsilon: " << rat_str(cert.epsilon) << "\n";
    std::cout << "c: " << rat_str(cert.c) << "\n";
  } else if (cmd_expand->parsed()) {
    Expansion e = teich_expand(read_wv(rf_expand, arg_expand));
    for (const auto& [k, xi] : e.terms()) {
      nlohmann::ordered_json line;
      std::vector<std::string> ks;
      for (unsigned i = 0; i < rf_expand.vars; ++i) ks.push_back(rat_str(k.component(i)));
      line["k"] = ks;
      line["u"] = k.u;
      line["xi"] = xi.str(true);
      std::cout << line.dump() << "\n";
    }
  } else if (cmd_breve->parsed()) {
    Expansion e = teich_expand(read_wv(rf_breve, arg_breve));
    std::cout << breve_norm(e, rat_parse(eps_breve)).str() << "\n";
  } else if (cmd_hensel->parsed()) {
    auto ctx = rf_hensel.ctx();
    std::vector<WittVector> coeffs;
    for (const auto& c : hensel_coeffs) coeffs.push_back(read_wv(rf_hensel, c));
    MultiPoly root = MultiPoly::parse(ctx->ring, ctx->num_vars, hensel_root);
    WittVector alpha = hensel_lift(coeffs, root);
    WittVector residue = witt_poly_eval(coeffs, alpha);
    std::cout << "alpha: " << alpha.str() << "\n";
    std::cout << "residue: " << (residue.is_zero() ? "0" : residue.str()) << "\n";
  } else if (cmd_loc->parsed()) {
    CoeffRing ring = CoeffRing::fp(rf_loc.p);
    MultiPoly num = MultiPoly::parse(ring, rf_loc.vars, loc_num);
    MultiPoly f = MultiPoly::parse(ring, rf_loc.vars, loc_f);
    auto spec = spec_from_flags(rf_loc, loc_weights, "");
    unsigned bound = loc_bound ? loc_bound : loc_m + 4;
    LocalizationProfile prof =
        localization_profile(LocElem{num, loc_m, f}, *spec, rat_parse(loc_d), bound);
    std::cout << "theta: " << prof.theta << "\n";
    std::cout << "sigma: " << prof.sigma.str() << "\n";
    std::cout << "tau: " << prof.tau.str() << "\n";
    std::cout << "nu_prime: " << prof.nu_prime.str() << (prof.nu_prime_exact ? " exact" : " bound")
              << "\n";
    std::cout << "mu: " << prof.mu.str() << "\n";
  } else if (cmd_check->parsed()) {
    std::optional<unsigned> pf;
    if (check_p) pf = check_p;
    auto reports = check::run_suites(suite, seed, pf, check_cases);
    bool all_ok = true;
    for (const auto& rep : reports) {
      std::cout << rep.line() << "\n";
      all_ok = all_ok && rep.ok();
    }
    return all_ok ? 0 : 1;
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const wittkit::Error& e) {
    std::cerr << e.name() << ": " << e.what() << "\n";
    return e.name() == "ParseError" ? 2 : 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
