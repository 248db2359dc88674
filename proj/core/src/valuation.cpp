#include "wittkit/valuation.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

namespace wittkit {

namespace {

ExtRat weighted_value(const std::vector<Rat>& weights, const MultiPoly& x) {
  if (x.num_vars() != weights.size())
    fail("SpecMismatch", "weighted degree spec over " + std::to_string(weights.size()) +
                             " variables applied to a polynomial in " +
                             std::to_string(x.num_vars()));
  if (x.is_zero()) return ExtRat::infinity();
  bool first = true;
  Rat best;
  for (const auto& [m, c] : x.terms()) {
    Rat w(0);
    for (unsigned i = 0; i < weights.size(); ++i)
      if (m[i]) w += weights[i] * Rat(m[i]);
    if (first || w > best) {
      best = w;
      first = false;
    }
  }
  return ExtRat(Rat(-best));
}

// Scale f by the inverse of its leading coefficient in `var` when that
// coefficient is a unit constant; nullopt otherwise.
std::optional<MultiPoly> monic_scaled(const MultiPoly& f, unsigned var) {
  long m = f.degree_in(var);
  if (m < 1) return std::nullopt;
  MultiPoly lead = f.coeff_of(var, static_cast<std::uint32_t>(m));
  if (!lead.is_constant() || lead.is_zero()) return std::nullopt;
  Int c = lead.constant_value();
  if (f.ring().is_fp()) {
    Int m0(f.ring().p());
    Int inv;
    if (mpz_invert(inv.get_mpz_t(), c.get_mpz_t(), m0.get_mpz_t()) == 0) return std::nullopt;
    return f * MultiPoly::constant(f.ring(), f.num_vars(), inv);
  }
  if (c == 1) return f;
  if (c == -1) return -f;
  return std::nullopt;
}

}  // namespace

SpecPtr ValuationSpec::trivial() {
  return SpecPtr(new ValuationSpec());
}

SpecPtr ValuationSpec::weighted_degree(std::vector<Rat> weights) {
  if (weights.empty()) fail("BadWeights", "weighted degree needs at least one weight");
  for (const auto& w : weights)
    if (w <= 0) fail("BadWeights", "weights must be positive");
  auto s = new ValuationSpec();
  s->kind_ = ValKind::WeightedDegree;
  s->weights_ = std::move(weights);
  return SpecPtr(s);
}

SpecPtr ValuationSpec::monic_quotient(SpecPtr inner, Rat d, MultiPoly f) {
  if (!inner) fail("SpecMismatch", "missing inner spec");
  if (d <= 0) fail("BadWeights", "quotient parameter d must be positive");
  auto in_arity = inner->arity();
  if (in_arity && f.num_vars() != *in_arity + 1)
    fail("SpecMismatch", "modulus arity must be inner arity + 1");
  if (f.num_vars() == 0) fail("SpecMismatch", "modulus needs a distinguished variable");
  unsigned var = f.num_vars() - 1;
  long m = f.degree_in(var);
  if (m < 1 || !f.coeff_of(var, static_cast<std::uint32_t>(m)).is_one())
    fail("NotMonic", "quotient modulus must be monic in the last variable");
  // d must dominate the inner values of the non-leading coefficients.
  for (long i = 0; i < m; ++i) {
    MultiPoly ci = f.coeff_of(var, static_cast<std::uint32_t>(i)).drop_var(var);
    if (ci.is_zero()) continue;
    ExtRat v = eval_valuation(*inner, ci);
    if (!(ExtRat(d) > v))
      fail("BadWeights", "quotient parameter d must exceed the inner value " + v.str() +
                             " of coefficient " + ci.str());
  }
  auto s = new ValuationSpec();
  s->kind_ = ValKind::MonicQuotient;
  s->inner_ = std::move(inner);
  s->d_ = std::move(d);
  s->f_ = std::move(f);
  return SpecPtr(s);
}

SpecPtr ValuationSpec::localization(SpecPtr inner, MultiPoly f, Rat d) {
  if (!inner) fail("SpecMismatch", "missing inner spec");
  if (d <= 0) fail("BadWeights", "localization parameter d must be positive");
  if (f.is_zero()) fail("ZeroDenominator", "localization at 0");
  auto in_arity = inner->arity();
  if (in_arity && f.num_vars() != *in_arity)
    fail("SpecMismatch", "localized element arity must match the inner spec");
  auto s = new ValuationSpec();
  s->kind_ = ValKind::Localization;
  s->inner_ = std::move(inner);
  s->d_ = std::move(d);
  s->f_ = std::move(f);
  return SpecPtr(s);
}

const MultiPoly& ValuationSpec::f() const {
  if (!f_) fail("SpecMismatch", "spec has no attached polynomial");
  return *f_;
}

std::optional<unsigned> ValuationSpec::arity() const {
  switch (kind_) {
    case ValKind::Trivial: return std::nullopt;
    case ValKind::WeightedDegree: return static_cast<unsigned>(weights_.size());
    case ValKind::MonicQuotient: return f_->num_vars();
    case ValKind::Localization: return f_->num_vars();
  }
  return std::nullopt;
}

bool ValuationSpec::operator==(const ValuationSpec& o) const {
  if (kind_ != o.kind_) return false;
  switch (kind_) {
    case ValKind::Trivial: return true;
    case ValKind::WeightedDegree: return weights_ == o.weights_;
    default:
      return d_ == o.d_ && *f_ == *o.f_ && *inner_ == *o.inner_;
  }
}

ExtRat eval_valuation(const ValuationSpec& spec, const MultiPoly& x) {
  switch (spec.kind()) {
    case ValKind::Trivial:
      return x.is_zero() ? ExtRat::infinity() : ExtRat(0);
    case ValKind::WeightedDegree:
      return weighted_value(spec.weights(), x);
    case ValKind::MonicQuotient: {
      const MultiPoly& f = spec.f();
      if (x.num_vars() != f.num_vars())
        fail("SpecMismatch", "quotient spec applied to an element of the wrong ring");
      unsigned var = f.num_vars() - 1;
      MultiPoly rep = monic_divide(x, f, var).second;
      return poly_value_in_var(rep, var, *spec.inner(), spec.d());
    }
    case ValKind::Localization:
      return eval_valuation(spec, LocElem{x, 0, spec.f()});
  }
  fail("SpecMismatch", "unknown spec kind");
}

ExtRat eval_valuation(const ValuationSpec& spec, const QuotElem& x) {
  if (spec.kind() != ValKind::MonicQuotient)
    fail("SpecMismatch", "quotient element needs a quotient spec");
  if (!(*x.ctx()->modulus == spec.f()))
    fail("SpecMismatch", "quotient element modulus differs from the spec modulus");
  return eval_valuation(spec, x.rep());
}

ExtRat eval_valuation(const ValuationSpec& spec, const LocElem& x) {
  if (spec.kind() != ValKind::Localization)
    fail("SpecMismatch", "localized element needs a localization spec");
  if (!(x.f == spec.f()))
    fail("SpecMismatch", "fraction denominator differs from the spec denominator");
  LocElem z = loc_reduce(x.num, x.exp, x.f);
  if (z.num.is_zero()) return ExtRat::infinity();
  return eval_valuation(*spec.inner(), z.num) - ExtRat(Rat(spec.d() * Rat(z.exp)));
}

ExtRat product_order(std::span<const ExtRat> values) {
  if (values.empty()) fail("EmptyInput", "product order of an empty tuple");
  ExtRat best = values[0];
  for (const auto& v : values.subspan(1)) best = ExtRat::min(best, v);
  return best;
}

ExtRat poly_value_in_var(const MultiPoly& g, unsigned var, const ValuationSpec& inner,
                         const Rat& d) {
  if (d <= 0) fail("BadWeights", "parameter d must be positive");
  if (g.is_zero()) return ExtRat::infinity();
  ExtRat best = ExtRat::infinity();
  long deg = g.degree_in(var);
  for (long i = 0; i <= deg; ++i) {
    MultiPoly ci = g.coeff_of(var, static_cast<std::uint32_t>(i));
    if (ci.is_zero()) continue;
    ExtRat v = eval_valuation(inner, ci.drop_var(var)) - ExtRat(Rat(d * Rat(i)));
    best = ExtRat::min(best, v);
  }
  return best;
}

bool is_regular(const MultiPoly& f, const ValuationSpec& inner, const Rat& d,
                unsigned var) {
  if (d <= 0) fail("BadWeights", "parameter d must be positive");
  long m = f.degree_in(var);
  if (m < 1 || !f.coeff_of(var, static_cast<std::uint32_t>(m)).is_one())
    fail("NotMonic", "regularity is defined for monic polynomials of positive degree");
  ExtRat low = ExtRat::infinity();
  for (long i = 0; i < m; ++i) {
    MultiPoly ai = f.coeff_of(var, static_cast<std::uint32_t>(i));
    if (ai.is_zero()) continue;
    low = ExtRat::min(low, eval_valuation(inner, ai.drop_var(var)) - ExtRat(Rat(d * Rat(i))));
  }
  return low > ExtRat(Rat(-d * Rat(m)));
}

namespace {

// Drop entry `var` from a weight vector.
std::vector<Rat> weights_without(const std::vector<Rat>& w, unsigned var) {
  std::vector<Rat> out;
  out.reserve(w.size() - 1);
  for (unsigned i = 0; i < w.size(); ++i)
    if (i != var) out.push_back(w[i]);
  return out;
}

// Value (A5e form) of the canonical partial-fraction representation
// z = u_0 + u_1/f + ... + u_m/f^m with deg_var u_l < deg_var f for l > 0.
ExtRat canonical_fraction_value(const MultiPoly& a, unsigned m, const MultiPoly& f_monic,
                                unsigned var, const ValuationSpec& inner, const Rat& d) {
  ExtRat best = ExtRat::infinity();
  MultiPoly g = a;
  for (unsigned l = m; l >= 1; --l) {
    auto [q, u] = monic_divide(g, f_monic, var);
    if (!u.is_zero())
      best = ExtRat::min(best, eval_valuation(inner, u) - ExtRat(Rat(d * Rat(l))));
    g = q;
    if (g.is_zero()) break;
  }
  if (!g.is_zero()) best = ExtRat::min(best, eval_valuation(inner, g));
  return best;
}

// Rescale the numerator to match a unit-rescaled denominator:
// a/f^m = (u^m a)/(u f)^m where u is the inverse of the leading constant.
MultiPoly rescale_numerator(const MultiPoly& a, unsigned m, const MultiPoly& f, unsigned var) {
  long deg = f.degree_in(var);
  Int lc = f.coeff_of(var, static_cast<std::uint32_t>(deg)).constant_value();
  if (lc == 1 || m == 0) return a;
  MultiPoly u(f.ring(), f.num_vars());
  if (f.ring().is_fp()) {
    Int p(f.ring().p());
    Int inv;
    mpz_invert(inv.get_mpz_t(), lc.get_mpz_t(), p.get_mpz_t());
    u = MultiPoly::constant(f.ring(), f.num_vars(), inv);
  } else {
    u = MultiPoly::constant(f.ring(), f.num_vars(), lc);  // lc == -1 is self-inverse
  }
  MultiPoly out = a;
  for (unsigned i = 0; i < m; ++i) out = out * u;
  return out;
}

}  // namespace

LocalizationProfile localization_profile(const LocElem& z_in, const ValuationSpec& inner,
                                         const Rat& d, unsigned search_bound) {
  if (d <= 0) fail("BadWeights", "localization parameter d must be positive");
  LocElem z = loc_reduce(z_in.num, z_in.exp, z_in.f);
  LocalizationProfile out;
  if (z.num.is_zero()) {
    out.nu_prime = out.tau = out.sigma = out.mu = ExtRat::infinity();
    out.nu_prime_exact = true;
    out.theta = 0;
    return out;
  }
  out.theta = z.exp;
  if (search_bound < out.theta)
    fail("BoundTooSmall", "search bound below the reduced exponent " + std::to_string(out.theta));

  out.sigma = eval_valuation(inner, z.num) - ExtRat(Rat(d * Rat(out.theta)));

  // tau over the representations a*f^r / f^(m+r), r <= search_bound.
  out.tau = ExtRat::neg_infinity();
  MultiPoly af = z.num;
  for (unsigned r = 0; r + out.theta <= search_bound; ++r) {
    if (r > 0) af = af * z.f;
    ExtRat v = eval_valuation(inner, af) - ExtRat(Rat(d * Rat(out.theta + r)));
    out.tau = ExtRat::max(out.tau, v);
  }

  // Exact branch: a distinguished variable making f monic (after unit scaling)
  // and regular there at the variable's own weight.
  if (inner.kind() == ValKind::WeightedDegree && z.f.num_vars() >= 1) {
    for (unsigned var = z.f.num_vars(); var-- > 0;) {
      auto fm = monic_scaled(z.f, var);
      if (!fm) continue;
      SpecPtr binner = z.f.num_vars() == 1
                           ? ValuationSpec::trivial()
                           : ValuationSpec::weighted_degree(weights_without(inner.weights(), var));
      if (!is_regular(*fm, *binner, inner.weights()[var], var)) continue;
      MultiPoly a_scaled = rescale_numerator(z.num, out.theta, z.f, var);
      out.nu_prime = canonical_fraction_value(a_scaled, out.theta, *fm, var, inner, d);
      out.nu_prime_exact = true;
      out.regular_var = var;
      break;
    }
  }

  if (!out.nu_prime_exact) {
    // Best lower bound over the representations searched so far.
    out.nu_prime = ExtRat::max(out.sigma, out.tau);
    for (unsigned var = z.f.num_vars(); var-- > 0;) {
      auto fm = monic_scaled(z.f, var);
      if (!fm) continue;
      MultiPoly a_scaled = rescale_numerator(z.num, out.theta, z.f, var);
      out.nu_prime =
          ExtRat::max(out.nu_prime, canonical_fraction_value(a_scaled, out.theta, *fm, var, inner, d));
      break;
    }
  }

  out.mu = ExtRat::min(out.nu_prime, ExtRat(Rat(-d * Rat(out.theta))));
  return out;
}

LocalizingReport verify_localizing(const MultiPoly& f, const ValuationSpec& inner,
                                   const Rat& C, const Rat& D, unsigned n_max,
                                   std::span<const MultiPoly> samples) {
  if (C <= 0) fail("BadConstants", "localizing constant C must be positive");
  if (D < 0) fail("BadConstants", "localizing constant D must be non-negative");
  if (n_max < 1) fail("BadConstants", "n_max must be at least 1");
  LocalizingReport report;
  for (std::size_t s = 0; s < samples.size(); ++s) {
    ExtRat vx = eval_valuation(inner, samples[s]);
    MultiPoly fx = samples[s];
    for (unsigned n = 1; n <= n_max; ++n) {
      fx = fx * f;
      ExtRat lhs = eval_valuation(inner, fx);
      ExtRat rhs = vx.scaled(C) + ExtRat(Rat(D * Rat(n)));
      if (!(lhs <= rhs)) {
        report.ok = false;
        report.counterexample = {s, n};
        return report;
      }
    }
  }
  return report;
}

SandwichReport verify_sandwich(std::span<const ExtRat> v1, std::span<const ExtRat> v2,
                               const SandwichCertificate& cert) {
  if (cert.c1 <= 0 || cert.c2 <= 0) fail("BadConstants", "sandwich constants c1, c2 must be positive");
  if (cert.d1 < 0 || cert.d2 < 0) fail("BadConstants", "sandwich offsets d1, d2 must be non-negative");
  if (v1.size() != v2.size()) fail("EmptyInput", "sample value lists differ in length");
  SandwichReport report;
  for (std::size_t i = 0; i < v1.size(); ++i) {
    bool first = v1[i] >= v2[i].scaled(cert.c2) - ExtRat(cert.d2);
    bool second = v2[i] >= v1[i].scaled(cert.c1) - ExtRat(cert.d1);
    if (!first || !second) {
      report.ok = false;
      report.violations.push_back(i);
    }
  }
  return report;
}

std::string ValuationSpec::str() const {
  switch (kind_) {
    case ValKind::Trivial: return "trivial";
    case ValKind::WeightedDegree: {
      std::ostringstream out;
      out << "degree(d=[";
      for (std::size_t i = 0; i < weights_.size(); ++i) {
        if (i) out << ",";
        out << rat_str(weights_[i]);
      }
      out << "])";
      return out.str();
    }
    case ValKind::MonicQuotient:
      return "quotient(inner=" + inner_->str() + ", d=" + rat_str(d_) + ", f=" + f_->str() + ")";
    case ValKind::Localization:
      return "loc(inner=" + inner_->str() + ", f=" + f_->str() + ", d=" + rat_str(d_) + ")";
  }
  return "trivial";
}

namespace {

struct SpecParser {
  const std::string& text;
  std::size_t pos = 0;
  CoeffRing ring;

  void skip_ws() {
    while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
  }

  [[noreturn]] void err(const std::string& what) {
    fail("ParseError", what + " at position " + std::to_string(pos) + " in '" + text + "'");
  }

  bool try_word(const std::string& w) {
    skip_ws();
    if (text.compare(pos, w.size(), w) == 0) {
      pos += w.size();
      return true;
    }
    return false;
  }

  void expect(char c) {
    skip_ws();
    if (pos >= text.size() || text[pos] != c) err(std::string("expected '") + c + "'");
    ++pos;
  }

  // Text chunk up to a top-level ',' or ')' (balanced parentheses/brackets).
  std::string chunk() {
    skip_ws();
    int depth = 0;
    std::size_t start = pos;
    while (pos < text.size()) {
      char c = text[pos];
      if (c == '(' || c == '[') ++depth;
      if (c == ')' || c == ']') {
        if (depth == 0) break;
        --depth;
      }
      if (c == ',' && depth == 0) break;
      ++pos;
    }
    std::string out = text.substr(start, pos - start);
    while (!out.empty() && std::isspace(static_cast<unsigned char>(out.back()))) out.pop_back();
    return out;
  }

  std::vector<Rat> rat_list() {
    expect('[');
    std::vector<Rat> out;
    for (;;) {
      skip_ws();
      std::size_t start = pos;
      while (pos < text.size() && text[pos] != ',' && text[pos] != ']') ++pos;
      std::string item = text.substr(start, pos - start);
      while (!item.empty() && std::isspace(static_cast<unsigned char>(item.back()))) item.pop_back();
      out.push_back(rat_parse(item));
      if (pos >= text.size()) err("unterminated list");
      if (text[pos] == ']') {
        ++pos;
        break;
      }
      ++pos;  // ','
    }
    return out;
  }

  SpecPtr parse() {
    skip_ws();
    if (try_word("trivial")) return ValuationSpec::trivial();
    if (try_word("degree")) {
      expect('(');
      if (!try_word("d=")) err("expected d=");
      auto w = rat_list();
      expect(')');
      return ValuationSpec::weighted_degree(std::move(w));
    }
    if (try_word("quotient")) {
      expect('(');
      if (!try_word("inner=")) err("expected inner=");
      SpecPtr inner = parse();
      expect(',');
      if (!try_word("d=")) err("expected d=");
      Rat d = rat_parse(chunk());
      expect(',');
      if (!try_word("f=")) err("expected f=");
      std::string ftext = chunk();
      expect(')');
      unsigned arity = inner->arity() ? *inner->arity() + 1 : 1;
      return ValuationSpec::monic_quotient(inner, d, MultiPoly::parse(ring, arity, ftext));
    }
    if (try_word("loc")) {
      expect('(');
      if (!try_word("inner=")) err("expected inner=");
      SpecPtr inner = parse();
      expect(',');
      if (!try_word("f=")) err("expected f=");
      std::string ftext = chunk();
      expect(',');
      if (!try_word("d=")) err("expected d=");
      Rat d = rat_parse(chunk());
      expect(')');
      unsigned arity = inner->arity() ? *inner->arity() : 1;
      return ValuationSpec::localization(inner, MultiPoly::parse(ring, arity, ftext), d);
    }
    err("expected a valuation spec");
  }
};

}  // namespace

SpecPtr ValuationSpec::parse(CoeffRing ring, const std::string& text) {
  SpecParser p{text, 0, ring};
  SpecPtr out = p.parse();
  p.skip_ws();
  if (p.pos != text.size()) p.err("trailing input");
  return out;
}

}  // namespace wittkit
