#include "wittkit/check.hpp"

#include <array>
#include <sstream>

#include "wittkit/etale.hpp"

namespace wittkit::check {

namespace {

const std::array<unsigned, 3> kPrimes{2, 3, 5};

unsigned pick_p(Rng& rng, std::optional<unsigned> filter) {
  if (filter) return *filter;
  return kPrimes[rng.below(kPrimes.size())];
}

struct Shape {
  unsigned len;
  unsigned vars;
  unsigned max_deg;
  unsigned max_terms;
};

// Joint size guard: long vectors only at small primes, sparse components when
// the top ghost power is large.
Shape sample_shape(Rng& rng, unsigned p) {
  unsigned len_cap = p == 2 ? 5 : (p == 3 ? 4 : 3);
  Shape s;
  s.len = static_cast<unsigned>(rng.range(1, len_cap));
  s.vars = static_cast<unsigned>(rng.range(1, 2));
  s.max_deg = static_cast<unsigned>(rng.range(0, 6));
  unsigned heavy = 1;
  for (unsigned i = 1; i < s.len; ++i) heavy *= p;
  s.max_terms = heavy >= 16 ? 2 : 3;
  return s;
}

Rat random_weight(Rng& rng) {
  switch (rng.below(4)) {
    case 0: return Rat(1);
    case 1: return Rat(2);
    case 2: return Rat(1, 2);
    default: return Rat(3, 2);
  }
}

std::vector<Rat> random_weights(Rng& rng, unsigned n) {
  std::vector<Rat> w;
  w.reserve(n);
  for (unsigned i = 0; i < n; ++i) w.push_back(random_weight(rng));
  return w;
}

Rat random_epsilon(Rng& rng) {
  switch (rng.below(4)) {
    case 0: return Rat(1, 4);
    case 1: return Rat(1, 2);
    case 2: return Rat(1);
    default: return Rat(2);
  }
}

// Smallest index attaining the truncated Gauss norm; 0 for the zero vector.
unsigned min_attaining_index(const WittVector& x, const ValuationSpec& spec, const Rat& eps) {
  ExtRat best = gauss_norm(x, spec, eps);
  if (!best.is_finite()) return 0;
  unsigned p = x.ctx()->ring.p();
  for (unsigned i = 0; i < x.length(); ++i) {
    ExtRat nu = eval_valuation(spec, x.comp(i));
    Rat scale = eps / Rat(int_pow(Int(p), i));
    if (ExtRat(Rat(i)) + nu.scaled(scale) == best) return i;
  }
  return 0;
}

// V with length growth: (0, a_0, ..., a_n) in W_{n+2}.
WittVector v_extend(const WittVector& x) {
  std::vector<MultiPoly> comps;
  comps.reserve(x.length() + 1);
  comps.push_back(MultiPoly(x.ctx()->ring, x.ctx()->num_vars));
  for (const auto& c : x.comps()) comps.push_back(c);
  return WittVector(x.ctx(), std::move(comps));
}

WittVector embed_base(const WittVector& x, const CtxPtr& ctx_b) {
  unsigned var = ctx_b->num_vars - 1;
  std::vector<MultiPoly> comps;
  comps.reserve(x.length());
  for (const auto& c : x.comps()) comps.push_back(c.insert_var(var));
  return WittVector(ctx_b, std::move(comps));
}

}  // namespace

MultiPoly random_poly(Rng& rng, CoeffRing ring, unsigned num_vars, unsigned max_deg,
                      unsigned max_terms, bool allow_zero) {
  MultiPoly out(ring, num_vars);
  long terms = rng.range(allow_zero ? 0 : 1, max_terms);
  for (long t = 0; t < terms; ++t) {
    Mono m(num_vars, 0);
    long budget = rng.range(0, max_deg);
    for (unsigned v = 0; v + 1 < num_vars; ++v) {
      long e = rng.range(0, budget);
      m[v] = static_cast<std::uint32_t>(e);
      budget -= e;
    }
    if (num_vars) m[num_vars - 1] = static_cast<std::uint32_t>(budget);
    Int c = ring.is_fp() ? Int(rng.range(1, ring.p() - 1)) : Int(rng.range(-4, 4));
    out.add_term(m, c);
  }
  if (!allow_zero && out.is_zero())
    out.add_term(Mono(num_vars, 0), 1);
  return out;
}

MultiPoly random_nonzero_poly(Rng& rng, CoeffRing ring, unsigned num_vars, unsigned max_deg,
                              unsigned max_terms) {
  return random_poly(rng, ring, num_vars, max_deg, max_terms, false);
}

WittVector random_witt(Rng& rng, const CtxPtr& ctx, unsigned length, unsigned max_deg,
                       unsigned max_terms) {
  std::vector<MultiPoly> comps;
  comps.reserve(length);
  for (unsigned i = 0; i < length; ++i)
    comps.push_back(random_poly(rng, ctx->ring, ctx->num_vars, max_deg, max_terms));
  return WittVector(ctx, std::move(comps));
}

std::string Report::line() const {
  std::ostringstream out;
  out << suite << ": " << passed << "/" << total;
  if (ok()) {
    out << " ok";
  } else {
    out << " FAIL";
    if (!first_failure.empty()) out << " (first: " << first_failure << ")";
  }
  return out.str();
}

void Report::tally(bool pass, const std::string& detail) {
  ++total;
  if (pass) {
    ++passed;
  } else if (first_failure.empty()) {
    first_failure = detail;
  }
}

Report suite_axioms(std::uint64_t seed, std::optional<unsigned> p_filter, long cases_per_p) {
  Report r{.suite = "axioms"};
  Rng rng(seed * 0x9e3779b97f4a7c15ull + 1);
  std::vector<unsigned> primes = p_filter ? std::vector<unsigned>{*p_filter}
                                          : std::vector<unsigned>(kPrimes.begin(), kPrimes.end());
  for (unsigned p : primes) {
    for (long case_i = 0; case_i < cases_per_p; ++case_i) {
      Shape s = sample_shape(rng, p);
      auto ctx = PolyRingCtx::make(CoeffRing::fp(p), s.vars);
      auto spec = ValuationSpec::weighted_degree(random_weights(rng, s.vars));
      Rat eps = random_epsilon(rng);
      WittVector x = random_witt(rng, ctx, s.len, s.max_deg, s.max_terms);
      WittVector y = random_witt(rng, ctx, s.len, s.max_deg, s.max_terms);

      bool ok = gauss_norm(WittVector::zero(ctx, s.len), *spec, eps).is_infinity() &&
                gauss_norm(WittVector::one(ctx, s.len), *spec, eps) == ExtRat(0);
      ExtRat gx = gauss_norm(x, *spec, eps), gy = gauss_norm(y, *spec, eps);
      ok = ok && gauss_norm(witt_add(x, y), *spec, eps) >= ExtRat::min(gx, gy);
      ok = ok && gauss_norm(witt_sub(x, y), *spec, eps) >= ExtRat::min(gx, gy);
      ok = ok && gauss_norm(witt_mul(x, y), *spec, eps) >= gx + gy;
      if (case_i % 4 == 0) {
        WittVector z = random_witt(rng, ctx, s.len, 2, 2);
        ok = ok && witt_mul(x, witt_add(y, z)) == witt_add(witt_mul(x, y), witt_mul(x, z));
        ok = ok && witt_mul(x, y) == witt_mul(y, x);
        ok = ok && witt_add(witt_add(x, y), z) == witt_add(x, witt_add(y, z));
      }
      r.tally(ok, ok ? "" : "p=" + std::to_string(p) + " x=" + x.str(true) + " y=" + y.str(true));
    }
  }
  return r;
}

Report suite_ghost(std::uint64_t seed, std::optional<unsigned> p_filter, long cases) {
  Report r{.suite = "ghost"};
  Rng rng(seed * 0x9e3779b97f4a7c15ull + 2);
  for (long case_i = 0; case_i < cases; ++case_i) {
    unsigned p = pick_p(rng, p_filter);
    Shape s = sample_shape(rng, p);
    auto ctx = PolyRingCtx::make(CoeffRing::fp(p), s.vars);
    WittVector x = random_witt(rng, ctx, s.len, s.max_deg, s.max_terms);
    WittVector y = random_witt(rng, ctx, s.len, s.max_deg, s.max_terms);

    GhostVector gx = ghost_of(x), gy = ghost_of(y);
    GhostVector gsum{p, s.vars, {}}, gprod{p, s.vars, {}};
    for (unsigned i = 0; i < s.len; ++i) {
      gsum.comps.push_back(gx.comps[i] + gy.comps[i]);
      gprod.comps.push_back(gx.comps[i] * gy.comps[i]);
    }
    bool ok = witt_add(x, y) == reduce_into(from_ghost(gsum), ctx) &&
              witt_mul(x, y) == reduce_into(from_ghost(gprod), ctx);
    // Ghost map round-trip on the integral lift.
    ok = ok && from_ghost(gx) == lift_to_integers(x);

    switch (case_i % 3) {
      case 0:
        if (s.len >= 2) ok = ok && frobenius(verschiebung(x)) == mul_p(x);
        break;
      case 1: {
        MultiPoly a = random_poly(rng, ctx->ring, s.vars, s.max_deg, s.max_terms);
        MultiPoly b = random_poly(rng, ctx->ring, s.vars, s.max_deg, s.max_terms);
        ok = ok && witt_mul(teichmuller(ctx, s.len, a), teichmuller(ctx, s.len, b)) ==
                       teichmuller(ctx, s.len, a * b);
        break;
      }
      default:
        ok = ok && verschiebung(witt_add(x, y)) == witt_add(verschiebung(x), verschiebung(y));
        if (s.len >= 2)
          ok = ok && witt_mul(verschiebung(x), y) == verschiebung(witt_mul(x, frobenius(y)));
        break;
    }
    r.tally(ok, ok ? "" : "p=" + std::to_string(p) + " x=" + x.str(true) + " y=" + y.str(true));
  }
  return r;
}

Report suite_norms(std::uint64_t seed, std::optional<unsigned> p_filter, long cases) {
  Report r{.suite = "norms"};
  Rng rng(seed * 0x9e3779b97f4a7c15ull + 3);
  for (long case_i = 0; case_i < cases; ++case_i) {
    unsigned p = pick_p(rng, p_filter);
    Shape s = sample_shape(rng, p);
    auto ctx = PolyRingCtx::make(CoeffRing::fp(p), s.vars);
    auto spec = ValuationSpec::weighted_degree(random_weights(rng, s.vars));
    Rat eps = random_epsilon(rng);
    WittVector x = random_witt(rng, ctx, s.len, s.max_deg, s.max_terms);
    bool ok = true;
    std::string what;

    switch (case_i % 6) {
      case 0: {  // multiplicative Gauss norm for degree valuations
        what = "multiplicativity";
        WittVector y = random_witt(rng, ctx, s.len, s.max_deg, s.max_terms);
        for (int tries = 0; tries < 24; ++tries) {
          if (min_attaining_index(x, *spec, eps) + min_attaining_index(y, *spec, eps) <= s.len - 1)
            break;
          y = random_witt(rng, ctx, s.len, s.max_deg, s.max_terms);
          if (tries == 22) y = teichmuller(ctx, s.len, random_poly(rng, ctx->ring, s.vars, 3, 2));
        }
        if (min_attaining_index(x, *spec, eps) + min_attaining_index(y, *spec, eps) <= s.len - 1)
          ok = gauss_norm(witt_mul(x, y), *spec, eps) ==
               gauss_norm(x, *spec, eps) + gauss_norm(y, *spec, eps);
        break;
      }
      case 1: {  // V and F interplay with the scaled parameter
        what = "V/F identities";
        Rat eps_over_p = eps / Rat(p);
        ok = gauss_norm(v_extend(x), *spec, eps) == ExtRat(1) + gauss_norm(x, *spec, eps_over_p);
        if (s.len >= 2) {
          Rat peps = eps * p;
          ok = ok && gauss_norm(frobenius(x), *spec, eps) >= gauss_norm(x, *spec, peps);
        }
        if (s.len >= 2) {
          WittVector p1 = mul_p(WittVector::one(ctx, s.len));
          ok = ok && gauss_norm(p1, *spec, eps) == ExtRat(1);
        }
        break;
      }
      case 2: {  // monotone in epsilon for non-positive component values
        what = "monotonicity";
        Rat delta = eps * Rat(rng.range(2, 4));
        ok = gauss_norm(x, *spec, delta) <= gauss_norm(x, *spec, eps);
        break;
      }
      case 3: {  // polygon duality and the certificate search
        what = "polygon duality";
        if (!x.is_zero()) {
          NewtonPolygon np = newton_polygon(x, *spec);
          for (int j = 0; j < 4; ++j) {
            Rat e = random_epsilon(rng);
            ExtRat from_hull = ExtRat::infinity();
            for (const auto& [vx, vy] : np.vertices)
              from_hull = ExtRat::min(from_hull, ExtRat(Rat(vy + e * vx)));
            ok = ok && from_hull == gauss_norm(x, *spec, e);
          }
        }
        Rat delta(rng.range(1, 3), 2);
        delta.canonicalize();
        RadiusCertificate cert = radius_certificate(x, *spec, delta);
        if (!x.is_zero())
          ok = ok && gauss_norm(x, *spec, cert.epsilon) == ExtRat(cert.c) &&
               ExtRat(cert.c) > ExtRat(Rat(-delta));
        break;
      }
      case 4: {  // unit group: multiply-back of both inversion routes
        what = "inversion";
        WittVector eta = random_witt(rng, ctx, s.len, 3, 2);
        WittVector one = WittVector::one(ctx, s.len);
        WittVector lhs = witt_sub(one, verschiebung(eta));
        ok = witt_mul(lhs, geometric_inverse(eta)) == one;
        Int c(rng.range(1, p - 1));
        WittVector alpha = witt_add(teichmuller(ctx, s.len, MultiPoly::constant(ctx->ring, s.vars, c)),
                                    verschiebung(random_witt(rng, ctx, s.len, 2, 2)));
        ok = ok && witt_mul(alpha, witt_inverse(alpha)) == one;
        break;
      }
      default: {  // norm bounds for inverses of 1 - V(eta)
        what = "inverse bounds";
        WittVector eta = random_witt(rng, ctx, s.len, 3, 2);
        WittVector valpha = verschiebung(eta);
        Rat e = eps;
        while (gauss_norm(valpha, *spec, e) < ExtRat(0)) e /= 2;
        WittVector inv = geometric_inverse(eta);
        ok = gauss_norm(inv, *spec, e) >= ExtRat(0);
        if (s.vars >= 1 && spec->weights() == std::vector<Rat>(s.vars, Rat(1))) {
          ExtRat ba = breve_norm(teich_expand(valpha), e);
          ExtRat bi = breve_norm(teich_expand(inv), e);
          ok = ok && bi >= ExtRat::min(ExtRat(0), ba);
        }
        break;
      }
    }
    r.tally(ok, ok ? "" : what + ": p=" + std::to_string(p) + " x=" + x.str(true));
  }
  return r;
}

Report suite_sandwich(std::uint64_t seed, std::optional<unsigned> p_filter, long cases) {
  Report r{.suite = "sandwich"};
  Rng rng(seed * 0x9e3779b97f4a7c15ull + 4);
  (void)p_filter;  // the localization fixtures are pinned to p = 2

  CoeffRing f2 = CoeffRing::fp(2);
  MultiPoly f_t = MultiPoly::variable(f2, 1, 0);                    // T over F_2[T]
  MultiPoly f_reg = MultiPoly::parse(f2, 2, "T2^2 + T2 + T1");      // monic in T2 over F_2[T1]
  auto deg1 = ValuationSpec::weighted_degree({Rat(1)});
  auto deg2 = ValuationSpec::weighted_degree({Rat(1), Rat(1)});

  std::vector<ExtRat> mu_vals, nup_vals;
  for (long case_i = 0; case_i < cases; ++case_i) {
    bool ok = true;
    std::string what;
    bool wide = case_i % 2 == 1;
    const MultiPoly& f = wide ? f_reg : f_t;
    const SpecPtr& inner = wide ? deg2 : deg1;
    unsigned nv = wide ? 2 : 1;

    MultiPoly a = random_nonzero_poly(rng, f2, nv, 5, 3);
    unsigned m = static_cast<unsigned>(rng.range(0, 3));
    LocElem z = loc_reduce(a, m, f);
    Rat d(rng.range(1, 2));
    auto prof = localization_profile(z, *inner, d, z.exp + 4);

    switch (case_i % 4) {
      case 0: {
        what = "tau sandwich";
        // nu' >= tau >= (2 + |nu(f)|/d) nu'.
        Rat q = Rat(2) + Rat(-eval_valuation(*inner, f).value()) / d;
        q.canonicalize();
        ok = prof.nu_prime_exact && prof.nu_prime >= prof.tau &&
             prof.tau >= prof.nu_prime.scaled(q);
        break;
      }
      case 1: {
        what = "sigma sandwich";
        // nu' >= sigma >= (Q/C) nu' with C = 1/2 (valuations localize with any C < 1).
        Rat q = Rat(2) + Rat(-eval_valuation(*inner, f).value()) / d;
        Rat e = q * 2;
        e.canonicalize();
        ok = prof.nu_prime >= prof.sigma && prof.sigma >= prof.nu_prime.scaled(e);
        break;
      }
      case 2: {
        what = "regular multiplicativity";
        // Quotient coefficients make the inner pseudovaluation non-multiplicative,
        // so degree additivity for regular polynomials is not vacuous here.
        MultiPoly mod_s = MultiPoly::parse(f2, 1, "T1^2 + T1 + 1");
        auto quot = ValuationSpec::monic_quotient(ValuationSpec::trivial(), Rat(1), mod_s);
        Rat dt(rng.range(2, 3));
        MultiPoly freg(f2, 2);
        freg.add_term(Mono{2, 0}, 1);  // T^2 with T the first variable
        freg.add_term(Mono{1, static_cast<std::uint32_t>(rng.range(0, 1))}, 1);
        if (rng.chance(1, 2)) freg.add_term(Mono{0, 1}, 1);
        if (!is_regular(freg, *quot, dt, 0)) {
          ok = true;  // sampled an irregular shape; nothing to assert
          break;
        }
        MultiPoly g = random_nonzero_poly(rng, f2, 2, 4, 3);
        ExtRat lhs = poly_value_in_var(freg * g, 0, *quot, dt);
        ExtRat rhs = poly_value_in_var(freg, 0, *quot, dt) + poly_value_in_var(g, 0, *quot, dt);
        ok = lhs == rhs;
        break;
      }
      default: {
        what = "localizing certificates";
        std::vector<MultiPoly> samples;
        for (int i = 0; i < 6; ++i) samples.push_back(random_poly(rng, f2, nv, 5, 3));
        ok = verify_localizing(f, *inner, Rat(1), Rat(0), 3, samples).ok;
        // Constants compose across products: g inherits (C, D - nu(f)) from f*g.
        MultiPoly g = random_nonzero_poly(rng, f2, nv, 3, 2);
        Rat shifted = -eval_valuation(*inner, f).value();
        ok = ok && verify_localizing(g, *inner, Rat(1), shifted, 3, samples).ok;
        break;
      }
    }
    if (prof.mu < ExtRat(0)) {
      mu_vals.push_back(prof.mu);
      nup_vals.push_back(prof.nu_prime);
    }
    r.tally(ok, ok ? "" : what + ": z=" + z.num.str() + "/f^" + std::to_string(z.exp));
  }

  // Final comparison: Q1*mu >= nu' >= Q2*mu with searched constants.
  if (!mu_vals.empty()) {
    Rat q1(1);
    bool first = true;
    for (std::size_t i = 0; i < mu_vals.size(); ++i) {
      if (!mu_vals[i].is_finite() || mu_vals[i] == ExtRat(0)) continue;
      Rat ratio = nup_vals[i].value() / mu_vals[i].value();
      ratio.canonicalize();
      if (ratio == 0) continue;
      if (first || ratio < q1) q1 = ratio;
      first = false;
    }
    SandwichCertificate cert;
    cert.c1 = Rat(1) / q1;
    cert.c1.canonicalize();
    cert.c2 = 1;
    auto rep = verify_sandwich(nup_vals, mu_vals, cert);
    r.tally(rep.ok, rep.ok ? "" : "mu comparison with Q1=" + rat_str(q1));
  }
  return r;
}

Report suite_expand(std::uint64_t seed, std::optional<unsigned> p_filter, long cases) {
  Report r{.suite = "expand"};
  Rng rng(seed * 0x9e3779b97f4a7c15ull + 5);
  for (long case_i = 0; case_i < cases; ++case_i) {
    unsigned p = pick_p(rng, p_filter);
    if (p == 5) p = rng.chance(1, 2) ? 2 : 3;
    Shape s = sample_shape(rng, p);
    unsigned vars = static_cast<unsigned>(rng.range(1, 3));
    if (s.len > 4) s.len = 4;
    auto ctx = PolyRingCtx::make(CoeffRing::fp(p), vars);
    WittVector x = random_witt(rng, ctx, s.len, 4, 2);
    bool ok = true;
    std::string what;

    switch (case_i % 5) {
      case 0: {
        what = "round-trip";
        Expansion e = teich_expand(x);
        ok = reconstruct(e) == x;
        Expansion e2 = teich_expand(reconstruct(e));
        ok = ok && e2.terms().size() == e.terms().size();
        if (ok)
          for (auto it1 = e.terms().begin(), it2 = e2.terms().begin(); it1 != e.terms().end();
               ++it1, ++it2)
            ok = ok && it1->first == it2->first && it1->second == it2->second;
        for (const auto& [k, xi] : e.terms()) {
          VOrder o = ord_v(xi);
          ok = ok && !o.is_infinite && o.value >= k.u;
        }
        break;
      }
      case 1: {
        what = "expansion norm";
        Expansion e = teich_expand(x);
        for (int j = 0; j < 3; ++j) {
          std::vector<Rat> deltas = random_weights(rng, vars);
          auto spec = ValuationSpec::weighted_degree(deltas);
          ok = ok && norm_from_expansion(e, deltas) == gauss_norm(x, *spec, Rat(1));
        }
        break;
      }
      case 2: {
        what = "breve bounds";
        Rat eps = random_epsilon(rng);
        auto std_spec = ValuationSpec::weighted_degree(std::vector<Rat>(vars, Rat(1)));
        Expansion e = teich_expand(x);
        ExtRat breve = breve_norm(e, eps);
        ExtRat gauss = gauss_norm(x, *std_spec, eps);
        ok = breve <= gauss;
        unsigned rr = static_cast<unsigned>(rng.range(2, 3));
        ExtRat lhs = breve_norm(teich_expand(witt_pow(x, rr)), eps);
        ExtRat rhs = gauss.scaled(Rat(rr - 1)) + breve;
        ok = ok && lhs >= rhs;
        break;
      }
      case 3: {
        what = "linear decomposition";
        std::vector<Int> coeffs;
        for (unsigned i = 0; i < vars; ++i) coeffs.push_back(Int(rng.range(0, p - 1)));
        bool all_zero = true;
        for (const auto& c : coeffs) all_zero = all_zero && c == 0;
        if (all_zero) coeffs[0] = 1;
        Expansion e = linear_teich_decompose(ctx, s.len, coeffs);
        MultiPoly lf(ctx->ring, vars);
        for (unsigned i = 0; i < vars; ++i) {
          Mono m(vars, 0);
          m[i] = 1;
          lf.add_term(m, coeffs[i]);
        }
        ok = reconstruct(e) == teichmuller(ctx, s.len, lf);
        break;
      }
      default: {
        what = "teichmuller breve norm";
        MultiPoly a = random_nonzero_poly(rng, ctx->ring, vars, 4, 3);
        Rat eps = random_epsilon(rng);
        ExtRat got = breve_norm(teich_expand(teichmuller(ctx, s.len, a)), eps);
        ok = got == ExtRat(Rat(-eps * Rat(a.total_degree())));
        break;
      }
    }
    r.tally(ok, ok ? "" : what + ": p=" + std::to_string(p) + " x=" + x.str(true));
  }
  return r;
}

Report suite_etale(std::uint64_t seed, std::optional<unsigned> p_filter, long cases) {
  Report r{.suite = "etale"};
  Rng rng(seed * 0x9e3779b97f4a7c15ull + 6);
  CoeffRing f2 = CoeffRing::fp(2), f3 = CoeffRing::fp(3);
  EtaleExt ext2 = EtaleExt::make(PolyRingCtx::make(f2, 1), MultiPoly::parse(f2, 2, "T2^2 + T2 + T1"));
  EtaleExt ext3 = EtaleExt::make(PolyRingCtx::make(f3, 1), MultiPoly::parse(f3, 2, "T2^3 + 2*T2 + 2*T1"));

  for (long case_i = 0; case_i < cases; ++case_i) {
    bool use3 = p_filter ? (*p_filter == 3) : rng.chance(1, 2);
    const EtaleExt& ext = use3 ? ext3 : ext2;
    unsigned p = use3 ? 3 : 2;
    unsigned len = static_cast<unsigned>(rng.range(1, use3 ? 4 : 5));
    bool ok = true;
    std::string what;

    switch (case_i % 3) {
      case 0: {
        what = "basis expansion round-trip";
        WittVector eta = random_witt(rng, ext.quot_ctx(), len, 3, 2);
        auto xi = etale_basis_expand(eta, ext);
        WittVector acc = WittVector::zero(ext.quot_ctx(), len);
        WittVector t_teich =
            teichmuller(ext.quot_ctx(), len, MultiPoly::variable(ext.quot_ctx()->ring, 2, 1));
        for (unsigned i = 0; i < ext.degree(); ++i)
          acc = witt_add(acc, witt_mul(embed_base(xi[i], ext.quot_ctx()), witt_pow(t_teich, i)));
        ok = acc == eta;
        break;
      }
      case 1: {
        what = "coordinate uniqueness";
        std::vector<WittVector> xi_in;
        WittVector eta = WittVector::zero(ext.quot_ctx(), len);
        WittVector t_teich =
            teichmuller(ext.quot_ctx(), len, MultiPoly::variable(ext.quot_ctx()->ring, 2, 1));
        for (unsigned i = 0; i < ext.degree(); ++i) {
          xi_in.push_back(random_witt(rng, ext.base_ctx(), len, 2, 2));
          eta = witt_add(eta, witt_mul(embed_base(xi_in[i], ext.quot_ctx()), witt_pow(t_teich, i)));
        }
        auto xi_out = etale_basis_expand(eta, ext);
        for (unsigned i = 0; i < ext.degree(); ++i) ok = ok && xi_out[i] == xi_in[i];
        break;
      }
      default: {
        what = "coordinate growth bound";
        auto inner = ValuationSpec::weighted_degree({Rat(1)});
        GrowthBound gb = power_basis_growth_bound(ext, *inner);
        auto quot = ValuationSpec::monic_quotient(inner, gb.quot_d, ext.modulus());
        MultiPoly b = random_nonzero_poly(rng, ext.quot_ctx()->ring, 2, 3, 3);
        ExtRat vb = eval_valuation(*quot, b);
        unsigned pn = 1;
        for (unsigned n = 0; n <= 3; ++n) {
          BasisCoords coords = power_basis_coords(b, ext, n);
          for (const auto& c : coords.coords) {
            if (c.is_zero()) continue;
            ExtRat va = eval_valuation(*inner, c);
            ok = ok && va >= vb - ExtRat(Rat(gb.growth * Rat(pn)));
          }
          pn *= p;
        }
        break;
      }
    }
    r.tally(ok, ok ? "" : what + " (p=" + std::to_string(p) + ")");
  }
  return r;
}

Report suite_hensel(std::uint64_t seed, std::optional<unsigned> p_filter, long cases) {
  Report r{.suite = "hensel"};
  Rng rng(seed * 0x9e3779b97f4a7c15ull + 7);
  for (long case_i = 0; case_i < cases; ++case_i) {
    unsigned p = p_filter ? *p_filter : (rng.chance(1, 2) ? 2u : 3u);
    if (p != 2 && p != 3) p = 2;
    unsigned len = static_cast<unsigned>(rng.range(2, 4));
    auto ctx = PolyRingCtx::make(CoeffRing::fp(p), 1);
    MultiPoly a = random_poly(rng, ctx->ring, 1, 3, 2);
    WittVector one = WittVector::one(ctx, len);

    // X^p - X - [a^p - a] has the simple root a with unit derivative.
    std::vector<WittVector> coeffs;
    coeffs.push_back(witt_neg(teichmuller(ctx, len, a.frobenius() - a)));
    coeffs.push_back(witt_neg(one));
    for (unsigned j = 2; j < p; ++j) coeffs.push_back(WittVector::zero(ctx, len));
    coeffs.push_back(one);

    bool ok = true;
    WittVector alpha = hensel_lift(coeffs, a);
    ok = witt_poly_eval(coeffs, alpha).is_zero() && alpha.comp(0) == a;
    WittVector perturbed =
        witt_add(teichmuller(ctx, len, a), verschiebung(random_witt(rng, ctx, len, 2, 2)));
    WittVector alpha2 = hensel_lift(coeffs, a, perturbed);
    ok = ok && alpha2 == alpha;
    r.tally(ok, ok ? "" : "p=" + std::to_string(p) + " a=" + a.str());
  }
  return r;
}

std::vector<Report> run_suites(const std::string& name, std::uint64_t seed,
                               std::optional<unsigned> p_filter, long cases) {
  std::vector<Report> out;
  auto want = [&](const std::string& s) { return name == "all" || name == s; };
  if (want("axioms")) out.push_back(suite_axioms(seed, p_filter, cases > 0 ? cases : 1000));
  if (want("ghost")) out.push_back(suite_ghost(seed, p_filter, cases > 0 ? cases : 1000));
  if (want("norms")) out.push_back(suite_norms(seed, p_filter, cases > 0 ? cases : 500));
  if (want("sandwich")) out.push_back(suite_sandwich(seed, p_filter, cases > 0 ? cases : 200));
  if (want("expand")) out.push_back(suite_expand(seed, p_filter, cases > 0 ? cases : 500));
  if (want("etale")) out.push_back(suite_etale(seed, p_filter, cases > 0 ? cases : 200));
  if (want("hensel")) out.push_back(suite_hensel(seed, p_filter, cases > 0 ? cases : 20));
  if (out.empty()) fail("UnknownSuite", "no suite named '" + name + "'");
  return out;
}

}  // namespace wittkit::check
