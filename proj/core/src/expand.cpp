#include "wittkit/expand.hpp"

#include <sstream>

namespace wittkit {

FracWeight FracWeight::make(std::vector<std::uint32_t> scaled, unsigned u, unsigned p) {
  FracWeight k;
  k.p = p;
  while (u > 0) {
    bool all = true;
    for (auto v : scaled)
      if (v % p != 0) {
        all = false;
        break;
      }
    if (!all) break;
    for (auto& v : scaled) v /= p;
    --u;
  }
  k.scaled = std::move(scaled);
  k.u = u;
  return k;
}

Rat FracWeight::component(unsigned i) const {
  Rat r(Int(scaled.at(i)), int_pow(Int(p), u));
  r.canonicalize();
  return r;
}

Rat FracWeight::total() const {
  Int num(0);
  for (auto v : scaled) num += v;
  Rat r(num, int_pow(Int(p), u));
  r.canonicalize();
  return r;
}

std::string FracWeight::str() const {
  std::ostringstream out;
  out << "(";
  for (std::size_t i = 0; i < scaled.size(); ++i) {
    if (i) out << ",";
    out << rat_str(component(static_cast<unsigned>(i)));
  }
  out << ")";
  return out.str();
}

bool FracWeightLess::operator()(const FracWeight& a, const FracWeight& b) const {
  Rat ta = a.total(), tb = b.total();
  if (ta != tb) return ta < tb;
  std::size_t n = std::max(a.scaled.size(), b.scaled.size());
  for (std::size_t i = 0; i < n; ++i) {
    Rat ca = i < a.scaled.size() ? a.component(static_cast<unsigned>(i)) : Rat(0);
    Rat cb = i < b.scaled.size() ? b.component(static_cast<unsigned>(i)) : Rat(0);
    if (ca != cb) return ca < cb;
  }
  return false;
}

Expansion::Expansion(CtxPtr base, unsigned length)
    : base_(std::move(base)),
      scalar_(PolyRingCtx::make(base_->ring, 0)),
      length_(length) {
  if (!base_->ring.is_fp() || base_->modulus)
    fail("UnsupportedBase", "expansions are defined over F_p polynomial rings");
}

void Expansion::add_term(const FracWeight& k, const WittVector& xi_part) {
  if (xi_part.is_zero()) return;
  auto it = terms_.find(k);
  if (it == terms_.end()) {
    terms_.emplace(k, xi_part);
    return;
  }
  WittVector sum = witt_add(it->second, xi_part);
  if (sum.is_zero())
    terms_.erase(it);
  else
    it->second = sum;
}

Expansion teich_expand(const WittVector& alpha) {
  const CtxPtr& ctx = alpha.ctx();
  if (!ctx->ring.is_fp() || ctx->modulus)
    fail("UnsupportedBase", "teich_expand needs an F_p polynomial base");
  unsigned p = ctx->ring.p();
  unsigned n = alpha.length() - 1;
  Expansion e(ctx, alpha.length());

  WittVector rem = alpha;
  for (unsigned s = 0; s <= n; ++s) {
    const MultiPoly& lead = rem.comp(s);
    if (lead.is_zero()) continue;
    WittVector level = WittVector::zero(ctx, alpha.length());
    for (const auto& [mono, c] : lead.terms()) {
      FracWeight k = FracWeight::make(mono, s, p);
      // xi contribution V^s([c]) at weight m/p^s.
      WittVector xi = teichmuller(e.scalar_ctx(), alpha.length(),
                                  MultiPoly::constant(ctx->ring, 0, c));
      for (unsigned j = 0; j < s; ++j) xi = verschiebung(xi);
      e.add_term(k, xi);
      // Ring-side contribution V^s([c T^m]).
      WittVector piece =
          teichmuller(ctx, alpha.length(), MultiPoly::monomial(ctx->ring, ctx->num_vars, mono, c));
      for (unsigned j = 0; j < s; ++j) piece = verschiebung(piece);
      level = witt_add(level, piece);
    }
    rem = witt_sub(rem, level);
    for (unsigned j = 0; j <= s; ++j) {
      if (!rem.comp(j).is_zero())
        fail("MalformedExpansion", "peeling left a nonzero component below the current level");
    }
  }
  if (!rem.is_zero()) fail("MalformedExpansion", "peeling did not terminate");
  return e;
}

WittVector reconstruct(const Expansion& e) {
  WittVector acc = WittVector::zero(e.base(), e.length());
  for (const auto& [k, xi] : e.terms()) {
    VOrder ord = ord_v(xi);
    if (ord.is_infinite) continue;
    if (ord.value < k.u)
      fail("MalformedExpansion",
           "term at weight " + k.str() + " has V-order below the weight denominator");
    // xi X^k = V^u(eta * [T^(p^u k)]) with eta = shift_down(xi, u).
    WittVector eta = shift_down(xi, k.u);
    std::vector<MultiPoly> comps;
    comps.reserve(e.length());
    for (unsigned i = 0; i < e.length(); ++i) {
      MultiPoly c(e.base()->ring, e.base()->num_vars);
      c.add_term(Mono(e.base()->num_vars, 0), eta.comp(i).constant_value());
      comps.push_back(std::move(c));
    }
    WittVector eta_ring(e.base(), std::move(comps));
    Mono mono(k.scaled.begin(), k.scaled.end());
    WittVector monomial =
        teichmuller(e.base(), e.length(), MultiPoly::monomial(e.base()->ring, e.base()->num_vars, mono, 1));
    WittVector term = witt_mul(eta_ring, monomial);
    for (unsigned j = 0; j < k.u; ++j) term = verschiebung(term);
    acc = witt_add(acc, term);
  }
  return acc;
}

ExtRat norm_from_expansion(const Expansion& e, const std::vector<Rat>& deltas) {
  if (deltas.size() != e.base()->num_vars)
    fail("SpecMismatch", "weight count differs from the number of variables");
  for (const auto& d : deltas)
    if (d <= 0) fail("BadWeights", "weights must be positive");
  ExtRat best = ExtRat::infinity();
  for (const auto& [k, xi] : e.terms()) {
    VOrder ord = ord_v(xi);
    if (ord.is_infinite) continue;
    Rat dk(0);
    for (unsigned i = 0; i < deltas.size(); ++i) dk += deltas[i] * k.component(i);
    best = ExtRat::min(best, ExtRat(Rat(Rat(ord.value) - dk)));
  }
  return best;
}

ExtRat breve_norm(const Expansion& e, const Rat& epsilon) {
  if (epsilon <= 0) fail("BadEpsilon", "epsilon must be positive");
  ExtRat best = ExtRat::infinity();
  for (const auto& [k, xi] : e.terms()) {
    VOrder ord = ord_v(xi);
    if (ord.is_infinite) continue;
    best = ExtRat::min(best, ExtRat(Rat(Rat(ord.value) - epsilon * k.total() - Rat(k.u))));
  }
  return best;
}

Expansion linear_teich_decompose(const CtxPtr& base, unsigned length,
                                 const std::vector<Int>& coeffs) {
  if (coeffs.size() != base->num_vars || base->num_vars == 0)
    fail("SpecMismatch", "need one scalar per variable");
  MultiPoly lf(base->ring, base->num_vars);
  for (unsigned i = 0; i < coeffs.size(); ++i) {
    Mono m(base->num_vars, 0);
    m[i] = 1;
    lf.add_term(m, coeffs[i]);
  }
  Expansion e = teich_expand(teichmuller(base, length, lf));
  for (const auto& [k, xi] : e.terms()) {
    if (k.total() != 1)
      fail("MalformedExpansion", "linear decomposition emitted weight " + k.str());
    VOrder ord = ord_v(xi);
    if (!ord.is_infinite && ord.value < k.u)
      fail("MalformedExpansion", "linear decomposition violated the V-order constraint");
  }
  return e;
}

}  // namespace wittkit
