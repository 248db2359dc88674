#include "wittkit/witt.hpp"

#include <cctype>
#include <sstream>

namespace wittkit {

namespace {

MultiPoly convert_ring(const MultiPoly& x, CoeffRing ring) {
  MultiPoly out(ring, x.num_vars());
  for (const auto& [m, c] : x.terms()) out.add_term(m, c);
  return out;
}

void check_pair(const WittVector& x, const WittVector& y) {
  if (!x.ctx()->same(*y.ctx())) fail("Mismatch", "Witt vectors over different base rings");
  if (x.length() != y.length()) fail("Mismatch", "Witt vectors of different lengths");
}

unsigned base_prime(const WittVector& x) {
  if (!x.ctx()->ring.is_fp())
    fail("UnsupportedRing", "operation needs an F_p base ring");
  return x.ctx()->ring.p();
}

// Dense univariate polynomials over F_p, used for unit tests in univariate
// quotient bases.
using UPoly = std::vector<unsigned>;

UPoly upoly_trim(UPoly a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
  return a;
}

UPoly upoly_from(const MultiPoly& x) {
  UPoly out(static_cast<std::size_t>(std::max<long>(x.degree_in(0), 0)) + 1, 0);
  for (const auto& [m, c] : x.terms()) out[m[0]] = static_cast<unsigned>(c.get_ui());
  return upoly_trim(out);
}

MultiPoly upoly_to(const UPoly& a, CoeffRing ring) {
  MultiPoly out(ring, 1);
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a[i]) out.add_term(Mono{static_cast<std::uint32_t>(i)}, Int(a[i]));
  return out;
}

unsigned inv_mod(unsigned a, unsigned p) {
  long t = 0, newt = 1, r = p, newr = a % p;
  while (newr != 0) {
    long q = r / newr;
    std::swap(t, newt);
    newt -= q * t;
    std::swap(r, newr);
    newr -= q * r;
  }
  if (t < 0) t += p;
  return static_cast<unsigned>(t);
}

std::pair<UPoly, UPoly> upoly_divmod(const UPoly& a, const UPoly& b, unsigned p) {
  UPoly r = a, q(a.size(), 0);
  unsigned lead_inv = inv_mod(b.back(), p);
  while (r.size() >= b.size() && !r.empty()) {
    unsigned c = static_cast<unsigned>((static_cast<unsigned long long>(r.back()) * lead_inv) % p);
    std::size_t shift = r.size() - b.size();
    q[shift] = c;
    for (std::size_t i = 0; i < b.size(); ++i) {
      unsigned long long sub = (static_cast<unsigned long long>(b[i]) * c) % p;
      r[shift + i] = static_cast<unsigned>((r[shift + i] + p - sub) % p);
    }
    r = upoly_trim(std::move(r));
  }
  return {upoly_trim(std::move(q)), std::move(r)};
}

UPoly upoly_mul(const UPoly& a, const UPoly& b, unsigned p) {
  if (a.empty() || b.empty()) return {};
  UPoly out(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j)
      out[i + j] = static_cast<unsigned>((out[i + j] + static_cast<unsigned long long>(a[i]) * b[j]) % p);
  return upoly_trim(std::move(out));
}

UPoly upoly_sub(UPoly a, const UPoly& b, unsigned p) {
  if (a.size() < b.size()) a.resize(b.size(), 0);
  for (std::size_t i = 0; i < b.size(); ++i) a[i] = (a[i] + p - b[i]) % p;
  return upoly_trim(std::move(a));
}

// Extended euclid over F_p[T]: returns (g, s) with s*a == g mod m, g = gcd(a, m).
std::pair<UPoly, UPoly> upoly_half_gcd(UPoly a, UPoly m, unsigned p) {
  UPoly r0 = std::move(m), r1 = upoly_trim(std::move(a));
  UPoly s0 = {}, s1 = {1};
  while (!r1.empty()) {
    auto [q, r2] = upoly_divmod(r0, r1, p);
    UPoly s2 = upoly_sub(s0, upoly_mul(q, s1, p), p);
    r0 = std::move(r1);
    r1 = std::move(r2);
    s0 = std::move(s1);
    s1 = std::move(s2);
  }
  return {std::move(r0), std::move(s0)};
}

}  // namespace

WittVector::WittVector(CtxPtr ctx, std::vector<MultiPoly> comps) : ctx_(std::move(ctx)) {
  if (comps.empty()) fail("Mismatch", "Witt vectors need at least one component");
  comps_.reserve(comps.size());
  for (auto& c : comps) {
    if (!(c.ring() == ctx_->ring) || c.num_vars() != ctx_->num_vars)
      fail("Mismatch", "component ring differs from the Witt vector context");
    comps_.push_back(ctx_->reduce(std::move(c)));
  }
}

WittVector WittVector::zero(CtxPtr ctx, unsigned length) {
  if (length == 0) fail("Mismatch", "Witt vectors need at least one component");
  std::vector<MultiPoly> comps(length, MultiPoly(ctx->ring, ctx->num_vars));
  return WittVector(std::move(ctx), std::move(comps));
}

WittVector WittVector::one(CtxPtr ctx, unsigned length) {
  auto one = MultiPoly::constant(ctx->ring, ctx->num_vars, 1);
  return teichmuller(ctx, length, one);
}

WittVector teichmuller(const CtxPtr& ctx, unsigned length, const MultiPoly& a) {
  if (length == 0) fail("Mismatch", "Witt vectors need at least one component");
  std::vector<MultiPoly> comps(length, MultiPoly(ctx->ring, ctx->num_vars));
  comps[0] = a;
  return WittVector(ctx, std::move(comps));
}

bool WittVector::is_zero() const {
  for (const auto& c : comps_)
    if (!c.is_zero()) return false;
  return true;
}

bool WittVector::operator==(const WittVector& o) const {
  return ctx_->same(*o.ctx_) && comps_ == o.comps_;
}

WittVector lift_to_integers(const WittVector& x) {
  auto zctx = PolyRingCtx::make(CoeffRing::integers(), x.ctx()->num_vars);
  std::vector<MultiPoly> comps;
  comps.reserve(x.length());
  for (const auto& c : x.comps()) comps.push_back(convert_ring(c, CoeffRing::integers()));
  return WittVector(std::move(zctx), std::move(comps));
}

GhostVector ghost_components(const WittVector& x, unsigned p) {
  if (x.ctx()->ring.kind() != RingKind::Integers)
    fail("UnsupportedRing", "ghost components are computed on integral lifts");
  GhostVector g;
  g.p = p;
  g.num_vars = x.ctx()->num_vars;
  std::vector<MultiPoly> pows(x.comps().begin(), x.comps().end());  // a_j^(p^(i-j))
  Int pk;
  for (unsigned i = 0; i < x.length(); ++i) {
    MultiPoly w(CoeffRing::integers(), g.num_vars);
    pk = 1;
    for (unsigned j = 0; j <= i; ++j) {
      if (j > 0) pk *= p;
      // pows[j] currently holds a_j^(p^(i-j)).
      w = w + pows[j] * MultiPoly::constant(CoeffRing::integers(), g.num_vars, pk);
    }
    g.comps.push_back(std::move(w));
    if (i + 1 < x.length())
      for (unsigned j = 0; j <= i; ++j) pows[j] = pows[j].pow(p);
  }
  return g;
}

GhostVector ghost_of(const WittVector& x) {
  return ghost_components(lift_to_integers(x), base_prime(x));
}

WittVector from_ghost(const GhostVector& g) {
  if (g.comps.empty()) fail("Mismatch", "empty ghost vector");
  auto zring = CoeffRing::integers();
  auto zctx = PolyRingCtx::make(zring, g.num_vars);
  std::vector<MultiPoly> comps;
  comps.reserve(g.comps.size());
  std::vector<MultiPoly> pows;  // a_j^(p^(i-j)) maintained like in ghost_components
  Int pi(1);
  for (unsigned i = 0; i < g.comps.size(); ++i) {
    MultiPoly acc = g.comps[i];
    Int pj(1);
    for (unsigned j = 0; j < i; ++j) {
      if (j > 0) pj *= g.p;
      acc = acc - pows[j] * MultiPoly::constant(zring, g.num_vars, pj);
    }
    if (i > 0) pi *= g.p;
    MultiPoly ai(zring, g.num_vars);
    for (const auto& [m, c] : acc.terms()) {
      if (!mpz_divisible_p(c.get_mpz_t(), pi.get_mpz_t()))
        fail("NotIntegral", "ghost vector is not in the image of the ghost map");
      Int q;
      mpz_divexact(q.get_mpz_t(), c.get_mpz_t(), pi.get_mpz_t());
      ai.add_term(m, q);
    }
    pows.push_back(ai);
    comps.push_back(std::move(ai));
    if (i + 1 < g.comps.size())
      for (unsigned j = 0; j <= i; ++j) pows[j] = pows[j].pow(g.p);
  }
  return WittVector(zctx, std::move(comps));
}

WittVector reduce_into(const WittVector& x, const CtxPtr& ctx) {
  std::vector<MultiPoly> comps;
  comps.reserve(x.length());
  for (const auto& c : x.comps()) comps.push_back(ctx->reduce(convert_ring(c, ctx->ring)));
  return WittVector(ctx, std::move(comps));
}

namespace {

enum class GhostOp { Add, Sub, Mul };

WittVector via_ghost(const WittVector& x, const WittVector& y, GhostOp op) {
  check_pair(x, y);
  unsigned p = base_prime(x);
  GhostVector gx = ghost_of(x), gy = ghost_of(y);
  GhostVector gz;
  gz.p = p;
  gz.num_vars = gx.num_vars;
  for (unsigned i = 0; i < x.length(); ++i) {
    switch (op) {
      case GhostOp::Add: gz.comps.push_back(gx.comps[i] + gy.comps[i]); break;
      case GhostOp::Sub: gz.comps.push_back(gx.comps[i] - gy.comps[i]); break;
      case GhostOp::Mul: gz.comps.push_back(gx.comps[i] * gy.comps[i]); break;
    }
  }
  return reduce_into(from_ghost(gz), x.ctx());
}

}  // namespace

WittVector witt_add(const WittVector& x, const WittVector& y) { return via_ghost(x, y, GhostOp::Add); }
WittVector witt_sub(const WittVector& x, const WittVector& y) { return via_ghost(x, y, GhostOp::Sub); }
WittVector witt_mul(const WittVector& x, const WittVector& y) { return via_ghost(x, y, GhostOp::Mul); }

WittVector witt_neg(const WittVector& x) {
  return witt_sub(WittVector::zero(x.ctx(), x.length()), x);
}

WittVector witt_pow(const WittVector& x, unsigned e) {
  WittVector acc = WittVector::one(x.ctx(), x.length());
  WittVector base = x;
  while (e > 0) {
    if (e & 1) acc = witt_mul(acc, base);
    e >>= 1;
    if (e) base = witt_mul(base, base);
  }
  return acc;
}

WittVector witt_scale(const Int& k, const WittVector& x) {
  GhostVector g = ghost_of(x);
  MultiPoly kc = MultiPoly::constant(CoeffRing::integers(), g.num_vars, k);
  for (auto& w : g.comps) w = w * kc;
  return reduce_into(from_ghost(g), x.ctx());
}

WittVector verschiebung(const WittVector& x) {
  std::vector<MultiPoly> comps;
  comps.reserve(x.length());
  comps.push_back(MultiPoly(x.ctx()->ring, x.ctx()->num_vars));
  for (unsigned i = 0; i + 1 < x.length(); ++i) comps.push_back(x.comp(i));
  return WittVector(x.ctx(), std::move(comps));
}

WittVector frobenius(const WittVector& x) {
  base_prime(x);
  if (x.length() < 2) fail("LengthUnderflow", "frobenius needs length at least 2");
  std::vector<MultiPoly> comps;
  comps.reserve(x.length());
  for (const auto& c : x.comps()) comps.push_back(x.ctx()->reduce(c.frobenius()));
  return WittVector(x.ctx(), std::move(comps));
}

WittVector mul_p(const WittVector& x) {
  base_prime(x);
  if (x.length() == 1) return WittVector::zero(x.ctx(), 1);
  return verschiebung(frobenius(x));
}

VOrder ord_v(const WittVector& x) {
  for (unsigned i = 0; i < x.length(); ++i)
    if (!x.comp(i).is_zero()) return VOrder{i, false};
  return VOrder{x.length(), true};
}

WittVector shift_down(const WittVector& x, unsigned u) {
  std::vector<MultiPoly> comps;
  comps.reserve(x.length());
  for (unsigned i = u; i < x.length(); ++i) comps.push_back(x.comp(i));
  while (comps.size() < x.length()) comps.push_back(MultiPoly(x.ctx()->ring, x.ctx()->num_vars));
  return WittVector(x.ctx(), std::move(comps));
}

WittVector geometric_inverse(const WittVector& eta) {
  base_prime(eta);
  unsigned n = eta.length() - 1;
  WittVector res = WittVector::one(eta.ctx(), eta.length());
  if (n == 0) return res;
  WittVector eta_pow = eta;
  for (unsigned i = 1; i <= n; ++i) {
    if (i > 1) eta_pow = witt_mul(eta_pow, eta);
    WittVector term = verschiebung(eta_pow);
    for (unsigned j = 1; j < i; ++j) term = mul_p(term);
    if (!term.is_zero()) res = witt_add(res, term);
  }
  return res;
}

WittVector witt_inverse(const WittVector& alpha) {
  unsigned p = base_prime(alpha);
  const MultiPoly& a0 = alpha.comp(0);
  MultiPoly a0_inv(alpha.ctx()->ring, alpha.ctx()->num_vars);
  if (!alpha.ctx()->modulus) {
    if (!a0.is_constant() || a0.is_zero())
      fail("NotAUnit", "first component " + a0.str() + " is not a unit of the base ring");
    Int c = a0.constant_value();
    Int pz(p), inv;
    if (mpz_invert(inv.get_mpz_t(), c.get_mpz_t(), pz.get_mpz_t()) == 0)
      fail("NotAUnit", "first component is not a unit");
    a0_inv = MultiPoly::constant(alpha.ctx()->ring, alpha.ctx()->num_vars, inv);
  } else if (alpha.ctx()->num_vars == 1) {
    if (a0.is_zero()) fail("NotAUnit", "first component is zero");
    auto [g, s] = upoly_half_gcd(upoly_from(a0), upoly_from(*alpha.ctx()->modulus), p);
    if (g.size() != 1)
      fail("NotAUnit", "first component shares the factor " + upoly_to(g, alpha.ctx()->ring).str() +
                           " with the modulus");
    unsigned scale = inv_mod(g[0], p);
    UPoly inv = upoly_mul(s, UPoly{scale}, p);
    a0_inv = alpha.ctx()->reduce(upoly_to(inv, alpha.ctx()->ring));
  } else {
    fail("UnsupportedBase", "unit testing in multivariate quotient bases is not supported");
  }

  // alpha = [a0] * (1 + V([a0^-p] eta)) with V(eta) = alpha - [a0].
  WittVector delta = witt_sub(alpha, teichmuller(alpha.ctx(), alpha.length(), a0));
  WittVector eta = shift_down(delta, 1);
  MultiPoly a0_inv_p = alpha.ctx()->reduce(a0_inv.pow(p));
  WittVector zeta = witt_mul(teichmuller(alpha.ctx(), alpha.length(), a0_inv_p), eta);
  WittVector series = geometric_inverse(witt_neg(zeta));
  return witt_mul(series, teichmuller(alpha.ctx(), alpha.length(), a0_inv));
}

WittVector witt_poly_eval(const std::vector<WittVector>& coeffs, const WittVector& x) {
  if (coeffs.empty()) fail("EmptyInput", "polynomial with no coefficients");
  WittVector acc = coeffs.back();
  for (std::size_t j = coeffs.size() - 1; j-- > 0;) acc = witt_add(witt_mul(acc, x), coeffs[j]);
  return acc;
}

std::string GhostVector::str() const {
  std::ostringstream out;
  out << "[";
  for (std::size_t i = 0; i < comps.size(); ++i) {
    if (i) out << ";";
    out << comps[i].str();
  }
  out << "]";
  return out.str();
}

std::string WittVector::str(bool full) const {
  std::ostringstream out;
  out << "wv";
  if (full) {
    out << "(p=" << ctx_->ring.p() << ", vars=" << ctx_->num_vars;
    if (ctx_->modulus) out << ", mod=" << ctx_->modulus->str();
    out << ")";
  }
  out << "[";
  for (std::size_t i = 0; i < comps_.size(); ++i) {
    if (i) out << ";";
    out << comps_[i].str();
  }
  out << "]";
  return out.str();
}

WittVector WittVector::parse(const std::string& text, CtxPtr ctx_hint, unsigned length_hint) {
  std::size_t pos = 0;
  auto skip_ws = [&] {
    while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
  };
  auto err = [&](const std::string& what) -> void {
    fail("ParseError", what + " at position " + std::to_string(pos) + " in '" + text + "'");
  };
  skip_ws();
  if (text.compare(pos, 2, "wv") != 0) err("expected 'wv'");
  pos += 2;
  skip_ws();
  CtxPtr ctx = ctx_hint;
  if (pos < text.size() && text[pos] == '(') {
    ++pos;
    unsigned p = 0, vars = 0;
    std::string mod_text;
    for (;;) {
      skip_ws();
      if (text.compare(pos, 2, "p=") == 0) {
        pos += 2;
        std::size_t start = pos;
        while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) ++pos;
        p = static_cast<unsigned>(std::stoul(text.substr(start, pos - start)));
      } else if (text.compare(pos, 5, "vars=") == 0) {
        pos += 5;
        std::size_t start = pos;
        while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) ++pos;
        vars = static_cast<unsigned>(std::stoul(text.substr(start, pos - start)));
      } else if (text.compare(pos, 4, "mod=") == 0) {
        pos += 4;
        std::size_t start = pos;
        int depth = 0;
        while (pos < text.size() && (depth > 0 || (text[pos] != ',' && text[pos] != ')'))) {
          if (text[pos] == '(') ++depth;
          if (text[pos] == ')') --depth;
          ++pos;
        }
        mod_text = text.substr(start, pos - start);
      } else {
        err("expected p=, vars= or mod=");
      }
      skip_ws();
      if (pos < text.size() && text[pos] == ',') {
        ++pos;
        continue;
      }
      break;
    }
    if (pos >= text.size() || text[pos] != ')') err("expected ')'");
    ++pos;
    if (p == 0) err("missing p=");
    CoeffRing ring = CoeffRing::fp(p);
    ctx = mod_text.empty() ? PolyRingCtx::make(ring, vars)
                           : PolyRingCtx::quotient(ring, vars, MultiPoly::parse(ring, vars, mod_text));
    if (ctx_hint && !ctx->same(*ctx_hint)) err("literal header conflicts with the expected context");
  }
  if (!ctx) err("short wv literal needs a context from flags");
  skip_ws();
  if (pos >= text.size() || text[pos] != '[') err("expected '['");
  ++pos;
  std::vector<MultiPoly> comps;
  std::size_t start = pos;
  int depth = 0;
  for (; pos <= text.size(); ++pos) {
    if (pos == text.size()) err("unterminated wv literal");
    char c = text[pos];
    if (c == '(' || c == '[') ++depth;
    if (c == ')') --depth;
    if ((c == ';' || c == ']') && depth == 0) {
      comps.push_back(MultiPoly::parse(ctx->ring, ctx->num_vars, text.substr(start, pos - start)));
      start = pos + 1;
      if (c == ']') break;
    } else if (c == ']') {
      --depth;
    }
  }
  ++pos;
  skip_ws();
  if (pos != text.size()) err("trailing input");
  if (length_hint && comps.size() != length_hint)
    fail("ParseError", "expected " + std::to_string(length_hint) + " components, got " +
                           std::to_string(comps.size()));
  return WittVector(ctx, std::move(comps));
}

}  // namespace wittkit
