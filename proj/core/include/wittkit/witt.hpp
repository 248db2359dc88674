#pragma once

#include <string>
#include <vector>

#include "wittkit/ring.hpp"

namespace wittkit {

// Ghost components w_i = sum_{j<=i} p^j a_j^(p^(i-j)) of an integral lift.
struct GhostVector {
  unsigned p = 2;
  unsigned num_vars = 0;
  std::vector<MultiPoly> comps;  // over Z

  std::string str() const;
};

// Truncated Witt vector in W_{n+1}(A); components indexed 0..n share one ring
// context. Arithmetic routes through the ghost map over an integral lift:
// lift -> ghost -> pointwise -> from_ghost -> reduce.
class WittVector {
public:
  WittVector(CtxPtr ctx, std::vector<MultiPoly> comps);

  static WittVector zero(CtxPtr ctx, unsigned length);
  static WittVector one(CtxPtr ctx, unsigned length);

  const CtxPtr& ctx() const { return ctx_; }
  unsigned length() const { return static_cast<unsigned>(comps_.size()); }
  const MultiPoly& comp(unsigned i) const { return comps_.at(i); }
  const std::vector<MultiPoly>& comps() const { return comps_; }

  bool is_zero() const;
  bool operator==(const WittVector& o) const;
  bool operator!=(const WittVector& o) const { return !(*this == o); }

  // Short form wv[...]; full form wv(p=2, vars=1)[...] (plus mod=... for
  // quotient bases). Round-trips bit-exactly.
  std::string str(bool full = false) const;
  static WittVector parse(const std::string& text, CtxPtr ctx_hint = nullptr,
                          unsigned length_hint = 0);

private:
  CtxPtr ctx_;
  std::vector<MultiPoly> comps_;
};

struct VOrder {
  unsigned value = 0;  // length sentinel when infinite
  bool is_infinite = false;
};

WittVector teichmuller(const CtxPtr& ctx, unsigned length, const MultiPoly& a);

WittVector lift_to_integers(const WittVector& x);
GhostVector ghost_components(const WittVector& x_over_z, unsigned p);
GhostVector ghost_of(const WittVector& x);  // lift + ghost for F_p vectors
WittVector from_ghost(const GhostVector& g);
WittVector reduce_into(const WittVector& x_over_z, const CtxPtr& ctx);

WittVector witt_add(const WittVector& x, const WittVector& y);
WittVector witt_sub(const WittVector& x, const WittVector& y);
WittVector witt_mul(const WittVector& x, const WittVector& y);
WittVector witt_neg(const WittVector& x);
WittVector witt_pow(const WittVector& x, unsigned e);
WittVector witt_scale(const Int& k, const WittVector& x);  // k*x, k as integer multiple

WittVector verschiebung(const WittVector& x);
WittVector frobenius(const WittVector& x);
WittVector mul_p(const WittVector& x);
VOrder ord_v(const WittVector& x);

// Components u..end followed by zero padding; V^u(shift_down(x,u)) == x when
// the first u components vanish.
WittVector shift_down(const WittVector& x, unsigned u);

// Inverse of 1 - V(eta), the truncated geometric series.
WittVector geometric_inverse(const WittVector& eta);

// Two-sided inverse; requires an invertible first component.
WittVector witt_inverse(const WittVector& alpha);

// Polynomial evaluation with Witt arithmetic; coefficients constant term first.
WittVector witt_poly_eval(const std::vector<WittVector>& coeffs, const WittVector& x);

}  // namespace wittkit
