#pragma once

#include <optional>
#include <vector>

#include "wittkit/valuation.hpp"
#include "wittkit/witt.hpp"

namespace wittkit {

// Finite etale extension B = A[T]/(f), f monic in the last variable with
// f'(t) invertible in B. The inverse witness is verified by multiplication.
class EtaleExt {
public:
  // Computes the witness via a Sylvester/Cramer solve when none is supplied;
  // this requires the resultant of f and f' to be a unit constant.
  static EtaleExt make(const CtxPtr& base, MultiPoly f,
                       std::optional<MultiPoly> witness = std::nullopt);

  const CtxPtr& base_ctx() const { return ctx_a_; }
  const CtxPtr& quot_ctx() const { return ctx_b_; }
  const MultiPoly& modulus() const { return f_; }
  const MultiPoly& derivative() const { return fprime_; }
  const MultiPoly& derivative_inverse() const { return witness_; }
  unsigned degree() const { return deg_; }

  // u_{ji} with t^i = sum_j u_{ji} t^(jp); entries are T-free.
  const std::vector<std::vector<MultiPoly>>& basis_inverse() const { return u_; }

private:
  EtaleExt() = default;
  CtxPtr ctx_a_;
  CtxPtr ctx_b_;
  MultiPoly f_{CoeffRing::integers(), 0};
  MultiPoly fprime_{CoeffRing::integers(), 0};
  MultiPoly witness_{CoeffRing::integers(), 0};
  unsigned deg_ = 0;
  std::vector<std::vector<MultiPoly>> u_;
};

// Formal derivative with respect to `var`.
MultiPoly formal_derivative(const MultiPoly& g, unsigned var);

// Inverse of the matrix expressing {t^(jp)} in the power basis of a quotient
// context; throws NotEtaleAtLevel when its determinant is not a unit constant.
std::vector<std::vector<MultiPoly>> power_basis_matrix_inverse(const CtxPtr& ctx_b,
                                                               unsigned level);

struct BasisCoords {
  unsigned level = 0;
  std::vector<MultiPoly> coords;  // over A, one per basis element t^(i p^level)
};

// Coordinates of b in the basis 1, t^(p^n), ..., t^((m-1) p^n), computed by
// the twisted matrix recursion a(l+1) = U^(p^l) a(l).
BasisCoords power_basis_coords(const MultiPoly& b, const EtaleExt& ext, unsigned n);

struct GrowthBound {
  Rat growth;   // per-level constant G = C/(p-1)
  Rat matrix_c; // C with inner values of the basis inverse >= -C
  Rat quot_d;   // parameter of the quotient valuation used in the checks
};

// Constant controlling coordinate growth under the basis refinements:
// inner(a_{n,i}) >= nu(b) - p^n * G for all n.
GrowthBound power_basis_growth_bound(const EtaleExt& ext, const ValuationSpec& inner);

// Coefficients xi_0..xi_{m-1} over W(A) with eta = sum_i xi_i [t]^i.
std::vector<WittVector> etale_basis_expand(const WittVector& eta, const EtaleExt& ext);

// Truncated Newton iteration from the Teichmuller lift of a simple root of
// the first ghost component; returns the unique root congruent to [a] mod V.
// An alternative start may be supplied as long as its first component is the
// root; the iteration converges to the same answer.
WittVector hensel_lift(const std::vector<WittVector>& coeffs, const MultiPoly& root,
                       const std::optional<WittVector>& start = std::nullopt);

}  // namespace wittkit
