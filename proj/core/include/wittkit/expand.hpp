#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "wittkit/rational.hpp"
#include "wittkit/witt.hpp"

namespace wittkit {

// Fractional weight k with p-power denominator: k_i = scaled_i / p^u, u minimal.
struct FracWeight {
  std::vector<std::uint32_t> scaled;
  unsigned u = 0;
  unsigned p = 2;

  static FracWeight make(std::vector<std::uint32_t> scaled, unsigned u, unsigned p);

  Rat component(unsigned i) const;
  Rat total() const;  // |k|
  std::string str() const;

  bool operator==(const FracWeight& o) const { return scaled == o.scaled && u == o.u; }
};

// Graded order on weights: by |k|, then componentwise lexicographic.
struct FracWeightLess {
  bool operator()(const FracWeight& a, const FracWeight& b) const;
};

// Finite Teichmuller-monomial expansion alpha = sum_k xi_k X^k with
// xi_k in V^u W(F_p); reconstruction is exact at the truncation length.
class Expansion {
public:
  using TermMap = std::map<FracWeight, WittVector, FracWeightLess>;

  Expansion(CtxPtr base, unsigned length);

  const CtxPtr& base() const { return base_; }
  const CtxPtr& scalar_ctx() const { return scalar_; }
  unsigned length() const { return length_; }
  const TermMap& terms() const { return terms_; }

  void add_term(const FracWeight& k, const WittVector& xi_part);

private:
  CtxPtr base_;    // F_p[T_1..T_d]
  CtxPtr scalar_;  // F_p, zero variables
  unsigned length_;
  TermMap terms_;
};

Expansion teich_expand(const WittVector& alpha);
WittVector reconstruct(const Expansion& e);

// min_k { ord_V xi_k - (k_1 delta_1 + ... + k_d delta_d) }.
ExtRat norm_from_expansion(const Expansion& e, const std::vector<Rat>& deltas);

// min_k { ord_V xi_k - epsilon*|k| - u(k) }.
ExtRat breve_norm(const Expansion& e, const Rat& epsilon);

// Expansion of [x_1 T_1 + ... + x_d T_d]; every emitted weight has |k| = 1.
Expansion linear_teich_decompose(const CtxPtr& base, unsigned length,
                                 const std::vector<Int>& coeffs);

}  // namespace wittkit
