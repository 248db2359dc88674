#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "wittkit/error.hpp"
#include "wittkit/rational.hpp"

namespace wittkit {

// Largest supported prime; keeps structural tables and lifted exponents bounded.
inline constexpr unsigned kMaxPrime = 97;

enum class RingKind { Integers, IntegersMod };

class CoeffRing {
public:
  static CoeffRing integers() { return CoeffRing(RingKind::Integers, 0); }
  static CoeffRing fp(unsigned p);  // trial-division primality check, 2 <= p <= kMaxPrime

  RingKind kind() const { return kind_; }
  bool is_fp() const { return kind_ == RingKind::IntegersMod; }
  unsigned p() const;

  bool operator==(const CoeffRing& o) const = default;
  std::string str() const;

private:
  CoeffRing(RingKind k, unsigned p) : kind_(k), p_(p) {}
  RingKind kind_;
  unsigned p_;
};

// Exponent vector, one entry per variable.
using Mono = std::vector<std::uint32_t>;

// Fixed canonical term order: total degree first, then lexicographic.
struct GradedLexLess {
  bool operator()(const Mono& a, const Mono& b) const;
};

// Sparse multivariate polynomial with exact coefficients over F_p or Z.
// Canonical form: no zero coefficients, F_p coefficients in {0..p-1},
// terms keyed by the graded-lex order.
class MultiPoly {
public:
  using TermMap = std::map<Mono, Int, GradedLexLess>;

  MultiPoly(CoeffRing ring, unsigned num_vars) : ring_(ring), num_vars_(num_vars) {}

  static MultiPoly constant(CoeffRing ring, unsigned num_vars, Int c);
  static MultiPoly variable(CoeffRing ring, unsigned num_vars, unsigned var,
                            std::uint32_t e = 1);
  static MultiPoly monomial(CoeffRing ring, unsigned num_vars, Mono m, Int c);

  const CoeffRing& ring() const { return ring_; }
  unsigned num_vars() const { return num_vars_; }
  const TermMap& terms() const { return terms_; }

  bool is_zero() const { return terms_.empty(); }
  bool is_one() const;
  bool is_constant() const;
  Int constant_value() const;  // coefficient of the empty monomial

  long total_degree() const;  // -1 for the zero polynomial
  long degree_in(unsigned var) const;

  MultiPoly operator+(const MultiPoly& o) const;
  MultiPoly operator-(const MultiPoly& o) const;
  MultiPoly operator*(const MultiPoly& o) const;
  MultiPoly operator-() const;
  MultiPoly pow(unsigned long e) const;

  // a^p by multiplying exponent vectors with p; requires an F_p ring.
  MultiPoly frobenius() const;

  // Coefficient of var^k, with the var slot zeroed (same arity).
  MultiPoly coeff_of(unsigned var, std::uint32_t k) const;
  // All coefficients of powers of var, index 0..degree_in(var).
  std::vector<MultiPoly> coeffs_in(unsigned var) const;
  // Remove/introduce a variable slot; drop_var requires the slot unused.
  MultiPoly drop_var(unsigned var) const;
  MultiPoly insert_var(unsigned at) const;

  bool operator==(const MultiPoly& o) const;
  bool operator!=(const MultiPoly& o) const { return !(*this == o); }

  std::string str() const;
  static MultiPoly parse(CoeffRing ring, unsigned num_vars, const std::string& text);

  // Accumulate c * m, keeping the canonical form.
  void add_term(const Mono& m, Int c);

private:
  void check_compatible(const MultiPoly& o) const;

  CoeffRing ring_;
  unsigned num_vars_;
  TermMap terms_;
};

// Euclidean division by a divisor monic in `var`: g = q*f + r, deg_var r < deg_var f.
std::pair<MultiPoly, MultiPoly> monic_divide(const MultiPoly& g, const MultiPoly& f,
                                             unsigned var);

// Exact division a / f, or nullopt when f does not divide a. Greedy graded-lex
// leading-term reduction; complete over F_p and Z since the leading term is
// multiplicative.
std::optional<MultiPoly> exact_divide(const MultiPoly& a, const MultiPoly& f);
bool is_divisible(const MultiPoly& a, const MultiPoly& f);

// Element ring context shared by Witt vectors and quotient elements. When a
// modulus is present, elements are representatives of A[T]/(f) with T the last
// variable and deg_T < deg_T f.
struct PolyRingCtx {
  CoeffRing ring;
  unsigned num_vars;
  std::optional<MultiPoly> modulus;  // monic in the last variable

  static std::shared_ptr<const PolyRingCtx> make(CoeffRing ring, unsigned num_vars);
  static std::shared_ptr<const PolyRingCtx> quotient(CoeffRing ring, unsigned num_vars,
                                                     MultiPoly f);

  bool same(const PolyRingCtx& o) const;
  MultiPoly reduce(MultiPoly x) const;
  MultiPoly zero() const { return MultiPoly(ring, num_vars); }
  MultiPoly one() const { return MultiPoly::constant(ring, num_vars, 1); }

private:
  PolyRingCtx(CoeffRing r, unsigned n, std::optional<MultiPoly> m)
      : ring(r), num_vars(n), modulus(std::move(m)) {}
};

using CtxPtr = std::shared_ptr<const PolyRingCtx>;

// Residue class in A[T]/(f), stored by its degree-reduced representative.
class QuotElem {
public:
  QuotElem(CtxPtr ctx, MultiPoly rep);

  const CtxPtr& ctx() const { return ctx_; }
  const MultiPoly& rep() const { return rep_; }

  QuotElem operator+(const QuotElem& o) const;
  QuotElem operator-(const QuotElem& o) const;
  QuotElem operator*(const QuotElem& o) const;
  bool operator==(const QuotElem& o) const;

private:
  CtxPtr ctx_;
  MultiPoly rep_;
};

// Reduced fraction a / f^m in the localization A_f: f does not divide a,
// or m = 0 with arbitrary a.
struct LocElem {
  MultiPoly num;
  unsigned exp = 0;
  MultiPoly f;
};

LocElem loc_reduce(MultiPoly a, unsigned m, const MultiPoly& f);
bool is_reduced(const LocElem& z);

}  // namespace wittkit
