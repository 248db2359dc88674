#pragma once

#include <memory>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "wittkit/rational.hpp"
#include "wittkit/ring.hpp"

namespace wittkit {

enum class ValKind { Trivial, WeightedDegree, MonicQuotient, Localization };

class ValuationSpec;
using SpecPtr = std::shared_ptr<const ValuationSpec>;

// Declarative pseudovaluation, evaluable on ring elements.
//   Trivial          nu(a) = 0 for a != 0
//   WeightedDegree   nu(f) = min over monomials of -(k_1 d_1 + ... + k_m d_m)
//   MonicQuotient    on A[T]/(f): nu~(b) = min_i { inner(a_i) - i*d } for the
//                    degree-reduced representative b = sum a_i T^i
//   Localization     on A_f: sigma of the reduced fraction a/f^m,
//                    sigma = inner(a) - m*d (see localization_profile for the
//                    full set of comparison functions)
class ValuationSpec {
public:
  static SpecPtr trivial();
  static SpecPtr weighted_degree(std::vector<Rat> weights);
  static SpecPtr monic_quotient(SpecPtr inner, Rat d, MultiPoly f);
  static SpecPtr localization(SpecPtr inner, MultiPoly f, Rat d);

  ValKind kind() const { return kind_; }
  const std::vector<Rat>& weights() const { return weights_; }
  const SpecPtr& inner() const { return inner_; }
  const Rat& d() const { return d_; }
  const MultiPoly& f() const;

  // Variable count of the elements this spec evaluates; nullopt for Trivial.
  std::optional<unsigned> arity() const;

  std::string str() const;
  static SpecPtr parse(CoeffRing ring, const std::string& text);

  bool operator==(const ValuationSpec& o) const;

private:
  ValuationSpec() = default;
  ValKind kind_ = ValKind::Trivial;
  std::vector<Rat> weights_;
  SpecPtr inner_;
  Rat d_;
  std::optional<MultiPoly> f_;
};

ExtRat eval_valuation(const ValuationSpec& spec, const MultiPoly& x);
ExtRat eval_valuation(const ValuationSpec& spec, const QuotElem& x);
ExtRat eval_valuation(const ValuationSpec& spec, const LocElem& x);

// min over the entries; the order function of a direct sum.
ExtRat product_order(std::span<const ExtRat> values);

// Value of g viewed in B[T] with T = `var`, coefficients measured by `inner`
// (over one variable fewer) and nu(T) = -d:  min_i { inner(g_i) - i*d }.
ExtRat poly_value_in_var(const MultiPoly& g, unsigned var, const ValuationSpec& inner,
                         const Rat& d);

// Monic f in `var`, degree m: strict inequality
// min_{0 <= i < m, a_i != 0} { inner(a_i) - i*d } > -m*d.
bool is_regular(const MultiPoly& f, const ValuationSpec& inner, const Rat& d,
                unsigned var);

struct LocalizationProfile {
  ExtRat nu_prime;
  bool nu_prime_exact = false;  // true on the regular-denominator branch
  ExtRat tau;                   // bounded search over a*f^r / f^(m+r), r <= L
  ExtRat sigma;
  ExtRat mu;                    // min(nu_prime, -d*theta)
  unsigned theta = 0;
  std::optional<unsigned> regular_var;  // distinguished variable when exact
};

LocalizationProfile localization_profile(const LocElem& z, const ValuationSpec& inner,
                                         const Rat& d, unsigned search_bound);

struct LocalizingReport {
  bool ok = true;
  // (sample index, power n) of the first violated instance.
  std::optional<std::pair<std::size_t, unsigned>> counterexample;
};

// Bounded certificate for nu(f^n x) <= C*nu(x) + n*D over the samples and
// 1 <= n <= n_max; not a proof over all of A.
LocalizingReport verify_localizing(const MultiPoly& f, const ValuationSpec& inner,
                                   const Rat& C, const Rat& D, unsigned n_max,
                                   std::span<const MultiPoly> samples);

struct SandwichCertificate {
  Rat c1 = 1;
  Rat c2 = 1;
  Rat d1 = 0;
  Rat d2 = 0;
};

struct SandwichReport {
  bool ok = true;
  std::vector<std::size_t> violations;
};

// Exact check of  v1 >= c2*v2 - d2  and  v2 >= c1*v1 - d1  on paired values.
SandwichReport verify_sandwich(std::span<const ExtRat> v1, std::span<const ExtRat> v2,
                               const SandwichCertificate& cert);

}  // namespace wittkit
