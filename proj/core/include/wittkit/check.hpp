#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "wittkit/expand.hpp"
#include "wittkit/gauss.hpp"
#include "wittkit/ring.hpp"
#include "wittkit/valuation.hpp"
#include "wittkit/witt.hpp"

namespace wittkit::check {

// Deterministic across platforms: mt19937_64 plus hand-rolled range mapping,
// no std distributions.
class Rng {
public:
  explicit Rng(std::uint64_t seed) : eng_(seed) {}

  std::uint64_t u64() { return eng_(); }
  std::uint64_t below(std::uint64_t n) { return n ? u64() % n : 0; }
  long range(long lo, long hi) { return lo + static_cast<long>(below(hi - lo + 1)); }
  bool chance(unsigned num, unsigned den) { return below(den) < num; }

private:
  std::mt19937_64 eng_;
};

MultiPoly random_poly(Rng& rng, CoeffRing ring, unsigned num_vars, unsigned max_deg,
                      unsigned max_terms, bool allow_zero = true);
MultiPoly random_nonzero_poly(Rng& rng, CoeffRing ring, unsigned num_vars,
                              unsigned max_deg, unsigned max_terms);
WittVector random_witt(Rng& rng, const CtxPtr& ctx, unsigned length, unsigned max_deg,
                       unsigned max_terms);

struct Report {
  std::string suite;
  long passed = 0;
  long total = 0;
  std::string first_failure;

  bool ok() const { return passed == total; }
  std::string line() const;
  void tally(bool pass, const std::string& detail);
};

Report suite_axioms(std::uint64_t seed, std::optional<unsigned> p_filter, long cases_per_p);
Report suite_ghost(std::uint64_t seed, std::optional<unsigned> p_filter, long cases);
Report suite_norms(std::uint64_t seed, std::optional<unsigned> p_filter, long cases);
Report suite_sandwich(std::uint64_t seed, std::optional<unsigned> p_filter, long cases);
Report suite_expand(std::uint64_t seed, std::optional<unsigned> p_filter, long cases);
Report suite_etale(std::uint64_t seed, std::optional<unsigned> p_filter, long cases);
Report suite_hensel(std::uint64_t seed, std::optional<unsigned> p_filter, long cases);

// `name` is one of the suites above or "all"; counts <= 0 pick defaults.
std::vector<Report> run_suites(const std::string& name, std::uint64_t seed,
                               std::optional<unsigned> p_filter, long cases = 0);

}  // namespace wittkit::check
