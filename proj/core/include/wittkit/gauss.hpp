#pragma once

#include <string>
#include <vector>

#include "wittkit/rational.hpp"
#include "wittkit/valuation.hpp"
#include "wittkit/witt.hpp"

namespace wittkit {

struct NormPoint {
  Rat x;       // p^-i * nu(a_i)
  unsigned i;  // component index
};

struct NormProfile {
  std::vector<NormPoint> points;  // indices with finite component value only
};

// Boundary of the region cut out by the sloped half planes y >= -e*x + c
// (e > 0) and the vertical half planes x >= c containing the profile points.
// Vertices run left to right with strictly increasing negative slopes; the
// supporting vertical line is reported separately.
struct NewtonPolygon {
  std::vector<std::pair<Rat, Rat>> vertices;
  Rat leftmost_x;
};

struct RadiusCertificate {
  Rat epsilon;
  Rat c;
};

// Truncated Gauss norm: min over i <= n of i + epsilon * p^-i * nu(a_i).
ExtRat gauss_norm(const WittVector& alpha, const ValuationSpec& spec, const Rat& epsilon);

NormProfile norm_profile(const WittVector& alpha, const ValuationSpec& spec);

NewtonPolygon newton_polygon(const WittVector& alpha, const ValuationSpec& spec);

// Exact (epsilon, c) with gauss_norm(alpha, epsilon) = c > -delta. Epsilon is
// the largest 1/2^k, k <= 32, meeting the bound; (1, 0) for the zero vector.
RadiusCertificate radius_certificate(const WittVector& alpha, const ValuationSpec& spec,
                                     const Rat& delta);

std::string polygon_tsv(const NewtonPolygon& np);
std::string polygon_svg(const NewtonPolygon& np, const NormProfile& profile);

}  // namespace wittkit
