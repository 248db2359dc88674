#include "wittkit/gauss.hpp"

#include <algorithm>
#include <cstdio>
#include <sstream>

namespace wittkit {

namespace {

Rat p_power_inv(unsigned p, unsigned i) {
  Rat r(1, int_pow(Int(p), i));
  r.canonicalize();
  return r;
}

}  // namespace

ExtRat gauss_norm(const WittVector& alpha, const ValuationSpec& spec, const Rat& epsilon) {
  if (epsilon <= 0) fail("BadEpsilon", "epsilon must be positive");
  if (!alpha.ctx()->ring.is_fp()) fail("UnsupportedRing", "Gauss norms need an F_p base");
  unsigned p = alpha.ctx()->ring.p();
  ExtRat best = ExtRat::infinity();
  for (unsigned i = 0; i < alpha.length(); ++i) {
    ExtRat nu = eval_valuation(spec, alpha.comp(i));
    ExtRat term = ExtRat(Rat(i)) + nu.scaled(Rat(epsilon * p_power_inv(p, i)));
    best = ExtRat::min(best, term);
  }
  return best;
}

NormProfile norm_profile(const WittVector& alpha, const ValuationSpec& spec) {
  if (!alpha.ctx()->ring.is_fp()) fail("UnsupportedRing", "norm profiles need an F_p base");
  unsigned p = alpha.ctx()->ring.p();
  NormProfile out;
  for (unsigned i = 0; i < alpha.length(); ++i) {
    ExtRat nu = eval_valuation(spec, alpha.comp(i));
    if (!nu.is_finite()) continue;
    out.points.push_back(NormPoint{Rat(nu.value() * p_power_inv(p, i)), i});
  }
  return out;
}

NewtonPolygon newton_polygon(const WittVector& alpha, const ValuationSpec& spec) {
  NormProfile profile = norm_profile(alpha, spec);
  if (profile.points.empty())
    fail("EmptyPolygon", "Newton polygon of a vector with no finite component values");

  std::vector<std::pair<Rat, Rat>> pts;
  pts.reserve(profile.points.size());
  for (const auto& pt : profile.points) pts.emplace_back(pt.x, Rat(pt.i));
  std::sort(pts.begin(), pts.end(), [](const auto& a, const auto& b) {
    if (a.first != b.first) return a.first < b.first;
    return a.second < b.second;
  });

  // Monotone lower hull; collinear points collapse (cross == 0 pops).
  std::vector<std::pair<Rat, Rat>> hull;
  auto cross = [](const std::pair<Rat, Rat>& a, const std::pair<Rat, Rat>& b,
                  const std::pair<Rat, Rat>& c) {
    return Rat((b.first - a.first) * (c.second - a.second) -
               (b.second - a.second) * (c.first - a.first));
  };
  for (const auto& pt : pts) {
    if (!hull.empty() && hull.back() == pt) continue;
    while (hull.size() >= 2 && cross(hull[hull.size() - 2], hull.back(), pt) <= 0)
      hull.pop_back();
    // Same x: a later point sits directly above and never enters the boundary.
    if (!hull.empty() && hull.back().first == pt.first) continue;
    hull.push_back(pt);
  }

  // Only the negatively sloped part bounds the region; cut at the first
  // vertex of minimal height.
  std::size_t cut = 0;
  for (std::size_t i = 1; i < hull.size(); ++i)
    if (hull[i].second < hull[cut].second) cut = i;
  hull.resize(cut + 1);

  NewtonPolygon np;
  np.vertices = std::move(hull);
  np.leftmost_x = pts.front().first;
  return np;
}

RadiusCertificate radius_certificate(const WittVector& alpha, const ValuationSpec& spec,
                                     const Rat& delta) {
  if (delta <= 0) fail("BadEpsilon", "delta must be positive");
  if (alpha.is_zero()) return RadiusCertificate{Rat(1), Rat(0)};
  ExtRat floor = ExtRat(Rat(-delta));
  for (unsigned k = 0; k <= 32; ++k) {
    Rat eps(1, int_pow(Int(2), k));
    eps.canonicalize();
    ExtRat c = gauss_norm(alpha, spec, eps);
    if (c > floor) {
      if (!c.is_finite()) return RadiusCertificate{eps, Rat(0)};
      return RadiusCertificate{eps, c.value()};
    }
  }
  fail("CertificateSearchExhausted", "no epsilon of the form 1/2^k, k <= 32, clears -delta");
}

std::string polygon_tsv(const NewtonPolygon& np) {
  std::ostringstream out;
  out << "x\ty\n";
  for (const auto& [x, y] : np.vertices) out << rat_str(x) << "\t" << rat_str(y) << "\n";
  return out.str();
}

std::string polygon_svg(const NewtonPolygon& np, const NormProfile& profile) {
  double min_x = 0, max_x = 0, min_y = 0, max_y = 0;
  bool first = true;
  auto feed = [&](double x, double y) {
    if (first) {
      min_x = max_x = x;
      min_y = max_y = y;
      first = false;
    } else {
      min_x = std::min(min_x, x);
      max_x = std::max(max_x, x);
      min_y = std::min(min_y, y);
      max_y = std::max(max_y, y);
    }
  };
  for (const auto& pt : profile.points) feed(pt.x.get_d(), pt.i);
  for (const auto& [x, y] : np.vertices) feed(x.get_d(), y.get_d());
  double span_x = std::max(max_x - min_x, 1.0), span_y = std::max(max_y - min_y, 1.0);
  double w = 480, h = 360, pad = 40;
  auto sx = [&](double x) { return pad + (x - min_x) / span_x * (w - 2 * pad); };
  auto sy = [&](double y) { return h - pad - (y - min_y) / span_y * (h - 2 * pad); };

  char buf[160];
  std::ostringstream out;
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"480\" height=\"360\" "
         "viewBox=\"0 0 480 360\">\n";
  out << "<rect width=\"480\" height=\"360\" fill=\"white\"/>\n";
  if (np.vertices.size() > 1) {
    out << "<polyline fill=\"none\" stroke=\"black\" stroke-width=\"1.5\" points=\"";
    for (std::size_t i = 0; i < np.vertices.size(); ++i) {
      std::snprintf(buf, sizeof buf, "%s%.2f,%.2f", i ? " " : "",
                    sx(np.vertices[i].first.get_d()), sy(np.vertices[i].second.get_d()));
      out << buf;
    }
    out << "\"/>\n";
  }
  std::snprintf(buf, sizeof buf,
                "<line x1=\"%.2f\" y1=\"%.2f\" x2=\"%.2f\" y2=\"%.2f\" stroke=\"black\" "
                "stroke-dasharray=\"4 3\"/>\n",
                sx(np.leftmost_x.get_d()), sy(min_y), sx(np.leftmost_x.get_d()), sy(max_y));
  out << buf;
  for (const auto& pt : profile.points) {
    std::snprintf(buf, sizeof buf, "<circle cx=\"%.2f\" cy=\"%.2f\" r=\"3\" fill=\"steelblue\"/>\n",
                  sx(pt.x.get_d()), sy(static_cast<double>(pt.i)));
    out << buf;
  }
  for (const auto& [x, y] : np.vertices) {
    std::snprintf(buf, sizeof buf, "<circle cx=\"%.2f\" cy=\"%.2f\" r=\"4\" fill=\"black\"/>\n",
                  sx(x.get_d()), sy(y.get_d()));
    out << buf;
  }
  out << "</svg>\n";
  return out.str();
}

}  // namespace wittkit
