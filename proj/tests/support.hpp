#ifndef ELASTICA_TESTS_SUPPORT_HPP
#define ELASTICA_TESTS_SUPPORT_HPP

#include <cmath>
#include <random>
#include <vector>

#include "core/elastic_metric.hpp"
#include "core/gradcheck.hpp"
#include "core/path_gradient.hpp"

namespace elastica::testsupport {

inline double rel_err(double got, double want, double floor = 1e-30) {
  return std::abs(got - want) / std::max(std::abs(want), floor);
}

inline double max_vertex_distance(const Chain& a, const Chain& b) {
  double worst = 0.0;
  for (size_t k = 0; k < a.size(); ++k)
    worst = std::max(worst, (a.vertex(k) - b.vertex(k)).norm());
  return worst;
}

// distance modulo a common translation
inline double max_vertex_distance_mod_translation(const Chain& a, const Chain& b) {
  const Vec2 shift = b.vertex(0) - a.vertex(0);
  double worst = 0.0;
  for (size_t k = 0; k < a.size(); ++k)
    worst = std::max(worst, (a.vertex(k) + shift - b.vertex(k)).norm());
  return worst;
}

// Independent arc-position oracle for resampling: finds the uniform scale
// that maps the output back onto the input polygon (the resampler normalizes
// by the chord perimeter), locates every vertex through a cumulative-length
// table and reports the worst relative point-to-polygon distance.
// positions_out receives arc coordinates as fractions of the perimeter.
inline double arc_table_check(const std::vector<Vec2>& polygon, const Chain& out,
                              std::vector<double>* positions_out = nullptr) {
  const size_t m = polygon.size();
  double total = 0.0;
  std::vector<double> cum(m + 1, 0.0);
  for (size_t i = 0; i < m; ++i) {
    total += (polygon[(i + 1) % m] - polygon[i]).norm();
    cum[i + 1] = total;
  }
  auto foot = [&](Vec2 p, double* arc) {
    double best = 1e300, best_arc = 0.0;
    Vec2 best_q;
    for (size_t i = 0; i < m; ++i) {
      const Vec2 a = polygon[i], d = polygon[(i + 1) % m] - polygon[i];
      const double len2 = d.norm2();
      double t = len2 > 0 ? dot(p - a, d) / len2 : 0.0;
      t = std::clamp(t, 0.0, 1.0);
      const Vec2 q = a + d * t;
      const double dist = (q - p).norm();
      if (dist < best) {
        best = dist;
        best_arc = cum[i] + t * std::sqrt(len2);
        best_q = q;
      }
    }
    if (arc) *arc = best_arc;
    return best_q;
  };
  // the first output vertex is the first input vertex over the chord
  // perimeter, which pins the scale whenever the base is off the origin;
  // otherwise fall back to a project-and-refit least-squares iteration
  double scale;
  if (polygon[0].norm() > 1e-9 * total) {
    scale = polygon[0].norm() / out.vertex(0).norm();
  } else {
    scale = total;
    for (int it = 0; it < 30; ++it) {
      double num = 0.0, den = 0.0;
      for (size_t k = 0; k < out.size(); ++k) {
        const Vec2 q = foot(out.vertex(k) * scale, nullptr);
        num += dot(q, out.vertex(k));
        den += out.vertex(k).norm2();
      }
      scale = num / den;
    }
  }
  double worst = 0.0;
  std::vector<double> positions;
  for (size_t k = 0; k < out.size(); ++k) {
    double arc = 0.0;
    const Vec2 p = out.vertex(k) * scale;
    const Vec2 q = foot(p, &arc);
    worst = std::max(worst, (q - p).norm() / total);
    positions.push_back(arc / total);
  }
  if (positions_out) *positions_out = positions;
  return worst;
}

// rigid rotation of a chain about the origin
inline Chain rotated(const Chain& c, double angle) {
  const double cs = std::cos(angle), sn = std::sin(angle);
  std::vector<Vec2> verts = c.vertices();
  for (Vec2& v : verts) v = {cs * v.x - sn * v.y, sn * v.x + cs * v.y};
  return Chain(std::move(verts));
}

inline Chain reindexed(const Chain& c, size_t shift) {
  std::vector<Vec2> verts(c.size());
  for (size_t k = 0; k < c.size(); ++k) verts[k] = c.vertex(k + shift);
  return Chain(std::move(verts));
}

// uniform base-point-rotation path on the regular n-gon: theta_k(t) =
// 2 pi (k + t n) / n, one full turn over t in [0,1]
inline PathOfChains rotation_path(size_t n, size_t nt) {
  std::vector<Chain> slices;
  for (size_t j = 0; j <= nt; ++j) {
    const double t = static_cast<double>(j) / static_cast<double>(nt);
    std::vector<double> theta(n);
    for (size_t k = 0; k < n; ++k)
      theta[k] = kTwoPi * (static_cast<double>(k) + t * static_cast<double>(n)) /
                 static_cast<double>(n);
    slices.push_back(chain_from_angles(theta, Vec2(0, 0)).chain);
  }
  return PathOfChains(std::move(slices), 1.0, 1.0);
}

inline std::vector<Vec2> random_raw_field(size_t n, std::mt19937_64& rng, double scale = 1.0) {
  std::normal_distribution<double> g(0.0, scale);
  std::vector<Vec2> w(n);
  for (Vec2& v : w) v = {g(rng), g(rng)};
  return w;
}

inline std::vector<double> random_scalars(size_t n, std::mt19937_64& rng, double scale = 1.0) {
  std::normal_distribution<double> g(0.0, scale);
  std::vector<double> out(n);
  for (double& v : out) v = g(rng);
  return out;
}

inline Chain random_convex_chain(size_t n, std::mt19937_64& rng, double amplitude = 0.25) {
  const std::vector<double> theta = random_convex_theta(n, rng, amplitude);
  return chain_from_angles(theta, Vec2(0, 0)).chain;
}

}  // namespace elastica::testsupport

#endif
