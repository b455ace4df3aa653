#ifndef ELASTICA_CORE_GEOMETRY_HPP
#define ELASTICA_CORE_GEOMETRY_HPP

#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "types.hpp"

namespace elastica {

// Closed polygon of n vertices joined by rods of length 1/n, perimeter 1.
// Indices are cyclic. The equal-rod invariant is established by the builders
// below (resampling, shape generators) and monitored, not enforced, while a
// descent mutates vertices.
class Chain {
 public:
  static constexpr double kRodTol = 1e-10;

  Chain() = default;
  explicit Chain(std::vector<Vec2> vertices);

  size_t size() const { return verts_.size(); }
  const std::vector<Vec2>& vertices() const { return verts_; }
  std::vector<Vec2>& vertices() { return verts_; }
  Vec2 vertex(size_t k) const { return verts_[k % verts_.size()]; }

  // rod vector v_k = n (g_{k+1} - g_k); unit when the invariant holds
  Vec2 rod(size_t k) const;
  double perimeter() const;
  // max_k | n |g_{k+1}-g_k| - 1 |
  double rod_deviation() const;
  Vec2 centroid() const;

  bool operator==(const Chain& o) const { return verts_ == o.verts_; }

 private:
  std::vector<Vec2> verts_;
};

// Place n points on the closed input polygon so that consecutive chord
// lengths are all equal (bisection on the chord length), then scale to
// perimeter 1. The first output vertex is the first input vertex; outputs lie
// on the input polygon up to the final uniform scaling.
Chain resample_arclength(std::span<const Vec2> polygon, size_t n);
Chain resample_arclength(const Chain& chain, size_t n);

// Angle slice of a chain: theta[k] is the lifted angle of rod k, with
// |theta[k] - theta[k-1]| < pi along the slice. With `prev`, the global 2*pi
// multiple is chosen so |theta[k] - prev[k]| < pi for all k.
struct AngleSlice {
  std::vector<double> theta;
  int rotation_number = 0;
};
AngleSlice angles_from_chain(const Chain& chain,
                             const std::vector<double>* prev = nullptr,
                             double margin = 0.1);

struct ChainFromAngles {
  Chain chain;
  double closure_defect = 0.0;  // | g_{n+1} - g_1 |
  bool closed = false;
};
ChainFromAngles chain_from_angles(std::span<const double> theta, Vec2 base_point,
                                  double closure_tol = 1e-8);

// Adjust a lifted angle slice by a rigid-motion correction so that
// sum cos(theta) = sum sin(theta) = 0 (the reconstructed chain closes).
// Newton iteration on the two closure equations; the correction field is a
// combination of the two normal directions.
std::vector<double> close_angles(std::vector<double> theta);

enum class ShapeKind { Circle, Ellipse, Superellipse, Family };

// Two-parameter shape family used by the landscape experiment:
// u drives the ellipse eccentricity (0.9*u), v the superellipse exponent
// (2 + 1.5*v); family(0,0) is the circle.
constexpr double kFamilyEccMax = 0.9;
constexpr double kFamilyExpMax = 3.5;

Chain generate_shape(ShapeKind kind, double p1, double p2, size_t n);
inline Chain generate_circle(size_t n) { return generate_shape(ShapeKind::Circle, 0, 0, n); }
inline Chain generate_ellipse(double e, size_t n) {
  return generate_shape(ShapeKind::Ellipse, e, 0, n);
}

// sqrt(1 - (minor extent / major extent)^2) from the principal axes of the
// vertex cloud; 0 for a circle
double measure_eccentricity(const Chain& chain);

// Time-indexed sequence of chains sharing n; slices 0 and N_t are the fixed
// endpoint curves of the two-boundary problem.
class PathOfChains {
 public:
  PathOfChains() = default;
  PathOfChains(std::vector<Chain> slices, double a, double b);

  size_t slice_count() const { return slices_.size(); }  // N_t + 1
  size_t nt() const { return slices_.size() - 1; }
  size_t chain_size() const { return slices_.empty() ? 0 : slices_[0].size(); }
  const Chain& slice(size_t j) const { return slices_[j]; }
  const std::vector<Chain>& slices() const { return slices_; }

  // interior slices only; endpoints stay bitwise fixed
  void set_interior_slice(size_t j, Chain c);

  double param_a() const { return a_; }
  double param_b() const { return b_; }
  void set_params(double a, double b) { a_ = a; b_ = b; }

 private:
  std::vector<Chain> slices_;
  double a_ = 1.0;
  double b_ = 1.0;
};

using BumpProfile = std::function<double(double)>;
inline double tent_profile(double t) { return 1.0 - std::abs(2.0 * t - 1.0); }
inline double sin2_profile(double t) {
  const double s = std::sin(kPi * t);
  return s * s;
}

// slice j = (1 - j/N_t) a + (j/N_t) b vertexwise, optionally resampled to
// equal rods; endpoints bitwise equal to the inputs
PathOfChains build_linear_path(const Chain& from, const Chain& to, size_t nt,
                               bool per_slice_resample = true);

// base -> peak -> base through angle-space interpolation: the peak's angle
// lift is aligned to the base by a rigid rotation (mean offset removed), each
// interior slice is re-closed, so all slices have exact rods and no net
// rotation is carried along the path
PathOfChains build_bump_path(const Chain& base, const Chain& peak, size_t nt,
                             const BumpProfile& profile = tent_profile);

// Lifted angle field of a whole path with s- and t-continuity.
struct AnglePath {
  std::vector<double> theta;  // (nt+1) x n, row-major
  size_t n = 0;
  size_t nt = 0;
  int rotation_number = 0;

  double* slice(size_t j) { return theta.data() + j * n; }
  const double* slice(size_t j) const { return theta.data() + j * n; }
  double dt() const { return 1.0 / static_cast<double>(nt); }
};
AnglePath lift_path_angles(const PathOfChains& path);

}  // namespace elastica

#endif
