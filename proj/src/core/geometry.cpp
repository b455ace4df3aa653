#include "geometry.hpp"

#include <algorithm>
#include <cmath>

namespace elastica {

Chain::Chain(std::vector<Vec2> vertices) : verts_(std::move(vertices)) {
  if (verts_.size() < 3)
    throw InvalidArgument("chain needs at least 3 vertices, got " +
                          std::to_string(verts_.size()));
}

Vec2 Chain::rod(size_t k) const {
  const size_t n = verts_.size();
  return (verts_[(k + 1) % n] - verts_[k % n]) * static_cast<double>(n);
}

double Chain::perimeter() const {
  const size_t n = verts_.size();
  double p = 0.0;
  for (size_t k = 0; k < n; ++k) p += (verts_[(k + 1) % n] - verts_[k]).norm();
  return p;
}

double Chain::rod_deviation() const {
  const size_t n = verts_.size();
  double worst = 0.0;
  for (size_t k = 0; k < n; ++k) {
    const double len = (verts_[(k + 1) % n] - verts_[k]).norm() * static_cast<double>(n);
    worst = std::max(worst, std::abs(len - 1.0));
  }
  return worst;
}

Vec2 Chain::centroid() const {
  Vec2 c;
  for (const Vec2& v : verts_) c += v;
  return c / static_cast<double>(verts_.size());
}

// ---------------------------------------------------------------------------
// equal-chord resampling

namespace {

struct Polyline {
  std::vector<Vec2> pts;
  std::vector<double> seglen;
  std::vector<double> cum;  // cum[i] = arc length before segment i
  double total = 0.0;
};

Polyline prepare_polyline(std::span<const Vec2> polygon) {
  Polyline poly;
  // drop consecutive duplicates (closing duplicate included)
  for (const Vec2& p : polygon) {
    if (poly.pts.empty() || (p - poly.pts.back()).norm() > 0.0) poly.pts.push_back(p);
  }
  while (poly.pts.size() > 1 && (poly.pts.front() - poly.pts.back()).norm() == 0.0)
    poly.pts.pop_back();
  if (poly.pts.size() < 3)
    throw DegenerateInput("resample: fewer than 3 distinct vertices after removing duplicates");
  const size_t m = poly.pts.size();
  poly.seglen.resize(m);
  poly.cum.resize(m + 1);
  poly.cum[0] = 0.0;
  for (size_t i = 0; i < m; ++i) {
    poly.seglen[i] = (poly.pts[(i + 1) % m] - poly.pts[i]).norm();
    poly.cum[i + 1] = poly.cum[i] + poly.seglen[i];
  }
  poly.total = poly.cum[m];
  if (poly.total < 1e-12)
    throw DegenerateInput("resample: total perimeter " + std::to_string(poly.total) +
                          " below 1e-12");
  return poly;
}

// Walk n chords of length c from pts[0]. Returns the consumed arc length
// minus the perimeter (the closure overshoot), or NaN when the walk fails.
double march_chords(const Polyline& poly, size_t n, double c, std::vector<Vec2>* out) {
  const size_t m = poly.pts.size();
  Vec2 p = poly.pts[0];
  size_t i = 0;      // current segment
  double f = 0.0;    // fraction of segment i consumed
  double arc = 0.0;
  size_t wraps = 0;
  if (out) {
    out->clear();
    out->push_back(p);
  }
  for (size_t step = 1; step <= n; ++step) {
    // advance whole segments while their far end is still inside the circle
    while (true) {
      const Vec2 end = poly.pts[(i + 1) % m];
      if ((end - p).norm2() >= c * c) break;
      arc += poly.seglen[i % m] * (1.0 - f);
      ++i;
      f = 0.0;
      if (++wraps > 3 * m * (n + 1)) return std::nan("");
    }
    // first crossing of |a0 + t d - p| = c with t in [f, 1]
    const Vec2 a0 = poly.pts[i % m];
    const Vec2 d = poly.pts[(i + 1) % m] - a0;
    const Vec2 w = a0 - p;
    const double A = dot(d, d);
    const double B = 2.0 * dot(w, d);
    const double C = dot(w, w) - c * c;
    const double disc = B * B - 4.0 * A * C;
    if (disc < 0.0 || A == 0.0) return std::nan("");
    const double t = (-B + std::sqrt(disc)) / (2.0 * A);
    if (!(t >= f - 1e-12 && t <= 1.0 + 1e-12)) return std::nan("");
    arc += poly.seglen[i % m] * (t - f);
    f = t;
    p = a0 + d * t;
    if (out && step < n) out->push_back(p);
  }
  return arc - poly.total;
}

}  // namespace

Chain resample_arclength(std::span<const Vec2> polygon, size_t n) {
  if (n < 3) throw InvalidArgument("resample: n must be at least 3");
  Polyline poly = prepare_polyline(polygon);

  // already an equal-rod n-gon: return it scaled (keeps the map idempotent)
  if (poly.pts.size() == n) {
    bool equal = true;
    for (double len : poly.seglen)
      if (std::abs(len * static_cast<double>(n) / poly.total - 1.0) > 1e-13) {
        equal = false;
        break;
      }
    if (equal) {
      std::vector<Vec2> scaled = poly.pts;
      for (Vec2& v : scaled) v = v / poly.total;
      return Chain(std::move(scaled));
    }
  }

  const double P = poly.total;
  double hi = P / static_cast<double>(n) * (1.0 + 1e-12);
  double lo = hi * 0.5;
  double flo = march_chords(poly, n, lo, nullptr);
  int guard = 0;
  while (!(flo < 0.0)) {
    lo *= 0.5;
    flo = march_chords(poly, n, lo, nullptr);
    if (++guard > 80)
      throw DegenerateInput("resample: equal-chord bracketing failed (degenerate polygon?)");
  }
  for (int it = 0; it < 90 && hi - lo > 1e-17 * P; ++it) {
    const double mid = 0.5 * (lo + hi);
    const double fm = march_chords(poly, n, mid, nullptr);
    if (std::isnan(fm) || fm > 0.0)
      hi = mid;
    else
      lo = mid;
  }
  std::vector<Vec2> pts;
  if (std::isnan(march_chords(poly, n, lo, &pts)))
    throw DegenerateInput("resample: chord walk failed at the converged chord length");

  double per = 0.0;
  for (size_t k = 0; k < n; ++k) per += (pts[(k + 1) % n] - pts[k]).norm();
  for (Vec2& v : pts) v = v / per;
  Chain out(std::move(pts));
  if (out.rod_deviation() > Chain::kRodTol)
    throw DegenerateInput("resample: rod deviation " + std::to_string(out.rod_deviation()) +
                          " exceeds tolerance (polygon too irregular for n=" +
                          std::to_string(n) + ")");
  return out;
}

Chain resample_arclength(const Chain& chain, size_t n) {
  return resample_arclength(std::span<const Vec2>(chain.vertices()), n);
}

// ---------------------------------------------------------------------------
// angle lifts

namespace {
double wrap_pi(double x) { return std::atan2(std::sin(x), std::cos(x)); }
}  // namespace

AngleSlice angles_from_chain(const Chain& chain, const std::vector<double>* prev,
                             double margin) {
  const size_t n = chain.size();
  AngleSlice out;
  out.theta.resize(n);
  const double limit = kPi - margin;
  double total_turn = 0.0;
  for (size_t k = 0; k < n; ++k) {
    const Vec2 v = chain.rod(k);
    if (v.norm() < 1e-300) throw DegenerateInput("angle lift: zero-length rod " + std::to_string(k));
    const double raw = std::atan2(v.y, v.x);
    if (k == 0) {
      out.theta[0] = raw;
    } else {
      const double d = wrap_pi(raw - out.theta[k - 1]);
      if (std::abs(d) >= limit)
        throw DegenerateInput("angle lift: turning angle " + std::to_string(d) + " at rod " +
                              std::to_string(k) + " too close to pi; raise n");
      out.theta[k] = out.theta[k - 1] + d;
      total_turn += d;
    }
  }
  const double closing = wrap_pi(out.theta[0] - out.theta[n - 1]);
  if (std::abs(closing) >= limit)
    throw DegenerateInput("angle lift: closing turn too close to pi; raise n");
  total_turn += closing;
  const double turns = total_turn / kTwoPi;
  out.rotation_number = static_cast<int>(std::lround(turns));
  if (std::abs(turns - out.rotation_number) > 1e-6)
    throw DegenerateInput("angle lift: total turning " + std::to_string(total_turn) +
                          " is not a multiple of 2*pi");
  if (prev) {
    if (prev->size() != n) throw InvalidArgument("angle lift: prev slice size mismatch");
    const double shift = kTwoPi * std::round(((*prev)[0] - out.theta[0]) / kTwoPi);
    for (double& t : out.theta) t += shift;
    for (size_t k = 0; k < n; ++k)
      if (std::abs(out.theta[k] - (*prev)[k]) >= kPi)
        throw DegenerateInput("angle lift: slice-to-slice jump >= pi at rod " +
                              std::to_string(k) + "; raise the number of time slices");
  }
  return out;
}

ChainFromAngles chain_from_angles(std::span<const double> theta, Vec2 base_point,
                                  double closure_tol) {
  const size_t n = theta.size();
  if (n < 3) throw InvalidArgument("chain_from_angles: need at least 3 angles");
  for (double t : theta)
    if (!std::isfinite(t)) throw InvalidArgument("chain_from_angles: non-finite angle");
  std::vector<Vec2> verts(n);
  verts[0] = base_point;
  const double inv_n = 1.0 / static_cast<double>(n);
  for (size_t k = 0; k + 1 < n; ++k)
    verts[k + 1] = verts[k] + Vec2(std::cos(theta[k]), std::sin(theta[k])) * inv_n;
  const Vec2 wrap =
      verts[n - 1] + Vec2(std::cos(theta[n - 1]), std::sin(theta[n - 1])) * inv_n;
  ChainFromAngles out;
  out.closure_defect = (wrap - verts[0]).norm();
  out.closed = out.closure_defect <= closure_tol;
  out.chain = Chain(std::move(verts));
  return out;
}

std::vector<double> close_angles(std::vector<double> theta) {
  for (int it = 0; it < 100; ++it) {
    double fx = 0.0, fy = 0.0;
    for (double t : theta) {
      fx += std::cos(t);
      fy += std::sin(t);
    }
    if (std::hypot(fx, fy) < 1e-12) break;
    // correction field theta_k += c . n_k with n_k = (-sin, cos)
    double j00 = 0.0, j01 = 0.0, j10 = 0.0, j11 = 0.0;
    for (double t : theta) {
      const double s = std::sin(t), c = std::cos(t);
      j00 += -s * -s;  // d fx / d c0
      j01 += -s * c;
      j10 += c * -s;
      j11 += c * c;
    }
    const double det = j00 * j11 - j01 * j10;
    if (std::abs(det) < 1e-14) throw SolverError("close_angles: singular closure Jacobian");
    const double c0 = (-fx * j11 + fy * j01) / det;
    const double c1 = (-j00 * fy + j10 * fx) / det;
    for (double& t : theta) t += c0 * -std::sin(t) + c1 * std::cos(t);
  }
  return theta;
}

// ---------------------------------------------------------------------------
// shape generators

namespace {

std::vector<Vec2> dense_superellipse(double axis_ratio, double exponent, size_t samples) {
  std::vector<Vec2> pts(samples);
  const double e = 2.0 / exponent;
  for (size_t i = 0; i < samples; ++i) {
    const double t = kTwoPi * static_cast<double>(i) / static_cast<double>(samples);
    const double ct = std::cos(t), st = std::sin(t);
    pts[i].x = std::copysign(std::pow(std::abs(ct), e), ct);
    pts[i].y = axis_ratio * std::copysign(std::pow(std::abs(st), e), st);
  }
  return pts;
}

Chain centered(Chain c) {
  const Vec2 ctr = c.centroid();
  for (Vec2& v : c.vertices()) v -= ctr;
  return c;
}

}  // namespace

Chain generate_shape(ShapeKind kind, double p1, double p2, size_t n) {
  if (n < 8) throw InvalidArgument("generate_shape: n must be at least 8");
  double axis_ratio = 1.0;
  double exponent = 2.0;
  switch (kind) {
    case ShapeKind::Circle:
      break;
    case ShapeKind::Ellipse:
      if (!(p1 >= 0.0 && p1 < 1.0))
        throw InvalidArgument("ellipse eccentricity must be in [0,1), got " +
                              std::to_string(p1));
      axis_ratio = std::sqrt(1.0 - p1 * p1);
      break;
    case ShapeKind::Superellipse:
      if (!(p1 >= 2.0))
        throw InvalidArgument("superellipse exponent must be >= 2, got " + std::to_string(p1));
      exponent = p1;
      break;
    case ShapeKind::Family:
      if (!(p1 >= 0.0 && p1 <= 1.0) || !(p2 >= 0.0 && p2 <= 1.0))
        throw InvalidArgument("family parameters must be in [0,1]^2");
      {
        const double ecc = kFamilyEccMax * p1;
        axis_ratio = std::sqrt(1.0 - ecc * ecc);
        exponent = 2.0 + (kFamilyExpMax - 2.0) * p2;
      }
      break;
  }

  if (axis_ratio == 1.0 && exponent == 2.0) {
    // exact regular n-gon: rods 1/n, perimeter 1
    std::vector<double> theta(n);
    for (size_t k = 0; k < n; ++k) theta[k] = kTwoPi * static_cast<double>(k) / n;
    return centered(chain_from_angles(theta, Vec2(0, 0)).chain);
  }
  const size_t samples = std::max<size_t>(65536, 64 * n);
  return centered(resample_arclength(dense_superellipse(axis_ratio, exponent, samples), n));
}

double measure_eccentricity(const Chain& chain) {
  const Vec2 c = chain.centroid();
  double sxx = 0.0, sxy = 0.0, syy = 0.0;
  for (const Vec2& v : chain.vertices()) {
    const Vec2 r = v - c;
    sxx += r.x * r.x;
    sxy += r.x * r.y;
    syy += r.y * r.y;
  }
  // principal axis of the covariance
  const double ang = 0.5 * std::atan2(2.0 * sxy, sxx - syy);
  const Vec2 e1(std::cos(ang), std::sin(ang));
  const Vec2 e2 = e1.perp();
  double w1 = 0.0, w2 = 0.0;
  for (const Vec2& v : chain.vertices()) {
    const Vec2 r = v - c;
    w1 = std::max(w1, std::abs(dot(r, e1)));
    w2 = std::max(w2, std::abs(dot(r, e2)));
  }
  const double hi = std::max(w1, w2), lo = std::min(w1, w2);
  if (hi <= 0.0) return 0.0;
  const double q = lo / hi;
  return std::sqrt(std::max(0.0, 1.0 - q * q));
}

// ---------------------------------------------------------------------------
// paths

PathOfChains::PathOfChains(std::vector<Chain> slices, double a, double b)
    : slices_(std::move(slices)), a_(a), b_(b) {
  if (slices_.size() < 2) throw InvalidArgument("path needs at least 2 slices");
  const size_t n = slices_[0].size();
  for (const Chain& c : slices_)
    if (c.size() != n) throw InvalidArgument("path slices must share the vertex count");
}

void PathOfChains::set_interior_slice(size_t j, Chain c) {
  if (j == 0 || j + 1 >= slices_.size())
    throw InvalidArgument("endpoint slices are fixed");
  if (c.size() != chain_size()) throw InvalidArgument("slice size mismatch");
  slices_[j] = std::move(c);
}

PathOfChains build_linear_path(const Chain& from, const Chain& to, size_t nt,
                               bool per_slice_resample) {
  if (from.size() != to.size())
    throw InvalidArgument("linear path: endpoint chains must share n (" +
                          std::to_string(from.size()) + " vs " + std::to_string(to.size()) +
                          ")");
  if (nt < 2) throw InvalidArgument("linear path: N_t must be at least 2");
  const size_t n = from.size();
  std::vector<Chain> slices;
  slices.reserve(nt + 1);
  slices.push_back(from);
  for (size_t j = 1; j < nt; ++j) {
    const double w = static_cast<double>(j) / static_cast<double>(nt);
    std::vector<Vec2> verts(n);
    for (size_t k = 0; k < n; ++k)
      verts[k] = from.vertex(k) * (1.0 - w) + to.vertex(k) * w;
    double per = 0.0;
    for (size_t k = 0; k < n; ++k) per += (verts[(k + 1) % n] - verts[k]).norm();
    if (per < 1e-12)
      throw DegenerateInput("linear path: slice " + std::to_string(j) +
                            " degenerates (perimeter " + std::to_string(per) + ")");
    if (per_slice_resample) {
      slices.push_back(resample_arclength(verts, n));
    } else {
      for (Vec2& v : verts) v = v / per;
      slices.push_back(Chain(std::move(verts)));
    }
  }
  slices.push_back(to);
  return PathOfChains(std::move(slices), 1.0, 1.0);
}

PathOfChains build_bump_path(const Chain& base, const Chain& peak, size_t nt,
                             const BumpProfile& profile) {
  if (base.size() != peak.size())
    throw InvalidArgument("bump path: base and peak must share n");
  if (nt < 2) throw InvalidArgument("bump path: N_t must be at least 2");
  if (std::abs(profile(0.0)) > 1e-12 || std::abs(profile(1.0)) > 1e-12)
    throw InvalidArgument("bump path: profile must vanish at t=0 and t=1");
  const size_t n = base.size();

  const AngleSlice base_angles = angles_from_chain(base);
  AngleSlice peak_angles = angles_from_chain(peak);
  if (peak_angles.rotation_number != base_angles.rotation_number)
    throw DegenerateInput("bump path: base and peak have different rotation numbers");

  // rigid-rotation alignment: remove the mean angle offset so the path does
  // not carry a net rotation from base to peak
  double offset = 0.0;
  for (size_t k = 0; k < n; ++k) offset += peak_angles.theta[k] - base_angles.theta[k];
  offset /= static_cast<double>(n);
  std::vector<double> diff(n);
  bool constant_peak = true;
  for (size_t k = 0; k < n; ++k) {
    diff[k] = peak_angles.theta[k] - offset - base_angles.theta[k];
    if (std::abs(diff[k]) > 1e-15) constant_peak = false;
  }

  const Vec2 base_centroid = base.centroid();
  std::vector<Chain> slices;
  slices.reserve(nt + 1);
  for (size_t j = 0; j <= nt; ++j) {
    const double t = static_cast<double>(j) / static_cast<double>(nt);
    const double w = profile(t);
    if (j == 0 || j == nt || std::abs(w) <= 1e-12 || constant_peak) {
      slices.push_back(base);
      continue;
    }
    std::vector<double> theta(n);
    for (size_t k = 0; k < n; ++k) theta[k] = base_angles.theta[k] + w * diff[k];
    theta = close_angles(std::move(theta));
    Chain c = chain_from_angles(theta, Vec2(0, 0)).chain;
    const Vec2 shift = base_centroid - c.centroid();
    for (Vec2& v : c.vertices()) v += shift;
    double per = c.perimeter();
    if (per < 1e-12)
      throw DegenerateInput("bump path: slice " + std::to_string(j) + " degenerates");
    slices.push_back(std::move(c));
  }
  return PathOfChains(std::move(slices), 1.0, 1.0);
}

AnglePath lift_path_angles(const PathOfChains& path) {
  AnglePath out;
  out.n = path.chain_size();
  out.nt = path.nt();
  out.theta.resize((out.nt + 1) * out.n);
  std::vector<double> prev;
  for (size_t j = 0; j <= out.nt; ++j) {
    AngleSlice s = angles_from_chain(path.slice(j), j == 0 ? nullptr : &prev);
    if (j == 0) {
      out.rotation_number = s.rotation_number;
    } else if (s.rotation_number != out.rotation_number) {
      throw DegenerateInput("path angle lift: rotation number changed at slice " +
                            std::to_string(j));
    }
    std::copy(s.theta.begin(), s.theta.end(), out.slice(j));
    prev = std::move(s.theta);
  }
  return out;
}

}  // namespace elastica
