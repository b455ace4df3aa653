#ifndef ELASTICA_CORE_TYPES_HPP
#define ELASTICA_CORE_TYPES_HPP

#include <cmath>
#include <stdexcept>
#include <string>

namespace elastica {

struct Vec2 {
  double x = 0.0;
  double y = 0.0;

  Vec2() = default;
  Vec2(double x_, double y_) : x(x_), y(y_) {}

  Vec2 operator+(Vec2 o) const { return {x + o.x, y + o.y}; }
  Vec2 operator-(Vec2 o) const { return {x - o.x, y - o.y}; }
  Vec2 operator*(double s) const { return {x * s, y * s}; }
  Vec2 operator/(double s) const { return {x / s, y / s}; }
  Vec2& operator+=(Vec2 o) { x += o.x; y += o.y; return *this; }
  Vec2& operator-=(Vec2 o) { x -= o.x; y -= o.y; return *this; }
  Vec2 perp() const { return {-y, x}; }
  double norm() const { return std::hypot(x, y); }
  double norm2() const { return x * x + y * y; }

  bool operator==(const Vec2&) const = default;
};

inline Vec2 operator*(double s, Vec2 v) { return v * s; }
inline double dot(Vec2 a, Vec2 b) { return a.x * b.x + a.y * b.y; }
inline double cross(Vec2 a, Vec2 b) { return a.x * b.y - a.y * b.x; }

// stretch weight a, bend weight b; both strictly positive
struct ElasticParams {
  double a = 1.0;
  double b = 1.0;

  ElasticParams() = default;
  ElasticParams(double a_, double b_) : a(a_), b(b_) {
    if (!(a > 0.0) || !(b > 0.0))
      throw std::invalid_argument("elastic parameters must be positive, got a=" +
                                  std::to_string(a_) + " b=" + std::to_string(b_));
  }
};

// invalid caller input (sizes, ranges, flags)
struct InvalidArgument : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// geometrically unusable input: collapsed polygons, failed angle lifts
struct DegenerateInput : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// numerical breakdown in a solver or in the descent
struct SolverError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

constexpr double kPi = 3.14159265358979323846;
constexpr double kTwoPi = 2.0 * kPi;

}  // namespace elastica

#endif
