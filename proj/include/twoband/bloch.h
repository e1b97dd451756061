#pragma once

#include <cmath>

namespace twoband {

class BlochVector;

/// Coefficient vector of H = d . sigma, in energy units.
struct DVector {
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;

  double magnitude() const { return std::sqrt(x * x + y * y + z * z); }
  double dot(const DVector& o) const { return x * o.x + y * o.y + z * o.z; }
  /// d / |d|. GapClosedError when |d| < 1e-13.
  BlochVector normalized() const;

  DVector operator+(const DVector& o) const { return {x + o.x, y + o.y, z + o.z}; }
  DVector operator-(const DVector& o) const { return {x - o.x, y - o.y, z - o.z}; }
  DVector operator*(double s) const { return {x * s, y * s, z * s}; }
  bool operator==(const DVector&) const = default;
};

inline constexpr double kGapClosedThreshold = 1e-13;

/// Unit vector on the Bloch sphere. Construction normalizes its input.
class BlochVector {
 public:
  /// Normalizes (x, y, z); GapClosedError for a (near) zero vector.
  BlochVector(double x, double y, double z);

  /// (sin t cos p, sin t sin p, cos t).
  static BlochVector from_angles(double theta, double phi);

  double nx() const { return x_; }
  double ny() const { return y_; }
  double nz() const { return z_; }

  double dot(const BlochVector& o) const { return x_ * o.x_ + y_ * o.y_ + z_ * o.z_; }
  BlochVector operator-() const { return BlochVector(-x_, -y_, -z_, Unchecked{}); }

 private:
  struct Unchecked {};
  BlochVector(double x, double y, double z, Unchecked) : x_(x), y_(y), z_(z) {}

  double x_;
  double y_;
  double z_;
};

}  // namespace twoband
