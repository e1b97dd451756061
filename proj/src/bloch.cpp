#include "twoband/bloch.h"

#include <sstream>

#include "twoband/errors.h"

namespace twoband {

BlochVector DVector::normalized() const { return BlochVector(x, y, z); }

BlochVector::BlochVector(double x, double y, double z) {
  const double norm = std::sqrt(x * x + y * y + z * z);
  if (!(norm >= kGapClosedThreshold) || !std::isfinite(norm)) {
    std::ostringstream msg;
    msg << "cannot normalize vector of length " << norm << " (gap closed)";
    throw GapClosedError(msg.str());
  }
  x_ = x / norm;
  y_ = y / norm;
  z_ = z / norm;
}

BlochVector BlochVector::from_angles(double theta, double phi) {
  return BlochVector(std::sin(theta) * std::cos(phi), std::sin(theta) * std::sin(phi),
                     std::cos(theta), Unchecked{});
}

}  // namespace twoband
