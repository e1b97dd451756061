#include "twoband/topology.h"

#include <cmath>
#include <numbers>
#include <sstream>
#include <vector>

#include "twoband/errors.h"

namespace twoband {
namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kMinAbs = 1e-12;
constexpr double kMaxResidual = 0.1;

void require_grid(int grid_size) {
  if (grid_size < 8) throw SpecError("winding grid needs at least 8 points");
}

}  // namespace

WindingResult winding_log_derivative_detailed(const ComplexFunction& f, int grid_size) {
  require_grid(grid_size);
  const double h = 2.0 * kPi / grid_size;
  // The endpoint k = pi is sampled separately, so a non-periodic f shows up
  // as a fractional winding instead of being closed by wrap-around.
  std::vector<std::complex<double>> values(grid_size + 1);
  for (int j = 0; j <= grid_size; ++j) {
    const double k = j == grid_size ? kPi : -kPi + j * h;
    values[j] = f(k);
    if (std::abs(values[j]) < kMinAbs) {
      std::ostringstream msg;
      msg << "|f| < 1e-12 at k = " << k << "; winding undefined (gap closed)";
      throw GapClosedError(msg.str());
    }
  }
  double phase = 0.0;
  for (int j = 0; j < grid_size; ++j) {
    // Principal argument of each step ratio does the unwrapping.
    phase += std::arg(values[j + 1] / values[j]);
  }
  WindingResult out;
  out.raw = phase / (2.0 * kPi);
  const double rounded = std::round(out.raw);
  if (std::abs(out.raw - rounded) > kMaxResidual) {
    std::ostringstream msg;
    msg << "winding " << out.raw << " is not close to an integer";
    throw NonQuantizedError(msg.str());
  }
  out.value = static_cast<int>(rounded);
  return out;
}

int winding_log_derivative(const ComplexFunction& f, int grid_size) {
  return winding_log_derivative_detailed(f, grid_size).value;
}

ComplexFunction off_diagonal(const TwoBandModel& model) {
  const TwoBandModel xy = to_xy_basis(model);
  return [xy](double k) {
    const DVector d = xy.d(k);
    return std::complex<double>(d.x, -d.y);
  };
}

double winding_cross_product(const TwoBandModel& model, int grid_size) {
  require_grid(grid_size);
  const TwoBandModel xy = to_xy_basis(model);
  const double h = 2.0 * kPi / grid_size;
  std::vector<BlochVector> n;
  n.reserve(grid_size);
  for (int j = 0; j < grid_size; ++j) n.push_back(xy.d(-kPi + j * h).normalized());

  double sum = 0.0;
  for (int j = 0; j < grid_size; ++j) {
    const BlochVector& next = n[(j + 1) % grid_size];
    const BlochVector& prev = n[(j + grid_size - 1) % grid_size];
    const double dnx = (next.nx() - prev.nx()) / (2.0 * h);
    const double dny = (next.ny() - prev.ny()) / (2.0 * h);
    sum += n[j].nx() * dny - n[j].ny() * dnx;
  }
  // d_x - i d_y turns opposite to (d_x, d_y).
  return -sum * h / (2.0 * kPi);
}

std::pair<int, int> dual_windings(const DualSSHParams& params, int grid_size) {
  params.validate();
  if (params.r == 1.0) throw GapClosedError("dual pair is gapless at r == 1");
  const auto [first, second] = dual_pair(params);
  return {winding_log_derivative(off_diagonal(first), grid_size),
          winding_log_derivative(off_diagonal(second), grid_size)};
}

}  // namespace twoband
