#include "twoband/quadrature.h"

#include <algorithm>
#include <array>
#include <cmath>
#include <queue>
#include <sstream>

#include "twoband/errors.h"

namespace twoband {
namespace {

// Kronrod abscissae (descending, last is the center) and weights, QUADPACK qk15.
constexpr std::array<double, 8> kXgk = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
constexpr std::array<double, 8> kWgk = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
// Gauss weights for the odd-indexed Kronrod nodes (1, 3, 5) and the center.
constexpr std::array<double, 4> kWg = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Segment {
  double a;
  double b;
  double value;
  double error;
};

struct WorseFirst {
  bool operator()(const Segment& lhs, const Segment& rhs) const {
    if (lhs.error != rhs.error) return lhs.error < rhs.error;
    return lhs.a > rhs.a;
  }
};

Segment gauss_kronrod_15(const RealFunction& f, double a, double b) {
  constexpr double epmach = std::numeric_limits<double>::epsilon();
  constexpr double uflow = std::numeric_limits<double>::min();

  const double center = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  const double abs_half = std::abs(half);

  const double fc = f(center);
  double resg = fc * kWg[3];
  double resk = fc * kWgk[7];
  double resabs = std::abs(resk);

  std::array<double, 7> fv1{};
  std::array<double, 7> fv2{};
  for (int j = 0; j < 7; ++j) {
    const double dx = half * kXgk[j];
    const double f1 = f(center - dx);
    const double f2 = f(center + dx);
    fv1[j] = f1;
    fv2[j] = f2;
    resk += kWgk[j] * (f1 + f2);
    resabs += kWgk[j] * (std::abs(f1) + std::abs(f2));
    if (j % 2 == 1) resg += kWg[j / 2] * (f1 + f2);
  }

  const double reskh = resk * 0.5;
  double resasc = kWgk[7] * std::abs(fc - reskh);
  for (int j = 0; j < 7; ++j) {
    resasc += kWgk[j] * (std::abs(fv1[j] - reskh) + std::abs(fv2[j] - reskh));
  }

  const double result = resk * half;
  resabs *= abs_half;
  resasc *= abs_half;
  double err = std::abs((resk - resg) * half);
  if (resasc != 0.0 && err != 0.0) {
    err = resasc * std::min(1.0, std::pow(200.0 * err / resasc, 1.5));
  }
  if (resabs > uflow / (50.0 * epmach)) {
    err = std::max(epmach * 50.0 * resabs, err);
  }
  return {a, b, result, err};
}

}  // namespace

void BZQuadratureConfig::validate() const {
  if (!(abs_tol > 0.0) || !(rel_tol > 0.0)) {
    throw SpecError("quadrature tolerances must be positive");
  }
  if (max_subdivisions < 1) {
    throw SpecError("max_subdivisions must be at least 1");
  }
  for (double k : singular_points) {
    if (!(k >= -std::numbers::pi - 1e-12 && k <= std::numbers::pi + 1e-12)) {
      throw SpecError("singular points must lie in [-pi, pi]");
    }
  }
}

QuadratureResult integrate_adaptive(const RealFunction& f, double a, double b,
                                    std::span<const double> breakpoints, double abs_tol,
                                    double rel_tol, int max_subdivisions,
                                    double divergence_threshold) {
  if (a == b) return {};
  if (a > b) {
    QuadratureResult flipped = integrate_adaptive(f, b, a, breakpoints, abs_tol, rel_tol,
                                                  max_subdivisions, divergence_threshold);
    flipped.value = -flipped.value;
    return flipped;
  }

  std::vector<double> edges = {a};
  for (double p : breakpoints) {
    if (p > a && p < b) edges.push_back(p);
  }
  edges.push_back(b);
  std::sort(edges.begin(), edges.end());
  edges.erase(std::unique(edges.begin(), edges.end()), edges.end());

  std::priority_queue<Segment, std::vector<Segment>, WorseFirst> heap;
  double total = 0.0;
  double total_err = 0.0;
  for (std::size_t i = 0; i + 1 < edges.size(); ++i) {
    Segment s = gauss_kronrod_15(f, edges[i], edges[i + 1]);
    total += s.value;
    total_err += s.error;
    heap.push(s);
  }

  int count = static_cast<int>(heap.size());
  int since_resum = 0;
  while (total_err > std::max(abs_tol, rel_tol * std::abs(total))) {
    if (std::abs(total) > divergence_threshold) {
      return {total, total_err, count, true};
    }
    if (count >= max_subdivisions) {
      std::ostringstream msg;
      msg << "adaptive quadrature on [" << a << ", " << b << "] hit " << max_subdivisions
          << " subdivisions with error estimate " << total_err;
      throw ConvergenceError(msg.str());
    }
    const Segment worst = heap.top();
    const double mid = 0.5 * (worst.a + worst.b);
    if (!(mid > worst.a && mid < worst.b)) {
      // Interval exhausted at machine resolution; nothing further to gain.
      break;
    }
    heap.pop();
    const Segment left = gauss_kronrod_15(f, worst.a, mid);
    const Segment right = gauss_kronrod_15(f, mid, worst.b);
    total += left.value + right.value - worst.value;
    total_err += left.error + right.error - worst.error;
    heap.push(left);
    heap.push(right);
    ++count;

    // Incremental updates drift; resum periodically from the heap contents.
    if (++since_resum == 64) {
      since_resum = 0;
      auto copy = heap;
      total = 0.0;
      total_err = 0.0;
      while (!copy.empty()) {
        total += copy.top().value;
        total_err += copy.top().error;
        copy.pop();
      }
    }
  }

  // Final value summed in interval order so the result does not depend on
  // the order refinements happened in.
  std::vector<Segment> segments;
  segments.reserve(heap.size());
  while (!heap.empty()) {
    segments.push_back(heap.top());
    heap.pop();
  }
  std::sort(segments.begin(), segments.end(),
            [](const Segment& l, const Segment& r) { return l.a < r.a; });
  QuadratureResult out;
  for (const Segment& s : segments) {
    out.value += s.value;
    out.error_estimate += s.error;
  }
  out.intervals = count;
  out.diverged = std::abs(out.value) > divergence_threshold;
  return out;
}

QuadratureResult bz_average_detailed(const RealFunction& f, const BZQuadratureConfig& cfg,
                                     double divergence_threshold) {
  cfg.validate();
  constexpr double two_pi = 2.0 * std::numbers::pi;
  QuadratureResult r = integrate_adaptive(
      f, -std::numbers::pi, std::numbers::pi, cfg.singular_points, cfg.abs_tol * two_pi,
      cfg.rel_tol, cfg.max_subdivisions, divergence_threshold * two_pi);
  r.value /= two_pi;
  r.error_estimate /= two_pi;
  return r;
}

double bz_average(const RealFunction& f, const BZQuadratureConfig& cfg) {
  return bz_average_detailed(f, cfg).value;
}

double param_derivative(const RealFunction& g, double at, const FDConfig& cfg) {
  if (!(cfg.step > 0.0)) throw SpecError("finite-difference step must be positive");
  const double h = cfg.step;
  switch (cfg.scheme) {
    case FDScheme::central2:
      return (g(at + h) - g(at - h)) / (2.0 * h);
    case FDScheme::central4:
      return (-g(at + 2.0 * h) + 8.0 * g(at + h) - 8.0 * g(at - h) + g(at - 2.0 * h)) /
             (12.0 * h);
  }
  return 0.0;
}

}  // namespace twoband
