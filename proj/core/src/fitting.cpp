#include "infostab/fitting.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "infostab/error.hpp"

namespace infostab {

double golden_section_minimize(const std::function<double(double)>& objective, double lo,
                               double hi, double tolerance, int max_iterations) {
  if (!(hi >= lo)) std::swap(lo, hi);
  const double ratio = (std::sqrt(5.0) - 1.0) / 2.0;
  double a = lo;
  double b = hi;
  double c = b - ratio * (b - a);
  double d = a + ratio * (b - a);
  double fc = objective(c);
  double fd = objective(d);
  for (int i = 0; i < max_iterations && (b - a) > tolerance; ++i) {
    if (fc <= fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - ratio * (b - a);
      fc = objective(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + ratio * (b - a);
      fd = objective(d);
    }
  }
  const double mid = 0.5 * (a + b);
  const double fm = objective(mid);
  if (fc < fm && fc <= fd) return c;
  if (fd < fm) return d;
  return mid;
}

double least_squares_slope(std::span<const double> x, std::span<const double> y) {
  double xy = 0.0;
  double xx = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    xy += x[i] * y[i];
    xx += x[i] * x[i];
  }
  return xx > 0.0 ? xy / xx : 0.0;
}

double max_deviation(std::span<const double> x, std::span<const double> y, double k) {
  double worst = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) worst = std::max(worst, std::abs(y[i] - k * x[i]));
  return worst;
}

double minimax_slope(std::span<const double> x, std::span<const double> y) {
  const double start = least_squares_slope(x, y);
  double xmax = 0.0;
  for (double v : x) xmax = std::max(xmax, std::abs(v));
  if (xmax == 0.0) return 0.0;
  // At the optimum the sup is at most D = sup at the start, and at the point
  // with the largest |x| that forces |k - start| * xmax <= 2D.
  const double radius = 2.0 * max_deviation(x, y, start) / xmax + 1e-300;
  const double scale = std::max({std::abs(start), radius, 1.0});
  return golden_section_minimize([&](double k) { return max_deviation(x, y, k); },
                                 start - radius, start + radius, 1e-15 * scale);
}

std::pair<double, double> solve_2x2(double a, double b, double c, double d, double e, double f) {
  const double det = a * d - b * c;
  const double scale = std::max({std::abs(a * d), std::abs(b * c), 1e-300});
  if (std::abs(det) <= 1e-14 * scale) {
    throw Error(ErrorKind::Internal, "singular 2x2 fit system");
  }
  return {(e * d - b * f) / det, (a * f - e * c) / det};
}

double median(std::vector<double> values) {
  if (values.empty()) throw Error(ErrorKind::Internal, "median of an empty set");
  const auto mid = values.size() / 2;
  std::nth_element(values.begin(), values.begin() + static_cast<std::ptrdiff_t>(mid), values.end());
  const double upper = values[mid];
  if (values.size() % 2 == 1) return upper;
  const double lower = *std::max_element(values.begin(), values.begin() + static_cast<std::ptrdiff_t>(mid));
  return 0.5 * (lower + upper);
}

}  // namespace infostab
