#pragma once

#include <functional>
#include <span>
#include <utility>
#include <vector>

namespace infostab {

/// Golden-section search for the minimum of a unimodal function on [lo, hi].
/// Stops when the bracket is narrower than `tolerance` or after `max_iterations`.
double golden_section_minimize(const std::function<double(double)>& objective, double lo,
                               double hi, double tolerance = 1e-13, int max_iterations = 200);

/// Least-squares slope of y against x through the origin.
double least_squares_slope(std::span<const double> x, std::span<const double> y);

/// Coefficient k minimizing max_i |y_i - k * x_i| (a convex piecewise-linear
/// function of k), found by golden-section search around the least-squares
/// slope.
double minimax_slope(std::span<const double> x, std::span<const double> y);

/// max_i |y_i - k * x_i|.
double max_deviation(std::span<const double> x, std::span<const double> y, double k);

/// Solves the 2x2 system [a b; c d] (u v) = (e f); throws an internal error when singular.
std::pair<double, double> solve_2x2(double a, double b, double c, double d, double e, double f);

double median(std::vector<double> values);

}  // namespace infostab
