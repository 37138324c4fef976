#pragma once

#include <cstdint>
#include <memory>
#include <span>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

namespace infostab {

/// The parameter alpha together with the regime that drives certifier dispatch.
class Alpha {
 public:
  enum class Regime { Negative, Zero, PositiveNotOne, One };

  explicit Alpha(double value);

  double value() const noexcept { return value_; }
  Regime regime() const noexcept { return regime_; }

 private:
  double value_;
  Regime regime_;
};

std::string_view to_string(Alpha::Regime regime) noexcept;

// ---------------------------------------------------------------------------
// Function representations. Each wrapper holds an immutable node; copies share
// it. Nodes check their own domain and raise a domain error naming the point.

class ScalarFunction {
 public:
  struct Node {
    virtual ~Node() = default;
    virtual double eval(double x) const = 0;
    virtual nlohmann::json describe() const = 0;
  };

  ScalarFunction();  // the zero constant
  explicit ScalarFunction(std::shared_ptr<const Node> node);

  double operator()(double x) const { return node_->eval(x); }
  nlohmann::json describe() const { return node_->describe(); }

 private:
  std::shared_ptr<const Node> node_;
};

namespace scalar {

/// a*x^alpha + b*(1-x)^alpha - b on [0,1], with 0^alpha = 0.
ScalarFunction power_family(double a, double b, double alpha);
/// lambda*log2(1-x) + c on [0,1).
ScalarFunction log_family(double lambda, double c);
/// Binary entropy -(x log2 x + (1-x) log2(1-x)) on [0,1].
ScalarFunction shannon_s();
/// c*x*log2(x) on [0,inf).
ScalarFunction xlogx(double c);
/// c*x^alpha on [0,inf), 0 at the origin.
ScalarFunction power_law(double c, double alpha);
/// c*x^alpha*log2(x) on [0,inf), 0 at the origin.
ScalarFunction power_log(double c, double alpha);
ScalarFunction constant(double c);
/// slope*x on the real line.
ScalarFunction linear(double slope);
/// Piecewise-linear interpolation through strictly increasing abscissae.
ScalarFunction grid_sample(std::vector<double> xs, std::vector<double> ys);
/// Tabulates `f` at `xs` and wraps the table as a grid sample.
ScalarFunction sampled(const ScalarFunction& f, std::vector<double> xs);
ScalarFunction sum(std::vector<ScalarFunction> terms);
ScalarFunction scaled(double factor, ScalarFunction f);
/// height*exp(1 - 1/(1-r^2)) with r = (x-center)/width, zero for |r| >= 1.
ScalarFunction scaled_bump(double center, double width, double height);
/// Deterministic hash noise in [-height, height], a function of the bits of x.
ScalarFunction noise(double height, std::uint64_t seed);
/// `at0` at x = 0, `at1` at x = 1 and `interior` on (0,1).
ScalarFunction piecewise(double at0, ScalarFunction interior, double at1);

}  // namespace scalar

class BinaryFunction {
 public:
  struct Node {
    virtual ~Node() = default;
    virtual double eval(double u, double v) const = 0;
    virtual nlohmann::json describe() const = 0;
  };

  BinaryFunction();
  explicit BinaryFunction(std::shared_ptr<const Node> node);

  double operator()(double u, double v) const { return node_->eval(u, v); }
  nlohmann::json describe() const { return node_->describe(); }

 private:
  std::shared_ptr<const Node> node_;
};

namespace binary {

/// a*u + b*v + c.
BinaryFunction affine(double a, double b, double c);
/// c*u*v.
BinaryFunction product(double c);
/// phi(u+v).
BinaryFunction composed_sum(ScalarFunction phi);
/// phi(u+v) - phi(u) - phi(v).
BinaryFunction cocycle_of(ScalarFunction phi);
/// (u+v)^alpha * f(v/(u+v)).
BinaryFunction homogeneous_lift(ScalarFunction f, double alpha);
BinaryFunction noise(double height, std::uint64_t seed);
BinaryFunction sum(std::vector<BinaryFunction> terms);
BinaryFunction scaled(double factor, BinaryFunction f);

}  // namespace binary

/// Functions on the nonnegative cone minus the origin.
class TernaryFunction {
 public:
  struct Node {
    virtual ~Node() = default;
    virtual double eval(double x, double y, double z) const = 0;
    virtual nlohmann::json describe() const = 0;
  };

  TernaryFunction();
  explicit TernaryFunction(std::shared_ptr<const Node> node);

  double operator()(double x, double y, double z) const;
  nlohmann::json describe() const { return node_->describe(); }

 private:
  std::shared_ptr<const Node> node_;
};

namespace ternary {

/// c*[(x+y+z)^alpha - x^alpha - y^alpha - z^alpha].
TernaryFunction entropy_solution(double c, double alpha);
/// phi(x+y+z) - phi(x) - phi(y) - phi(z).
TernaryFunction phi_form(ScalarFunction phi);
/// a*(x^alpha + y^alpha + z^alpha) + phi(x+y+z).
TernaryFunction modified_entropy_solution(double a, double alpha, ScalarFunction phi);
/// Projection onto coordinate 0, 1 or 2.
TernaryFunction coordinate(int index);
TernaryFunction noise(double height, std::uint64_t seed);
TernaryFunction sum(std::vector<TernaryFunction> terms);
TernaryFunction scaled(double factor, TernaryFunction f);

}  // namespace ternary

// ---------------------------------------------------------------------------
// Entropies.

/// Coordinates must be nonnegative and sum to 1 within this tolerance.
inline constexpr double distribution_tolerance = 1e-9;

void validate_distribution(std::span<const double> p);

double shannon_entropy(std::span<const double> p);
double alpha_entropy(std::span<const double> p, double alpha);
/// Binary entropy, S(1/2) = 1.
double shannon_info_function(double x);
/// |H^{1+delta}(p) - H^1(p)|.
double entropy_limit_gap(std::span<const double> p, double delta);

/// f(x) = H^alpha_2(1-x, x) as a closed-form scalar function.
ScalarFunction alpha_entropy_generator(double alpha);
/// f(p) with sum_i f(p_i) = H^alpha_n(p).
ScalarFunction sum_property_generator(double alpha);

}  // namespace infostab
