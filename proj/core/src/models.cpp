#include "infostab/models.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <string>
#include <utility>

#include "infostab/domains.hpp"
#include "infostab/error.hpp"
#include "infostab/format.hpp"

namespace infostab {

using nlohmann::json;

Alpha::Alpha(double value) : value_(value) {
  if (!std::isfinite(value)) {
    throw Error(ErrorKind::Configuration, "alpha must be finite");
  }
  if (value < 0.0) {
    regime_ = Regime::Negative;
  } else if (value == 0.0) {
    regime_ = Regime::Zero;
  } else if (value == 1.0) {
    regime_ = Regime::One;
  } else {
    regime_ = Regime::PositiveNotOne;
  }
}

std::string_view to_string(Alpha::Regime regime) noexcept {
  switch (regime) {
    case Alpha::Regime::Negative: return "negative";
    case Alpha::Regime::Zero: return "zero";
    case Alpha::Regime::PositiveNotOne: return "positive-not-one";
    case Alpha::Regime::One: return "one";
  }
  return "unknown";
}

namespace {

[[noreturn]] void outside(const char* what, double x) {
  throw Error(ErrorKind::Domain, std::string(what) + " is undefined at x=" + format_double(x));
}

void require_unit(const char* what, double x) {
  if (!(x >= 0.0 && x <= 1.0)) outside(what, x);
}

void require_nonnegative(const char* what, double x) {
  if (!(x >= 0.0) || std::isinf(x)) outside(what, x);
}

std::uint64_t splitmix64(std::uint64_t z) {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

double hash_noise(double height, std::uint64_t seed, std::initializer_list<double> coords) {
  std::uint64_t h = splitmix64(seed);
  for (double c : coords) h = splitmix64(h ^ std::bit_cast<std::uint64_t>(c + 0.0));
  return height * (2.0 * unit_from_bits(h) - 1.0);
}

// -- scalar nodes -----------------------------------------------------------

struct PowerFamilyNode final : ScalarFunction::Node {
  double a, b, alpha;
  PowerFamilyNode(double a_, double b_, double alpha_) : a(a_), b(b_), alpha(alpha_) {}
  double eval(double x) const override {
    require_unit("power_family", x);
    return a * pow_convention(x, alpha) + b * pow_convention(1.0 - x, alpha) - b;
  }
  json describe() const override {
    return {{"kind", "power_family"}, {"a", a}, {"b", b}, {"alpha", alpha}};
  }
};

struct LogFamilyNode final : ScalarFunction::Node {
  double lambda, c;
  LogFamilyNode(double l, double c_) : lambda(l), c(c_) {}
  double eval(double x) const override {
    if (!(x >= 0.0 && x < 1.0)) outside("log_family", x);
    return lambda * std::log2(1.0 - x) + c;
  }
  json describe() const override { return {{"kind", "log_family"}, {"lambda", lambda}, {"c", c}}; }
};

struct ShannonNode final : ScalarFunction::Node {
  double eval(double x) const override {
    require_unit("shannon_s", x);
    return shannon_info_function(x);
  }
  json describe() const override { return {{"kind", "shannon_s"}}; }
};

struct XLogXNode final : ScalarFunction::Node {
  double c;
  explicit XLogXNode(double c_) : c(c_) {}
  double eval(double x) const override {
    require_nonnegative("xlogx", x);
    return c * xlog2_convention(x);
  }
  json describe() const override { return {{"kind", "xlogx"}, {"c", c}}; }
};

struct PowerLawNode final : ScalarFunction::Node {
  double c, alpha;
  PowerLawNode(double c_, double a) : c(c_), alpha(a) {}
  double eval(double x) const override {
    require_nonnegative("power_law", x);
    return c * pow_convention(x, alpha);
  }
  json describe() const override { return {{"kind", "power_law"}, {"c", c}, {"alpha", alpha}}; }
};

struct PowerLogNode final : ScalarFunction::Node {
  double c, alpha;
  PowerLogNode(double c_, double a) : c(c_), alpha(a) {}
  double eval(double x) const override {
    require_nonnegative("power_log", x);
    if (x == 0.0) return 0.0;
    return c * std::pow(x, alpha) * std::log2(x);
  }
  json describe() const override { return {{"kind", "power_log"}, {"c", c}, {"alpha", alpha}}; }
};

struct ConstantNode final : ScalarFunction::Node {
  double c;
  explicit ConstantNode(double c_) : c(c_) {}
  double eval(double) const override { return c; }
  json describe() const override { return {{"kind", "constant"}, {"c", c}}; }
};

struct LinearNode final : ScalarFunction::Node {
  double slope;
  explicit LinearNode(double s) : slope(s) {}
  double eval(double x) const override { return slope * x; }
  json describe() const override { return {{"kind", "linear"}, {"slope", slope}}; }
};

struct GridSampleNode final : ScalarFunction::Node {
  std::vector<double> xs, ys;
  GridSampleNode(std::vector<double> x, std::vector<double> y) : xs(std::move(x)), ys(std::move(y)) {
    if (xs.size() != ys.size() || xs.size() < 2) {
      throw Error(ErrorKind::Configuration,
                  "grid_sample needs at least two abscissae and as many values");
    }
    for (std::size_t i = 1; i < xs.size(); ++i) {
      if (!(xs[i] > xs[i - 1])) {
        throw Error(ErrorKind::Configuration, "grid_sample abscissae must be strictly increasing");
      }
    }
  }
  double eval(double x) const override {
    if (!(x >= xs.front() && x <= xs.back())) outside("grid_sample", x);
    auto it = std::upper_bound(xs.begin(), xs.end(), x);
    if (it == xs.end()) return ys.back();
    const auto hi = static_cast<std::size_t>(it - xs.begin());
    const auto lo = hi - 1;
    if (x == xs[lo]) return ys[lo];
    const double t = (x - xs[lo]) / (xs[hi] - xs[lo]);
    return ys[lo] + t * (ys[hi] - ys[lo]);
  }
  json describe() const override {
    return {{"kind", "grid_sample"}, {"xs", xs}, {"ys", ys}};
  }
};

struct ScalarSumNode final : ScalarFunction::Node {
  std::vector<ScalarFunction> terms;
  explicit ScalarSumNode(std::vector<ScalarFunction> t) : terms(std::move(t)) {}
  double eval(double x) const override {
    double total = 0.0;
    for (const auto& f : terms) total += f(x);
    return total;
  }
  json describe() const override {
    json list = json::array();
    for (const auto& f : terms) list.push_back(f.describe());
    return {{"kind", "sum"}, {"terms", list}};
  }
};

struct ScalarScaledNode final : ScalarFunction::Node {
  double factor;
  ScalarFunction f;
  ScalarScaledNode(double k, ScalarFunction g) : factor(k), f(std::move(g)) {}
  double eval(double x) const override { return factor * f(x); }
  json describe() const override {
    return {{"kind", "scaled"}, {"factor", factor}, {"of", f.describe()}};
  }
};

struct BumpNode final : ScalarFunction::Node {
  double center, width, height;
  BumpNode(double c, double w, double h) : center(c), width(w), height(h) {
    if (!(w > 0.0)) throw Error(ErrorKind::Configuration, "scaled_bump width must be positive");
  }
  double eval(double x) const override {
    const double r = (x - center) / width;
    if (std::abs(r) >= 1.0) return 0.0;
    return height * std::exp(1.0 - 1.0 / (1.0 - r * r));
  }
  json describe() const override {
    return {{"kind", "scaled_bump"}, {"center", center}, {"width", width}, {"height", height}};
  }
};

struct ScalarNoiseNode final : ScalarFunction::Node {
  double height;
  std::uint64_t seed;
  ScalarNoiseNode(double h, std::uint64_t s) : height(h), seed(s) {}
  double eval(double x) const override { return hash_noise(height, seed, {x}); }
  json describe() const override { return {{"kind", "noise"}, {"height", height}, {"seed", seed}}; }
};

struct PiecewiseNode final : ScalarFunction::Node {
  double at0, at1;
  ScalarFunction interior;
  PiecewiseNode(double a0, ScalarFunction f, double a1) : at0(a0), at1(a1), interior(std::move(f)) {}
  double eval(double x) const override {
    require_unit("piecewise", x);
    if (x == 0.0) return at0;
    if (x == 1.0) return at1;
    return interior(x);
  }
  json describe() const override {
    return {{"kind", "piecewise"}, {"at0", at0}, {"interior", interior.describe()}, {"at1", at1}};
  }
};

}  // namespace

ScalarFunction::ScalarFunction() : node_(std::make_shared<ConstantNode>(0.0)) {}
ScalarFunction::ScalarFunction(std::shared_ptr<const Node> node) : node_(std::move(node)) {
  if (!node_) throw Error(ErrorKind::Internal, "null scalar function node");
}

namespace scalar {

ScalarFunction power_family(double a, double b, double alpha) {
  return ScalarFunction(std::make_shared<PowerFamilyNode>(a, b, alpha));
}
ScalarFunction log_family(double lambda, double c) {
  return ScalarFunction(std::make_shared<LogFamilyNode>(lambda, c));
}
ScalarFunction shannon_s() { return ScalarFunction(std::make_shared<ShannonNode>()); }
ScalarFunction xlogx(double c) { return ScalarFunction(std::make_shared<XLogXNode>(c)); }
ScalarFunction power_law(double c, double alpha) {
  return ScalarFunction(std::make_shared<PowerLawNode>(c, alpha));
}
ScalarFunction power_log(double c, double alpha) {
  return ScalarFunction(std::make_shared<PowerLogNode>(c, alpha));
}
ScalarFunction constant(double c) { return ScalarFunction(std::make_shared<ConstantNode>(c)); }
ScalarFunction linear(double slope) { return ScalarFunction(std::make_shared<LinearNode>(slope)); }
ScalarFunction grid_sample(std::vector<double> xs, std::vector<double> ys) {
  return ScalarFunction(std::make_shared<GridSampleNode>(std::move(xs), std::move(ys)));
}
ScalarFunction sampled(const ScalarFunction& f, std::vector<double> xs) {
  std::vector<double> ys;
  ys.reserve(xs.size());
  for (double x : xs) ys.push_back(f(x));
  return grid_sample(std::move(xs), std::move(ys));
}
ScalarFunction sum(std::vector<ScalarFunction> terms) {
  return ScalarFunction(std::make_shared<ScalarSumNode>(std::move(terms)));
}
ScalarFunction scaled(double factor, ScalarFunction f) {
  return ScalarFunction(std::make_shared<ScalarScaledNode>(factor, std::move(f)));
}
ScalarFunction scaled_bump(double center, double width, double height) {
  return ScalarFunction(std::make_shared<BumpNode>(center, width, height));
}
ScalarFunction noise(double height, std::uint64_t seed) {
  return ScalarFunction(std::make_shared<ScalarNoiseNode>(height, seed));
}
ScalarFunction piecewise(double at0, ScalarFunction interior, double at1) {
  return ScalarFunction(std::make_shared<PiecewiseNode>(at0, std::move(interior), at1));
}

}  // namespace scalar

// -- binary nodes -------------------------------------------------------------

namespace {

struct AffineNode final : BinaryFunction::Node {
  double a, b, c;
  AffineNode(double a_, double b_, double c_) : a(a_), b(b_), c(c_) {}
  double eval(double u, double v) const override { return a * u + b * v + c; }
  json describe() const override { return {{"kind", "affine"}, {"a", a}, {"b", b}, {"c", c}}; }
};

struct ProductNode final : BinaryFunction::Node {
  double c;
  explicit ProductNode(double c_) : c(c_) {}
  double eval(double u, double v) const override { return c * u * v; }
  json describe() const override { return {{"kind", "product"}, {"c", c}}; }
};

struct ComposedSumNode final : BinaryFunction::Node {
  ScalarFunction phi;
  explicit ComposedSumNode(ScalarFunction f) : phi(std::move(f)) {}
  double eval(double u, double v) const override { return phi(u + v); }
  json describe() const override { return {{"kind", "composed_sum"}, {"phi", phi.describe()}}; }
};

struct CocycleNode final : BinaryFunction::Node {
  ScalarFunction phi;
  explicit CocycleNode(ScalarFunction f) : phi(std::move(f)) {}
  double eval(double u, double v) const override { return phi(u + v) - phi(u) - phi(v); }
  json describe() const override { return {{"kind", "cocycle_of"}, {"phi", phi.describe()}}; }
};

struct LiftNode final : BinaryFunction::Node {
  ScalarFunction f;
  double alpha;
  LiftNode(ScalarFunction g, double a) : f(std::move(g)), alpha(a) {}
  double eval(double u, double v) const override {
    const double s = u + v;
    if (!(u >= 0.0 && v >= 0.0 && s > 0.0)) {
      throw Error(ErrorKind::Domain, "homogeneous_lift is undefined at (" + format_double(u) +
                                         ", " + format_double(v) + ")");
    }
    return std::pow(s, alpha) * f(std::min(1.0, v / s));
  }
  json describe() const override {
    return {{"kind", "homogeneous_lift"}, {"f", f.describe()}, {"alpha", alpha}};
  }
};

struct BinaryNoiseNode final : BinaryFunction::Node {
  double height;
  std::uint64_t seed;
  BinaryNoiseNode(double h, std::uint64_t s) : height(h), seed(s) {}
  double eval(double u, double v) const override { return hash_noise(height, seed, {u, v}); }
  json describe() const override { return {{"kind", "noise"}, {"height", height}, {"seed", seed}}; }
};

struct BinarySumNode final : BinaryFunction::Node {
  std::vector<BinaryFunction> terms;
  explicit BinarySumNode(std::vector<BinaryFunction> t) : terms(std::move(t)) {}
  double eval(double u, double v) const override {
    double total = 0.0;
    for (const auto& f : terms) total += f(u, v);
    return total;
  }
  json describe() const override {
    json list = json::array();
    for (const auto& f : terms) list.push_back(f.describe());
    return {{"kind", "sum"}, {"terms", list}};
  }
};

struct BinaryScaledNode final : BinaryFunction::Node {
  double factor;
  BinaryFunction f;
  BinaryScaledNode(double k, BinaryFunction g) : factor(k), f(std::move(g)) {}
  double eval(double u, double v) const override { return factor * f(u, v); }
  json describe() const override {
    return {{"kind", "scaled"}, {"factor", factor}, {"of", f.describe()}};
  }
};

}  // namespace

BinaryFunction::BinaryFunction() : node_(std::make_shared<AffineNode>(0.0, 0.0, 0.0)) {}
BinaryFunction::BinaryFunction(std::shared_ptr<const Node> node) : node_(std::move(node)) {
  if (!node_) throw Error(ErrorKind::Internal, "null binary function node");
}

namespace binary {

BinaryFunction affine(double a, double b, double c) {
  return BinaryFunction(std::make_shared<AffineNode>(a, b, c));
}
BinaryFunction product(double c) { return BinaryFunction(std::make_shared<ProductNode>(c)); }
BinaryFunction composed_sum(ScalarFunction phi) {
  return BinaryFunction(std::make_shared<ComposedSumNode>(std::move(phi)));
}
BinaryFunction cocycle_of(ScalarFunction phi) {
  return BinaryFunction(std::make_shared<CocycleNode>(std::move(phi)));
}
BinaryFunction homogeneous_lift(ScalarFunction f, double alpha) {
  return BinaryFunction(std::make_shared<LiftNode>(std::move(f), alpha));
}
BinaryFunction noise(double height, std::uint64_t seed) {
  return BinaryFunction(std::make_shared<BinaryNoiseNode>(height, seed));
}
BinaryFunction sum(std::vector<BinaryFunction> terms) {
  return BinaryFunction(std::make_shared<BinarySumNode>(std::move(terms)));
}
BinaryFunction scaled(double factor, BinaryFunction f) {
  return BinaryFunction(std::make_shared<BinaryScaledNode>(factor, std::move(f)));
}

}  // namespace binary

// -- ternary nodes ------------------------------------------------------------

namespace {

struct EntropySolutionNode final : TernaryFunction::Node {
  double c, alpha;
  EntropySolutionNode(double c_, double a) : c(c_), alpha(a) {}
  double eval(double x, double y, double z) const override {
    return c * (pow_convention(x + y + z, alpha) - pow_convention(x, alpha) -
                pow_convention(y, alpha) - pow_convention(z, alpha));
  }
  json describe() const override {
    return {{"kind", "entropy_solution"}, {"c", c}, {"alpha", alpha}};
  }
};

struct PhiFormNode final : TernaryFunction::Node {
  ScalarFunction phi;
  explicit PhiFormNode(ScalarFunction f) : phi(std::move(f)) {}
  double eval(double x, double y, double z) const override {
    return phi(x + y + z) - phi(x) - phi(y) - phi(z);
  }
  json describe() const override { return {{"kind", "phi_form"}, {"phi", phi.describe()}}; }
};

struct ModifiedEntropyNode final : TernaryFunction::Node {
  double a, alpha;
  ScalarFunction phi;
  ModifiedEntropyNode(double a_, double al, ScalarFunction f) : a(a_), alpha(al), phi(std::move(f)) {}
  double eval(double x, double y, double z) const override {
    return a * (pow_convention(x, alpha) + pow_convention(y, alpha) + pow_convention(z, alpha)) +
           phi(x + y + z);
  }
  json describe() const override {
    return {{"kind", "modified_entropy_solution"}, {"a", a}, {"alpha", alpha}, {"phi", phi.describe()}};
  }
};

struct CoordinateNode final : TernaryFunction::Node {
  int index;
  explicit CoordinateNode(int i) : index(i) {
    if (i < 0 || i > 2) throw Error(ErrorKind::Configuration, "coordinate index must be 0, 1 or 2");
  }
  double eval(double x, double y, double z) const override {
    return index == 0 ? x : (index == 1 ? y : z);
  }
  json describe() const override { return {{"kind", "coordinate"}, {"index", index}}; }
};

struct TernaryNoiseNode final : TernaryFunction::Node {
  double height;
  std::uint64_t seed;
  TernaryNoiseNode(double h, std::uint64_t s) : height(h), seed(s) {}
  double eval(double x, double y, double z) const override {
    return hash_noise(height, seed, {x, y, z});
  }
  json describe() const override { return {{"kind", "noise"}, {"height", height}, {"seed", seed}}; }
};

struct TernarySumNode final : TernaryFunction::Node {
  std::vector<TernaryFunction> terms;
  explicit TernarySumNode(std::vector<TernaryFunction> t) : terms(std::move(t)) {}
  double eval(double x, double y, double z) const override {
    double total = 0.0;
    for (const auto& f : terms) total += f(x, y, z);
    return total;
  }
  json describe() const override {
    json list = json::array();
    for (const auto& f : terms) list.push_back(f.describe());
    return {{"kind", "sum"}, {"terms", list}};
  }
};

struct TernaryScaledNode final : TernaryFunction::Node {
  double factor;
  TernaryFunction f;
  TernaryScaledNode(double k, TernaryFunction g) : factor(k), f(std::move(g)) {}
  double eval(double x, double y, double z) const override { return factor * f(x, y, z); }
  json describe() const override {
    return {{"kind", "scaled"}, {"factor", factor}, {"of", f.describe()}};
  }
};

}  // namespace

TernaryFunction::TernaryFunction() : node_(std::make_shared<EntropySolutionNode>(0.0, 1.0)) {}
TernaryFunction::TernaryFunction(std::shared_ptr<const Node> node) : node_(std::move(node)) {
  if (!node_) throw Error(ErrorKind::Internal, "null ternary function node");
}

double TernaryFunction::operator()(double x, double y, double z) const {
  if (!(x >= 0.0 && y >= 0.0 && z >= 0.0) || x + y + z <= 0.0) {
    throw Error(ErrorKind::Domain, "ternary function is undefined at (" + format_double(x) + ", " +
                                       format_double(y) + ", " + format_double(z) + ")");
  }
  return node_->eval(x, y, z);
}

namespace ternary {

TernaryFunction entropy_solution(double c, double alpha) {
  return TernaryFunction(std::make_shared<EntropySolutionNode>(c, alpha));
}
TernaryFunction phi_form(ScalarFunction phi) {
  return TernaryFunction(std::make_shared<PhiFormNode>(std::move(phi)));
}
TernaryFunction modified_entropy_solution(double a, double alpha, ScalarFunction phi) {
  return TernaryFunction(std::make_shared<ModifiedEntropyNode>(a, alpha, std::move(phi)));
}
TernaryFunction coordinate(int index) {
  return TernaryFunction(std::make_shared<CoordinateNode>(index));
}
TernaryFunction noise(double height, std::uint64_t seed) {
  return TernaryFunction(std::make_shared<TernaryNoiseNode>(height, seed));
}
TernaryFunction sum(std::vector<TernaryFunction> terms) {
  return TernaryFunction(std::make_shared<TernarySumNode>(std::move(terms)));
}
TernaryFunction scaled(double factor, TernaryFunction f) {
  return TernaryFunction(std::make_shared<TernaryScaledNode>(factor, std::move(f)));
}

}  // namespace ternary

// -- entropies ---------------------------------------------------------------

void validate_distribution(std::span<const double> p) {
  if (p.empty()) throw Error(ErrorKind::InvalidDistribution, "empty probability vector");
  double total = 0.0;
  for (double v : p) {
    if (!(v >= 0.0) || v > 1.0 + distribution_tolerance) {
      throw Error(ErrorKind::InvalidDistribution,
                  "probability " + format_double(v) + " outside [0,1]");
    }
    total += v;
  }
  if (std::abs(total - 1.0) > distribution_tolerance) {
    throw Error(ErrorKind::InvalidDistribution,
                "probabilities sum to " + format_double(total) + ", not 1");
  }
}

double shannon_entropy(std::span<const double> p) {
  validate_distribution(p);
  double total = 0.0;
  for (double v : p) total -= xlog2_convention(v);
  return total;
}

double alpha_entropy(std::span<const double> p, double alpha) {
  if (alpha == 1.0) return shannon_entropy(p);
  validate_distribution(p);
  // sum p^alpha - 1 = sum p (p^(alpha-1) - 1); expm1 keeps alpha near 1 accurate.
  double numerator = 0.0;
  for (double v : p) {
    if (v > 0.0) numerator += v * std::expm1((alpha - 1.0) * std::log(v));
  }
  return numerator / std::expm1((1.0 - alpha) * std::log(2.0));
}

double shannon_info_function(double x) {
  if (!(x >= 0.0 && x <= 1.0)) {
    throw Error(ErrorKind::Domain, "shannon_info_function is undefined at x=" + format_double(x));
  }
  return -(xlog2_convention(x) + xlog2_convention(1.0 - x));
}

double entropy_limit_gap(std::span<const double> p, double delta) {
  return std::abs(alpha_entropy(p, 1.0 + delta) - shannon_entropy(p));
}

ScalarFunction alpha_entropy_generator(double alpha) {
  if (alpha == 1.0) return scalar::shannon_s();
  const double k = 1.0 / std::expm1((1.0 - alpha) * std::log(2.0));
  return scalar::power_family(k, k, alpha);
}

ScalarFunction sum_property_generator(double alpha) {
  if (alpha == 1.0) return scalar::xlogx(-1.0);
  const double k = 1.0 / std::expm1((1.0 - alpha) * std::log(2.0));
  return scalar::sum({scalar::power_law(k, alpha), scalar::linear(-k)});
}

}  // namespace infostab
