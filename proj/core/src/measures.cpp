#include "infostab/measures.hpp"

#include <algorithm>
#include <cmath>
#include <memory>
#include <numbers>
#include <numeric>
#include <ostream>
#include <random>

#include "infostab/descriptors.hpp"
#include "infostab/domains.hpp"
#include "infostab/equations.hpp"
#include "infostab/error.hpp"
#include "infostab/format.hpp"

namespace infostab {

InformationMeasure::InformationMeasure(double alpha, ScalarFunction generator, int max_n,
                                       std::vector<LevelPerturbation> perturbations,
                                       std::uint64_t point_budget)
    : alpha_(alpha),
      generator_(std::move(generator)),
      max_n_(max_n),
      perturbations_(std::move(perturbations)),
      point_budget_(point_budget) {
  if (!std::isfinite(alpha)) throw Error(ErrorKind::Configuration, "measure alpha must be finite");
  if (max_n < 2) throw Error(ErrorKind::Configuration, "measure max_n must be >= 2");
  for (const auto& p : perturbations_) {
    if (p.level < 3 || p.level > max_n) {
      throw Error(ErrorKind::Configuration, "perturbation level " + std::to_string(p.level) +
                                                " must lie in [3, max_n]");
    }
    if (!(p.height >= 0.0) || !std::isfinite(p.height)) {
      throw Error(ErrorKind::Configuration, "perturbation height must be finite and nonnegative");
    }
    std::mt19937_64 engine(p.seed);
    Wave wave{p.level, p.height, 0.0, {}};
    for (int i = 0; i < p.level; ++i) {
      wave.frequencies.push_back(5.0 + 20.0 * unit_from_bits(engine()));
    }
    wave.phase = 2.0 * std::numbers::pi * unit_from_bits(engine());
    waves_.push_back(std::move(wave));
  }
}

double InformationMeasure::perturbation(int level, std::span<const double> v) const {
  double total = 0.0;
  for (const auto& w : waves_) {
    if (w.level != level) continue;
    double arg = w.phase;
    for (std::size_t i = 0; i < v.size() && i < w.frequencies.size(); ++i) {
      arg += w.frequencies[i] * v[i];
    }
    total += w.height * std::sin(arg);
  }
  return total;
}

double InformationMeasure::operator()(std::span<const double> p) const {
  const int n = static_cast<int>(p.size());
  if (n < 2 || n > max_n_) {
    throw Error(ErrorKind::Configuration, "measure evaluated at n=" + std::to_string(n) +
                                              " outside [2, " + std::to_string(max_n_) + "]");
  }
  for (double v : p) {
    if (!(v > 0.0)) {
      throw Error(ErrorKind::InvalidDistribution, "measures are evaluated on strictly positive points");
    }
  }
  double total = 0.0;
  double s = p[0];
  std::vector<double> level;
  for (int k = 1; k + 1 < n; ++k) {
    const int m = n - k + 1;
    if (!waves_.empty()) {
      level.assign(1, s);
      level.insert(level.end(), p.begin() + k, p.end());
      total += perturbation(m, level);
    }
    const double merged = s + p[static_cast<std::size_t>(k)];
    total += std::pow(merged, alpha_) * generator_(std::min(1.0, p[static_cast<std::size_t>(k)] / merged));
    s = merged;
  }
  return total + generator_(p[static_cast<std::size_t>(n - 1)]);
}

InformationMeasure InformationMeasure::scaled_perturbations(double factor) const {
  auto copy = perturbations_;
  for (auto& p : copy) p.height *= factor;
  return InformationMeasure(alpha_, generator_, max_n_, std::move(copy), point_budget_);
}

double eval_measure(const InformationMeasure& measure, std::span<const double> p) {
  return measure(p);
}

InformationMeasure measure_from_json(const nlohmann::json& config) {
  auto require = [&](const char* name) -> const nlohmann::json& {
    if (!config.is_object() || !config.contains(name)) {
      throw Error(ErrorKind::Configuration, std::string("measure config is missing field '") + name + "'");
    }
    return config.at(name);
  };
  const auto& alpha = require("alpha");
  const auto& max_n = require("max_n");
  if (!alpha.is_number()) throw Error(ErrorKind::Configuration, "measure field 'alpha' must be a number");
  if (!max_n.is_number_integer()) throw Error(ErrorKind::Configuration, "measure field 'max_n' must be an integer");
  ScalarFunction generator = config.contains("generator")
                                 ? scalar_from_json(config.at("generator"))
                                 : alpha_entropy_generator(alpha.get<double>());
  std::vector<LevelPerturbation> perturbations;
  if (config.contains("perturbations")) {
    const auto& list = config.at("perturbations");
    if (!list.is_array()) throw Error(ErrorKind::Configuration, "measure field 'perturbations' must be an array");
    for (const auto& e : list) {
      LevelPerturbation p;
      try {
        p.level = e.at("level").get<int>();
        p.height = e.at("height").get<double>();
        p.seed = e.value("seed", std::uint64_t{0});
      } catch (const nlohmann::json::exception&) {
        throw Error(ErrorKind::Configuration,
                    "each perturbation needs integer 'level', number 'height' and optional 'seed'");
      }
      perturbations.push_back(p);
    }
  }
  const std::uint64_t budget = config.value("point_budget", default_measure_point_budget);
  return InformationMeasure(alpha.get<double>(), std::move(generator), max_n.get<int>(),
                            std::move(perturbations), budget);
}

nlohmann::json describe(const InformationMeasure& measure) {
  nlohmann::json list = nlohmann::json::array();
  for (const auto& p : measure.perturbations()) {
    list.push_back({{"level", p.level}, {"height", p.height}, {"seed", p.seed}});
  }
  return {{"alpha", measure.alpha()},
          {"generator", measure.generator().describe()},
          {"max_n", measure.max_n()},
          {"perturbations", list},
          {"point_budget", measure.point_budget()}};
}

namespace {

SimplexGrid level_grid(const InformationMeasure& measure, int n, int resolution) {
  if (n < 2 || n > measure.max_n()) {
    throw Error(ErrorKind::Configuration, "level n=" + std::to_string(n) + " outside [2, " +
                                              std::to_string(measure.max_n()) + "]");
  }
  return SimplexGrid(n, resolution, Variant::Open, measure.point_budget());
}

ResidualReport sweep_level(const SimplexGrid& grid, const DefectFunction& defect,
                           const EngineOptions& options) {
  ResidualReport report = sweep(grid_source(grid), defect, options);
  report.resolution = grid.resolution();
  return report;
}

}  // namespace

ResidualReport check_symmetry(const InformationMeasure& measure, int n, int resolution,
                              const EngineOptions& options) {
  const SimplexGrid grid = level_grid(measure, n, resolution);
  const DefectFunction defect = [&measure](std::span<const double> p) {
    std::vector<std::size_t> order(p.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::vector<double> permuted(p.size());
    const double base = measure(p);
    double worst = 0.0;
    while (std::next_permutation(order.begin(), order.end())) {
      for (std::size_t i = 0; i < order.size(); ++i) permuted[i] = p[order[i]];
      const double d = base - measure(permuted);
      if (std::abs(d) > std::abs(worst)) worst = d;
    }
    return worst;
  };
  return sweep_level(grid, defect, options);
}

ResidualReport check_semisymmetry3(const InformationMeasure& measure, int resolution,
                                   const EngineOptions& options) {
  const SimplexGrid grid = level_grid(measure, 3, resolution);
  const DefectFunction defect = [&measure](std::span<const double> p) {
    const double swapped[3] = {p[0], p[2], p[1]};
    return measure(p) - measure(swapped);
  };
  return sweep_level(grid, defect, options);
}

ResidualReport check_recursivity(const InformationMeasure& measure, int n, int resolution,
                                 const EngineOptions& options) {
  if (n < 3) throw Error(ErrorKind::Configuration, "recursivity is defined for n >= 3");
  const SimplexGrid grid = level_grid(measure, n, resolution);
  const double alpha = measure.alpha();
  const DefectFunction defect = [&measure, alpha](std::span<const double> p) {
    const double s = p[0] + p[1];
    std::vector<double> merged;
    merged.reserve(p.size() - 1);
    merged.push_back(s);
    merged.insert(merged.end(), p.begin() + 2, p.end());
    // I_2(p1/s, p2/s) is the generator at p2/s.
    return measure(p) - measure(merged) -
           std::pow(s, alpha) * measure.generator()(std::min(1.0, p[1] / s));
  };
  return sweep_level(grid, defect, options);
}

ResidualReport check_additivity(const InformationMeasure& measure, double alpha, int n, int m,
                                int resolution, const EngineOptions& options) {
  if (n * m > measure.max_n()) {
    throw Error(ErrorKind::Configuration, "additivity needs n*m <= max_n");
  }
  SimplexPairGrid grid{level_grid(measure, n, resolution), level_grid(measure, m, resolution)};
  if (grid.second.size() != 0 && grid.first.size() > options.pair_budget / grid.second.size()) {
    throw Error(ErrorKind::Budget, "additivity check exceeds the pair budget");
  }
  const double k = std::expm1((1.0 - alpha) * std::log(2.0));
  const auto un = static_cast<std::size_t>(n);
  const DefectFunction defect = [&measure, k, un](std::span<const double> point) {
    const auto p = point.first(un);
    const auto q = point.subspan(un);
    std::vector<double> product;
    product.reserve(p.size() * q.size());
    for (double a : p) {
      for (double b : q) product.push_back(a * b);
    }
    const double ip = measure(p);
    const double iq = measure(q);
    return measure(product) - ip - iq - k * ip * iq;
  };
  ResidualReport report = sweep(grid_source(grid), defect, options);
  report.resolution = resolution;
  return report;
}

double check_normalization(const InformationMeasure& measure) {
  return std::abs(measure.generator()(0.5) - 1.0);
}

ResidualReport check_sum_property(const InformationMeasure& measure, const ScalarFunction& f,
                                  int n, int resolution, const EngineOptions& options) {
  const SimplexGrid grid = level_grid(measure, n, resolution);
  const DefectFunction defect = [&measure, f](std::span<const double> p) {
    double total = 0.0;
    for (double v : p) total += f(v);
    return measure(p) - total;
  };
  return sweep_level(grid, defect, options);
}

ResidualReport measure_distance(const InformationMeasure& measure, int n, int resolution,
                                const std::function<double(std::span<const double>)>& reference,
                                const EngineOptions& options) {
  const SimplexGrid grid = level_grid(measure, n, resolution);
  const DefectFunction defect = [&measure, &reference](std::span<const double> p) {
    return measure(p) - reference(p);
  };
  return sweep_level(grid, defect, options);
}

GeneratingDefect derive_generating_defect(const InformationMeasure& measure, int resolution,
                                          const EngineOptions& options) {
  if (measure.max_n() < 3) {
    throw Error(ErrorKind::Configuration, "the generating defect needs max_n >= 3");
  }
  GeneratingDefect out{measure.generator(), {}, {}, {}, 0.0, false};
  out.fundamental = residual(equation::FundamentalParametric{measure.alpha()}, {.f = out.generator},
                             TriangleGrid(resolution, Variant::Open), options);
  out.semisymmetry = check_semisymmetry3(measure, resolution, options);
  out.recursivity = check_recursivity(measure, 3, resolution, options);
  out.bound = 2.0 * out.recursivity.sup + out.semisymmetry.sup;
  out.fundamental.epsilon_target = out.bound;
  out.satisfied = satisfies_bound(out.fundamental.sup, out.bound);
  return out;
}

ResidualReport sum_property_cauchy_gap(double bound, const ScalarFunction& f, int resolution,
                                       const EngineOptions& options) {
  if (resolution < 1) throw Error(ErrorKind::InvalidResolution, "resolution must be >= 1");
  auto coords = std::make_shared<std::vector<double>>();
  const double r = resolution;
  for (int i = 0; i <= resolution; ++i) {
    for (int j = 0; i + j <= resolution; ++j) coords->insert(coords->end(), {i / r, j / r});
  }
  const double at0 = f(0.0);
  const DefectFunction defect = [f, at0](std::span<const double> p) {
    return f(std::min(1.0, p[0] + p[1])) - f(p[0]) - f(p[1]) + at0;
  };
  ResidualReport report = sweep(list_source(coords, 2), defect, options);
  report.resolution = resolution;
  report.epsilon_target = 2.0 * bound;
  return report;
}

void write_measure_csv(std::ostream& out, const InformationMeasure& measure, int n,
                       int resolution) {
  const SimplexGrid grid = level_grid(measure, n, resolution);
  for (int i = 1; i <= n; ++i) out << 'p' << i << ',';
  out << "value\n";
  grid.for_each(0, grid.size(), [&](std::uint64_t, std::span<const double> p) {
    for (double v : p) out << format_double(v) << ',';
    out << format_double(measure(p)) << '\n';
  });
}

}  // namespace infostab
