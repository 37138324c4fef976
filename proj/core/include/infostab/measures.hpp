#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <vector>

#include <nlohmann/json.hpp>

#include "infostab/engine.hpp"
#include "infostab/models.hpp"

namespace infostab {

/// Seeded bounded term added at one recursion level: height * sin(<w, v> + phase)
/// where v is the level's probability vector and w, phase come from `seed`.
struct LevelPerturbation {
  int level = 3;
  double height = 0.0;
  std::uint64_t seed = 0;
};

/// Default cap on open-simplex lattice points per level.
inline constexpr std::uint64_t default_measure_point_budget = 1'000'000;

/// A sequence (I_n) rebuilt from I_2(1-x, x) = generator(x) by alpha-recursion,
/// grouping (p1, p2) first at every level.
class InformationMeasure {
 public:
  InformationMeasure(double alpha, ScalarFunction generator, int max_n,
                     std::vector<LevelPerturbation> perturbations = {},
                     std::uint64_t point_budget = default_measure_point_budget);

  double alpha() const noexcept { return alpha_; }
  const ScalarFunction& generator() const noexcept { return generator_; }
  int max_n() const noexcept { return max_n_; }
  std::uint64_t point_budget() const noexcept { return point_budget_; }
  const std::vector<LevelPerturbation>& perturbations() const noexcept { return perturbations_; }

  /// I_n(p) for a strictly positive p with n = p.size() <= max_n.
  double operator()(std::span<const double> p) const;

  /// Sum of the perturbations configured for `level`, evaluated at v.
  double perturbation(int level, std::span<const double> v) const;

  /// Copy with every perturbation height multiplied by `factor`.
  InformationMeasure scaled_perturbations(double factor) const;

 private:
  struct Wave {
    int level;
    double height;
    double phase;
    std::vector<double> frequencies;
  };

  double alpha_;
  ScalarFunction generator_;
  int max_n_;
  std::vector<LevelPerturbation> perturbations_;
  std::uint64_t point_budget_;
  std::vector<Wave> waves_;
};

double eval_measure(const InformationMeasure& measure, std::span<const double> p);

/// {"alpha", "generator", "max_n", "perturbations": [{"level","height","seed"}], "point_budget"}.
InformationMeasure measure_from_json(const nlohmann::json& config);
nlohmann::json describe(const InformationMeasure& measure);

/// sup over every permutation of I_n(p) - I_n(sigma p) on the open simplex grid.
ResidualReport check_symmetry(const InformationMeasure& measure, int n, int resolution,
                              const EngineOptions& options = {});
/// sup |I_3(p1,p2,p3) - I_3(p1,p3,p2)|.
ResidualReport check_semisymmetry3(const InformationMeasure& measure, int resolution,
                                   const EngineOptions& options = {});
/// sup |I_n(p) - I_{n-1}(p1+p2, p3, ...) - (p1+p2)^alpha I_2(p1/(p1+p2), p2/(p1+p2))|.
ResidualReport check_recursivity(const InformationMeasure& measure, int n, int resolution,
                                 const EngineOptions& options = {});
/// sup |I_nm(P*Q) - I_n(P) - I_m(Q) - (2^(1-alpha)-1) I_n(P) I_m(Q)|.
ResidualReport check_additivity(const InformationMeasure& measure, double alpha, int n, int m,
                                int resolution, const EngineOptions& options = {});
/// |I_2(1/2, 1/2) - 1|.
double check_normalization(const InformationMeasure& measure);
/// sup |I_n(p) - sum f(p_i)|.
ResidualReport check_sum_property(const InformationMeasure& measure, const ScalarFunction& f,
                                  int n, int resolution, const EngineOptions& options = {});
/// sup |I_n(p) - reference(p)| on the open simplex grid.
ResidualReport measure_distance(const InformationMeasure& measure, int n, int resolution,
                                const std::function<double(std::span<const double>)>& reference,
                                const EngineOptions& options = {});

struct GeneratingDefect {
  ScalarFunction generator;
  ResidualReport fundamental;  // residual of the generator on the open triangle
  ResidualReport semisymmetry;  // epsilon_1
  ResidualReport recursivity;   // epsilon_2, the level-3 recursion defect
  double bound = 0.0;           // 2 epsilon_2 + epsilon_1
  bool satisfied = false;
};

/// Extracts f(x) = I_2(1-x, x) and checks its fundamental-equation residual
/// against 2 epsilon_2 + epsilon_1 measured on the same lattice.
GeneratingDefect derive_generating_defect(const InformationMeasure& measure, int resolution,
                                          const EngineOptions& options = {});

/// sup |f(x+y) - f(x) - f(y) + f(0)| over x, y >= 0, x + y <= 1; the
/// target is 2 * bound.
ResidualReport sum_property_cauchy_gap(double bound, const ScalarFunction& f, int resolution,
                                       const EngineOptions& options = {});

/// Tabulates I_n on the open simplex grid as CSV (p1..pn, value).
void write_measure_csv(std::ostream& out, const InformationMeasure& measure, int n,
                       int resolution);

}  // namespace infostab
