#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "infostab/engine.hpp"
#include "infostab/measures.hpp"
#include "infostab/models.hpp"

namespace infostab {

// ---------------------------------------------------------------------------
// Constants.

/// |2^(1-a)-1|^-1 (3 + 12*2^a + 32*3^(a+1)/|2^-a - 1|); 63 at a = 0.
/// Raises an unsupported-parameter error at a = 1.
double stability_constant_K(double alpha);
/// 3*2^a + 8*3^(a+1)/|2^-a - 1| for 1 != a > 0.
double stability_constant_T(double alpha);
/// 2 + 7*2^a*n^a*K(a).
double modified_constant_c(int n, double alpha);
/// 4 + 7*2^(a+2)*n^a*K(a).
double modified_constant_d(int n, double alpha);

/// Constant used at alpha = 0, where the printed formula divides by zero.
inline constexpr double zero_alpha_constant = 63.0;

struct StabilityConstants {
  double alpha = 0.0;
  std::optional<double> K;
  std::optional<double> T;
  std::optional<int> n;
  std::optional<double> c_n;
  std::optional<double> d_n;
};

/// Every constant defined at alpha (and at box bound n when given).
StabilityConstants stability_constants(double alpha, std::optional<int> n = std::nullopt);

// ---------------------------------------------------------------------------
// Certificates.

struct StabilityCertificate {
  std::string theorem;
  double alpha = 0.0;
  int resolution = 0;
  /// Descriptor of the fitted exact solution.
  nlohmann::json candidate = nlohmann::json::object();
  std::map<std::string, double> parameters;
  std::map<std::string, double> epsilons;
  std::map<std::string, double> constants;
  double distance = 0.0;
  double bound = 0.0;
  bool satisfied = false;
  bool epsilon_overridden = false;
  /// Intermediate values of the pipeline, keyed by name.
  nlohmann::json trace = nlohmann::json::object();
  std::vector<std::string> notes;

  std::optional<ScalarFunction> scalar_candidate;
  std::optional<TernaryFunction> ternary_candidate;
  std::optional<ScalarFunction> profile;  // fitted phi for associativity and modified entropy
};

struct CertifyOptions {
  EngineOptions engine;
  /// Replaces the measured epsilon in the bound; marked in the report.
  std::optional<double> epsilon_override;
};

/// Parametric fundamental equation on the open triangle, alpha = 0 or 1 != alpha > 0.
StabilityCertificate certify_fundamental_open(const ScalarFunction& f, Alpha alpha, int resolution,
                                              const CertifyOptions& options = {});

/// Same equation on the closed triangle; the candidate carries the boundary values.
StabilityCertificate certify_fundamental_closed(const ScalarFunction& f, Alpha alpha,
                                                int resolution, const CertifyOptions& options = {});

/// alpha < 0: passes only if f is (up to 1e-8 of its sup on the grid) a member
/// of c x^a + d (1-x)^a - d. The closed variant also pins f(0) = 0, f(1) = c - d.
StabilityCertificate certify_hyperstable(const ScalarFunction& f, Alpha alpha, int resolution,
                                         bool closed, const CertifyOptions& options = {});

struct BlowupSample {
  double margin = 0.0;
  ResidualReport report;
};

/// Sup residual on {(x,y) open : x + y <= 1 - h} for each margin h. A
/// resolution of 0 picks a power of two with at least two lattice steps in the
/// smallest margin.
std::vector<BlowupSample> hyperstability_blowup_probe(const ScalarFunction& f, Alpha alpha,
                                                      const std::vector<double>& margins,
                                                      int resolution = 0,
                                                      const EngineOptions& options = {});

/// One certificate per n in [2, max_n]: sup |I_n - J_n| against the bound built
/// from the semi-symmetry and recursion defects.
std::vector<StabilityCertificate> certify_measure_sequence(const InformationMeasure& measure,
                                                           int max_n, int resolution,
                                                           const CertifyOptions& options = {});

struct EntropyEquationOptions {
  double box = 1.0;
  std::vector<double> scales = {0.25, 0.5, 2.0, 4.0};
};

StabilityCertificate certify_entropy_equation(const TernaryFunction& h, Alpha alpha,
                                              int resolution,
                                              const EntropyEquationOptions& settings = {},
                                              const CertifyOptions& options = {});

struct Interval {
  double lo = 0.0;
  double hi = 1.0;
};

StabilityCertificate certify_associativity(const BinaryFunction& a, const BinaryFunction& b,
                                           Interval u, Interval v, Interval w, int resolution,
                                           const CertifyOptions& options = {});

/// The modified entropy equation on the box (0, box]^3.
StabilityCertificate certify_modified_entropy(const TernaryFunction& f, Alpha alpha, int box,
                                              int resolution, const CertifyOptions& options = {});

StabilityCertificate certify_sum_form(const ScalarFunction& phi, int n, int resolution,
                                      const CertifyOptions& options = {});

StabilityCertificate certify_sum_form_multiplicative(const ScalarFunction& g, int n, int m,
                                                     int resolution,
                                                     const CertifyOptions& options = {});

StabilityCertificate certify_kocsis_maksa(const ScalarFunction& f, double alpha, double beta,
                                          int n, int m, int resolution,
                                          const CertifyOptions& options = {});

/// Descriptive identifiers used in reports and run configurations.
namespace theorem_id {
inline constexpr const char* fundamental_open = "fundamental_open";
inline constexpr const char* fundamental_closed = "fundamental_closed";
inline constexpr const char* hyperstable = "hyperstable";
inline constexpr const char* measure_sequence = "measure_sequence";
inline constexpr const char* entropy_equation = "entropy_equation";
inline constexpr const char* associativity = "associativity";
inline constexpr const char* modified_entropy = "modified_entropy";
inline constexpr const char* sum_form = "sum_form";
inline constexpr const char* sum_form_multiplicative = "sum_form_multiplicative";
inline constexpr const char* kocsis_maksa = "kocsis_maksa";
}  // namespace theorem_id

}  // namespace infostab
