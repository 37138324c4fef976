#include <algorithm>
#include <cmath>
#include <limits>

#include "certifier_support.hpp"
#include "infostab/certifiers.hpp"
#include "infostab/domains.hpp"
#include "infostab/equations.hpp"
#include "infostab/fitting.hpp"
#include "infostab/format.hpp"

namespace infostab {

using nlohmann::json;
using detail::effective_epsilon;
using detail::finish;

namespace {

StabilityCertificate start(const char* theorem, double alpha, int resolution) {
  StabilityCertificate cert;
  cert.theorem = theorem;
  cert.alpha = alpha;
  cert.resolution = resolution;
  return cert;
}

void require_arity(int n, const char* name) {
  if (n < 3) {
    throw Error(ErrorKind::HypothesisViolation,
                std::string(name) + " must be >= 3, got " + std::to_string(n));
  }
}

double sup_abs(const std::vector<double>& values) {
  double m = 0.0;
  for (double v : values) m = std::max(m, std::abs(v));
  return m;
}

// max_i |y_i - k x_i - m(x_i)| for a fixed m.
double worst_gap(const std::vector<double>& xs, const std::vector<double>& ys, double k,
                 const std::function<double(double)>& m) {
  double worst = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    worst = std::max(worst, std::abs(ys[i] - k * xs[i] - m(xs[i])));
  }
  return worst;
}

// Log-log least squares through the origin on the points where y - k x > 0.
std::optional<double> power_exponent(const std::vector<double>& xs, const std::vector<double>& ys,
                                     double k) {
  std::vector<double> lx;
  std::vector<double> ly;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const double rest = ys[i] - k * xs[i];
    if (xs[i] > 0.0 && xs[i] < 1.0 && rest > 0.0) {
      lx.push_back(std::log(xs[i]));
      ly.push_back(std::log(rest));
    }
  }
  if (lx.empty()) return std::nullopt;
  return least_squares_slope(lx, ly);
}

double power_gap(const std::vector<double>& xs, const std::vector<double>& ys, double k,
                 double beta) {
  return worst_gap(xs, ys, k, [beta](double p) { return pow_convention(p, beta); });
}

}  // namespace

StabilityCertificate certify_sum_form(const ScalarFunction& phi, int n, int resolution,
                                      const CertifyOptions& options) {
  require_arity(n, "n");
  if (resolution < 1) throw Error(ErrorKind::InvalidResolution, "resolution must be >= 1");
  auto cert = start(theorem_id::sum_form, 0.0, resolution);

  const SimplexGrid grid(n, resolution, Variant::Closed, options.engine.pair_budget);
  const ResidualReport eps_report =
      residual(equation::SumFormVanishing{n}, {.f = phi}, grid, options.engine);
  cert.epsilons["epsilon"] = eps_report.sup;
  cert.trace["epsilon_argmax"] = eps_report.argmax_point;
  const double eps = effective_epsilon(eps_report.sup, options, cert);

  const std::vector<double> xs = sample_unit(resolution, Variant::Closed);
  const double at0 = phi(0.0);
  std::vector<double> shifted;
  double scale = 0.0;
  for (double x : xs) {
    const double y = phi(x);
    scale = std::max(scale, std::abs(y));
    shifted.push_back(y - at0);
  }
  const double radius = 2.0 * scale * resolution;
  const double kappa =
      radius > 0.0
          ? golden_section_minimize([&](double k) { return max_deviation(xs, shifted, k); },
                                    -radius, radius)
          : 0.0;

  std::vector<double> remainder;
  for (std::size_t i = 0; i < xs.size(); ++i) remainder.push_back(shifted[i] - kappa * xs[i]);
  cert.parameters = {{"kappa", kappa}, {"n", n}, {"phi_at_0", at0}};
  cert.candidate = {{"kind", "additive_plus_bounded"}, {"kappa", kappa}};
  cert.scalar_candidate = scalar::linear(kappa);
  cert.trace["search_radius"] = radius;
  cert.trace["remainder_at_0"] = remainder.front();
  cert.distance = sup_abs(remainder);
  cert.bound = eps;
  finish(cert);
  return cert;
}

StabilityCertificate certify_sum_form_multiplicative(const ScalarFunction& g, int n, int m,
                                                     int resolution,
                                                     const CertifyOptions& options) {
  require_arity(n, "n");
  require_arity(m, "m");
  if (resolution < 2) throw Error(ErrorKind::InvalidResolution, "resolution must be >= 2");
  auto cert = start(theorem_id::sum_form_multiplicative, 0.0, resolution);

  const SimplexPairGrid grid{SimplexGrid(n, resolution, Variant::Closed, options.engine.pair_budget),
                             SimplexGrid(m, resolution, Variant::Closed, options.engine.pair_budget)};
  const ResidualReport eps_report =
      residual(equation::SumFormMultiplicative{n, m}, {.f = g}, grid, options.engine);
  cert.epsilons["epsilon"] = eps_report.sup;
  cert.trace["epsilon_argmax"] = eps_report.argmax_point;
  const double eps = effective_epsilon(eps_report.sup, options, cert);

  const std::vector<double> xs = sample_unit(resolution, Variant::Closed);
  std::vector<double> ys;
  for (double x : xs) ys.push_back(g(x));
  const double reach = 2.0 * sup_abs(ys) + 1.0;

  // Coarse scan over kappa with beta refit at each step, then a golden refinement.
  constexpr int steps = 64;
  const double step = 2.0 * reach / steps;
  auto joint_gap = [&](double k) {
    const auto beta = power_exponent(xs, ys, k);
    return beta ? power_gap(xs, ys, k, *beta) : std::numeric_limits<double>::infinity();
  };
  double best_k = 0.0;
  double best_gap = joint_gap(0.0);
  for (int i = 0; i <= steps; ++i) {
    const double k = -reach + i * step;
    const double gap = joint_gap(k);
    if (gap < best_gap) {
      best_gap = gap;
      best_k = k;
    }
  }
  std::optional<double> beta;
  double kappa_m = best_k;
  double gap_m = std::numeric_limits<double>::infinity();
  if (std::isfinite(best_gap)) {
    const double refined = golden_section_minimize(
        [&](double k) {
          const double gap = joint_gap(k);
          return std::isfinite(gap) ? gap : std::numeric_limits<double>::max();
        },
        best_k - step, best_k + step);
    if (joint_gap(refined) < best_gap) kappa_m = refined;
    beta = power_exponent(xs, ys, kappa_m);
    gap_m = power_gap(xs, ys, kappa_m, *beta);
  } else {
    cert.trace["fit_failure"] = "g - kappa*p is non-positive on every interior node";
  }

  const double kappa_0 = minimax_slope(xs, ys);
  const double gap_0 = max_deviation(xs, ys, kappa_0);
  cert.trace["with_power"] = {{"kappa", kappa_m}, {"remainder", gap_m}};
  if (beta) cert.trace["with_power"]["beta"] = *beta;
  cert.trace["additive_only"] = {{"kappa", kappa_0}, {"remainder", gap_0}};

  // Near-ties go to the decomposition with a multiplicative part.
  const bool keep_power = beta && !(gap_0 < gap_m - 1e-12 * (1.0 + gap_m));
  if (keep_power) {
    cert.parameters = {{"kappa", kappa_m}, {"beta", *beta}};
    cert.candidate = {{"kind", "additive_plus_power"}, {"kappa", kappa_m}, {"beta", *beta}};
    cert.scalar_candidate = scalar::sum({scalar::linear(kappa_m), scalar::power_law(1.0, *beta)});
    cert.distance = gap_m;
  } else {
    cert.parameters = {{"kappa", kappa_0}};
    cert.candidate = {{"kind", "additive_only"}, {"kappa", kappa_0}};
    cert.scalar_candidate = scalar::linear(kappa_0);
    cert.distance = gap_0;
  }
  cert.parameters["n"] = n;
  cert.parameters["m"] = m;
  cert.bound = eps;
  finish(cert);
  return cert;
}

StabilityCertificate certify_kocsis_maksa(const ScalarFunction& f, double alpha, double beta,
                                          int n, int m, int resolution,
                                          const CertifyOptions& options) {
  require_arity(n, "n");
  require_arity(m, "m");
  if (alpha == 1.0 && beta == 1.0) {
    throw Error(ErrorKind::UnsupportedParameter, "unsupported alpha = beta = 1");
  }
  if (resolution < 2) throw Error(ErrorKind::InvalidResolution, "resolution must be >= 2");
  auto cert = start(theorem_id::kocsis_maksa, alpha, resolution);

  const SimplexPairGrid grid{SimplexGrid(n, resolution, Variant::Closed, options.engine.pair_budget),
                             SimplexGrid(m, resolution, Variant::Closed, options.engine.pair_budget)};
  const ResidualReport eps_report =
      residual(equation::SumFormMixed{alpha, beta, n, m}, {.f = f}, grid, options.engine);
  cert.epsilons["epsilon"] = eps_report.sup;
  cert.trace["epsilon_argmax"] = eps_report.argmax_point;
  const double eps = effective_epsilon(eps_report.sup, options, cert);

  const std::vector<double> xs = sample_unit(resolution, Variant::Closed);
  std::vector<double> basis;
  std::vector<double> ys;
  const bool same = alpha == beta;
  for (double x : xs) {
    basis.push_back(same ? pow_convention(x, alpha) * (x > 0.0 ? std::log2(x) : 0.0)
                         : pow_convention(x, alpha) - pow_convention(x, beta));
    ys.push_back(f(x));
  }
  const double coefficient = least_squares_slope(basis, ys);
  ScalarFunction candidate;
  if (same) {
    candidate = scalar::power_log(coefficient, alpha);
    cert.parameters = {{"lambda", coefficient}};
    cert.candidate = {{"kind", "power_times_log"}, {"alpha", alpha}, {"lambda", coefficient}};
  } else {
    candidate = scalar::sum({scalar::power_law(coefficient, alpha), scalar::power_law(-coefficient, beta)});
    cert.parameters = {{"c", coefficient}};
    cert.candidate = {{"kind", "power_difference"}, {"alpha", alpha}, {"beta", beta}, {"c", coefficient}};
  }
  cert.parameters["kappa"] = 0.0;
  cert.parameters["beta"] = beta;
  cert.scalar_candidate = candidate;
  cert.trace["additive_part"] = "kappa pinned to 0 by a(1) = 0";
  cert.distance = max_deviation(basis, ys, coefficient);
  cert.bound = eps;
  finish(cert);
  return cert;
}

}  // namespace infostab
