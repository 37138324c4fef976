#include "infostab/certifiers.hpp"

#include <algorithm>
#include <cmath>

#include "certifier_support.hpp"
#include "infostab/domains.hpp"
#include "infostab/equations.hpp"
#include "infostab/fitting.hpp"
#include "infostab/format.hpp"

namespace infostab {

using nlohmann::json;
using detail::effective_epsilon;
using detail::finish;
using detail::require_even_resolution;
using detail::scalar_distance;

namespace {

const char* zero_alpha_note =
    "alpha = 0 uses the constant 63: the general K(alpha) formula divides by |2^-alpha - 1| = 0";

void require_stable_regime(const Alpha& alpha) {
  switch (alpha.regime()) {
    case Alpha::Regime::One:
      throw Error(ErrorKind::UnsupportedParameter,
                  "unsupported alpha=1: the stability constant K(alpha) blows up as alpha -> 1");
    case Alpha::Regime::Negative:
      throw Error(ErrorKind::Dispatch,
                  "alpha=" + format_double(alpha.value()) +
                      " < 0 is the hyperstable regime; use the hyperstable certifier");
    default:
      break;
  }
}

double two_pow_one_minus(double alpha) { return std::expm1((1.0 - alpha) * std::log(2.0)); }

struct OpenFit {
  ScalarFunction candidate;
  std::map<std::string, double> parameters;
  json trace = json::object();
};

/// The constructive pipeline behind the open-domain stability theorem.
OpenFit fit_open(const ScalarFunction& f, const Alpha& alpha, int resolution) {
  const double a_ = alpha.value();
  OpenFit fit;
  // F(u,v) = (u+v)^alpha f(v/(u+v)); g(u) = F(u,1) - F(1,u).
  auto lift = [&](double u, double v) { return std::pow(u + v, a_) * f(v / (u + v)); };
  auto g = [&](double u) { return lift(u, 1.0) - lift(1.0, u); };
  json f_samples = json::array();
  json g_samples = json::array();
  for (double u : {0.25, 0.5, 1.0, 2.0}) {
    f_samples.push_back({{"u", u}, {"F(u,1)", lift(u, 1.0)}, {"F(1,u)", lift(1.0, u)}});
    g_samples.push_back({{"u", u}, {"g", g(u)}});
  }
  fit.trace["F_samples"] = f_samples;
  fit.trace["g_samples"] = g_samples;

  if (alpha.regime() == Alpha::Regime::Zero) {
    // g(u) = lambda log2 u for the exact family; fit lambda on the open unit grid.
    std::vector<double> logs;
    std::vector<double> values;
    for (double u : sample_unit(resolution, Variant::Open)) {
      logs.push_back(std::log2(u));
      values.push_back(g(u));
    }
    const double lambda = least_squares_slope(logs, values);
    const double c = f(0.5) - lambda * std::log2(0.5);
    fit.candidate = scalar::log_family(lambda, c);
    fit.parameters = {{"lambda", lambda}, {"c", c}};
    fit.trace["lambda"] = lambda;
    fit.trace["lambda_fit_residual"] = max_deviation(logs, values, lambda);
    fit.trace["f0"] = "f(x) - lambda*log2(1-x)";
    fit.trace["c"] = c;
    return fit;
  }

  const double g_half = g(0.5);
  const double c = g_half / std::expm1(-a_ * std::log(2.0));
  // f0 removes the (1-x)^alpha part while keeping f0(0) = f(0).
  auto f0 = [&](double x) { return f(x) - c * (std::pow(1.0 - x, a_) - 1.0); };
  const double f0_half = f0(0.5);
  const double a = f0_half / two_pow_one_minus(a_);
  const double b = a + c;
  fit.candidate = scalar::power_family(a, b, a_);
  fit.parameters = {{"a", a}, {"b", b}, {"c", c}};
  fit.trace["g_half"] = g_half;
  fit.trace["c"] = c;
  fit.trace["f0"] = "f(x) - c*((1-x)^alpha - 1)";
  fit.trace["f0_half"] = f0_half;
  fit.trace["a"] = a;
  fit.trace["b"] = b;
  return fit;
}

StabilityCertificate base_certificate(const char* theorem, const Alpha& alpha, int resolution) {
  StabilityCertificate cert;
  cert.theorem = theorem;
  cert.alpha = alpha.value();
  cert.resolution = resolution;
  return cert;
}

}  // namespace

StabilityCertificate certify_fundamental_open(const ScalarFunction& f, Alpha alpha, int resolution,
                                              const CertifyOptions& options) {
  require_stable_regime(alpha);
  require_even_resolution(resolution, "certify_fundamental_open");
  auto cert = base_certificate(theorem_id::fundamental_open, alpha, resolution);

  const ResidualReport eps = residual(equation::FundamentalParametric{alpha.value()}, {.f = f},
                                      TriangleGrid(resolution, Variant::Open), options.engine);
  const double epsilon = effective_epsilon(eps.sup, options, cert);
  cert.epsilons["epsilon"] = eps.sup;
  cert.trace["epsilon_argmax"] = eps.argmax_point;

  OpenFit fit = fit_open(f, alpha, resolution);
  const double K = stability_constant_K(alpha.value());
  cert.constants["K"] = K;
  if (alpha.regime() == Alpha::Regime::Zero) cert.notes.push_back(zero_alpha_note);

  const ResidualReport dist =
      scalar_distance(f, fit.candidate, sample_unit(resolution, Variant::Open), options.engine);
  cert.candidate = fit.candidate.describe();
  cert.scalar_candidate = fit.candidate;
  cert.parameters = fit.parameters;
  cert.trace.update(fit.trace);
  cert.trace["distance_argmax"] = dist.argmax_point;
  cert.distance = dist.sup;
  cert.bound = K * epsilon;
  finish(cert);
  return cert;
}

StabilityCertificate certify_fundamental_closed(const ScalarFunction& f, Alpha alpha,
                                                int resolution, const CertifyOptions& options) {
  require_stable_regime(alpha);
  require_even_resolution(resolution, "certify_fundamental_closed");
  auto cert = base_certificate(theorem_id::fundamental_closed, alpha, resolution);

  const ResidualReport eps = residual(equation::FundamentalParametric{alpha.value()}, {.f = f},
                                      TriangleGrid(resolution, Variant::Closed), options.engine);
  const double epsilon = effective_epsilon(eps.sup, options, cert);
  cert.epsilons["epsilon"] = eps.sup;
  cert.trace["epsilon_argmax"] = eps.argmax_point;

  OpenFit fit = fit_open(f, alpha, resolution);
  cert.trace.update(fit.trace);
  const double K = stability_constant_K(alpha.value());
  cert.constants["K"] = K;

  ScalarFunction candidate;
  if (alpha.regime() == Alpha::Regime::Zero) {
    const double at0 = f(0.0);
    const double at1 = f(1.0);
    const double c = f(0.5);
    candidate = scalar::piecewise(at0, scalar::constant(c), at1);
    cert.parameters = {{"c", c}, {"f0", at0}, {"f1", at1}};
    cert.bound = K * epsilon;
    cert.notes.push_back(zero_alpha_note);
  } else {
    // With 0^alpha = 0 the power family already takes 0 at x=0 and a-b at x=1.
    candidate = fit.candidate;
    const double T = stability_constant_T(alpha.value());
    cert.constants["T"] = T;
    cert.parameters = fit.parameters;
    cert.parameters["value_at_1"] = fit.parameters["a"] - fit.parameters["b"];
    cert.bound = std::max(K, T + 1.0) * epsilon;
  }
  const ResidualReport dist =
      scalar_distance(f, candidate, sample_unit(resolution, Variant::Closed), options.engine);
  cert.candidate = candidate.describe();
  cert.scalar_candidate = candidate;
  cert.trace["distance_argmax"] = dist.argmax_point;
  cert.distance = dist.sup;
  finish(cert);
  return cert;
}

StabilityCertificate certify_hyperstable(const ScalarFunction& f, Alpha alpha, int resolution,
                                         bool closed, const CertifyOptions& options) {
  if (alpha.regime() != Alpha::Regime::Negative) {
    throw Error(ErrorKind::Dispatch, "the hyperstable certifier needs alpha < 0, got alpha=" +
                                         format_double(alpha.value()));
  }
  require_even_resolution(resolution, "certify_hyperstable");
  auto cert = base_certificate(theorem_id::hyperstable, alpha, resolution);
  const double a = alpha.value();
  const Variant variant = closed ? Variant::Closed : Variant::Open;

  const ResidualReport eps = residual(equation::FundamentalParametric{a}, {.f = f},
                                      TriangleGrid(resolution, variant), options.engine);
  cert.epsilons["epsilon"] = eps.sup;

  // f(x) = c x^a + d((1-x)^a - 1) through x = 1/2 and x = 1/4.
  const double h = std::pow(0.5, a);
  const auto [c, d] = solve_2x2(h, h - 1.0, std::pow(0.25, a), std::pow(0.75, a) - 1.0, f(0.5),
                                f(0.25));
  const ScalarFunction candidate = scalar::power_family(c, d, a);
  const std::vector<double> xs = sample_unit(resolution, variant);
  double scale = 0.0;
  for (double x : xs) scale = std::max(scale, std::abs(f(x)));
  const ResidualReport dist = scalar_distance(f, candidate, xs, options.engine);

  cert.candidate = candidate.describe();
  cert.scalar_candidate = candidate;
  cert.parameters = {{"c", c}, {"d", d}};
  if (closed) cert.parameters["value_at_1"] = c - d;
  cert.constants["exactness_tolerance"] = 1e-8;
  cert.trace["closed"] = closed;
  cert.trace["scale"] = scale;
  cert.trace["distance_argmax"] = dist.argmax_point;
  cert.distance = dist.sup;
  cert.bound = 1e-8 * scale;
  cert.satisfied = cert.distance <= cert.bound;
  if (!cert.satisfied) {
    cert.notes.push_back("f is not a member of the exact family; see the blow-up probe");
  }
  return cert;
}

std::vector<BlowupSample> hyperstability_blowup_probe(const ScalarFunction& f, Alpha alpha,
                                                      const std::vector<double>& margins,
                                                      int resolution,
                                                      const EngineOptions& options) {
  if (alpha.regime() != Alpha::Regime::Negative) {
    throw Error(ErrorKind::Dispatch, "the blow-up probe needs alpha < 0");
  }
  if (margins.empty()) throw Error(ErrorKind::Configuration, "the blow-up probe needs margins");
  for (std::size_t i = 0; i < margins.size(); ++i) {
    if (!(margins[i] > 0.0 && margins[i] < 1.0) || (i > 0 && !(margins[i] < margins[i - 1]))) {
      throw Error(ErrorKind::Configuration, "margins must be strictly decreasing inside (0,1)");
    }
  }
  if (resolution == 0) {
    resolution = 64;
    while (resolution * margins.back() < 2.0) resolution *= 2;
  }
  if (resolution < 3) throw Error(ErrorKind::InvalidResolution, "blow-up probe resolution must be >= 3");

  // Domains grow as h shrinks; sweep each new band once and carry the max.
  const double r = resolution;
  std::vector<BlowupSample> out;
  int covered = 1;  // lattice sums i+j already swept are <= covered
  ResidualReport running;
  double weighted_mean = 0.0;
  for (double h : margins) {
    const int limit = std::min(resolution - 1, static_cast<int>(std::floor(r * (1.0 - h) + 1e-9)));
    auto coords = std::make_shared<std::vector<double>>();
    for (int i = 1; i < resolution; ++i) {
      for (int j = std::max(1, covered + 1 - i); i + j <= limit; ++j) {
        coords->insert(coords->end(), {i / r, j / r});
      }
    }
    if (limit > covered) covered = limit;
    const double a = alpha.value();
    const ResidualReport band = sweep(
        list_source(coords, 2),
        [&](std::span<const double> p) { return fundamental_defect(f, a, p[0], p[1]); }, options);
    if (band.samples > 0 && (running.samples == 0 || band.sup > running.sup)) {
      running.sup = band.sup;
      running.argmax_point = band.argmax_point;
    }
    weighted_mean += band.mean * static_cast<double>(band.samples);
    running.samples += band.samples;
    running.mean = running.samples ? weighted_mean / static_cast<double>(running.samples) : 0.0;
    running.resolution = resolution;
    out.push_back({h, running});
  }
  return out;
}

std::vector<StabilityCertificate> certify_measure_sequence(const InformationMeasure& measure,
                                                           int max_n, int resolution,
                                                           const CertifyOptions& options) {
  const Alpha alpha(measure.alpha());
  if (alpha.regime() == Alpha::Regime::One) {
    throw Error(ErrorKind::UnsupportedParameter,
                "unsupported alpha=1 for measure sequences: the stability constant is unbounded");
  }
  if (max_n < 2 || max_n > measure.max_n()) {
    throw Error(ErrorKind::Configuration, "max_n must lie in [2, measure max_n]");
  }
  const double a = alpha.value();

  // Measured defects: eps[1] semi-symmetry, eps[k] the level k+1 recursion defect.
  std::map<int, double> eps;
  eps[1] = max_n >= 3 ? check_semisymmetry3(measure, resolution, options.engine).sup : 0.0;
  for (int k = 2; k <= max_n - 1; ++k) {
    eps[k] = check_recursivity(measure, k + 1, resolution, options.engine).sup;
  }
  const double eps1 = eps[1];
  const double eps2 = eps.count(2) ? eps[2] : 0.0;

  std::map<std::string, double> parameters;
  std::function<double(std::span<const double>)> candidate;
  json base_candidate;
  double K = 0.0;
  if (alpha.regime() == Alpha::Regime::Negative) {
    const auto base = certify_hyperstable(measure.generator(), alpha, resolution, false, options);
    const double c = base.parameters.at("c");
    const double d = base.parameters.at("d");
    const double scale = two_pow_one_minus(a) * c;
    const double shift = d - c;
    parameters = {{"generator_c", c}, {"generator_d", d}, {"entropy_weight", scale}, {"p1_weight", shift}};
    candidate = [scale, shift, a](std::span<const double> p) {
      return scale * alpha_entropy(p, a) + shift * (std::pow(p[0], a) - 1.0);
    };
    base_candidate = base.candidate;
  } else {
    const auto base = certify_fundamental_open(measure.generator(), alpha, resolution, options);
    K = stability_constant_K(a);
    base_candidate = base.candidate;
    if (alpha.regime() == Alpha::Regime::Zero) {
      const double lambda = base.parameters.at("lambda");
      const double c = base.parameters.at("c");
      parameters = {{"lambda", lambda}, {"c", c}};
      candidate = [lambda, c](std::span<const double> p) {
        return c * static_cast<double>(p.size() - 1) + lambda * std::log2(p[0]);
      };
    } else {
      const double fa = base.parameters.at("a");
      const double fb = base.parameters.at("b");
      const double scale = two_pow_one_minus(a) * fa;
      const double shift = fb - fa;
      parameters = {{"generator_a", fa}, {"generator_b", fb}, {"entropy_weight", scale}, {"p1_weight", shift}};
      candidate = [scale, shift, a](std::span<const double> p) {
        return scale * alpha_entropy(p, a) + shift * (std::pow(p[0], a) - 1.0);
      };
    }
  }

  std::vector<StabilityCertificate> out;
  for (int n = 2; n <= max_n; ++n) {
    auto cert = base_certificate(theorem_id::measure_sequence, alpha, resolution);
    cert.parameters = parameters;
    cert.parameters["n"] = n;
    cert.candidate = {{"kind", "measure_candidate"}, {"generator", base_candidate}, {"n", n}};
    double recursion_sum = 0.0;
    for (int k = 2; k <= n - 1; ++k) recursion_sum += eps[k];
    for (const auto& [k, v] : eps) cert.epsilons["epsilon_" + std::to_string(k)] = v;
    if (alpha.regime() == Alpha::Regime::Negative) {
      cert.bound = recursion_sum;
    } else {
      cert.constants["K"] = K;
      cert.bound = recursion_sum + (n - 1) * K * (2.0 * eps2 + eps1);
      if (alpha.regime() == Alpha::Regime::Zero) cert.notes.push_back(zero_alpha_note);
    }
    const ResidualReport dist = measure_distance(measure, n, resolution, candidate, options.engine);
    cert.distance = dist.sup;
    cert.trace["distance_argmax"] = dist.argmax_point;
    cert.trace["samples"] = dist.samples;
    finish(cert);
    out.push_back(std::move(cert));
  }
  return out;
}

}  // namespace infostab
