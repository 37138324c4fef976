#include <algorithm>
#include <cmath>
#include <string>
#include <utility>
#include <vector>

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

// (x, y) -> H(x, y, 0).
struct FaceNode final : BinaryFunction::Node {
  TernaryFunction h;
  explicit FaceNode(TernaryFunction f) : h(std::move(f)) {}
  double eval(double u, double v) const override { return h(u, v, 0.0); }
  json describe() const override { return {{"kind", "face"}, {"of", h.describe()}}; }
};

// s -> f(s/3, s/3, s/3) - 3a (s/3)^alpha.
struct DiagonalProfileNode final : ScalarFunction::Node {
  TernaryFunction f;
  double a, alpha;
  DiagonalProfileNode(TernaryFunction g, double a_, double al) : f(std::move(g)), a(a_), alpha(al) {}
  double eval(double s) const override {
    const double t = s / 3.0;
    return f(t, t, t) - 3.0 * a * pow_convention(t, alpha);
  }
  json describe() const override {
    return {{"kind", "diagonal_profile"}, {"a", a}, {"alpha", alpha}, {"of", f.describe()}};
  }
};

// One branch of a glued profile: s -> fn(anchor, s - anchor) or fn(s - anchor, anchor).
struct ProfilePiece {
  BinaryFunction fn;
  double anchor;
  bool anchor_first;
  std::string name;

  double operator()(double s) const {
    return anchor_first ? fn(anchor, s - anchor) : fn(s - anchor, anchor);
  }
  json describe() const {
    return {{"of", name}, {"anchor", anchor}, {"anchor_slot", anchor_first ? "first" : "second"}};
  }
};

// lower(s) for s <= split, upper(s) beyond.
struct GluedProfileNode final : ScalarFunction::Node {
  ProfilePiece lower, upper;
  double split;
  GluedProfileNode(ProfilePiece lo, ProfilePiece hi, double s)
      : lower(std::move(lo)), upper(std::move(hi)), split(s) {}
  double eval(double s) const override { return s <= split ? lower(s) : upper(s); }
  json describe() const override {
    return {{"kind", "glued_profile"}, {"split", split}, {"lower", lower.describe()},
            {"upper", upper.describe()}};
  }
};

// s -> A(s - w, w) with w = min(max W, s - min(U+V)), which keeps both arguments in range.
struct SlidingProfileNode final : ScalarFunction::Node {
  BinaryFunction a;
  double floor, w_hi;
  SlidingProfileNode(BinaryFunction a_, double f, double w) : a(std::move(a_)), floor(f), w_hi(w) {}
  double eval(double s) const override {
    const double w = std::min(w_hi, s - floor);
    return a(s - w, w);
  }
  json describe() const override {
    return {{"kind", "sliding_profile"}, {"floor", floor}, {"w_max", w_hi}, {"of", "A"}};
  }
};

// Midpoint of the range of B over each tested level t + s, as a sampled profile.
ScalarFunction level_midpoints(const BinaryFunction& b, const std::vector<double>& points) {
  std::vector<std::pair<double, double>> samples;
  samples.reserve(points.size() / 2);
  for (std::size_t i = 0; i < points.size(); i += 2) {
    samples.emplace_back(points[i] + points[i + 1], b(points[i], points[i + 1]));
  }
  std::sort(samples.begin(), samples.end());
  std::vector<double> xs, ys;
  std::size_t first = 0;
  while (first < samples.size()) {
    const double level = samples[first].first;
    double lo = samples[first].second, hi = lo;
    std::size_t last = first + 1;
    while (last < samples.size() &&
           samples[last].first - level <= 1e-12 * (1.0 + std::abs(level))) {
      lo = std::min(lo, samples[last].second);
      hi = std::max(hi, samples[last].second);
      ++last;
    }
    xs.push_back(0.5 * (level + samples[last - 1].first));
    ys.push_back(0.5 * (lo + hi));
    first = last;
  }
  // A gaps evaluate at (u + v) + w, which can round an ulp past the outermost B level.
  xs.front() -= 1e-12 * (1.0 + std::abs(xs.front()));
  xs.back() += 1e-12 * (1.0 + std::abs(xs.back()));
  if (xs.size() == 1) {
    xs.push_back(xs.front() + 1.0);
    ys.push_back(ys.front());
  }
  return scalar::grid_sample(std::move(xs), std::move(ys));
}

StabilityCertificate start(const char* theorem, double alpha, int resolution) {
  StabilityCertificate cert;
  cert.theorem = theorem;
  cert.alpha = alpha;
  cert.resolution = resolution;
  return cert;
}

struct ConeSamples {
  std::vector<double> basis;
  std::vector<double> values;
};

// Values of `basis` and of `target` at every cone grid point.
ConeSamples sample_cone(const ConeGrid& grid, const TernaryFunction& basis,
                        const TernaryFunction& target) {
  ConeSamples out;
  out.basis.reserve(grid.size());
  out.values.reserve(grid.size());
  for (std::uint64_t i = 0; i < grid.size(); ++i) {
    const auto p = grid.point(i);
    out.basis.push_back(basis(p[0], p[1], p[2]));
    out.values.push_back(target(p[0], p[1], p[2]));
  }
  return out;
}

ResidualReport ternary_distance(const TernaryFunction& f, const TernaryFunction& g,
                                const ConeGrid& grid, const EngineOptions& options) {
  return sweep(grid_source(grid),
               [&](std::span<const double> p) { return f(p[0], p[1], p[2]) - g(p[0], p[1], p[2]); },
               options);
}

}  // namespace

StabilityCertificate certify_entropy_equation(const TernaryFunction& h, Alpha alpha,
                                              int resolution,
                                              const EntropyEquationOptions& settings,
                                              const CertifyOptions& options) {
  if (resolution < 2) throw Error(ErrorKind::InvalidResolution, "cone resolution must be >= 2");
  if (!(settings.box > 0.0)) throw Error(ErrorKind::Configuration, "box bound must be positive");
  const double a = alpha.value();
  auto cert = start(theorem_id::entropy_equation, a, resolution);
  const ConeGrid cone(resolution, settings.box);

  const ResidualReport symmetry = symmetry_residual(h, cone, options.engine);
  const ResidualReport equation = residual(equation::EntropyEq{}, {.ternary = h}, cone, options.engine);
  const BinaryFunction face(std::make_shared<FaceNode>(h));
  const ResidualReport homogeneity = homogeneity_residual(
      face, a, QuadrantGrid(resolution, settings.box), settings.scales, options.engine);
  cert.epsilons = {{"epsilon_1", symmetry.sup}, {"epsilon_2", equation.sup},
                   {"epsilon_3", homogeneity.sup}};
  cert.trace["epsilon_1_argmax"] = symmetry.argmax_point;
  cert.trace["epsilon_2_argmax"] = equation.argmax_point;
  cert.trace["epsilon_3_argmax"] = homogeneity.argmax_point;
  double eps1 = symmetry.sup;
  double eps2 = equation.sup;
  double eps3 = homogeneity.sup;
  if (options.epsilon_override) {
    eps1 = eps2 = eps3 = effective_epsilon(0.0, options, cert);
  }

  double anchor = 0.0;
  try {
    anchor = h(1.0, 1.0, 0.0);
    cert.trace["anchor"] = {{"point", {1.0, 1.0, 0.0}}, {"value", anchor}};
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::Domain) throw;
    const double tau = cone.spacing();
    anchor = h(1.0, 1.0, tau);
    cert.trace["anchor"] = {{"point", {1.0, 1.0, tau}}, {"value", anchor}, {"proxy", true}};
    cert.notes.push_back("H(1,1,0) is not defined; H(1,1,tau) with tau = grid spacing used instead");
  }

  TernaryFunction candidate;
  if (alpha.regime() == Alpha::Regime::Zero) {
    std::vector<double> values;
    values.reserve(cone.size());
    for (std::uint64_t i = 0; i < cone.size(); ++i) {
      const auto p = cone.point(i);
      values.push_back(h(p[0], p[1], p[2]));
    }
    const double level = median(values);
    // On the open cone entropy_solution(c, 0) is the constant -2c.
    candidate = ternary::entropy_solution(-0.5 * level, 0.0);
    cert.parameters = {{"constant", level}};
    cert.bound = 8.0 * eps3 + 25.0 * eps2 + 49.0 * eps1;
  } else {
    const bool shannon = alpha.regime() == Alpha::Regime::One;
    const double anchored = shannon ? anchor / 2.0 : anchor / (std::pow(2.0, a) - 2.0);
    auto family = [&](double c) {
      return shannon ? ternary::phi_form(scalar::xlogx(c)) : ternary::entropy_solution(c, a);
    };
    // The defect is linear in c, so a Chebyshev refit over the grid is cheap.
    const ConeSamples samples = sample_cone(cone, family(1.0), h);
    const double refined = minimax_slope(samples.basis, samples.values);
    const double anchored_distance = max_deviation(samples.basis, samples.values, anchored);
    const double refined_distance = max_deviation(samples.basis, samples.values, refined);
    const double c = refined_distance < anchored_distance ? refined : anchored;
    cert.trace["c_anchored"] = anchored;
    cert.trace["c_minimax"] = refined;
    cert.trace["c_source"] = c == anchored ? "anchor" : "minimax";
    candidate = family(c);
    cert.parameters = {{"c", c}};
    cert.bound = eps1 + eps2;
  }

  const ResidualReport dist = ternary_distance(h, candidate, cone, options.engine);
  cert.candidate = candidate.describe();
  cert.ternary_candidate = candidate;
  cert.distance = dist.sup;
  cert.trace["distance_argmax"] = dist.argmax_point;
  finish(cert);
  return cert;
}

StabilityCertificate certify_associativity(const BinaryFunction& a, const BinaryFunction& b,
                                           Interval u, Interval v, Interval w, int resolution,
                                           const CertifyOptions& options) {
  for (const auto& [name, iv] : {std::pair{"U", u}, std::pair{"V", v}, std::pair{"W", w}}) {
    if (!(iv.hi > iv.lo)) {
      throw Error(ErrorKind::Configuration,
                  std::string("interval ") + name + " is empty: [" + format_double(iv.lo) + ", " +
                      format_double(iv.hi) + "]");
    }
  }
  if (resolution < 1) throw Error(ErrorKind::InvalidResolution, "associativity resolution must be >= 1");
  auto cert = start(theorem_id::associativity, 0.0, resolution);
  const double r = resolution;
  auto node = [r](Interval iv, int k) { return iv.lo + (iv.hi - iv.lo) * (k / r); };

  auto cube = std::make_shared<std::vector<double>>();
  for (int i = 0; i <= resolution; ++i) {
    for (int j = 0; j <= resolution; ++j) {
      for (int k = 0; k <= resolution; ++k) {
        cube->insert(cube->end(), {node(u, i), node(v, j), node(w, k)});
      }
    }
  }
  const ResidualReport eps_report = sweep(
      list_source(cube, 3),
      [&](std::span<const double> p) { return a(p[0] + p[1], p[2]) - b(p[0], p[1] + p[2]); },
      options.engine);
  cert.epsilons["epsilon"] = eps_report.sup;
  cert.trace["epsilon_argmax"] = eps_report.argmax_point;
  const double eps = effective_epsilon(eps_report.sup, options, cert);

  const Interval uv{u.lo + v.lo, u.hi + v.hi};
  // The gaps are checked on the images of the tested cube, where the hypothesis was measured.
  auto a_points = std::make_shared<std::vector<double>>();
  auto b_points = std::make_shared<std::vector<double>>();
  a_points->reserve(2 * cube->size() / 3);
  b_points->reserve(2 * cube->size() / 3);
  for (std::size_t i = 0; i < cube->size(); i += 3) {
    const double x = (*cube)[i], y = (*cube)[i + 1], z = (*cube)[i + 2];
    a_points->insert(a_points->end(), {x + y, z});
    b_points->insert(b_points->end(), {x, y + z});
  }

  struct Attempt {
    ScalarFunction phi;
    ResidualReport a_gap, b_gap;
    bool within = false;
  };
  auto attempt = [&](ScalarFunction phi) {
    Attempt out;
    out.phi = std::move(phi);
    const ScalarFunction& f = out.phi;
    out.a_gap = sweep(list_source(a_points, 2),
                      [&](std::span<const double> p) { return a(p[0], p[1]) - f(p[0] + p[1]); },
                      options.engine);
    out.b_gap = sweep(list_source(b_points, 2),
                      [&](std::span<const double> p) { return b(p[0], p[1]) - f(p[0] + p[1]); },
                      options.engine);
    out.within = satisfies_bound(out.a_gap.sup, 2.0 * eps) && satisfies_bound(out.b_gap.sup, eps);
    return out;
  };
  auto summary = [&](const Attempt& t) {
    return json{{"profile", t.phi.describe()},
                {"A_gap", t.a_gap.sup},
                {"A_gap_argmax", t.a_gap.argmax_point},
                {"B_gap", t.b_gap.sup},
                {"B_gap_argmax", t.b_gap.argmax_point},
                {"within", t.within}};
  };

  // B anchored at min U, continued through A at max W.
  Attempt chosen = attempt(ScalarFunction(std::make_shared<GluedProfileNode>(
      ProfilePiece{b, u.lo, true, "B"}, ProfilePiece{a, w.hi, false, "A"}, u.lo + v.hi + w.hi)));
  cert.trace["B_anchored"] = summary(chosen);
  cert.trace["construction"] = "B_anchored";
  if (!chosen.within) {
    Attempt sliding =
        attempt(ScalarFunction(std::make_shared<SlidingProfileNode>(a, uv.lo, w.hi)));
    cert.trace["A_sliding"] = summary(sliding);
    if (sliding.within) {
      chosen = sliding;
      cert.trace["construction"] = "A_sliding";
    } else {
      Attempt levels = attempt(level_midpoints(b, *b_points));
      cert.trace["B_level_midpoint"] = summary(levels);
      if (levels.within) {
        chosen = levels;
        cert.trace["construction"] = "B_level_midpoint";
      }
    }
  }

  cert.candidate = chosen.phi.describe();
  cert.profile = chosen.phi;
  cert.trace["A_gap"] = chosen.a_gap.sup;
  cert.trace["A_bound"] = 2.0 * eps;
  cert.trace["B_gap"] = chosen.b_gap.sup;
  cert.trace["B_bound"] = eps;
  // Both checks in one number: the A gap is compared at half weight.
  cert.distance = std::max(chosen.a_gap.sup / 2.0, chosen.b_gap.sup);
  cert.bound = eps;
  cert.satisfied = chosen.within;
  return cert;
}

StabilityCertificate certify_modified_entropy(const TernaryFunction& f, Alpha alpha, int box,
                                              int resolution, const CertifyOptions& options) {
  if (alpha.regime() == Alpha::Regime::One) {
    throw Error(ErrorKind::UnsupportedParameter,
                "unsupported alpha=1 for the modified entropy equation");
  }
  if (box < 1) throw Error(ErrorKind::Configuration, "box bound n must be >= 1");
  if (resolution < 2) throw Error(ErrorKind::InvalidResolution, "cone resolution must be >= 2");
  const double al = alpha.value();
  auto cert = start(theorem_id::modified_entropy, al, resolution);
  const ConeGrid cone(resolution, static_cast<double>(box));

  const ResidualReport equation =
      residual(equation::ModifiedEntropy{al}, {.ternary = f}, cone, options.engine);
  const ResidualReport symmetry = symmetry_residual(f, cone, options.engine);
  cert.epsilons = {{"epsilon_1", equation.sup}, {"epsilon_2", symmetry.sup}};
  cert.trace["epsilon_1_argmax"] = equation.argmax_point;
  cert.trace["epsilon_2_argmax"] = symmetry.argmax_point;
  double eps1 = equation.sup;
  double eps2 = symmetry.sup;
  if (options.epsilon_override) eps1 = eps2 = effective_epsilon(0.0, options, cert);

  double a = 0.0;
  if (alpha.regime() != Alpha::Regime::Zero) {
    // Both probes have coordinate sum 1, so phi cancels in the difference.
    auto power_sum = [al](double x, double y, double z) {
      return std::pow(x, al) + std::pow(y, al) + std::pow(z, al);
    };
    const double third = 1.0 / 3.0;
    const double spread = power_sum(0.5, 0.25, 0.25) - power_sum(third, third, third);
    const double anchored = (f(0.5, 0.25, 0.25) - f(third, third, third)) / spread;

    // f - a*sum x^alpha - profile is linear in a.
    std::vector<double> basis;
    std::vector<double> values;
    for (std::uint64_t i = 0; i < cone.size(); ++i) {
      const auto p = cone.point(i);
      const double t = (p[0] + p[1] + p[2]) / 3.0;
      basis.push_back(power_sum(p[0], p[1], p[2]) - 3.0 * std::pow(t, al));
      values.push_back(f(p[0], p[1], p[2]) - f(t, t, t));
    }
    const double refined = minimax_slope(basis, values);
    const bool use_refined =
        max_deviation(basis, values, refined) < max_deviation(basis, values, anchored);
    a = use_refined ? refined : anchored;
    cert.trace["a_anchored"] = anchored;
    cert.trace["a_minimax"] = refined;
    cert.trace["a_source"] = use_refined ? "minimax" : "anchor";
  }
  const ScalarFunction profile(std::make_shared<DiagonalProfileNode>(f, a, al));
  const TernaryFunction candidate = ternary::modified_entropy_solution(a, al, profile);

  switch (alpha.regime()) {
    case Alpha::Regime::Negative:
      cert.bound = 2.0 * eps1 + 3.0 * eps2;
      break;
    case Alpha::Regime::Zero:
      cert.bound = 191.0 * eps1 + 1263.0 * eps2;
      break;
    default: {
      const double cn = modified_constant_c(box, al);
      const double dn = modified_constant_d(box, al);
      cert.constants = {{"K", stability_constant_K(al)}, {"c_n", cn}, {"d_n", dn}};
      cert.bound = cn * eps1 + dn * eps2;
      break;
    }
  }

  const ResidualReport dist = ternary_distance(f, candidate, cone, options.engine);
  cert.parameters = {{"a", a}, {"n", box}, {"phi_at_1", profile(1.0)}};
  cert.candidate = candidate.describe();
  cert.ternary_candidate = candidate;
  cert.profile = profile;
  cert.distance = dist.sup;
  cert.trace["distance_argmax"] = dist.argmax_point;
  finish(cert);
  return cert;
}

}  // namespace infostab
