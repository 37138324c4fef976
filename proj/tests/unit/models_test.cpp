#include <cmath>
#include <vector>

#include "doctest.h"
#include "infostab/descriptors.hpp"
#include "infostab/domains.hpp"
#include "infostab/error.hpp"
#include "infostab/models.hpp"
#include "support.hpp"

using namespace infostab;
using infostab::testing::expect_error;

namespace {

// Direct textbook formulas, kept separate from the library code paths.
double naive_shannon(const std::vector<double>& p) {
  double h = 0.0;
  for (double x : p) {
    if (x > 0.0) h -= x * std::log(x) / std::log(2.0);
  }
  return h;
}

double naive_alpha(const std::vector<double>& p, double a) {
  double s = 0.0;
  for (double x : p) {
    if (x > 0.0) s += std::pow(x, a);
  }
  return (s - 1.0) / (std::pow(2.0, 1.0 - a) - 1.0);
}

}  // namespace

TEST_CASE("alpha regimes") {
  CHECK(Alpha(-0.5).regime() == Alpha::Regime::Negative);
  CHECK(Alpha(0.0).regime() == Alpha::Regime::Zero);
  CHECK(Alpha(0.3).regime() == Alpha::Regime::PositiveNotOne);
  CHECK(Alpha(4.0).regime() == Alpha::Regime::PositiveNotOne);
  CHECK(Alpha(1.0).regime() == Alpha::Regime::One);
  CHECK(to_string(Alpha::Regime::PositiveNotOne) == "positive-not-one");
  expect_error(ErrorKind::Configuration, [] { Alpha(std::nan("")); });
}

TEST_CASE("shannon entropy") {
  const std::vector<double> half{0.5, 0.5};
  const std::vector<double> point{1.0, 0.0};
  const std::vector<double> third{1.0 / 3, 1.0 / 3, 1.0 / 3};
  CHECK(shannon_entropy(half) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(shannon_entropy(point) == 0.0);
  CHECK(shannon_entropy(third) == doctest::Approx(1.584962500721156).epsilon(1e-13));
  const std::vector<double> bad{0.5, 0.6};
  expect_error(ErrorKind::InvalidDistribution, [&] { shannon_entropy(bad); });
  const std::vector<double> negative{1.2, -0.2};
  expect_error(ErrorKind::InvalidDistribution, [&] { shannon_entropy(negative); });
}

TEST_CASE("alpha entropy") {
  const std::vector<double> half{0.5, 0.5};
  const std::vector<double> point{1.0, 0.0};
  CHECK(alpha_entropy(half, 2.0) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(alpha_entropy(point, 2.0) == 0.0);
  CHECK(alpha_entropy(half, 1.0) == doctest::Approx(1.0).epsilon(1e-15));
  for (double a : {-1.0, 0.0, 0.5, 2.0, 3.0}) {
    for (const auto& p : sample_simplex(4, 9, Variant::Closed)) {
      CHECK(alpha_entropy(p, a) == doctest::Approx(naive_alpha(p, a)).epsilon(1e-12));
    }
  }
}

TEST_CASE("alpha entropy is continuous at alpha = 1") {
  for (int n = 2; n <= 6; ++n) {
    const SimplexGrid grid(n, 12, Variant::Open);
    grid.for_each(0, grid.size(), [&](std::uint64_t, std::span<const double> p) {
      const double h1 = naive_shannon({p.begin(), p.end()});
      CHECK(std::abs(alpha_entropy(p, 1.0 + 1e-8) - h1) <= 1e-6);
      CHECK(std::abs(alpha_entropy(p, 1.0 - 1e-8) - h1) <= 1e-6);
    });
  }
}

TEST_CASE("information function") {
  CHECK(shannon_info_function(0.5) == 1.0);
  CHECK(shannon_info_function(0.0) == 0.0);
  CHECK(shannon_info_function(1.0) == 0.0);
  const double quarter = -(0.25 * std::log2(0.25) + 0.75 * std::log2(0.75));
  CHECK(shannon_info_function(0.25) == doctest::Approx(quarter).epsilon(1e-15));
  CHECK(quarter == doctest::Approx(0.811278).epsilon(1e-6));
}

TEST_CASE("scalar function evaluation") {
  CHECK(scalar::power_family(1, 0, 2)(0.5) == 0.25);
  for (double x : {0.0, 0.3, 1.0}) CHECK(scalar::constant(-2.5)(x) == -2.5);
  const auto zero = scalar::power_family(0, 0, 1.7);
  const auto flat = scalar::log_family(0, 4);
  for (double x : sample_unit(16, Variant::Open)) {
    CHECK(zero(x) == 0.0);
    CHECK(flat(x) == 4.0);
  }
  const auto table = scalar::sampled(scalar::shannon_s(), sample_unit(512, Variant::Closed));
  CHECK(std::abs(table(0.25) - 0.811278) <= 1e-4);
  const auto interp = scalar::grid_sample({0.0, 1.0, 3.0}, {0.0, 2.0, 0.0});
  CHECK(interp(0.5) == 1.0);
  CHECK(interp(2.0) == 1.0);
  expect_error(ErrorKind::Configuration, [] { scalar::grid_sample({0.0, 0.0}, {1.0, 2.0}); });
  expect_error(ErrorKind::Domain, [&] { interp(4.0); });
  expect_error(ErrorKind::Domain, [] { scalar::power_family(1, 1, 2)(1.5); });
  expect_error(ErrorKind::Domain, [] { scalar::log_family(1, 0)(1.0); });
}

TEST_CASE("closed-form families at the endpoints follow the conventions") {
  const auto f = scalar::power_family(2.0, 3.0, -1.0);
  CHECK(f(0.0) == 0.0);
  CHECK(f(1.0) == 2.0 - 3.0);
  CHECK(scalar::xlogx(2.0)(0.0) == 0.0);
  CHECK(scalar::power_law(1.0, -2.0)(0.0) == 0.0);
  CHECK(scalar::power_log(1.0, 2.0)(0.0) == 0.0);
}

TEST_CASE("bump and noise stay within their height") {
  const auto bump = scalar::scaled_bump(0.4, 0.1, 1e-3);
  const auto noise = scalar::noise(1e-3, 7);
  for (double x : sample_unit(200, Variant::Closed)) {
    CHECK(std::abs(bump(x)) <= 1e-3);
    CHECK(std::abs(noise(x)) <= 1e-3);
    if (std::abs(x - 0.4) >= 0.1) CHECK(bump(x) == 0.0);
  }
  CHECK(bump(0.4) == doctest::Approx(1e-3));
  CHECK(noise(0.3) == scalar::noise(1e-3, 7)(0.3));
  CHECK(noise(0.3) != scalar::noise(1e-3, 8)(0.3));
}

TEST_CASE("ternary families") {
  const auto h = ternary::entropy_solution(2.0, 3.0);
  CHECK(h(1, 1, 0) == doctest::Approx(2.0 * (8.0 - 2.0)));
  const auto phi = ternary::phi_form(scalar::xlogx(1.0));
  CHECK(phi(1, 1, 0) == doctest::Approx(2.0));
  const auto mod = ternary::modified_entropy_solution(1.0, 2.0, scalar::constant(-1.0));
  CHECK(mod(1, 2, 3) == doctest::Approx(14.0 - 1.0));
  expect_error(ErrorKind::Domain, [&] { h(0, 0, 0); });
  expect_error(ErrorKind::Domain, [&] { h(-1, 1, 1); });
  CHECK(ternary::coordinate(2)(1, 2, 3) == 3.0);
}

TEST_CASE("entropy limit gap") {
  CHECK(entropy_limit_gap(std::vector<double>{0.5, 0.5}, 1e-4) < 1e-3);
  CHECK(entropy_limit_gap(std::vector<double>{1.0, 0.0}, 0.3) == 0.0);
  CHECK(entropy_limit_gap(std::vector<double>{1.0 / 3, 1.0 / 3, 1.0 / 3}, 1e-4) < 1e-3);
}

TEST_CASE("entropy generators") {
  for (double a : {-1.0, 0.5, 1.0, 2.0}) {
    const auto gen = alpha_entropy_generator(a);
    const auto sum = sum_property_generator(a);
    for (double x : sample_unit(20, Variant::Open)) {
      const std::vector<double> p{1.0 - x, x};
      CHECK(gen(x) == doctest::Approx(alpha_entropy(p, a)).epsilon(1e-12));
      CHECK(sum(1.0 - x) + sum(x) == doctest::Approx(alpha_entropy(p, a)).epsilon(1e-12));
    }
  }
}

TEST_CASE("descriptors round-trip") {
  const std::vector<ScalarFunction> scalars{
      scalar::power_family(1.5, -2, 0.7),
      scalar::log_family(0.3, 1),
      scalar::shannon_s(),
      scalar::xlogx(2),
      scalar::power_law(3, 2),
      scalar::power_log(1, 2),
      scalar::linear(0.25),
      scalar::sum({scalar::constant(1), scalar::scaled_bump(0.5, 0.2, 0.1)}),
      scalar::scaled(2, scalar::noise(0.5, 9)),
      scalar::piecewise(0.1, scalar::constant(3), -0.2),
      scalar::grid_sample({0, 0.5, 1}, {1, 0, 1}),
  };
  for (const auto& f : scalars) {
    const auto g = scalar_from_json(f.describe());
    CHECK(g.describe() == f.describe());
    for (double x : {0.0, 0.125, 0.5, 0.9}) {
      double fx = 0.0;
      bool defined = true;
      try {
        fx = f(x);
      } catch (const Error&) {
        defined = false;
      }
      if (defined) CHECK(g(x) == fx);
    }
  }
  const auto h = ternary::sum({ternary::entropy_solution(1, 2), ternary::noise(0.1, 3)});
  CHECK(ternary_from_json(h.describe())(0.2, 0.3, 0.4) == h(0.2, 0.3, 0.4));
  const auto b = binary::homogeneous_lift(scalar::power_family(1, 2, 3), 3);
  CHECK(binary_from_json(b.describe())(0.2, 0.7) == b(0.2, 0.7));

  expect_error(ErrorKind::Configuration, [] { scalar_from_json({{"kind", "nope"}}); });
  expect_error(ErrorKind::Configuration, [] { scalar_from_json({{"kind", "power_family"}, {"a", 1}}); });
  expect_error(ErrorKind::Configuration, [] { ternary_from_json(nlohmann::json::array()); });
}
