#include <cmath>
#include <vector>

#include "doctest.h"
#include "infostab/certifiers.hpp"
#include "infostab/error.hpp"
#include "infostab/measures.hpp"
#include "infostab/models.hpp"
#include "infostab/report.hpp"
#include "support.hpp"

using namespace infostab;
using infostab::testing::expect_error;

namespace {

// Independent transcription of the constant formulas.
double oracle_K(double a) {
  if (a == 0.0) return 63.0;
  return (3.0 + 12.0 * std::pow(2.0, a) + 32.0 * std::pow(3.0, a + 1) / std::abs(std::pow(2.0, -a) - 1.0)) /
         std::abs(std::pow(2.0, 1.0 - a) - 1.0);
}

double oracle_T(double a) {
  return 3.0 * std::pow(2.0, a) + 8.0 * std::pow(3.0, a + 1) / std::abs(std::pow(2.0, -a) - 1.0);
}

ScalarFunction bumped(double a, double height) {
  return scalar::sum({alpha_entropy_generator(a), scalar::scaled_bump(0.37, 0.1, height)});
}

}  // namespace

TEST_CASE("stability constants") {
  CHECK(stability_constant_K(2.0) == doctest::Approx(2406.0).epsilon(1e-12));
  CHECK(stability_constant_T(2.0) == doctest::Approx(300.0).epsilon(1e-12));
  CHECK(stability_constant_K(0.0) == 63.0);
  expect_error(ErrorKind::UnsupportedParameter, [] { stability_constant_K(1.0); });
  for (double a : {-2.0, -0.5, 0.25, 0.5, 1.5, 3.0}) {
    CHECK(stability_constant_K(a) == doctest::Approx(oracle_K(a)).epsilon(1e-12));
  }
  for (double a : {0.25, 2.0, 3.0}) {
    CHECK(stability_constant_T(a) == doctest::Approx(oracle_T(a)).epsilon(1e-12));
  }
  for (int n : {1, 3, 10}) {
    const double k = oracle_K(2.0);
    CHECK(modified_constant_c(n, 2.0) == doctest::Approx(2 + 7 * 4.0 * n * n * k).epsilon(1e-12));
    CHECK(modified_constant_d(n, 2.0) == doctest::Approx(4 + 7 * 16.0 * n * n * k).epsilon(1e-12));
  }
  const auto all = stability_constants(2.0, 4);
  CHECK(all.K.value() == doctest::Approx(2406.0));
  CHECK(all.T.value() == doctest::Approx(300.0));
  CHECK(all.n.value() == 4);
  CHECK(all.c_n.has_value());
  const auto negative = stability_constants(-1.0);
  CHECK_FALSE(negative.T.has_value());
  CHECK_FALSE(negative.c_n.has_value());
}

TEST_CASE("the constant ratio across box sizes is not exactly the square of the size ratio") {
  const double ratio = modified_constant_c(10, 2.0) / modified_constant_c(1, 2.0);
  CHECK(ratio == doctest::Approx(6736802.0 / 67370.0).epsilon(1e-12));
  CHECK(std::abs(ratio - 100.0) > 1e-3);
}

TEST_CASE("fundamental open: exact members are recovered") {
  for (double a : {0.5, 2.0, 3.0}) {
    const auto f = scalar::power_family(1.3, -0.4, a);
    const auto cert = certify_fundamental_open(f, Alpha(a), 64);
    CHECK(cert.satisfied);
    CHECK(cert.parameters.at("a") == doctest::Approx(1.3).epsilon(1e-9));
    CHECK(cert.parameters.at("b") == doctest::Approx(-0.4).epsilon(1e-9));
    CHECK(cert.distance <= 1e-12);
    CHECK(cert.epsilons.at("epsilon") <= 1e-12);
  }
  const auto log = certify_fundamental_open(scalar::log_family(0.8, 0.3), Alpha(0.0), 64);
  CHECK(log.satisfied);
  CHECK(log.parameters.at("lambda") == doctest::Approx(0.8).epsilon(1e-9));
  CHECK(log.parameters.at("c") == doctest::Approx(0.3).epsilon(1e-9));
  CHECK(log.constants.at("K") == 63.0);
  CHECK_FALSE(log.notes.empty());
}

TEST_CASE("fundamental open: perturbed instances stay within K epsilon") {
  for (double a : {0.0, 0.5, 2.0}) {
    for (double height : {1e-6, 1e-3}) {
      const auto cert = certify_fundamental_open(bumped(a, height), Alpha(a), 64);
      CHECK(cert.satisfied);
      CHECK(cert.distance <= cert.bound);
      CHECK(cert.distance > 0.0);
      CHECK(cert.bound == doctest::Approx(cert.constants.at("K") * cert.epsilons.at("epsilon")));
    }
  }
}

TEST_CASE("fundamental certifiers dispatch on the regime") {
  const auto f = alpha_entropy_generator(2.0);
  expect_error(ErrorKind::UnsupportedParameter, [&] { certify_fundamental_open(f, Alpha(1.0), 16); });
  expect_error(ErrorKind::Dispatch, [&] { certify_fundamental_open(f, Alpha(-1.0), 16); });
  expect_error(ErrorKind::Dispatch, [&] { certify_fundamental_closed(f, Alpha(-1.0), 16); });
  expect_error(ErrorKind::Dispatch, [&] { certify_hyperstable(f, Alpha(2.0), 16, false); });
  expect_error(ErrorKind::InvalidResolution, [&] { certify_fundamental_open(f, Alpha(2.0), 15); });
}

TEST_CASE("fundamental closed") {
  const auto exact = certify_fundamental_closed(alpha_entropy_generator(2.0), Alpha(2.0), 64);
  CHECK(exact.satisfied);
  CHECK(exact.distance <= 1e-12);
  CHECK(exact.parameters.at("value_at_1") == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(exact.bound == doctest::Approx(2406.0 * exact.epsilons.at("epsilon")));

  const auto perturbed = certify_fundamental_closed(bumped(2.0, 1e-4), Alpha(2.0), 64);
  CHECK(perturbed.satisfied);

  const auto zero = certify_fundamental_closed(
      scalar::piecewise(0.0, scalar::constant(0.5), 0.25), Alpha(0.0), 32);
  CHECK(zero.satisfied);
  CHECK(zero.parameters.at("c") == 0.5);
  CHECK(zero.parameters.at("f1") == 0.25);
}

TEST_CASE("hyperstability") {
  const auto exact = scalar::power_family(0.7, 0.2, -1.0);
  const auto ok = certify_hyperstable(exact, Alpha(-1.0), 64, false);
  CHECK(ok.satisfied);
  CHECK(ok.parameters.at("c") == doctest::Approx(0.7).epsilon(1e-9));
  CHECK(ok.parameters.at("d") == doctest::Approx(0.2).epsilon(1e-9));

  const auto bad = certify_hyperstable(bumped(-1.0, 1e-3), Alpha(-1.0), 64, false);
  CHECK_FALSE(bad.satisfied);
  CHECK_FALSE(bad.notes.empty());

  const auto probe =
      hyperstability_blowup_probe(bumped(-1.0, 1e-3), Alpha(-1.0), {0.125, 0.0625, 0.03125});
  REQUIRE(probe.size() == 3);
  for (std::size_t i = 1; i < probe.size(); ++i) {
    CHECK(probe[i].report.sup >= probe[i - 1].report.sup);
  }
  CHECK(probe.back().report.sup > 2.0 * probe.front().report.sup);
  expect_error(ErrorKind::Configuration,
               [&] { hyperstability_blowup_probe(exact, Alpha(-1.0), {0.1, 0.2}); });
  expect_error(ErrorKind::Dispatch, [&] { hyperstability_blowup_probe(exact, Alpha(1.0), {0.1}); });
}

TEST_CASE("measure sequences") {
  for (double a : {-1.0, 0.0, 2.0}) {
    const InformationMeasure exact(a, alpha_entropy_generator(a), 4);
    const auto exact_certs = certify_measure_sequence(exact, 4, 16);
    REQUIRE(exact_certs.size() == 3);
    for (const auto& c : exact_certs) {
      CHECK(c.satisfied);
      CHECK(c.distance <= 1e-9);
    }
  }
  for (double a : {0.0, 0.5, 2.0}) {
    const InformationMeasure noisy(a, bumped(a, 1e-4), 4, {{3, 1e-4, 1}, {4, 1e-4, 2}});
    for (const auto& c : certify_measure_sequence(noisy, 4, 16)) CHECK(c.satisfied);
  }
  const InformationMeasure shannon(1.0, scalar::shannon_s(), 3);
  expect_error(ErrorKind::UnsupportedParameter, [&] { certify_measure_sequence(shannon, 3, 8); });
  const InformationMeasure small(2.0, alpha_entropy_generator(2.0), 3);
  expect_error(ErrorKind::Configuration, [&] { certify_measure_sequence(small, 4, 8); });
}

TEST_CASE("entropy equation") {
  const auto power = certify_entropy_equation(ternary::entropy_solution(0.6, 2.0), Alpha(2.0), 8);
  CHECK(power.satisfied);
  CHECK(power.parameters.at("c") == doctest::Approx(0.6).epsilon(1e-9));

  const auto shannon =
      certify_entropy_equation(ternary::phi_form(scalar::xlogx(-1.5)), Alpha(1.0), 8);
  CHECK(shannon.satisfied);
  CHECK(shannon.parameters.at("c") == doctest::Approx(-1.5).epsilon(1e-9));

  const auto zero = certify_entropy_equation(ternary::entropy_solution(2.0, 0.0), Alpha(0.0), 8);
  CHECK(zero.satisfied);
  CHECK(zero.parameters.at("constant") == doctest::Approx(-4.0));

  const auto noisy = certify_entropy_equation(
      ternary::sum({ternary::entropy_solution(0.6, 0.5), ternary::noise(1e-4, 5)}), Alpha(0.5), 8);
  CHECK(noisy.satisfied);
  CHECK(noisy.distance > 0.0);
}

TEST_CASE("associativity") {
  const Interval u{0.1, 0.6}, v{0.2, 0.5}, w{0.0, 0.4};
  const auto phi = scalar::power_law(1.0, 2.0);
  const auto exact = certify_associativity(binary::composed_sum(phi), binary::composed_sum(phi), u, v,
                                           w, 12);
  CHECK(exact.satisfied);
  CHECK(exact.distance <= 1e-12);

  const auto a = binary::sum({binary::composed_sum(phi), binary::noise(1e-3, 4)});
  const auto b = binary::sum({binary::composed_sum(phi), binary::noise(1e-3, 9)});
  const auto noisy = certify_associativity(a, b, u, v, w, 12);
  CHECK(noisy.satisfied);
  CHECK(noisy.trace.at("A_gap").get<double>() <= 2.0 * noisy.bound + 1e-12);
  CHECK(noisy.trace.at("B_gap").get<double>() <= noisy.bound + 1e-12);

  expect_error(ErrorKind::Configuration, [&] {
    certify_associativity(a, b, Interval{0.5, 0.5}, v, w, 4);
  });
}

TEST_CASE("modified entropy") {
  for (double a : {-0.5, 0.0, 2.0}) {
    const double weight = a == 0.0 ? 0.0 : 0.8;
    const auto exact = ternary::modified_entropy_solution(weight, a, scalar::constant(-weight));
    const auto cert = certify_modified_entropy(exact, Alpha(a), 1, 6);
    CHECK(cert.satisfied);
    CHECK(cert.distance <= 1e-10);
    CHECK(cert.parameters.at("a") == doctest::Approx(weight).epsilon(1e-9));
    CHECK(cert.parameters.at("phi_at_1") == doctest::Approx(-weight).epsilon(1e-9));
  }
  const auto noisy = ternary::sum(
      {ternary::modified_entropy_solution(0.8, 2.0, scalar::constant(-0.8)), ternary::noise(1e-5, 2)});
  CHECK(certify_modified_entropy(noisy, Alpha(2.0), 2, 6).satisfied);
  expect_error(ErrorKind::UnsupportedParameter, [&] {
    certify_modified_entropy(noisy, Alpha(1.0), 1, 6);
  });
}

TEST_CASE("sum forms") {
  const auto additive = scalar::sum({scalar::linear(2.0), scalar::constant(-2.0 / 3.0)});
  const auto plain = certify_sum_form(additive, 3, 12);
  CHECK(plain.satisfied);
  CHECK(plain.parameters.at("kappa") == doctest::Approx(2.0).epsilon(1e-5));

  const auto mult = certify_sum_form_multiplicative(scalar::power_law(1.0, 2.0), 3, 3, 10);
  CHECK(mult.satisfied);
  CHECK(mult.parameters.at("beta") == doctest::Approx(2.0).epsilon(1e-6));
  CHECK(mult.distance <= 1e-9);

  const auto km = certify_kocsis_maksa(
      scalar::sum({scalar::power_law(0.4, 2.0), scalar::power_law(-0.4, 0.5)}), 2.0, 0.5, 3, 3, 8);
  CHECK(km.satisfied);
  CHECK(km.parameters.at("c") == doctest::Approx(0.4).epsilon(1e-9));
  CHECK(km.parameters.at("kappa") == 0.0);

  const auto same = certify_kocsis_maksa(scalar::power_log(0.3, 2.0), 2.0, 2.0, 3, 3, 8);
  CHECK(same.satisfied);
  CHECK(same.parameters.at("lambda") == doctest::Approx(0.3).epsilon(1e-9));

  expect_error(ErrorKind::HypothesisViolation, [] { certify_sum_form(scalar::constant(0), 2, 8); });
  expect_error(ErrorKind::UnsupportedParameter,
               [] { certify_kocsis_maksa(scalar::xlogx(1), 1.0, 1.0, 3, 3, 8); });
}

TEST_CASE("epsilon override is recorded") {
  CertifyOptions options;
  options.epsilon_override = 0.5;
  const auto cert =
      certify_fundamental_open(alpha_entropy_generator(2.0), Alpha(2.0), 32, options);
  CHECK(cert.epsilon_overridden);
  CHECK(cert.bound == doctest::Approx(2406.0 * 0.5));
  const auto doc = to_json(cert);
  CHECK(doc.at("epsilon_overridden") == true);
  CHECK(doc.at("theorem") == "fundamental_open");
}

TEST_CASE("certificate reports are deterministic") {
  const auto f = bumped(2.0, 1e-3);
  const auto serial = certify_fundamental_open(f, Alpha(2.0), 64, {.engine = {.jobs = 1}});
  const auto parallel = certify_fundamental_open(f, Alpha(2.0), 64, {.engine = {.jobs = 4}});
  CHECK(render(to_json(serial)) == render(to_json(parallel)));
}
