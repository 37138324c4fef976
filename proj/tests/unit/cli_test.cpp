#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>
#include <string>

#include <nlohmann/json.hpp>

#include "doctest.h"
#include "infostab/cli/run.hpp"

using nlohmann::json;
namespace fs = std::filesystem;
namespace cli = infostab::cli;

namespace {

class Scratch {
 public:
  Scratch() {
    std::random_device seed;
    path_ = fs::temp_directory_path() / ("infostab_cli_test_" + std::to_string(seed()));
    fs::create_directories(path_);
  }
  ~Scratch() {
    std::error_code ec;
    fs::remove_all(path_, ec);
  }
  const fs::path& path() const { return path_; }

 private:
  fs::path path_;
};

struct Outcome {
  int code;
  std::string diagnostics;
  json report;
};

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream out;
  out << in.rdbuf();
  return out.str();
}

Outcome execute(const json& config, const fs::path& dir, cli::RunOptions options = {}) {
  options.out_dir = dir;
  std::ostringstream err;
  Outcome out{cli::run(config, options, err), err.str(), json()};
  if (fs::exists(dir / "report.json")) out.report = json::parse(slurp(dir / "report.json"));
  return out;
}

json with_job(const std::string& job, json body) {
  return {{"schema", cli::config_schema}, {"job", job}, {job, std::move(body)}};
}

json power_family(double a, double b, double alpha) {
  return {{"kind", "power_family"}, {"a", a}, {"b", b}, {"alpha", alpha}};
}

}  // namespace

TEST_CASE("certify job on an exact family succeeds") {
  Scratch dir;
  const auto out = execute(with_job("certify", {{"theorem", "fundamental_open"},
                                                {"alpha", 0.5},
                                                {"resolution", 256},
                                                {"function", power_family(2, 1, 0.5)}}),
                           dir.path());
  CHECK(out.code == cli::exit_ok);
  CHECK(out.report.at("status") == "ok");
  CHECK(out.report.at("schema") == cli::report_schema);
  CHECK(out.report.at("certificates").at(0).at("satisfied") == true);
}

TEST_CASE("certify job at alpha = 1 is a configuration error") {
  Scratch dir;
  const auto out = execute(with_job("certify", {{"theorem", "fundamental_open"},
                                                {"alpha", 1.0},
                                                {"resolution", 16},
                                                {"function", {{"kind", "shannon_s"}}}}),
                           dir.path());
  CHECK(out.code == cli::exit_config);
  CHECK(out.diagnostics.find("unsupported") != std::string::npos);
  CHECK_FALSE(fs::exists(dir.path() / "report.json"));
}

TEST_CASE("constants sweep writes the relation column") {
  Scratch dir;
  const auto out = execute(
      with_job("sweep", {{"mode", "constants"}, {"alphas", {0.25, 0.5, 2, 3, 5}}}), dir.path());
  CHECK(out.code == cli::exit_ok);
  std::istringstream csv(slurp(dir.path() / "summary.csv"));
  std::string line;
  std::getline(csv, line);
  CHECK(line == "alpha,K,T,relation_gap");
  int rows = 0;
  while (std::getline(csv, line)) {
    ++rows;
    const double gap = std::stod(line.substr(line.rfind(',') + 1));
    CHECK(std::abs(gap) <= 1e-9 * 1e6);
  }
  CHECK(rows == 5);
  CHECK(out.report.at("constants").at(2).at("K").get<double>() == doctest::Approx(2406.0));
}

TEST_CASE("certify sweep spans the three regimes") {
  Scratch dir;
  const auto out = execute(with_job("sweep", {{"mode", "certify"},
                                              {"alphas", {-2, -1, 0.5, 2}},
                                              {"resolution", 64},
                                              {"family", {{"a", 1}, {"b", 1}}}}),
                           dir.path());
  CHECK(out.code == cli::exit_ok);
  const auto& certs = out.report.at("certificates");
  REQUIRE(certs.size() == 4);
  for (const auto& c : certs) CHECK(c.at("satisfied") == true);
  CHECK(certs.at(0).at("theorem") == "hyperstable");
  CHECK(certs.at(2).at("theorem") == "fundamental_open");
  std::istringstream csv(slurp(dir.path() / "summary.csv"));
  std::string header;
  std::getline(csv, header);
  CHECK(header == "alpha,regime,epsilon,bound,distance,satisfied");
}

TEST_CASE("a bumped hyperstable family fails with a blow-up probe attached") {
  Scratch dir;
  const json bump = {{"kind", "scaled_bump"}, {"center", 0.37}, {"width", 0.1}, {"height", 1e-3}};
  const auto out = execute(with_job("sweep", {{"alphas", {-1}},
                                              {"resolution", 64},
                                              {"family", {{"a", 1}, {"b", 1}, {"perturbation", bump}}}}),
                           dir.path());
  CHECK(out.code == cli::exit_violation);
  CHECK(out.report.at("status") == "violation");
  const auto& cert = out.report.at("certificates").at(0);
  CHECK(cert.at("satisfied") == false);
  CHECK(cert.at("blowup_probe").size() == 7);
}

TEST_CASE("configuration errors exit with 2 and name the field") {
  Scratch dir;
  const auto empty = execute(with_job("sweep", {{"mode", "constants"}, {"alphas", json::array()}}),
                             dir.path());
  CHECK(empty.code == cli::exit_config);
  CHECK(empty.diagnostics.find("sweep.alphas") != std::string::npos);

  const auto alpha_one = execute(with_job("sweep", {{"alphas", {0.5, 1.0}}, {"resolution", 8},
                                                    {"family", {{"a", 1}, {"b", 1}}}}),
                                 dir.path());
  CHECK(alpha_one.code == cli::exit_config);

  const auto theorem = execute(with_job("certify", {{"theorem", "nope"}, {"resolution", 8}}), dir.path());
  CHECK(theorem.code == cli::exit_config);
  CHECK(theorem.diagnostics.find("certify.theorem") != std::string::npos);

  const auto descriptor = execute(with_job("certify", {{"theorem", "fundamental_open"},
                                                       {"alpha", 2},
                                                       {"resolution", 8},
                                                       {"function", {{"kind", "wobble"}}}}),
                                  dir.path());
  CHECK(descriptor.code == cli::exit_config);
  CHECK(descriptor.diagnostics.find("certify.function") != std::string::npos);

  json schema = with_job("sweep", {{"mode", "constants"}, {"alphas", {2}}});
  schema["schema"] = "infostab.run/0";
  CHECK(execute(schema, dir.path()).code == cli::exit_config);

  json job = with_job("dance", json::object());
  CHECK(execute(job, dir.path()).code == cli::exit_config);

  const json budget = {{"schema", cli::config_schema},
                       {"job", "residual"},
                       {"pair_budget", 10},
                       {"residual",
                        {{"equation", {{"kind", "sum_form_additive"}, {"n", 3}, {"m", 3}}},
                         {"grid", {{"kind", "simplex_pair"}, {"n", 3}, {"m", 3}, {"resolution", 12}}},
                         {"functions", {{"f", {{"kind", "xlogx"}, {"c", -1}}}}}}}};
  const auto over = execute(budget, dir.path());
  CHECK(over.code == cli::exit_config);
  CHECK(over.diagnostics.find("budget") != std::string::npos);
}

TEST_CASE("residual job honours the epsilon target and dumps defects") {
  Scratch dir;
  json body = {{"equation", {{"kind", "fundamental_parametric"}, {"alpha", 2}}},
               {"grid", {{"kind", "triangle"}, {"resolution", 8}}},
               {"functions", {{"f", {{"kind", "power_law"}, {"c", 1}, {"alpha", 3}}}}},
               {"epsilon_target", 1e-3}};
  cli::RunOptions options;
  options.dump_defects = true;
  const auto out = execute(with_job("residual", body), dir.path(), options);
  CHECK(out.code == cli::exit_violation);
  CHECK(out.report.at("residual").at("within_target") == false);
  const std::string csv = slurp(dir.path() / "defects.csv");
  CHECK(csv.rfind("x,y,defect\n", 0) == 0);
  CHECK(std::count(csv.begin(), csv.end(), '\n') == 1 + 21);

  body["functions"]["f"] = power_family(1, 1, 2);
  CHECK(execute(with_job("residual", body), dir.path()).code == cli::exit_ok);
}

TEST_CASE("measure job writes its summary") {
  Scratch dir;
  const json measure = {{"alpha", 2.0}, {"max_n", 4}, {"perturbations", {{{"level", 3}, {"height", 1e-3}, {"seed", 1}}}}};
  const auto out = execute(with_job("measure", {{"measure", measure}, {"resolution", 12}}), dir.path());
  CHECK(out.code == cli::exit_ok);
  CHECK(out.report.at("generating_defect").at("satisfied") == true);
  CHECK(out.report.at("certificates").size() == 3);
  std::istringstream csv(slurp(dir.path() / "summary.csv"));
  std::string line;
  std::getline(csv, line);
  CHECK(line == "n,distance,bound,satisfied");
}

TEST_CASE("reports are byte-identical across runs and job counts") {
  Scratch first, second;
  const json noisy = {{"kind", "sum"},
                      {"terms", {power_family(1, 1, 2), {{"kind", "noise"}, {"height", 1e-4}, {"seed", 3}}}}};
  const json config = with_job("certify", {{"theorem", "fundamental_open"},
                                           {"alpha", 2.0},
                                           {"resolution", 128},
                                           {"function", noisy}});
  cli::RunOptions serial;
  serial.jobs = 1;
  cli::RunOptions parallel;
  parallel.jobs = 8;
  REQUIRE(execute(config, first.path(), serial).code == cli::exit_ok);
  REQUIRE(execute(config, second.path(), parallel).code == cli::exit_ok);
  CHECK(slurp(first.path() / "report.json") == slurp(second.path() / "report.json"));
}

TEST_CASE("run_file reports unreadable and malformed configs") {
  Scratch dir;
  std::ostringstream err;
  CHECK(cli::run_file(dir.path() / "missing.json", {.out_dir = dir.path()}, err) == cli::exit_config);
  std::ofstream(dir.path() / "broken.json") << "{ not json";
  CHECK(cli::run_file(dir.path() / "broken.json", {.out_dir = dir.path()}, err) == cli::exit_config);
  CHECK(err.str().find("not valid JSON") != std::string::npos);
}
