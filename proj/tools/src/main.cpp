#include <iostream>

#include "CLI11.hpp"
#include "infostab/cli/run.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Numerical stability certificates for entropy functional equations"};
  std::string config;
  infostab::cli::RunOptions options;
  std::string out_dir = ".";
  int jobs = 0;
  app.add_option("--config", config, "Run configuration (JSON)")->required();
  app.add_option("--out", out_dir, "Output directory for report.json and CSV files");
  app.add_option("--jobs", jobs, "Worker threads; overrides the config")->check(CLI::PositiveNumber);
  app.add_flag("--dump-defects", options.dump_defects, "Write per-point defects to defects.csv");
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : infostab::cli::exit_config;
  }
  options.out_dir = out_dir;
  if (jobs > 0) options.jobs = jobs;
  return infostab::cli::run_file(config, options, std::cerr);
}
