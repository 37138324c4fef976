#include "infostab/cli/run.hpp"

#include <cmath>
#include <fstream>
#include <functional>
#include <map>
#include <ostream>
#include <string>
#include <vector>

#include "infostab/certifiers.hpp"
#include "infostab/descriptors.hpp"
#include "infostab/equations.hpp"
#include "infostab/error.hpp"
#include "infostab/format.hpp"
#include "infostab/measures.hpp"
#include "infostab/report.hpp"

namespace infostab::cli {

using nlohmann::json;
namespace fs = std::filesystem;

namespace {

[[noreturn]] void bad_field(const std::string& path, const std::string& what) {
  throw Error(ErrorKind::Configuration, "config field '" + path + "' " + what);
}

/// Typed access to one JSON object, naming fields by their dotted path.
class Section {
 public:
  Section(const json& node, std::string path) : node_(node), path_(std::move(path)) {
    if (!node_.is_object()) bad_field(path_.empty() ? "<root>" : path_, "must be an object");
  }

  bool has(const char* name) const { return node_.contains(name); }
  std::string at(const char* name) const { return path_.empty() ? name : path_ + "." + name; }

  const json& raw(const char* name) const {
    if (!has(name)) bad_field(at(name), "is required");
    return node_.at(name);
  }
  Section child(const char* name) const { return Section(raw(name), at(name)); }

  double number(const char* name) const {
    const json& v = raw(name);
    if (!v.is_number()) bad_field(at(name), "must be a number");
    return v.get<double>();
  }
  double number(const char* name, double fallback) const { return has(name) ? number(name) : fallback; }

  int integer(const char* name) const {
    const json& v = raw(name);
    if (!v.is_number_integer()) bad_field(at(name), "must be an integer");
    return v.get<int>();
  }
  int integer(const char* name, int fallback) const { return has(name) ? integer(name) : fallback; }

  bool flag(const char* name, bool fallback) const {
    if (!has(name)) return fallback;
    const json& v = raw(name);
    if (!v.is_boolean()) bad_field(at(name), "must be true or false");
    return v.get<bool>();
  }

  std::string text(const char* name) const {
    const json& v = raw(name);
    if (!v.is_string()) bad_field(at(name), "must be a string");
    return v.get<std::string>();
  }
  std::string text(const char* name, const std::string& fallback) const {
    return has(name) ? text(name) : fallback;
  }

  std::vector<double> numbers(const char* name) const {
    const json& v = raw(name);
    if (!v.is_array()) bad_field(at(name), "must be an array of numbers");
    std::vector<double> out;
    for (const auto& e : v) {
      if (!e.is_number()) bad_field(at(name), "must be an array of numbers");
      out.push_back(e.get<double>());
    }
    return out;
  }

  template <class T, class Parse>
  T parsed(const char* name, Parse parse) const {
    try {
      return parse(raw(name));
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::Configuration) throw;
      throw Error(ErrorKind::Configuration, "config field '" + at(name) + "': " + e.what());
    }
  }

 private:
  const json& node_;
  std::string path_;
};

Variant parse_variant(const Section& s) {
  const std::string v = s.text("variant", "open");
  if (v == "open") return Variant::Open;
  if (v == "closed") return Variant::Closed;
  bad_field(s.at("variant"), "must be \"open\" or \"closed\"");
}

GridDomain parse_grid(const Section& s, std::uint64_t budget) {
  const std::string kind = s.text("kind");
  const int r = s.integer("resolution");
  if (kind == "unit") return UnitGrid(r, parse_variant(s));
  if (kind == "unit_product") return UnitProductGrid{UnitGrid(r, parse_variant(s))};
  if (kind == "triangle") return TriangleGrid(r, parse_variant(s));
  if (kind == "simplex") return SimplexGrid(s.integer("n"), r, parse_variant(s), budget);
  if (kind == "simplex_pair") {
    const Variant v = parse_variant(s);
    return SimplexPairGrid{SimplexGrid(s.integer("n"), r, v, budget),
                           SimplexGrid(s.integer("m"), r, v, budget)};
  }
  if (kind == "cone") return ConeGrid(r, s.number("bound", 1.0));
  if (kind == "quadrant") return QuadrantGrid(r, s.number("bound", 1.0));
  bad_field(s.at("kind"), "names an unknown grid '" + kind + "'");
}

EquationKind parse_equation(const Section& s) {
  const std::string kind = s.text("kind");
  using namespace equation;
  if (kind == "fundamental_parametric") return FundamentalParametric{s.number("alpha")};
  if (kind == "sum_form_additive") return SumFormAdditive{s.integer("n"), s.integer("m")};
  if (kind == "sum_form_alpha") return SumFormAlpha{s.number("alpha"), s.integer("n"), s.integer("m")};
  if (kind == "sum_form_multiplicative") return SumFormMultiplicative{s.integer("n"), s.integer("m")};
  if (kind == "sum_form_mixed") {
    return SumFormMixed{s.number("alpha"), s.number("beta"), s.integer("n"), s.integer("m")};
  }
  if (kind == "sum_form_vanishing") return SumFormVanishing{s.integer("n")};
  if (kind == "cocycle") return Cocycle{};
  if (kind == "entropy_eq") return EntropyEq{};
  if (kind == "modified_entropy") return ModifiedEntropy{s.number("alpha")};
  if (kind == "cauchy_additive") return CauchyAdditive{};
  if (kind == "multiplicative") return Multiplicative{};
  if (kind == "logarithmic") return Logarithmic{};
  if (kind == "phi_equation") return PhiEquation{};
  if (kind == "daroczy_identity") return DaroczyIdentity{};
  if (kind == "info_function_form") return InfoFunctionForm{};
  bad_field(s.at("kind"), "names an unknown equation '" + kind + "'");
}

EquationFunctions parse_functions(const Section& s) {
  EquationFunctions fns;
  if (s.has("f")) fns.f = s.parsed<ScalarFunction>("f", scalar_from_json);
  if (s.has("phi")) fns.phi = s.parsed<ScalarFunction>("phi", scalar_from_json);
  if (s.has("binary")) fns.binary = s.parsed<BinaryFunction>("binary", binary_from_json);
  if (s.has("ternary")) fns.ternary = s.parsed<TernaryFunction>("ternary", ternary_from_json);
  return fns;
}

Interval parse_interval(const Section& s, const char* name) {
  const std::vector<double> v = s.numbers(name);
  if (v.size() != 2) bad_field(s.at(name), "must be [lo, hi]");
  return {v[0], v[1]};
}

std::vector<double> default_margins() {
  std::vector<double> out;
  for (int k = 3; k <= 9; ++k) out.push_back(std::ldexp(1.0, -k));
  return out;
}

struct Context {
  CertifyOptions certify;
  RunOptions run;
  json report = json::object();
  int exit_code = exit_ok;

  void violation() { exit_code = exit_violation; }
  fs::path file(const char* name) const { return run.out_dir / name; }
};

std::ofstream open_output(const fs::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorKind::Configuration, "cannot write '" + path.string() + "'");
  return out;
}

void dump_fundamental(Context& ctx, double alpha, const ScalarFunction& f, int resolution,
                      Variant variant) {
  if (!ctx.run.dump_defects) return;
  std::ofstream out = open_output(ctx.file("defects.csv"));
  dump_defects(out, equation::FundamentalParametric{alpha}, {.f = f},
               TriangleGrid(resolution, variant), ctx.certify.engine);
  ctx.report["defects_file"] = "defects.csv";
}

// -- jobs ------------------------------------------------------------------

void residual_job(const Section& s, Context& ctx) {
  const EquationKind kind = parse_equation(s.child("equation"));
  const GridDomain grid = parse_grid(s.child("grid"), ctx.certify.engine.pair_budget);
  const EquationFunctions fns = parse_functions(s.child("functions"));
  ResidualReport report;
  if (ctx.run.dump_defects) {
    std::ofstream out = open_output(ctx.file("defects.csv"));
    report = dump_defects(out, kind, fns, grid, ctx.certify.engine);
    ctx.report["defects_file"] = "defects.csv";
  } else {
    report = residual(kind, fns, grid, ctx.certify.engine);
  }
  if (s.has("epsilon_target")) report.epsilon_target = s.number("epsilon_target");
  ctx.report["equation"] = equation_name(kind);
  ctx.report["residual"] = to_json(report);
  if (!report.within_target()) ctx.violation();
}

StabilityCertificate certify_one(const Section& s, Context& ctx) {
  const std::string theorem = s.text("theorem");
  const int r = s.integer("resolution");
  CertifyOptions options = ctx.certify;
  if (s.has("epsilon_override")) options.epsilon_override = s.number("epsilon_override");
  auto scalar_fn = [&] { return s.parsed<ScalarFunction>("function", scalar_from_json); };
  auto ternary_fn = [&] { return s.parsed<TernaryFunction>("function", ternary_from_json); };

  if (theorem == theorem_id::fundamental_open || theorem == theorem_id::fundamental_closed) {
    const ScalarFunction f = scalar_fn();
    const Alpha alpha(s.number("alpha"));
    const bool closed = theorem == theorem_id::fundamental_closed;
    auto cert = closed ? certify_fundamental_closed(f, alpha, r, options)
                       : certify_fundamental_open(f, alpha, r, options);
    dump_fundamental(ctx, alpha.value(), f, r, closed ? Variant::Closed : Variant::Open);
    return cert;
  }
  if (theorem == theorem_id::hyperstable) {
    const ScalarFunction f = scalar_fn();
    const Alpha alpha(s.number("alpha"));
    const bool closed = s.flag("closed", false);
    auto cert = certify_hyperstable(f, alpha, r, closed, options);
    dump_fundamental(ctx, alpha.value(), f, r, closed ? Variant::Closed : Variant::Open);
    return cert;
  }
  if (theorem == theorem_id::entropy_equation) {
    EntropyEquationOptions settings;
    settings.box = s.number("box", 1.0);
    if (s.has("scales")) settings.scales = s.numbers("scales");
    return certify_entropy_equation(ternary_fn(), Alpha(s.number("alpha")), r, settings, options);
  }
  if (theorem == theorem_id::associativity) {
    return certify_associativity(s.parsed<BinaryFunction>("A", binary_from_json),
                                 s.parsed<BinaryFunction>("B", binary_from_json),
                                 parse_interval(s, "U"), parse_interval(s, "V"),
                                 parse_interval(s, "W"), r, options);
  }
  if (theorem == theorem_id::modified_entropy) {
    return certify_modified_entropy(ternary_fn(), Alpha(s.number("alpha")), s.integer("box", 1), r,
                                    options);
  }
  if (theorem == theorem_id::sum_form) {
    return certify_sum_form(scalar_fn(), s.integer("n"), r, options);
  }
  if (theorem == theorem_id::sum_form_multiplicative) {
    return certify_sum_form_multiplicative(scalar_fn(), s.integer("n"), s.integer("m"), r, options);
  }
  if (theorem == theorem_id::kocsis_maksa) {
    return certify_kocsis_maksa(scalar_fn(), s.number("alpha"), s.number("beta"), s.integer("n"),
                                s.integer("m"), r, options);
  }
  bad_field(s.at("theorem"), "names an unknown theorem '" + theorem + "'");
}

void certify_job(const Section& s, Context& ctx) {
  if (s.text("theorem") == theorem_id::measure_sequence) {
    const InformationMeasure measure = s.parsed<InformationMeasure>("measure", measure_from_json);
    const auto certs = certify_measure_sequence(measure, s.integer("max_n", measure.max_n()),
                                                s.integer("resolution"), ctx.certify);
    json list = json::array();
    for (const auto& c : certs) {
      list.push_back(to_json(c));
      if (!c.satisfied) ctx.violation();
    }
    ctx.report["certificates"] = list;
    return;
  }
  const StabilityCertificate cert = certify_one(s, ctx);
  ctx.report["certificates"] = json::array({to_json(cert)});
  if (!cert.satisfied) ctx.violation();
}

void measure_job(const Section& s, Context& ctx) {
  const InformationMeasure measure = s.parsed<InformationMeasure>("measure", measure_from_json);
  const int r = s.integer("resolution");
  const int top = s.integer("max_n", measure.max_n());
  const EngineOptions& engine = ctx.certify.engine;

  json checks = json::object();
  checks["normalization_gap"] = check_normalization(measure);
  if (top >= 3) checks["semisymmetry"] = to_json(check_semisymmetry3(measure, r, engine));
  json recursion = json::array();
  for (int n = 3; n <= top; ++n) {
    recursion.push_back({{"n", n}, {"residual", to_json(check_recursivity(measure, n, r, engine))}});
  }
  checks["recursivity"] = recursion;
  ctx.report["measure"] = describe(measure);
  ctx.report["checks"] = checks;

  const GeneratingDefect gen = derive_generating_defect(measure, r, engine);
  ctx.report["generating_defect"] = {{"fundamental", to_json(gen.fundamental)},
                                     {"semisymmetry", gen.semisymmetry.sup},
                                     {"recursivity", gen.recursivity.sup},
                                     {"bound", gen.bound},
                                     {"satisfied", gen.satisfied},
                                     {"generator", gen.generator.describe()}};
  if (!gen.satisfied) ctx.violation();

  if (s.flag("certify", true) && Alpha(measure.alpha()).regime() != Alpha::Regime::One) {
    const auto certs = certify_measure_sequence(measure, top, r, ctx.certify);
    json list = json::array();
    std::ofstream summary = open_output(ctx.file("summary.csv"));
    summary << "n,distance,bound,satisfied\n";
    for (const auto& c : certs) {
      list.push_back(to_json(c));
      summary << static_cast<int>(c.parameters.at("n")) << ',' << format_double(c.distance) << ','
              << format_double(c.bound) << ',' << (c.satisfied ? "true" : "false") << '\n';
      if (!c.satisfied) ctx.violation();
    }
    ctx.report["certificates"] = list;
    ctx.report["summary_file"] = "summary.csv";
  }
}

void constants_sweep(const std::vector<double>& alphas, Context& ctx) {
  std::ofstream summary = open_output(ctx.file("summary.csv"));
  summary << "alpha,K,T,relation_gap\n";
  json rows = json::array();
  for (double a : alphas) {
    const StabilityConstants c = stability_constants(a);
    rows.push_back(to_json(c));
    summary << format_double(a) << ',' << (c.K ? format_double(*c.K) : "") << ','
            << (c.T ? format_double(*c.T) : "") << ',';
    if (c.K && c.T) {
      // K |2^(1-a) - 1| = 4T + 3 for 1 != a > 0.
      const double lhs = *c.K * std::abs(std::expm1((1.0 - a) * std::log(2.0)));
      summary << format_double(lhs - (4.0 * *c.T + 3.0));
    }
    summary << '\n';
  }
  ctx.report["constants"] = rows;
}

void sweep_job(const Section& s, Context& ctx) {
  const std::vector<double> alphas = s.numbers("alphas");
  if (alphas.empty()) bad_field(s.at("alphas"), "must not be empty");
  const std::string mode = s.text("mode", "certify");
  ctx.report["mode"] = mode;
  ctx.report["summary_file"] = "summary.csv";
  if (mode != "residual") {
    for (double a : alphas) {
      if (a == 1.0) bad_field(s.at("alphas"), "contains alpha=1, which only residual sweeps accept");
    }
  }
  if (mode == "constants") {
    constants_sweep(alphas, ctx);
    return;
  }
  if (mode != "certify" && mode != "residual") bad_field(s.at("mode"), "must be certify, residual or constants");

  const Section family = s.child("family");
  const double fa = family.number("a");
  const double fb = family.number("b");
  std::optional<ScalarFunction> perturbation;
  if (family.has("perturbation")) {
    perturbation = family.parsed<ScalarFunction>("perturbation", scalar_from_json);
  }
  const int r = s.integer("resolution");
  const bool closed = s.flag("closed", false);
  auto member = [&](double a) {
    ScalarFunction f = scalar::power_family(fa, fb, a);
    return perturbation ? scalar::sum({f, *perturbation}) : f;
  };

  std::ofstream summary = open_output(ctx.file("summary.csv"));
  json rows = json::array();
  if (mode == "residual") {
    summary << "alpha,regime,epsilon,mean\n";
    for (double a : alphas) {
      const ResidualReport rep =
          residual(equation::FundamentalParametric{a}, {.f = member(a)},
                   TriangleGrid(r, closed ? Variant::Closed : Variant::Open), ctx.certify.engine);
      const Alpha alpha(a);
      rows.push_back({{"alpha", a}, {"regime", to_string(alpha.regime())}, {"residual", to_json(rep)}});
      summary << format_double(a) << ',' << to_string(alpha.regime()) << ',' << format_double(rep.sup)
              << ',' << format_double(rep.mean) << '\n';
    }
    ctx.report["residuals"] = rows;
    return;
  }

  summary << "alpha,regime,epsilon,bound,distance,satisfied\n";
  for (double a : alphas) {
    const Alpha alpha(a);
    const ScalarFunction f = member(a);
    json row;
    StabilityCertificate cert;
    if (alpha.regime() == Alpha::Regime::Negative) {
      cert = certify_hyperstable(f, alpha, r, closed, ctx.certify);
      row = to_json(cert);
      if (!cert.satisfied) {
        row["blowup_probe"] = to_json(hyperstability_blowup_probe(f, alpha, default_margins(), 0,
                                                                  ctx.certify.engine));
      }
    } else {
      cert = closed ? certify_fundamental_closed(f, alpha, r, ctx.certify)
                    : certify_fundamental_open(f, alpha, r, ctx.certify);
      row = to_json(cert);
    }
    if (!cert.satisfied) ctx.violation();
    rows.push_back(row);
    summary << format_double(a) << ',' << to_string(alpha.regime()) << ','
            << format_double(cert.epsilons.at("epsilon")) << ',' << format_double(cert.bound) << ','
            << format_double(cert.distance) << ',' << (cert.satisfied ? "true" : "false") << '\n';
  }
  ctx.report["certificates"] = rows;
}

void blowup_job(const Section& s, Context& ctx) {
  const ScalarFunction f = s.parsed<ScalarFunction>("function", scalar_from_json);
  const Alpha alpha(s.number("alpha"));
  const std::vector<double> margins = s.has("margins") ? s.numbers("margins") : default_margins();
  const auto probe =
      hyperstability_blowup_probe(f, alpha, margins, s.integer("resolution", 0), ctx.certify.engine);
  ctx.report["probe"] = to_json(probe);
  const int r = probe.front().report.resolution;
  ctx.report["probe_resolution"] = r;
  std::ofstream summary = open_output(ctx.file("summary.csv"));
  summary << "margin,sup,mean,samples\n";
  for (const auto& p : probe) {
    summary << format_double(p.margin) << ',' << format_double(p.report.sup) << ','
            << format_double(p.report.mean) << ',' << p.report.samples << '\n';
  }
  ctx.report["summary_file"] = "summary.csv";
  if (probe.front().report.sup > 0.0) {
    ctx.report["growth_factor"] = probe.back().report.sup / probe.front().report.sup;
  }
}

}  // namespace

int run(const json& config, const RunOptions& options, std::ostream& err) {
  try {
    const Section root(config, "");
    const std::string schema = root.text("schema");
    if (schema != config_schema) {
      bad_field("schema", "must be \"" + std::string(config_schema) + "\", got \"" + schema + "\"");
    }
    Context ctx;
    ctx.run = options;
    ctx.certify.engine.jobs = options.jobs.value_or(root.integer("jobs", 1));
    if (ctx.certify.engine.jobs < 1) bad_field("jobs", "must be >= 1");
    if (root.has("pair_budget")) {
      const json& v = root.raw("pair_budget");
      if (!v.is_number_unsigned()) bad_field("pair_budget", "must be a positive integer");
      ctx.certify.engine.pair_budget = v.get<std::uint64_t>();
    }
    const std::string job = root.text("job");
    std::error_code ec;
    fs::create_directories(options.out_dir, ec);
    if (ec) throw Error(ErrorKind::Configuration, "cannot create output directory '" + options.out_dir.string() + "'");

    ctx.report["schema"] = report_schema;
    ctx.report["job"] = job;
    const Section body = root.child(job.c_str());
    if (job == "residual") {
      residual_job(body, ctx);
    } else if (job == "certify") {
      certify_job(body, ctx);
    } else if (job == "measure") {
      measure_job(body, ctx);
    } else if (job == "sweep") {
      sweep_job(body, ctx);
    } else if (job == "blowup") {
      blowup_job(body, ctx);
    } else {
      bad_field("job", "must be one of residual, certify, measure, sweep, blowup");
    }
    ctx.report["status"] = ctx.exit_code == exit_ok ? "ok" : "violation";
    std::ofstream out = open_output(ctx.file("report.json"));
    out << render(ctx.report);
    return ctx.exit_code;
  } catch (const Error& e) {
    err << "infostab: " << to_string(e.kind()) << ": " << e.what() << '\n';
  } catch (const json::exception& e) {
    err << "infostab: malformed config: " << e.what() << '\n';
  }
  return exit_config;
}

int run_file(const fs::path& config_path, const RunOptions& options, std::ostream& err) {
  std::ifstream in(config_path);
  if (!in) {
    err << "infostab: cannot read config '" << config_path.string() << "'\n";
    return exit_config;
  }
  json config;
  try {
    config = json::parse(in);
  } catch (const json::parse_error& e) {
    err << "infostab: config '" << config_path.string() << "' is not valid JSON: " << e.what() << '\n';
    return exit_config;
  }
  return run(config, options, err);
}

}  // namespace infostab::cli
