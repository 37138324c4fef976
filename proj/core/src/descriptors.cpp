#include "infostab/descriptors.hpp"

#include <string>

#include "infostab/domains.hpp"
#include "infostab/error.hpp"

namespace infostab {

using nlohmann::json;

namespace {

[[noreturn]] void bad(const std::string& message) {
  throw Error(ErrorKind::Configuration, message);
}

const json& field(const json& d, const char* name) {
  if (!d.is_object() || !d.contains(name)) {
    bad(std::string("function descriptor is missing field '") + name + "'");
  }
  return d.at(name);
}

double number(const json& d, const char* name) {
  const json& v = field(d, name);
  if (!v.is_number()) bad(std::string("descriptor field '") + name + "' must be a number");
  return v.get<double>();
}

double number_or(const json& d, const char* name, double fallback) {
  return d.contains(name) ? number(d, name) : fallback;
}

std::uint64_t seed_of(const json& d) {
  if (!d.contains("seed")) return 0;
  const json& v = d.at("seed");
  if (!v.is_number_unsigned() && !(v.is_number_integer() && v.get<long long>() >= 0)) {
    bad("descriptor field 'seed' must be a nonnegative integer");
  }
  return v.get<std::uint64_t>();
}

std::string kind_of(const json& d) {
  const json& v = field(d, "kind");
  if (!v.is_string()) bad("descriptor field 'kind' must be a string");
  return v.get<std::string>();
}

std::vector<double> numbers(const json& d, const char* name) {
  const json& v = field(d, name);
  if (!v.is_array()) bad(std::string("descriptor field '") + name + "' must be an array");
  std::vector<double> out;
  for (const auto& e : v) {
    if (!e.is_number()) bad(std::string("descriptor field '") + name + "' must hold numbers");
    out.push_back(e.get<double>());
  }
  return out;
}

template <class T, class Parse>
std::vector<T> list_of(const json& d, Parse parse) {
  const json& v = field(d, "terms");
  if (!v.is_array() || v.empty()) bad("descriptor field 'terms' must be a nonempty array");
  std::vector<T> out;
  for (const auto& e : v) out.push_back(parse(e));
  return out;
}

}  // namespace

ScalarFunction scalar_from_json(const json& d) {
  const std::string kind = kind_of(d);
  if (kind == "power_family") {
    return scalar::power_family(number(d, "a"), number(d, "b"), number(d, "alpha"));
  }
  if (kind == "log_family") return scalar::log_family(number(d, "lambda"), number(d, "c"));
  if (kind == "shannon_s") return scalar::shannon_s();
  if (kind == "xlogx") return scalar::xlogx(number_or(d, "c", 1.0));
  if (kind == "power_law") return scalar::power_law(number(d, "c"), number(d, "alpha"));
  if (kind == "power_log") return scalar::power_log(number(d, "c"), number(d, "alpha"));
  if (kind == "constant") return scalar::constant(number(d, "c"));
  if (kind == "linear") return scalar::linear(number(d, "slope"));
  if (kind == "grid_sample") return scalar::grid_sample(numbers(d, "xs"), numbers(d, "ys"));
  if (kind == "sum") return scalar::sum(list_of<ScalarFunction>(d, scalar_from_json));
  if (kind == "scaled") return scalar::scaled(number(d, "factor"), scalar_from_json(field(d, "of")));
  if (kind == "scaled_bump") {
    return scalar::scaled_bump(number(d, "center"), number(d, "width"), number(d, "height"));
  }
  if (kind == "noise") return scalar::noise(number(d, "height"), seed_of(d));
  if (kind == "piecewise") {
    return scalar::piecewise(number(d, "at0"), scalar_from_json(field(d, "interior")),
                             number(d, "at1"));
  }
  if (kind == "alpha_entropy_generator") return alpha_entropy_generator(number(d, "alpha"));
  if (kind == "sampled") {
    const json& r = field(d, "resolution");
    if (!r.is_number_integer()) bad("descriptor field 'resolution' must be an integer");
    const bool closed = d.value("closed", true);
    return scalar::sampled(scalar_from_json(field(d, "of")),
                           sample_unit(r.get<int>(), closed ? Variant::Closed : Variant::Open));
  }
  bad("unknown scalar function kind '" + kind + "'");
}

BinaryFunction binary_from_json(const json& d) {
  const std::string kind = kind_of(d);
  if (kind == "affine") {
    return binary::affine(number_or(d, "a", 0.0), number_or(d, "b", 0.0), number_or(d, "c", 0.0));
  }
  if (kind == "product") return binary::product(number_or(d, "c", 1.0));
  if (kind == "composed_sum") return binary::composed_sum(scalar_from_json(field(d, "phi")));
  if (kind == "cocycle_of") return binary::cocycle_of(scalar_from_json(field(d, "phi")));
  if (kind == "homogeneous_lift") {
    return binary::homogeneous_lift(scalar_from_json(field(d, "f")), number(d, "alpha"));
  }
  if (kind == "noise") return binary::noise(number(d, "height"), seed_of(d));
  if (kind == "sum") return binary::sum(list_of<BinaryFunction>(d, binary_from_json));
  if (kind == "scaled") return binary::scaled(number(d, "factor"), binary_from_json(field(d, "of")));
  bad("unknown binary function kind '" + kind + "'");
}

TernaryFunction ternary_from_json(const json& d) {
  const std::string kind = kind_of(d);
  if (kind == "entropy_solution") return ternary::entropy_solution(number(d, "c"), number(d, "alpha"));
  if (kind == "phi_form") return ternary::phi_form(scalar_from_json(field(d, "phi")));
  if (kind == "modified_entropy_solution") {
    return ternary::modified_entropy_solution(number(d, "a"), number(d, "alpha"),
                                              scalar_from_json(field(d, "phi")));
  }
  if (kind == "coordinate") {
    const json& i = field(d, "index");
    if (!i.is_number_integer()) bad("descriptor field 'index' must be an integer");
    return ternary::coordinate(i.get<int>());
  }
  if (kind == "noise") return ternary::noise(number(d, "height"), seed_of(d));
  if (kind == "sum") return ternary::sum(list_of<TernaryFunction>(d, ternary_from_json));
  if (kind == "scaled") return ternary::scaled(number(d, "factor"), ternary_from_json(field(d, "of")));
  bad("unknown ternary function kind '" + kind + "'");
}

}  // namespace infostab
