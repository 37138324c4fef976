#include "infostab/report.hpp"

namespace infostab {

using nlohmann::json;

json to_json(const ResidualReport& report) {
  json out = {{"sup", report.sup},
              {"mean", report.mean},
              {"argmax", report.argmax_point},
              {"samples", report.samples},
              {"resolution", report.resolution}};
  if (report.epsilon_target) {
    out["epsilon_target"] = *report.epsilon_target;
    out["within_target"] = report.within_target();
  }
  return out;
}

json to_json(const StabilityCertificate& certificate) {
  return {{"theorem", certificate.theorem},
          {"alpha", certificate.alpha},
          {"resolution", certificate.resolution},
          {"candidate", certificate.candidate},
          {"parameters", certificate.parameters},
          {"epsilons", certificate.epsilons},
          {"constants", certificate.constants},
          {"distance", certificate.distance},
          {"bound", certificate.bound},
          {"satisfied", certificate.satisfied},
          {"epsilon_overridden", certificate.epsilon_overridden},
          {"trace", certificate.trace},
          {"notes", certificate.notes}};
}

json to_json(const StabilityConstants& constants) {
  json out = {{"alpha", constants.alpha}};
  if (constants.K) out["K"] = *constants.K;
  if (constants.T) out["T"] = *constants.T;
  if (constants.n) out["n"] = *constants.n;
  if (constants.c_n) out["c_n"] = *constants.c_n;
  if (constants.d_n) out["d_n"] = *constants.d_n;
  return out;
}

json to_json(const std::vector<BlowupSample>& probe) {
  json out = json::array();
  for (const auto& sample : probe) {
    out.push_back({{"margin", sample.margin}, {"residual", to_json(sample.report)}});
  }
  return out;
}

std::string render(const json& document) { return document.dump(2) + "\n"; }

}  // namespace infostab
