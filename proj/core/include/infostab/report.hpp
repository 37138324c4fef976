#pragma once

#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "infostab/certifiers.hpp"
#include "infostab/engine.hpp"

namespace infostab {

nlohmann::json to_json(const ResidualReport& report);
nlohmann::json to_json(const StabilityCertificate& certificate);
nlohmann::json to_json(const StabilityConstants& constants);
nlohmann::json to_json(const std::vector<BlowupSample>& probe);

/// Two-space indented dump with sorted keys and a trailing newline.
std::string render(const nlohmann::json& document);

}  // namespace infostab
