#pragma once

#include <nlohmann/json.hpp>

#include "infostab/models.hpp"

namespace infostab {

/// Builds a function from a {"kind": ..., params...} descriptor, the same shape
/// `describe()` emits. Unknown kinds or missing fields raise a configuration
/// error naming the field.
///
/// Besides the kinds `describe()` produces, scalar descriptors accept
/// {"kind": "sampled", "of": {...}, "resolution": R, "closed": bool} which
/// tabulates `of` on a unit grid, and {"kind": "alpha_entropy_generator", "alpha": a}.
ScalarFunction scalar_from_json(const nlohmann::json& descriptor);
BinaryFunction binary_from_json(const nlohmann::json& descriptor);
TernaryFunction ternary_from_json(const nlohmann::json& descriptor);

}  // namespace infostab
