#pragma once

#include <string>

namespace infostab {

/// Shortest round-trip decimal representation; identical across runs.
std::string format_double(double value);

}  // namespace infostab
