#pragma once

#include <memory>
#include <string>
#include <vector>

#include "infostab/certifiers.hpp"
#include "infostab/equations.hpp"
#include "infostab/error.hpp"

namespace infostab::detail {

inline void require_even_resolution(int resolution, const char* who) {
  if (resolution < 4 || resolution % 2 != 0) {
    throw Error(ErrorKind::InvalidResolution,
                std::string(who) + " needs an even resolution >= 4 so that 1/2 is a grid node, got " +
                    std::to_string(resolution));
  }
}

/// sup |f - g| over a list of abscissae.
inline ResidualReport scalar_distance(const ScalarFunction& f, const ScalarFunction& g,
                                      const std::vector<double>& xs, const EngineOptions& options) {
  auto coords = std::make_shared<const std::vector<double>>(xs);
  return sweep(list_source(coords, 1), [&](std::span<const double> p) { return f(p[0]) - g(p[0]); },
               options);
}

/// Applies an epsilon override when present and records it.
inline double effective_epsilon(double measured, const CertifyOptions& options,
                                StabilityCertificate& cert) {
  if (options.epsilon_override) {
    cert.epsilon_overridden = true;
    cert.notes.push_back("epsilon supplied by the caller instead of the measured grid sup");
    return *options.epsilon_override;
  }
  return measured;
}

inline void finish(StabilityCertificate& cert) {
  cert.satisfied = satisfies_bound(cert.distance, cert.bound);
}

inline nlohmann::json point_json(const std::vector<double>& p) { return nlohmann::json(p); }

}  // namespace infostab::detail
