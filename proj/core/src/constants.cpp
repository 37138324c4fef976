#include <cmath>
#include <string>

#include "infostab/certifiers.hpp"
#include "infostab/error.hpp"
#include "infostab/format.hpp"

namespace infostab {

double stability_constant_K(double alpha) {
  if (!std::isfinite(alpha)) throw Error(ErrorKind::Configuration, "alpha must be finite");
  if (alpha == 1.0) {
    throw Error(ErrorKind::UnsupportedParameter,
                "K(alpha) is unbounded as alpha -> 1; the stability method does not apply at alpha = 1");
  }
  if (alpha == 0.0) return zero_alpha_constant;
  const double outer = std::abs(std::expm1((1.0 - alpha) * std::log(2.0)));
  const double inner = std::abs(std::expm1(-alpha * std::log(2.0)));
  return (3.0 + 12.0 * std::exp2(alpha) + 32.0 * std::pow(3.0, alpha + 1.0) / inner) / outer;
}

double stability_constant_T(double alpha) {
  if (!(alpha > 0.0) || alpha == 1.0 || !std::isfinite(alpha)) {
    throw Error(ErrorKind::UnsupportedParameter,
                "T(alpha) is defined for 1 != alpha > 0, got alpha=" + format_double(alpha));
  }
  const double inner = std::abs(std::expm1(-alpha * std::log(2.0)));
  return 3.0 * std::exp2(alpha) + 8.0 * std::pow(3.0, alpha + 1.0) / inner;
}

double modified_constant_c(int n, double alpha) {
  if (n < 1) throw Error(ErrorKind::Configuration, "box bound n must be >= 1");
  return 2.0 + 7.0 * std::exp2(alpha) * std::pow(n, alpha) * stability_constant_K(alpha);
}

double modified_constant_d(int n, double alpha) {
  if (n < 1) throw Error(ErrorKind::Configuration, "box bound n must be >= 1");
  return 4.0 + 7.0 * std::exp2(alpha + 2.0) * std::pow(n, alpha) * stability_constant_K(alpha);
}

StabilityConstants stability_constants(double alpha, std::optional<int> n) {
  StabilityConstants out;
  out.alpha = alpha;
  out.n = n;
  if (alpha != 1.0) {
    out.K = stability_constant_K(alpha);
    if (n) {
      out.c_n = modified_constant_c(*n, alpha);
      out.d_n = modified_constant_d(*n, alpha);
    }
  }
  if (alpha > 0.0 && alpha != 1.0) out.T = stability_constant_T(alpha);
  return out;
}

}  // namespace infostab
