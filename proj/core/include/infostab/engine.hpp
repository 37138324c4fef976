#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <span>
#include <vector>

namespace infostab {

/// Sup-norm summary of a defect sweep. `mean` is the mean absolute defect.
struct ResidualReport {
  double sup = 0.0;
  double mean = 0.0;
  std::vector<double> argmax_point;
  std::uint64_t samples = 0;
  int resolution = 0;
  std::optional<double> epsilon_target;

  bool within_target() const { return !epsilon_target || sup <= *epsilon_target; }
};

struct EngineOptions {
  int jobs = 1;
  /// Upper bound on (P,Q) pairs visited by the sum-form equations.
  std::uint64_t pair_budget = 10'000'000;
};

/// distance <= bound up to a relative slack of 1e-9 * (1 + bound).
inline bool satisfies_bound(double distance, double bound) {
  return distance <= bound + 1e-9 * (1.0 + bound);
}

/// Receives every evaluated point with its signed defect, in index order.
class DefectSink {
 public:
  virtual ~DefectSink() = default;
  virtual void record(std::span<const double> point, double defect) = 0;
};

/// A finite, indexable family of points. `visit` must call `fn` for each index
/// in [begin, end) in increasing order; the span is valid only during the call.
struct PointSource {
  std::uint64_t size = 0;
  std::function<void(std::uint64_t begin, std::uint64_t end,
                     const std::function<void(std::uint64_t, std::span<const double>)>& fn)>
      visit;
};

using DefectFunction = std::function<double(std::span<const double>)>;

/// Points per work unit. Blocks, not threads, fix the reduction order, so the
/// report is bit-identical for any number of jobs.
inline constexpr std::uint64_t engine_block_size = 2048;

/// Sup/mean of |defect| over every point of `source`. The argmax is the lowest
/// index attaining the sup. A NaN defect raises a domain error naming the
/// point; the first failure in index order is rethrown.
ResidualReport sweep(const PointSource& source, const DefectFunction& defect,
                     const EngineOptions& options, DefectSink* sink = nullptr);

/// Source over a materialized list of fixed-width points.
PointSource list_source(std::shared_ptr<const std::vector<double>> coords, std::size_t width);

}  // namespace infostab
