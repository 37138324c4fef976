#include "infostab/engine.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <memory>
#include <string>
#include <thread>

#include "infostab/error.hpp"
#include "infostab/format.hpp"

namespace infostab {

namespace {

// Neumaier compensated accumulator.
struct CompensatedSum {
  double sum = 0.0;
  double carry = 0.0;

  void add(double x) {
    const double t = sum + x;
    if (std::abs(sum) >= std::abs(x)) {
      carry += (sum - t) + x;
    } else {
      carry += (x - t) + sum;
    }
    sum = t;
  }
  double value() const { return sum + carry; }
};

struct BlockResult {
  double sup = -1.0;
  std::vector<double> argmax;
  CompensatedSum total;
  std::vector<std::pair<std::vector<double>, double>> dump;
  std::exception_ptr failure;
};

std::string describe_point(std::span<const double> p) {
  std::string out = "(";
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (i) out += ", ";
    out += format_double(p[i]);
  }
  return out + ")";
}

void run_block(const PointSource& source, const DefectFunction& defect, std::uint64_t block,
               bool keep, BlockResult& result) {
  const std::uint64_t begin = block * engine_block_size;
  const std::uint64_t end = std::min(source.size, begin + engine_block_size);
  try {
    source.visit(begin, end, [&](std::uint64_t, std::span<const double> point) {
      const double d = defect(point);
      if (std::isnan(d)) {
        throw Error(ErrorKind::Domain, "defect is NaN at " + describe_point(point));
      }
      const double a = std::abs(d);
      if (a > result.sup) {
        result.sup = a;
        result.argmax.assign(point.begin(), point.end());
      }
      result.total.add(a);
      if (keep) result.dump.emplace_back(std::vector<double>(point.begin(), point.end()), d);
    });
  } catch (...) {
    result.failure = std::current_exception();
  }
}

}  // namespace

ResidualReport sweep(const PointSource& source, const DefectFunction& defect,
                     const EngineOptions& options, DefectSink* sink) {
  ResidualReport report;
  report.samples = source.size;
  if (source.size == 0) return report;

  const std::uint64_t blocks = (source.size + engine_block_size - 1) / engine_block_size;
  std::vector<BlockResult> results(blocks);
  const bool keep = sink != nullptr;
  const auto workers = static_cast<std::uint64_t>(std::max(1, options.jobs));

  if (workers == 1 || blocks == 1) {
    for (std::uint64_t b = 0; b < blocks; ++b) {
      run_block(source, defect, b, keep, results[b]);
      if (results[b].failure) break;
    }
  } else {
    std::atomic<std::uint64_t> next{0};
    std::atomic<bool> failed{false};
    auto work = [&] {
      while (!failed.load(std::memory_order_relaxed)) {
        const std::uint64_t b = next.fetch_add(1);
        if (b >= blocks) return;
        run_block(source, defect, b, keep, results[b]);
        if (results[b].failure) failed.store(true);
      }
    };
    // Blocks are claimed in increasing order, so every block below a failing
    // one has been claimed and finishes before the join.
    std::vector<std::thread> pool;
    const auto count = std::min(workers, blocks);
    for (std::uint64_t t = 1; t < count; ++t) pool.emplace_back(work);
    work();
    for (auto& t : pool) t.join();
  }

  CompensatedSum total;
  double best = -1.0;
  for (auto& r : results) {
    if (r.failure) std::rethrow_exception(r.failure);
    if (r.sup > best) {
      best = r.sup;
      report.argmax_point = r.argmax;
    }
    total.add(r.total.sum);
    total.add(r.total.carry);
    if (sink) {
      for (const auto& [point, d] : r.dump) sink->record(point, d);
    }
  }
  report.sup = std::max(best, 0.0);
  report.mean = total.value() / static_cast<double>(source.size);
  return report;
}

PointSource list_source(std::shared_ptr<const std::vector<double>> coords, std::size_t width) {
  PointSource source;
  source.size = width == 0 ? 0 : coords->size() / width;
  source.visit = [coords, width](std::uint64_t begin, std::uint64_t end, const auto& fn) {
    for (std::uint64_t i = begin; i < end; ++i) {
      fn(i, std::span<const double>(coords->data() + i * width, width));
    }
  };
  return source;
}

}  // namespace infostab
