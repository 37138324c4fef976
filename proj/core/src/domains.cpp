#include "infostab/domains.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <numeric>
#include <ostream>
#include <random>
#include <string>

#include "infostab/error.hpp"
#include "infostab/format.hpp"

namespace infostab {

std::string format_double(double value) {
  char buffer[64];
  auto [end, ec] = std::to_chars(buffer, buffer + sizeof buffer, value);
  if (ec != std::errc{}) return "nan";
  return std::string(buffer, end);
}

double pow_convention(double x, double alpha) {
  if (!(x >= 0.0)) {
    throw Error(ErrorKind::Domain, "pow_convention: negative base " + format_double(x));
  }
  if (x == 0.0) return 0.0;
  return std::pow(x, alpha);
}

double xlog2_convention(double x) {
  if (!(x >= 0.0)) {
    throw Error(ErrorKind::Domain, "xlog2_convention: negative argument " + format_double(x));
  }
  if (x == 0.0) return 0.0;
  return x * std::log2(x);
}

std::uint64_t binomial(std::uint64_t n, std::uint64_t k) noexcept {
  if (k > n) return 0;
  k = std::min(k, n - k);
  std::uint64_t result = 1;
  for (std::uint64_t i = 1; i <= k; ++i) {
    // result * (n-k+i) is divisible by i; cancel the gcd first to stay exact.
    const std::uint64_t g = std::gcd(result, i);
    const std::uint64_t factor = (n - k + i) / (i / g);
    if (__builtin_mul_overflow(result / g, factor, &result)) return UINT64_MAX;
  }
  return result;
}

std::uint64_t simplex_point_count(int n, int resolution, Variant variant) noexcept {
  if (n < 1 || resolution < 1) return 0;
  const auto total = static_cast<std::uint64_t>(resolution) +
                     (variant == Variant::Closed ? static_cast<std::uint64_t>(n) : 0);
  return binomial(total - 1, static_cast<std::uint64_t>(n - 1));
}

// ---------------------------------------------------------------------------

UnitGrid::UnitGrid(int resolution, Variant variant) : resolution_(resolution), variant_(variant) {
  if (resolution < 2) {
    throw Error(ErrorKind::InvalidResolution,
                "unit grid needs resolution >= 2, got " + std::to_string(resolution));
  }
  const int first = variant == Variant::Closed ? 0 : 1;
  const int last = variant == Variant::Closed ? resolution : resolution - 1;
  points_.reserve(static_cast<std::size_t>(last - first + 1));
  for (int k = first; k <= last; ++k) {
    points_.push_back(static_cast<double>(k) / resolution);
  }
}

std::vector<double> sample_unit(int resolution, Variant variant) {
  return UnitGrid(resolution, variant).points();
}

TriangleGrid::TriangleGrid(int resolution, Variant variant)
    : resolution_(resolution), variant_(variant) {
  const int minimum = variant == Variant::Open ? 3 : 2;
  if (resolution < minimum) {
    throw Error(ErrorKind::InvalidResolution,
                "triangle grid needs resolution >= " + std::to_string(minimum) + ", got " +
                    std::to_string(resolution));
  }
  const double r = resolution;
  if (variant == Variant::Open) {
    for (int i = 1; i <= resolution - 2; ++i) {
      for (int j = 1; i + j <= resolution - 1; ++j) {
        points_.push_back({i / r, j / r});
      }
    }
  } else {
    for (int i = 0; i <= resolution - 1; ++i) {
      for (int j = 0; j <= resolution - 1 && i + j <= resolution; ++j) {
        points_.push_back({i / r, j / r});
      }
    }
  }
}

std::vector<TriangleGrid::Point> sample_triangle(int resolution, Variant variant) {
  return TriangleGrid(resolution, variant).points();
}

// ---------------------------------------------------------------------------

SimplexGrid::SimplexGrid(int n, int resolution, Variant variant, std::uint64_t max_points)
    : n_(n), resolution_(resolution), variant_(variant) {
  if (n < 2) {
    throw Error(ErrorKind::Configuration, "simplex dimension must be >= 2, got " + std::to_string(n));
  }
  if (variant == Variant::Open && resolution < n) {
    throw Error(ErrorKind::InvalidResolution,
                "open simplex of dimension " + std::to_string(n) + " needs resolution >= " +
                    std::to_string(n) + ", got " + std::to_string(resolution));
  }
  if (resolution < 1) {
    throw Error(ErrorKind::InvalidResolution,
                "simplex resolution must be >= 1, got " + std::to_string(resolution));
  }
  total_ = resolution + (variant == Variant::Closed ? n : 0);
  size_ = simplex_point_count(n, resolution, variant);
  if (size_ > max_points) {
    throw Error(ErrorKind::Budget, "simplex grid (n=" + std::to_string(n) +
                                       ", R=" + std::to_string(resolution) + ") has " +
                                       std::to_string(size_) + " points, above the cap of " +
                                       std::to_string(max_points));
  }
}

void SimplexGrid::unrank(std::uint64_t index, std::span<int> parts) const {
  int remaining = total_;
  for (int i = 0; i + 1 < n_; ++i) {
    const int tail_parts = n_ - i - 1;
    for (int v = 1; v <= remaining - tail_parts; ++v) {
      const auto count = binomial(static_cast<std::uint64_t>(remaining - v - 1),
                                  static_cast<std::uint64_t>(tail_parts - 1));
      if (index < count) {
        parts[static_cast<std::size_t>(i)] = v;
        remaining -= v;
        break;
      }
      index -= count;
    }
  }
  parts[static_cast<std::size_t>(n_ - 1)] = remaining;
}

bool SimplexGrid::advance(std::span<int> parts) const {
  int tail_sum = parts[static_cast<std::size_t>(n_ - 1)];
  for (int i = n_ - 2; i >= 0; --i) {
    const int tail_parts = n_ - 1 - i;
    if (tail_sum > tail_parts) {
      ++parts[static_cast<std::size_t>(i)];
      for (int k = i + 1; k < n_ - 1; ++k) parts[static_cast<std::size_t>(k)] = 1;
      parts[static_cast<std::size_t>(n_ - 1)] = tail_sum - 1 - (n_ - 2 - i);
      return true;
    }
    tail_sum += parts[static_cast<std::size_t>(i)];
  }
  return false;
}

void SimplexGrid::scale(std::span<const int> parts, std::span<double> out) const {
  const int offset = variant_ == Variant::Closed ? 1 : 0;
  const double r = resolution_;
  for (std::size_t i = 0; i < parts.size(); ++i) out[i] = (parts[i] - offset) / r;
}

void SimplexGrid::point(std::uint64_t index, std::span<double> out) const {
  if (index >= size_) throw Error(ErrorKind::Internal, "simplex index out of range");
  std::vector<int> parts(static_cast<std::size_t>(n_));
  unrank(index, parts);
  scale(parts, out);
}

std::vector<double> SimplexGrid::point(std::uint64_t index) const {
  std::vector<double> out(static_cast<std::size_t>(n_));
  point(index, out);
  return out;
}

void SimplexGrid::for_each(
    std::uint64_t begin, std::uint64_t end,
    const std::function<void(std::uint64_t, std::span<const double>)>& fn) const {
  end = std::min(end, size_);
  if (begin >= end) return;
  std::vector<int> parts(static_cast<std::size_t>(n_));
  std::vector<double> coords(static_cast<std::size_t>(n_));
  unrank(begin, parts);
  for (std::uint64_t index = begin; index < end; ++index) {
    scale(parts, coords);
    fn(index, coords);
    if (index + 1 < end && !advance(parts)) {
      throw Error(ErrorKind::Internal, "simplex enumeration ended early");
    }
  }
}

std::vector<double> SimplexGrid::materialize() const {
  std::vector<double> all;
  all.reserve(static_cast<std::size_t>(size_) * static_cast<std::size_t>(n_));
  for_each(0, size_, [&](std::uint64_t, std::span<const double> p) {
    all.insert(all.end(), p.begin(), p.end());
  });
  return all;
}

std::vector<std::vector<double>> sample_simplex(int n, int resolution, Variant variant) {
  const SimplexGrid grid(n, resolution, variant);
  std::vector<std::vector<double>> points;
  points.reserve(static_cast<std::size_t>(grid.size()));
  grid.for_each(0, grid.size(), [&](std::uint64_t, std::span<const double> p) {
    points.emplace_back(p.begin(), p.end());
  });
  return points;
}

// ---------------------------------------------------------------------------

ConeGrid::ConeGrid(int resolution, double bound) : resolution_(resolution), bound_(bound) {
  if (resolution < 1) {
    throw Error(ErrorKind::InvalidResolution,
                "cone grid needs resolution >= 1, got " + std::to_string(resolution));
  }
  if (!(bound > 0.0) || !std::isfinite(bound)) {
    throw Error(ErrorKind::Configuration, "cone grid bound must be positive and finite");
  }
}

std::uint64_t ConeGrid::size() const noexcept {
  const auto r = static_cast<std::uint64_t>(resolution_);
  return r * r * r;
}

ConeGrid::Point ConeGrid::point(std::uint64_t index) const {
  const auto r = static_cast<std::uint64_t>(resolution_);
  const auto i = index / (r * r);
  const auto j = (index / r) % r;
  const auto k = index % r;
  const double rr = resolution_;
  return {static_cast<double>(i + 1) * bound_ / rr, static_cast<double>(j + 1) * bound_ / rr,
          static_cast<double>(k + 1) * bound_ / rr};
}

QuadrantGrid::QuadrantGrid(int resolution, double bound) : resolution_(resolution), bound_(bound) {
  if (resolution < 1) {
    throw Error(ErrorKind::InvalidResolution,
                "quadrant grid needs resolution >= 1, got " + std::to_string(resolution));
  }
  if (!(bound > 0.0) || !std::isfinite(bound)) {
    throw Error(ErrorKind::Configuration, "quadrant grid bound must be positive and finite");
  }
}

std::uint64_t QuadrantGrid::size() const noexcept {
  const auto r = static_cast<std::uint64_t>(resolution_);
  return r * r;
}

QuadrantGrid::Point QuadrantGrid::point(std::uint64_t index) const {
  const auto r = static_cast<std::uint64_t>(resolution_);
  const double rr = resolution_;
  return {static_cast<double>(index / r + 1) * bound_ / rr,
          static_cast<double>(index % r + 1) * bound_ / rr};
}

// ---------------------------------------------------------------------------

double unit_from_bits(std::uint64_t bits) noexcept {
  return static_cast<double>(bits >> 11) * 0x1.0p-53;
}

std::vector<std::vector<double>> sample_simplex_random(int n, std::size_t count,
                                                       std::uint64_t seed) {
  if (n < 2) throw Error(ErrorKind::Configuration, "simplex dimension must be >= 2");
  std::mt19937_64 engine(seed);
  std::vector<std::vector<double>> points;
  points.reserve(count);
  std::vector<double> cuts(static_cast<std::size_t>(n + 1));
  while (points.size() < count) {
    cuts.front() = 0.0;
    cuts.back() = 1.0;
    for (int i = 1; i < n; ++i) cuts[static_cast<std::size_t>(i)] = unit_from_bits(engine());
    std::sort(cuts.begin() + 1, cuts.end() - 1);
    std::vector<double> p(static_cast<std::size_t>(n));
    bool interior = true;
    for (std::size_t i = 0; i < p.size(); ++i) {
      p[i] = cuts[i + 1] - cuts[i];
      interior = interior && p[i] > 0.0;
    }
    if (interior) points.push_back(std::move(p));
  }
  return points;
}

// ---------------------------------------------------------------------------

void write_csv(std::ostream& out, const UnitGrid& grid) {
  out << "x\n";
  for (double x : grid.points()) out << format_double(x) << '\n';
}

void write_csv(std::ostream& out, const TriangleGrid& grid) {
  out << "x,y\n";
  for (const auto& p : grid.points()) out << format_double(p[0]) << ',' << format_double(p[1]) << '\n';
}

void write_csv(std::ostream& out, const SimplexGrid& grid) {
  for (int i = 1; i <= grid.dimension(); ++i) out << (i > 1 ? ",p" : "p") << i;
  out << '\n';
  grid.for_each(0, grid.size(), [&](std::uint64_t, std::span<const double> p) {
    for (std::size_t i = 0; i < p.size(); ++i) out << (i ? "," : "") << format_double(p[i]);
    out << '\n';
  });
}

void write_csv(std::ostream& out, const ConeGrid& grid) {
  out << "x,y,z\n";
  for (std::uint64_t i = 0; i < grid.size(); ++i) {
    const auto p = grid.point(i);
    out << format_double(p[0]) << ',' << format_double(p[1]) << ',' << format_double(p[2]) << '\n';
  }
}

}  // namespace infostab
