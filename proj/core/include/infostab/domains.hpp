#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <iosfwd>
#include <span>
#include <vector>

namespace infostab {

/// Whether a lattice keeps the zero-probability boundary.
enum class Variant { Open, Closed };

/// x^alpha with the zero-probability convention 0^alpha = 0 for every alpha.
double pow_convention(double x, double alpha);

/// x*log2(x) with 0*log2(0) = 0.
double xlog2_convention(double x);

/// Saturating binomial coefficient; returns UINT64_MAX on overflow.
std::uint64_t binomial(std::uint64_t n, std::uint64_t k) noexcept;

/// Number of lattice points of the n-simplex at the given resolution.
std::uint64_t simplex_point_count(int n, int resolution, Variant variant) noexcept;

// ---------------------------------------------------------------------------

/// {k/R} inside the unit interval, ascending. Closed grids include 0 and 1.
class UnitGrid {
 public:
  UnitGrid(int resolution, Variant variant);

  int resolution() const noexcept { return resolution_; }
  Variant variant() const noexcept { return variant_; }
  std::size_t size() const noexcept { return points_.size(); }
  double operator[](std::size_t i) const { return points_[i]; }
  const std::vector<double>& points() const noexcept { return points_; }

 private:
  int resolution_;
  Variant variant_;
  std::vector<double> points_;
};

std::vector<double> sample_unit(int resolution, Variant variant);

/// Lattice sample of the triangle domain of the fundamental equation.
///
/// Open: i, j >= 1 and i + j <= R - 1, so x, y, x + y all lie in (0,1).
/// Closed: 0 <= i, j <= R - 1 and i + j <= R; x = 1 is never generated.
class TriangleGrid {
 public:
  using Point = std::array<double, 2>;

  TriangleGrid(int resolution, Variant variant);

  int resolution() const noexcept { return resolution_; }
  Variant variant() const noexcept { return variant_; }
  std::size_t size() const noexcept { return points_.size(); }
  const Point& operator[](std::size_t i) const { return points_[i]; }
  const std::vector<Point>& points() const noexcept { return points_; }

 private:
  int resolution_;
  Variant variant_;
  std::vector<Point> points_;
};

std::vector<TriangleGrid::Point> sample_triangle(int resolution, Variant variant);

/// Compositions of R into n parts scaled by 1/R, in lexicographic order of
/// (k1, ..., kn). Points are generated on demand so that large grids can be
/// swept without materializing them.
class SimplexGrid {
 public:
  /// `max_points` guards against combinatorial blow-up; exceeding it raises
  /// a budget error.
  SimplexGrid(int n, int resolution, Variant variant,
              std::uint64_t max_points = UINT64_MAX);

  int dimension() const noexcept { return n_; }
  int resolution() const noexcept { return resolution_; }
  Variant variant() const noexcept { return variant_; }
  std::uint64_t size() const noexcept { return size_; }

  /// Writes point `index` into `out` (size n).
  void point(std::uint64_t index, std::span<double> out) const;
  std::vector<double> point(std::uint64_t index) const;

  /// Visits points [begin, end) in order; the span is valid only during the call.
  void for_each(std::uint64_t begin, std::uint64_t end,
                const std::function<void(std::uint64_t, std::span<const double>)>& fn) const;

  /// All points, row-major (size() * n doubles). Only for small grids.
  std::vector<double> materialize() const;

 private:
  void unrank(std::uint64_t index, std::span<int> parts) const;
  bool advance(std::span<int> parts) const;
  void scale(std::span<const int> parts, std::span<double> out) const;

  int n_;
  int resolution_;
  Variant variant_;
  int total_;  // sum of positive parts (R, or R + n for the closed variant)
  std::uint64_t size_;
};

std::vector<std::vector<double>> sample_simplex(int n, int resolution, Variant variant);

/// Strictly positive triples on the box (0, B]^3 at lattice points kB/R.
class ConeGrid {
 public:
  using Point = std::array<double, 3>;

  explicit ConeGrid(int resolution, double bound = 1.0);

  int resolution() const noexcept { return resolution_; }
  double bound() const noexcept { return bound_; }
  double spacing() const noexcept { return bound_ / resolution_; }
  std::uint64_t size() const noexcept;
  Point point(std::uint64_t index) const;

 private:
  int resolution_;
  double bound_;
};

/// Strictly positive pairs on the box (0, B]^2 at lattice points kB/R.
class QuadrantGrid {
 public:
  using Point = std::array<double, 2>;

  explicit QuadrantGrid(int resolution, double bound = 1.0);

  int resolution() const noexcept { return resolution_; }
  double bound() const noexcept { return bound_; }
  std::uint64_t size() const noexcept;
  Point point(std::uint64_t index) const;

 private:
  int resolution_;
  double bound_;
};

/// All ordered pairs of a unit grid; the additive equation additionally
/// restricts itself to pairs whose sum stays in the grid's interval.
struct UnitProductGrid {
  UnitGrid axis;
};

/// A pair of simplex grids for the sum-form equations.
struct SimplexPairGrid {
  SimplexGrid first;
  SimplexGrid second;
};

/// Seeded uniform sample of the open simplex (sorted-uniform spacings).
std::vector<std::vector<double>> sample_simplex_random(int n, std::size_t count,
                                                       std::uint64_t seed);

/// Uniform doubles in [0,1) from a 64-bit word; stable across platforms.
double unit_from_bits(std::uint64_t bits) noexcept;

void write_csv(std::ostream& out, const UnitGrid& grid);
void write_csv(std::ostream& out, const TriangleGrid& grid);
void write_csv(std::ostream& out, const SimplexGrid& grid);
void write_csv(std::ostream& out, const ConeGrid& grid);

}  // namespace infostab
