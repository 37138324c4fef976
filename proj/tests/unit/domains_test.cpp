#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>
#include <vector>

#include "doctest.h"
#include "infostab/domains.hpp"
#include "infostab/error.hpp"
#include "support.hpp"

using namespace infostab;
using infostab::testing::expect_error;

namespace {

// Reference enumeration: all (k1..kn) with the given lower bound on each part
// summing to total, in lexicographic order.
void compositions(int n, int total, int lowest, std::vector<int>& prefix,
                  std::vector<std::vector<int>>& out) {
  if (static_cast<int>(prefix.size()) == n - 1) {
    const int last = total;
    if (last >= lowest) {
      prefix.push_back(last);
      out.push_back(prefix);
      prefix.pop_back();
    }
    return;
  }
  for (int k = lowest; k <= total; ++k) {
    prefix.push_back(k);
    compositions(n, total - k, lowest, prefix, out);
    prefix.pop_back();
  }
}

std::vector<std::vector<int>> reference_simplex(int n, int r, Variant v) {
  std::vector<std::vector<int>> out;
  std::vector<int> prefix;
  compositions(n, r, v == Variant::Open ? 1 : 0, prefix, out);
  return out;
}

}  // namespace

TEST_CASE("unit grid lattice") {
  CHECK(sample_unit(4, Variant::Open) == std::vector<double>{0.25, 0.5, 0.75});
  CHECK(sample_unit(2, Variant::Closed) == std::vector<double>{0.0, 0.5, 1.0});
  expect_error(ErrorKind::InvalidResolution, [] { sample_unit(1, Variant::Open); });

  for (int r : {2, 3, 7, 64}) {
    const auto open = sample_unit(r, Variant::Open);
    REQUIRE(open.size() == static_cast<std::size_t>(r - 1));
    CHECK(std::is_sorted(open.begin(), open.end()));
    for (double x : open) CHECK((x > 0.0 && x < 1.0));
    const auto closed = sample_unit(r, Variant::Closed);
    CHECK(closed.front() == 0.0);
    CHECK(closed.back() == 1.0);
    CHECK(closed.size() == open.size() + 2);
  }
}

TEST_CASE("triangle grid") {
  const auto open = sample_triangle(4, Variant::Open);
  std::set<std::array<double, 2>> got(open.begin(), open.end());
  CHECK(got == std::set<std::array<double, 2>>{{0.25, 0.25}, {0.25, 0.5}, {0.5, 0.25}});

  const auto closed = sample_triangle(4, Variant::Closed);
  int expected = 0;
  for (int i = 0; i < 4; ++i) {
    for (int j = 0; j < 4; ++j) expected += (i + j <= 4);
  }
  CHECK(closed.size() == static_cast<std::size_t>(expected));
  std::set<std::array<double, 2>> closed_set(closed.begin(), closed.end());
  CHECK(closed_set.count({0.0, 0.0}) == 1);
  CHECK(closed_set.count({0.75, 0.25}) == 1);
  CHECK(closed_set.count({1.0, 0.0}) == 0);

  expect_error(ErrorKind::InvalidResolution, [] { sample_triangle(2, Variant::Open); });

  for (int r : {3, 10, 33}) {
    for (const auto& p : sample_triangle(r, Variant::Open)) {
      CHECK(p[0] > 0.0);
      CHECK(p[1] > 0.0);
      CHECK(p[0] + p[1] < 1.0);
    }
    for (const auto& p : sample_triangle(r, Variant::Closed)) {
      CHECK(p[0] < 1.0);
      CHECK(p[1] < 1.0);
      CHECK(p[0] + p[1] <= 1.0);
    }
  }
}

TEST_CASE("simplex grid examples") {
  CHECK(sample_simplex(3, 4, Variant::Open).size() == 3);
  CHECK(sample_simplex(2, 2, Variant::Open) == std::vector<std::vector<double>>{{0.5, 0.5}});
  const auto closed = sample_simplex(2, 3, Variant::Closed);
  REQUIRE(closed.size() == 4);
  CHECK(closed[0] == std::vector<double>{0.0, 1.0});
  CHECK(closed[1][0] == doctest::Approx(1.0 / 3.0));
  CHECK(closed[2][0] == doctest::Approx(2.0 / 3.0));
  CHECK(closed[3] == std::vector<double>{1.0, 0.0});
  expect_error(ErrorKind::InvalidResolution, [] { SimplexGrid(4, 3, Variant::Open); });
}

TEST_CASE("simplex grid matches brute-force enumeration") {
  for (Variant v : {Variant::Open, Variant::Closed}) {
    for (int n = 2; n <= 5; ++n) {
      for (int r = n; r <= 9; ++r) {
        const SimplexGrid grid(n, r, v);
        const auto reference = reference_simplex(n, r, v);
        REQUIRE(grid.size() == reference.size());
        CHECK(grid.size() == simplex_point_count(n, r, v));
        std::vector<double> buffer(n);
        for (std::uint64_t i = 0; i < grid.size(); ++i) {
          grid.point(i, buffer);
          for (int k = 0; k < n; ++k) CHECK(buffer[k] == static_cast<double>(reference[i][k]) / r);
        }
        // Sequential traversal from an arbitrary start agrees with random access.
        const std::uint64_t start = grid.size() / 3;
        grid.for_each(start, grid.size(), [&](std::uint64_t i, std::span<const double> p) {
          for (int k = 0; k < n; ++k) CHECK(p[k] == static_cast<double>(reference[i][k]) / r);
        });
      }
    }
  }
}

TEST_CASE("simplex coordinates sum to one and open points are interior") {
  const double tolerance = std::ldexp(1.0, -48);
  for (int n : {2, 3, 6}) {
    for (int r : {6, 7, 31, 60}) {
      const SimplexGrid grid(n, r, Variant::Open);
      grid.for_each(0, grid.size(), [&](std::uint64_t, std::span<const double> p) {
        double total = 0.0;
        for (double x : p) {
          total += x;
          CHECK(x > 0.0);
        }
        CHECK(std::abs(total - 1.0) <= tolerance);
      });
    }
  }
}

TEST_CASE("simplex point budget") {
  expect_error(ErrorKind::Budget, [] { SimplexGrid(6, 60, Variant::Open, 1000); });
  CHECK(binomial(59, 5) == 5006386);
  CHECK(simplex_point_count(6, 60, Variant::Open) == 5006386);
}

TEST_CASE("binomial agrees with Pascal's triangle") {
  std::vector<std::vector<std::uint64_t>> pascal(61, std::vector<std::uint64_t>(61, 0));
  for (int n = 0; n <= 60; ++n) {
    pascal[n][0] = 1;
    for (int k = 1; k <= n; ++k) pascal[n][k] = pascal[n - 1][k - 1] + pascal[n - 1][k];
  }
  for (int n = 0; n <= 60; ++n) {
    for (int k = 0; k <= n; ++k) CHECK(binomial(n, k) == pascal[n][k]);
  }
  CHECK(binomial(5, 7) == 0);
  CHECK(binomial(400, 200) == UINT64_MAX);
}

TEST_CASE("refinement nesting") {
  for (int r : {3, 5, 8}) {
    const auto coarse = sample_unit(r, Variant::Open);
    const auto fine = sample_unit(2 * r, Variant::Open);
    for (double x : coarse) CHECK(std::find(fine.begin(), fine.end(), x) != fine.end());

    const auto tri = sample_triangle(r, Variant::Open);
    const auto tri_fine = sample_triangle(2 * r, Variant::Open);
    std::set<std::array<double, 2>> fine_set(tri_fine.begin(), tri_fine.end());
    for (const auto& p : tri) CHECK(fine_set.count(p) == 1);

    const auto simplex = sample_simplex(3, r, Variant::Open);
    const auto simplex_fine = sample_simplex(3, 2 * r, Variant::Open);
    std::set<std::vector<double>> simplex_set(simplex_fine.begin(), simplex_fine.end());
    for (const auto& p : simplex) CHECK(simplex_set.count(p) == 1);
  }
}

TEST_CASE("zero-probability conventions") {
  CHECK(pow_convention(0.0, -1.0) == 0.0);
  CHECK(pow_convention(0.0, 0.0) == 0.0);
  CHECK(pow_convention(0.5, 2.0) == 0.25);
  for (double a : {-3.0, -0.5, 0.0, 0.7, 5.0}) CHECK(pow_convention(1.0, a) == 1.0);
  CHECK(xlog2_convention(0.0) == 0.0);
  CHECK(xlog2_convention(1.0) == 0.0);
  CHECK(xlog2_convention(0.5) == -0.5);
  expect_error(ErrorKind::Domain, [] { pow_convention(-0.1, 2.0); });
  expect_error(ErrorKind::Domain, [] { xlog2_convention(-0.1); });
}

TEST_CASE("cone and quadrant grids") {
  const ConeGrid cone(4, 2.0);
  CHECK(cone.size() == 64);
  for (std::uint64_t i = 0; i < cone.size(); ++i) {
    const auto p = cone.point(i);
    for (double x : p) CHECK((x > 0.0 && x <= 2.0));
  }
  const QuadrantGrid quad(5);
  CHECK(quad.size() == 25);
  for (std::uint64_t i = 0; i < quad.size(); ++i) {
    const auto p = quad.point(i);
    CHECK((p[0] > 0.0 && p[1] > 0.0 && p[0] <= 1.0 && p[1] <= 1.0));
  }
}

TEST_CASE("seeded random simplex samples") {
  const auto a = sample_simplex_random(5, 200, 42);
  const auto b = sample_simplex_random(5, 200, 42);
  const auto c = sample_simplex_random(5, 200, 43);
  CHECK(a == b);
  CHECK(a != c);
  for (const auto& p : a) {
    double total = 0.0;
    for (double x : p) {
      CHECK(x > 0.0);
      total += x;
    }
    CHECK(total == doctest::Approx(1.0).epsilon(1e-12));
  }
  for (std::uint64_t bits : {0ULL, 1ULL << 11, ~0ULL}) {
    const double u = unit_from_bits(bits);
    CHECK((u >= 0.0 && u < 1.0));
  }
}

TEST_CASE("grid csv") {
  std::ostringstream unit;
  write_csv(unit, UnitGrid(4, Variant::Open));
  CHECK(unit.str() == "x\n0.25\n0.5\n0.75\n");

  std::ostringstream tri;
  write_csv(tri, TriangleGrid(3, Variant::Open));
  CHECK(tri.str() == "x,y\n0.3333333333333333,0.3333333333333333\n");

  std::ostringstream simplex;
  write_csv(simplex, SimplexGrid(2, 2, Variant::Open));
  CHECK(simplex.str() == "p1,p2\n0.5,0.5\n");
}
