#include "infostab/equations.hpp"

#include <cmath>
#include <memory>
#include <ostream>

#include "infostab/error.hpp"
#include "infostab/format.hpp"

namespace infostab {

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

[[noreturn]] void mismatch(const EquationKind& kind, const char* expected) {
  throw Error(ErrorKind::Configuration,
              equation_name(kind) + " needs " + expected + " as its grid domain");
}

const ScalarFunction& need(const std::optional<ScalarFunction>& f, const EquationKind& kind,
                           const char* role) {
  if (!f) throw Error(ErrorKind::Configuration, equation_name(kind) + " needs a function '" + role + "'");
  return *f;
}

int grid_resolution(const GridDomain& grid) {
  return std::visit(
      overloaded{[](const UnitProductGrid& g) { return g.axis.resolution(); },
                 [](const SimplexPairGrid& g) { return g.first.resolution(); },
                 [](const auto& g) { return g.resolution(); }},
      grid);
}

PointSource pair_source(const SimplexPairGrid& grid) {
  auto first = std::make_shared<SimplexGrid>(grid.first);
  auto second = std::make_shared<const std::vector<double>>(grid.second.materialize());
  const auto n = static_cast<std::size_t>(grid.first.dimension());
  const auto m = static_cast<std::size_t>(grid.second.dimension());
  const std::uint64_t inner = grid.second.size();
  PointSource source;
  source.size = grid.first.size() * inner;
  source.visit = [first, second, n, m, inner](std::uint64_t begin, std::uint64_t end,
                                              const auto& fn) {
    std::vector<double> point(n + m);
    std::uint64_t current = UINT64_MAX;
    for (std::uint64_t idx = begin; idx < end; ++idx) {
      const std::uint64_t i = idx / inner;
      const std::uint64_t j = idx % inner;
      if (i != current) {
        first->point(i, std::span<double>(point.data(), n));
        current = i;
      }
      std::copy_n(second->data() + j * m, m, point.data() + n);
      fn(idx, point);
    }
  };
  return source;
}

PointSource cauchy_source(const UnitGrid& axis) {
  auto coords = std::make_shared<std::vector<double>>();
  const double top = axis.points().back();
  for (double x : axis.points()) {
    for (double y : axis.points()) {
      if (x + y <= top) {
        coords->push_back(x);
        coords->push_back(y);
      }
    }
  }
  return list_source(coords, 2);
}

void check_dims(const EquationKind& kind, const SimplexPairGrid& g, int n, int m) {
  if (n < 2 || m < 2) {
    throw Error(ErrorKind::Configuration, equation_name(kind) + " needs n, m >= 2");
  }
  if (g.first.dimension() != n || g.second.dimension() != m) {
    throw Error(ErrorKind::Configuration,
                equation_name(kind) + " expects simplex grids of dimensions " + std::to_string(n) +
                    " and " + std::to_string(m));
  }
}

const SimplexPairGrid& pair_grid(const EquationKind& kind, const GridDomain& grid,
                                 const EngineOptions& options, int n, int m) {
  const auto* g = std::get_if<SimplexPairGrid>(&grid);
  if (!g) mismatch(kind, "a pair of simplex grids");
  check_dims(kind, *g, n, m);
  const std::uint64_t a = g->first.size();
  const std::uint64_t b = g->second.size();
  if (b != 0 && a > options.pair_budget / b) {
    throw Error(ErrorKind::Budget, equation_name(kind) + " would visit " + std::to_string(a) +
                                       " x " + std::to_string(b) + " pairs, above the budget of " +
                                       std::to_string(options.pair_budget));
  }
  return *g;
}

using SumFormDefect = std::function<double(std::span<const double>, std::span<const double>)>;

DefectFunction split(std::size_t n, SumFormDefect body) {
  return [n, body = std::move(body)](std::span<const double> point) {
    return body(point.first(n), point.subspan(n));
  };
}

double sum_of(const ScalarFunction& f, std::span<const double> p) {
  double total = 0.0;
  for (double v : p) total += f(v);
  return total;
}

double double_sum(const ScalarFunction& f, std::span<const double> p, std::span<const double> q) {
  double total = 0.0;
  for (double a : p) {
    for (double b : q) total += f(a * b);
  }
  return total;
}

double power_sum(std::span<const double> p, double exponent) {
  double total = 0.0;
  for (double v : p) total += pow_convention(v, exponent);
  return total;
}

bool positive_pairs(const GridDomain& grid) {
  return std::holds_alternative<UnitProductGrid>(grid) || std::holds_alternative<QuadrantGrid>(grid);
}

}  // namespace

std::string equation_name(const EquationKind& kind) {
  return std::visit(
      overloaded{[](const equation::FundamentalParametric&) { return "fundamental_parametric"; },
                 [](const equation::SumFormAdditive&) { return "sum_form_additive"; },
                 [](const equation::SumFormAlpha&) { return "sum_form_alpha"; },
                 [](const equation::SumFormMultiplicative&) { return "sum_form_multiplicative"; },
                 [](const equation::SumFormMixed&) { return "sum_form_mixed"; },
                 [](const equation::SumFormVanishing&) { return "sum_form_vanishing"; },
                 [](const equation::Cocycle&) { return "cocycle"; },
                 [](const equation::EntropyEq&) { return "entropy_equation"; },
                 [](const equation::ModifiedEntropy&) { return "modified_entropy"; },
                 [](const equation::CauchyAdditive&) { return "cauchy_additive"; },
                 [](const equation::Multiplicative&) { return "multiplicative"; },
                 [](const equation::Logarithmic&) { return "logarithmic"; },
                 [](const equation::PhiEquation&) { return "phi_equation"; },
                 [](const equation::DaroczyIdentity&) { return "daroczy_identity"; },
                 [](const equation::InfoFunctionForm&) { return "info_function_form"; }},
      kind);
}

double fundamental_defect(const ScalarFunction& f, double alpha, double x, double y) {
  const double wx = pow_convention(1.0 - x, alpha);
  const double wy = pow_convention(1.0 - y, alpha);
  return f(x) + wx * f(std::min(1.0, y / (1.0 - x))) - f(y) - wy * f(std::min(1.0, x / (1.0 - y)));
}

PointSource grid_source(const GridDomain& grid) {
  return std::visit(
      overloaded{
          [](const UnitGrid& g) {
            return list_source(std::make_shared<const std::vector<double>>(g.points()), 1);
          },
          [](const UnitProductGrid& g) {
            auto coords = std::make_shared<std::vector<double>>();
            for (double x : g.axis.points()) {
              for (double y : g.axis.points()) {
                coords->push_back(x);
                coords->push_back(y);
              }
            }
            return list_source(coords, 2);
          },
          [](const TriangleGrid& g) {
            auto coords = std::make_shared<std::vector<double>>();
            for (const auto& p : g.points()) coords->insert(coords->end(), p.begin(), p.end());
            return list_source(coords, 2);
          },
          [](const SimplexGrid& g) {
            auto shared = std::make_shared<SimplexGrid>(g);
            PointSource source;
            source.size = g.size();
            source.visit = [shared](std::uint64_t begin, std::uint64_t end, const auto& fn) {
              shared->for_each(begin, end, fn);
            };
            return source;
          },
          [](const SimplexPairGrid& g) { return pair_source(g); },
          [](const ConeGrid& g) {
            PointSource source;
            source.size = g.size();
            source.visit = [g](std::uint64_t begin, std::uint64_t end, const auto& fn) {
              for (std::uint64_t i = begin; i < end; ++i) {
                const auto p = g.point(i);
                fn(i, p);
              }
            };
            return source;
          },
          [](const QuadrantGrid& g) {
            PointSource source;
            source.size = g.size();
            source.visit = [g](std::uint64_t begin, std::uint64_t end, const auto& fn) {
              for (std::uint64_t i = begin; i < end; ++i) {
                const auto p = g.point(i);
                fn(i, p);
              }
            };
            return source;
          }},
      grid);
}

ResidualReport residual(const EquationKind& kind, const EquationFunctions& fns,
                        const GridDomain& grid, const EngineOptions& options, DefectSink* sink) {
  PointSource source;
  DefectFunction defect;

  std::visit(
      overloaded{
          [&](const equation::FundamentalParametric& e) {
            if (!std::holds_alternative<TriangleGrid>(grid)) mismatch(kind, "a triangle grid");
            const ScalarFunction f = need(fns.f, kind, "f");
            const double alpha = e.alpha;
            source = grid_source(grid);
            defect = [f, alpha](std::span<const double> p) {
              return fundamental_defect(f, alpha, p[0], p[1]);
            };
          },
          [&](const equation::SumFormAdditive& e) {
            const auto& g = pair_grid(kind, grid, options, e.n, e.m);
            const ScalarFunction f = need(fns.f, kind, "f");
            source = pair_source(g);
            defect = split(static_cast<std::size_t>(e.n), [f](auto p, auto q) {
              return double_sum(f, p, q) - sum_of(f, p) - sum_of(f, q);
            });
          },
          [&](const equation::SumFormAlpha& e) {
            const auto& g = pair_grid(kind, grid, options, e.n, e.m);
            const ScalarFunction f = need(fns.f, kind, "f");
            const double k = std::expm1((1.0 - e.alpha) * std::log(2.0));
            source = pair_source(g);
            defect = split(static_cast<std::size_t>(e.n), [f, k](auto p, auto q) {
              const double fp = sum_of(f, p);
              const double fq = sum_of(f, q);
              return double_sum(f, p, q) - fp - fq - k * fp * fq;
            });
          },
          [&](const equation::SumFormMultiplicative& e) {
            const auto& g = pair_grid(kind, grid, options, e.n, e.m);
            const ScalarFunction f = need(fns.f, kind, "f");
            source = pair_source(g);
            defect = split(static_cast<std::size_t>(e.n), [f](auto p, auto q) {
              return double_sum(f, p, q) - sum_of(f, p) * sum_of(f, q);
            });
          },
          [&](const equation::SumFormMixed& e) {
            const auto& g = pair_grid(kind, grid, options, e.n, e.m);
            const ScalarFunction f = need(fns.f, kind, "f");
            const double alpha = e.alpha;
            const double beta = e.beta;
            source = pair_source(g);
            defect = split(static_cast<std::size_t>(e.n), [f, alpha, beta](auto p, auto q) {
              return double_sum(f, p, q) - sum_of(f, p) * power_sum(q, beta) -
                     sum_of(f, q) * power_sum(p, alpha);
            });
          },
          [&](const equation::SumFormVanishing& e) {
            const auto* g = std::get_if<SimplexGrid>(&grid);
            if (!g) mismatch(kind, "a simplex grid");
            if (g->dimension() != e.n) {
              throw Error(ErrorKind::Configuration, "sum_form_vanishing expects a simplex grid of dimension " +
                                                        std::to_string(e.n));
            }
            const ScalarFunction f = need(fns.f, kind, "f");
            source = grid_source(grid);
            defect = [f](std::span<const double> p) { return sum_of(f, p); };
          },
          [&](const equation::Cocycle&) {
            if (!std::holds_alternative<ConeGrid>(grid)) mismatch(kind, "a cone grid");
            if (!fns.binary) throw Error(ErrorKind::Configuration, "cocycle needs a binary function");
            const BinaryFunction F = *fns.binary;
            source = grid_source(grid);
            defect = [F](std::span<const double> p) {
              const double x = p[0], y = p[1], z = p[2];
              return F(x + y, z) + F(x, y) - F(x, y + z) - F(y, z);
            };
          },
          [&](const equation::EntropyEq&) {
            if (!std::holds_alternative<ConeGrid>(grid)) mismatch(kind, "a cone grid");
            if (!fns.ternary) throw Error(ErrorKind::Configuration, "entropy_equation needs a ternary function");
            const TernaryFunction H = *fns.ternary;
            source = grid_source(grid);
            defect = [H](std::span<const double> p) {
              const double x = p[0], y = p[1], z = p[2];
              return H(x, y, z) - H(x + y, 0.0, z) - H(x, y, 0.0);
            };
          },
          [&](const equation::ModifiedEntropy& e) {
            if (!std::holds_alternative<ConeGrid>(grid)) mismatch(kind, "a cone grid");
            if (!fns.ternary) throw Error(ErrorKind::Configuration, "modified_entropy needs a ternary function");
            const TernaryFunction f = *fns.ternary;
            const double alpha = e.alpha;
            source = grid_source(grid);
            defect = [f, alpha](std::span<const double> p) {
              const double x = p[0], y = p[1], z = p[2];
              const double s = y + z;
              return f(x, y, z) - f(x, s, 0.0) - pow_convention(s, alpha) * f(0.0, y / s, z / s);
            };
          },
          [&](const equation::CauchyAdditive&) {
            const auto* g = std::get_if<UnitProductGrid>(&grid);
            if (!g) mismatch(kind, "a unit product grid");
            const ScalarFunction f = need(fns.f, kind, "f");
            source = cauchy_source(g->axis);
            defect = [f](std::span<const double> p) { return f(p[0] + p[1]) - f(p[0]) - f(p[1]); };
          },
          [&](const equation::Multiplicative&) {
            if (!positive_pairs(grid)) mismatch(kind, "a unit product or quadrant grid");
            const ScalarFunction f = need(fns.f, kind, "f");
            source = grid_source(grid);
            defect = [f](std::span<const double> p) { return f(p[0] * p[1]) - f(p[0]) * f(p[1]); };
          },
          [&](const equation::Logarithmic&) {
            if (!positive_pairs(grid)) mismatch(kind, "a unit product or quadrant grid");
            const ScalarFunction f = need(fns.f, kind, "f");
            source = grid_source(grid);
            defect = [f](std::span<const double> p) { return f(p[0] * p[1]) - f(p[0]) - f(p[1]); };
          },
          [&](const equation::PhiEquation&) {
            if (!positive_pairs(grid)) mismatch(kind, "a unit product or quadrant grid");
            const ScalarFunction f = need(fns.f, kind, "f");
            source = grid_source(grid);
            defect = [f](std::span<const double> p) {
              return f(p[0] * p[1]) - p[0] * f(p[1]) - p[1] * f(p[0]);
            };
          },
          [&](const equation::DaroczyIdentity&) {
            if (!positive_pairs(grid)) mismatch(kind, "a unit product or quadrant grid");
            const ScalarFunction f = need(fns.f, kind, "f");
            const ScalarFunction phi = need(fns.phi, kind, "phi");
            source = grid_source(grid);
            defect = [f, phi](std::span<const double> p) {
              const double s = p[0] + p[1];
              if (s <= 0.0) return 0.0;
              return s * f(std::min(1.0, p[1] / s)) - (phi(p[0]) + phi(p[1]) - phi(s));
            };
          },
          [&](const equation::InfoFunctionForm&) {
            if (!std::holds_alternative<UnitGrid>(grid)) mismatch(kind, "a unit grid");
            const ScalarFunction f = need(fns.f, kind, "f");
            const ScalarFunction phi = need(fns.phi, kind, "phi");
            source = grid_source(grid);
            defect = [f, phi](std::span<const double> p) {
              return f(p[0]) - phi(p[0]) - phi(1.0 - p[0]);
            };
          }},
      kind);

  ResidualReport report = sweep(source, defect, options, sink);
  report.resolution = grid_resolution(grid);
  return report;
}

std::vector<std::string> point_labels(const EquationKind& kind, const GridDomain& grid) {
  auto simplex_labels = [](const char* prefix, int n) {
    std::vector<std::string> out;
    for (int i = 1; i <= n; ++i) out.push_back(prefix + std::to_string(i));
    return out;
  };
  if (std::holds_alternative<equation::CauchyAdditive>(kind)) return {"x", "y"};
  return std::visit(
      overloaded{[](const UnitGrid&) { return std::vector<std::string>{"x"}; },
                 [](const UnitProductGrid&) { return std::vector<std::string>{"x", "y"}; },
                 [](const TriangleGrid&) { return std::vector<std::string>{"x", "y"}; },
                 [&](const SimplexGrid& g) { return simplex_labels("p", g.dimension()); },
                 [&](const SimplexPairGrid& g) {
                   auto out = simplex_labels("p", g.first.dimension());
                   auto q = simplex_labels("q", g.second.dimension());
                   out.insert(out.end(), q.begin(), q.end());
                   return out;
                 },
                 [](const ConeGrid&) { return std::vector<std::string>{"x", "y", "z"}; },
                 [](const QuadrantGrid&) { return std::vector<std::string>{"x", "y"}; }},
      grid);
}

CsvDefectSink::CsvDefectSink(std::ostream& out, const std::vector<std::string>& labels) : out_(out) {
  for (const auto& l : labels) out_ << l << ',';
  out_ << "defect\n";
}

void CsvDefectSink::record(std::span<const double> point, double defect) {
  for (double v : point) out_ << format_double(v) << ',';
  out_ << format_double(defect) << '\n';
}

ResidualReport dump_defects(std::ostream& out, const EquationKind& kind,
                            const EquationFunctions& fns, const GridDomain& grid,
                            const EngineOptions& options) {
  CsvDefectSink sink(out, point_labels(kind, grid));
  return residual(kind, fns, grid, options, &sink);
}

ResidualReport symmetry_residual(const TernaryFunction& h, const ConeGrid& grid,
                                 const EngineOptions& options) {
  const DefectFunction defect = [h](std::span<const double> p) {
    const double x = p[0], y = p[1], z = p[2];
    const double base = h(x, y, z);
    const double others[5] = {h(x, z, y), h(y, x, z), h(y, z, x), h(z, x, y), h(z, y, x)};
    double worst = 0.0;
    for (double o : others) {
      if (std::abs(base - o) > std::abs(worst)) worst = base - o;
    }
    return worst;
  };
  ResidualReport report = sweep(grid_source(grid), defect, options);
  report.resolution = grid.resolution();
  return report;
}

ResidualReport homogeneity_residual(const BinaryFunction& f, double alpha,
                                    const QuadrantGrid& grid, const std::vector<double>& scales,
                                    const EngineOptions& options) {
  for (double t : scales) {
    if (!(t > 0.0)) throw Error(ErrorKind::Configuration, "homogeneity scale factors must be positive");
  }
  auto coords = std::make_shared<std::vector<double>>();
  for (std::uint64_t i = 0; i < grid.size(); ++i) {
    const auto p = grid.point(i);
    for (double t : scales) {
      coords->insert(coords->end(), {p[0], p[1], t});
    }
  }
  const DefectFunction defect = [f, alpha](std::span<const double> p) {
    const double t = p[2];
    return f(t * p[0], t * p[1]) - std::pow(t, alpha) * f(p[0], p[1]);
  };
  ResidualReport report = sweep(list_source(coords, 3), defect, options);
  report.resolution = grid.resolution();
  return report;
}

}  // namespace infostab
