#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "infostab/domains.hpp"
#include "infostab/engine.hpp"
#include "infostab/models.hpp"

namespace infostab {

namespace equation {

/// f(x) + (1-x)^a f(y/(1-x)) = f(y) + (1-y)^a f(x/(1-y)) on a triangle grid.
struct FundamentalParametric { double alpha; };
/// sum f(p_i q_j) = sum f(p_i) + sum f(q_j).
struct SumFormAdditive { int n, m; };
/// The additive sum form plus (2^(1-a)-1) sum f(p_i) sum f(q_j).
struct SumFormAlpha { double alpha; int n, m; };
/// sum g(p_i q_j) = sum g(p_i) sum g(q_j).
struct SumFormMultiplicative { int n, m; };
/// sum f(p_i q_j) = sum f(p_i) sum q_j^beta + sum f(q_j) sum p_i^alpha.
struct SumFormMixed { double alpha, beta; int n, m; };
/// sum phi(p_i) = 0 over one simplex grid.
struct SumFormVanishing { int n; };
/// F(x+y,z) + F(x,y) = F(x,y+z) + F(y,z) on a cone grid.
struct Cocycle {};
/// H(x,y,z) = H(x+y,0,z) + H(x,y,0) on a cone grid.
struct EntropyEq {};
/// f(x,y,z) = f(x,y+z,0) + (y+z)^a f(0, y/(y+z), z/(y+z)) on a cone grid.
struct ModifiedEntropy { double alpha; };
/// a(x+y) = a(x) + a(y) for pairs of a unit grid with x+y in the grid's range.
struct CauchyAdditive {};
/// m(xy) = m(x) m(y).
struct Multiplicative {};
/// l(xy) = l(x) + l(y).
struct Logarithmic {};
/// phi(xy) = x phi(y) + y phi(x).
struct PhiEquation {};
/// (x+y) f(y/(x+y)) = phi(x) + phi(y) - phi(x+y).
struct DaroczyIdentity {};
/// f(x) = phi(x) + phi(1-x).
struct InfoFunctionForm {};

}  // namespace equation

using EquationKind =
    std::variant<equation::FundamentalParametric, equation::SumFormAdditive,
                 equation::SumFormAlpha, equation::SumFormMultiplicative, equation::SumFormMixed,
                 equation::SumFormVanishing, equation::Cocycle, equation::EntropyEq,
                 equation::ModifiedEntropy, equation::CauchyAdditive, equation::Multiplicative,
                 equation::Logarithmic, equation::PhiEquation, equation::DaroczyIdentity,
                 equation::InfoFunctionForm>;

std::string equation_name(const EquationKind& kind);

using GridDomain = std::variant<UnitGrid, UnitProductGrid, TriangleGrid, SimplexGrid,
                                SimplexPairGrid, ConeGrid, QuadrantGrid>;

/// The functions an equation consumes. Scalar equations read `f`; the two
/// identities also read `phi`; cocycle reads `binary`; cone equations read
/// `ternary`.
struct EquationFunctions {
  std::optional<ScalarFunction> f = std::nullopt;
  std::optional<ScalarFunction> phi = std::nullopt;
  std::optional<BinaryFunction> binary = std::nullopt;
  std::optional<TernaryFunction> ternary = std::nullopt;
};

/// Sup/mean of the absolute left-minus-right defect over every grid point.
/// Grid or function mismatches raise a configuration error; sum forms whose
/// pair count exceeds the engine's pair budget raise a budget error.
ResidualReport residual(const EquationKind& kind, const EquationFunctions& fns,
                        const GridDomain& grid, const EngineOptions& options = {},
                        DefectSink* sink = nullptr);

/// Column labels of the points `residual` visits for this kind and grid.
std::vector<std::string> point_labels(const EquationKind& kind, const GridDomain& grid);

/// Writes "labels...,defect" rows for every grid point.
ResidualReport dump_defects(std::ostream& out, const EquationKind& kind,
                            const EquationFunctions& fns, const GridDomain& grid,
                            const EngineOptions& options = {});

/// Signed defect of the parametric fundamental equation at (x, y).
double fundamental_defect(const ScalarFunction& f, double alpha, double x, double y);

/// Largest deviation of H under the five nontrivial permutations.
ResidualReport symmetry_residual(const TernaryFunction& h, const ConeGrid& grid,
                                 const EngineOptions& options = {});

/// sup |F(tu,tv) - t^alpha F(u,v)| over the grid and every t in `scales`.
ResidualReport homogeneity_residual(const BinaryFunction& f, double alpha,
                                    const QuadrantGrid& grid, const std::vector<double>& scales,
                                    const EngineOptions& options = {});

/// Visits the points of any grid domain (sum-form pairs are concatenated).
PointSource grid_source(const GridDomain& grid);

/// Writes CSV rows; used behind the defect-dump flag.
class CsvDefectSink : public DefectSink {
 public:
  CsvDefectSink(std::ostream& out, const std::vector<std::string>& labels);
  void record(std::span<const double> point, double defect) override;

 private:
  std::ostream& out_;
};

}  // namespace infostab
