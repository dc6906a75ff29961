#ifndef CESREDUCE_COMPARE_HPP
#define CESREDUCE_COMPARE_HPP

#include <algorithm>
#include <cmath>
#include <map>
#include <optional>
#include <vector>

#include "numeric.hpp"
#include "pareto.hpp"
#include "scalarization.hpp"

namespace cesreduce {

inline constexpr double kRatioAgreementTol = 1e-9;

/// Relative stationarity residual of phi on the ray L = rho K at the point
/// (K, rho K): cQ is replaced by the value that zeroes dphi/dK there, the
/// gradient is taken by central differences, and its norm is divided by
/// |(cK, cL)|. Zero exactly when the ray is stationary for some cQ.
inline double ray_gradient_residual(const AggregateCoefficients& coeffs, const CesParams& ces, double rho,
                                    double K = 1.0)
{
    const double cq = std::abs(coeffs.cK) / ray_capital_slope(ces, rho);
    const Scalarization phi({coeffs.cK, coeffs.cL, cq}, ces);
    const auto g = central_gradient([&](double k, double l) { return phi.value({k, l}); }, K, rho * K);
    return std::hypot(g[0], g[1]) / std::hypot(coeffs.cK, coeffs.cL);
}

/// Point on the ray L = rho K near the middle of the grid window, if the ray
/// crosses the window at all.
inline std::optional<ResourceBundle> ray_window_point(const GridSpec& grid, double rho)
{
    auto mid = [&](double lo, double hi) {
        return grid.scale == GridScale::Logarithmic ? std::sqrt(lo * hi) : 0.5 * (lo + hi);
    };
    const double kMid = mid(grid.kMin, grid.kMax);
    if (ResourceBundle x{kMid, rho * kMid}; grid.contains(x)) return x;
    const double lMid = mid(grid.lMin, grid.lMax);
    if (ResourceBundle x{lMid / rho, lMid}; grid.contains(x)) return x;
    // Clamp K so that L = rho K lands on the nearer L edge.
    const double lEdge = rho * kMid > grid.lMax ? grid.lMax : grid.lMin;
    if (ResourceBundle x{lEdge / rho, lEdge}; grid.contains(x)) return x;
    return std::nullopt;
}

struct DiscrepancyRow {
    CriteriaKind kind = CriteriaKind::G4;
    PaperFormula formula = PaperFormula::Eq10;
    std::vector<double> weights;
    PaperRay paper;
    std::optional<StationaryRay> derived;
    std::optional<double> paper_grad_residual;
    std::optional<double> derived_grad_residual;
    bool agree = false;
    /// Nearest grid node to the ray's window point is non-dominated; empty
    /// when the ray misses the window.
    std::optional<bool> derived_nondominated;
    std::optional<bool> paper_nondominated;
};

struct DiscrepancyReport {
    std::vector<DiscrepancyRow> rows;
    double agreement_pct = 0.0;
    double max_grad_residual = 0.0;
    std::size_t domain_failures = 0;
    /// Per kind: swept derived rays whose window point snaps to a
    /// non-dominated node, over rays that cross the window.
    std::map<CriteriaKind, std::pair<std::size_t, std::size_t>> derived_on_oracle;
};

struct CompareScenario {
    EconomicProblem problem;
    PreferencePair pair;
    GridSpec grid;
    SweepSpec sweep;
    std::vector<CriteriaKind> kinds{CriteriaKind::G4, CriteriaKind::FBAR4, CriteriaKind::F3};
    std::size_t grid_cap = kDefaultGridCap;
};

/// Evaluates the closed-form rays against the derived ratio and the grid
/// oracle for each swept weight vector.
inline DiscrepancyReport compare_formulas(const CompareScenario& s)
{
    DiscrepancyReport report;
    std::size_t agreements = 0;
    for (const auto kind : s.kinds) {
        const auto formula = paper_formula_for(kind);
        if (!formula) continue;
        const auto oracle = oracle_pareto(kind, s.pair, s.problem, s.grid, s.grid_cap);
        const auto mask = oracle.mask();
        auto status = [&](double rho) -> std::optional<bool> {
            const auto x = ray_window_point(s.grid, rho);
            if (!x) return std::nullopt;
            return mask[s.grid.nearest(*x)] != 0;
        };
        auto& tally = report.derived_on_oracle[kind];
        for (const auto& lambda : sweep_weights(kind, s.sweep)) {
            DiscrepancyRow row;
            row.kind = kind;
            row.formula = *formula;
            row.weights = lambda.values();
            const auto coeffs = aggregate_coefficients(kind, s.pair, s.problem, lambda);
            row.paper = stationary_ray_paper(paper_ratio_terms(*formula, s.pair, s.problem, lambda), s.problem.ces);
            row.derived = stationary_ray_derived(coeffs, s.problem.ces);
            if (row.paper.domain_failure()) ++report.domain_failures;
            if (row.derived) {
                const double res = ray_gradient_residual(coeffs, s.problem.ces, row.derived->rho);
                row.derived_grad_residual = res;
                report.max_grad_residual = std::max(report.max_grad_residual, res);
                row.derived_nondominated = status(row.derived->rho);
                if (row.derived_nondominated) {
                    ++tally.second;
                    if (*row.derived_nondominated) ++tally.first;
                }
            }
            if (row.paper.rho) {
                row.paper_grad_residual = ray_gradient_residual(coeffs, s.problem.ces, *row.paper.rho);
                row.paper_nondominated = status(*row.paper.rho);
            }
            row.agree = row.derived && row.paper.rho &&
                        std::abs(*row.paper.rho - row.derived->rho) <= kRatioAgreementTol * row.derived->rho;
            if (row.agree) ++agreements;
            report.rows.push_back(std::move(row));
        }
    }
    if (!report.rows.empty())
        report.agreement_pct = 100.0 * static_cast<double>(agreements) / static_cast<double>(report.rows.size());
    return report;
}

} // namespace cesreduce

#endif // CESREDUCE_COMPARE_HPP
