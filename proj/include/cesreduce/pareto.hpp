#ifndef CESREDUCE_PARETO_HPP
#define CESREDUCE_PARETO_HPP

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <span>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include "ces.hpp"
#include "quanta.hpp"

namespace cesreduce {

enum class GridScale { Linear, Logarithmic };

inline constexpr std::size_t kDefaultGridCap = 250000;

/// Rectangular discretization of a window of X. Node (i, j) sits at
/// (k_value(i), l_value(j)) and has flat index i * nL + j.
struct GridSpec {
    double kMin = 0.1;
    double kMax = 10.0;
    double lMin = 0.1;
    double lMax = 10.0;
    std::size_t nK = 100;
    std::size_t nL = 100;
    GridScale scale = GridScale::Logarithmic;

    bool operator==(const GridSpec&) const = default;

    std::size_t size() const { return nK * nL; }

    ValidationReport validate(std::size_t cap = kDefaultGridCap) const
    {
        ValidationReport report;
        if (!(kMin > 0.0)) report.add("grid.kMin", "kMin > 0");
        if (!(kMin < kMax) || !std::isfinite(kMax)) report.add("grid.kMax", "kMin < kMax");
        if (!(lMin > 0.0)) report.add("grid.lMin", "lMin > 0");
        if (!(lMin < lMax) || !std::isfinite(lMax)) report.add("grid.lMax", "lMin < lMax");
        if (nK < 2) report.add("grid.nK", "nK >= 2");
        if (nL < 2) report.add("grid.nL", "nL >= 2");
        if (nK >= 2 && nL >= 2 && (nK > cap / nL || nK * nL > cap))
            report.add("grid", "nK*nL <= " + std::to_string(cap));
        return report;
    }

    double k_value(std::size_t i) const { return axis_value(kMin, kMax, nK, i); }
    double l_value(std::size_t j) const { return axis_value(lMin, lMax, nL, j); }

    ResourceBundle node(std::size_t index) const
    {
        return {k_value(index / nL), l_value(index % nL)};
    }

    std::vector<ResourceBundle> nodes() const
    {
        std::vector<ResourceBundle> out;
        out.reserve(size());
        for (std::size_t i = 0; i < nK; ++i)
            for (std::size_t j = 0; j < nL; ++j) out.push_back({k_value(i), l_value(j)});
        return out;
    }

    bool contains(const ResourceBundle& x) const
    {
        return x.K >= kMin && x.K <= kMax && x.L >= lMin && x.L <= lMax;
    }

    /// Nearest node, per axis in the grid's own coordinate (log-space for
    /// logarithmic grids).
    std::size_t nearest(const ResourceBundle& x) const
    {
        if (!contains(x)) throw std::out_of_range("bundle lies outside the grid window");
        return nearest_on_axis(kMin, kMax, nK, x.K) * nL + nearest_on_axis(lMin, lMax, nL, x.L);
    }

private:
    double axis_value(double lo, double hi, std::size_t n, std::size_t i) const
    {
        if (i == 0) return lo;
        if (i + 1 == n) return hi;
        const double t = static_cast<double>(i) / static_cast<double>(n - 1);
        if (scale == GridScale::Logarithmic)
            return std::exp(std::log(lo) + t * (std::log(hi) - std::log(lo)));
        return lo + t * (hi - lo);
    }

    std::size_t nearest_on_axis(double lo, double hi, std::size_t n, double v) const
    {
        double t = scale == GridScale::Logarithmic
                       ? (std::log(v) - std::log(lo)) / (std::log(hi) - std::log(lo))
                       : (v - lo) / (hi - lo);
        t = std::clamp(t, 0.0, 1.0);
        auto i = static_cast<std::size_t>(std::lround(t * static_cast<double>(n - 1)));
        // Rounding in coordinate space can pick the wrong neighbour by one ulp;
        // settle on whichever node value is actually closer.
        std::size_t best = std::min(i, n - 1);
        auto dist = [&](std::size_t k) {
            const double node = axis_value(lo, hi, n, k);
            return scale == GridScale::Logarithmic ? std::abs(std::log(node) - std::log(v))
                                                   : std::abs(node - v);
        };
        if (best > 0 && dist(best - 1) < dist(best)) --best;
        if (best + 1 < n && dist(best + 1) < dist(best)) ++best;
        return best;
    }
};

/// y1 >= y2 componentwise and y1 != y2. Exact comparisons.
inline bool dominates(std::span<const double> y1, std::span<const double> y2)
{
    if (y1.size() != y2.size()) throw std::invalid_argument("dominates: vector length mismatch");
    bool strict = false;
    for (std::size_t i = 0; i < y1.size(); ++i) {
        if (y1[i] < y2[i]) return false;
        if (y1[i] > y2[i]) strict = true;
    }
    return strict;
}

/// Criterion vectors stored row-major: point p occupies
/// values[p*dim, (p+1)*dim).
struct PointSet {
    std::size_t dim = 0;
    std::vector<double> values;

    std::size_t size() const { return dim == 0 ? 0 : values.size() / dim; }
    std::span<const double> row(std::size_t p) const
    {
        return std::span<const double>(values).subspan(p * dim, dim);
    }
    void push_back(std::span<const double> y)
    {
        if (dim == 0) dim = y.size();
        if (y.size() != dim) throw std::invalid_argument("point set: non-uniform vector length");
        values.insert(values.end(), y.begin(), y.end());
    }
};

struct FilterOptions {
    /// 0 picks std::thread::hardware_concurrency().
    unsigned threads = 0;
};

/// Indices of points dominated by no other point, ascending. Pairwise
/// O(n^2) with early exit on the first dominator found.
inline std::vector<std::size_t> nondominated_filter(const PointSet& points, FilterOptions opts = {})
{
    const std::size_t n = points.size();
    if (n == 0) throw std::invalid_argument("nondominated_filter: empty point set");
    std::vector<char> keep(n, 1);

    auto work = [&](std::size_t begin, std::size_t end) {
        for (std::size_t i = begin; i < end; ++i) {
            const auto yi = points.row(i);
            for (std::size_t j = 0; j < n; ++j) {
                if (j != i && dominates(points.row(j), yi)) {
                    keep[i] = 0;
                    break;
                }
            }
        }
    };

    unsigned threads = opts.threads ? opts.threads : std::max(1u, std::thread::hardware_concurrency());
    threads = static_cast<unsigned>(std::min<std::size_t>(threads, n / 256 + 1));
    if (threads <= 1) {
        work(0, n);
    } else {
        std::vector<std::jthread> pool;
        const std::size_t chunk = (n + threads - 1) / threads;
        for (unsigned t = 0; t < threads; ++t) {
            const std::size_t b = t * chunk;
            const std::size_t e = std::min(n, b + chunk);
            if (b < e) pool.emplace_back(work, b, e);
        }
    }

    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < n; ++i)
        if (keep[i]) out.push_back(i);
    return out;
}

struct OracleResult {
    CriteriaKind kind = CriteriaKind::F3;
    GridSpec grid;
    PointSet points;
    std::vector<std::size_t> nondominated;

    std::vector<char> mask() const
    {
        std::vector<char> m(grid.size(), 0);
        for (auto i : nondominated) m[i] = 1;
        return m;
    }
};

/// Brute-force Pareto set of the chosen criteria over every grid node.
inline OracleResult oracle_pareto(CriteriaKind kind, const PreferencePair& pair,
                                  const EconomicProblem& problem, const GridSpec& grid,
                                  std::size_t cap = kDefaultGridCap, FilterOptions opts = {})
{
    const auto report = grid.validate(cap);
    if (!report.ok())
        throw std::invalid_argument("invalid grid: " + report.violations.front().inequality);
    const auto crit = build_criteria(kind, pair, problem);
    OracleResult res;
    res.kind = kind;
    res.grid = grid;
    res.points.dim = component_count(kind);
    res.points.values.reserve(grid.size() * res.points.dim);
    for (const auto& x : grid.nodes()) res.points.push_back(crit(x));
    res.nondominated = nondominated_filter(res.points, opts);
    return res;
}

/// a ⊆ b for ascending index lists.
inline bool is_subset(const std::vector<std::size_t>& a, const std::vector<std::size_t>& b)
{
    return std::includes(b.begin(), b.end(), a.begin(), a.end());
}

} // namespace cesreduce

#endif // CESREDUCE_PARETO_HPP
