#ifndef CESREDUCE_SCALARIZATION_HPP
#define CESREDUCE_SCALARIZATION_HPP

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "ces.hpp"
#include "quanta.hpp"
#include "sampling.hpp"

namespace cesreduce {

/// Strictly positive weights summing to one.
class SimplexWeights {
public:
    explicit SimplexWeights(std::vector<double> values) : values_(std::move(values))
    {
        if (values_.empty()) throw std::invalid_argument("simplex weights must be nonempty");
        for (double v : values_)
            if (!(v > 0.0)) throw std::invalid_argument("simplex weights must be strictly positive");
        const double s = std::accumulate(values_.begin(), values_.end(), 0.0);
        if (std::abs(s - 1.0) > 1e-12) throw std::invalid_argument("simplex weights must sum to 1");
    }

    static SimplexWeights barycenter(std::size_t k)
    {
        return SimplexWeights(std::vector<double>(k, 1.0 / static_cast<double>(k)));
    }

    std::size_t size() const { return values_.size(); }
    double operator[](std::size_t i) const { return values_[i]; }
    const std::vector<double>& values() const { return values_; }

private:
    std::vector<double> values_;
};

/// phi(K, L) = cK K + cL L + cQ (a K^-r + (1-a) L^-r)^(-1/r); cQ carries F.
struct AggregateCoefficients {
    double cK = -1.0;
    double cL = -1.0;
    double cQ = 1.0;

    bool valid() const { return cK < 0.0 && cL < 0.0 && cQ > 0.0; }
};

inline std::size_t weight_count(CriteriaKind kind) { return component_count(kind); }

/// Scalarized objective of one criteria kind at fixed weights.
class Scalarization {
public:
    Scalarization(AggregateCoefficients coeffs, CesParams ces) : coeffs_(coeffs), ces_(ces) {}

    const AggregateCoefficients& coefficients() const { return coeffs_; }
    const CesParams& ces() const { return ces_; }

    double value(const ResourceBundle& x) const
    {
        return coeffs_.cK * x.K + coeffs_.cL * x.L + coeffs_.cQ * output(unit_ces(), x);
    }

    std::array<double, 2> gradient(const ResourceBundle& x) const
    {
        const auto mp = marginal_products(unit_ces(), x);
        return {coeffs_.cK + coeffs_.cQ * mp.dK, coeffs_.cL + coeffs_.cQ * mp.dL};
    }

    Scalarization with_cq(double cQ) const { return Scalarization({coeffs_.cK, coeffs_.cL, cQ}, ces_); }

private:
    CesParams unit_ces() const { return {1.0, ces_.a, ces_.r}; }

    AggregateCoefficients coeffs_;
    CesParams ces_;
};

/// Collapses sum_i lambda_i * criterion_i into (cK, cL, cQ).
inline AggregateCoefficients aggregate_coefficients(CriteriaKind kind, const PreferencePair& pair,
                                                    const EconomicProblem& problem,
                                                    const SimplexWeights& lambda)
{
    if (lambda.size() != weight_count(kind))
        throw std::invalid_argument(std::string("scalarization of ") + to_string(kind) + " needs " +
                                    std::to_string(weight_count(kind)) + " weights");
    const auto& p = problem.prices;
    const double F = problem.ces.F;
    const auto& u = pair.first();
    const auto& v = pair.second();
    switch (kind) {
    case CriteriaKind::G4:
        return {-p.pK * (lambda[0] * u.w3 + lambda[2] * v.w3),
                -p.pL * (lambda[1] * u.w3 + lambda[3] * v.w3),
                p.pQ * F * (lambda[0] * u.w1 + lambda[1] * u.w2 + lambda[2] * v.w1 + lambda[3] * v.w2)};
    case CriteriaKind::FBAR4:
        return {-p.pK * (lambda[0] + lambda[2] * u.w3),
                -p.pL * (lambda[1] + lambda[3] * u.w3),
                p.pQ * F * (lambda[2] * u.w1 + lambda[3] * u.w2)};
    case CriteriaKind::FHAT3:
        return {-p.pK * v.w3 * lambda[0],
                -p.pL * v.w3 * lambda[1],
                p.pQ * F * (lambda[0] * v.w1 + lambda[1] * v.w2 + lambda[2])};
    case CriteriaKind::F3:
        return {-lambda[0] * p.pK, -lambda[1] * p.pL, lambda[2] * p.pQ * F};
    }
    throw std::logic_error("unreachable criteria kind");
}

inline Scalarization scalarization(CriteriaKind kind, const PreferencePair& pair,
                                   const EconomicProblem& problem, const SimplexWeights& lambda)
{
    return Scalarization(aggregate_coefficients(kind, pair, problem, lambda), problem.ces);
}

/// Ray L = rho K on which the scalarized gradient is parallel to (|cK|, |cL|),
/// with the cQ that makes it exactly stationary.
struct StationaryRay {
    double rho = 1.0;
    double required_cq = 0.0;
    /// cQ - required_cq; zero iff the supplied objective is stationary on the ray.
    double compat_residual = 0.0;
    double compat_relative = 0.0;
};

/// Coefficient of cQ in dphi/dK along the ray L = rho K (F = 1).
inline double ray_capital_slope(const CesParams& ces, double rho)
{
    return marginal_products({1.0, ces.a, ces.r}, {1.0, rho}).dK;
}

/// Empty when the objective has no interior stationary ray (r = 0 or sign
/// invariants broken).
inline std::optional<StationaryRay> stationary_ray_derived(const AggregateCoefficients& coeffs,
                                                           const CesParams& ces)
{
    if (ces.r == 0.0 || !coeffs.valid()) return std::nullopt;
    const double a = ces.a;
    const double ratio = ((1.0 - a) * std::abs(coeffs.cK)) / (a * std::abs(coeffs.cL));
    const double rho = std::exp(std::log(ratio) / (1.0 + ces.r));
    if (!(rho > 0.0) || !std::isfinite(rho)) return std::nullopt;
    const double required = std::abs(coeffs.cK) / ray_capital_slope(ces, rho);
    if (!(required > 0.0) || !std::isfinite(required)) return std::nullopt;
    StationaryRay ray;
    ray.rho = rho;
    ray.required_cq = required;
    ray.compat_residual = coeffs.cQ - required;
    ray.compat_relative = ray.compat_residual / required;
    return ray;
}

/// Published closed-form ray formulas, evaluated verbatim. One per problem:
/// Eq10 for g, Eq12 for f-bar, Eq15 for f.
enum class PaperFormula { Eq10, Eq12, Eq15 };

inline const char* to_string(PaperFormula f)
{
    switch (f) {
    case PaperFormula::Eq10: return "PAPER_EQ10";
    case PaperFormula::Eq12: return "PAPER_EQ12";
    case PaperFormula::Eq15: return "PAPER_EQ15";
    }
    return "?";
}

inline std::optional<PaperFormula> paper_formula_for(CriteriaKind kind)
{
    switch (kind) {
    case CriteriaKind::G4: return PaperFormula::Eq10;
    case CriteriaKind::FBAR4: return PaperFormula::Eq12;
    case CriteriaKind::F3: return PaperFormula::Eq15;
    case CriteriaKind::FHAT3: return std::nullopt;
    }
    return std::nullopt;
}

/// All three formulas share the shape
///   rho = ( ((1-a) num / (a den))^(-r/(1+r)) - a/(1-a) )^(-1/r).
struct PaperRatioTerms {
    PaperFormula which = PaperFormula::Eq10;
    double numerator = 1.0;
    double denominator = 1.0;
};

inline PaperRatioTerms paper_ratio_terms(PaperFormula which, const PreferencePair& pair,
                                         const EconomicProblem& problem, const SimplexWeights& lambda)
{
    const auto& p = problem.prices;
    const auto& u = pair.first();
    switch (which) {
    case PaperFormula::Eq10: {
        const auto c = aggregate_coefficients(CriteriaKind::G4, pair, problem, lambda);
        return {which, c.cK, c.cL};
    }
    case PaperFormula::Eq12:
        if (lambda.size() != 4) throw std::invalid_argument("Eq12 needs 4 weights");
        // Numerator pairs p_K with the L-side weights.
        return {which, p.pK * (lambda[1] + lambda[3] * u.w3), p.pL * (lambda[0] + lambda[2] * u.w3)};
    case PaperFormula::Eq15:
        if (lambda.size() != 3) throw std::invalid_argument("Eq15 needs 3 weights");
        return {which, p.pK * lambda[0], p.pL * lambda[1]};
    }
    throw std::logic_error("unreachable ray formula");
}

struct PaperRay {
    PaperFormula which = PaperFormula::Eq10;
    /// The bracketed base before the outer ^(-1/r).
    double inner = 0.0;
    std::optional<double> rho;

    bool domain_failure() const { return !rho.has_value(); }
};

inline PaperRay stationary_ray_paper(const PaperRatioTerms& terms, const CesParams& ces)
{
    PaperRay out;
    out.which = terms.which;
    const double a = ces.a;
    const double r = ces.r;
    const double base = ((1.0 - a) * terms.numerator) / (a * terms.denominator);
    if (r == 0.0 || !(base > 0.0) || !std::isfinite(base)) {
        out.inner = std::numeric_limits<double>::quiet_NaN();
        return out;
    }
    out.inner = std::pow(base, -r / (1.0 + r)) - a / (1.0 - a);
    if (!(out.inner > 0.0)) return out;
    const double rho = std::pow(out.inner, -1.0 / r);
    if (rho > 0.0 && std::isfinite(rho)) out.rho = rho;
    return out;
}

/// Eq10 reads (lambda-bar_1, lambda-bar_2) = (cK, cL); Eq15 reads
/// (p_K lambda_01, p_L lambda_02) = (|cK|, |cL|) of the F3 scalarization.
/// Eq12 is not recoverable from collapsed coefficients.
inline PaperRay stationary_ray_paper(const AggregateCoefficients& coeffs, const CesParams& ces,
                                     PaperFormula which)
{
    switch (which) {
    case PaperFormula::Eq10: return stationary_ray_paper(PaperRatioTerms{which, coeffs.cK, coeffs.cL}, ces);
    case PaperFormula::Eq15:
        return stationary_ray_paper(PaperRatioTerms{which, std::abs(coeffs.cK), std::abs(coeffs.cL)}, ces);
    case PaperFormula::Eq12: break;
    }
    throw std::invalid_argument("Eq12 needs the weights; use paper_ratio_terms");
}

enum class RaySource { Derived, PaperEq10, PaperEq12, PaperEq15 };

inline const char* to_string(RaySource s)
{
    switch (s) {
    case RaySource::Derived: return "DERIVED";
    case RaySource::PaperEq10: return "PAPER_EQ10";
    case RaySource::PaperEq12: return "PAPER_EQ12";
    case RaySource::PaperEq15: return "PAPER_EQ15";
    }
    return "?";
}

inline RaySource ray_source(PaperFormula f)
{
    switch (f) {
    case PaperFormula::Eq10: return RaySource::PaperEq10;
    case PaperFormula::Eq12: return RaySource::PaperEq12;
    case PaperFormula::Eq15: return RaySource::PaperEq15;
    }
    return RaySource::Derived;
}

struct SweepSpec {
    std::size_t samples = 500;
    std::uint64_t seed = 42;

    bool operator==(const SweepSpec&) const = default;
};

struct RayEntry {
    double rho = 1.0;
    std::vector<double> weights;
};

struct RayFamily {
    RaySource source = RaySource::Derived;
    CriteriaKind kind = CriteriaKind::G4;
    std::vector<RayEntry> rays; // ascending rho
    double min_ratio = 0.0;
    double max_ratio = 0.0;
    std::size_t attempted = 0;
    std::size_t domain_failures = 0;
};

inline std::vector<SimplexWeights> sweep_weights(CriteriaKind kind, const SweepSpec& sweep)
{
    if (sweep.samples < 10) throw std::invalid_argument("sweep needs at least 10 samples");
    std::vector<SimplexWeights> out;
    for (auto& w : simplex_samples(weight_count(kind), sweep.samples, sweep.seed))
        out.emplace_back(std::move(w));
    return out;
}

/// Ratios for every swept weight vector. Closed-form domain failures are
/// counted, not raised.
inline RayFamily ray_family_sweep(CriteriaKind kind, const PreferencePair& pair,
                                  const EconomicProblem& problem, const SweepSpec& sweep,
                                  RaySource source = RaySource::Derived)
{
    RayFamily fam;
    fam.source = source;
    fam.kind = kind;
    std::optional<PaperFormula> formula;
    if (source != RaySource::Derived) {
        formula = paper_formula_for(kind);
        if (!formula || ray_source(*formula) != source)
            throw std::invalid_argument(std::string(to_string(source)) + " does not describe " + to_string(kind));
    }
    for (const auto& lambda : sweep_weights(kind, sweep)) {
        ++fam.attempted;
        std::optional<double> rho;
        if (formula) {
            const auto ray = stationary_ray_paper(paper_ratio_terms(*formula, pair, problem, lambda), problem.ces);
            rho = ray.rho;
        } else if (auto ray = stationary_ray_derived(aggregate_coefficients(kind, pair, problem, lambda),
                                                     problem.ces)) {
            rho = ray->rho;
        }
        if (!rho) {
            ++fam.domain_failures;
            continue;
        }
        fam.rays.push_back({*rho, lambda.values()});
    }
    std::stable_sort(fam.rays.begin(), fam.rays.end(),
                     [](const RayEntry& x, const RayEntry& y) { return x.rho < y.rho; });
    if (!fam.rays.empty()) {
        fam.min_ratio = fam.rays.front().rho;
        fam.max_ratio = fam.rays.back().rho;
    }
    return fam;
}

} // namespace cesreduce

#endif // CESREDUCE_SCALARIZATION_HPP
