#ifndef CESREDUCE_CES_HPP
#define CESREDUCE_CES_HPP

#include <cmath>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

/// CES production technology and the three-criterion economic problem.
namespace cesreduce {

/// Technology (F, a, r). Elasticity of substitution is 1/(1+r).
struct CesParams {
    double F = 1.0;
    double a = 0.5;
    double r = 1.0;

    double elasticity() const { return 1.0 / (1.0 + r); }
    bool operator==(const CesParams&) const = default;
};

struct Prices {
    double pK = 1.0;
    double pL = 1.0;
    double pQ = 1.0;

    bool operator==(const Prices&) const = default;
};

/// A point of the feasible set X (open positive quadrant).
struct ResourceBundle {
    double K = 1.0;
    double L = 1.0;
};

/// f1 = -pK*K, f2 = -pL*L, f3 = pQ*Q.
struct CriteriaVector {
    double f1 = 0.0;
    double f2 = 0.0;
    double f3 = 0.0;

    std::vector<double> as_vector() const { return {f1, f2, f3}; }
};

struct EconomicProblem {
    CesParams ces;
    Prices prices;

    bool operator==(const EconomicProblem&) const = default;
};

struct Violation {
    std::string field;
    std::string inequality;
};

struct ValidationReport {
    std::vector<Violation> violations;

    bool ok() const { return violations.empty(); }
    void add(std::string field, std::string inequality)
    {
        violations.push_back({std::move(field), std::move(inequality)});
    }
};

/// Checks the neoclassical conditions and price positivity. r = 0 is allowed
/// here; direct evaluation rejects it separately.
inline ValidationReport validate_params(const CesParams& params, const Prices& prices)
{
    ValidationReport report;
    // Written as negated comparisons so NaN fails every check.
    if (!(params.F > 0.0)) report.add("ces.F", "F > 0");
    if (!(params.a > 0.0)) report.add("ces.a", "a > 0");
    if (!(params.a < 1.0)) report.add("ces.a", "a < 1");
    if (!(params.r > -1.0)) report.add("ces.r", "r > -1");
    if (!std::isfinite(params.F)) report.add("ces.F", "F finite");
    if (!std::isfinite(params.r)) report.add("ces.r", "r finite");
    if (!(prices.pK > 0.0) || !std::isfinite(prices.pK)) report.add("prices.pK", "pK > 0");
    if (!(prices.pL > 0.0) || !std::isfinite(prices.pL)) report.add("prices.pL", "pL > 0");
    if (!(prices.pQ > 0.0) || !std::isfinite(prices.pQ)) report.add("prices.pQ", "pQ > 0");
    return report;
}

inline bool valid_bundle(const ResourceBundle& x)
{
    return x.K > 0.0 && x.L > 0.0 && std::isfinite(x.K) && std::isfinite(x.L);
}

namespace detail {

inline void require_evaluable(const CesParams& params, const ResourceBundle& x)
{
    if (params.r == 0.0)
        throw std::domain_error("CES output is undefined at r = 0; use cobb_douglas_limit");
    if (!validate_params(params, Prices{}).ok())
        throw std::invalid_argument("CES parameters violate F > 0, 0 < a < 1, r > -1");
    if (!valid_bundle(x))
        throw std::invalid_argument("resource bundle must satisfy K > 0, L > 0");
}

// (a + (1-a) * ratio^(-r))^(-s), evaluated through log1p/expm1 so that
// extreme ratios or |r| do not overflow before the outer power.
inline double ces_ratio_power(double a, double r, double ratio, double s)
{
    const double t = -r * std::log(ratio); // log(ratio^(-r))
    const double lw = std::log1p(-a);       // log(1-a)
    const double la = std::log(a);
    // log(a + (1-a) e^t) computed as a stable log-sum-exp
    const double u = lw + t;
    const double hi = std::max(la, u);
    const double lse = hi + std::log(std::exp(la - hi) + std::exp(u - hi));
    return std::exp(-s * lse);
}

} // namespace detail

/// Q = F (a K^-r + (1-a) L^-r)^(-1/r), evaluated as
/// F K (a + (1-a)(L/K)^-r)^(-1/r).
inline double output(const CesParams& params, const ResourceBundle& x)
{
    detail::require_evaluable(params, x);
    return params.F * x.K * detail::ces_ratio_power(params.a, params.r, x.L / x.K, 1.0 / params.r);
}

/// Q = F K^a L^(1-a), the r -> 0 limit.
inline double cobb_douglas_limit(const CesParams& params, const ResourceBundle& x)
{
    if (!(params.F > 0.0) || !(params.a > 0.0) || !(params.a < 1.0))
        throw std::invalid_argument("CES parameters violate F > 0, 0 < a < 1");
    if (!valid_bundle(x))
        throw std::invalid_argument("resource bundle must satisfy K > 0, L > 0");
    return params.F * std::exp(params.a * std::log(x.K) + (1.0 - params.a) * std::log(x.L));
}

inline CriteriaVector criteria(const EconomicProblem& problem, const ResourceBundle& x)
{
    if (!validate_params(problem.ces, problem.prices).ok())
        throw std::invalid_argument("economic problem violates its parameter invariants");
    return {-problem.prices.pK * x.K, -problem.prices.pL * x.L,
            problem.prices.pQ * output(problem.ces, x)};
}

struct MarginalProducts {
    double dK = 0.0;
    double dL = 0.0;
};

/// dQ/dK = F a (a + (1-a)(L/K)^-r)^(-(1+r)/r),
/// dQ/dL = F (1-a) (a (K/L)^-r + (1-a))^(-(1+r)/r).
inline MarginalProducts marginal_products(const CesParams& params, const ResourceBundle& x)
{
    detail::require_evaluable(params, x);
    const double a = params.a;
    const double r = params.r;
    const double s = (1.0 + r) / r;
    const double dK = params.F * a * detail::ces_ratio_power(a, r, x.L / x.K, s);
    // a (K/L)^-r + (1-a) with roles swapped: share 1-a on the unit term.
    const double dL = params.F * (1.0 - a) * detail::ces_ratio_power(1.0 - a, r, x.K / x.L, s);
    return {dK, dL};
}

} // namespace cesreduce

#endif // CESREDUCE_CES_HPP
