#ifndef CESREDUCE_FUZZY_HPP
#define CESREDUCE_FUZZY_HPP

#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

#include "pareto.hpp"
#include "quanta.hpp"

namespace cesreduce {

enum class Tier { Core, Mid, Outer };

inline const char* to_string(Tier t)
{
    switch (t) {
    case Tier::Core: return "CORE";
    case Tier::Mid: return "MID";
    case Tier::Outer: return "OUTER";
    }
    return "?";
}

/// Two fuzzy quanta over a gridded economic problem. Both confidences must
/// be present and the pair must satisfy the natural-compromise inequalities.
class FuzzyScenario {
public:
    FuzzyScenario(EconomicProblem problem, PreferencePair pair, GridSpec grid,
                  std::size_t grid_cap = kDefaultGridCap)
        : problem_(problem), pair_(std::move(pair)), grid_(grid), cap_(grid_cap)
    {
        if (!pair_.first().mu || !pair_.second().mu)
            throw std::invalid_argument("fuzzy scenario needs confidences mu1 and mu2");
        if (!validate_params(problem_.ces, problem_.prices).ok())
            throw std::invalid_argument("fuzzy scenario: invalid economic problem");
        if (const auto v = check_natural_compromise(pair_); !v.empty())
            throw std::invalid_argument("fuzzy scenario violates natural compromise: " + v.front());
        if (const auto r = grid_.validate(cap_); !r.ok())
            throw std::invalid_argument("fuzzy scenario: invalid grid: " + r.violations.front().inequality);
    }

    const EconomicProblem& problem() const { return problem_; }
    const PreferencePair& pair() const { return pair_; }
    const GridSpec& grid() const { return grid_; }
    std::size_t grid_cap() const { return cap_; }
    double mu1() const { return *pair_.first().mu; }
    double mu2() const { return *pair_.second().mu; }

    /// mu1 >= mu2 goes through f-bar; mu1 < mu2 through f-hat.
    bool first_dominant() const { return mu1() >= mu2(); }
    CriteriaKind second_stage() const { return first_dominant() ? CriteriaKind::FBAR4 : CriteriaKind::FHAT3; }
    double mid_value() const { return first_dominant() ? 1.0 - mu2() : 1.0 - mu1(); }
    double outer_value() const { return first_dominant() ? 1.0 - mu1() : 1.0 - mu2(); }

private:
    EconomicProblem problem_;
    PreferencePair pair_;
    GridSpec grid_;
    std::size_t cap_;
};

struct MembershipMap {
    GridSpec grid;
    std::vector<Tier> tiers;
    std::vector<double> values;

    std::size_t count(Tier t) const
    {
        std::size_t n = 0;
        for (auto x : tiers) n += (x == t);
        return n;
    }
};

struct MembershipStages {
    OracleResult full;   // F3: every node
    OracleResult second; // FBAR4 or FHAT3
    OracleResult core;   // G4
};

inline MembershipStages membership_stages(const FuzzyScenario& s)
{
    return {oracle_pareto(CriteriaKind::F3, s.pair(), s.problem(), s.grid(), s.grid_cap()),
            oracle_pareto(s.second_stage(), s.pair(), s.problem(), s.grid(), s.grid_cap()),
            oracle_pareto(CriteriaKind::G4, s.pair(), s.problem(), s.grid(), s.grid_cap())};
}

/// Assembles the map from precomputed stages: start every Pareto node at 1,
/// demote nodes outside the second-stage set to OUTER and nodes inside it
/// but outside the G4 set to MID.
inline MembershipMap assemble_membership(const FuzzyScenario& s, const MembershipStages& st)
{
    MembershipMap m;
    m.grid = s.grid();
    const auto n = s.grid().size();
    const auto in_full = st.full.mask();
    const auto in_second = st.second.mask();
    const auto in_core = st.core.mask();
    m.tiers.resize(n, Tier::Core);
    m.values.resize(n, 1.0);
    for (std::size_t i = 0; i < n; ++i) {
        if (!in_full[i]) {
            // Outside P_f entirely; cannot happen for the CES criteria.
            m.tiers[i] = Tier::Outer;
            m.values[i] = 0.0;
        } else if (!in_second[i]) {
            m.tiers[i] = Tier::Outer;
            m.values[i] = s.outer_value();
        } else if (!in_core[i]) {
            m.tiers[i] = Tier::Mid;
            m.values[i] = s.mid_value();
        }
    }
    return m;
}

inline MembershipMap build_membership(const FuzzyScenario& s)
{
    return assemble_membership(s, membership_stages(s));
}

struct PointClassification {
    Tier tier = Tier::Core;
    double value = 1.0;
    std::size_t node = 0;
    double snap_distance = 0.0;
};

inline PointClassification classify_point(const MembershipMap& map, const ResourceBundle& x)
{
    const auto idx = map.grid.nearest(x);
    const auto nx = map.grid.node(idx);
    return {map.tiers[idx], map.values[idx], idx, std::hypot(nx.K - x.K, nx.L - x.L)};
}

inline PointClassification classify_point(const FuzzyScenario& s, const ResourceBundle& x)
{
    if (!s.grid().contains(x)) throw std::out_of_range("bundle lies outside the grid window");
    return classify_point(build_membership(s), x);
}

struct NestingReport {
    CriteriaKind second_stage = CriteriaKind::FBAR4;
    std::size_t grid_size = 0;
    std::size_t full_size = 0;
    std::size_t second_size = 0;
    std::size_t core_size = 0;
    bool core_in_second = false;
    bool second_in_full = false;
    bool full_is_grid = false;
    bool upper_bound_holds = false;  // lambda_M <= 1 everywhere
    bool core_exactly_one = false;   // lambda_M == 1 exactly on the core
    bool partition = false;
    std::size_t core = 0;
    std::size_t mid = 0;
    std::size_t outer = 0;
    std::vector<std::string> failures;

    bool ok() const { return failures.empty(); }
};

inline NestingReport nesting_report(const FuzzyScenario& s, const MembershipStages& st, const MembershipMap& map)
{
    NestingReport r;
    r.second_stage = s.second_stage();
    r.grid_size = s.grid().size();
    r.full_size = st.full.nondominated.size();
    r.second_size = st.second.nondominated.size();
    r.core_size = st.core.nondominated.size();
    r.core_in_second = is_subset(st.core.nondominated, st.second.nondominated);
    r.second_in_full = is_subset(st.second.nondominated, st.full.nondominated);
    r.full_is_grid = r.full_size == r.grid_size;
    r.core = map.count(Tier::Core);
    r.mid = map.count(Tier::Mid);
    r.outer = map.count(Tier::Outer);
    r.partition = r.core + r.mid + r.outer == r.grid_size;

    const auto in_core = st.core.mask();
    // A zero confidence leaves demoted nodes at 1, so "one only on the core"
    // is checked only when both demotion values are below 1.
    const bool strict = s.mid_value() < 1.0 && s.outer_value() < 1.0;
    r.upper_bound_holds = true;
    r.core_exactly_one = true;
    for (std::size_t i = 0; i < map.values.size(); ++i) {
        const double v = map.values[i];
        if (!(v >= 0.0 && v <= 1.0)) r.upper_bound_holds = false;
        if (in_core[i] && v != 1.0) r.core_exactly_one = false;
        if (strict && !in_core[i] && v == 1.0) r.core_exactly_one = false;
    }

    if (!r.core_in_second) r.failures.emplace_back(std::string("G4 set not inside ") + to_string(r.second_stage) + " set");
    if (!r.second_in_full) r.failures.emplace_back(std::string(to_string(r.second_stage)) + " set not inside F3 set");
    if (!r.full_is_grid) r.failures.emplace_back("F3 set is not the whole grid");
    if (!r.upper_bound_holds) r.failures.emplace_back("membership exceeds the Pareto bound");
    if (!r.core_exactly_one) r.failures.emplace_back("membership 1 does not coincide with the G4 set");
    if (!r.partition) r.failures.emplace_back("tiers do not partition the grid");
    if (r.core != r.core_size || r.core + r.mid != r.second_size)
        r.failures.emplace_back("tier cardinalities disagree with the stage sets");
    return r;
}

/// Recomputes all three stage sets and checks the inclusion chain and the
/// membership bounds. Violations are listed, never thrown.
inline NestingReport verify_nesting(const FuzzyScenario& s)
{
    const auto st = membership_stages(s);
    return nesting_report(s, st, assemble_membership(s, st));
}

} // namespace cesreduce

#endif // CESREDUCE_FUZZY_HPP
