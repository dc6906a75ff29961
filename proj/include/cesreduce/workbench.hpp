#ifndef CESREDUCE_WORKBENCH_HPP
#define CESREDUCE_WORKBENCH_HPP

#include <string>
#include <vector>

#include "compare.hpp"
#include "config.hpp"
#include "fuzzy.hpp"
#include "io.hpp"
#include "scalarization.hpp"

/// Scenario-level runs shared by the command line and the HTTP service.
namespace cesreduce {

/// Why a scenario cannot be run: bad data (400-class) or contradictory
/// preferences (422-class).
struct ScenarioCheck {
    ValidationReport invalid;
    std::vector<std::string> inconsistent;

    bool ok() const { return invalid.ok() && inconsistent.empty(); }
};

/// `need_compromise` additionally demands the four gain-over-loss
/// inequalities, which the fuzzy pipeline requires.
inline ScenarioCheck check_scenario(const ScenarioConfig& cfg, std::size_t grid_cap, bool need_confidence,
                                    bool need_compromise)
{
    ScenarioCheck out;
    out.invalid = validate_scenario(cfg, grid_cap, need_confidence);
    if (!out.invalid.ok()) return out;
    const auto pair = cfg.pair();
    out.inconsistent = consistency_violations(pair);
    if (need_compromise)
        for (auto& v : check_natural_compromise(pair)) out.inconsistent.push_back(std::move(v));
    return out;
}

struct CrispRun {
    OracleResult g;
    OracleResult f;
    RayFamily derived;
    RayFamily paper;
    bool g_in_f = false;
    std::size_t rays_in_window = 0;
    std::size_t rays_on_oracle = 0;
};

/// G4 reduction: oracle set, derived and closed-form ray families, and the
/// P_g within P_f check.
inline CrispRun run_crisp(const ScenarioConfig& cfg, std::size_t grid_cap = kDefaultGridCap)
{
    const auto problem = cfg.problem();
    const auto pair = cfg.pair();
    CrispRun run;
    run.g = oracle_pareto(CriteriaKind::G4, pair, problem, cfg.grid, grid_cap);
    run.f = oracle_pareto(CriteriaKind::F3, pair, problem, cfg.grid, grid_cap);
    run.g_in_f = is_subset(run.g.nondominated, run.f.nondominated);
    run.derived = ray_family_sweep(CriteriaKind::G4, pair, problem, cfg.sweep);
    run.paper = ray_family_sweep(CriteriaKind::G4, pair, problem, cfg.sweep, RaySource::PaperEq10);
    const auto mask = run.g.mask();
    for (const auto& ray : run.derived.rays) {
        if (auto x = ray_window_point(cfg.grid, ray.rho)) {
            ++run.rays_in_window;
            run.rays_on_oracle += mask[cfg.grid.nearest(*x)] != 0;
        }
    }
    return run;
}

struct FuzzyRun {
    MembershipMap map;
    NestingReport nesting;
    std::vector<RayFamily> rays;
};

inline FuzzyRun run_fuzzy(const ScenarioConfig& cfg, std::size_t grid_cap = kDefaultGridCap)
{
    const FuzzyScenario scenario(cfg.problem(), cfg.pair(), cfg.grid, grid_cap);
    const auto stages = membership_stages(scenario);
    FuzzyRun run;
    run.map = assemble_membership(scenario, stages);
    run.nesting = nesting_report(scenario, stages, run.map);
    const auto pair = cfg.pair();
    const auto problem = cfg.problem();
    for (auto kind : {CriteriaKind::G4, scenario.second_stage(), CriteriaKind::F3}) {
        run.rays.push_back(ray_family_sweep(kind, pair, problem, cfg.sweep));
        if (auto formula = paper_formula_for(kind))
            run.rays.push_back(ray_family_sweep(kind, pair, problem, cfg.sweep, ray_source(*formula)));
    }
    return run;
}

inline DiscrepancyReport run_compare(const ScenarioConfig& cfg, std::size_t grid_cap = kDefaultGridCap)
{
    CompareScenario s{cfg.problem(), cfg.pair(), cfg.grid, cfg.sweep};
    s.grid_cap = grid_cap;
    return compare_formulas(s);
}

/// f and every recombined criterion at one bundle. The g-family entries
/// are omitted when the quanta are not both-hold consistent.
inline Json evaluate_json(const ScenarioConfig& cfg, const ResourceBundle& x)
{
    const auto problem = cfg.problem();
    const auto pair = cfg.pair();
    const auto f = criteria(problem, x);
    Json j;
    j["k"] = x.K;
    j["l"] = x.L;
    j["Q"] = output(problem.ces, x);
    j["f"] = f.as_vector();
    if (check_consistency(pair) == Consistency::BothHold) j["g"] = build_g(pair, problem).evaluate_from(f);
    j["fbar"] = build_fbar(pair, problem).evaluate_from(f);
    j["fhat"] = build_fhat(pair, problem).evaluate_from(f);
    j["consistency"] = to_string(check_consistency(pair));
    return j;
}

} // namespace cesreduce

#endif // CESREDUCE_WORKBENCH_HPP
