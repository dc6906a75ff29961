#ifndef CESREDUCE_IO_HPP
#define CESREDUCE_IO_HPP

#include <ostream>
#include <span>
#include <string>

#include "compare.hpp"
#include "config.hpp"
#include "fuzzy.hpp"
#include "numeric.hpp"
#include "scalarization.hpp"

// Every number goes through format_double so files are bit-stable.
namespace cesreduce {

inline void write_membership_csv(std::ostream& os, const MembershipMap& m)
{
    os << "k,l,tier,lambda\n";
    for (std::size_t i = 0; i < m.values.size(); ++i) {
        const auto x = m.grid.node(i);
        os << format_double(x.K) << ',' << format_double(x.L) << ',' << to_string(m.tiers[i]) << ','
           << format_double(m.values[i]) << '\n';
    }
}

inline void write_membership_jsonl(std::ostream& os, const MembershipMap& m)
{
    for (std::size_t i = 0; i < m.values.size(); ++i) {
        const auto x = m.grid.node(i);
        os << "{\"k\":" << format_double(x.K) << ",\"l\":" << format_double(x.L) << ",\"tier\":\""
           << to_string(m.tiers[i]) << "\",\"lambda\":" << format_double(m.values[i]) << "}\n";
    }
}

inline void write_membership(std::ostream& os, const MembershipMap& m, OutputFormat f)
{
    f == OutputFormat::Csv ? write_membership_csv(os, m) : write_membership_jsonl(os, m);
}

/// Columns source,kind,rho,lambda1..lambda4; lambda4 empty for 3-weight kinds.
inline void write_rays_csv_header(std::ostream& os)
{
    os << "source,kind,rho,lambda1,lambda2,lambda3,lambda4\n";
}

inline void write_rays_csv_rows(std::ostream& os, const RayFamily& fam)
{
    for (const auto& ray : fam.rays) {
        os << to_string(fam.source) << ',' << to_string(fam.kind) << ',' << format_double(ray.rho);
        for (std::size_t i = 0; i < 4; ++i) {
            os << ',';
            if (i < ray.weights.size()) os << format_double(ray.weights[i]);
        }
        os << '\n';
    }
}

inline void write_rays_jsonl_rows(std::ostream& os, const RayFamily& fam)
{
    for (const auto& ray : fam.rays) {
        os << "{\"source\":\"" << to_string(fam.source) << "\",\"kind\":\"" << to_string(fam.kind)
           << "\",\"rho\":" << format_double(ray.rho) << ",\"lambda\":[";
        for (std::size_t i = 0; i < ray.weights.size(); ++i)
            os << (i ? "," : "") << format_double(ray.weights[i]);
        os << "]}\n";
    }
}

inline void write_oracle_csv(std::ostream& os, const OracleResult& res)
{
    const auto mask = res.mask();
    os << "k,l,kind,nondominated\n";
    for (std::size_t i = 0; i < mask.size(); ++i) {
        const auto x = res.grid.node(i);
        os << format_double(x.K) << ',' << format_double(x.L) << ',' << to_string(res.kind) << ','
           << (mask[i] ? 1 : 0) << '\n';
    }
}

inline void write_oracle_jsonl(std::ostream& os, const OracleResult& res)
{
    const auto mask = res.mask();
    for (std::size_t i = 0; i < mask.size(); ++i) {
        const auto x = res.grid.node(i);
        os << "{\"k\":" << format_double(x.K) << ",\"l\":" << format_double(x.L) << ",\"kind\":\""
           << to_string(res.kind) << "\",\"nondominated\":" << (mask[i] ? "true" : "false") << "}\n";
    }
}

inline Json to_json(const RayFamily& fam)
{
    Json j;
    j["source"] = to_string(fam.source);
    j["kind"] = to_string(fam.kind);
    j["attempted"] = fam.attempted;
    j["domainFailures"] = fam.domain_failures;
    j["minRatio"] = fam.min_ratio;
    j["maxRatio"] = fam.max_ratio;
    Json rho = Json::array();
    Json weights = Json::array();
    for (const auto& r : fam.rays) {
        rho.push_back(r.rho);
        weights.push_back(r.weights);
    }
    j["rho"] = std::move(rho);
    j["lambda"] = std::move(weights);
    return j;
}

namespace detail {

template <typename T>
Json opt(const std::optional<T>& v)
{
    return v ? Json(*v) : Json(nullptr);
}

inline Json finite_or_null(double v) { return std::isfinite(v) ? Json(v) : Json(nullptr); }

} // namespace detail

inline Json to_json(const DiscrepancyReport& r)
{
    Json j;
    j["agreementPct"] = r.agreement_pct;
    j["maxGradResidual"] = r.max_grad_residual;
    j["domainFailures"] = r.domain_failures;
    Json onOracle = Json::object();
    for (const auto& [kind, tally] : r.derived_on_oracle)
        onOracle[to_string(kind)] = {{"nondominated", tally.first}, {"inWindow", tally.second}};
    j["derivedOnOracle"] = std::move(onOracle);
    Json rows = Json::array();
    for (const auto& row : r.rows) {
        Json o;
        o["kind"] = to_string(row.kind);
        o["formula"] = to_string(row.formula);
        o["lambda"] = row.weights;
        o["paperInner"] = detail::finite_or_null(row.paper.inner);
        o["paperRho"] = detail::opt(row.paper.rho);
        o["domainFailure"] = row.paper.domain_failure();
        o["derivedRho"] = row.derived ? Json(row.derived->rho) : Json(nullptr);
        o["requiredCQ"] = row.derived ? Json(row.derived->required_cq) : Json(nullptr);
        o["compatResidual"] = row.derived ? Json(row.derived->compat_residual) : Json(nullptr);
        o["derivedGradResidual"] = detail::opt(row.derived_grad_residual);
        o["paperGradResidual"] = detail::opt(row.paper_grad_residual);
        o["agree"] = row.agree;
        o["derivedNondominated"] = detail::opt(row.derived_nondominated);
        o["paperNondominated"] = detail::opt(row.paper_nondominated);
        rows.push_back(std::move(o));
    }
    j["rows"] = std::move(rows);
    return j;
}

inline Json to_json(const NestingReport& r)
{
    Json j;
    j["secondStage"] = to_string(r.second_stage);
    j["gridSize"] = r.grid_size;
    j["sizes"] = {{"F3", r.full_size}, {to_string(r.second_stage), r.second_size}, {"G4", r.core_size}};
    j["inclusions"] = {{"G4_in_second", r.core_in_second},
                       {"second_in_F3", r.second_in_full},
                       {"F3_is_grid", r.full_is_grid}};
    j["upperBound"] = r.upper_bound_holds;
    j["oneExactlyOnCore"] = r.core_exactly_one;
    j["tiers"] = {{"CORE", r.core}, {"MID", r.mid}, {"OUTER", r.outer}};
    j["failures"] = r.failures;
    return j;
}

inline Json violations_json(const std::vector<Violation>& v)
{
    Json arr = Json::array();
    for (const auto& x : v) arr.push_back({{"field", x.field}, {"violation", x.inequality}});
    return arr;
}

} // namespace cesreduce

#endif // CESREDUCE_IO_HPP
