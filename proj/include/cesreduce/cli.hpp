#ifndef CESREDUCE_CLI_HPP
#define CESREDUCE_CLI_HPP

#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "service.hpp"
#include "workbench.hpp"

namespace cesreduce {

enum ExitCode : int { kExitOk = 0, kExitValidation = 1, kExitUsage = 2 };

struct CliOverrides {
    std::optional<std::uint64_t> seed;
    std::optional<std::size_t> grid_n;
    std::optional<std::string> out_dir;
    std::optional<std::string> format;

    void apply(ScenarioConfig& cfg) const
    {
        if (seed) cfg.sweep.seed = *seed;
        if (grid_n) cfg.grid.nK = cfg.grid.nL = *grid_n;
        if (out_dir) cfg.output.dir = *out_dir;
        if (format) cfg.output.format = parse_output_format(*format);
    }
};

namespace detail {

inline void print_report(std::ostream& out, const ValidationReport& r)
{
    for (const auto& v : r.violations) out << "  violated: " << v.field << ": " << v.inequality << '\n';
}

inline std::filesystem::path output_file(const ScenarioConfig& cfg, const std::string& stem)
{
    std::filesystem::path dir(cfg.output.dir);
    std::filesystem::create_directories(dir);
    return dir / (stem + (cfg.output.format == OutputFormat::Csv ? ".csv" : ".jsonl"));
}

inline std::ofstream open_out(const std::filesystem::path& p)
{
    std::ofstream os(p, std::ios::binary);
    if (!os) throw std::runtime_error("cannot write " + p.string());
    return os;
}

inline void print_vector(std::ostream& out, const std::string& name, const std::vector<double>& v)
{
    out << name << " = (";
    for (std::size_t i = 0; i < v.size(); ++i) out << (i ? ", " : "") << format_double(v[i]);
    out << ")\n";
}

} // namespace detail

/// Entry point of the `cesreduce` tool. Results go to `out`, diagnostics
/// to `err`. Returns 0 on success, 1 on validation failure, 2 on usage
/// errors.
inline int run_cli(int argc, const char* const* argv, std::ostream& out = std::cout, std::ostream& err = std::cerr)
{
    CLI::App app{"CES Pareto-set reduction workbench", "cesreduce"};
    app.require_subcommand(1);
    app.fallthrough();

    std::string config_path;
    CliOverrides ov;
    std::optional<double> k_flag, l_flag;
    std::optional<std::string> emit_normalized;
    std::string kind_name = "G4";
    int port = 8080;
    std::size_t grid_cap = kDefaultGridCap;
    int max_in_flight = 2;

    app.add_option("--config", config_path, "Scenario configuration file");
    app.add_option("--seed", ov.seed, "Override sweep.seed");
    app.add_option("--grid-n", ov.grid_n, "Override grid.nK and grid.nL");
    app.add_option("--out", ov.out_dir, "Override output.dir");
    app.add_option("--format", ov.format, "Override output.format")->check(CLI::IsMember({"csv", "jsonl"}));
    app.add_option("--grid-cap", grid_cap, "Largest admissible nK*nL");

    auto* validate = app.add_subcommand("validate", "Run every invariant check and print a report");
    validate->add_option("--emit-normalized", emit_normalized, "Write the normalized configuration to PATH");
    auto* evaluate = app.add_subcommand("evaluate", "Print f and the derived criteria at one bundle");
    evaluate->add_option("--k", k_flag, "Capital K")->required();
    evaluate->add_option("--l", l_flag, "Labor L")->required();
    auto* crisp = app.add_subcommand("reduce-crisp", "G4 reduction: ray sweep, oracle, inclusion check");
    auto* fuzzy = app.add_subcommand("reduce-fuzzy", "Fuzzy membership map over the grid");
    auto* oracle = app.add_subcommand("oracle", "Standalone dominance filter for one criteria kind");
    oracle->add_option("--kind", kind_name, "F3, G4, FBAR4 or FHAT3")
        ->check(CLI::IsMember({"F3", "G4", "FBAR4", "FHAT3"}));
    auto* compare = app.add_subcommand("compare-formulas", "Closed-form versus derived ray discrepancy report");
    auto* serve = app.add_subcommand("serve", "Start the HTTP service");
    serve->add_option("--port", port, "Listen port")->check(CLI::Range(1, 65535));
    serve->add_option("--max-in-flight", max_in_flight, "Concurrent reduce computations")->check(CLI::PositiveNumber);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        out << app.help();
        return kExitOk;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << '\n' << "run with --help for usage\n";
        return kExitUsage;
    }

    if (serve->parsed()) {
        out << "serving on port " << port << std::endl;
        const bool ok = run_service(port, {grid_cap, max_in_flight});
        if (!ok) err << "error: could not listen on port " << port << '\n';
        return ok ? kExitOk : kExitUsage;
    }

    if (config_path.empty()) {
        err << "error: --config is required\n";
        return kExitUsage;
    }
    ScenarioConfig cfg;
    try {
        cfg = load_config(config_path);
        ov.apply(cfg);
    } catch (const ConfigError& e) {
        err << e.what() << '\n';
        return kExitValidation;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return kExitUsage;
    }

    try {
        const auto report = validate_scenario(cfg, grid_cap);
        if (validate->parsed()) {
            bool ok = report.ok();
            out << "parameters: " << (report.ok() ? "ok" : "FAILED") << '\n';
            detail::print_report(out, report);
            if (report.ok()) {
                const auto pair = cfg.pair();
                const auto consistency = check_consistency(pair);
                out << "consistency: " << to_string(consistency) << '\n';
                const auto nc = check_natural_compromise(pair);
                out << "natural compromise: " << (nc.empty() ? "ok" : "FAILED") << '\n';
                for (const auto& v : nc) out << "  violated: " << v << '\n';
                if (cfg.ces.r == 0.0) out << "note: r = 0 needs the Cobb-Douglas limit; CES evaluation is disabled\n";
                ok = ok && consistency == Consistency::BothHold && nc.empty() && cfg.ces.r != 0.0;
            }
            if (emit_normalized) {
                std::ofstream os(*emit_normalized, std::ios::binary);
                if (!os) {
                    err << "error: cannot write " << *emit_normalized << '\n';
                    return kExitUsage;
                }
                os << to_json(cfg).dump(2) << '\n';
            }
            out << "result: " << (ok ? "PASS" : "FAIL") << '\n';
            return ok ? kExitOk : kExitValidation;
        }

        if (!report.ok() || cfg.ces.r == 0.0) {
            err << "invalid scenario\n";
            detail::print_report(err, report);
            if (cfg.ces.r == 0.0) err << "  violated: ces.r: r != 0\n";
            return kExitValidation;
        }
        const auto pair = cfg.pair();

        if (evaluate->parsed()) {
            const ResourceBundle x{*k_flag, *l_flag};
            if (!valid_bundle(x)) {
                err << "error: --k and --l must be positive\n";
                return kExitValidation;
            }
            const auto j = evaluate_json(cfg, x);
            out << "Q = " << format_double(j["Q"].get<double>()) << '\n';
            detail::print_vector(out, "f", j["f"].get<std::vector<double>>());
            if (j.contains("g"))
                detail::print_vector(out, "g (g13, g23, g31, g32)", j["g"].get<std::vector<double>>());
            detail::print_vector(out, "fbar (f1, f2, g13, g23)", j["fbar"].get<std::vector<double>>());
            detail::print_vector(out, "fhat (g31, g32, f3)", j["fhat"].get<std::vector<double>>());
            out << "consistency: " << j["consistency"].get<std::string>() << '\n';
            if (!j.contains("g")) {
                err << "g criteria unavailable: consistency inequalities do not both hold\n";
                return kExitValidation;
            }
            return kExitOk;
        }

        const auto inconsistent = consistency_violations(pair);
        const auto nc = check_natural_compromise(pair);
        auto refuse = [&](bool need_compromise) {
            err << "inconsistent preference information\n";
            for (const auto& v : inconsistent) err << "  violated: " << v << '\n';
            if (need_compromise)
                for (const auto& v : nc) err << "  violated: " << v << '\n';
            return kExitValidation;
        };

        if (crisp->parsed()) {
            if (!inconsistent.empty()) return refuse(false);
            const auto run = run_crisp(cfg, grid_cap);
            const auto path = detail::output_file(cfg, "rays");
            auto os = detail::open_out(path);
            if (cfg.output.format == OutputFormat::Csv) {
                write_rays_csv_header(os);
                write_rays_csv_rows(os, run.derived);
                write_rays_csv_rows(os, run.paper);
            } else {
                write_rays_jsonl_rows(os, run.derived);
                write_rays_jsonl_rows(os, run.paper);
            }
            auto gos = detail::open_out(detail::output_file(cfg, "oracle_G4"));
            cfg.output.format == OutputFormat::Csv ? write_oracle_csv(gos, run.g) : write_oracle_jsonl(gos, run.g);
            out << "grid nodes: " << cfg.grid.size() << '\n'
                << "|P_f| (F3): " << run.f.nondominated.size() << '\n'
                << "|P_g| (G4): " << run.g.nondominated.size() << '\n'
                << "P_g within P_f: " << (run.g_in_f ? "yes" : "NO") << '\n'
                << "derived rays: " << run.derived.rays.size() << " in ["
                << format_double(run.derived.min_ratio) << ", " << format_double(run.derived.max_ratio) << "]\n"
                << "derived rays on oracle set: " << run.rays_on_oracle << " of " << run.rays_in_window
                << " crossing the window\n"
                << "closed-form rays: " << run.paper.rays.size() << " (domain failures "
                << run.paper.domain_failures << ")\n"
                << "wrote " << path.string() << '\n';
            return run.g_in_f ? kExitOk : kExitValidation;
        }

        if (fuzzy->parsed()) {
            if (!cfg.quantum1.mu || !cfg.quantum2.mu) {
                err << "error: reduce-fuzzy needs quantum1.mu and quantum2.mu\n";
                return kExitValidation;
            }
            if (!inconsistent.empty() || !nc.empty()) return refuse(true);
            const auto run = run_fuzzy(cfg, grid_cap);
            const auto path = detail::output_file(cfg, "membership");
            auto os = detail::open_out(path);
            write_membership(os, run.map, cfg.output.format);
            out << to_json(run.nesting).dump(2) << '\n' << "wrote " << path.string() << '\n';
            return run.nesting.ok() ? kExitOk : kExitValidation;
        }

        if (oracle->parsed()) {
            const auto kind = parse_criteria_kind(kind_name);
            if (kind == CriteriaKind::G4 && !inconsistent.empty()) return refuse(false);
            const auto res = oracle_pareto(kind, pair, cfg.problem(), cfg.grid, grid_cap);
            const auto path = detail::output_file(cfg, std::string("oracle_") + kind_name);
            auto os = detail::open_out(path);
            cfg.output.format == OutputFormat::Csv ? write_oracle_csv(os, res) : write_oracle_jsonl(os, res);
            out << kind_name << " non-dominated: " << res.nondominated.size() << " of " << cfg.grid.size() << '\n'
                << "wrote " << path.string() << '\n';
            return kExitOk;
        }

        if (compare->parsed()) {
            if (!inconsistent.empty()) return refuse(false);
            const auto rep = run_compare(cfg, grid_cap);
            std::filesystem::create_directories(cfg.output.dir);
            const auto path = std::filesystem::path(cfg.output.dir) / "discrepancy.json";
            auto os = detail::open_out(path);
            os << to_json(rep).dump(2) << '\n';
            out << "agreementPct: " << format_double(rep.agreement_pct) << '\n'
                << "maxGradResidual: " << format_double(rep.max_grad_residual) << '\n'
                << "domainFailures: " << rep.domain_failures << " of " << rep.rows.size() << '\n';
            for (const auto& [kind, tally] : rep.derived_on_oracle)
                out << to_string(kind) << " derived rays on oracle set: " << tally.first << " of " << tally.second
                    << '\n';
            out << "wrote " << path.string() << '\n';
            return kExitOk;
        }
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return kExitValidation;
    }
    return kExitUsage;
}

} // namespace cesreduce

#endif // CESREDUCE_CLI_HPP
