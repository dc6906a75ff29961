#ifndef CESREDUCE_SERVICE_HPP
#define CESREDUCE_SERVICE_HPP

#include <atomic>
#include <chrono>
#include <string>

#include <httplib.h>

#include "workbench.hpp"

namespace cesreduce {

inline constexpr const char* kVersion = "1.0.0";
inline constexpr const char* kJsonContentType = "application/json";

struct ServiceOptions {
    std::size_t grid_cap = kDefaultGridCap;
    int max_in_flight = 2;
};

struct ServiceResponse {
    int status = 200;
    Json body;
    /// Wall time spent computing, sent as a Server-Timing header so the body
    /// stays a pure function of the request.
    double compute_ms = 0.0;
};

/// Handlers are pure functions of (body, options) apart from the in-flight
/// counter used to shed reduce load.
class Service {
public:
    explicit Service(ServiceOptions opts = {}) : opts_(opts) {}

    const ServiceOptions& options() const { return opts_; }
    int in_flight() const { return in_flight_.load(); }

    ServiceResponse health() const { return {200, Json{{"status", "ok"}, {"version", kVersion}}}; }

    ServiceResponse evaluate(const std::string& body) const
    {
        ScenarioConfig cfg;
        Json root;
        if (auto err = parse(body, {false, false, {"k", "l"}}, cfg, root)) return *err;
        ValidationReport bad = validate_params(cfg.ces, cfg.prices);
        ResourceBundle x;
        read_coordinate(root, "k", x.K, bad);
        read_coordinate(root, "l", x.L, bad);
        if (cfg.ces.r == 0.0) bad.add("ces.r", "r != 0");
        if (auto err = weights_invalid(cfg, false, bad)) return *err;
        if (auto err = inconsistent(cfg, false)) return *err;
        return {200, evaluate_json(cfg, x)};
    }

    ServiceResponse reduce(const std::string& body)
    {
        ScenarioConfig cfg;
        Json root;
        if (auto err = parse(body, {false, true, {}}, cfg, root)) return *err;
        ValidationReport bad = validate_scenario(cfg, opts_.grid_cap, true);
        if (cfg.ces.r == 0.0) bad.add("ces.r", "r != 0");
        if (!bad.ok()) return reject(400, "validation failed", bad.violations);
        if (auto err = inconsistent(cfg, true)) return *err;

        InFlight guard(in_flight_, opts_.max_in_flight);
        if (!guard.admitted())
            return {429, Json{{"error", "too many reduce computations in flight"},
                              {"maxInFlight", opts_.max_in_flight}}};
        const auto t0 = std::chrono::steady_clock::now();
        const auto run = run_fuzzy(cfg, opts_.grid_cap);
        ServiceResponse res{200, reduce_json(cfg, run)};
        res.compute_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
        return res;
    }

    ServiceResponse compare(const std::string& body) const
    {
        ScenarioConfig cfg;
        Json root;
        if (auto err = parse(body, {false, true, {}}, cfg, root)) return *err;
        ValidationReport bad = validate_scenario(cfg, opts_.grid_cap, false);
        if (cfg.ces.r == 0.0) bad.add("ces.r", "r != 0");
        if (!bad.ok()) return reject(400, "validation failed", bad.violations);
        if (auto err = inconsistent(cfg, false)) return *err;
        const auto t0 = std::chrono::steady_clock::now();
        ServiceResponse res{200, to_json(run_compare(cfg, opts_.grid_cap))};
        res.compute_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
        return res;
    }

    /// Registers every endpoint on `server`.
    void bind(httplib::Server& server)
    {
        auto send = [](httplib::Response& res, const ServiceResponse& r) {
            res.status = r.status;
            if (r.compute_ms > 0.0) res.set_header("Server-Timing", "compute;dur=" + format_double(r.compute_ms));
            res.set_content(r.body.dump(), kJsonContentType);
        };
        server.Get("/healthz", [this, send](const httplib::Request&, httplib::Response& res) { send(res, health()); });
        server.Post("/api/v1/evaluate", [this, send](const httplib::Request& req, httplib::Response& res) {
            send(res, guarded([&] { return evaluate(req.body); }));
        });
        server.Post("/api/v1/reduce", [this, send](const httplib::Request& req, httplib::Response& res) {
            send(res, guarded([&] { return reduce(req.body); }));
        });
        server.Post("/api/v1/compare", [this, send](const httplib::Request& req, httplib::Response& res) {
            send(res, guarded([&] { return compare(req.body); }));
        });
    }

private:
    class InFlight {
    public:
        InFlight(std::atomic<int>& counter, int limit) : counter_(counter)
        {
            admitted_ = counter_.fetch_add(1) < limit;
        }
        ~InFlight() { counter_.fetch_sub(1); }
        InFlight(const InFlight&) = delete;
        InFlight& operator=(const InFlight&) = delete;
        bool admitted() const { return admitted_; }

    private:
        std::atomic<int>& counter_;
        bool admitted_ = false;
    };

    template <typename Fn>
    static ServiceResponse guarded(Fn&& fn)
    {
        try {
            return fn();
        } catch (const std::exception& e) {
            // Input is validated up front; anything thrown here is ours.
            return {500, Json{{"error", "internal invariant breach"}, {"detail", e.what()}}};
        }
    }

    static ServiceResponse reject(int status, const std::string& message, const std::vector<Violation>& v)
    {
        return {status, Json{{"error", message}, {"violations", violations_json(v)}}};
    }

    static std::optional<ServiceResponse> parse(const std::string& body, const SchemaOptions& schema,
                                                ScenarioConfig& cfg, Json& root)
    {
        try {
            root = Json::parse(body);
            cfg = parse_config(root, schema);
        } catch (const Json::parse_error& e) {
            return reject(400, "malformed request", {{"", e.what()}});
        } catch (const ConfigError& e) {
            return reject(400, "validation failed", e.violations());
        }
        return std::nullopt;
    }

    static void read_coordinate(const Json& root, const char* key, double& out, ValidationReport& bad)
    {
        auto it = root.find(key);
        if (it == root.end() || !it->is_number()) {
            bad.add(key, "required number");
            return;
        }
        out = it->get<double>();
        if (!(out > 0.0) || !std::isfinite(out)) bad.add(key, std::string(key) + " > 0");
    }

    static std::optional<ServiceResponse> weights_invalid(const ScenarioConfig& cfg, bool need_mu,
                                                          ValidationReport& bad)
    {
        ScenarioConfig probe = cfg;
        probe.grid = GridSpec{};
        probe.sweep = SweepSpec{};
        for (auto& v : validate_scenario(probe, kDefaultGridCap, need_mu).violations)
            if (v.field.rfind("quantum", 0) == 0) bad.violations.push_back(v);
        if (!bad.ok()) return reject(400, "validation failed", bad.violations);
        return std::nullopt;
    }

    static std::optional<ServiceResponse> inconsistent(const ScenarioConfig& cfg, bool need_compromise)
    {
        const auto pair = cfg.pair();
        std::vector<Violation> v;
        for (auto& s : consistency_violations(pair)) v.push_back({"consistency", s});
        if (need_compromise)
            for (auto& s : check_natural_compromise(pair)) v.push_back({"naturalCompromise", s});
        if (v.empty()) return std::nullopt;
        return reject(422, "inconsistent preference information", v);
    }

    static Json reduce_json(const ScenarioConfig& cfg, const FuzzyRun& run)
    {
        Json j;
        const auto& m = run.map;
        Json k = Json::array(), l = Json::array(), tier = Json::array(), lambda = Json::array();
        for (std::size_t i = 0; i < m.values.size(); ++i) {
            const auto x = m.grid.node(i);
            k.push_back(x.K);
            l.push_back(x.L);
            tier.push_back(to_string(m.tiers[i]));
            lambda.push_back(m.values[i]);
        }
        j["membership"] = {{"k", std::move(k)}, {"l", std::move(l)}, {"tier", std::move(tier)},
                           {"lambda", std::move(lambda)}};
        const bool first = *cfg.quantum1.mu >= *cfg.quantum2.mu;
        j["case"] = first ? "mu1>=mu2" : "mu1<mu2";
        j["tierCounts"] = {{"CORE", run.nesting.core}, {"MID", run.nesting.mid}, {"OUTER", run.nesting.outer}};
        j["tierValues"] = {{"CORE", 1.0},
                           {"MID", first ? 1.0 - *cfg.quantum2.mu : 1.0 - *cfg.quantum1.mu},
                           {"OUTER", first ? 1.0 - *cfg.quantum1.mu : 1.0 - *cfg.quantum2.mu}};
        j["nesting"] = to_json(run.nesting);
        j["inclusions"] = j["nesting"]["inclusions"];
        Json rays = Json::array();
        for (const auto& fam : run.rays) rays.push_back(to_json(fam));
        j["rays"] = std::move(rays);
        return j;
    }

    ServiceOptions opts_;
    std::atomic<int> in_flight_{0};
};

/// Blocking: serves until the process is stopped.
inline bool run_service(int port, ServiceOptions opts = {}, const std::string& host = "0.0.0.0")
{
    Service service(opts);
    httplib::Server server;
    service.bind(server);
    return server.listen(host, port);
}

} // namespace cesreduce

#endif // CESREDUCE_SERVICE_HPP
