#ifndef CESREDUCE_CONFIG_HPP
#define CESREDUCE_CONFIG_HPP

#include <fstream>
#include <initializer_list>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "ces.hpp"
#include "pareto.hpp"
#include "quanta.hpp"
#include "scalarization.hpp"

namespace cesreduce {

using Json = nlohmann::ordered_json;

enum class OutputFormat { Csv, Jsonl };

inline const char* to_string(OutputFormat f) { return f == OutputFormat::Csv ? "csv" : "jsonl"; }

inline OutputFormat parse_output_format(const std::string& s)
{
    if (s == "csv") return OutputFormat::Csv;
    if (s == "jsonl") return OutputFormat::Jsonl;
    throw std::invalid_argument("unknown output format '" + s + "'");
}

struct OutputSpec {
    std::string dir = "out";
    OutputFormat format = OutputFormat::Csv;

    bool operator==(const OutputSpec&) const = default;
};

struct ScenarioConfig {
    CesParams ces;
    Prices prices;
    WeightTriple quantum1{2.0, 2.0, 1.0, 0.8};
    WeightTriple quantum2{1.0, 1.0, 3.0, 0.5};
    GridSpec grid;
    SweepSpec sweep;
    OutputSpec output;

    bool operator==(const ScenarioConfig&) const = default;

    EconomicProblem problem() const { return {ces, prices}; }
    PreferencePair pair() const { return PreferencePair(quantum1, quantum2); }
};

/// Schema-level failure: every offending field with a short reason.
class ConfigError : public std::runtime_error {
public:
    explicit ConfigError(std::vector<Violation> v)
        : std::runtime_error(summarize(v)), violations_(std::move(v))
    {
    }

    const std::vector<Violation>& violations() const { return violations_; }

private:
    static std::string summarize(const std::vector<Violation>& v)
    {
        std::string s = "invalid configuration";
        for (const auto& x : v) s += "\n  " + x.field + ": " + x.inequality;
        return s;
    }

    std::vector<Violation> violations_;
};

namespace detail {

class SchemaReader {
public:
    std::vector<Violation> errors;

    const Json* object(const Json& parent, const std::string& key, const std::string& path, bool required,
                       std::initializer_list<const char*> allowed)
    {
        auto it = parent.find(key);
        if (it == parent.end()) {
            if (required) errors.push_back({join(path, key), "required"});
            return nullptr;
        }
        if (!it->is_object()) {
            errors.push_back({join(path, key), "must be an object"});
            return nullptr;
        }
        reject_unknown(*it, join(path, key), allowed);
        return &*it;
    }

    void reject_unknown(const Json& obj, const std::string& path, std::initializer_list<const char*> allowed)
    {
        for (auto it = obj.begin(); it != obj.end(); ++it) {
            bool known = false;
            for (const char* a : allowed) known = known || it.key() == a;
            if (!known) errors.push_back({join(path, it.key()), "unknown field"});
        }
    }

    void number(const Json* obj, const char* key, const std::string& path, double& out, bool required = true)
    {
        if (!obj) return;
        auto it = obj->find(key);
        if (it == obj->end()) {
            if (required) errors.push_back({join(path, key), "required"});
            return;
        }
        if (!it->is_number()) {
            errors.push_back({join(path, key), "must be a number"});
            return;
        }
        out = it->get<double>();
    }

    void optional_number(const Json* obj, const char* key, const std::string& path, std::optional<double>& out)
    {
        if (!obj) return;
        auto it = obj->find(key);
        if (it == obj->end() || it->is_null()) {
            out.reset();
            return;
        }
        if (!it->is_number()) {
            errors.push_back({join(path, key), "must be a number"});
            return;
        }
        out = it->get<double>();
    }

    template <typename Int>
    void unsigned_int(const Json* obj, const char* key, const std::string& path, Int& out, bool required = true)
    {
        if (!obj) return;
        auto it = obj->find(key);
        if (it == obj->end()) {
            if (required) errors.push_back({join(path, key), "required"});
            return;
        }
        if (!it->is_number_unsigned() && !(it->is_number_integer() && it->get<long long>() >= 0)) {
            errors.push_back({join(path, key), "must be a non-negative integer"});
            return;
        }
        out = it->get<Int>();
    }

    void string(const Json* obj, const char* key, const std::string& path, std::string& out, bool required = true)
    {
        if (!obj) return;
        auto it = obj->find(key);
        if (it == obj->end()) {
            if (required) errors.push_back({join(path, key), "required"});
            return;
        }
        if (!it->is_string()) {
            errors.push_back({join(path, key), "must be a string"});
            return;
        }
        out = it->get<std::string>();
    }

    static std::string join(const std::string& path, const std::string& key)
    {
        return path.empty() ? key : path + "." + key;
    }
};

inline void read_quantum(SchemaReader& rd, const Json& root, const char* name, WeightTriple& q)
{
    const auto* o = rd.object(root, name, "", true, {"w1", "w2", "w3", "mu"});
    rd.number(o, "w1", name, q.w1);
    rd.number(o, "w2", name, q.w2);
    rd.number(o, "w3", name, q.w3);
    rd.optional_number(o, "mu", name, q.mu);
}

} // namespace detail

/// Top-level sections a document may carry besides the scenario itself.
struct SchemaOptions {
    bool allow_output = true;
    bool require_grid = true;
    std::vector<std::string> extra_keys;
};

/// Strict parse: unknown keys anywhere are errors. `sweep` and `output` are
/// optional sections; `mu` is optional per quantum.
inline ScenarioConfig parse_config(const Json& root, const SchemaOptions& opts = {})
{
    detail::SchemaReader rd;
    ScenarioConfig cfg;
    if (!root.is_object()) throw ConfigError(std::vector<Violation>{{"", "configuration must be an object"}});
    for (auto it = root.begin(); it != root.end(); ++it) {
        const auto& k = it.key();
        bool known = k == "ces" || k == "prices" || k == "quantum1" || k == "quantum2" || k == "grid" ||
                     k == "sweep" || (opts.allow_output && k == "output");
        for (const auto& e : opts.extra_keys) known = known || k == e;
        if (!known) rd.errors.push_back({k, "unknown field"});
    }

    const auto* ces = rd.object(root, "ces", "", true, {"F", "a", "r"});
    rd.number(ces, "F", "ces", cfg.ces.F);
    rd.number(ces, "a", "ces", cfg.ces.a);
    rd.number(ces, "r", "ces", cfg.ces.r);

    const auto* prices = rd.object(root, "prices", "", true, {"pK", "pL", "pQ"});
    rd.number(prices, "pK", "prices", cfg.prices.pK);
    rd.number(prices, "pL", "prices", cfg.prices.pL);
    rd.number(prices, "pQ", "prices", cfg.prices.pQ);

    detail::read_quantum(rd, root, "quantum1", cfg.quantum1);
    detail::read_quantum(rd, root, "quantum2", cfg.quantum2);

    const auto* grid = rd.object(root, "grid", "", opts.require_grid, {"kMin", "kMax", "lMin", "lMax", "nK", "nL", "scale"});
    rd.number(grid, "kMin", "grid", cfg.grid.kMin);
    rd.number(grid, "kMax", "grid", cfg.grid.kMax);
    rd.number(grid, "lMin", "grid", cfg.grid.lMin);
    rd.number(grid, "lMax", "grid", cfg.grid.lMax);
    rd.unsigned_int(grid, "nK", "grid", cfg.grid.nK);
    rd.unsigned_int(grid, "nL", "grid", cfg.grid.nL);
    std::string scale = cfg.grid.scale == GridScale::Logarithmic ? "log" : "linear";
    rd.string(grid, "scale", "grid", scale);
    if (scale == "log")
        cfg.grid.scale = GridScale::Logarithmic;
    else if (scale == "linear")
        cfg.grid.scale = GridScale::Linear;
    else
        rd.errors.push_back({"grid.scale", "must be \"log\" or \"linear\""});

    const auto* sweep = rd.object(root, "sweep", "", false, {"samples", "seed"});
    rd.unsigned_int(sweep, "samples", "sweep", cfg.sweep.samples);
    rd.unsigned_int(sweep, "seed", "sweep", cfg.sweep.seed);

    if (opts.allow_output) {
        const auto* out = rd.object(root, "output", "", false, {"dir", "format"});
        rd.string(out, "dir", "output", cfg.output.dir);
        std::string fmt = "csv";
        rd.string(out, "format", "output", fmt, false);
        try {
            cfg.output.format = parse_output_format(fmt);
        } catch (const std::invalid_argument&) {
            rd.errors.push_back({"output.format", "must be \"csv\" or \"jsonl\""});
        }
    }

    if (!rd.errors.empty()) throw ConfigError(std::move(rd.errors));
    return cfg;
}

inline ScenarioConfig parse_config_text(const std::string& text, const SchemaOptions& opts = {})
{
    Json root;
    try {
        root = Json::parse(text);
    } catch (const Json::parse_error& e) {
        throw ConfigError(std::vector<Violation>{{"", std::string("malformed document: ") + e.what()}});
    }
    return parse_config(root, opts);
}

inline ScenarioConfig load_config(const std::string& path)
{
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open config file '" + path + "'");
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_config_text(ss.str());
}

inline Json quantum_to_json(const WeightTriple& q)
{
    Json j;
    j["w1"] = q.w1;
    j["w2"] = q.w2;
    j["w3"] = q.w3;
    if (q.mu) j["mu"] = *q.mu;
    return j;
}

inline Json to_json(const ScenarioConfig& c, bool with_output = true)
{
    Json j;
    j["ces"] = {{"F", c.ces.F}, {"a", c.ces.a}, {"r", c.ces.r}};
    j["prices"] = {{"pK", c.prices.pK}, {"pL", c.prices.pL}, {"pQ", c.prices.pQ}};
    j["quantum1"] = quantum_to_json(c.quantum1);
    j["quantum2"] = quantum_to_json(c.quantum2);
    j["grid"] = {{"kMin", c.grid.kMin}, {"kMax", c.grid.kMax}, {"lMin", c.grid.lMin},
                 {"lMax", c.grid.lMax}, {"nK", c.grid.nK},     {"nL", c.grid.nL},
                 {"scale", c.grid.scale == GridScale::Logarithmic ? "log" : "linear"}};
    j["sweep"] = {{"samples", c.sweep.samples}, {"seed", c.sweep.seed}};
    if (with_output) j["output"] = {{"dir", c.output.dir}, {"format", to_string(c.output.format)}};
    return j;
}

/// Every component invariant; consistency of the quanta is reported
/// separately because it is a property of the DM's statements rather than
/// of the data.
inline ValidationReport validate_scenario(const ScenarioConfig& c, std::size_t grid_cap = kDefaultGridCap,
                                          bool require_confidence = false)
{
    ValidationReport report = validate_params(c.ces, c.prices);
    auto check_q = [&](const WeightTriple& q, const std::string& name) {
        if (!(q.w1 > 0.0)) report.add(name + ".w1", "w1 > 0");
        if (!(q.w2 > 0.0)) report.add(name + ".w2", "w2 > 0");
        if (!(q.w3 > 0.0)) report.add(name + ".w3", "w3 > 0");
        if (q.mu && !(*q.mu >= 0.0 && *q.mu <= 1.0)) report.add(name + ".mu", "0 <= mu <= 1");
        if (require_confidence && !q.mu) report.add(name + ".mu", "mu required");
    };
    check_q(c.quantum1, "quantum1");
    check_q(c.quantum2, "quantum2");
    for (auto& v : c.grid.validate(grid_cap).violations) report.violations.push_back(std::move(v));
    if (c.sweep.samples < 10) report.add("sweep.samples", "samples >= 10");
    return report;
}

} // namespace cesreduce

#endif // CESREDUCE_CONFIG_HPP
