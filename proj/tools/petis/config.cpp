#include "cli.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

namespace cli {

void config_error(const std::string& msg) { throw CliError(kExitConfig, "config error: " + msg); }

int exit_code_for(petis_status status) {
    switch (status) {
    case PETIS_OK: return kExitOk;
    case PETIS_ERR_INVALID_ARGUMENT:
    case PETIS_ERR_DOMAIN:
    case PETIS_ERR_RANGE:
    case PETIS_ERR_IO: return kExitConfig;
    case PETIS_ERR_DIVERGENCE: return kExitDivergence;
    case PETIS_ERR_CERTIFICATE:
    case PETIS_ERR_NUMERIC: return kExitCertificate;
    case PETIS_ERR_INTERNAL: return kExitFailure;
    }
    return kExitFailure;
}

void check(petis_status status, const std::string& context) {
    if (status == PETIS_OK) return;
    throw CliError(exit_code_for(status),
                   context + ": " + petis_status_string(status) + ": " + petis_last_error());
}

json number(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

namespace {

void reject_unknown(const json& obj, const std::string& where, std::initializer_list<const char*> keys) {
    if (!obj.is_object()) config_error("'" + where + "' must be an object");
    std::set<std::string> allowed(keys.begin(), keys.end());
    for (const auto& [k, v] : obj.items())
        if (!allowed.count(k)) config_error("unknown key '" + k + "' in '" + where + "'");
}

double get_number(const json& obj, const char* key, const std::string& where) {
    const auto it = obj.find(key);
    if (it == obj.end()) config_error("missing '" + where + "." + key + "'");
    if (!it->is_number()) config_error("'" + where + "." + key + "' must be a number");
    return it->get<double>();
}

long get_integer(const json& obj, const char* key, const std::string& where) {
    const auto it = obj.find(key);
    if (it == obj.end()) config_error("missing '" + where + "." + key + "'");
    if (!it->is_number_integer()) config_error("'" + where + "." + key + "' must be an integer");
    return it->get<long>();
}

std::string get_string(const json& obj, const char* key, const std::string& where) {
    const auto it = obj.find(key);
    if (it == obj.end() || !it->is_string())
        config_error("'" + where + "." + key + "' must be a string");
    return it->get<std::string>();
}

const std::map<std::string, std::set<std::string>>& kind_keys() {
    static const std::map<std::string, std::set<std::string>> keys{
        {"scalar", {"A1", "A2", "B", "K"}},
        {"linear", {"A", "B", "K"}},
        {"network", {"C", "A", "B", "K", "L"}}};
    return keys;
}

// Accepts a number (1x1), a flat array (1 x n) or an array of equal-length rows.
Dense parse_dense(const json& v, const std::string& where) {
    Dense d;
    if (v.is_number()) {
        d.rows = d.cols = 1;
        d.data = {v.get<double>()};
        return d;
    }
    if (!v.is_array() || v.empty()) config_error("'" + where + "' must be a number or non-empty array");
    if (v.front().is_number()) {
        d.rows = 1;
        for (const auto& e : v) {
            if (!e.is_number()) config_error("'" + where + "' must contain only numbers");
            d.data.push_back(e.get<double>());
        }
        d.cols = static_cast<int>(d.data.size());
        return d;
    }
    d.rows = static_cast<int>(v.size());
    for (const auto& row : v) {
        if (!row.is_array() || row.empty()) config_error("'" + where + "' rows must be arrays");
        if (d.cols == 0) d.cols = static_cast<int>(row.size());
        if (static_cast<int>(row.size()) != d.cols)
            config_error("'" + where + "' rows must have equal length");
        for (const auto& e : row) {
            if (!e.is_number()) config_error("'" + where + "' must contain only numbers");
            d.data.push_back(e.get<double>());
        }
    }
    return d;
}

double scalar_of(const Dense& d, const std::string& key) {
    if (d.data.size() != 1) config_error("scalar model parameter '" + key + "' must be a number");
    return d.data[0];
}

void require_shape(const Dense& d, int rows, int cols, const std::string& key) {
    if (d.rows != rows || d.cols != cols) {
        std::ostringstream os;
        os << "parameter '" << key << "' must be " << rows << " x " << cols << ", got " << d.rows
           << " x " << d.cols;
        config_error(os.str());
    }
}

// Flat vectors may be written as a row or as a column.
std::vector<double> as_vector(const Dense& d, int n, const std::string& key) {
    if (!((d.rows == 1 && d.cols == n) || (d.cols == 1 && d.rows == n)))
        config_error("parameter '" + key + "' must have " + std::to_string(n) + " entries");
    return d.data;
}

std::string named_kind(const std::string& name) {
    if (name.rfind("ex1-", 0) == 0) return "scalar";
    if (name.rfind("ex2-", 0) == 0) return "linear";
    if (name == "ex3-reference") return "network";
    config_error("unknown model name '" + name +
                 "' (known: ex1-c103, ex1-a2of0.1, ex2-paper, ex2-designed, ex3-reference)");
}

ModelPtr create_from_parameters(const std::string& kind, std::map<std::string, json>& params,
                                const petis_delay& delay) {
    for (const auto& key : kind_keys().at(kind))
        if (!params.count(key) && !(kind == "network" && key == "L") && !(kind == "scalar" && key == "A2"))
            config_error("model parameter '" + key + "' is required for a " + kind + " model");

    petis_model* raw = nullptr;
    if (kind == "scalar") {
        const double a2 = params.count("A2") ? scalar_of(parse_dense(params["A2"], "A2"), "A2") : 0.0;
        check(petis_model_create_scalar(scalar_of(parse_dense(params["A1"], "A1"), "A1"), a2,
                                        scalar_of(parse_dense(params["B"], "B"), "B"),
                                        scalar_of(parse_dense(params["K"], "K"), "K"), delay.gamma,
                                        &raw),
              "invalid scalar model");
        return ModelPtr(raw);
    }

    const Dense a = parse_dense(params["A"], "A");
    const Dense b = parse_dense(params["B"], "B");
    const int n = a.rows;
    require_shape(a, n, n, "A");
    if (b.rows != n) config_error("parameter 'B' must have " + std::to_string(n) + " rows");
    const int m = b.cols;

    std::vector<double> k;
    if (params["K"].is_string()) {
        const std::string how = params["K"].get<std::string>();
        if (kind != "linear" || how != "designed")
            config_error("gain K must be a matrix" + std::string(kind == "linear" ? " or \"designed\"" : ""));
        k.resize(static_cast<size_t>(m) * n);
        double achieved = 0.0;
        int met = 0;
        check(petis_design_linear_gain(n, m, a.data.data(), b.data.data(), delay.gamma, 0.0,
                                       k.data(), &achieved, &met),
              "gain design failed");
    } else {
        const Dense kd = parse_dense(params["K"], "K");
        require_shape(kd, m, n, "K");
        k = kd.data;
    }

    if (kind == "linear") {
        check(petis_model_create_linear(n, m, a.data.data(), b.data.data(), k.data(), delay.gamma,
                                        &raw),
              "invalid linear model");
        return ModelPtr(raw);
    }

    const std::vector<double> c = as_vector(parse_dense(params["C"], "C"), n, "C");
    const std::vector<double> l = params.count("L") ? as_vector(parse_dense(params["L"], "L"), n, "L")
                                                     : std::vector<double>(static_cast<size_t>(n), 1.0);
    check(petis_model_create_network(n, m, c.data(), a.data.data(), b.data.data(), k.data(),
                                     l.data(), delay.gamma, &raw),
          "invalid network model");
    return ModelPtr(raw);
}

json delay_json(const petis_delay& d) {
    json j;
    j["gamma"] = d.gamma;
    if (d.has_components) {
        j["gamma1"] = d.gamma1;
        j["gamma2"] = d.gamma2;
    }
    return j;
}

} // namespace

json load_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) config_error("cannot read '" + path + "'");
    try {
        return json::parse(in, nullptr, true, /*ignore_comments=*/true);
    } catch (const json::parse_error& e) {
        config_error("'" + path + "' is not valid JSON: " + e.what());
    }
}

RunConfig parse_config(const json& root, bool allow_grid) {
    if (allow_grid)
        reject_unknown(root, "config", {"model", "trigger", "delay", "x0", "horizon", "epsilon",
                                        "outputs", "flags", "estimation", "grid"});
    else
        reject_unknown(root, "config", {"model", "trigger", "delay", "x0", "horizon", "epsilon",
                                        "outputs", "flags", "estimation"});
    RunConfig cfg;

    if (!root.contains("model")) config_error("missing 'model'");
    const json& model = root["model"];
    if (!model.is_object()) config_error("'model' must be an object");
    if (model.contains("name")) {
        reject_unknown(model, "model", {"name", "overrides", "certificate"});
        const std::string kind = named_kind(get_string(model, "name", "model"));
        if (model.contains("overrides")) {
            const json& ov = model["overrides"];
            if (!ov.is_object()) config_error("'model.overrides' must be an object");
            for (const auto& [k, v] : ov.items())
                if (!kind_keys().at(kind).count(k))
                    config_error("unknown override '" + k + "' for " + kind + " model '" +
                                 model["name"].get<std::string>() + "'");
        }
    } else if (model.contains("kind")) {
        const std::string kind = get_string(model, "kind", "model");
        if (!kind_keys().count(kind))
            config_error("'model.kind' must be one of scalar, linear, network");
        for (const auto& [k, v] : model.items())
            if (k != "kind" && k != "certificate" && !kind_keys().at(kind).count(k))
                config_error("unknown key '" + k + "' in " + kind + " model");
    } else {
        config_error("'model' needs either 'name' or 'kind'");
    }
    if (model.contains("certificate")) {
        const json& cert = model["certificate"];
        reject_unknown(cert, "model.certificate", {"c", "rho"});
        const double c = get_number(cert, "c", "model.certificate");
        const double rho = get_number(cert, "rho", "model.certificate");
        if (!(c > 0.0) || !(rho >= 0.0))
            config_error("model.certificate needs c > 0 and rho >= 0");
    }
    cfg.model = model;

    if (!root.contains("trigger")) config_error("missing 'trigger'");
    const json& trig = root["trigger"];
    reject_unknown(trig, "trigger", {"a", "b", "delta"});
    cfg.trigger.a = get_number(trig, "a", "trigger");
    cfg.trigger.b = get_number(trig, "b", "trigger");
    cfg.trigger.delta = get_integer(trig, "delta", "trigger");
    if (!(cfg.trigger.a > 0.0)) config_error("trigger.a must be > 0 (got " + format_double(cfg.trigger.a) + ")");
    if (!(cfg.trigger.b > 0.0 && cfg.trigger.b < 1.0))
        config_error("trigger.b must satisfy 0 < b < 1 (got " + format_double(cfg.trigger.b) + ")");
    if (cfg.trigger.delta < 1)
        config_error("trigger.delta must be >= 1 (got " + std::to_string(cfg.trigger.delta) + ")");

    if (root.contains("delay")) {
        const json& d = root["delay"];
        reject_unknown(d, "delay", {"gamma", "gamma1", "gamma2"});
        const bool has1 = d.contains("gamma1"), has2 = d.contains("gamma2");
        if (has1 != has2) config_error("delay.gamma1 and delay.gamma2 must be given together");
        if (has1) {
            cfg.delay.has_components = 1;
            cfg.delay.gamma1 = get_integer(d, "gamma1", "delay");
            cfg.delay.gamma2 = get_integer(d, "gamma2", "delay");
            if (cfg.delay.gamma1 < 0 || cfg.delay.gamma2 < 0)
                config_error("delay components must be >= 0");
            cfg.delay.gamma = cfg.delay.gamma1 + cfg.delay.gamma2;
            if (d.contains("gamma") && get_integer(d, "gamma", "delay") != cfg.delay.gamma)
                config_error("delay.gamma must equal gamma1 + gamma2");
        } else {
            cfg.delay.gamma = d.contains("gamma") ? get_integer(d, "gamma", "delay") : 0;
        }
        if (cfg.delay.gamma < 0) config_error("delay.gamma must be >= 0");
    }

    if (!root.contains("x0")) config_error("missing 'x0'");
    const json& x0 = root["x0"];
    if (x0.is_number()) {
        cfg.x0 = {x0.get<double>()};
    } else if (x0.is_array() && !x0.empty()) {
        for (const auto& e : x0) {
            if (!e.is_number()) config_error("'x0' must contain only numbers");
            cfg.x0.push_back(e.get<double>());
        }
    } else {
        config_error("'x0' must be a number or a non-empty array");
    }

    if (!root.contains("horizon") || !root["horizon"].is_number_integer())
        config_error("'horizon' must be an integer");
    cfg.horizon = root["horizon"].get<long>();
    if (cfg.horizon < 0) config_error("'horizon' must be >= 0");

    if (root.contains("epsilon")) {
        cfg.epsilon = get_number(root, "epsilon", "config");
        if (!(*cfg.epsilon > 0.0)) config_error("'epsilon' must be > 0");
    }

    if (root.contains("outputs")) {
        const json& o = root["outputs"];
        reject_unknown(o, "outputs", {"trajectory_csv", "report", "plot_csv"});
        if (o.contains("trajectory_csv")) cfg.outputs.trajectory_csv = get_string(o, "trajectory_csv", "outputs");
        if (o.contains("report")) cfg.outputs.report = get_string(o, "report", "outputs");
        if (o.contains("plot_csv")) cfg.outputs.plot_csv = get_string(o, "plot_csv", "outputs");
    }

    if (root.contains("flags")) {
        const json& f = root["flags"];
        reject_unknown(f, "flags", {"allow_v0_above_a"});
        if (f.contains("allow_v0_above_a")) {
            if (!f["allow_v0_above_a"].is_boolean()) config_error("'flags.allow_v0_above_a' must be a boolean");
            cfg.allow_v0_above_a = f["allow_v0_above_a"].get<bool>();
        }
    }

    if (root.contains("estimation")) {
        const json& e = root["estimation"];
        reject_unknown(e, "estimation", {"samples", "radius", "seed"});
        if (e.contains("samples")) cfg.estimation.samples = get_integer(e, "samples", "estimation");
        if (e.contains("radius")) cfg.estimation.radius = get_number(e, "radius", "estimation");
        if (e.contains("seed")) {
            const long s = get_integer(e, "seed", "estimation");
            if (s < 0) config_error("'estimation.seed' must be >= 0");
            cfg.estimation.seed = static_cast<unsigned long long>(s);
        }
        if (cfg.estimation.samples < 1) config_error("'estimation.samples' must be >= 1");
        if (!(cfg.estimation.radius > 0.0)) config_error("'estimation.radius' must be > 0");
    }

    if (allow_grid && root.contains("grid")) {
        const json& g = root["grid"];
        reject_unknown(g, "grid", {"a", "b", "delta", "gamma", "K"});
        for (const auto& [k, v] : g.items())
            if (!v.is_array()) config_error("'grid." + k + "' must be an array");
        cfg.grid = g;
    }
    return cfg;
}

void apply_flags(RunConfig& cfg, const GlobalFlags& flags, bool default_outputs) {
    if (flags.seed) cfg.estimation.seed = *flags.seed;
    if (!flags.out_dir) return;
    namespace fs = std::filesystem;
    const fs::path dir(*flags.out_dir);
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec) config_error("cannot create output directory '" + dir.string() + "': " + ec.message());
    auto resolve = [&](std::optional<std::string>& p, const char* fallback) {
        if (!p) {
            if (default_outputs) p = (dir / fallback).string();
        } else if (fs::path(*p).is_relative()) {
            p = (dir / *p).string();
        }
    };
    resolve(cfg.outputs.trajectory_csv, "trajectory.csv");
    resolve(cfg.outputs.report, "report.json");
    resolve(cfg.outputs.plot_csv, "plot.csv");
}

namespace {

ModelPtr build_plain(const json& model, const petis_delay& delay) {
    petis_model* raw = nullptr;
    if (model.contains("name")) {
        const std::string name = model["name"].get<std::string>();
        const std::string kind = named_kind(name);
        check(petis_model_create_named(name.c_str(), delay.gamma, &raw), "cannot build model '" + name + "'");
        ModelPtr base(raw);
        if (!model.contains("overrides") || model["overrides"].empty()) return base;

        std::map<std::string, json> params;
        for (const auto& key : kind_keys().at(kind))
            params[key] = dense_to_json(model_parameter(base.get(), key.c_str()));
        if (name == "ex2-designed") params["K"] = "designed";
        for (const auto& [k, v] : model["overrides"].items()) params[k] = v;
        return create_from_parameters(kind, params, delay);
    }
    const std::string kind = model["kind"].get<std::string>();
    std::map<std::string, json> params;
    for (const auto& [k, v] : model.items())
        if (k != "kind" && k != "certificate") params[k] = v;
    return create_from_parameters(kind, params, delay);
}

} // namespace

ModelPtr build_model(const json& model, const petis_delay& delay) {
    ModelPtr built = build_plain(model, delay);
    if (!model.contains("certificate")) return built;
    petis_model* raw = nullptr;
    check(petis_model_with_constants(built.get(), model["certificate"]["c"].get<double>(),
                                     model["certificate"]["rho"].get<double>(), &raw),
          "claimed certificate");
    return ModelPtr(raw);
}

Dense model_parameter(const petis_model* model, const char* key) {
    Dense d;
    check(petis_model_parameter(model, key, nullptr, 0, &d.rows, &d.cols), "parameter lookup");
    d.data.resize(static_cast<size_t>(d.rows) * d.cols);
    check(petis_model_parameter(model, key, d.data.data(), d.data.size(), nullptr, nullptr),
          "parameter lookup");
    return d;
}

json dense_to_json(const Dense& d) {
    if (d.rows == 1 && d.cols == 1) return d.data[0];
    json rows = json::array();
    for (int r = 0; r < d.rows; ++r) {
        json row = json::array();
        for (int c = 0; c < d.cols; ++c) row.push_back(d.data[static_cast<size_t>(r) * d.cols + c]);
        rows.push_back(row);
    }
    if (d.rows == 1) return rows[0];
    return rows;
}

json echo_inputs(const RunConfig& cfg, const petis_model* model) {
    json in;
    json m;
    m["name"] = petis_model_name(model);
    m["kind"] = petis_model_kind(model);
    json params = json::object();
    const std::string kind = m["kind"];
    if (kind_keys().count(kind))
        for (const auto& key : kind_keys().at(kind)) params[key] = dense_to_json(model_parameter(model, key.c_str()));
    m["parameters"] = params;
    if (cfg.model.contains("certificate")) m["claimed_certificate"] = cfg.model["certificate"];
    in["model"] = m;
    in["trigger"] = {{"a", cfg.trigger.a}, {"b", cfg.trigger.b}, {"delta", cfg.trigger.delta}};
    in["delay"] = delay_json(cfg.delay);
    in["x0"] = cfg.x0;
    in["horizon"] = cfg.horizon;
    in["epsilon"] = cfg.epsilon ? json(*cfg.epsilon) : json(nullptr);
    in["flags"] = {{"allow_v0_above_a", cfg.allow_v0_above_a}};
    in["estimation"] = {{"samples", cfg.estimation.samples},
                        {"radius", cfg.estimation.radius},
                        {"seed", cfg.estimation.seed}};
    return in;
}

} // namespace cli
