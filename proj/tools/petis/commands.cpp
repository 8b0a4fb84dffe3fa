#include "cli.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

namespace cli {
namespace {

struct Metrics {
    petis_certificate_info cert{};
    petis_condition condition{};
    size_t events = 0;
    std::vector<int64_t> event_times;
    std::optional<int64_t> min_gap;
    bool trailing_unactuated = false;
    bool exploratory = false;
    petis_subthreshold_result post_impulse{};
    petis_envelope_result envelope{};
    double v0 = 0.0;
    double final_v = 0.0;
};

Metrics simulate_model(const RunConfig& cfg, const petis_model* model, RecordPtr& rec) {
    Metrics m;
    const int n = petis_model_state_dim(model);
    if (static_cast<int>(cfg.x0.size()) != n)
        config_error("'x0' has " + std::to_string(cfg.x0.size()) + " entries, the model state has " +
                     std::to_string(n));

    check(petis_model_certificate(model, &m.cert), "certificate");
    check(petis_check_condition(m.cert.rho, m.cert.growth_constant, &cfg.trigger, &cfg.delay,
                                &m.condition),
          "condition");
    check(petis_model_lyapunov(model, cfg.x0.data(), &m.v0), "lyapunov");

    petis_sim_options opts{cfg.allow_v0_above_a ? 1 : 0, 0.0};
    petis_record* raw = nullptr;
    check(petis_simulate(model, &cfg.trigger, &cfg.delay, cfg.x0.data(), cfg.horizon, &opts, &raw),
          "simulation");
    rec.reset(raw);

    m.events = petis_record_event_count(rec.get());
    m.event_times.resize(m.events);
    size_t count = 0;
    check(petis_record_event_times(rec.get(), m.event_times.data(), m.event_times.size(), &count),
          "events");
    int64_t gap = 0;
    int has_gap = 0;
    check(petis_record_min_inter_event(rec.get(), &gap, &has_gap), "events");
    if (has_gap) m.min_gap = gap;
    m.trailing_unactuated = petis_record_trailing_unactuated(rec.get()) != 0;
    m.exploratory = petis_record_exploratory(rec.get()) != 0;
    check(petis_verify_post_impulse(rec.get(), &cfg.trigger, &cfg.delay, &m.post_impulse),
          "verification");
    check(petis_verify_envelope(rec.get(), &cfg.trigger, &cfg.delay, m.cert.growth_constant,
                                &m.envelope),
          "verification");

    std::vector<double> x(static_cast<size_t>(n));
    check(petis_record_state(rec.get(), cfg.horizon, x.data()), "state");
    check(petis_model_lyapunov(model, x.data(), &m.final_v), "lyapunov");
    return m;
}

json certificate_json(const petis_certificate_info& c) {
    json j;
    j["c"] = c.c;
    j["rho"] = c.rho;
    j["growth_constant"] = c.growth_constant;
    if (c.c < 1.0)
        j["warning"] = "c < 1: stability quantities use max(c, 1), which is conservative";
    return j;
}

json condition_json(const petis_condition& c) {
    return json{{"lhs", number(c.lhs)},
                {"satisfied", c.satisfied != 0},
                {"margin", number(c.margin)},
                {"rho_bound", number(c.rho_bound)}};
}

json stability_radius_json(const RunConfig& cfg, const petis_model* model, double epsilon) {
    json j;
    j["epsilon"] = epsilon;
    double sigma = 0.0, guaranteed = 0.0;
    const petis_status st =
        petis_stability_radius(model, epsilon, &cfg.trigger, &cfg.delay, &sigma, &guaranteed);
    if (st == PETIS_OK) {
        j["sigma"] = number(sigma);
        j["guaranteed_initial_radius"] = number(guaranteed);
    } else {
        j["sigma"] = nullptr;
        j["error"] = std::string(petis_status_string(st)) + ": " + petis_last_error();
    }
    return j;
}

void write_text(const std::string& path, const std::string& text) {
    std::ofstream out(path);
    if (!out) throw CliError(kExitConfig, "cannot write '" + path + "'");
    out << text;
    if (!out) throw CliError(kExitConfig, "failed writing '" + path + "'");
}

std::string csv_quote(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char ch : s) {
        if (ch == '"') out += '"';
        out += ch;
    }
    return out + "\"";
}

std::string csv_value(const json& v) {
    if (v.is_number()) return v.dump();  // shortest round-trip form
    if (v.is_string()) return csv_quote(v.get<std::string>());
    return csv_quote(v.dump());
}

// Claimed constants must bound the sampled ratios; otherwise the certificate
// is wrong on the sampled region.
void validate_claimed_certificate(const RunConfig& cfg, const petis_model* model) {
    if (!cfg.model.contains("certificate")) return;
    petis_certificate_info cert{};
    check(petis_model_certificate(model, &cert), "certificate");
    petis_estimate est{};
    check(petis_estimate_constants(model, &cfg.delay, cfg.estimation.radius,
                                   static_cast<size_t>(cfg.estimation.samples), cfg.estimation.seed,
                                   &est, nullptr, nullptr),
          "sampled estimation");
    auto exceeds = [](double sampled, double claimed) {
        return sampled > claimed * (1.0 + 1e-9) + 1e-12;
    };
    if (exceeds(est.c_hat, cert.c))
        throw CliError(kExitCertificate, "certificate error: sampled growth " + format_double(est.c_hat) +
                                             " exceeds claimed c = " + format_double(cert.c));
    if (exceeds(est.rho_hat, cert.rho))
        throw CliError(kExitCertificate, "certificate error: sampled impulse ratio " +
                                             format_double(est.rho_hat) + " exceeds claimed rho = " +
                                             format_double(cert.rho));
}

} // namespace

int cmd_run(const RunConfig& cfg) {
    ModelPtr model = build_model(cfg.model, cfg.delay);
    validate_claimed_certificate(cfg, model.get());
    RecordPtr rec;
    const Metrics m = simulate_model(cfg, model.get(), rec);

    json report;
    report["inputs"] = echo_inputs(cfg, model.get());
    report["certificate"] = certificate_json(m.cert);
    report["condition"] = condition_json(m.condition);

    json ev;
    ev["count"] = m.events;
    ev["first"] = m.events ? json(m.event_times.front()) : json(nullptr);
    ev["min_gap"] = m.min_gap ? json(*m.min_gap) : json(nullptr);
    ev["times"] = m.event_times;
    ev["trailing_unactuated"] = m.trailing_unactuated;
    // Uncertified runs (condition violated or V(x0) >= a) are exploratory.
    ev["exploratory"] = m.exploratory || !m.condition.satisfied;
    report["events"] = ev;

    json ver;
    const int64_t required_gap = cfg.delay.gamma + 2;
    ver["min_gap"] = {{"required", required_gap}, {"ok", !m.min_gap || *m.min_gap >= required_gap}};
    ver["post_impulse"] = {
        {"ok", m.post_impulse.ok != 0},
        {"first_violation_event", m.post_impulse.first_violation_event >= 0
                                      ? json(m.post_impulse.first_violation_event)
                                      : json(nullptr)},
        {"violation_step", m.post_impulse.violation_step >= 0 ? json(m.post_impulse.violation_step)
                                                              : json(nullptr)}};
    ver["envelope"] = {{"ok", m.envelope.ok != 0},
                       {"max_ratio", number(m.envelope.max_ratio)},
                       {"first_violation", m.envelope.first_violation >= 0
                                               ? json(m.envelope.first_violation)
                                               : json(nullptr)}};
    report["verification"] = ver;

    json analysis;
    analysis["v0"] = m.v0;
    analysis["final_v"] = m.final_v;
    double t_star = 0.0;
    if (m.v0 <= cfg.trigger.a &&
        petis_crossing_time(m.v0, &cfg.trigger, m.cert.growth_constant, &t_star) == PETIS_OK)
        analysis["crossing_time"] = number(t_star);  // null when V(x0) = 0
    else
        analysis["crossing_time"] = nullptr;
    if (cfg.epsilon) analysis["stability_radius"] = stability_radius_json(cfg, model.get(), *cfg.epsilon);
    report["analysis"] = analysis;

    if (cfg.outputs.trajectory_csv)
        check(petis_record_write_csv(rec.get(), cfg.outputs.trajectory_csv->c_str()), "trajectory csv");
    if (cfg.outputs.plot_csv)
        check(petis_record_write_plot_csv(rec.get(), &cfg.trigger, &cfg.delay,
                                          m.cert.growth_constant, cfg.outputs.plot_csv->c_str()),
              "plot csv");
    const std::string text = report.dump(2) + "\n";
    if (cfg.outputs.report) write_text(*cfg.outputs.report, text);
    std::cout << text;
    return kExitOk;
}

int cmd_sweep(const RunConfig& base, const GlobalFlags& flags) {
    if (!base.grid) config_error("sweep needs a 'grid' section");
    const json& grid = *base.grid;

    auto axis = [&](const char* key, json fallback) -> json {
        if (!grid.contains(key)) return json::array({fallback});
        return grid[key];
    };
    const json as = axis("a", base.trigger.a);
    const json bs = axis("b", base.trigger.b);
    const json deltas = axis("delta", base.trigger.delta);
    const json gammas = axis("gamma", base.delay.gamma);
    const json ks = axis("K", json("base"));
    for (const auto* ax : {&as, &bs})
        for (const auto& v : *ax)
            if (!v.is_number()) config_error("grid values for 'a' and 'b' must be numbers");
    for (const auto* ax : {&deltas, &gammas})
        for (const auto& v : *ax)
            if (!v.is_number_integer()) config_error("grid values for 'delta' and 'gamma' must be integers");

    std::ostringstream csv;
    csv << "a,b,delta,gamma,K,lhs,satisfied,events,min_gap,max_envelope_ratio,final_V,status\n";
    const bool empty = grid.empty() || as.empty() || bs.empty() || deltas.empty() ||
                       gammas.empty() || ks.empty();
    if (!empty) {
        for (const auto& a : as)
            for (const auto& b : bs)
                for (const auto& delta : deltas)
                    for (const auto& gamma : gammas)
                        for (const auto& k : ks) {
                            RunConfig cell = base;
                            cell.trigger.a = a.get<double>();
                            cell.trigger.b = b.get<double>();
                            cell.trigger.delta = delta.get<int64_t>();
                            if (grid.contains("gamma"))
                                cell.delay = petis_delay{gamma.get<int64_t>(), 0, 0, 0};
                            if (!(k.is_string() && k.get<std::string>() == "base")) {
                                if (cell.model.contains("name"))
                                    cell.model["overrides"]["K"] = k;
                                else
                                    cell.model["K"] = k;
                            }
                            csv << csv_value(a) << ',' << csv_value(b) << ',' << csv_value(delta)
                                << ',' << csv_value(gamma) << ',' << csv_value(k) << ',';
                            try {
                                ModelPtr model = build_model(cell.model, cell.delay);
                                RecordPtr rec;
                                const Metrics m = simulate_model(cell, model.get(), rec);
                                csv << format_double(m.condition.lhs) << ','
                                    << (m.condition.satisfied ? "true" : "false") << ',' << m.events
                                    << ',' << (m.min_gap ? std::to_string(*m.min_gap) : "") << ','
                                    << format_double(m.envelope.max_ratio) << ','
                                    << format_double(m.final_v) << ",ok\n";
                            } catch (const CliError& e) {
                                csv << ",,,,,," << csv_quote(std::string("error: ") + e.what()) << '\n';
                            }
                        }
    }

    const std::string text = csv.str();
    if (flags.out_dir) write_text(*flags.out_dir + "/sweep.csv", text);
    std::cout << text;
    return kExitOk;
}

int cmd_certify(const RunConfig& cfg, const GlobalFlags& flags) {
    ModelPtr model = build_model(cfg.model, cfg.delay);
    validate_claimed_certificate(cfg, model.get());
    const petis_model* mp = model.get();
    const int n = petis_model_state_dim(mp);
    const int m_in = petis_model_input_dim(mp);
    const std::string kind = petis_model_kind(mp);

    petis_certificate_info cert{};
    check(petis_model_certificate(mp, &cert), "certificate");
    petis_condition cond{};
    check(petis_check_condition(cert.rho, cert.growth_constant, &cfg.trigger, &cfg.delay, &cond),
          "condition");

    petis_estimate est{};
    std::vector<double> cw(static_cast<size_t>(n)), rw(static_cast<size_t>(n));
    check(petis_estimate_constants(mp, &cfg.delay, cfg.estimation.radius,
                                   static_cast<size_t>(cfg.estimation.samples), cfg.estimation.seed,
                                   &est, cw.data(), rw.data()),
          "sampled estimation");

    json report;
    report["inputs"] = echo_inputs(cfg, mp);
    json c = certificate_json(cert);
    c["sampled"] = {{"c_hat", number(est.c_hat)},
                    {"rho_hat", number(est.rho_hat)},
                    {"samples", est.sample_count},
                    {"radius", est.region_radius},
                    {"seed", cfg.estimation.seed},
                    {"c_witness", cw},
                    {"rho_witness", rw}};
    report["certificate"] = c;
    json cj = condition_json(cond);
    if (!cond.satisfied) {
        const std::string name = petis_model_name(mp);
        cj["flag"] = name == "ex2-paper" ? "paper gain fails sufficient condition; see documentation"
                                         : "gain fails sufficient condition; see documentation";
    }
    report["condition"] = cj;

    json gain;
    if (kind == "scalar") {
        const double a1 = model_parameter(mp, "A1").data[0];
        const double a2 = model_parameter(mp, "A2").data[0];
        const double b = model_parameter(mp, "B").data[0];
        const double k = model_parameter(mp, "K").data[0];
        double lo = 0.0, hi = 0.0;
        int empty = 0;
        check(petis_scalar_gain_interval(a1, a2, b, &cfg.trigger, &lo, &hi, &empty), "gain interval");
        gain["interval"] = {{"lower", lo}, {"upper", hi}, {"lower_inclusive", false},
                            {"upper_inclusive", true}, {"empty", empty != 0}};
        gain["K"] = k;
        gain["K_inside"] = !empty && k > lo && k <= hi;
        if (cfg.delay.gamma != 1) gain["note"] = "interval formula assumes gamma = 1";
    } else if (kind == "linear") {
        const Dense a = model_parameter(mp, "A");
        const Dense b = model_parameter(mp, "B");
        std::vector<double> k(static_cast<size_t>(m_in) * n);
        double achieved = 0.0;
        int met = 0;
        check(petis_design_linear_gain(n, m_in, a.data.data(), b.data.data(), cfg.delay.gamma, 0.0,
                                       k.data(), &achieved, &met),
              "gain design");
        gain["K"] = dense_to_json(model_parameter(mp, "K"));
        gain["rho"] = cert.rho;
        gain["designed"] = {{"K", dense_to_json(Dense{m_in, n, k})},
                            {"achieved_rho", achieved},
                            {"target_rho", 0.0},
                            {"target_met", met != 0}};
    } else if (kind == "network") {
        const Dense cd = model_parameter(mp, "C");
        const Dense a = model_parameter(mp, "A");
        const Dense b = model_parameter(mp, "B");
        const Dense k = model_parameter(mp, "K");
        const Dense l = model_parameter(mp, "L");
        double cc = 0.0, rho_min = 0.0, boundary = 0.0;
        check(petis_network_constants(n, m_in, cd.data.data(), a.data.data(), b.data.data(),
                                      k.data.data(), l.data.data(), &cc, &rho_min),
              "network constants");
        const double hi = rho_min > 0.0 ? 4.0 * rho_min : 1.0;
        check(petis_schur_boundary(n, m_in, cd.data.data(), a.data.data(), b.data.data(),
                                   k.data.data(), l.data.data(), 0.0, hi, 1e-8, &boundary),
              "schur boundary");
        gain["rho_min"] = rho_min;
        gain["schur_boundary"] = boundary;
    }
    report["gain"] = gain;
    report["stability_radius"] = stability_radius_json(cfg, mp, cfg.epsilon.value_or(1.0));

    const std::string text = report.dump(2) + "\n";
    if (flags.out_dir) write_text(*flags.out_dir + "/certificate.json", text);
    std::cout << text;
    return kExitOk;
}

int cmd_table1(const std::string& variant, const GlobalFlags& flags) {
    std::string model_name;
    if (variant == "c103")
        model_name = "ex1-c103";
    else if (variant == "a2of0.1")
        model_name = "ex1-a2of0.1";
    else
        config_error("--variant must be c103 or a2of0.1");

    struct Cell {
        double a, b, x0;
        int published;
    };
    const Cell cells[] = {{5, 0.04, 0.1, 592}, {5, 0.04, 3, 595}, {5, 0.07, 0.1, 716},
                          {5, 0.07, 3, 719},   {24, 0.07, 0.1, 713}, {24, 0.07, 3, 715}};
    const petis_delay delay{1, 0, 0, 0};
    constexpr int64_t kHorizon = 3000;

    petis_model* raw = nullptr;
    check(petis_model_create_named(model_name.c_str(), delay.gamma, &raw), "model");
    ModelPtr model(raw);

    size_t counts[6];
    std::ostringstream table, csv;
    csv << "a,b,x0,events,published,deviation\n";
    char line[160];
    std::snprintf(line, sizeof line, "%-6s %-6s %-5s %8s %7s %10s\n", "a", "b", "x0", "events",
                  "published", "deviation");
    table << "variant " << variant << " (model " << model_name
          << ", K = -0.45, delta = 2, gamma = 1, horizon 3000)\n"
          << line;
    for (size_t i = 0; i < 6; ++i) {
        const Cell& c = cells[i];
        const petis_trigger trig{c.a, c.b, 2};
        petis_record* rec_raw = nullptr;
        check(petis_simulate(model.get(), &trig, &delay, &c.x0, kHorizon, nullptr, &rec_raw),
              "simulation");
        RecordPtr rec(rec_raw);
        counts[i] = petis_record_event_count(rec.get());
        const double dev = (static_cast<double>(counts[i]) - c.published) / c.published;
        std::snprintf(line, sizeof line, "%-6g %-6g %-5g %8zu %7d %+10.4f\n", c.a, c.b, c.x0,
                      counts[i], c.published, dev);
        table << line;
        std::snprintf(line, sizeof line, "%g,%g,%g,%zu,%d,%.6f\n", c.a, c.b, c.x0, counts[i],
                      c.published, dev);
        csv << line;
    }
    const bool monotone_b = counts[2] > counts[0] && counts[3] > counts[1];
    table << "counts increase with b at a = 5: " << (monotone_b ? "yes" : "no") << '\n';
    table << "|count(a=24) - count(a=5)| at b = 0.07: "
          << (counts[4] > counts[2] ? counts[4] - counts[2] : counts[2] - counts[4]) << " (x0 = 0.1), "
          << (counts[5] > counts[3] ? counts[5] - counts[3] : counts[3] - counts[5]) << " (x0 = 3)\n";

    if (flags.out_dir) write_text(*flags.out_dir + "/table1_" + variant + ".csv", csv.str());
    std::cout << table.str();
    return kExitOk;
}

} // namespace cli
