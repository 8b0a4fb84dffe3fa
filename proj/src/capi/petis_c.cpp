#include "petis/petis.h"

#include "petis/analysis.hpp"
#include "petis/certificate_math.hpp"
#include "petis/engine.hpp"
#include "petis/error.hpp"
#include "petis/linalg.hpp"
#include "petis/models.hpp"

#include <algorithm>
#include <cstring>
#include <fstream>
#include <map>
#include <memory>
#include <new>
#include <string>

using petis::Matrix;
using petis::Vector;

struct petis_model {
    petis::ModelBundle bundle;
    std::map<std::string, Matrix> parameters;
};

struct petis_record {
    petis::SimulationRecord record;
};

namespace {

thread_local std::string g_last_error;
thread_local int64_t g_last_divergence_step = -1;

petis_status to_status(petis::ErrorCode code) {
    switch (code) {
    case petis::ErrorCode::InvalidArgument: return PETIS_ERR_INVALID_ARGUMENT;
    case petis::ErrorCode::Domain: return PETIS_ERR_DOMAIN;
    case petis::ErrorCode::Divergence: return PETIS_ERR_DIVERGENCE;
    case petis::ErrorCode::Certificate: return PETIS_ERR_CERTIFICATE;
    case petis::ErrorCode::Numeric: return PETIS_ERR_NUMERIC;
    case petis::ErrorCode::Range: return PETIS_ERR_RANGE;
    case petis::ErrorCode::Io: return PETIS_ERR_IO;
    }
    return PETIS_ERR_INTERNAL;
}

// Runs `fn`, translating exceptions into status codes and the thread-local
// error message.
template <class Fn>
petis_status guarded(Fn&& fn) {
    try {
        fn();
        g_last_error.clear();
        return PETIS_OK;
    } catch (const petis::DivergenceError& e) {
        g_last_error = e.what();
        g_last_divergence_step = e.step();
        return PETIS_ERR_DIVERGENCE;
    } catch (const petis::Error& e) {
        g_last_error = e.what();
        return to_status(e.code());
    } catch (const std::bad_alloc&) {
        g_last_error = "out of memory";
        return PETIS_ERR_INTERNAL;
    } catch (const std::exception& e) {
        g_last_error = e.what();
        return PETIS_ERR_INTERNAL;
    }
}

template <class T>
void require(const T* p, const char* what) {
    if (p == nullptr) petis::fail(petis::ErrorCode::InvalidArgument, std::string(what) + " is null");
}

void require_dims(int n, int m) {
    if (n < 1 || m < 0) petis::fail(petis::ErrorCode::InvalidArgument, "invalid dimensions");
}

Matrix read_matrix(const double* data, int rows, int cols, const char* what) {
    require(data, what);
    Matrix out(rows, cols);
    for (int r = 0; r < rows; ++r)
        for (int c = 0; c < cols; ++c) out(r, c) = data[r * cols + c];
    return out;
}

Vector read_vector(const double* data, int size, const char* what) {
    require(data, what);
    return Eigen::Map<const Vector>(data, size);
}

void write_matrix(const Matrix& m, double* out) {
    for (Eigen::Index r = 0; r < m.rows(); ++r)
        for (Eigen::Index c = 0; c < m.cols(); ++c) out[r * m.cols() + c] = m(r, c);
}

petis::TriggerConfig read_trigger(const petis_trigger* t) {
    require(t, "trigger");
    return petis::TriggerConfig(t->a, t->b, static_cast<long>(t->delta));
}

petis::DelaySpec read_delay(const petis_delay* d) {
    require(d, "delay");
    if (!d->has_components) return petis::DelaySpec(static_cast<long>(d->gamma));
    if (d->gamma1 + d->gamma2 != d->gamma)
        petis::fail(petis::ErrorCode::InvalidArgument, "delay components must sum to gamma");
    return petis::DelaySpec::split(static_cast<long>(d->gamma1), static_cast<long>(d->gamma2));
}

petis::SimulationOptions read_options(const petis_sim_options* o) {
    petis::SimulationOptions opts;
    if (o != nullptr) {
        opts.allow_v0_above_a = o->allow_v0_above_a != 0;
        if (o->divergence_bound > 0.0) opts.divergence_bound = o->divergence_bound;
    }
    return opts;
}

Vector read_state(const petis_model* model, const double* x) {
    require(x, "state");
    return read_vector(x, model->bundle.system.state_dim(), "state");
}

Matrix scalar_param(double v) { return Matrix::Constant(1, 1, v); }

petis_model* wrap(petis::ModelBundle bundle, std::map<std::string, Matrix> params) {
    return new petis_model{std::move(bundle), std::move(params)};
}

void fill_named_parameters(petis_model& model, const std::string& name, long gamma) {
    if (name.rfind("ex1-", 0) == 0) {
        const petis::ScalarParams p =
            name == "ex1-c103" ? petis::scalar_params_c103() : petis::scalar_params_a2of01();
        model.parameters = {{"A1", scalar_param(p.a1)},
                            {"A2", scalar_param(p.a2)},
                            {"B", scalar_param(p.b)},
                            {"K", scalar_param(petis::kScalarReferenceGain)}};
    } else if (name.rfind("ex2-", 0) == 0) {
        const Matrix k = name == "ex2-paper"
                             ? petis::linear_reference_gain()
                             : petis::design_linear_gain(petis::linear_reference_a(),
                                                         petis::linear_reference_b(),
                                                         petis::DelaySpec(gamma), 0.0)
                                   .gain;
        model.parameters = {
            {"A", petis::linear_reference_a()}, {"B", petis::linear_reference_b()}, {"K", k}};
    } else if (name == "ex3-reference") {
        const petis::NetworkParams p = petis::reference_network_params();
        model.parameters = {{"C", Matrix(p.c_diag.transpose())},
                            {"A", p.a},
                            {"B", p.b},
                            {"K", p.gain},
                            {"L", Matrix(p.lipschitz.transpose())}};
    }
}

} // namespace

extern "C" {

const char* petis_version(void) { return "1.0.0"; }

const char* petis_last_error(void) { return g_last_error.c_str(); }

int64_t petis_last_divergence_step(void) { return g_last_divergence_step; }

const char* petis_status_string(petis_status status) {
    switch (status) {
    case PETIS_OK: return "ok";
    case PETIS_ERR_INVALID_ARGUMENT: return "invalid argument";
    case PETIS_ERR_DOMAIN: return "domain error";
    case PETIS_ERR_DIVERGENCE: return "divergence";
    case PETIS_ERR_CERTIFICATE: return "certificate error";
    case PETIS_ERR_NUMERIC: return "numeric error";
    case PETIS_ERR_RANGE: return "range error";
    case PETIS_ERR_IO: return "i/o error";
    case PETIS_ERR_INTERNAL: return "internal error";
    }
    return "unknown status";
}

petis_status petis_threshold(const petis_trigger* trigger, int64_t k, double* out) {
    return guarded([&] {
        require(out, "out");
        *out = petis::threshold(read_trigger(trigger), static_cast<long>(k));
    });
}

petis_status petis_log_threshold(const petis_trigger* trigger, int64_t k, double* out) {
    return guarded([&] {
        require(out, "out");
        *out = petis::log_threshold(read_trigger(trigger), static_cast<long>(k));
    });
}

petis_status petis_check_condition(double rho, double c, const petis_trigger* trigger,
                                   const petis_delay* delay, petis_condition* out) {
    return guarded([&] {
        require(out, "out");
        const auto r =
            petis::check_stability_condition(rho, c, read_trigger(trigger), read_delay(delay));
        *out = petis_condition{r.lhs, r.satisfied ? 1 : 0, r.margin, r.rho_bound};
    });
}

petis_status petis_crossing_time(double v0, const petis_trigger* trigger, double c, double* out) {
    return guarded([&] {
        require(out, "out");
        *out = petis::crossing_time(v0, read_trigger(trigger), c);
    });
}

petis_status petis_decay_envelope(const petis_trigger* trigger, const petis_delay* delay, double c,
                                  int64_t k, double* out) {
    return guarded([&] {
        require(out, "out");
        *out = petis::decay_envelope(read_trigger(trigger), read_delay(delay), c,
                                     static_cast<long>(k));
    });
}

petis_status petis_stability_radius(const petis_model* model, double epsilon,
                                    const petis_trigger* trigger, const petis_delay* delay,
                                    double* sigma, double* guaranteed_radius) {
    return guarded([&] {
        require(model, "model");
        const auto cfg = read_trigger(trigger);
        const auto d = read_delay(delay);
        const auto& cert = model->bundle.certificate;
        const double s = petis::stability_radius(epsilon, cert, cfg, d);
        if (sigma != nullptr) *sigma = s;
        if (guaranteed_radius != nullptr)
            *guaranteed_radius = std::min(s, cert.beta().inverse(cfg.a()));
    });
}

petis_status petis_model_create_named(const char* name, int64_t gamma, petis_model** out) {
    return guarded([&] {
        require(name, "name");
        require(out, "out");
        auto model = std::make_unique<petis_model>(
            petis_model{petis::make_named_model(name, static_cast<long>(gamma)), {}});
        fill_named_parameters(*model, name, static_cast<long>(gamma));
        *out = model.release();
    });
}

petis_status petis_model_create_scalar(double a1, double a2, double b, double gain, int64_t gamma,
                                       petis_model** out) {
    return guarded([&] {
        require(out, "out");
        petis::ScalarParams p{a1, a2, b, static_cast<long>(gamma)};
        *out = wrap(petis::make_scalar(gain, p), {{"A1", scalar_param(a1)},
                                                  {"A2", scalar_param(a2)},
                                                  {"B", scalar_param(b)},
                                                  {"K", scalar_param(gain)}});
    });
}

petis_status petis_model_create_linear(int n, int m, const double* a, const double* b,
                                       const double* gain, int64_t gamma, petis_model** out) {
    return guarded([&] {
        require(out, "out");
        require_dims(n, m);
        const Matrix am = read_matrix(a, n, n, "A");
        const Matrix bm = read_matrix(b, n, m, "B");
        const Matrix km = read_matrix(gain, m, n, "K");
        *out = wrap(petis::make_linear(am, bm, km, static_cast<long>(gamma)),
                    {{"A", am}, {"B", bm}, {"K", km}});
    });
}

petis_status petis_model_create_network(int n, int m, const double* c_diag, const double* a,
                                        const double* b, const double* gain,
                                        const double* lipschitz, int64_t gamma,
                                        petis_model** out) {
    return guarded([&] {
        require(out, "out");
        require_dims(n, m);
        petis::NetworkParams p;
        p.c_diag = read_vector(c_diag, n, "C");
        p.a = read_matrix(a, n, n, "A");
        p.b = read_matrix(b, n, m, "B");
        p.gain = read_matrix(gain, m, n, "K");
        p.lipschitz = read_vector(lipschitz, n, "L");
        p.gamma = static_cast<long>(gamma);
        *out = wrap(petis::make_network(p), {{"C", Matrix(p.c_diag.transpose())},
                                             {"A", p.a},
                                             {"B", p.b},
                                             {"K", p.gain},
                                             {"L", Matrix(p.lipschitz.transpose())}});
    });
}

petis_status petis_model_create_custom(int n, int m, petis_system_fn f, petis_law_fn law,
                                       petis_lyapunov_fn v, const char* class_k, double c,
                                       double rho, int64_t gamma, void* user, petis_model** out) {
    return guarded([&] {
        require(out, "out");
        require_dims(n, m);
        if (f == nullptr || law == nullptr || v == nullptr)
            petis::fail(petis::ErrorCode::InvalidArgument, "custom model callbacks must be non-null");
        const std::string kind = class_k != nullptr ? class_k : "identity";
        petis::ClassK bound = kind == "square" ? petis::ClassK::square()
                              : kind == "identity"
                                  ? petis::ClassK::identity()
                                  : (petis::fail(petis::ErrorCode::InvalidArgument,
                                                 "class_k must be 'identity' or 'square'"),
                                     petis::ClassK::identity());

        auto system_map = [f, user, n](const Vector& x, const Vector& u) -> Vector {
            Vector next(n);
            if (f(x.data(), u.data(), next.data(), user) != 0)
                petis::fail(petis::ErrorCode::InvalidArgument, "system callback reported failure");
            return next;
        };
        auto law_map = [law, user, m](const Vector& x) -> Vector {
            Vector u(m);
            if (law(x.data(), u.data(), user) != 0)
                petis::fail(petis::ErrorCode::InvalidArgument, "law callback reported failure");
            return u;
        };
        auto lyapunov = [v, user](const Vector& x) { return v(x.data(), user); };

        petis::ModelBundle bundle{"custom",
                                  petis::ModelKind::Custom,
                                  petis::DiscreteSystem(n, m, system_map),
                                  petis::FeedbackLaw(n, m, law_map),
                                  petis::LyapunovCertificate(n, lyapunov, bound, bound, c, rho),
                                  petis::DelaySpec(static_cast<long>(gamma))};
        *out = wrap(std::move(bundle), {});
    });
}

void petis_model_destroy(petis_model* model) { delete model; }

petis_status petis_model_with_constants(const petis_model* model, double c, double rho,
                                        petis_model** out) {
    return guarded([&] {
        require(model, "model");
        require(out, "out");
        const auto& cert = model->bundle.certificate;
        auto copy = std::make_unique<petis_model>(*model);
        copy->bundle.certificate = petis::LyapunovCertificate(cert.state_dim(), cert.function(),
                                                              cert.alpha(), cert.beta(), c, rho);
        *out = copy.release();
    });
}

int petis_model_state_dim(const petis_model* model) {
    return model != nullptr ? model->bundle.system.state_dim() : 0;
}

int petis_model_input_dim(const petis_model* model) {
    return model != nullptr ? model->bundle.system.input_dim() : 0;
}

const char* petis_model_kind(const petis_model* model) {
    if (model == nullptr) return "";
    switch (model->bundle.kind) {
    case petis::ModelKind::Scalar: return "scalar";
    case petis::ModelKind::Linear: return "linear";
    case petis::ModelKind::Network: return "network";
    case petis::ModelKind::Custom: return "custom";
    }
    return "";
}

const char* petis_model_name(const petis_model* model) {
    return model != nullptr ? model->bundle.name.c_str() : "";
}

int64_t petis_model_gamma(const petis_model* model) {
    return model != nullptr ? model->bundle.delay.gamma() : 0;
}

petis_status petis_model_certificate(const petis_model* model, petis_certificate_info* out) {
    return guarded([&] {
        require(model, "model");
        require(out, "out");
        const auto& cert = model->bundle.certificate;
        *out = petis_certificate_info{cert.c(), cert.rho(), cert.growth_constant()};
    });
}

petis_status petis_model_lyapunov(const petis_model* model, const double* x, double* out) {
    return guarded([&] {
        require(model, "model");
        require(out, "out");
        *out = model->bundle.certificate(read_state(model, x));
    });
}

petis_status petis_model_parameter(const petis_model* model, const char* key, double* out,
                                   size_t capacity, int* rows, int* cols) {
    return guarded([&] {
        require(model, "model");
        require(key, "key");
        const auto it = model->parameters.find(key);
        if (it == model->parameters.end())
            petis::fail(petis::ErrorCode::InvalidArgument,
                        std::string("model has no parameter '") + key + "'");
        const Matrix& p = it->second;
        if (rows != nullptr) *rows = static_cast<int>(p.rows());
        if (cols != nullptr) *cols = static_cast<int>(p.cols());
        if (out != nullptr) {
            if (capacity < static_cast<size_t>(p.size()))
                petis::fail(petis::ErrorCode::InvalidArgument, "parameter buffer too small");
            write_matrix(p, out);
        }
    });
}

petis_status petis_simulate(const petis_model* model, const petis_trigger* trigger,
                            const petis_delay* delay, const double* x0, int64_t horizon,
                            const petis_sim_options* options, petis_record** out) {
    g_last_divergence_step = -1;
    return guarded([&] {
        require(model, "model");
        require(out, "out");
        const auto& b = model->bundle;
        auto rec = std::make_unique<petis_record>();
        rec->record = petis::simulate(b.system, b.law, b.certificate.function(),
                                      read_trigger(trigger), read_delay(delay),
                                      read_state(model, x0), static_cast<long>(horizon),
                                      read_options(options));
        *out = rec.release();
    });
}

petis_status petis_brute_force_events(const petis_model* model, const petis_trigger* trigger,
                                      const petis_delay* delay, const double* x0, int64_t horizon,
                                      const petis_sim_options* options, int64_t* out,
                                      size_t capacity, size_t* count) {
    g_last_divergence_step = -1;
    return guarded([&] {
        require(model, "model");
        require(count, "count");
        const auto& b = model->bundle;
        const auto events = petis::brute_force_events(
            b.system, b.law, b.certificate.function(), read_trigger(trigger), read_delay(delay),
            read_state(model, x0), static_cast<long>(horizon), read_options(options));
        *count = events.size();
        if (out != nullptr)
            for (size_t i = 0; i < std::min(capacity, events.size()); ++i) out[i] = events[i];
    });
}

void petis_record_destroy(petis_record* record) { delete record; }

int64_t petis_record_horizon(const petis_record* record) {
    return record != nullptr ? record->record.horizon : 0;
}

size_t petis_record_event_count(const petis_record* record) {
    return record != nullptr ? record->record.event_times.size() : 0;
}

int petis_record_trailing_unactuated(const petis_record* record) {
    return record != nullptr && record->record.trailing_unactuated ? 1 : 0;
}

int petis_record_exploratory(const petis_record* record) {
    return record != nullptr && record->record.exploratory ? 1 : 0;
}

petis_status petis_record_event_times(const petis_record* record, int64_t* out, size_t capacity,
                                      size_t* count) {
    return guarded([&] {
        require(record, "record");
        require(count, "count");
        const auto& ev = record->record.event_times;
        *count = ev.size();
        if (out != nullptr)
            for (size_t i = 0; i < std::min(capacity, ev.size()); ++i) out[i] = ev[i];
    });
}

petis_status petis_record_v_series(const petis_record* record, double* out, size_t capacity,
                                   size_t* count) {
    return guarded([&] {
        require(record, "record");
        require(count, "count");
        const auto& vs = record->record.v_series;
        *count = vs.size();
        if (out != nullptr)
            std::copy_n(vs.begin(), std::min(capacity, vs.size()), out);
    });
}

petis_status petis_record_state(const petis_record* record, int64_t k, double* out) {
    return guarded([&] {
        require(record, "record");
        require(out, "out");
        const auto& states = record->record.states;
        if (k < 0 || static_cast<size_t>(k) >= states.size())
            petis::fail(petis::ErrorCode::InvalidArgument, "time step outside the record");
        const Vector& x = states[static_cast<size_t>(k)];
        std::copy(x.data(), x.data() + x.size(), out);
    });
}

petis_status petis_record_min_inter_event(const petis_record* record, int64_t* out,
                                          int* has_value) {
    return guarded([&] {
        require(record, "record");
        require(has_value, "has_value");
        const auto gap = petis::min_inter_event(record->record);
        *has_value = gap.has_value() ? 1 : 0;
        if (out != nullptr) *out = gap.value_or(0);
    });
}

petis_status petis_verify_post_impulse(const petis_record* record, const petis_trigger* trigger,
                                       const petis_delay* delay, petis_subthreshold_result* out) {
    return guarded([&] {
        require(record, "record");
        require(out, "out");
        const auto r = petis::verify_post_impulse_subthreshold(record->record, read_trigger(trigger),
                                                               read_delay(delay));
        out->ok = r.ok ? 1 : 0;
        out->first_violation_event =
            r.first_violation ? static_cast<int64_t>(*r.first_violation) : -1;
        out->violation_step = r.violation_step.value_or(-1);
    });
}

petis_status petis_verify_envelope(const petis_record* record, const petis_trigger* trigger,
                                   const petis_delay* delay, double c, petis_envelope_result* out) {
    return guarded([&] {
        require(record, "record");
        require(out, "out");
        const auto r =
            petis::verify_envelope(record->record, read_trigger(trigger), read_delay(delay), c);
        out->ok = r.ok ? 1 : 0;
        out->max_ratio = r.max_ratio;
        out->first_violation = r.first_violation.value_or(-1);
    });
}

petis_status petis_record_write_csv(const petis_record* record, const char* path) {
    return guarded([&] {
        require(record, "record");
        require(path, "path");
        std::ofstream file(path);
        if (!file) petis::fail(petis::ErrorCode::Io, std::string("cannot open ") + path);
        petis::write_trajectory_csv(file, record->record);
        if (!file) petis::fail(petis::ErrorCode::Io, std::string("failed writing ") + path);
    });
}

petis_status petis_record_write_plot_csv(const petis_record* record, const petis_trigger* trigger,
                                         const petis_delay* delay, double c, const char* path) {
    return guarded([&] {
        require(record, "record");
        require(path, "path");
        const auto cfg = read_trigger(trigger);
        const auto d = read_delay(delay);
        std::ofstream file(path);
        if (!file) petis::fail(petis::ErrorCode::Io, std::string("cannot open ") + path);
        petis::write_plot_csv(file, record->record, cfg, d, c);
        if (!file) petis::fail(petis::ErrorCode::Io, std::string("failed writing ") + path);
    });
}

petis_status petis_estimate_constants(const petis_model* model, const petis_delay* delay,
                                      double region_radius, size_t sample_count, uint64_t seed,
                                      petis_estimate* out, double* c_witness,
                                      double* rho_witness) {
    return guarded([&] {
        require(model, "model");
        require(out, "out");
        const auto& b = model->bundle;
        const auto est = petis::estimate_constants(b.system, b.law, b.certificate.function(),
                                                   read_delay(delay), region_radius, sample_count,
                                                   seed);
        *out = petis_estimate{est.c_hat, est.rho_hat, est.sample_count, est.region_radius};
        if (c_witness != nullptr)
            std::copy(est.c_witness.data(), est.c_witness.data() + est.c_witness.size(), c_witness);
        if (rho_witness != nullptr)
            std::copy(est.rho_witness.data(), est.rho_witness.data() + est.rho_witness.size(),
                      rho_witness);
    });
}

petis_status petis_scalar_gain_interval(double a1, double a2, double b,
                                        const petis_trigger* trigger, double* lower,
                                        double* upper, int* empty) {
    return guarded([&] {
        const auto iv = petis::scalar_gain_interval(a1, a2, b, read_trigger(trigger));
        if (lower != nullptr) *lower = iv.lower;
        if (upper != nullptr) *upper = iv.upper;
        if (empty != nullptr) *empty = iv.empty() ? 1 : 0;
    });
}

petis_status petis_linear_constants(int n, int m, const double* a, const double* b,
                                    const double* gain, int64_t gamma, double* c, double* rho) {
    return guarded([&] {
        require_dims(n, m);
        const auto lc = petis::linear_constants(read_matrix(a, n, n, "A"), read_matrix(b, n, m, "B"),
                                                read_matrix(gain, m, n, "K"),
                                                petis::DelaySpec(static_cast<long>(gamma)));
        if (c != nullptr) *c = lc.c;
        if (rho != nullptr) *rho = lc.rho;
    });
}

petis_status petis_design_linear_gain(int n, int m, const double* a, const double* b,
                                      int64_t gamma, double target_rho, double* gain_out,
                                      double* achieved_rho, int* target_met) {
    return guarded([&] {
        require_dims(n, m);
        const auto d = petis::design_linear_gain(read_matrix(a, n, n, "A"),
                                                 read_matrix(b, n, m, "B"),
                                                 petis::DelaySpec(static_cast<long>(gamma)),
                                                 target_rho);
        if (gain_out != nullptr) write_matrix(d.gain, gain_out);
        if (achieved_rho != nullptr) *achieved_rho = d.achieved_rho;
        if (target_met != nullptr) *target_met = d.target_met ? 1 : 0;
    });
}

petis_status petis_network_constants(int n, int m, const double* c_diag, const double* a,
                                     const double* b, const double* gain, const double* lipschitz,
                                     double* c, double* rho_min) {
    return guarded([&] {
        require_dims(n, m);
        const auto nc = petis::network_constants(
            read_vector(c_diag, n, "C"), read_matrix(a, n, n, "A"), read_matrix(b, n, m, "B"),
            read_matrix(gain, m, n, "K"), read_vector(lipschitz, n, "L"));
        if (c != nullptr) *c = nc.c;
        if (rho_min != nullptr) *rho_min = nc.rho_min;
    });
}

petis_status petis_schur_feasible(int n, int m, const double* c_diag, const double* a,
                                  const double* b, const double* gain, const double* lipschitz,
                                  double rho, int* feasible) {
    return guarded([&] {
        require_dims(n, m);
        require(feasible, "feasible");
        *feasible = petis::schur_feasible(read_vector(c_diag, n, "C"), read_matrix(a, n, n, "A"),
                                          read_matrix(b, n, m, "B"), read_matrix(gain, m, n, "K"),
                                          read_vector(lipschitz, n, "L"), rho)
                        ? 1
                        : 0;
    });
}

petis_status petis_schur_boundary(int n, int m, const double* c_diag, const double* a,
                                  const double* b, const double* gain, const double* lipschitz,
                                  double lo, double hi, double tolerance, double* out) {
    return guarded([&] {
        require_dims(n, m);
        require(out, "out");
        *out = petis::schur_boundary(read_vector(c_diag, n, "C"), read_matrix(a, n, n, "A"),
                                     read_matrix(b, n, m, "B"), read_matrix(gain, m, n, "K"),
                                     read_vector(lipschitz, n, "L"), lo, hi, tolerance);
    });
}

petis_status petis_spectral_norm(int rows, int cols, const double* m, double* out) {
    return guarded([&] {
        require(out, "out");
        if (rows < 0 || cols < 0) petis::fail(petis::ErrorCode::InvalidArgument, "invalid shape");
        *out = petis::linalg::spectral_norm(read_matrix(m, rows, cols, "matrix"));
    });
}

} // extern "C"
