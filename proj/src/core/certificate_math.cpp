#include "petis/certificate_math.hpp"

#include "petis/error.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace petis {
namespace {

void require_time(long k) {
    if (k < 0) fail(ErrorCode::InvalidArgument, "time step must be >= 0");
}

void require_growth(double c) {
    if (!(c >= 1.0) || !std::isfinite(c))
        fail(ErrorCode::Domain, "growth constant c must be finite and >= 1 for the stability guarantee");
}

// ln(c / (1-b)) > 0 whenever c >= 1 and 0 < b < 1.
double log_growth_ratio(const TriggerConfig& cfg, double c) {
    return std::log(c) - std::log1p(-cfg.b());
}

} // namespace

double threshold(const TriggerConfig& cfg, long k) {
    require_time(k);
    return cfg.a() * std::pow(1.0 - cfg.b(), static_cast<double>(k));
}

double log_threshold(const TriggerConfig& cfg, long k) {
    require_time(k);
    return std::log(cfg.a()) + static_cast<double>(k) * std::log1p(-cfg.b());
}

bool exceeds_threshold(const TriggerConfig& cfg, long k, double value) {
    if (value > 0.0) return std::log(value) > log_threshold(cfg, k);
    return value > threshold(cfg, k);
}

ConditionReport check_stability_condition(double rho, double c, const TriggerConfig& cfg,
                                          const DelaySpec& delay) {
    if (!(rho >= 0.0) || !std::isfinite(rho))
        fail(ErrorCode::InvalidArgument, "impulse constant rho must be non-negative and finite");
    require_growth(c);
    const double decay_power = static_cast<double>(cfg.delta() + delay.gamma() + 1);
    const double growth = std::pow(c, static_cast<double>(cfg.delta()));
    const double decay = std::pow(1.0 - cfg.b(), decay_power);

    ConditionReport r;
    r.lhs = rho * growth / decay;
    r.satisfied = r.lhs <= 1.0;
    r.margin = 1.0 - r.lhs;
    r.rho_bound = decay / growth;
    return r;
}

double crossing_time(double v0, const TriggerConfig& cfg, double c) {
    if (!(v0 >= 0.0)) fail(ErrorCode::InvalidArgument, "initial Lyapunov value must be >= 0");
    require_growth(c);
    if (v0 > cfg.a())
        fail(ErrorCode::Domain,
             "V(x0) exceeds a: the initial state lies outside the ball B(beta^-1(a))");
    if (v0 == cfg.a()) return 0.0;
    if (v0 == 0.0) return std::numeric_limits<double>::infinity();
    return std::log(cfg.a() / v0) / log_growth_ratio(cfg, c);
}

long crossing_time_floor(double t_star) { return static_cast<long>(std::floor(t_star)); }
long crossing_time_ceil(double t_star) { return static_cast<long>(std::ceil(t_star)); }

double envelope_gain(const TriggerConfig& cfg, const DelaySpec& delay, double c) {
    return std::pow(c / (1.0 - cfg.b()), static_cast<double>(delay.gamma() + cfg.delta()));
}

double decay_envelope(const TriggerConfig& cfg, const DelaySpec& delay, double c, long k) {
    return envelope_gain(cfg, delay, c) * threshold(cfg, k);
}

double log_decay_envelope(const TriggerConfig& cfg, const DelaySpec& delay, double c, long k) {
    return static_cast<double>(delay.gamma() + cfg.delta()) * (std::log(c) - std::log1p(-cfg.b())) +
           log_threshold(cfg, k);
}

double stability_radius(double epsilon, const LyapunovCertificate& cert, const TriggerConfig& cfg,
                        const DelaySpec& delay) {
    if (!(epsilon > 0.0) || !std::isfinite(epsilon))
        fail(ErrorCode::InvalidArgument, "epsilon must be positive and finite");
    const double c = cert.growth_constant();
    const double alpha_eps = cert.alpha()(epsilon);
    if (!(alpha_eps > 0.0) || !std::isfinite(alpha_eps))
        fail(ErrorCode::Range, "alpha(epsilon) is not a positive finite number");

    const double base = cfg.a() * envelope_gain(cfg, delay, c) / alpha_eps;
    const double exponent = log_growth_ratio(cfg, c) / std::log1p(-cfg.b());
    const double inner = cfg.a() * std::exp(exponent * std::log(base));
    if (!(inner > 0.0) || !std::isfinite(inner))
        fail(ErrorCode::Range, "stability radius argument is not representable");
    const double sigma = cert.beta().inverse(inner);
    if (!(sigma > 0.0) || !std::isfinite(sigma))
        fail(ErrorCode::Range, "stability radius is not representable");
    return sigma;
}

double guaranteed_initial_radius(double epsilon, const LyapunovCertificate& cert,
                                 const TriggerConfig& cfg, const DelaySpec& delay) {
    return std::min(stability_radius(epsilon, cert, cfg, delay), cert.beta().inverse(cfg.a()));
}

EnvelopeReport envelope_report(double v0, double epsilon, const LyapunovCertificate& cert,
                               const TriggerConfig& cfg, const DelaySpec& delay) {
    EnvelopeReport r;
    r.t_star = crossing_time(v0, cfg, cert.growth_constant());
    r.envelope_gain = envelope_gain(cfg, delay, cert.growth_constant());
    r.sigma = stability_radius(epsilon, cert, cfg, delay);
    return r;
}

} // namespace petis
