#pragma once

// Closed-form quantities attached to the periodic trigger and the stability
// guarantee: threshold line, sufficient condition, crossing time, decay
// envelope and stability radius. All functions are pure.

#include "petis/types.hpp"

namespace petis {

/// a (1-b)^k
[[nodiscard]] double threshold(const TriggerConfig& cfg, long k);
/// ln a + k ln(1-b). Use this for comparisons over long horizons.
[[nodiscard]] double log_threshold(const TriggerConfig& cfg, long k);

/// True iff value > a (1-b)^k. Compares logarithms when value > 0, so it is
/// safe where the threshold underflows.
[[nodiscard]] bool exceeds_threshold(const TriggerConfig& cfg, long k, double value);

struct ConditionReport {
    double lhs = 0.0;       // rho c^delta / (1-b)^(delta+gamma+1)
    bool satisfied = false; // lhs <= 1
    double margin = 0.0;    // 1 - lhs
    double rho_bound = 0.0; // largest rho for which the condition holds with this c
};

/// Sufficient stability condition rho c^delta <= (1-b)^(delta+gamma+1).
/// Requires rho >= 0 and c >= 1.
[[nodiscard]] ConditionReport check_stability_condition(double rho, double c,
                                                        const TriggerConfig& cfg,
                                                        const DelaySpec& delay);

/// Unique t* > 0 with v0 c^t* = a (1-b)^t*, i.e. ln(a/v0) / ln(c/(1-b)).
/// v0 == a gives 0, v0 == 0 gives +infinity, v0 > a throws ErrorCode::Domain.
[[nodiscard]] double crossing_time(double v0, const TriggerConfig& cfg, double c);
[[nodiscard]] long crossing_time_floor(double t_star);
[[nodiscard]] long crossing_time_ceil(double t_star);

/// (c/(1-b))^(gamma+delta)
[[nodiscard]] double envelope_gain(const TriggerConfig& cfg, const DelaySpec& delay, double c);
/// (c/(1-b))^(gamma+delta) a (1-b)^k, the pointwise bound on V along the
/// closed loop.
[[nodiscard]] double decay_envelope(const TriggerConfig& cfg, const DelaySpec& delay, double c,
                                    long k);
[[nodiscard]] double log_decay_envelope(const TriggerConfig& cfg, const DelaySpec& delay,
                                        double c, long k);

/// Radius sigma(epsilon) such that |x0| < min(sigma, beta^{-1}(a)) keeps
/// |x(k)| < epsilon for all k. Uses cert.growth_constant().
/// Throws ErrorCode::Range when alpha(epsilon) or the power is not representable.
[[nodiscard]] double stability_radius(double epsilon, const LyapunovCertificate& cert,
                                      const TriggerConfig& cfg, const DelaySpec& delay);
/// min(sigma, beta^{-1}(a))
[[nodiscard]] double guaranteed_initial_radius(double epsilon, const LyapunovCertificate& cert,
                                               const TriggerConfig& cfg, const DelaySpec& delay);

struct EnvelopeReport {
    double t_star = 0.0;
    double envelope_gain = 0.0;
    double sigma = 0.0;
};

[[nodiscard]] EnvelopeReport envelope_report(double v0, double epsilon,
                                             const LyapunovCertificate& cert,
                                             const TriggerConfig& cfg, const DelaySpec& delay);

} // namespace petis
