#pragma once

// Closed-loop simulation of the delayed impulsive system under the periodic
// event trigger, and runtime checks of the guarantees that hold whenever the
// sufficient stability condition is met.

#include "petis/types.hpp"

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <vector>

namespace petis {

enum StepFlag : std::uint8_t {
    kFlagNone = 0,
    kFlagSample = 1U << 0,  // trigger evaluated at this step
    kFlagEvent = 1U << 1,   // trigger fired; measurement stored
    kFlagImpulse = 1U << 2, // nonzero-slot input applied at this step
};

struct SimulationOptions {
    /// Accept V(x0) >= a (exploratory runs outside the guaranteed ball).
    bool allow_v0_above_a = false;
    /// Abort when |x| exceeds this bound.
    double divergence_bound = 1e12;
};

struct SimulationRecord {
    long horizon = 0;
    std::vector<Vector> states;         // x(0..T)
    std::vector<Vector> inputs;         // u(0..T-1)
    std::vector<long> event_times;      // k_i
    std::vector<long> impulse_times;    // k_i + Gamma
    std::vector<double> v_series;       // V(x(k)), k = 0..T
    std::vector<double> threshold_series;
    std::vector<std::uint8_t> flags;    // StepFlag bits, k = 0..T
    /// Last event's impulse falls at or after T and was never applied.
    bool trailing_unactuated = false;
    /// Simulated with allow_v0_above_a while V(x0) >= a.
    bool exploratory = false;

    [[nodiscard]] std::size_t event_count() const noexcept { return event_times.size(); }
    friend bool operator==(const SimulationRecord&, const SimulationRecord&) = default;
};

/// Runs the closed loop for k = 0..horizon.
///
/// Between impulses x(k+1) = g(x(k)). At each sampling instant j*delta that
/// is not inside the window (k_i, k_i + Gamma] of the pending event, an event
/// fires iff V(x(j*delta)) > a (1-b)^(j*delta); the measurement x(k_i) is
/// stored and u(k_i + Gamma) = k(x(k_i)) is applied.
///
/// Throws ErrorCode::Domain when V(x0) >= a unless options allow it, and
/// DivergenceError when the state becomes non-finite or exceeds the bound.
[[nodiscard]] SimulationRecord simulate(const DiscreteSystem& sys, const FeedbackLaw& law,
                                        const ScalarField& v, const TriggerConfig& cfg,
                                        const DelaySpec& delay, const Vector& x0, long horizon,
                                        const SimulationOptions& options = {});

/// Independent oracle for simulate(): steps one time unit at a time and
/// re-evaluates the trigger definition literally at every step.
[[nodiscard]] std::vector<long> brute_force_events(const DiscreteSystem& sys,
                                                   const FeedbackLaw& law, const ScalarField& v,
                                                   const TriggerConfig& cfg,
                                                   const DelaySpec& delay, const Vector& x0,
                                                   long horizon,
                                                   const SimulationOptions& options = {});

struct SubthresholdCheck {
    bool ok = true;
    std::optional<std::size_t> first_violation; // event index i
    std::optional<long> violation_step;         // k_i + Gamma + 1
};

/// V(x(k_i+Gamma+1)) <= a (1-b)^(k_i+Gamma+1) for every event whose
/// post-impulse step lies within the horizon. `rel_tol` absorbs rounding.
[[nodiscard]] SubthresholdCheck verify_post_impulse_subthreshold(const SimulationRecord& rec,
                                                                 const TriggerConfig& cfg,
                                                                 const DelaySpec& delay,
                                                                 double rel_tol = 1e-12);

[[nodiscard]] std::optional<long> min_inter_event(const SimulationRecord& rec);

struct EnvelopeCheck {
    bool ok = true;
    double max_ratio = 0.0; // max_k V(x(k)) / envelope(k)
    std::optional<long> first_violation;
};

/// V(x(k)) <= (c/(1-b))^(Gamma+delta) a (1-b)^k for every recorded k.
[[nodiscard]] EnvelopeCheck verify_envelope(const SimulationRecord& rec, const TriggerConfig& cfg,
                                            const DelaySpec& delay, double c,
                                            double rel_tol = 1e-12);

/// One row per step: k,x_1..x_n,u_1..u_m,V,threshold,is_sample,is_event,is_impulse.
/// Floats use 17 significant digits. The input columns of the final row are 0.
void write_trajectory_csv(std::ostream& out, const SimulationRecord& rec);

/// Plot data: k,V,threshold,envelope.
void write_plot_csv(std::ostream& out, const SimulationRecord& rec, const TriggerConfig& cfg,
                    const DelaySpec& delay, double c);

} // namespace petis
