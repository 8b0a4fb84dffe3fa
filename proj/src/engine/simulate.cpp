#include "petis/engine.hpp"

#include "petis/certificate_math.hpp"
#include "petis/error.hpp"

#include <cmath>
#include <sstream>

namespace petis {
namespace {

void check_inputs(const DiscreteSystem& sys, const FeedbackLaw& law, const ScalarField& v,
                  const Vector& x0, long horizon) {
    if (horizon < 1) fail(ErrorCode::InvalidArgument, "horizon must be >= 1");
    if (!v) fail(ErrorCode::InvalidArgument, "Lyapunov function is empty");
    if (law.state_dim() != sys.state_dim() || law.input_dim() != sys.input_dim())
        fail(ErrorCode::InvalidArgument, "feedback law dimensions do not match the system");
    if (x0.size() != sys.state_dim())
        fail(ErrorCode::InvalidArgument, "initial state has the wrong dimension");
}

bool check_initial_ball(double v0, const TriggerConfig& cfg, const SimulationOptions& options) {
    if (v0 < cfg.a()) return false;
    if (options.allow_v0_above_a) return true;
    std::ostringstream os;
    os << "V(x0) = " << v0 << " >= a = " << cfg.a()
       << ": x0 must lie in the ball B(beta^-1(a)) for the stability guarantee"
          " (set allow_v0_above_a for an exploratory run)";
    fail(ErrorCode::Domain, os.str());
}

void guard_divergence(const Vector& x, long k, const SimulationOptions& options) {
    if (!x.allFinite()) {
        std::ostringstream os;
        os << "state became non-finite at step " << k;
        throw DivergenceError(k, os.str());
    }
    if (x.norm() > options.divergence_bound) {
        std::ostringstream os;
        os << "state norm exceeded " << options.divergence_bound << " at step " << k;
        throw DivergenceError(k, os.str());
    }
}

// Smallest multiple of delta strictly greater than t.
long next_multiple_after(long t, long delta) { return (t / delta + 1) * delta; }

struct PendingImpulse {
    long at = -1;
    Vector measurement;
};

} // namespace

SimulationRecord simulate(const DiscreteSystem& sys, const FeedbackLaw& law, const ScalarField& v,
                          const TriggerConfig& cfg, const DelaySpec& delay, const Vector& x0,
                          long horizon, const SimulationOptions& options) {
    check_inputs(sys, law, v, x0, horizon);

    SimulationRecord rec;
    rec.horizon = horizon;
    rec.exploratory = check_initial_ball(v(x0), cfg, options);
    const auto steps = static_cast<std::size_t>(horizon) + 1;
    rec.states.reserve(steps);
    rec.inputs.reserve(steps - 1);
    rec.v_series.reserve(steps);
    rec.threshold_series.reserve(steps);
    rec.flags.reserve(steps);

    const long gamma = delay.gamma();
    long next_sample = cfg.delta();
    std::optional<PendingImpulse> pending;
    Vector x = x0;

    for (long k = 0;; ++k) {
        guard_divergence(x, k, options);
        const double vk = v(x);
        if (!std::isfinite(vk)) {
            std::ostringstream os;
            os << "Lyapunov value became non-finite at step " << k;
            throw DivergenceError(k, os.str());
        }
        rec.states.push_back(x);
        rec.v_series.push_back(vk);
        rec.threshold_series.push_back(threshold(cfg, k));

        std::uint8_t flag = kFlagNone;
        if (k == next_sample) {
            flag |= kFlagSample;
            if (exceeds_threshold(cfg, k, vk)) {
                flag |= kFlagEvent;
                rec.event_times.push_back(k);
                rec.impulse_times.push_back(k + gamma);
                pending = PendingImpulse{k + gamma, x};
                next_sample = next_multiple_after(k + gamma, cfg.delta());
            } else {
                next_sample += cfg.delta();
            }
        }

        if (k == horizon) {
            rec.flags.push_back(flag);
            break;
        }

        if (pending && pending->at == k) {
            const Vector u = law(pending->measurement);
            flag |= kFlagImpulse;
            rec.inputs.push_back(u);
            x = sys.step(x, u);
            pending.reset();
        } else {
            rec.inputs.push_back(Vector::Zero(sys.input_dim()));
            x = sys.free_step(x);
        }
        rec.flags.push_back(flag);
    }

    rec.trailing_unactuated = pending.has_value();
    return rec;
}

std::vector<long> brute_force_events(const DiscreteSystem& sys, const FeedbackLaw& law,
                                     const ScalarField& v, const TriggerConfig& cfg,
                                     const DelaySpec& delay, const Vector& x0, long horizon,
                                     const SimulationOptions& options) {
    check_inputs(sys, law, v, x0, horizon);
    check_initial_ball(v(x0), cfg, options);

    std::vector<long> events;
    Vector stored;
    Vector x = x0;
    for (long k = 0; k <= horizon; ++k) {
        guard_divergence(x, k, options);

        const bool sampling_instant = k > 0 && k % cfg.delta() == 0;
        const bool past_pending = events.empty() || k > events.back() + delay.gamma();
        if (sampling_instant && past_pending) {
            const double level = cfg.a() * std::pow(1.0 - cfg.b(), static_cast<double>(k));
            if (v(x) > level) {
                events.push_back(k);
                stored = x;
            }
        }
        if (k == horizon) break;

        if (!events.empty() && k == events.back() + delay.gamma())
            x = sys.step(x, law(stored));
        else
            x = sys.free_step(x);
    }
    return events;
}

} // namespace petis
