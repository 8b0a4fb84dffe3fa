#include "petis/engine.hpp"

#include "petis/certificate_math.hpp"

#include <algorithm>
#include <cmath>

namespace petis {

SubthresholdCheck verify_post_impulse_subthreshold(const SimulationRecord& rec,
                                                   const TriggerConfig& cfg,
                                                   const DelaySpec& delay, double rel_tol) {
    SubthresholdCheck result;
    const double slack = std::log1p(rel_tol);
    for (std::size_t i = 0; i < rec.event_times.size(); ++i) {
        const long step = rec.event_times[i] + delay.gamma() + 1;
        if (step > rec.horizon) break;
        const double v = rec.v_series[static_cast<std::size_t>(step)];
        if (v <= 0.0) continue;
        if (std::log(v) > log_threshold(cfg, step) + slack) {
            result.ok = false;
            result.first_violation = i;
            result.violation_step = step;
            break;
        }
    }
    return result;
}

std::optional<long> min_inter_event(const SimulationRecord& rec) {
    if (rec.event_times.size() < 2) return std::nullopt;
    long best = rec.event_times[1] - rec.event_times[0];
    for (std::size_t i = 2; i < rec.event_times.size(); ++i)
        best = std::min(best, rec.event_times[i] - rec.event_times[i - 1]);
    return best;
}

EnvelopeCheck verify_envelope(const SimulationRecord& rec, const TriggerConfig& cfg,
                              const DelaySpec& delay, double c, double rel_tol) {
    EnvelopeCheck result;
    for (std::size_t k = 0; k < rec.v_series.size(); ++k) {
        const double v = rec.v_series[k];
        if (v <= 0.0) continue;
        const double ratio =
            std::exp(std::log(v) - log_decay_envelope(cfg, delay, c, static_cast<long>(k)));
        result.max_ratio = std::max(result.max_ratio, ratio);
        if (ratio > 1.0 + rel_tol && result.ok) {
            result.ok = false;
            result.first_violation = static_cast<long>(k);
        }
    }
    return result;
}

} // namespace petis
