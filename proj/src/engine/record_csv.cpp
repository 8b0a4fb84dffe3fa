#include "petis/engine.hpp"

#include "petis/certificate_math.hpp"

#include <cstdio>
#include <ostream>
#include <string>

namespace petis {
namespace {

std::string fmt17(double value) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", value);
    return buf;
}

} // namespace

void write_trajectory_csv(std::ostream& out, const SimulationRecord& rec) {
    const Eigen::Index n = rec.states.empty() ? 0 : rec.states.front().size();
    const Eigen::Index m = rec.inputs.empty() ? 0 : rec.inputs.front().size();

    out << "k";
    for (Eigen::Index i = 1; i <= n; ++i) out << ",x_" << i;
    for (Eigen::Index i = 1; i <= m; ++i) out << ",u_" << i;
    out << ",V,threshold,is_sample,is_event,is_impulse\n";

    for (std::size_t k = 0; k < rec.states.size(); ++k) {
        out << k;
        for (Eigen::Index i = 0; i < n; ++i) out << ',' << fmt17(rec.states[k][i]);
        for (Eigen::Index i = 0; i < m; ++i)
            out << ',' << fmt17(k < rec.inputs.size() ? rec.inputs[k][i] : 0.0);
        const std::uint8_t f = rec.flags[k];
        out << ',' << fmt17(rec.v_series[k]) << ',' << fmt17(rec.threshold_series[k]) << ','
            << ((f & kFlagSample) ? 1 : 0) << ',' << ((f & kFlagEvent) ? 1 : 0) << ','
            << ((f & kFlagImpulse) ? 1 : 0) << '\n';
    }
}

void write_plot_csv(std::ostream& out, const SimulationRecord& rec, const TriggerConfig& cfg,
                    const DelaySpec& delay, double c) {
    out << "k,V,threshold,envelope\n";
    for (std::size_t k = 0; k < rec.v_series.size(); ++k) {
        out << k << ',' << fmt17(rec.v_series[k]) << ',' << fmt17(rec.threshold_series[k]) << ','
            << fmt17(decay_envelope(cfg, delay, c, static_cast<long>(k))) << '\n';
    }
}

} // namespace petis
