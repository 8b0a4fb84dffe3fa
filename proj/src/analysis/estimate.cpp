#include "petis/analysis.hpp"

#include "petis/error.hpp"
#include "petis/sampling.hpp"

#include <sstream>

namespace petis {

CertificateEstimate estimate_constants(const DiscreteSystem& sys, const FeedbackLaw& law,
                                       const ScalarField& v, const DelaySpec& delay,
                                       double region_radius, std::size_t sample_count,
                                       std::uint64_t seed) {
    if (sample_count < 1) fail(ErrorCode::InvalidArgument, "sample_count must be >= 1");
    if (!v) fail(ErrorCode::InvalidArgument, "Lyapunov function is empty");
    if (law.state_dim() != sys.state_dim() || law.input_dim() != sys.input_dim())
        fail(ErrorCode::InvalidArgument, "feedback law dimensions do not match the system");

    BallSampler sampler(sys.state_dim(), region_radius, seed);
    CertificateEstimate est;
    est.sample_count = sample_count;
    est.region_radius = region_radius;
    est.c_hat = -1.0;
    est.rho_hat = -1.0;

    for (std::size_t i = 0; i < sample_count; ++i) {
        const Vector x = sampler.next();
        const double vx = v(x);
        if (!(vx > 0.0)) {
            std::ostringstream os;
            os << "V is not positive at sampled state x = [" << x.transpose()
               << "]; V is not positive definite on the region";
            fail(ErrorCode::Certificate, os.str());
        }
        const double growth = v(sys.free_step(x)) / vx;
        if (growth > est.c_hat) {
            est.c_hat = growth;
            est.c_witness = x;
        }
        const Vector after = sys.step(sys.free_iterate(x, delay.gamma()), law(x));
        const double impulse = v(after) / vx;
        if (impulse > est.rho_hat) {
            est.rho_hat = impulse;
            est.rho_witness = x;
        }
    }
    return est;
}

SandwichCheck verify_sandwich(const LyapunovCertificate& cert, double region_radius,
                              std::size_t sample_count, std::uint64_t seed, double rel_tol) {
    BallSampler sampler(cert.state_dim(), region_radius, seed);
    for (std::size_t i = 0; i < sample_count; ++i) {
        const Vector x = sampler.next();
        const double norm = x.norm();
        const double vx = cert(x);
        const double lo = cert.alpha()(norm);
        const double hi = cert.beta()(norm);
        if (!(vx > 0.0) || vx < lo * (1.0 - rel_tol) || vx > hi * (1.0 + rel_tol))
            return SandwichCheck{false, x};
    }
    return SandwichCheck{};
}

} // namespace petis
