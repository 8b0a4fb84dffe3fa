#include "petis/types.hpp"

#include "petis/error.hpp"
#include "petis/sampling.hpp"

#include <cmath>
#include <sstream>

namespace petis {

const char* to_string(ErrorCode code) noexcept {
    switch (code) {
    case ErrorCode::InvalidArgument: return "invalid argument";
    case ErrorCode::Domain: return "domain error";
    case ErrorCode::Divergence: return "divergence";
    case ErrorCode::Certificate: return "certificate error";
    case ErrorCode::Numeric: return "numeric error";
    case ErrorCode::Range: return "range error";
    case ErrorCode::Io: return "i/o error";
    }
    return "unknown error";
}

namespace {

constexpr double kZeroTol = 1e-12;
constexpr int kConsistencySamples = 16;

void check_dims(int n, int m) {
    if (n < 1) fail(ErrorCode::InvalidArgument, "state dimension must be positive");
    if (m < 0) fail(ErrorCode::InvalidArgument, "input dimension must be non-negative");
}

} // namespace

DiscreteSystem::DiscreteSystem(int state_dim, int input_dim, ControlledMap f)
    : n_(state_dim), m_(input_dim), f_(std::move(f)) {
    check_dims(n_, m_);
    if (!f_) fail(ErrorCode::InvalidArgument, "system map is empty");
    g_ = [f = f_, m = m_](const Vector& x) { return f(x, Vector::Zero(m)); };
    const Vector origin = f_(Vector::Zero(n_), Vector::Zero(m_));
    if (origin.size() != n_) fail(ErrorCode::InvalidArgument, "system map returns wrong dimension");
    if (origin.norm() > kZeroTol)
        fail(ErrorCode::InvalidArgument, "f(0, 0) must be 0 (the origin must be an equilibrium)");
}

DiscreteSystem::DiscreteSystem(int state_dim, int input_dim, ControlledMap f, StateMap g)
    : DiscreteSystem(state_dim, input_dim, std::move(f)) {
    if (!g) fail(ErrorCode::InvalidArgument, "free map is empty");
    BallSampler sampler(n_, 1.0, 0x5eed);
    for (int i = 0; i < kConsistencySamples; ++i) {
        const Vector x = sampler.next();
        const Vector via_f = f_(x, Vector::Zero(m_));
        const Vector via_g = g(x);
        if (via_g.size() != n_ || (via_g - via_f).norm() > kZeroTol * (1.0 + via_f.norm()))
            fail(ErrorCode::InvalidArgument, "free map g(x) disagrees with f(x, 0)");
    }
    g_ = std::move(g);
}

Vector DiscreteSystem::free_iterate(Vector x, long count) const {
    for (long i = 0; i < count; ++i) x = g_(x);
    return x;
}

FeedbackLaw::FeedbackLaw(int state_dim, int input_dim, StateMap law)
    : n_(state_dim), m_(input_dim), k_(std::move(law)) {
    check_dims(n_, m_);
    if (!k_) fail(ErrorCode::InvalidArgument, "feedback law is empty");
    const Vector at_origin = k_(Vector::Zero(n_));
    if (at_origin.size() != m_)
        fail(ErrorCode::InvalidArgument, "feedback law returns wrong dimension");
    if (at_origin.norm() > kZeroTol) fail(ErrorCode::InvalidArgument, "feedback law must satisfy k(0) = 0");
}

FeedbackLaw FeedbackLaw::linear(const Matrix& gain) {
    return FeedbackLaw(static_cast<int>(gain.cols()), static_cast<int>(gain.rows()),
                       [gain](const Vector& x) -> Vector { return gain * x; });
}

TriggerConfig::TriggerConfig(double a, double b, long delta) : a_(a), b_(b), delta_(delta) {
    if (!(a > 0.0) || !std::isfinite(a))
        fail(ErrorCode::InvalidArgument, "trigger parameter a must be positive and finite");
    if (!(b > 0.0 && b < 1.0))
        fail(ErrorCode::InvalidArgument, "trigger parameter b must lie in the open interval (0, 1)");
    if (delta < 1) fail(ErrorCode::InvalidArgument, "sampling period delta must be an integer >= 1");
}

DelaySpec::DelaySpec(long gamma) : gamma_(gamma) {
    if (gamma < 0) fail(ErrorCode::InvalidArgument, "delay gamma must be >= 0");
}

DelaySpec DelaySpec::split(long sensor_to_controller, long controller_to_actuator) {
    if (sensor_to_controller < 0 || controller_to_actuator < 0)
        fail(ErrorCode::InvalidArgument, "delay components must be >= 0");
    DelaySpec d(sensor_to_controller + controller_to_actuator);
    d.parts_ = std::make_pair(sensor_to_controller, controller_to_actuator);
    return d;
}

ClassK::ClassK(Fn forward, Fn inverse, std::string name)
    : forward_(std::move(forward)), inverse_(std::move(inverse)), name_(std::move(name)) {
    if (!forward_ || !inverse_) fail(ErrorCode::InvalidArgument, "class-K function needs both directions");
    if (std::abs(forward_(0.0)) > kZeroTol)
        fail(ErrorCode::InvalidArgument, "class-K function " + name_ + " must vanish at zero");
    constexpr int kPoints = 20;
    constexpr double kRelTol = 1e-6;
    double prev = forward_(0.0);
    for (int i = 0; i < kPoints; ++i) {
        const double s = std::pow(10.0, -3.0 + 6.0 * i / (kPoints - 1));
        const double v = forward_(s);
        if (!(v > prev))
            fail(ErrorCode::InvalidArgument, "class-K function " + name_ + " is not strictly increasing");
        const double back = inverse_(v);
        if (!(std::abs(back - s) <= kRelTol * s)) {
            std::ostringstream os;
            os << "inverse of class-K function " << name_ << " fails round trip at s=" << s;
            fail(ErrorCode::InvalidArgument, os.str());
        }
        prev = v;
    }
}

ClassK ClassK::identity() {
    return ClassK([](double s) { return s; }, [](double v) { return v; }, "identity");
}

ClassK ClassK::square() {
    return ClassK([](double s) { return s * s; }, [](double v) { return std::sqrt(v); }, "square");
}

ClassK ClassK::power(double scale, double exponent) {
    if (!(scale > 0.0) || !(exponent > 0.0))
        fail(ErrorCode::InvalidArgument, "power class-K function needs positive scale and exponent");
    std::ostringstream name;
    name << scale << "*s^" << exponent;
    return ClassK([scale, exponent](double s) { return scale * std::pow(s, exponent); },
                  [scale, exponent](double v) { return std::pow(v / scale, 1.0 / exponent); },
                  name.str());
}

LyapunovCertificate::LyapunovCertificate(int state_dim, ScalarField v, ClassK alpha, ClassK beta,
                                         double c, double rho)
    : n_(state_dim), v_(std::move(v)), alpha_(std::move(alpha)), beta_(std::move(beta)), c_(c),
      rho_(rho) {
    if (n_ < 1) fail(ErrorCode::InvalidArgument, "certificate state dimension must be positive");
    if (!v_) fail(ErrorCode::InvalidArgument, "Lyapunov function is empty");
    if (!(c > 0.0) || !std::isfinite(c))
        fail(ErrorCode::InvalidArgument, "growth constant c must be positive and finite");
    if (!(rho >= 0.0) || !std::isfinite(rho))
        fail(ErrorCode::InvalidArgument, "impulse constant rho must be non-negative and finite");
    if (std::abs(v_(Vector::Zero(n_))) > kZeroTol)
        fail(ErrorCode::Certificate, "Lyapunov function must vanish at the origin");
}

LyapunovCertificate LyapunovCertificate::with_rho(double rho) const {
    return LyapunovCertificate(n_, v_, alpha_, beta_, c_, rho);
}

} // namespace petis
