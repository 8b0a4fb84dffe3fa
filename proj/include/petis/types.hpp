#pragma once

// Domain types shared by every module: the plant, the impulsive feedback law,
// the periodic trigger parameters, the actuator delay and the Lyapunov
// certificate. All of them validate their invariants on construction and are
// immutable afterwards.

#include <Eigen/Dense>

#include <functional>
#include <optional>
#include <string>
#include <utility>

namespace petis {

using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;

using StateMap = std::function<Vector(const Vector&)>;
using ControlledMap = std::function<Vector(const Vector&, const Vector&)>;
using ScalarField = std::function<double(const Vector&)>;

/// x(k+1) = f(x(k), u(k)) with free map g(x) = f(x, 0).
class DiscreteSystem {
public:
    /// g is derived from f.
    DiscreteSystem(int state_dim, int input_dim, ControlledMap f);
    /// Explicit free map; checked against f(x, 0) on sampled states.
    DiscreteSystem(int state_dim, int input_dim, ControlledMap f, StateMap g);

    [[nodiscard]] int state_dim() const noexcept { return n_; }
    [[nodiscard]] int input_dim() const noexcept { return m_; }

    [[nodiscard]] Vector step(const Vector& x, const Vector& u) const { return f_(x, u); }
    [[nodiscard]] Vector free_step(const Vector& x) const { return g_(x); }
    /// Literal `count`-fold composition of the free map.
    [[nodiscard]] Vector free_iterate(Vector x, long count) const;

private:
    int n_;
    int m_;
    ControlledMap f_;
    StateMap g_;
};

/// Impulsive control law k: R^n -> R^m with k(0) = 0.
class FeedbackLaw {
public:
    FeedbackLaw(int state_dim, int input_dim, StateMap law);

    /// u = K x
    static FeedbackLaw linear(const Matrix& gain);

    [[nodiscard]] int state_dim() const noexcept { return n_; }
    [[nodiscard]] int input_dim() const noexcept { return m_; }
    [[nodiscard]] Vector operator()(const Vector& x) const { return k_(x); }

private:
    int n_;
    int m_;
    StateMap k_;
};

/// Threshold a (1-b)^k checked every `delta` steps.
class TriggerConfig {
public:
    TriggerConfig(double a, double b, long delta);

    [[nodiscard]] double a() const noexcept { return a_; }
    [[nodiscard]] double b() const noexcept { return b_; }
    [[nodiscard]] long delta() const noexcept { return delta_; }

private:
    double a_;
    double b_;
    long delta_;
};

/// Total actuator delay, optionally split into sensor-controller and
/// controller-actuator parts. Only the total enters the dynamics.
class DelaySpec {
public:
    explicit DelaySpec(long gamma = 0);
    static DelaySpec split(long sensor_to_controller, long controller_to_actuator);

    [[nodiscard]] long gamma() const noexcept { return gamma_; }
    [[nodiscard]] const std::optional<std::pair<long, long>>& components() const noexcept {
        return parts_;
    }

private:
    long gamma_;
    std::optional<std::pair<long, long>> parts_;
};

/// Class-K function with an explicit inverse. Construction validates
/// monotonicity and the round trip inverse(forward(s)) = s on 20
/// log-spaced arguments (relative tolerance 1e-6).
class ClassK {
public:
    using Fn = std::function<double(double)>;

    ClassK(Fn forward, Fn inverse, std::string name);

    static ClassK identity();
    /// s -> s^2, inverse sqrt.
    static ClassK square();
    /// s -> scale * s^p for p > 0.
    static ClassK power(double scale, double exponent);

    [[nodiscard]] double operator()(double s) const { return forward_(s); }
    [[nodiscard]] double inverse(double v) const { return inverse_(v); }
    [[nodiscard]] const std::string& name() const noexcept { return name_; }

private:
    Fn forward_;
    Fn inverse_;
    std::string name_;
};

/// V together with the constants of the three Lyapunov conditions:
/// alpha(|x|) <= V(x) <= beta(|x|), V(g(x)) <= c V(x) and
/// V(f(g^Gamma(x), k(x))) <= rho V(x).
///
/// c < 1 is accepted (the free dynamics are then already contracting) but
/// guarantee computations use growth_constant() = max(c, 1), which is a
/// valid growth constant whenever c is.
class LyapunovCertificate {
public:
    LyapunovCertificate(int state_dim, ScalarField v, ClassK alpha, ClassK beta, double c,
                        double rho);

    [[nodiscard]] double operator()(const Vector& x) const { return v_(x); }
    [[nodiscard]] const ScalarField& function() const noexcept { return v_; }
    [[nodiscard]] const ClassK& alpha() const noexcept { return alpha_; }
    [[nodiscard]] const ClassK& beta() const noexcept { return beta_; }
    [[nodiscard]] double c() const noexcept { return c_; }
    [[nodiscard]] double rho() const noexcept { return rho_; }
    [[nodiscard]] int state_dim() const noexcept { return n_; }

    [[nodiscard]] bool growth_at_least_one() const noexcept { return c_ >= 1.0; }
    [[nodiscard]] double growth_constant() const noexcept { return c_ >= 1.0 ? c_ : 1.0; }

    [[nodiscard]] LyapunovCertificate with_rho(double rho) const;

private:
    int n_;
    ScalarField v_;
    ClassK alpha_;
    ClassK beta_;
    double c_;
    double rho_;
};

} // namespace petis
