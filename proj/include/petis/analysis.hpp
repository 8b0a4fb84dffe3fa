#pragma once

// Certificate constants: sampled estimation for black-box systems and the
// closed forms (plus gain design) for the scalar, linear and Lipschitz
// network families.

#include "petis/types.hpp"

#include <cstdint>
#include <optional>

namespace petis {

struct CertificateEstimate {
    double c_hat = 0.0;   // max V(g(x)) / V(x)
    double rho_hat = 0.0; // max V(f(g^Gamma(x), k(x))) / V(x)
    std::size_t sample_count = 0;
    double region_radius = 0.0;
    Vector c_witness;
    Vector rho_witness;
};

/// Suprema of the growth and impulse ratios over `sample_count` seeded
/// low-discrepancy points of the ball of radius `region_radius` (origin
/// excluded). Throws ErrorCode::Certificate if V vanishes at a sample.
[[nodiscard]] CertificateEstimate estimate_constants(const DiscreteSystem& sys,
                                                     const FeedbackLaw& law, const ScalarField& v,
                                                     const DelaySpec& delay, double region_radius,
                                                     std::size_t sample_count, std::uint64_t seed);

struct SandwichCheck {
    bool ok = true;
    std::optional<Vector> witness;
};

/// Sampled check of V(x) > 0 and alpha(|x|) <= V(x) <= beta(|x|).
[[nodiscard]] SandwichCheck verify_sandwich(const LyapunovCertificate& cert, double region_radius,
                                            std::size_t sample_count, std::uint64_t seed,
                                            double rel_tol = 1e-12);

/// Admissible gains (lower, upper] for x+ = A1 x + A2 tanh(x) + B u with
/// Gamma = 1: lower = -A1/B keeps the closed loop positive, upper makes the
/// sufficient condition hold with c = A1 + A2 and rho = c^2 + B K.
struct GainInterval {
    double lower = 0.0; // exclusive
    double upper = 0.0; // inclusive
    [[nodiscard]] bool empty() const noexcept { return !(upper > lower); }
    [[nodiscard]] bool contains(double k) const noexcept { return k > lower && k <= upper; }
};

[[nodiscard]] GainInterval scalar_gain_interval(double a1, double a2, double b_gain,
                                                const TriggerConfig& cfg);

struct LinearConstants {
    double c = 0.0;   // |A|
    double rho = 0.0; // |A^(Gamma+1) + B K|
};

[[nodiscard]] LinearConstants linear_constants(const Matrix& a, const Matrix& b, const Matrix& k,
                                               const DelaySpec& delay);

struct LinearGainDesign {
    Matrix gain;
    double achieved_rho = 0.0;
    bool target_met = false;
};

/// K = -B^+ A^(Gamma+1), the least-squares minimiser of |A^(Gamma+1) + B K|
/// (exact cancellation when B is invertible).
[[nodiscard]] LinearGainDesign design_linear_gain(const Matrix& a, const Matrix& b,
                                                  const DelaySpec& delay, double target_rho);

struct NetworkConstants {
    double c = 0.0;
    double rho_min = 0.0;
};

/// c = 2 (max c_i^2 + |A|^2 max l_i^2),
/// rho_min = 2 lambda_max((C+BK)^T (C+BK) + |A|^2 L^2).
/// `c_diag` and `lipschitz` hold the diagonals of C and L.
[[nodiscard]] NetworkConstants network_constants(const Vector& c_diag, const Matrix& a,
                                                 const Matrix& b, const Matrix& k,
                                                 const Vector& lipschitz);

/// [[I, C+BK], [(C+BK)^T, rho/2 I - |A|^2 L^2]] is positive semidefinite.
[[nodiscard]] bool schur_feasible(const Vector& c_diag, const Matrix& a, const Matrix& b,
                                  const Matrix& k, const Vector& lipschitz, double rho);

/// Smallest rho accepted by schur_feasible, located by bisection on [lo, hi].
[[nodiscard]] double schur_boundary(const Vector& c_diag, const Matrix& a, const Matrix& b,
                                    const Matrix& k, const Vector& lipschitz, double lo, double hi,
                                    double tolerance = 1e-8);

} // namespace petis
