#pragma once

// Ready-made plants with their analytic Lyapunov certificates.

#include "petis/types.hpp"

#include <functional>
#include <string>
#include <vector>

namespace petis {

enum class ModelKind { Scalar, Linear, Network, Custom };

/// A plant, its impulsive law and a certificate valid for `delay`.
struct ModelBundle {
    std::string name;
    ModelKind kind = ModelKind::Custom;
    DiscreteSystem system;
    FeedbackLaw law;
    LyapunovCertificate certificate;
    DelaySpec delay;
};

// ---------------------------------------------------------------------------
// Scalar positive system x+ = A1 x + A2 tanh(x) + B u, V = |x|.

struct ScalarParams {
    double a1 = 1.02;
    double a2 = 0.01;
    double b = 1.5;
    long gamma = 1;
};

/// "ex1-c103": A2 = 0.01 so that A1 + A2 = 1.03.
[[nodiscard]] ScalarParams scalar_params_c103();
/// "ex1-a2of0.1": A2 = 0.1 as printed alongside A1 = 1.02.
[[nodiscard]] ScalarParams scalar_params_a2of01();

inline constexpr double kScalarReferenceGain = -0.45;

/// c = A1 + A2, rho = c^(Gamma+1) + B K. Requires A1, A2 >= 0, B > 0 and
/// A1 + B K > 0 (positivity); throws ErrorCode::InvalidArgument otherwise.
[[nodiscard]] ModelBundle make_scalar(double gain, const ScalarParams& params = {});

// ---------------------------------------------------------------------------
// Linear system x+ = A x + B u, V = |x|.

[[nodiscard]] Matrix linear_reference_a();
[[nodiscard]] Matrix linear_reference_b();
[[nodiscard]] Matrix linear_reference_gain();

/// c = |A|, rho = |A^(Gamma+1) + B K|.
[[nodiscard]] ModelBundle make_linear(const Matrix& a, const Matrix& b, const Matrix& gain,
                                      long gamma);

// ---------------------------------------------------------------------------
// Lipschitz network x+ = C x + A F(x) + B u, V = x^T x.

struct NetworkParams {
    Vector c_diag;
    Matrix a;
    Matrix b;
    Matrix gain;
    Vector lipschitz;
    /// Coordinate-wise activation, activation(i, y). Default tanh.
    std::function<double(int, double)> activation;
    long gamma = 0;
};

/// Checks 0 < |c_i| < 1, l_i > 0 and spot-checks the Lipschitz bounds of the
/// activation on sampled pairs. Certificate constants from network_constants.
[[nodiscard]] ModelBundle make_network(const NetworkParams& params);

/// Repository-chosen 4-neuron instance (seeded, not taken from any
/// publication): C, A, invertible B and the cancelling gain K = -B^{-1} C.
[[nodiscard]] NetworkParams reference_network_params();

// ---------------------------------------------------------------------------

/// Builds a bundle by registry name: "ex1-c103", "ex1-a2of0.1", "ex2-paper",
/// "ex2-designed", "ex3-reference".
[[nodiscard]] ModelBundle make_named_model(const std::string& name, long gamma);
[[nodiscard]] std::vector<std::string> model_names();

} // namespace petis
