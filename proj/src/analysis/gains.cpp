#include "petis/analysis.hpp"

#include "petis/error.hpp"
#include "petis/linalg.hpp"

#include <Eigen/QR>

#include <cmath>

namespace petis {
namespace {

void check_network_dims(const Vector& c_diag, const Matrix& a, const Matrix& b, const Matrix& k,
                        const Vector& lipschitz) {
    const Eigen::Index n = c_diag.size();
    if (n < 1) fail(ErrorCode::InvalidArgument, "network needs at least one neuron");
    if (a.rows() != n || a.cols() != n) fail(ErrorCode::InvalidArgument, "A must be n x n");
    if (b.rows() != n) fail(ErrorCode::InvalidArgument, "B must have n rows");
    if (k.rows() != b.cols() || k.cols() != n) fail(ErrorCode::InvalidArgument, "K must be m x n");
    if (lipschitz.size() != n) fail(ErrorCode::InvalidArgument, "L must have n diagonal entries");
}

Matrix closed_loop_linear_part(const Vector& c_diag, const Matrix& b, const Matrix& k) {
    Matrix m = b * k;
    m.diagonal() += c_diag;
    return m;
}

} // namespace

GainInterval scalar_gain_interval(double a1, double a2, double b_gain, const TriggerConfig& cfg) {
    if (b_gain == 0.0) fail(ErrorCode::InvalidArgument, "input gain B must be nonzero");
    if (b_gain < 0.0) fail(ErrorCode::InvalidArgument, "input gain B must be positive");
    const double c = a1 + a2;
    if (!(c >= 1.0)) fail(ErrorCode::Domain, "A1 + A2 must be >= 1");
    const double delta = static_cast<double>(cfg.delta());
    GainInterval iv;
    iv.lower = -a1 / b_gain;
    iv.upper = (std::pow(1.0 - cfg.b(), delta + 2.0) / std::pow(c, delta) - c * c) / b_gain;
    return iv;
}

LinearConstants linear_constants(const Matrix& a, const Matrix& b, const Matrix& k,
                                 const DelaySpec& delay) {
    if (a.rows() != a.cols()) fail(ErrorCode::InvalidArgument, "A must be square");
    if (b.rows() != a.rows() || k.rows() != b.cols() || k.cols() != a.cols())
        fail(ErrorCode::InvalidArgument, "A, B, K dimensions are inconsistent");
    LinearConstants out;
    out.c = linalg::spectral_norm(a);
    out.rho = linalg::spectral_norm(linalg::matrix_power(a, delay.gamma() + 1) + b * k);
    return out;
}

LinearGainDesign design_linear_gain(const Matrix& a, const Matrix& b, const DelaySpec& delay,
                                    double target_rho) {
    if (a.rows() != a.cols() || b.rows() != a.rows())
        fail(ErrorCode::InvalidArgument, "A must be n x n and B must have n rows");
    if (!(target_rho >= 0.0)) fail(ErrorCode::InvalidArgument, "target rho must be >= 0");
    const Matrix ap = linalg::matrix_power(a, delay.gamma() + 1);

    LinearGainDesign d;
    bool solved = false;
    if (b.rows() == b.cols()) {
        Eigen::FullPivLU<Matrix> lu(b);
        if (lu.isInvertible()) {
            d.gain = -lu.solve(ap);
            solved = true;
        }
    }
    if (!solved) {
        Eigen::CompleteOrthogonalDecomposition<Matrix> cod(b);
        d.gain = -cod.solve(ap);
    }
    d.achieved_rho = linalg::spectral_norm(ap + b * d.gain);
    // Exact cancellation still leaves roundoff of order eps * |A^(Gamma+1)|.
    d.target_met = d.achieved_rho <= target_rho + 1e-12 * linalg::spectral_norm(ap);
    return d;
}

NetworkConstants network_constants(const Vector& c_diag, const Matrix& a, const Matrix& b,
                                   const Matrix& k, const Vector& lipschitz) {
    check_network_dims(c_diag, a, b, k, lipschitz);
    const double a_norm_sq = std::pow(linalg::spectral_norm(a), 2);
    const Matrix m = closed_loop_linear_part(c_diag, b, k);

    Matrix s = m.transpose() * m;
    s.diagonal() += a_norm_sq * lipschitz.array().square().matrix();

    NetworkConstants out;
    out.c = 2.0 * (c_diag.array().square().maxCoeff() +
                   a_norm_sq * lipschitz.array().square().maxCoeff());
    out.rho_min = 2.0 * linalg::max_eigenvalue_symmetric(s);
    return out;
}

bool schur_feasible(const Vector& c_diag, const Matrix& a, const Matrix& b, const Matrix& k,
                    const Vector& lipschitz, double rho) {
    check_network_dims(c_diag, a, b, k, lipschitz);
    const Eigen::Index n = c_diag.size();
    const double a_norm_sq = std::pow(linalg::spectral_norm(a), 2);
    const Matrix m = closed_loop_linear_part(c_diag, b, k);

    Matrix block(2 * n, 2 * n);
    block.topLeftCorner(n, n).setIdentity();
    block.topRightCorner(n, n) = m;
    block.bottomLeftCorner(n, n) = m.transpose();
    Matrix lower = Matrix::Zero(n, n);
    lower.diagonal() = Vector::Constant(n, 0.5 * rho) -
                       (a_norm_sq * lipschitz.array().square()).matrix();
    block.bottomRightCorner(n, n) = lower;
    return linalg::is_positive_semidefinite(block);
}

double schur_boundary(const Vector& c_diag, const Matrix& a, const Matrix& b, const Matrix& k,
                      const Vector& lipschitz, double lo, double hi, double tolerance) {
    if (!(hi > lo)) fail(ErrorCode::InvalidArgument, "bisection bracket must satisfy lo < hi");
    if (!schur_feasible(c_diag, a, b, k, lipschitz, hi))
        fail(ErrorCode::Domain, "upper end of the bisection bracket is infeasible");
    if (schur_feasible(c_diag, a, b, k, lipschitz, lo)) return lo;
    while (hi - lo > tolerance) {
        const double mid = 0.5 * (lo + hi);
        if (schur_feasible(c_diag, a, b, k, lipschitz, mid))
            hi = mid;
        else
            lo = mid;
    }
    return 0.5 * (lo + hi);
}

} // namespace petis
