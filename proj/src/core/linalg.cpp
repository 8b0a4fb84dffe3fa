#include "petis/linalg.hpp"

#include "petis/error.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>

namespace petis::linalg {
namespace {

constexpr int kMaxJacobiSweeps = 100;

void require_finite(const Matrix& m) {
    if (!m.allFinite()) fail(ErrorCode::InvalidArgument, "matrix has non-finite entries");
}

double spectral_norm_2x2(const Matrix& m) {
    // sigma_max^2 = (t + sqrt(t^2 - 4 d^2)) / 2 with t = |M|_F^2, d = det M.
    const double t = m.squaredNorm();
    const double d = m(0, 0) * m(1, 1) - m(0, 1) * m(1, 0);
    const double disc = std::max(0.0, (t - 2.0 * d) * (t + 2.0 * d));
    return std::sqrt(0.5 * (t + std::sqrt(disc)));
}

} // namespace

Vector symmetric_eigenvalues_jacobi(const Matrix& s) {
    require_finite(s);
    if (s.rows() != s.cols()) fail(ErrorCode::InvalidArgument, "matrix must be square");
    const Eigen::Index n = s.rows();
    Matrix a = 0.5 * (s + s.transpose());
    const double scale = a.norm();
    if (scale == 0.0) return Vector::Zero(n);

    for (int sweep = 0; sweep < kMaxJacobiSweeps; ++sweep) {
        double off = 0.0;
        for (Eigen::Index p = 0; p < n; ++p)
            for (Eigen::Index q = p + 1; q < n; ++q) off += a(p, q) * a(p, q);
        if (std::sqrt(off) <= 1e-14 * scale) {
            Vector ev = a.diagonal();
            std::sort(ev.begin(), ev.end());
            return ev;
        }
        for (Eigen::Index p = 0; p < n; ++p) {
            for (Eigen::Index q = p + 1; q < n; ++q) {
                const double apq = a(p, q);
                if (apq == 0.0) continue;
                const double theta = (a(q, q) - a(p, p)) / (2.0 * apq);
                const double t = (theta >= 0.0 ? 1.0 : -1.0) /
                                 (std::abs(theta) + std::sqrt(theta * theta + 1.0));
                const double c = 1.0 / std::sqrt(t * t + 1.0);
                const double sn = t * c;
                for (Eigen::Index k = 0; k < n; ++k) {
                    const double akp = a(k, p);
                    const double akq = a(k, q);
                    a(k, p) = c * akp - sn * akq;
                    a(k, q) = sn * akp + c * akq;
                }
                for (Eigen::Index k = 0; k < n; ++k) {
                    const double apk = a(p, k);
                    const double aqk = a(q, k);
                    a(p, k) = c * apk - sn * aqk;
                    a(q, k) = sn * apk + c * aqk;
                }
                a(p, q) = 0.0;
                a(q, p) = 0.0;
            }
        }
    }
    fail(ErrorCode::Numeric, "Jacobi eigenvalue iteration did not converge");
}

double spectral_norm_iterative(const Matrix& m) {
    require_finite(m);
    if (m.size() == 0) return 0.0;
    const Matrix gram = m.rows() <= m.cols() ? Matrix(m * m.transpose()) : Matrix(m.transpose() * m);
    const Vector ev = symmetric_eigenvalues_jacobi(gram);
    return std::sqrt(std::max(0.0, ev[ev.size() - 1]));
}

double spectral_norm(const Matrix& m) {
    require_finite(m);
    if (m.size() == 0) return 0.0;
    if (m.rows() == 1 || m.cols() == 1) return m.norm();
    if (m.rows() == 2 && m.cols() == 2) return spectral_norm_2x2(m);
    return spectral_norm_iterative(m);
}

double max_eigenvalue_symmetric(const Matrix& s) {
    require_finite(s);
    Eigen::SelfAdjointEigenSolver<Matrix> solver(0.5 * (s + s.transpose()), Eigen::EigenvaluesOnly);
    if (solver.info() != Eigen::Success) fail(ErrorCode::Numeric, "symmetric eigensolver failed");
    return solver.eigenvalues().maxCoeff();
}

double min_eigenvalue_symmetric(const Matrix& s) {
    require_finite(s);
    Eigen::SelfAdjointEigenSolver<Matrix> solver(0.5 * (s + s.transpose()), Eigen::EigenvaluesOnly);
    if (solver.info() != Eigen::Success) fail(ErrorCode::Numeric, "symmetric eigensolver failed");
    return solver.eigenvalues().minCoeff();
}

bool is_positive_semidefinite(const Matrix& s, double tolerance) {
    return min_eigenvalue_symmetric(s) >= -tolerance;
}

Matrix matrix_power(const Matrix& m, long exponent) {
    if (m.rows() != m.cols()) fail(ErrorCode::InvalidArgument, "matrix power needs a square matrix");
    if (exponent < 0) fail(ErrorCode::InvalidArgument, "matrix power exponent must be >= 0");
    Matrix result = Matrix::Identity(m.rows(), m.cols());
    for (long i = 0; i < exponent; ++i) result = result * m;
    return result;
}

} // namespace petis::linalg
