#pragma once

#include "petis/types.hpp"

namespace petis::linalg {

/// Largest singular value. Closed form for vectors and 2x2 matrices,
/// cyclic Jacobi on the Gram matrix otherwise.
[[nodiscard]] double spectral_norm(const Matrix& m);

/// Always takes the iterative route (cyclic Jacobi on the smaller Gram
/// matrix). Throws ErrorCode::Numeric when the sweep cap is reached.
[[nodiscard]] double spectral_norm_iterative(const Matrix& m);

/// Eigenvalues of a symmetric matrix by cyclic Jacobi rotations, ascending.
[[nodiscard]] Vector symmetric_eigenvalues_jacobi(const Matrix& s);

[[nodiscard]] double max_eigenvalue_symmetric(const Matrix& s);
[[nodiscard]] double min_eigenvalue_symmetric(const Matrix& s);

inline constexpr double kPsdTolerance = 1e-10;

/// Minimum eigenvalue >= -kPsdTolerance.
[[nodiscard]] bool is_positive_semidefinite(const Matrix& s, double tolerance = kPsdTolerance);

[[nodiscard]] Matrix matrix_power(const Matrix& m, long exponent);

} // namespace petis::linalg
