#pragma once

#include <array>
#include <vector>

#include "polvar/dense.hpp"
#include "polvar/linalg3.hpp"

namespace polvar {

/// Eigendecomposition of a dense real symmetric matrix by cyclic Jacobi
/// rotations. Eigenvalues come back ascending, `vectors` holds the matching
/// eigenvectors as columns.
void jacobi_eigen_sym(const RMat& a, std::vector<double>& values, RMat& vectors);

struct Eigen3 {
    std::array<double, 3> values{};  // ascending
    std::array<Vec3, 3> vectors{};   // orthonormal, vectors[k] pairs with values[k]
};

/// Symmetric 3x3 eigensolver. Eigenvalues via the trigonometric solution of
/// the characteristic cubic; eigenvectors from row cross products. Falls back
/// to Jacobi when the cubic discriminant is near zero (degenerate spectrum)
/// or a residual check fails.
Eigen3 sym_eigen3(const Mat3& a);

} // namespace polvar
