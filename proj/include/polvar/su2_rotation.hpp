#pragma once

#include "polvar/fock_state.hpp"
#include "polvar/linalg3.hpp"

namespace polvar {

/// ZYZ Euler angles of a linear polarization transformation. Angles are not
/// range-reduced; the canonical unit is radians.
struct EulerAngles {
    double alpha = 0, beta = 0, gamma = 0;
};

/// Applies the polarization transformation
///   U(e) = exp(-i alpha s3) exp(-i beta s2) exp(-i gamma s3)
/// to the amplitude vector. The sign is fixed so that the induced action on
/// the Stokes vector is the right-handed rotation Rz(2 alpha) Ry(2 beta)
/// Rz(2 gamma); a coherent state at (theta=pi/2, phi=0) under alpha = pi/4
/// moves to (theta=pi/2, phi=pi/2). exp(-i beta s2) is evaluated through the
/// eigendecomposition of the Hermitian s2. The result is not re-phased, so
/// inner products between rotated states are preserved exactly.
TwoModeState apply_rotation(const TwoModeState& psi, const EulerAngles& e);

/// The SO(3) matrix R with stokes_vector(apply_rotation(psi, e)) =
/// R * stokes_vector(psi): Rz(2 alpha) Ry(2 beta) Rz(2 gamma).
Mat3 induced_so3(const EulerAngles& e);

/// Recovers e with induced_so3(e) = r (beta in [0, pi/2], gamma = 0 on the
/// degenerate axis). r must be a rotation matrix.
EulerAngles euler_from_so3(const Mat3& r);

enum class AxisPair { s1s2, s2s3, s3s1 };

/// Rotates psi by pi/2 about the axis complementary to `which`, swapping the
/// named pair of diagonal Stokes variances.
TwoModeState permute_variances(const TwoModeState& psi, AxisPair which);

} // namespace polvar
