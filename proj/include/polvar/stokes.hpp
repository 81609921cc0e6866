#pragma once

#include <array>

#include "polvar/dense.hpp"
#include "polvar/eigen_sym.hpp"
#include "polvar/fock_state.hpp"
#include "polvar/linalg3.hpp"

namespace polvar {

/// The four Stokes operator matrices on the N-photon manifold, in the
/// R-photon-count basis (index n multiplies |n, N-n>):
///   s0 = N * Identity
///   s1[n+1,n] = s1[n,n+1] = sqrt((n+1)(N-n))
///   s2[n+1,n] = -i sqrt((n+1)(N-n)),  s2[n,n+1] = +i sqrt((n+1)(N-n))
///   s3[n,n]   = 2n - N                (+1 quantum per R photon)
/// These satisfy [s_k, s_l] = 2i eps_klm s_m; the Schwinger angular momentum
/// operators are these matrices over 2.
class StokesSet {
public:
    explicit StokesSet(int n_photons);

    int n_photons() const { return n_photons_; }
    const CMat& s(int k) const { return mats_[static_cast<size_t>(k)]; }

private:
    int n_photons_;
    std::array<CMat, 4> mats_;
};

/// Shared per-N StokesSet, built once and safe for concurrent readers.
const StokesSet& stokes_for(int n_photons);

/// (<S1>, <S2>, <S3>).
Vec3 stokes_vector(const TwoModeState& psi);

struct CovarianceMatrix {
    Mat3 gamma;  // symmetric, entries in photons^2
};

/// Gamma_kl = <S_k S_l + S_l S_k>/2 - <S_k><S_l>.
CovarianceMatrix covariance(const TwoModeState& psi);

struct PrincipalVariances {
    std::array<double, 3> lambdas{};  // ascending, clamped at >= 0
    std::array<Vec3, 3> axes{};       // orthonormal eigenvectors of Gamma
};

PrincipalVariances principal_variances(const CovarianceMatrix& gamma);

/// Variance of S.n for a unit direction n; equals n^T Gamma n.
/// Throws std::invalid_argument unless |n| = 1 within 1e-10.
double directional_variance(const TwoModeState& psi, const Vec3& n);

/// Fixed-N limits of the three invariant uncertainty relations
/// (determinant, principal-minor sum, trace of Gamma).
struct UncertaintyBounds {
    double det_lo, det_hi;
    double minor_lo, minor_hi;
    double trace_lo, trace_hi;
};

UncertaintyBounds bounds_for(int n_photons);

struct BoundCheck {
    double value = 0;
    double lo = 0, hi = 0;
    double margin_lo = 0, margin_hi = 0;  // value - lo, hi - value
    bool pass_lo = false, pass_hi = false;
};

struct BoundsReport {
    BoundCheck det, minors, trace;

    bool all_pass() const {
        return det.pass_lo && det.pass_hi && minors.pass_lo && minors.pass_hi
            && trace.pass_lo && trace.pass_hi;
    }
};

/// Evaluates the six inequalities for a principal-variance triplet on the
/// N-photon manifold. Pass flags carry a 1e-9 relative slack so states that
/// sit exactly on a bound are not rejected by roundoff; margins are raw.
BoundsReport check_bounds(const PrincipalVariances& pv, int n_photons);

} // namespace polvar
