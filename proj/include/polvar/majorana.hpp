#pragma once

#include <optional>
#include <vector>

#include "polvar/fock_state.hpp"
#include "polvar/linalg3.hpp"
#include "polvar/su2_rotation.hpp"

namespace polvar {

/// Point on the unit sphere, theta in [0, pi], phi in [0, 2 pi).
struct SpherePoint {
    double theta = 0, phi = 0;
};

Vec3 to_unit_vector(const SpherePoint& p);
SpherePoint from_unit_vector(const Vec3& v);

/// Angle between two sphere points, in [0, pi].
double angular_distance(const SpherePoint& a, const SpherePoint& b);

/// Multiset of N sphere points representing a pure N-photon state. Points
/// are kept sorted by (theta, phi); multiplicity carries meaning, order does
/// not.
struct MajoranaConstellation {
    std::vector<SpherePoint> points;

    int n_photons() const { return static_cast<int>(points.size()); }
};

/// Roots of P(z) = sum_n c_n sqrt(C(N,n)) z^n mapped to sphere points via
/// w = -z, theta = 2 atan|w|, phi = arg w. Amplitudes below 1e-12 at the top
/// of the vector are degree deficiencies (points at the South pole); at the
/// bottom they are roots at the origin (points at the North pole).
MajoranaConstellation to_constellation(const TwoModeState& psi);

/// Expands prod_n (cos(theta_n/2) aR^dag + e^{i phi_n} sin(theta_n/2) aL^dag)
/// into amplitudes and normalizes.
TwoModeState from_constellation(const MajoranaConstellation& c);

struct CanonicalForm {
    MajoranaConstellation constellation;  // one point at theta=0, one at phi=0
    EulerAngles rotation;                 // the rotation that was applied
};

/// Rotates the constellation so one point sits at the North pole and another
/// on the Greenwich meridian. The pole anchor is the lexicographically
/// largest (theta, phi) point; the meridian anchor is the remaining point of
/// largest theta, ties resolved toward the lexicographically smallest output.
CanonicalForm canonicalize(const MajoranaConstellation& c);

enum class OrbitRelation { same, mirror_only, different };

struct OrbitCheck {
    OrbitRelation relation = OrbitRelation::different;
    std::optional<EulerAngles> witness;  // set when relation == same
};

/// Tests whether two states lie on the same SU(2) orbit by constellation
/// congruence: `same` if a proper rotation maps one constellation onto the
/// other as multisets within tol (radians), `mirror_only` if only an
/// orientation-reversing isometry does, `different` otherwise. Sorted
/// pairwise-separation multisets are compared first as a necessary
/// condition, then alignment is attempted anchor pair by anchor pair.
OrbitCheck same_orbit(const TwoModeState& a, const TwoModeState& b, double tol = 1e-6);

} // namespace polvar
