#pragma once

#include <array>
#include <vector>

#include "polvar/fock_state.hpp"
#include "polvar/linalg3.hpp"
#include "polvar/stokes.hpp"

namespace polvar {

/// Orbit-generating state for N=2: one Majorana point at the North pole, the
/// second at (theta, 0) on the Greenwich meridian. theta in [0, pi].
TwoModeState orbit_state_n2(double theta);

/// Orbit-generating state for N=3: points (0,0), (theta2, 0), (theta3, phi3).
/// phi3 is reduced mod 2 pi.
TwoModeState orbit_state_n3(double theta2, double theta3, double phi3);

enum class PolygonKind { point, triangle, hexagon };

/// Convex polygon of the variance triplets reachable on one orbit: the
/// distinct permutations of the principal variances, counterclockwise about
/// the (1,1,1) axis in the plane x+y+z = trace.
struct VariancePolygon {
    PolygonKind kind = PolygonKind::point;
    std::vector<Vec3> vertices;
    double trace = 0;
};

/// Default degeneracy_tol <= 0 means 1e-7 * N(N+2).
VariancePolygon variance_polygon(const TwoModeState& psi, double degeneracy_tol = -1.0);

/// True iff lambda3 - lambda1 < tol (isotropic variance).
bool is_uniform(const TwoModeState& psi, double tol);

struct SweepSample {
    std::array<double, 5> params{};   // orbit parameters, unused slots unset
    int n_params = 0;
    std::array<double, 3> lambdas{};  // ascending
    double trace = 0;
};

struct SliceHull {
    double trace = 0;                 // bucket midpoint
    std::vector<Vec3> vertices;       // counterclockwise about (1,1,1)
};

struct VariancePointCloud {
    int n_photons = 0;
    int n_params = 0;
    double bucket_width = 0;
    std::vector<SweepSample> samples;  // grid order
    std::vector<SliceHull> hulls;      // ascending trace, empty buckets skipped
};

struct SweepOptions {
    /// 1 runs the serial reference kernel; 0 the OpenMP kernel with the
    /// runtime default thread count; K > 1 the OpenMP kernel with K threads.
    /// Results are identical in every mode: each grid point writes its own
    /// slot and the reduction into trace buckets happens after the loop.
    int threads = 0;
    /// Sweep phi over [0, 2 pi) instead of [0, pi]. Mirror configurations
    /// duplicate variance triplets, so the half range is the default.
    bool full_phi = false;
    int trace_buckets = 256;
};

/// Uniform theta grid of `resolution` points over [0, pi]; records sorted
/// principal-variance triplets, then buckets all their permutations by trace
/// and takes each bucket's 2D convex hull in the plane x+y+z = trace.
VariancePointCloud sweep_n2(int resolution, const SweepOptions& opt = {});

/// Grid over (theta2, theta3) in [0, pi]^2 (res_theta points each) and phi3
/// (res_phi points); same recording and bucketing as sweep_n2.
VariancePointCloud sweep_n3(int res_theta, int res_phi, const SweepOptions& opt = {});

/// Generic constellation-grid sweep behind the N=2/N=3 wrappers: one theta
/// parameter per free point (N-1 of them) and one phi parameter per point
/// beyond the second (N-2), i.e. five parameters at N=4.
VariancePointCloud sweep_constellation_grid(int n_photons, int res_theta, int res_phi,
                                            const SweepOptions& opt = {});

/// Euclidean distance from a variance triplet to the nearest slice-hull
/// polygon (each polygon lives in its own x+y+z = trace plane); 0 when the
/// point lies on or inside some polygon.
double distance_to_hulls(const VariancePointCloud& cloud, const Vec3& point);

} // namespace polvar
