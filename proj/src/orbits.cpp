#include "polvar/orbits.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "polvar/majorana.hpp"

namespace polvar {

TwoModeState orbit_state_n2(double theta) {
    if (!(theta >= 0.0 && theta <= M_PI))
        throw std::invalid_argument("orbit parameter theta must lie in [0, pi]");
    MajoranaConstellation c;
    c.points = {{0.0, 0.0}, {theta, 0.0}};
    return from_constellation(c);
}

TwoModeState orbit_state_n3(double theta2, double theta3, double phi3) {
    if (!std::isfinite(theta2) || !std::isfinite(theta3) || !std::isfinite(phi3))
        throw std::invalid_argument("orbit parameters must be finite");
    phi3 = std::fmod(phi3, 2.0 * M_PI);
    if (phi3 < 0.0) phi3 += 2.0 * M_PI;
    MajoranaConstellation c;
    c.points = {{0.0, 0.0}, {theta2, 0.0}, {theta3, phi3}};
    return from_constellation(c);
}

namespace {

// in-plane orthonormal basis of x+y+z = const
const Vec3 kPlaneU{1.0 / std::sqrt(2.0), -1.0 / std::sqrt(2.0), 0.0};
const Vec3 kPlaneV{1.0 / std::sqrt(6.0), 1.0 / std::sqrt(6.0), -2.0 / std::sqrt(6.0)};

struct Point2 {
    double u = 0, v = 0;
};

bool p2_less(const Point2& a, const Point2& b) {
    if (a.u != b.u) return a.u < b.u;
    return a.v < b.v;
}

double cross2(const Point2& o, const Point2& a, const Point2& b) {
    return (a.u - o.u) * (b.v - o.v) - (a.v - o.v) * (b.u - o.u);
}

// monotone chain; returns the hull counterclockwise
std::vector<Point2> convex_hull_2d(std::vector<Point2> pts) {
    std::sort(pts.begin(), pts.end(), p2_less);
    pts.erase(std::unique(pts.begin(), pts.end(),
                          [](const Point2& a, const Point2& b) {
                              return a.u == b.u && a.v == b.v;
                          }),
              pts.end());
    const size_t n = pts.size();
    if (n <= 2) return pts;

    std::vector<Point2> hull(2 * n);
    size_t k = 0;
    for (size_t i = 0; i < n; ++i) {
        while (k >= 2 && cross2(hull[k - 2], hull[k - 1], pts[i]) <= 0.0) --k;
        hull[k++] = pts[i];
    }
    const size_t lower = k + 1;
    for (size_t i = n - 1; i-- > 0;) {
        while (k >= lower && cross2(hull[k - 2], hull[k - 1], pts[i]) <= 0.0) --k;
        hull[k++] = pts[i];
    }
    hull.resize(k - 1);
    return hull;
}

} // namespace

VariancePolygon variance_polygon(const TwoModeState& psi, double degeneracy_tol) {
    const int n = psi.n_photons();
    if (degeneracy_tol <= 0.0) degeneracy_tol = 1e-7 * n * (n + 2.0);

    const PrincipalVariances pv = principal_variances(covariance(psi));
    const double l1 = pv.lambdas[0], l2 = pv.lambdas[1], l3 = pv.lambdas[2];

    VariancePolygon poly;
    poly.trace = l1 + l2 + l3;
    const bool d12 = (l2 - l1) <= degeneracy_tol;
    const bool d23 = (l3 - l2) <= degeneracy_tol;

    if (d12 && d23) {
        poly.kind = PolygonKind::point;
        poly.vertices = {{l1, l2, l3}};
        return poly;
    }
    if (d12) {
        // permutations of (a, a, b): place the odd eigenvalue in each slot
        poly.kind = PolygonKind::triangle;
        poly.vertices = {{l3, l1, l2}, {l1, l3, l2}, {l1, l2, l3}};
    } else if (d23) {
        poly.kind = PolygonKind::triangle;
        poly.vertices = {{l1, l2, l3}, {l2, l1, l3}, {l2, l3, l1}};
    } else {
        poly.kind = PolygonKind::hexagon;
        poly.vertices = {{l1, l2, l3}, {l1, l3, l2}, {l2, l1, l3},
                         {l2, l3, l1}, {l3, l1, l2}, {l3, l2, l1}};
    }

    // counterclockwise about (1,1,1)
    const double centroid = poly.trace / 3.0;
    std::sort(poly.vertices.begin(), poly.vertices.end(), [&](const Vec3& a, const Vec3& b) {
        const Vec3 ca = a - Vec3{centroid, centroid, centroid};
        const Vec3 cb = b - Vec3{centroid, centroid, centroid};
        return std::atan2(dot(ca, kPlaneV), dot(ca, kPlaneU))
             < std::atan2(dot(cb, kPlaneV), dot(cb, kPlaneU));
    });
    return poly;
}

bool is_uniform(const TwoModeState& psi, double tol) {
    const PrincipalVariances pv = principal_variances(covariance(psi));
    return pv.lambdas[2] - pv.lambdas[0] < tol;
}

namespace {

struct GridAxis {
    int count = 1;
    double lo = 0, step = 0;
    double hi = 0;
    bool inclusive = true;  // an inclusive axis hits hi exactly at the last index

    double value(int i) const {
        if (inclusive && i == count - 1) return hi;
        return lo + step * i;
    }
};

GridAxis theta_axis(int res) {
    GridAxis ax;
    ax.count = res;
    ax.lo = 0.0;
    ax.hi = M_PI;
    ax.step = res > 1 ? M_PI / (res - 1) : 0.0;
    return ax;
}

GridAxis phi_axis(int res, bool full) {
    GridAxis ax;
    ax.count = res;
    ax.lo = 0.0;
    // [0, pi] inclusive by default; [0, 2 pi) exclusive when full
    ax.hi = full ? 2.0 * M_PI : M_PI;
    ax.inclusive = !full;
    ax.step = full ? 2.0 * M_PI / res : (res > 1 ? M_PI / (res - 1) : 0.0);
    return ax;
}

SweepSample evaluate_grid_point(int n_photons, const std::vector<GridAxis>& axes,
                                long flat) {
    const int n_params = static_cast<int>(axes.size());
    std::vector<double> values(static_cast<size_t>(n_params));
    for (int d = n_params - 1; d >= 0; --d) {
        const int idx = static_cast<int>(flat % axes[static_cast<size_t>(d)].count);
        flat /= axes[static_cast<size_t>(d)].count;
        values[static_cast<size_t>(d)] = axes[static_cast<size_t>(d)].value(idx);
    }

    // parameter order: theta_2..theta_N, then phi_3..phi_N
    MajoranaConstellation c;
    c.points.push_back({0.0, 0.0});
    const int n_free = n_photons - 1;
    for (int k = 0; k < n_free; ++k) {
        const double theta = values[static_cast<size_t>(k)];
        const double phi = k == 0 ? 0.0 : values[static_cast<size_t>(n_free + k - 1)];
        c.points.push_back({theta, phi});
    }

    const TwoModeState psi = from_constellation(c);
    const PrincipalVariances pv = principal_variances(covariance(psi));

    SweepSample s;
    s.n_params = n_params;
    for (int d = 0; d < std::min(n_params, 5); ++d)
        s.params[static_cast<size_t>(d)] = values[static_cast<size_t>(d)];
    s.lambdas = pv.lambdas;
    s.trace = pv.lambdas[0] + pv.lambdas[1] + pv.lambdas[2];
    return s;
}

void sweep_kernel_serial(int n_photons, const std::vector<GridAxis>& axes,
                         std::vector<SweepSample>& out) {
    const long total = static_cast<long>(out.size());
    for (long i = 0; i < total; ++i)
        out[static_cast<size_t>(i)] = evaluate_grid_point(n_photons, axes, i);
}

void sweep_kernel_parallel(int n_photons, const std::vector<GridAxis>& axes,
                           std::vector<SweepSample>& out, int threads) {
    const long total = static_cast<long>(out.size());
#ifdef _OPENMP
    if (threads > 0) {
#pragma omp parallel for schedule(static) num_threads(threads)
        for (long i = 0; i < total; ++i)
            out[static_cast<size_t>(i)] = evaluate_grid_point(n_photons, axes, i);
    } else {
#pragma omp parallel for schedule(static)
        for (long i = 0; i < total; ++i)
            out[static_cast<size_t>(i)] = evaluate_grid_point(n_photons, axes, i);
    }
#else
    (void)threads;
    sweep_kernel_serial(n_photons, axes, out);
#endif
}

VariancePointCloud run_sweep(int n_photons, const std::vector<GridAxis>& axes,
                             const SweepOptions& opt) {
    long total = 1;
    for (const GridAxis& ax : axes) total *= ax.count;

    VariancePointCloud cloud;
    cloud.n_photons = n_photons;
    cloud.n_params = static_cast<int>(axes.size());
    cloud.samples.resize(static_cast<size_t>(total));

    // every grid point writes its own slot, so thread count cannot change
    // the result; the bucket reduction below is serial and grid-ordered
    if (opt.threads == 1)
        sweep_kernel_serial(n_photons, axes, cloud.samples);
    else
        sweep_kernel_parallel(n_photons, axes, cloud.samples, opt.threads);

    const double trace_lo = 2.0 * n_photons;
    const double trace_hi = static_cast<double>(n_photons) * (n_photons + 2);
    const int buckets = std::max(1, opt.trace_buckets);
    cloud.bucket_width = (trace_hi - trace_lo) / buckets;

    std::map<int, std::vector<Point2>> by_bucket;
    for (const SweepSample& s : cloud.samples) {
        int idx = static_cast<int>(std::floor((s.trace - trace_lo) / cloud.bucket_width));
        idx = std::clamp(idx, 0, buckets - 1);
        auto& pts = by_bucket[idx];
        const double l1 = s.lambdas[0], l2 = s.lambdas[1], l3 = s.lambdas[2];
        const Vec3 perms[6] = {{l1, l2, l3}, {l1, l3, l2}, {l2, l1, l3},
                               {l2, l3, l1}, {l3, l1, l2}, {l3, l2, l1}};
        for (const Vec3& p : perms) pts.push_back({dot(p, kPlaneU), dot(p, kPlaneV)});
    }

    for (auto& [idx, pts] : by_bucket) {
        const std::vector<Point2> hull = convex_hull_2d(std::move(pts));
        SliceHull slice;
        slice.trace = trace_lo + (idx + 0.5) * cloud.bucket_width;
        const double c = slice.trace / 3.0;
        for (const Point2& p : hull)
            slice.vertices.push_back(Vec3{c, c, c} + p.u * kPlaneU + p.v * kPlaneV);
        cloud.hulls.push_back(std::move(slice));
    }
    return cloud;
}

} // namespace

VariancePointCloud sweep_constellation_grid(int n_photons, int res_theta, int res_phi,
                                            const SweepOptions& opt) {
    if (n_photons < 2) throw std::invalid_argument("sweep needs N >= 2");
    if (res_theta < 2) throw std::invalid_argument("resolution must be >= 2");
    if (n_photons > 2 && res_phi < 2) throw std::invalid_argument("resolution must be >= 2");

    std::vector<GridAxis> axes;
    for (int k = 0; k < n_photons - 1; ++k) axes.push_back(theta_axis(res_theta));
    for (int k = 0; k < n_photons - 2; ++k) axes.push_back(phi_axis(res_phi, opt.full_phi));
    return run_sweep(n_photons, axes, opt);
}

VariancePointCloud sweep_n2(int resolution, const SweepOptions& opt) {
    return sweep_constellation_grid(2, resolution, 0, opt);
}

VariancePointCloud sweep_n3(int res_theta, int res_phi, const SweepOptions& opt) {
    return sweep_constellation_grid(3, res_theta, res_phi, opt);
}

namespace {

double dist_point_segment(const Point2& p, const Point2& a, const Point2& b) {
    const double abu = b.u - a.u, abv = b.v - a.v;
    const double len2 = abu * abu + abv * abv;
    double t = len2 > 0.0 ? ((p.u - a.u) * abu + (p.v - a.v) * abv) / len2 : 0.0;
    t = std::clamp(t, 0.0, 1.0);
    const double du = p.u - (a.u + t * abu), dv = p.v - (a.v + t * abv);
    return std::hypot(du, dv);
}

} // namespace

double distance_to_hulls(const VariancePointCloud& cloud, const Vec3& point) {
    double best = std::numeric_limits<double>::infinity();
    const double trace_p = point.x + point.y + point.z;
    const Point2 p{dot(point, kPlaneU), dot(point, kPlaneV)};

    for (const SliceHull& slice : cloud.hulls) {
        const double off_plane = (trace_p - slice.trace) / std::sqrt(3.0);

        std::vector<Point2> verts;
        verts.reserve(slice.vertices.size());
        for (const Vec3& v : slice.vertices) verts.push_back({dot(v, kPlaneU), dot(v, kPlaneV)});

        double in_plane = 0.0;
        if (verts.size() == 1) {
            in_plane = std::hypot(p.u - verts[0].u, p.v - verts[0].v);
        } else if (verts.size() == 2) {
            in_plane = dist_point_segment(p, verts[0], verts[1]);
        } else {
            bool inside = true;
            double edge_dist = std::numeric_limits<double>::infinity();
            for (size_t i = 0; i < verts.size(); ++i) {
                const Point2& a = verts[i];
                const Point2& b = verts[(i + 1) % verts.size()];
                if (cross2(a, b, p) < 0.0) inside = false;
                edge_dist = std::min(edge_dist, dist_point_segment(p, a, b));
            }
            in_plane = inside ? 0.0 : edge_dist;
        }
        best = std::min(best, std::hypot(off_plane, in_plane));
    }
    return best;
}

} // namespace polvar
