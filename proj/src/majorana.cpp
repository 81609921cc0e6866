#include "polvar/majorana.hpp"

#include <algorithm>
#include <cmath>

#include "polvar/polyroots.hpp"

namespace polvar {

namespace {

constexpr double kDeflationTol = 1e-12;   // relative to ||c|| = 1
constexpr double kPoleTol = 1e-12;        // theta this close to a pole loses phi

double wrap_phi(double phi) {
    phi = std::fmod(phi, 2.0 * M_PI);
    if (phi < 0.0) phi += 2.0 * M_PI;
    if (phi >= 2.0 * M_PI - 1e-12 || phi < 1e-12) phi = 0.0;
    return phi;
}

// sorting is quantized at 1e-9 rad so roundoff in rotated copies of the same
// constellation cannot reorder points that are equal up to noise
long long quant(double v) { return std::llround(v * 1e9); }

bool point_less(const SpherePoint& a, const SpherePoint& b) {
    if (quant(a.theta) != quant(b.theta)) return quant(a.theta) < quant(b.theta);
    if (quant(a.phi) != quant(b.phi)) return quant(a.phi) < quant(b.phi);
    if (a.theta != b.theta) return a.theta < b.theta;
    return a.phi < b.phi;
}

void sort_points(std::vector<SpherePoint>& pts) {
    std::sort(pts.begin(), pts.end(), point_less);
}

double angular_distance_units(const Vec3& a, const Vec3& b) {
    return std::atan2(norm(cross(a, b)), dot(a, b));
}

} // namespace

Vec3 to_unit_vector(const SpherePoint& p) {
    return {std::sin(p.theta) * std::cos(p.phi), std::sin(p.theta) * std::sin(p.phi),
            std::cos(p.theta)};
}

SpherePoint from_unit_vector(const Vec3& v) {
    SpherePoint p;
    p.theta = std::atan2(std::hypot(v.x, v.y), v.z);
    if (p.theta < kPoleTol) p.theta = 0.0;
    if (p.theta > M_PI - kPoleTol) p.theta = M_PI;
    p.phi = (p.theta == 0.0 || p.theta == M_PI) ? 0.0 : wrap_phi(std::atan2(v.y, v.x));
    return p;
}

double angular_distance(const SpherePoint& a, const SpherePoint& b) {
    return angular_distance_units(to_unit_vector(a), to_unit_vector(b));
}

MajoranaConstellation to_constellation(const TwoModeState& psi) {
    const int n = psi.n_photons();
    const std::vector<cplx>& c = psi.amplitudes();

    int lo = 0;
    while (lo <= n && std::abs(c[static_cast<size_t>(lo)]) < kDeflationTol) ++lo;
    int hi = n;
    while (hi >= 0 && std::abs(c[static_cast<size_t>(hi)]) < kDeflationTol) --hi;

    MajoranaConstellation out;
    // degree deficiencies are roots at infinity -> South pole
    for (int k = hi; k < n; ++k) out.points.push_back({M_PI, 0.0});
    // factored powers of z are roots at the origin -> North pole
    for (int k = 0; k < lo; ++k) out.points.push_back({0.0, 0.0});

    const int deg = hi - lo;
    if (deg > 0) {
        std::vector<cplx> coeffs(static_cast<size_t>(deg) + 1);
        for (int k = lo; k <= hi; ++k)
            coeffs[static_cast<size_t>(k - lo)] =
                c[static_cast<size_t>(k)] * std::sqrt(binomial(n, k));
        std::vector<cplx> roots = aberth_roots(coeffs);
        roots = coalesce_root_clusters(std::move(roots), coeffs);
        for (const cplx& z : roots) {
            const cplx w = -z;
            SpherePoint p;
            p.theta = 2.0 * std::atan(std::abs(w));
            p.phi = (p.theta < kPoleTol || p.theta > M_PI - kPoleTol) ? 0.0
                                                                      : wrap_phi(std::arg(w));
            out.points.push_back(p);
        }
    }
    sort_points(out.points);
    return out;
}

TwoModeState from_constellation(const MajoranaConstellation& c) {
    const int n = c.n_photons();
    if (n < 1) throw std::invalid_argument("constellation needs at least one point");

    // e[k] = sum over k-subsets of prod v_j * prod u_j over the complement
    std::vector<cplx> e{1.0};
    for (const SpherePoint& p : c.points) {
        const cplx u = std::cos(p.theta / 2.0);
        const cplx v = std::polar(std::sin(p.theta / 2.0), p.phi);
        e.push_back(0.0);
        for (size_t k = e.size() - 1; k >= 1; --k) e[k] = u * e[k] + v * e[k - 1];
        e[0] = u * e[0];
    }

    std::vector<cplx> amps(static_cast<size_t>(n) + 1);
    for (int k = 0; k <= n; ++k)
        amps[static_cast<size_t>(k)] =
            e[static_cast<size_t>(n - k)] / std::sqrt(binomial(n, k));
    return TwoModeState(n, std::move(amps));
}

namespace {

std::vector<Vec3> unit_vectors(const MajoranaConstellation& c) {
    std::vector<Vec3> v;
    v.reserve(c.points.size());
    for (const SpherePoint& p : c.points) v.push_back(to_unit_vector(p));
    return v;
}

MajoranaConstellation apply_matrix(const std::vector<Vec3>& pts, const Mat3& r) {
    MajoranaConstellation out;
    out.points.reserve(pts.size());
    for (const Vec3& p : pts) out.points.push_back(from_unit_vector(r * p));
    sort_points(out.points);
    return out;
}

// lexicographic on the quantized angles so roundoff cannot flip the choice
bool output_less(const MajoranaConstellation& a, const MajoranaConstellation& b) {
    for (size_t i = 0; i < a.points.size(); ++i) {
        if (quant(a.points[i].theta) != quant(b.points[i].theta))
            return quant(a.points[i].theta) < quant(b.points[i].theta);
        if (quant(a.points[i].phi) != quant(b.points[i].phi))
            return quant(a.points[i].phi) < quant(b.points[i].phi);
    }
    return false;
}

} // namespace

CanonicalForm canonicalize(const MajoranaConstellation& c) {
    const int n = c.n_photons();
    if (n < 2) throw std::invalid_argument("canonicalize needs at least two points");

    std::vector<SpherePoint> pts = c.points;
    sort_points(pts);
    const std::vector<Vec3> vecs = unit_vectors({pts});

    // pole anchor: lexicographically largest (theta, phi)
    const SpherePoint& anchor = pts.back();
    const Mat3 r1 = rot_y(-anchor.theta) * rot_z(-anchor.phi);

    double max_pairwise = 0.0;
    for (size_t i = 0; i < vecs.size(); ++i)
        for (size_t j = i + 1; j < vecs.size(); ++j)
            max_pairwise = std::max(max_pairwise, angular_distance_units(vecs[i], vecs[j]));

    CanonicalForm out;
    if (max_pairwise < 1e-12) {
        // all points coincident: send them to the pole, no azimuth anchor
        out.constellation.points.assign(static_cast<size_t>(n), SpherePoint{0.0, 0.0});
        out.rotation = euler_from_so3(r1);
        return out;
    }

    std::vector<SpherePoint> rotated;
    rotated.reserve(vecs.size());
    size_t anchor_idx = pts.size() - 1;
    for (size_t i = 0; i < vecs.size(); ++i)
        rotated.push_back(i == anchor_idx ? SpherePoint{0.0, 0.0}
                                          : from_unit_vector(r1 * vecs[i]));

    // meridian anchor: remaining point of largest theta that is off the poles
    double best_theta = -1.0;
    for (size_t i = 0; i < rotated.size(); ++i) {
        if (i == anchor_idx) continue;
        const double st = std::sin(rotated[i].theta);
        if (st < 1e-9) continue;
        best_theta = std::max(best_theta, rotated[i].theta);
    }

    if (best_theta < 0.0) {
        // everything else sits on the poles; the meridian anchor is moot
        MajoranaConstellation cc = apply_matrix(vecs, r1);
        out.constellation = std::move(cc);
        out.rotation = euler_from_so3(r1);
        return out;
    }

    bool have = false;
    MajoranaConstellation best_out;
    Mat3 best_rot;
    for (size_t i = 0; i < rotated.size(); ++i) {
        if (i == anchor_idx) continue;
        if (std::sin(rotated[i].theta) < 1e-9) continue;
        if (rotated[i].theta < best_theta - 1e-9) continue;
        const Mat3 r = rot_z(-rotated[i].phi) * r1;
        MajoranaConstellation candidate = apply_matrix(vecs, r);
        if (!have || output_less(candidate, best_out)) {
            have = true;
            best_out = std::move(candidate);
            best_rot = r;
        }
    }
    out.constellation = std::move(best_out);
    out.rotation = euler_from_so3(best_rot);
    return out;
}

namespace {

// multiset match: every rotated a-point must find an unused b-point within tol
bool verify_match(const std::vector<Vec3>& a, const std::vector<Vec3>& b, const Mat3& r,
                  double tol) {
    std::vector<bool> used(b.size(), false);
    for (const Vec3& p : a) {
        const Vec3 rp = r * p;
        int best = -1;
        double best_d = tol;
        for (size_t j = 0; j < b.size(); ++j) {
            if (used[j]) continue;
            const double d = angular_distance_units(rp, b[j]);
            if (d <= best_d) {
                best_d = d;
                best = static_cast<int>(j);
            }
        }
        if (best < 0) return false;
        used[static_cast<size_t>(best)] = true;
    }
    return true;
}

Mat3 rotation_between(const Vec3& from, const Vec3& to) {
    const Vec3 ax = cross(from, to);
    const double s = norm(ax);
    const double c = dot(from, to);
    if (s < 1e-14) {
        if (c > 0.0) return Mat3::identity();
        // antiparallel: rotate pi about any axis perpendicular to `from`
        Vec3 perp = std::abs(from.z) < 0.9 ? cross(from, Vec3{0, 0, 1}) : cross(from, Vec3{1, 0, 0});
        perp = normalized(perp);
        Mat3 r;
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j)
                r(i, j) = 2.0 * perp[i] * perp[j] - (i == j ? 1.0 : 0.0);
        return r;
    }
    // Rodrigues
    const Vec3 u = (1.0 / s) * ax;
    const double angle = std::atan2(s, c);
    const double ca = std::cos(angle), sa = std::sin(angle);
    Mat3 r;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
            r(i, j) = ca * (i == j ? 1.0 : 0.0) + (1.0 - ca) * u[i] * u[j];
    r(0, 1) -= sa * u.z; r(0, 2) += sa * u.y;
    r(1, 0) += sa * u.z; r(1, 2) -= sa * u.x;
    r(2, 0) -= sa * u.y; r(2, 1) += sa * u.x;
    return r;
}

// orthonormal frame with e1 = a and e2 in the (a, b) plane
Mat3 frame_from_pair(const Vec3& a, const Vec3& b) {
    const Vec3 e1 = normalized(a);
    Vec3 e2 = b - dot(b, e1) * e1;
    e2 = normalized(e2);
    const Vec3 e3 = cross(e1, e2);
    Mat3 f;
    for (int i = 0; i < 3; ++i) {
        f(i, 0) = e1[i];
        f(i, 1) = e2[i];
        f(i, 2) = e3[i];
    }
    return f;
}

std::optional<Mat3> try_align(const std::vector<Vec3>& a, const std::vector<Vec3>& b,
                              double tol) {
    const size_t n = a.size();
    if (n == 1) return rotation_between(a[0], b[0]);

    std::vector<double> sep_a, sep_b;
    for (size_t i = 0; i < n; ++i)
        for (size_t j = i + 1; j < n; ++j) {
            sep_a.push_back(angular_distance_units(a[i], a[j]));
            sep_b.push_back(angular_distance_units(b[i], b[j]));
        }
    std::sort(sep_a.begin(), sep_a.end());
    std::sort(sep_b.begin(), sep_b.end());
    for (size_t k = 0; k < sep_a.size(); ++k)
        if (std::abs(sep_a[k] - sep_b[k]) > 2.0 * tol) return std::nullopt;

    // coincident constellations: any point-to-point rotation works
    if (sep_a.back() <= std::max(tol, 1e-12)) return rotation_between(a[0], b[0]);

    // collinear (axis) constellations: align the axis, trying both signs
    bool axis_type = true;
    for (double s : sep_a)
        if (std::min(s, M_PI - s) > std::max(10.0 * tol, 1e-9)) { axis_type = false; break; }
    if (axis_type) {
        for (const Vec3& target : {b[0], -1.0 * b[0]}) {
            const Mat3 r = rotation_between(a[0], target);
            if (verify_match(a, b, r, std::max(tol, 1e-9))) return r;
        }
        return std::nullopt;
    }

    // anchor pair in a: separation closest to pi/2 for a stable frame
    size_t ai = 0, aj = 1;
    double best_score = 1e9;
    for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < n; ++j) {
            if (i == j) continue;
            const double s = angular_distance_units(a[i], a[j]);
            const double score = std::abs(s - M_PI / 2.0);
            if (score < best_score) { best_score = score; ai = i; aj = j; }
        }
    const double sep_anchor = angular_distance_units(a[ai], a[aj]);
    const Mat3 fa_t = transposed(frame_from_pair(a[ai], a[aj]));

    for (size_t k = 0; k < n; ++k)
        for (size_t l = 0; l < n; ++l) {
            if (k == l) continue;
            const double s = angular_distance_units(b[k], b[l]);
            if (std::abs(s - sep_anchor) > 2.0 * tol) continue;
            const Mat3 r = frame_from_pair(b[k], b[l]) * fa_t;
            if (verify_match(a, b, r, tol)) return r;
        }
    return std::nullopt;
}

} // namespace

OrbitCheck same_orbit(const TwoModeState& a, const TwoModeState& b, double tol) {
    if (a.n_photons() != b.n_photons())
        throw manifold_mismatch("states live on different excitation manifolds");

    const std::vector<Vec3> pa = unit_vectors(to_constellation(a));
    std::vector<Vec3> pb = unit_vectors(to_constellation(b));

    OrbitCheck out;
    if (auto r = try_align(pa, pb, tol)) {
        out.relation = OrbitRelation::same;
        out.witness = euler_from_so3(*r);
        return out;
    }
    for (Vec3& p : pb) p.y = -p.y;  // mirror through the x-z plane
    if (try_align(pa, pb, tol)) {
        out.relation = OrbitRelation::mirror_only;
        return out;
    }
    out.relation = OrbitRelation::different;
    return out;
}

} // namespace polvar
