#include "polvar/eigen_sym.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace polvar {

void jacobi_eigen_sym(const RMat& a_in, std::vector<double>& values, RMat& vectors) {
    const int n = a_in.n;
    RMat a = a_in;
    vectors = RMat::identity(n);

    double scale = 0.0;
    for (double v : a.a) scale = std::max(scale, std::abs(v));
    if (scale == 0.0) scale = 1.0;

    for (int sweep = 0; sweep < 128; ++sweep) {
        double off = 0.0;
        for (int p = 0; p < n; ++p)
            for (int q = p + 1; q < n; ++q) off += a(p, q) * a(p, q);
        if (off <= 1e-30 * scale * scale) break;

        for (int p = 0; p < n; ++p) {
            for (int q = p + 1; q < n; ++q) {
                const double apq = a(p, q);
                if (std::abs(apq) <= 1e-18 * scale) continue;

                const double tau = (a(q, q) - a(p, p)) / (2.0 * apq);
                const double t = tau >= 0.0 ? 1.0 / (tau + std::sqrt(1.0 + tau * tau))
                                            : 1.0 / (tau - std::sqrt(1.0 + tau * tau));
                const double c = 1.0 / std::sqrt(1.0 + t * t);
                const double s = t * c;

                // A <- J^T A J with the rotation in the (p,q) plane
                for (int r = 0; r < n; ++r) {
                    const double arp = a(r, p), arq = a(r, q);
                    a(r, p) = c * arp - s * arq;
                    a(r, q) = s * arp + c * arq;
                }
                for (int r = 0; r < n; ++r) {
                    const double apr = a(p, r), aqr = a(q, r);
                    a(p, r) = c * apr - s * aqr;
                    a(q, r) = s * apr + c * aqr;
                }
                for (int r = 0; r < n; ++r) {
                    const double vrp = vectors(r, p), vrq = vectors(r, q);
                    vectors(r, p) = c * vrp - s * vrq;
                    vectors(r, q) = s * vrp + c * vrq;
                }
            }
        }
    }

    values.resize(static_cast<size_t>(n));
    std::vector<int> order(static_cast<size_t>(n));
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](int i, int j) { return a(i, i) < a(j, j); });

    RMat sorted = RMat(n);
    for (int k = 0; k < n; ++k) {
        values[static_cast<size_t>(k)] = a(order[static_cast<size_t>(k)], order[static_cast<size_t>(k)]);
        for (int r = 0; r < n; ++r) sorted(r, k) = vectors(r, order[static_cast<size_t>(k)]);
    }
    vectors = std::move(sorted);
}

namespace {

Vec3 column(const RMat& m, int c) { return {m(0, c), m(1, c), m(2, c)}; }

void fix_vector_sign(Vec3& v) {
    double m = std::abs(v.x);
    double lead = v.x;
    if (std::abs(v.y) > m) { m = std::abs(v.y); lead = v.y; }
    if (std::abs(v.z) > m) { lead = v.z; }
    if (lead < 0.0) v = -1.0 * v;
}

Eigen3 eigen3_jacobi(const Mat3& a) {
    RMat m(3);
    for (int r = 0; r < 3; ++r)
        for (int c = 0; c < 3; ++c) m(r, c) = a(r, c);
    std::vector<double> vals;
    RMat vecs;
    jacobi_eigen_sym(m, vals, vecs);
    Eigen3 out;
    for (int k = 0; k < 3; ++k) {
        out.values[static_cast<size_t>(k)] = vals[static_cast<size_t>(k)];
        Vec3 v = normalized(column(vecs, k));
        fix_vector_sign(v);
        out.vectors[static_cast<size_t>(k)] = v;
    }
    return out;
}

double residual(const Mat3& a, const Vec3& v, double lambda) {
    Vec3 r = a * v - lambda * v;
    return norm(r);
}

} // namespace

Eigen3 sym_eigen3(const Mat3& a) {
    const double p1 = a(0, 1) * a(0, 1) + a(0, 2) * a(0, 2) + a(1, 2) * a(1, 2);
    double scale = 0.0;
    for (double v : a.m) scale = std::max(scale, std::abs(v));

    if (scale == 0.0) {
        Eigen3 out;
        out.vectors = {Vec3{1, 0, 0}, Vec3{0, 1, 0}, Vec3{0, 0, 1}};
        return out;
    }

    if (p1 <= 1e-28 * scale * scale) {
        // already diagonal
        std::array<int, 3> ord{0, 1, 2};
        std::sort(ord.begin(), ord.end(), [&](int i, int j) { return a(i, i) < a(j, j); });
        Eigen3 out;
        for (int k = 0; k < 3; ++k) {
            out.values[static_cast<size_t>(k)] = a(ord[static_cast<size_t>(k)], ord[static_cast<size_t>(k)]);
            Vec3 v{0, 0, 0};
            v[ord[static_cast<size_t>(k)]] = 1.0;
            out.vectors[static_cast<size_t>(k)] = v;
        }
        return out;
    }

    const double q = (a(0, 0) + a(1, 1) + a(2, 2)) / 3.0;
    const double p2 = (a(0, 0) - q) * (a(0, 0) - q) + (a(1, 1) - q) * (a(1, 1) - q)
                    + (a(2, 2) - q) * (a(2, 2) - q) + 2.0 * p1;
    const double p = std::sqrt(p2 / 6.0);

    Mat3 b;
    for (int r = 0; r < 3; ++r)
        for (int c = 0; c < 3; ++c) b(r, c) = (a(r, c) - (r == c ? q : 0.0)) / p;
    double r = det(b) / 2.0;
    r = std::clamp(r, -1.0, 1.0);

    const double phi = std::acos(r) / 3.0;
    const double lam_hi = q + 2.0 * p * std::cos(phi);
    const double lam_lo = q + 2.0 * p * std::cos(phi + 2.0 * M_PI / 3.0);
    const double lam_mid = 3.0 * q - lam_hi - lam_lo;

    // near-degenerate spectrum: the characteristic cubic's discriminant is
    // proportional to the squared product of eigenvalue gaps
    const double gap_prod = (lam_mid - lam_lo) * (lam_hi - lam_mid) * (lam_hi - lam_lo);
    const double disc_rel = (gap_prod / (scale * scale * scale)) * (gap_prod / (scale * scale * scale));
    if (disc_rel < 1e-12) return eigen3_jacobi(a);

    auto eigenvector_for = [&](double lambda) {
        Mat3 m = a;
        m(0, 0) -= lambda;
        m(1, 1) -= lambda;
        m(2, 2) -= lambda;
        const Vec3 r0{m(0, 0), m(0, 1), m(0, 2)};
        const Vec3 r1{m(1, 0), m(1, 1), m(1, 2)};
        const Vec3 r2{m(2, 0), m(2, 1), m(2, 2)};
        Vec3 c0 = cross(r0, r1), c1 = cross(r0, r2), c2 = cross(r1, r2);
        Vec3 best = c0;
        if (dot(c1, c1) > dot(best, best)) best = c1;
        if (dot(c2, c2) > dot(best, best)) best = c2;
        return normalized(best);
    };

    Eigen3 out;
    out.values = {lam_lo, lam_mid, lam_hi};
    Vec3 v0 = eigenvector_for(lam_lo);
    Vec3 v1 = eigenvector_for(lam_mid);
    v1 = v1 - dot(v1, v0) * v0;
    double n1 = norm(v1);
    if (n1 < 1e-8) return eigen3_jacobi(a);
    v1 = (1.0 / n1) * v1;
    Vec3 v2 = cross(v0, v1);

    const double tol = 1e-9 * std::max(1.0, scale);
    if (residual(a, v0, lam_lo) > tol || residual(a, v1, lam_mid) > tol
        || residual(a, v2, lam_hi) > tol)
        return eigen3_jacobi(a);

    fix_vector_sign(v0);
    fix_vector_sign(v1);
    fix_vector_sign(v2);
    out.vectors = {v0, v1, v2};
    return out;
}

} // namespace polvar
