#include "polvar/polyroots.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace polvar {

namespace {

// p(z) and p'(z) by Horner's scheme
void eval_poly(const std::vector<cplx>& a, const cplx& z, cplx& p, cplx& dp) {
    const int deg = static_cast<int>(a.size()) - 1;
    p = a[static_cast<size_t>(deg)];
    dp = 0.0;
    for (int k = deg - 1; k >= 0; --k) {
        dp = dp * z + p;
        p = p * z + a[static_cast<size_t>(k)];
    }
}

// backward-error scale for the stopping test: sum_k |a_k| |z|^k
double eval_scale(const std::vector<cplx>& a, double az) {
    double s = 0.0, zp = 1.0;
    for (const cplx& c : a) {
        s += std::abs(c) * zp;
        zp *= az;
    }
    return s;
}

std::vector<cplx> poly_from_roots(const std::vector<cplx>& roots, const cplx& lead) {
    std::vector<cplx> c{lead};
    for (const cplx& r : roots) {
        c.push_back(c.back());
        for (size_t k = c.size() - 2; k >= 1; --k) c[k] = c[k - 1] - r * c[k];
        c[0] = -r * c[0];
    }
    return c;
}

std::vector<cplx> derivative(const std::vector<cplx>& a) {
    std::vector<cplx> d;
    for (size_t k = 1; k < a.size(); ++k) d.push_back(static_cast<double>(k) * a[k]);
    return d;
}

// a multiplicity-k root of p is a simple zero of p^(k-1); Newton from the
// cluster centroid recovers it to machine precision
cplx refine_multiple_root(const std::vector<cplx>& a, cplx z, int multiplicity) {
    std::vector<cplx> d = a;
    for (int k = 1; k < multiplicity; ++k) d = derivative(d);
    if (d.size() < 2) return z;
    for (int it = 0; it < 20; ++it) {
        cplx p, dp;
        eval_poly(d, z, p, dp);
        if (dp == cplx(0.0)) break;
        const cplx step = p / dp;
        z -= step;
        if (std::abs(step) < 1e-16 * (1.0 + std::abs(z))) break;
    }
    return z;
}

} // namespace

std::vector<cplx> aberth_roots(const std::vector<cplx>& coeffs_in) {
    const int deg = static_cast<int>(coeffs_in.size()) - 1;
    if (deg < 1) return {};
    if (std::abs(coeffs_in.back()) == 0.0)
        throw std::invalid_argument("leading coefficient must be nonzero");

    // normalize so the stopping scale is O(1)
    std::vector<cplx> a = coeffs_in;
    double amax = 0.0;
    for (const cplx& c : a) amax = std::max(amax, std::abs(c));
    for (cplx& c : a) c /= amax;

    if (deg == 1) return {-a[0] / a[1]};

    const double radius = std::pow(std::abs(a[0] / a[static_cast<size_t>(deg)]),
                                   1.0 / static_cast<double>(deg));
    std::vector<cplx> z(static_cast<size_t>(deg));
    for (int i = 0; i < deg; ++i) {
        // fixed irrational offsets keep the start away from symmetry axes
        const double angle = 2.0 * M_PI * i / deg + 0.5375823281 + 0.0142083 * i;
        z[static_cast<size_t>(i)] = std::polar(std::max(radius, 1e-8), angle);
    }

    const double stop_rel = 1e-13;
    for (int iter = 0; iter < 400; ++iter) {
        double worst = 0.0;
        for (int i = 0; i < deg; ++i) {
            cplx p, dp;
            eval_poly(a, z[static_cast<size_t>(i)], p, dp);
            const double scale = eval_scale(a, std::abs(z[static_cast<size_t>(i)]));
            if (std::abs(p) <= stop_rel * scale) continue;

            cplx newton = (dp != cplx(0.0)) ? p / dp : cplx(1e-3, 1e-3);
            cplx sum = 0.0;
            for (int j = 0; j < deg; ++j)
                if (j != i) {
                    const cplx d = z[static_cast<size_t>(i)] - z[static_cast<size_t>(j)];
                    sum += (d != cplx(0.0)) ? 1.0 / d : cplx(1e6, 1e6);
                }
            const cplx denom = 1.0 - newton * sum;
            const cplx step = (denom != cplx(0.0)) ? newton / denom : newton;
            z[static_cast<size_t>(i)] -= step;
            worst = std::max(worst,
                             std::abs(step) / (1.0 + std::abs(z[static_cast<size_t>(i)])));
        }
        if (worst < 1e-15) break;
    }

    // Newton polish sharpens simple roots to machine precision
    for (cplx& zi : z) {
        for (int it = 0; it < 3; ++it) {
            cplx p, dp;
            eval_poly(a, zi, p, dp);
            if (dp == cplx(0.0)) break;
            const cplx step = p / dp;
            if (!(std::abs(step) < 1.0 + std::abs(zi))) break;
            zi -= step;
        }
    }
    return z;
}

std::vector<cplx> coalesce_root_clusters(std::vector<cplx> roots,
                                         const std::vector<cplx>& coeffs) {
    const size_t deg = roots.size();
    if (deg < 2) return roots;

    std::vector<cplx> a = coeffs;
    double amax = 0.0;
    for (const cplx& c : a) amax = std::max(amax, std::abs(c));
    for (cplx& c : a) c /= amax;
    const cplx lead = a.back();

    auto rebuild_error = [&](const std::vector<cplx>& candidate) {
        const std::vector<cplx> q = poly_from_roots(candidate, lead);
        double err = 0.0;
        for (size_t k = 0; k < a.size(); ++k) err = std::max(err, std::abs(q[k] - a[k]));
        return err;
    };

    // group at descending distance scales and keep the coarsest grouping
    // whose centroids still reproduce the coefficients
    for (double t = 0.3; t >= 1e-12; t *= 0.33) {
        std::vector<int> group(deg);
        for (size_t i = 0; i < deg; ++i) group[i] = static_cast<int>(i);
        auto find = [&](int i) {
            while (group[static_cast<size_t>(i)] != i) i = group[static_cast<size_t>(i)];
            return i;
        };
        bool any = false;
        for (size_t i = 0; i < deg; ++i)
            for (size_t j = i + 1; j < deg; ++j) {
                const double scale = 1.0 + std::min(std::abs(roots[i]), std::abs(roots[j]));
                if (std::abs(roots[i] - roots[j]) <= t * scale) {
                    const int ri = find(static_cast<int>(i)), rj = find(static_cast<int>(j));
                    if (ri != rj) group[static_cast<size_t>(std::max(ri, rj))] = std::min(ri, rj);
                    any = true;
                }
            }
        if (!any) continue;

        std::vector<cplx> sum(deg, 0.0);
        std::vector<int> count(deg, 0);
        for (size_t i = 0; i < deg; ++i) {
            const int r = find(static_cast<int>(i));
            sum[static_cast<size_t>(r)] += roots[i];
            ++count[static_cast<size_t>(r)];
        }
        std::vector<cplx> refined(deg);
        for (size_t r = 0; r < deg; ++r) {
            if (count[r] == 0) continue;
            const cplx centroid = sum[r] / static_cast<double>(count[r]);
            refined[r] = count[r] > 1 ? refine_multiple_root(a, centroid, count[r]) : centroid;
        }
        std::vector<cplx> candidate(deg);
        for (size_t i = 0; i < deg; ++i)
            candidate[i] = refined[static_cast<size_t>(find(static_cast<int>(i)))];
        if (rebuild_error(candidate) <= 1e-9) return candidate;
    }
    return roots;
}

} // namespace polvar
