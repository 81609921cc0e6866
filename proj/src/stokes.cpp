#include "polvar/stokes.hpp"

#include <array>
#include <atomic>
#include <cmath>
#include <memory>
#include <mutex>

namespace polvar {

StokesSet::StokesSet(int n_photons) : n_photons_(n_photons) {
    if (n_photons_ < 1) throw std::invalid_argument("photon number must be >= 1");
    const int d = n_photons_ + 1;
    for (auto& m : mats_) m = CMat(d);

    for (int n = 0; n < d; ++n) {
        mats_[0](n, n) = static_cast<double>(n_photons_);
        mats_[3](n, n) = static_cast<double>(2 * n - n_photons_);
    }
    for (int n = 0; n + 1 < d; ++n) {
        const double m = std::sqrt(static_cast<double>(n + 1) * (n_photons_ - n));
        mats_[1](n + 1, n) = m;
        mats_[1](n, n + 1) = m;
        mats_[2](n + 1, n) = cplx(0.0, -m);
        mats_[2](n, n + 1) = cplx(0.0, m);
    }
}

namespace {
constexpr int kCacheSlots = 64;
}

const StokesSet& stokes_for(int n_photons) {
    if (n_photons < 1) throw std::invalid_argument("photon number must be >= 1");
    if (n_photons < kCacheSlots) {
        // lock-free fast path once a slot is published
        static std::array<std::atomic<const StokesSet*>, kCacheSlots> slots{};
        static std::mutex init_mutex;
        const StokesSet* s = slots[static_cast<size_t>(n_photons)].load(std::memory_order_acquire);
        if (s) return *s;
        std::lock_guard<std::mutex> lock(init_mutex);
        s = slots[static_cast<size_t>(n_photons)].load(std::memory_order_acquire);
        if (!s) {
            s = new StokesSet(n_photons);
            slots[static_cast<size_t>(n_photons)].store(s, std::memory_order_release);
        }
        return *s;
    }
    static std::mutex big_mutex;
    static std::vector<std::unique_ptr<StokesSet>> big;
    std::lock_guard<std::mutex> lock(big_mutex);
    for (const auto& s : big)
        if (s->n_photons() == n_photons) return *s;
    big.push_back(std::make_unique<StokesSet>(n_photons));
    return *big.back();
}

namespace {

cplx inner(const std::vector<cplx>& a, const std::vector<cplx>& b) {
    cplx s = 0.0;
    for (size_t i = 0; i < a.size(); ++i) s += std::conj(a[i]) * b[i];
    return s;
}

} // namespace

Vec3 stokes_vector(const TwoModeState& psi) {
    const StokesSet& ss = stokes_for(psi.n_photons());
    Vec3 out;
    for (int k = 1; k <= 3; ++k) {
        const std::vector<cplx> v = ss.s(k).apply(psi.amplitudes());
        out[k - 1] = inner(psi.amplitudes(), v).real();
    }
    return out;
}

CovarianceMatrix covariance(const TwoModeState& psi) {
    const StokesSet& ss = stokes_for(psi.n_photons());
    std::array<std::vector<cplx>, 3> v;
    std::array<double, 3> mean{};
    for (int k = 0; k < 3; ++k) {
        v[static_cast<size_t>(k)] = ss.s(k + 1).apply(psi.amplitudes());
        mean[static_cast<size_t>(k)] = inner(psi.amplitudes(), v[static_cast<size_t>(k)]).real();
    }
    CovarianceMatrix g;
    for (int k = 0; k < 3; ++k)
        for (int l = k; l < 3; ++l) {
            const double sym = inner(v[static_cast<size_t>(k)], v[static_cast<size_t>(l)]).real();
            const double e = sym - mean[static_cast<size_t>(k)] * mean[static_cast<size_t>(l)];
            g.gamma(k, l) = e;
            g.gamma(l, k) = e;
        }
    return g;
}

PrincipalVariances principal_variances(const CovarianceMatrix& gamma) {
    Eigen3 eig = sym_eigen3(gamma.gamma);
    PrincipalVariances pv;
    for (int k = 0; k < 3; ++k) {
        double lam = eig.values[static_cast<size_t>(k)];
        if (lam < 0.0 && lam > -1e-8) lam = 0.0;  // roundoff below the PSD floor
        pv.lambdas[static_cast<size_t>(k)] = lam;
        pv.axes[static_cast<size_t>(k)] = eig.vectors[static_cast<size_t>(k)];
    }
    return pv;
}

double directional_variance(const TwoModeState& psi, const Vec3& n) {
    if (std::abs(norm(n) - 1.0) > 1e-10)
        throw std::invalid_argument("direction must be a unit vector");
    const Mat3& g = covariance(psi).gamma;
    return dot(n, g * n);
}

UncertaintyBounds bounds_for(int n_photons) {
    const double n = static_cast<double>(n_photons);
    const double np2 = n * (n + 2.0);
    UncertaintyBounds b;
    b.det_lo = 0.0;
    b.det_hi = np2 * np2 * np2 / 27.0;
    b.minor_lo = n * n;
    b.minor_hi = np2 * np2 / 3.0;
    b.trace_lo = 2.0 * n;
    b.trace_hi = np2;
    return b;
}

namespace {

BoundCheck make_check(double value, double lo, double hi, double slack) {
    BoundCheck c;
    c.value = value;
    c.lo = lo;
    c.hi = hi;
    c.margin_lo = value - lo;
    c.margin_hi = hi - value;
    c.pass_lo = value >= lo - slack;
    c.pass_hi = value <= hi + slack;
    return c;
}

} // namespace

BoundsReport check_bounds(const PrincipalVariances& pv, int n_photons) {
    const UncertaintyBounds b = bounds_for(n_photons);
    const double l1 = pv.lambdas[0], l2 = pv.lambdas[1], l3 = pv.lambdas[2];
    BoundsReport r;
    r.det = make_check(l1 * l2 * l3, b.det_lo, b.det_hi, 1e-9 * std::max(1.0, b.det_hi));
    r.minors = make_check(l1 * l2 + l2 * l3 + l3 * l1, b.minor_lo, b.minor_hi,
                          1e-9 * std::max(1.0, b.minor_hi));
    r.trace = make_check(l1 + l2 + l3, b.trace_lo, b.trace_hi, 1e-9 * std::max(1.0, b.trace_hi));
    return r;
}

} // namespace polvar
