#include "polvar/su2_rotation.hpp"

#include <array>
#include <atomic>
#include <cmath>
#include <memory>
#include <mutex>

#include "polvar/eigen_sym.hpp"
#include "polvar/stokes.hpp"

namespace polvar {

namespace {

// Eigensystem of the real symmetric s1 on the N-photon manifold. s2 is the
// phase conjugate D s1 D^dag with D = diag((-i)^n), so exp(-i beta s2) =
// D V exp(-i beta Lambda) V^T D^dag.
struct S1Eigensystem {
    std::vector<double> values;
    RMat vectors;
};

const S1Eigensystem& s1_eigensystem_for(int n_photons) {
    constexpr int kSlots = 64;
    auto build = [](int n) {
        const StokesSet& ss = stokes_for(n);
        const int d = n + 1;
        RMat s1(d);
        for (int r = 0; r < d; ++r)
            for (int c = 0; c < d; ++c) s1(r, c) = ss.s(1)(r, c).real();
        auto* sys = new S1Eigensystem;
        jacobi_eigen_sym(s1, sys->values, sys->vectors);
        return sys;
    };
    if (n_photons < kSlots) {
        static std::array<std::atomic<const S1Eigensystem*>, kSlots> slots{};
        static std::mutex init_mutex;
        const S1Eigensystem* s = slots[static_cast<size_t>(n_photons)].load(std::memory_order_acquire);
        if (s) return *s;
        std::lock_guard<std::mutex> lock(init_mutex);
        s = slots[static_cast<size_t>(n_photons)].load(std::memory_order_acquire);
        if (!s) {
            s = build(n_photons);
            slots[static_cast<size_t>(n_photons)].store(s, std::memory_order_release);
        }
        return *s;
    }
    static std::mutex big_mutex;
    static std::vector<std::pair<int, std::unique_ptr<S1Eigensystem>>> big;
    std::lock_guard<std::mutex> lock(big_mutex);
    for (const auto& [n, sys] : big)
        if (n == n_photons) return *sys;
    big.emplace_back(n_photons, std::unique_ptr<S1Eigensystem>(build(n_photons)));
    return *big.back().second;
}

// c_n *= e^{-i t (2n - N)}
void phase_s3(std::vector<cplx>& c, int n_photons, double t) {
    for (int n = 0; n <= n_photons; ++n)
        c[static_cast<size_t>(n)] *= std::polar(1.0, -t * (2.0 * n - n_photons));
}

cplx minus_i_pow(int n) {
    switch (((n % 4) + 4) % 4) {
        case 0: return {1.0, 0.0};
        case 1: return {0.0, -1.0};
        case 2: return {-1.0, 0.0};
        default: return {0.0, 1.0};
    }
}

void rotate_s2(std::vector<cplx>& c, int n_photons, double beta) {
    if (beta == 0.0) return;
    const S1Eigensystem& sys = s1_eigensystem_for(n_photons);
    const int d = n_photons + 1;

    for (int n = 0; n < d; ++n) c[static_cast<size_t>(n)] *= std::conj(minus_i_pow(n));

    std::vector<cplx> y(static_cast<size_t>(d), 0.0);
    for (int k = 0; k < d; ++k) {
        cplx s = 0.0;
        for (int n = 0; n < d; ++n) s += sys.vectors(n, k) * c[static_cast<size_t>(n)];
        y[static_cast<size_t>(k)] = s * std::polar(1.0, -beta * sys.values[static_cast<size_t>(k)]);
    }
    for (int n = 0; n < d; ++n) {
        cplx s = 0.0;
        for (int k = 0; k < d; ++k) s += sys.vectors(n, k) * y[static_cast<size_t>(k)];
        c[static_cast<size_t>(n)] = s * minus_i_pow(n);
    }
}

} // namespace

TwoModeState apply_rotation(const TwoModeState& psi, const EulerAngles& e) {
    const int n = psi.n_photons();
    std::vector<cplx> c = psi.amplitudes();
    phase_s3(c, n, e.gamma);
    rotate_s2(c, n, e.beta);
    phase_s3(c, n, e.alpha);
    return TwoModeState(n, std::move(c), /*fix_phase=*/false);
}

Mat3 induced_so3(const EulerAngles& e) {
    return rot_z(2.0 * e.alpha) * rot_y(2.0 * e.beta) * rot_z(2.0 * e.gamma);
}

EulerAngles euler_from_so3(const Mat3& r) {
    // r = Rz(a) Ry(b) Rz(c); returned angles are halved for induced_so3
    double a, b, c;
    const double sb = std::hypot(r(0, 2), r(1, 2));
    if (sb > 1e-12) {
        b = std::atan2(sb, r(2, 2));
        a = std::atan2(r(1, 2), r(0, 2));
        c = std::atan2(r(2, 1), -r(2, 0));
    } else if (r(2, 2) > 0.0) {
        b = 0.0;
        a = std::atan2(r(1, 0), r(0, 0));
        c = 0.0;
    } else {
        b = M_PI;
        a = std::atan2(-r(0, 1), -r(0, 0));
        c = 0.0;
    }
    return {a / 2.0, b / 2.0, c / 2.0};
}

TwoModeState permute_variances(const TwoModeState& psi, AxisPair which) {
    // pi/2 rotation about the axis not named by the pair
    EulerAngles e;
    switch (which) {
        case AxisPair::s1s2: e = {M_PI / 4.0, 0.0, 0.0}; break;            // about s3
        case AxisPair::s3s1: e = {0.0, M_PI / 4.0, 0.0}; break;            // about s2
        case AxisPair::s2s3: e = {-M_PI / 4.0, M_PI / 4.0, M_PI / 4.0}; break;  // about s1
    }
    return apply_rotation(psi, e);
}

} // namespace polvar
