#pragma once

#include <complex>
#include <stdexcept>
#include <string>
#include <vector>

namespace polvar {

using cplx = std::complex<double>;

// Error taxonomy shared across the library. The CLI maps each type to a
// distinct exit code.
struct parse_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct normalization_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct manifold_mismatch : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// C(n, k) as a double. Exact integer arithmetic up to n = 20, log-gamma
/// beyond that so large manifolds do not overflow silently.
double binomial(int n, int k);

/// Pure two-mode state with exactly N photons, N >= 1. Amplitude index n is
/// the photon count in the right-circular mode, so amplitudes()[N] multiplies
/// |N,0> and amplitudes()[0] multiplies |0,N>. Instances are immutable and
/// unit-norm; factories additionally fix the global phase so the first
/// nonzero amplitude is real and non-negative.
class TwoModeState {
public:
    /// Normalizes `raw`; rejects N < 1, length mismatches and zero vectors.
    /// `fix_phase` applies the first-nonzero-real phase convention.
    TwoModeState(int n_photons, std::vector<cplx> raw, bool fix_phase = true);

    int n_photons() const { return n_photons_; }
    int dim() const { return n_photons_ + 1; }
    const std::vector<cplx>& amplitudes() const { return amps_; }
    cplx amplitude(int n) const { return amps_[static_cast<size_t>(n)]; }

private:
    int n_photons_;
    std::vector<cplx> amps_;
};

TwoModeState make_from_amplitudes(int n_photons, const std::vector<cplx>& raw);

/// SU(2) coherent state pointing along (theta, phi) on the Poincare sphere:
/// c_n = sqrt(C(N,n)) cos(theta/2)^n (e^{i phi} sin(theta/2))^(N-n).
/// theta = 0 gives |N,0>.
TwoModeState make_su2_coherent(int n_photons, double theta, double phi);

/// (|N,0> + |0,N>)/sqrt(2).
TwoModeState make_noon(int n_photons);

enum class EtaBranch { plus, minus };

/// Uniform-variance state eta|N,0> + sqrt(1-eta^2)|0,N> with
/// eta^2 = (1 +- sqrt((N-1)/N))/2. Defined for N >= 3.
TwoModeState make_eta(int n_photons, EtaBranch branch);

/// <a|b>. Throws manifold_mismatch when photon numbers differ.
cplx overlap(const TwoModeState& a, const TwoModeState& b);

/// Plain text form "N; re0,im0; re1,im1; ..." with 17 significant digits.
std::string to_text(const TwoModeState& s);
TwoModeState parse_text(const std::string& text);

} // namespace polvar
