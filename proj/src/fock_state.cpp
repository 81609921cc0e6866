#include "polvar/fock_state.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>

namespace polvar {

double binomial(int n, int k) {
    if (k < 0 || k > n) return 0.0;
    if (n <= 20) {
        // exact in 64-bit integers up to C(20,10)
        unsigned long long r = 1;
        for (int i = 1; i <= k; ++i) r = r * static_cast<unsigned long long>(n - k + i) / i;
        return static_cast<double>(r);
    }
    return std::exp(std::lgamma(n + 1.0) - std::lgamma(k + 1.0) - std::lgamma(n - k + 1.0));
}

TwoModeState::TwoModeState(int n_photons, std::vector<cplx> raw, bool fix_phase)
    : n_photons_(n_photons), amps_(std::move(raw)) {
    if (n_photons_ < 1) throw std::invalid_argument("photon number must be >= 1");
    if (amps_.size() != static_cast<size_t>(n_photons_) + 1)
        throw std::invalid_argument("amplitude vector length must be N+1");

    double nrm2 = 0.0;
    for (const cplx& c : amps_) nrm2 += std::norm(c);
    if (!(nrm2 > 0.0) || !std::isfinite(nrm2)) throw normalization_error("unnormalizable");

    double inv = 1.0 / std::sqrt(nrm2);
    for (cplx& c : amps_) c *= inv;

    if (fix_phase) {
        for (const cplx& c : amps_) {
            double m = std::abs(c);
            if (m > 1e-15) {
                cplx ph = std::conj(c) / m;
                for (cplx& a : amps_) a *= ph;
                break;
            }
        }
    }
}

TwoModeState make_from_amplitudes(int n_photons, const std::vector<cplx>& raw) {
    return TwoModeState(n_photons, raw);
}

TwoModeState make_su2_coherent(int n_photons, double theta, double phi) {
    const int n = n_photons;
    std::vector<cplx> c(static_cast<size_t>(n) + 1);
    const double ch = std::cos(theta / 2.0);
    const double sh = std::sin(theta / 2.0);
    const cplx ell = std::polar(sh, phi);
    for (int k = 0; k <= n; ++k)
        c[static_cast<size_t>(k)] =
            std::sqrt(binomial(n, k)) * std::pow(ch, k) * std::pow(ell, n - k);
    return TwoModeState(n, std::move(c));
}

TwoModeState make_noon(int n_photons) {
    std::vector<cplx> c(static_cast<size_t>(n_photons) + 1);
    c.front() = 1.0;
    c.back() = 1.0;
    return TwoModeState(n_photons, std::move(c));
}

TwoModeState make_eta(int n_photons, EtaBranch branch) {
    if (n_photons < 3) throw std::invalid_argument("uniform states undefined below N=3");
    const double root = std::sqrt((n_photons - 1.0) / n_photons);
    const double eta2 = 0.5 * (1.0 + (branch == EtaBranch::plus ? root : -root));
    std::vector<cplx> c(static_cast<size_t>(n_photons) + 1);
    c.front() = std::sqrt(1.0 - eta2);
    c.back() = std::sqrt(eta2);
    return TwoModeState(n_photons, std::move(c));
}

cplx overlap(const TwoModeState& a, const TwoModeState& b) {
    if (a.n_photons() != b.n_photons())
        throw manifold_mismatch("states live on different excitation manifolds");
    cplx s = 0.0;
    for (int n = 0; n <= a.n_photons(); ++n) s += std::conj(a.amplitude(n)) * b.amplitude(n);
    return s;
}

std::string to_text(const TwoModeState& s) {
    std::string out = std::to_string(s.n_photons());
    char buf[96];
    for (const cplx& c : s.amplitudes()) {
        std::snprintf(buf, sizeof buf, "; %.17g,%.17g", c.real(), c.imag());
        out += buf;
    }
    return out;
}

TwoModeState parse_text(const std::string& text) {
    std::vector<std::string> fields;
    std::string cur;
    std::istringstream in(text);
    while (std::getline(in, cur, ';')) fields.push_back(cur);
    if (fields.size() < 2) throw parse_error("expected 'N; re,im; ...'");

    int n = 0;
    try {
        size_t pos = 0;
        n = std::stoi(fields[0], &pos);
        while (pos < fields[0].size() && std::isspace(static_cast<unsigned char>(fields[0][pos]))) ++pos;
        if (pos != fields[0].size()) throw parse_error("bad photon number");
    } catch (const parse_error&) {
        throw;
    } catch (const std::exception&) {
        throw parse_error("bad photon number: " + fields[0]);
    }
    if (fields.size() != static_cast<size_t>(n) + 2)
        throw parse_error("expected " + std::to_string(n + 1) + " amplitudes");

    std::vector<cplx> amps;
    for (size_t i = 1; i < fields.size(); ++i) {
        double re = 0, im = 0;
        if (std::sscanf(fields[i].c_str(), " %lf , %lf", &re, &im) != 2)
            throw parse_error("bad amplitude: " + fields[i]);
        amps.emplace_back(re, im);
    }
    try {
        return TwoModeState(n, std::move(amps));
    } catch (const std::invalid_argument& e) {
        throw parse_error(e.what());
    }
}

} // namespace polvar
