#pragma once

#include <iosfwd>
#include <string>

#include "polvar/fock_state.hpp"
#include "polvar/majorana.hpp"
#include "polvar/orbits.hpp"
#include "polvar/stokes.hpp"

namespace polvar {

/// printf %.*g with the given significant digits.
std::string fmt_g(double v, int sig_digits);

enum class AngleUnit { degrees, radians };

double to_radians(double value, AngleUnit unit);
double from_radians(double value, AngleUnit unit);

/// Parses a CLI state spec: `coherent:N,theta,phi`, `noon:N`, `eta:N,+`,
/// `eta:N,-`, or the inline text form "N; re,im; re,im; ...". Angles in
/// named constructors are interpreted in `unit`.
TwoModeState parse_state_spec(const std::string& spec, AngleUnit unit);

struct AnalyzeReport {
    int n_photons = 0;
    Vec3 stokes;
    CovarianceMatrix gamma;
    PrincipalVariances pv;
    BoundsReport bounds;
};

AnalyzeReport analyze_state(const TwoModeState& psi);

/// JSON with keys n_photons, stokes_vector, gamma (row-major 9 reals),
/// lambdas, axes, bounds; 12 significant digits.
std::string analyze_to_json(const AnalyzeReport& r);
/// Flat key,value CSV; 9 significant digits.
std::string analyze_to_csv(const AnalyzeReport& r);

std::string bounds_report_to_json(int n_photons, const BoundsReport* report);
std::string bounds_report_to_csv(int n_photons, const BoundsReport* report);

/// CSV with header theta_rad,phi_rad, one row per point sorted by (theta, phi).
std::string constellation_to_csv(const MajoranaConstellation& c);

void write_cloud_csv(std::ostream& os, const VariancePointCloud& cloud);
void write_hulls_csv(std::ostream& os, const VariancePointCloud& cloud);

} // namespace polvar
