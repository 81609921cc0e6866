// polvar: second-order polarization statistics of pure two-mode N-photon
// states. Subcommands: analyze, majorana, same-orbit, sweep, bounds.

#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "polvar/io.hpp"
#include "polvar/majorana.hpp"
#include "polvar/orbits.hpp"
#include "polvar/su2_rotation.hpp"

namespace {

// exit codes: 0 ok, 1 internal, 2 parse/validation, 3 unnormalizable,
// 4 manifold mismatch, 5 unwritable output
constexpr int kExitInternal = 1;
constexpr int kExitParse = 2;
constexpr int kExitNorm = 3;
constexpr int kExitMismatch = 4;
constexpr int kExitOutput = 5;

struct GlobalOpts {
    std::string format = "json";
    std::string unit = "deg";
    int threads = 0;
    std::string output;

    polvar::AngleUnit angle_unit() const {
        return unit == "rad" ? polvar::AngleUnit::radians : polvar::AngleUnit::degrees;
    }
};

void emit(const GlobalOpts& g, const std::string& payload) {
    if (g.output.empty()) {
        std::cout << payload;
        return;
    }
    std::ofstream out(g.output);
    if (!out) throw std::ios_base::failure("cannot write " + g.output);
    out << payload;
}

// optional pre-rotation: "alpha,beta,gamma" Euler angles in the CLI unit
polvar::TwoModeState maybe_rotate(const GlobalOpts& g, polvar::TwoModeState psi,
                                  const std::string& rotate_arg) {
    if (rotate_arg.empty()) return psi;
    double a, b, c;
    if (std::sscanf(rotate_arg.c_str(), "%lf,%lf,%lf", &a, &b, &c) != 3)
        throw polvar::parse_error("--rotate expects alpha,beta,gamma");
    const polvar::AngleUnit u = g.angle_unit();
    return polvar::apply_rotation(
        psi, {polvar::to_radians(a, u), polvar::to_radians(b, u), polvar::to_radians(c, u)});
}

int run_analyze(const GlobalOpts& g, const std::string& spec, const std::string& rotate_arg) {
    const polvar::TwoModeState psi =
        maybe_rotate(g, polvar::parse_state_spec(spec, g.angle_unit()), rotate_arg);
    const polvar::AnalyzeReport r = polvar::analyze_state(psi);
    emit(g, g.format == "csv" ? polvar::analyze_to_csv(r) : polvar::analyze_to_json(r));
    return 0;
}

int run_majorana(const GlobalOpts& g, const std::string& spec, bool canonical_only,
                 const std::string& rotate_arg) {
    const polvar::TwoModeState psi =
        maybe_rotate(g, polvar::parse_state_spec(spec, g.angle_unit()), rotate_arg);
    const polvar::MajoranaConstellation raw = polvar::to_constellation(psi);

    std::string payload;
    if (!canonical_only) {
        payload += "# raw\n";
        payload += polvar::constellation_to_csv(raw);
    }
    if (psi.n_photons() >= 2) {
        const polvar::CanonicalForm canon = polvar::canonicalize(raw);
        if (!canonical_only) payload += "\n";
        payload += "# canonical (rotation_rad "
                 + polvar::fmt_g(canon.rotation.alpha, 9) + " "
                 + polvar::fmt_g(canon.rotation.beta, 9) + " "
                 + polvar::fmt_g(canon.rotation.gamma, 9) + ")\n";
        payload += polvar::constellation_to_csv(canon.constellation);
    } else if (canonical_only) {
        throw polvar::parse_error("canonical form needs N >= 2");
    }
    emit(g, payload);
    return 0;
}

int run_same_orbit(const GlobalOpts& g, const std::string& spec_a, const std::string& spec_b) {
    const polvar::TwoModeState a = polvar::parse_state_spec(spec_a, g.angle_unit());
    const polvar::TwoModeState b = polvar::parse_state_spec(spec_b, g.angle_unit());
    const polvar::OrbitCheck check = polvar::same_orbit(a, b);

    std::string payload;
    switch (check.relation) {
        case polvar::OrbitRelation::same: payload = "same"; break;
        case polvar::OrbitRelation::mirror_only: payload = "mirror_only"; break;
        case polvar::OrbitRelation::different: payload = "different"; break;
    }
    payload += "\n";
    if (check.witness) {
        const polvar::AngleUnit u = g.angle_unit();
        payload += "witness_euler_" + std::string(u == polvar::AngleUnit::degrees ? "deg" : "rad")
                 + "," + polvar::fmt_g(polvar::from_radians(check.witness->alpha, u), 9)
                 + "," + polvar::fmt_g(polvar::from_radians(check.witness->beta, u), 9)
                 + "," + polvar::fmt_g(polvar::from_radians(check.witness->gamma, u), 9) + "\n";
    }
    emit(g, payload);
    return 0;
}

int run_sweep(const GlobalOpts& g, int n_photons, int resolution, int res_theta, int res_phi,
              bool full_phi) {
    polvar::SweepOptions opt;
    opt.threads = g.threads;
    opt.full_phi = full_phi;

    polvar::VariancePointCloud cloud;
    if (n_photons == 2) {
        if (resolution < 2) throw polvar::parse_error("resolution must be >= 2");
        cloud = polvar::sweep_n2(resolution, opt);
    } else if (n_photons == 3) {
        if (res_theta < 2 || res_phi < 2) throw polvar::parse_error("resolution must be >= 2");
        cloud = polvar::sweep_n3(res_theta, res_phi, opt);
    } else {
        throw polvar::parse_error("sweep supports N = 2 or 3");
    }

    const std::string prefix =
        g.output.empty() ? "sweep" + std::to_string(n_photons) : g.output;
    const std::string cloud_path = prefix + "_cloud.csv";
    const std::string hulls_path = prefix + "_hulls.csv";

    std::ofstream cloud_out(cloud_path);
    if (!cloud_out) throw std::ios_base::failure("cannot write " + cloud_path);
    polvar::write_cloud_csv(cloud_out, cloud);
    cloud_out.close();

    std::ofstream hulls_out(hulls_path);
    if (!hulls_out) throw std::ios_base::failure("cannot write " + hulls_path);
    polvar::write_hulls_csv(hulls_out, cloud);
    hulls_out.close();

    double lo = cloud.samples.front().trace, hi = lo;
    for (const polvar::SweepSample& s : cloud.samples) {
        lo = std::min(lo, s.trace);
        hi = std::max(hi, s.trace);
    }
    std::cout << "samples=" << cloud.samples.size() << " trace_min=" << polvar::fmt_g(lo, 9)
              << " trace_max=" << polvar::fmt_g(hi, 9) << " buckets=" << cloud.hulls.size()
              << " cloud=" << cloud_path << " hulls=" << hulls_path << "\n";
    return 0;
}

int run_bounds(const GlobalOpts& g, int n_photons, const std::string& lambdas_arg) {
    if (n_photons < 1) throw polvar::parse_error("N must be >= 1");
    std::optional<polvar::BoundsReport> report;
    if (!lambdas_arg.empty()) {
        double l1, l2, l3;
        if (std::sscanf(lambdas_arg.c_str(), "%lf,%lf,%lf", &l1, &l2, &l3) != 3)
            throw polvar::parse_error("--lambdas expects l1,l2,l3");
        polvar::PrincipalVariances pv;
        pv.lambdas = {l1, l2, l3};
        std::sort(pv.lambdas.begin(), pv.lambdas.end());
        report = polvar::check_bounds(pv, n_photons);
    }
    const polvar::BoundsReport* rp = report ? &*report : nullptr;
    emit(g, g.format == "csv" ? polvar::bounds_report_to_csv(n_photons, rp)
                              : polvar::bounds_report_to_json(n_photons, rp));
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Second-order polarization statistics of pure two-mode N-photon states"};
    app.require_subcommand(1);

    GlobalOpts g;
    app.add_option("--format", g.format, "Output format")->check(CLI::IsMember({"json", "csv"}));
    app.add_option("--unit", g.unit, "Angle unit for CLI-facing values")
        ->check(CLI::IsMember({"deg", "rad"}));
    app.add_option("--threads", g.threads, "Worker threads for sweeps (1 = serial kernel)");
    app.add_option("--output", g.output, "Output file, or file prefix for sweep");

    std::string spec, spec_b, lambdas_arg, rotate_arg;
    bool canonical_only = false;
    int sweep_n = 0, resolution = 512, res_theta = 96, res_phi = 48, bounds_n = 0;
    bool full_phi = false;

    CLI::App* analyze = app.add_subcommand("analyze", "Stokes vector, covariance, principal variances, bounds");
    analyze->fallthrough();
    analyze->add_option("state", spec, "State spec")->required();
    analyze->add_option("--rotate", rotate_arg, "Apply the polarization transformation alpha,beta,gamma first");

    CLI::App* majorana = app.add_subcommand("majorana", "Majorana constellation, raw and canonical");
    majorana->fallthrough();
    majorana->add_option("state", spec, "State spec")->required();
    majorana->add_flag("--canonical", canonical_only, "Emit only the canonical constellation");
    majorana->add_option("--rotate", rotate_arg, "Apply the polarization transformation alpha,beta,gamma first");

    CLI::App* same = app.add_subcommand("same-orbit", "SU(2) orbit equivalence of two states");
    same->fallthrough();
    same->add_option("state_a", spec, "First state spec")->required();
    same->add_option("state_b", spec_b, "Second state spec")->required();

    CLI::App* sweep = app.add_subcommand("sweep", "Orbit-parameter sweep; writes point-cloud and slice-hull CSVs");
    sweep->fallthrough();
    sweep->add_option("N", sweep_n, "Excitation manifold (2 or 3)")->required();
    sweep->add_option("--resolution", resolution, "Theta grid points for N=2 [512]");
    sweep->add_option("--res-theta", res_theta, "Theta grid points per angle for N=3 [96]");
    sweep->add_option("--res-phi", res_phi, "Phi grid points for N=3 [48]");
    sweep->add_flag("--full-phi", full_phi, "Sweep phi over [0, 2 pi) instead of [0, pi]");

    CLI::App* bounds = app.add_subcommand("bounds", "Invariant uncertainty-relation limits for N");
    bounds->fallthrough();
    bounds->add_option("N", bounds_n, "Excitation manifold")->required();
    bounds->add_option("--lambdas", lambdas_arg, "Evaluate a variance triplet l1,l2,l3");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitParse;
    }

    try {
        if (*analyze) return run_analyze(g, spec, rotate_arg);
        if (*majorana) return run_majorana(g, spec, canonical_only, rotate_arg);
        if (*same) return run_same_orbit(g, spec, spec_b);
        if (*sweep) return run_sweep(g, sweep_n, resolution, res_theta, res_phi, full_phi);
        if (*bounds) return run_bounds(g, bounds_n, lambdas_arg);
    } catch (const polvar::parse_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitParse;
    } catch (const polvar::normalization_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitNorm;
    } catch (const polvar::manifold_mismatch& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitMismatch;
    } catch (const std::ios_base::failure& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitOutput;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitParse;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInternal;
    }
    return kExitInternal;
}
