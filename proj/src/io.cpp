#include "polvar/io.hpp"

#include <cmath>
#include <cstdio>
#include <ostream>
#include <sstream>

namespace polvar {

std::string fmt_g(double v, int sig_digits) {
    if (v == 0.0) v = 0.0;  // normalize -0
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*g", sig_digits, v);
    return buf;
}

double to_radians(double value, AngleUnit unit) {
    return unit == AngleUnit::degrees ? value * M_PI / 180.0 : value;
}

double from_radians(double value, AngleUnit unit) {
    return unit == AngleUnit::degrees ? value * 180.0 / M_PI : value;
}

namespace {

std::string trim(const std::string& s) {
    size_t b = s.find_first_not_of(" \t");
    size_t e = s.find_last_not_of(" \t");
    return b == std::string::npos ? "" : s.substr(b, e - b + 1);
}

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::string cur;
    std::istringstream in(s);
    while (std::getline(in, cur, sep)) out.push_back(trim(cur));
    return out;
}

int parse_int(const std::string& s) {
    try {
        size_t pos = 0;
        int v = std::stoi(s, &pos);
        if (pos != s.size()) throw parse_error("bad integer: " + s);
        return v;
    } catch (const parse_error&) {
        throw;
    } catch (const std::exception&) {
        throw parse_error("bad integer: " + s);
    }
}

double parse_double(const std::string& s) {
    try {
        size_t pos = 0;
        double v = std::stod(s, &pos);
        if (pos != s.size()) throw parse_error("bad number: " + s);
        return v;
    } catch (const parse_error&) {
        throw;
    } catch (const std::exception&) {
        throw parse_error("bad number: " + s);
    }
}

} // namespace

TwoModeState parse_state_spec(const std::string& spec_in, AngleUnit unit) {
    const std::string spec = trim(spec_in);
    const size_t colon = spec.find(':');
    if (colon != std::string::npos) {
        const std::string kind = spec.substr(0, colon);
        const std::vector<std::string> args = split(spec.substr(colon + 1), ',');
        try {
            if (kind == "coherent") {
                if (args.size() != 3) throw parse_error("coherent:N,theta,phi");
                return make_su2_coherent(parse_int(args[0]),
                                         to_radians(parse_double(args[1]), unit),
                                         to_radians(parse_double(args[2]), unit));
            }
            if (kind == "noon") {
                if (args.size() != 1) throw parse_error("noon:N");
                return make_noon(parse_int(args[0]));
            }
            if (kind == "eta") {
                if (args.size() != 2) throw parse_error("eta:N,+|-");
                EtaBranch branch;
                if (args[1] == "+" || args[1] == "plus") branch = EtaBranch::plus;
                else if (args[1] == "-" || args[1] == "minus") branch = EtaBranch::minus;
                else throw parse_error("eta branch must be + or -");
                return make_eta(parse_int(args[0]), branch);
            }
        } catch (const std::invalid_argument& e) {
            throw parse_error(e.what());
        }
        throw parse_error("unknown state constructor: " + kind);
    }
    if (spec.find(';') != std::string::npos) return parse_text(spec);
    throw parse_error("unrecognized state spec: " + spec);
}

AnalyzeReport analyze_state(const TwoModeState& psi) {
    AnalyzeReport r;
    r.n_photons = psi.n_photons();
    r.stokes = stokes_vector(psi);
    r.gamma = covariance(psi);
    r.pv = principal_variances(r.gamma);
    r.bounds = check_bounds(r.pv, r.n_photons);
    return r;
}

namespace {

constexpr int kJsonDigits = 12;
constexpr int kCsvDigits = 9;

std::string json_array(const double* v, int count, int digits) {
    std::string s = "[";
    for (int i = 0; i < count; ++i) {
        if (i) s += ", ";
        s += fmt_g(v[i], digits);
    }
    return s + "]";
}

std::string json_vec3(const Vec3& v, int digits) {
    const double a[3] = {v.x, v.y, v.z};
    return json_array(a, 3, digits);
}

std::string json_bound_check(const BoundCheck& c) {
    std::string s = "{";
    s += "\"value\": " + fmt_g(c.value, kJsonDigits);
    s += ", \"lo\": " + fmt_g(c.lo, kJsonDigits);
    s += ", \"hi\": " + fmt_g(c.hi, kJsonDigits);
    s += ", \"margin_lo\": " + fmt_g(c.margin_lo, kJsonDigits);
    s += ", \"margin_hi\": " + fmt_g(c.margin_hi, kJsonDigits);
    s += std::string(", \"pass_lo\": ") + (c.pass_lo ? "true" : "false");
    s += std::string(", \"pass_hi\": ") + (c.pass_hi ? "true" : "false");
    return s + "}";
}

std::string json_bounds(const BoundsReport& b) {
    std::string s = "{";
    s += "\"trace\": " + json_bound_check(b.trace);
    s += ", \"minors\": " + json_bound_check(b.minors);
    s += ", \"det\": " + json_bound_check(b.det);
    s += std::string(", \"all_pass\": ") + (b.all_pass() ? "true" : "false");
    return s + "}";
}

void csv_bound_check(std::string& s, const char* name, const BoundCheck& c) {
    s += std::string(name) + "_value," + fmt_g(c.value, kCsvDigits) + "\n";
    s += std::string(name) + "_lo," + fmt_g(c.lo, kCsvDigits) + "\n";
    s += std::string(name) + "_hi," + fmt_g(c.hi, kCsvDigits) + "\n";
    s += std::string(name) + "_margin_lo," + fmt_g(c.margin_lo, kCsvDigits) + "\n";
    s += std::string(name) + "_margin_hi," + fmt_g(c.margin_hi, kCsvDigits) + "\n";
    s += std::string(name) + "_pass," + ((c.pass_lo && c.pass_hi) ? "1" : "0") + "\n";
}

} // namespace

std::string analyze_to_json(const AnalyzeReport& r) {
    std::string s = "{\n";
    s += "  \"n_photons\": " + std::to_string(r.n_photons) + ",\n";
    s += "  \"stokes_vector\": " + json_vec3(r.stokes, kJsonDigits) + ",\n";
    s += "  \"gamma\": " + json_array(r.gamma.gamma.m.data(), 9, kJsonDigits) + ",\n";
    s += "  \"lambdas\": " + json_array(r.pv.lambdas.data(), 3, kJsonDigits) + ",\n";
    s += "  \"axes\": [" + json_vec3(r.pv.axes[0], kJsonDigits) + ", "
       + json_vec3(r.pv.axes[1], kJsonDigits) + ", " + json_vec3(r.pv.axes[2], kJsonDigits)
       + "],\n";
    s += "  \"bounds\": " + json_bounds(r.bounds) + "\n";
    return s + "}\n";
}

std::string analyze_to_csv(const AnalyzeReport& r) {
    std::string s = "key,value\n";
    s += "n_photons," + std::to_string(r.n_photons) + "\n";
    const char* comp[3] = {"1", "2", "3"};
    for (int k = 0; k < 3; ++k)
        s += std::string("stokes_") + comp[k] + "," + fmt_g(r.stokes[k], kCsvDigits) + "\n";
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
            s += std::string("gamma_") + comp[i] + comp[j] + ","
               + fmt_g(r.gamma.gamma(i, j), kCsvDigits) + "\n";
    for (int k = 0; k < 3; ++k)
        s += std::string("lambda_") + comp[k] + "," + fmt_g(r.pv.lambdas[static_cast<size_t>(k)], kCsvDigits) + "\n";
    for (int k = 0; k < 3; ++k)
        for (int j = 0; j < 3; ++j)
            s += std::string("axis_") + comp[k] + "_" + comp[j] + ","
               + fmt_g(r.pv.axes[static_cast<size_t>(k)][j], kCsvDigits) + "\n";
    csv_bound_check(s, "trace", r.bounds.trace);
    csv_bound_check(s, "minors", r.bounds.minors);
    csv_bound_check(s, "det", r.bounds.det);
    s += std::string("all_pass,") + (r.bounds.all_pass() ? "1" : "0") + "\n";
    return s;
}

std::string bounds_report_to_json(int n_photons, const BoundsReport* report) {
    const UncertaintyBounds b = bounds_for(n_photons);
    std::string s = "{\n";
    s += "  \"n_photons\": " + std::to_string(n_photons) + ",\n";
    s += "  \"trace_lo\": " + fmt_g(b.trace_lo, kJsonDigits) + ",\n";
    s += "  \"trace_hi\": " + fmt_g(b.trace_hi, kJsonDigits) + ",\n";
    s += "  \"minor_lo\": " + fmt_g(b.minor_lo, kJsonDigits) + ",\n";
    s += "  \"minor_hi\": " + fmt_g(b.minor_hi, kJsonDigits) + ",\n";
    s += "  \"det_lo\": " + fmt_g(b.det_lo, kJsonDigits) + ",\n";
    s += "  \"det_hi\": " + fmt_g(b.det_hi, kJsonDigits);
    if (report) s += ",\n  \"bounds\": " + json_bounds(*report);
    return s + "\n}\n";
}

std::string bounds_report_to_csv(int n_photons, const BoundsReport* report) {
    const UncertaintyBounds b = bounds_for(n_photons);
    std::string s = "key,value\n";
    s += "n_photons," + std::to_string(n_photons) + "\n";
    s += "trace_lo," + fmt_g(b.trace_lo, kCsvDigits) + "\n";
    s += "trace_hi," + fmt_g(b.trace_hi, kCsvDigits) + "\n";
    s += "minor_lo," + fmt_g(b.minor_lo, kCsvDigits) + "\n";
    s += "minor_hi," + fmt_g(b.minor_hi, kCsvDigits) + "\n";
    s += "det_lo," + fmt_g(b.det_lo, kCsvDigits) + "\n";
    s += "det_hi," + fmt_g(b.det_hi, kCsvDigits) + "\n";
    if (report) {
        csv_bound_check(s, "trace", report->trace);
        csv_bound_check(s, "minors", report->minors);
        csv_bound_check(s, "det", report->det);
        s += std::string("all_pass,") + (report->all_pass() ? "1" : "0") + "\n";
    }
    return s;
}

std::string constellation_to_csv(const MajoranaConstellation& c) {
    std::string s = "theta_rad,phi_rad\n";
    for (const SpherePoint& p : c.points)
        s += fmt_g(p.theta, kCsvDigits) + "," + fmt_g(p.phi, kCsvDigits) + "\n";
    return s;
}

void write_cloud_csv(std::ostream& os, const VariancePointCloud& cloud) {
    os << "param1,param2,param3,lam1,lam2,lam3,trace\n";
    for (const SweepSample& s : cloud.samples) {
        for (int d = 0; d < 3; ++d) {
            if (d < s.n_params) os << fmt_g(s.params[static_cast<size_t>(d)], kCsvDigits);
            os << ',';
        }
        os << fmt_g(s.lambdas[0], kCsvDigits) << ',' << fmt_g(s.lambdas[1], kCsvDigits) << ','
           << fmt_g(s.lambdas[2], kCsvDigits) << ',' << fmt_g(s.trace, kCsvDigits) << '\n';
    }
}

void write_hulls_csv(std::ostream& os, const VariancePointCloud& cloud) {
    os << "trace,vx,vy,vz\n";
    for (const SliceHull& h : cloud.hulls)
        for (const Vec3& v : h.vertices)
            os << fmt_g(h.trace, kCsvDigits) << ',' << fmt_g(v.x, kCsvDigits) << ','
               << fmt_g(v.y, kCsvDigits) << ',' << fmt_g(v.z, kCsvDigits) << '\n';
}

} // namespace polvar
