#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <sstream>

#include <json.hpp>

#include "polvar/io.hpp"

using namespace polvar;
using nlohmann::json;

TEST_CASE("fmt_g digit control") {
    CHECK(fmt_g(M_PI, 9) == "3.14159265");
    CHECK(fmt_g(M_PI, 12) == "3.14159265359");
    CHECK(fmt_g(-0.0, 9) == "0");
    CHECK(fmt_g(2.0, 12) == "2");
}

TEST_CASE("angle units") {
    CHECK(to_radians(180.0, AngleUnit::degrees) == doctest::Approx(M_PI));
    CHECK(to_radians(1.25, AngleUnit::radians) == 1.25);
    CHECK(from_radians(M_PI / 2.0, AngleUnit::degrees) == doctest::Approx(90.0));
}

TEST_CASE("parse_state_spec named constructors") {
    const TwoModeState noon = parse_state_spec("noon:2", AngleUnit::degrees);
    CHECK(noon.n_photons() == 2);
    CHECK(noon.amplitude(0).real() == doctest::Approx(1.0 / std::sqrt(2.0)));

    // degrees are the CLI default unit
    const TwoModeState south = parse_state_spec("coherent:2,180,0", AngleUnit::degrees);
    CHECK(std::abs(south.amplitude(0) - cplx(1.0)) < 1e-12);

    const TwoModeState south_rad = parse_state_spec("coherent:2,3.14159265358979,0", AngleUnit::radians);
    CHECK(std::abs(south_rad.amplitude(0) - cplx(1.0)) < 1e-9);

    const TwoModeState eta = parse_state_spec("eta:3,+", AngleUnit::degrees);
    CHECK(eta.amplitude(3).real() == doctest::Approx(0.95302).epsilon(1e-4));
    const TwoModeState eta_m = parse_state_spec("eta:3,minus", AngleUnit::degrees);
    CHECK(eta_m.amplitude(0).real() == doctest::Approx(0.95302).epsilon(1e-4));

    const TwoModeState inline_state = parse_state_spec("2; 1,0; 0,0; 0,0", AngleUnit::degrees);
    CHECK(std::abs(inline_state.amplitude(0) - cplx(1.0)) < 1e-15);

    CHECK_THROWS_AS(parse_state_spec("bogus:1", AngleUnit::degrees), parse_error);
    CHECK_THROWS_AS(parse_state_spec("eta:3,x", AngleUnit::degrees), parse_error);
    CHECK_THROWS_AS(parse_state_spec("eta:2,+", AngleUnit::degrees), parse_error);
    CHECK_THROWS_AS(parse_state_spec("coherent:2,1", AngleUnit::degrees), parse_error);
    CHECK_THROWS_AS(parse_state_spec("whatever", AngleUnit::degrees), parse_error);
}

TEST_CASE("analyze JSON carries the fixed keys") {
    const AnalyzeReport r = analyze_state(parse_state_spec("eta:3,+", AngleUnit::degrees));
    const json j = json::parse(analyze_to_json(r));

    REQUIRE(j.contains("stokes_vector"));
    REQUIRE(j.contains("gamma"));
    REQUIRE(j.contains("lambdas"));
    REQUIRE(j.contains("axes"));
    REQUIRE(j.contains("bounds"));

    CHECK(j["n_photons"] == 3);
    CHECK(j["gamma"].size() == 9);
    CHECK(std::abs(j["stokes_vector"][2].get<double>() - 2.4495) < 1e-3);
    CHECK(std::abs(j["lambdas"][0].get<double>() - 3.0) < 1e-9);
    CHECK(std::abs(j["gamma"][0].get<double>() - 3.0) < 1e-9);
    CHECK(std::abs(j["gamma"][1].get<double>()) < 1e-9);
    CHECK(j["axes"].size() == 3);
    CHECK(j["bounds"]["all_pass"] == true);
    CHECK(j["bounds"]["trace"]["value"].get<double>() == doctest::Approx(9.0));
}

TEST_CASE("analyze CSV is key,value with 9 digits") {
    const AnalyzeReport r = analyze_state(parse_state_spec("noon:2", AngleUnit::degrees));
    const std::string csv = analyze_to_csv(r);
    CHECK(csv.rfind("key,value\n", 0) == 0);
    CHECK(csv.find("lambda_1,0\n") != std::string::npos);
    CHECK(csv.find("lambda_2,4\n") != std::string::npos);
    CHECK(csv.find("lambda_3,4\n") != std::string::npos);
    CHECK(csv.find("all_pass,1") != std::string::npos);
}

TEST_CASE("bounds reports") {
    const json j = json::parse(bounds_report_to_json(3, nullptr));
    CHECK(j["trace_lo"] == 6.0);
    CHECK(j["trace_hi"] == 15.0);
    CHECK(j["minor_lo"] == 9.0);
    CHECK(j["det_hi"].get<double>() == doctest::Approx(125.0));

    PrincipalVariances pv;
    pv.lambdas = {0.75, 0.75, 2.5};
    const BoundsReport rep = check_bounds(pv, 2);
    const json jr = json::parse(bounds_report_to_json(2, &rep));
    CHECK(jr["bounds"]["all_pass"] == true);

    const std::string csv = bounds_report_to_csv(2, &rep);
    CHECK(csv.find("trace_lo,4\n") != std::string::npos);
    CHECK(csv.find("all_pass,1") != std::string::npos);
}

TEST_CASE("constellation CSV is sorted with the fixed header") {
    MajoranaConstellation c;
    c.points = {{0.5, 0.1}, {0.2, 6.0}, {0.5, 0.05}};
    std::sort(c.points.begin(), c.points.end(), [](const SpherePoint& a, const SpherePoint& b) {
        return a.theta < b.theta || (a.theta == b.theta && a.phi < b.phi);
    });
    const std::string csv = constellation_to_csv(c);
    CHECK(csv.rfind("theta_rad,phi_rad\n", 0) == 0);
    std::istringstream in(csv);
    std::string line;
    std::getline(in, line);
    double prev_theta = -1.0, prev_phi = -1.0;
    int rows = 0;
    while (std::getline(in, line)) {
        double t, p;
        REQUIRE(std::sscanf(line.c_str(), "%lf,%lf", &t, &p) == 2);
        if (rows > 0) CHECK((t > prev_theta || (t == prev_theta && p >= prev_phi)));
        prev_theta = t;
        prev_phi = p;
        ++rows;
    }
    CHECK(rows == 3);
}

TEST_CASE("cloud and hull CSV shapes") {
    const VariancePointCloud cloud = sweep_n2(11);
    std::ostringstream cloud_os;
    write_cloud_csv(cloud_os, cloud);
    const std::string cloud_csv = cloud_os.str();
    CHECK(cloud_csv.rfind("param1,param2,param3,lam1,lam2,lam3,trace\n", 0) == 0);
    // N=2 rows leave the unused parameter columns empty
    CHECK(cloud_csv.find("0,,,") != std::string::npos);

    std::ostringstream hulls_os;
    write_hulls_csv(hulls_os, cloud);
    CHECK(hulls_os.str().rfind("trace,vx,vy,vz\n", 0) == 0);

    const VariancePointCloud c3 = sweep_n3(5, 3);
    std::ostringstream c3_os;
    write_cloud_csv(c3_os, c3);
    std::istringstream in(c3_os.str());
    std::string line;
    std::getline(in, line);
    std::getline(in, line);
    // first N=3 row: all three parameter columns populated (zeros)
    CHECK(line.rfind("0,0,0,", 0) == 0);
}
