// End-to-end checks of the CLI surface: subcommands, exit codes, units,
// output formats. Usage: cli_surface <path-to-polvar-cli> <scratch-dir>

#include <sys/wait.h>

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

using nlohmann::json;

namespace {

std::string g_cli;
std::filesystem::path g_scratch;
int g_failures = 0;

struct RunResult {
    int exit_code = -1;
    std::string out;
    std::string err;
};

RunResult run_cli(const std::string& args) {
    const std::string out_path = (g_scratch / "out.txt").string();
    const std::string err_path = (g_scratch / "err.txt").string();
    const std::string cmd = g_cli + " " + args + " > " + out_path + " 2> " + err_path;
    const int rc = std::system(cmd.c_str());
    RunResult r;
    r.exit_code = WIFEXITED(rc) ? WEXITSTATUS(rc) : -1;
    std::ifstream fo(out_path), fe(err_path);
    std::stringstream so, se;
    so << fo.rdbuf();
    se << fe.rdbuf();
    r.out = so.str();
    r.err = se.str();
    return r;
}

void check(bool cond, const std::string& what) {
    if (!cond) {
        std::printf("FAIL  %s\n", what.c_str());
        ++g_failures;
    } else {
        std::printf("ok    %s\n", what.c_str());
    }
}

} // namespace

int main(int argc, char** argv) {
    if (argc < 3) {
        std::fprintf(stderr, "usage: cli_surface <polvar-cli> <scratch-dir>\n");
        return 2;
    }
    g_cli = argv[1];
    g_scratch = argv[2];
    std::filesystem::create_directories(g_scratch);

    // analyze: json default, csv on request
    {
        RunResult r = run_cli("analyze noon:2");
        check(r.exit_code == 0, "analyze noon:2 exits 0");
        const json j = json::parse(r.out, nullptr, false);
        check(!j.is_discarded(), "analyze emits JSON");
        check(std::abs(j["lambdas"][0].get<double>() - 0.0) < 1e-9
                  && std::abs(j["lambdas"][1].get<double>() - 4.0) < 1e-9
                  && std::abs(j["lambdas"][2].get<double>() - 4.0) < 1e-9,
              "analyze noon:2 lambdas (0,4,4)");

        RunResult c = run_cli("analyze noon:2 --format csv");
        check(c.exit_code == 0 && c.out.rfind("key,value\n", 0) == 0, "analyze --format csv");
    }

    // inline text-form state: |0,2> has Stokes (0,0,-2)
    {
        RunResult r = run_cli("analyze \"2; 1,0; 0,0; 0,0\"");
        const json j = json::parse(r.out, nullptr, false);
        check(r.exit_code == 0 && !j.is_discarded()
                  && std::abs(j["stokes_vector"][2].get<double>() + 2.0) < 1e-9,
              "analyze inline |0,2> stokes (0,0,-2)");
    }

    // degrees default, radians behind the flag
    {
        RunResult deg = run_cli("analyze coherent:2,180,0");
        RunResult rad = run_cli("analyze coherent:2,3.141592653589793,0 --unit rad");
        const json jd = json::parse(deg.out, nullptr, false);
        const json jr = json::parse(rad.out, nullptr, false);
        check(std::abs(jd["stokes_vector"][2].get<double>() + 2.0) < 1e-9, "coherent angle in degrees");
        check(std::abs(jr["stokes_vector"][2].get<double>() + 2.0) < 1e-9, "--unit rad");
    }

    // --rotate applies a polarization transformation; the variance sum is
    // invariant and a quarter turn moves the pole onto s1
    {
        RunResult r = run_cli("analyze noon:2 --rotate 30,45,10");
        const json j = json::parse(r.out, nullptr, false);
        const double sum = j["lambdas"][0].get<double>() + j["lambdas"][1].get<double>()
                         + j["lambdas"][2].get<double>();
        check(r.exit_code == 0 && std::abs(sum - 8.0) < 1e-9, "--rotate keeps the variance sum");

        RunResult q = run_cli("analyze coherent:2,0,0 --rotate 0,45,0");
        const json jq = json::parse(q.out, nullptr, false);
        check(std::abs(jq["stokes_vector"][0].get<double>() - 2.0) < 1e-9,
              "--rotate 0,45,0 turns the pole onto s1");

        check(run_cli("analyze noon:2 --rotate nope").exit_code == 2, "bad --rotate exits 2");
    }

    // majorana: raw + canonical blocks, canonical-only flag
    {
        RunResult r = run_cli("majorana noon:3");
        check(r.exit_code == 0 && r.out.find("# raw") != std::string::npos
                  && r.out.find("# canonical") != std::string::npos,
              "majorana emits raw and canonical blocks");
        check(r.out.find("theta_rad,phi_rad") != std::string::npos, "constellation CSV header");

        RunResult c = run_cli("majorana coherent:2,0,0 --canonical");
        int zero_rows = 0;
        std::istringstream in(c.out);
        std::string line;
        while (std::getline(in, line))
            if (line.rfind("0,", 0) == 0) ++zero_rows;
        check(c.exit_code == 0 && zero_rows == 2, "majorana coherent:2,0,0 two pole rows");
    }

    // same-orbit verdicts and the witness line
    {
        RunResult s = run_cli("same-orbit \"2; 0,0; 1,0; 0,0\" noon:2");
        check(s.exit_code == 0 && s.out.rfind("same", 0) == 0, "same-orbit |1,1> vs noon:2 -> same");
        check(s.out.find("witness_euler_deg") != std::string::npos, "witness euler triple printed");

        RunResult d = run_cli("same-orbit eta:3,+ \"3; 0,0; 0.5704,0; 0.7914,0; 0.2199,0\"");
        check(d.exit_code == 0 && d.out.rfind("different", 0) == 0,
              "same-orbit eta:3,+ vs hexagon state -> different");

        RunResult i = run_cli("same-orbit noon:3 noon:3");
        check(i.exit_code == 0 && i.out.rfind("same", 0) == 0, "same-orbit is reflexive");
    }

    // sweep: summary line and output files
    {
        const std::string prefix = (g_scratch / "s2").string();
        RunResult r = run_cli("sweep 2 --resolution 512 --output " + prefix);
        check(r.exit_code == 0, "sweep 2 exits 0");
        check(r.out.find("samples=512") != std::string::npos, "sweep summary sample count");
        check(r.out.find("trace_min=4") != std::string::npos
                  && r.out.find("trace_max=8") != std::string::npos,
              "sweep 2 trace range [4,8]");
        check(std::filesystem::exists(prefix + "_cloud.csv")
                  && std::filesystem::exists(prefix + "_hulls.csv"),
              "sweep writes cloud and hull CSVs");

        std::ifstream cloud(prefix + "_cloud.csv");
        std::string header;
        std::getline(cloud, header);
        check(header == "param1,param2,param3,lam1,lam2,lam3,trace", "cloud CSV header");

        std::ifstream hulls(prefix + "_hulls.csv");
        std::getline(hulls, header);
        check(header == "trace,vx,vy,vz", "hull CSV header");
    }

    // error paths with documented exit codes
    check(run_cli("analyze bogus:xyz").exit_code == 2, "parse failure exits 2");
    check(run_cli("analyze \"2; 0,0; 0,0; 0,0\"").exit_code == 3, "unnormalizable exits 3");
    check(run_cli("same-orbit noon:2 noon:3").exit_code == 4, "manifold mismatch exits 4");
    check(run_cli("sweep 2 --resolution 1").exit_code == 2, "resolution < 2 exits 2");
    check(run_cli("sweep 2 --output /nonexistent_dir_zz/x").exit_code == 5,
          "unwritable output exits 5");
    check(run_cli("analyze eta:2,+").exit_code == 2, "eta below N=3 exits 2");

    // bounds subcommand
    {
        RunResult b = run_cli("bounds 2");
        const json j = json::parse(b.out, nullptr, false);
        check(b.exit_code == 0 && !j.is_discarded() && j["trace_hi"] == 8.0, "bounds 2 limits");

        RunResult bl = run_cli("bounds 2 --lambdas 0.75,0.75,2.5");
        const json jl = json::parse(bl.out, nullptr, false);
        check(bl.exit_code == 0 && jl["bounds"]["all_pass"] == true,
              "bounds --lambdas evaluates the triplet");

        RunResult bf = run_cli("bounds 2 --lambdas 4,4,4 --format csv");
        check(bf.exit_code == 0 && bf.out.find("all_pass,0") != std::string::npos,
              "bounds csv flags a failing triplet");
    }

    // --output redirects payloads to a file
    {
        const std::string path = (g_scratch / "analyze.json").string();
        RunResult r = run_cli("analyze noon:2 --output " + path);
        std::ifstream f(path);
        check(r.exit_code == 0 && f.good(), "analyze --output writes the file");
    }

    if (g_failures == 0) std::printf("cli surface: all checks passed\n");
    return g_failures == 0 ? 0 : 1;
}
