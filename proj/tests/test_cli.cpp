// End-to-end runs of the command-line tool. HECKEGRID_CLI and HECKEGRID_TEST_DIR are
// set by the build.
#include "heckegrid/json_io.hpp"

#include <doctest.h>

#include <array>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <sys/wait.h>

using namespace heckegrid;
namespace fs = std::filesystem;

namespace {

struct Run {
    int status = -1;
    std::string out;
};

Run run(const std::string& args, const std::string& env = "")
{
    std::string cmd = env + " " + HECKEGRID_CLI + " " + args + " 2>/dev/null";
    Run r;
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    std::array<char, 4096> buf{};
    std::size_t got;
    while ((got = std::fread(buf.data(), 1, buf.size(), pipe)) > 0) r.out.append(buf.data(), got);
    int raw = pclose(pipe);
    r.status = WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
    return r;
}

fs::path scratch(const std::string& name)
{
    fs::path dir = fs::path(HECKEGRID_TEST_DIR) / "cli";
    fs::create_directories(dir);
    return dir / name;
}

std::string slurp(const fs::path& p)
{
    std::ifstream in(p, std::ios::binary);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

Json read(const fs::path& p)
{
    return Json::parse(slurp(p));
}

} // namespace

TEST_CASE("build writes the family and is deterministic")
{
    auto a = scratch("grid_a.json");
    auto b = scratch("grid_b.json");
    REQUIRE(run("build --level 1 --k 6 --r 4 --dmax 23 --prec 60 --out " + a.string()).status == 0);
    REQUIRE(run("build --level 1 --k 6 --r 4 --dmax 23 --prec 60 --out " + b.string(), "HECKEGRID_THREADS=1").status == 0);
    CHECK(slurp(a) == slurp(b));
    Json j = read(a);
    CHECK(j["forms"]["13"]["coeffs"]["5"] == "-2401000");
    CHECK(j["params"]["t"] == 6);

    Run stdout_run = run("build --level 1 --k 6 --r 4 --dmax 23 --prec 60");
    CHECK(stdout_run.status == 0);
    CHECK(stdout_run.out == slurp(a));
}

TEST_CASE("show prints the printed expansion")
{
    auto a = scratch("grid_show.json");
    REQUIRE(run("build --level 1 --k 6 --r 4 --dmax 23 --prec 60 --out " + a.string()).status == 0);
    Run r = run("show --in " + a.string() + " --d 7 --terms 4");
    CHECK(r.status == 0);
    CHECK(r.out.find("f_7 = q^(-7/6) - 71750 q^(5/6) - 86461760 q^(11/6) - 13650854021 q^(17/6) - ...") !=
          std::string::npos);
    Run all = run("show --in " + a.string() + " --terms 2");
    CHECK(all.status == 0);
    CHECK(all.out.find("f_13 = q^(-13/6) - 2401000 q^(5/6) - ...") != std::string::npos);
    CHECK(run("show --in " + a.string() + " --d 8").status == 3);
    CHECK(run("show --in /nonexistent.json").status == 2);
}

TEST_CASE("hecke from flags and from a family file")
{
    auto report = scratch("hecke.json");
    Run r = run("hecke --level 2 --sign -1 --p 3,5 --n 1,2 --report " + report.string());
    CHECK(r.status == 0);
    CHECK(r.out.find("f_1 | T(3^1) = 3 f_3 + (50) h_2") != std::string::npos);
    Json j = read(report);
    CHECK(j["pass"] == true);
    CHECK(j["checks"].size() == 4);
    CHECK(j["checks"][0]["first_discrepancy"].is_null());
    CHECK(j["checks"][0]["lhs"]["coeffs"]["5"] == "12995");
    CHECK(j["checks"][0]["compared_positions"].get<long>() >= 10);

    auto report1 = scratch("hecke1.json");
    REQUIRE(run("hecke --level 2 --sign -1 --p 3,5 --n 1,2 --report " + report1.string(), "HECKEGRID_THREADS=1")
                .status == 0);
    CHECK(slurp(report1) == slurp(report));

    auto fam = scratch("deep.json");
    REQUIRE(run("build --level 1 --k 6 --r 4 --dmax 25 --prec 130 --seed-prec 700 --out " + fam.string()).status == 0);
    Run f = run("hecke --family " + fam.string() + " --p 5 --n 1");
    CHECK(f.status == 0);
    CHECK(f.out.find("= 125 f_5") != std::string::npos);
}

TEST_CASE("hecke exit codes")
{
    auto thin = scratch("thin.json");
    REQUIRE(run("build --level 2 --sign 1 --dmax 5 --prec 12 --out " + thin.string()).status == 0);
    CHECK(run("hecke --family " + thin.string() + " --p 5 --n 1").status == 3);
    CHECK(run("hecke --level 1 --k 6 --r 4 --p 3 --n 1").status == 2);
    CHECK(run("hecke --p 5").status == 2);
    CHECK(run("hecke --level 2 --sign 1 --p five").status == 2);

    // A family whose f_5 has one wrong free coefficient still passes the structural
    // checks but fails the identity.
    auto fam = scratch("tampered.json");
    REQUIRE(run("build --level 2 --sign 1 --dmax 5 --prec 120 --seed-prec 600 --out " + fam.string()).status == 0);
    Json j = read(fam);
    j["forms"]["5"]["coeffs"]["11"] = "12345";
    std::ofstream(fam) << j.dump(2);
    auto report = scratch("tampered_report.json");
    CHECK(run("hecke --family " + fam.string() + " --p 5 --n 1 --report " + report.string()).status == 1);
    Json rep = read(report);
    CHECK(rep["pass"] == false);
    CHECK(rep["checks"][0]["first_discrepancy"] == 11);
}

TEST_CASE("congruence selectors")
{
    auto out = scratch("cong.json");
    Run r = run("congruence --level 1 --k 4 --r 4 --p 5,7 --nmax 2 --json " + out.string());
    CHECK(r.status == 0);
    Json j = read(out);
    CHECK(j["verdict"] == "pass");
    CHECK(j["reports"].size() == 4);
    CHECK(j["estimated_Ap"]["5"] == 0);
    CHECK(j["estimated_Ap"]["7"] == 0);
    CHECK(j["reports"][0]["profile"].size() >= 10);
    CHECK(j["reports"][1]["target_exponent"] == 1);

    Run l = run("congruence --level34 3 --coeffs 1,0 --p 7 --nmax 1 --json -");
    CHECK(l.status == 0);
    CHECK(l.out.find("\"verdict\": \"pass\"") != std::string::npos);
    CHECK(l.out.find("U(p^n) is applied") != std::string::npos);

    auto thin = scratch("thin_cong.json");
    REQUIRE(run("build --level 2 --sign 1 --dmax 3 --prec 12 --out " + thin.string()).status == 0);
    CHECK(run("congruence --family " + thin.string() + " --p 5").status == 3);
    CHECK(run("congruence --level34 3 --p 7").status == 2);
    CHECK(run("congruence --level34 5 --coeffs 1,0 --p 7").status == 2);
    CHECK(run("congruence --level34 3 --coeffs 1/7,0 --p 7").status == 3);
    CHECK(run("congruence --level 1 --k 8 --r 8 --p 5").status == 2);
}

TEST_CASE("multcheck and selftest")
{
    Run m = run("multcheck --samples 100 --seed 3");
    CHECK(m.status == 0);
    Json j = Json::parse(m.out);
    CHECK(j["pass"] == true);
    CHECK(j["conventions_passing"] == 1);
    CHECK(run("multcheck --samples 100 --seed 3").out == m.out);

    Run s = run("selftest");
    CHECK(s.status == 0);
    CHECK(s.out.find("0 mismatches: PASS") != std::string::npos);
    auto pos = s.out.find("selftest: ");
    REQUIRE(pos != std::string::npos);
    CHECK(std::stol(s.out.substr(pos + 10)) >= 100);
}

TEST_CASE("usage errors")
{
    CHECK(run("").status == 2);
    CHECK(run("frobnicate").status == 2);
    CHECK(run("build --level 1 --k 6 --r 3").status == 2);
    CHECK(run("build --level 2 --sign 1 --prec 0").status == 2);
    CHECK(run("--help").status == 0);
}
