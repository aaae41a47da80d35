#include <catch2/catch_amalgamated.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "nct/report.hpp"

using namespace nct;
namespace fs = std::filesystem;

namespace {

std::string slurp(const fs::path& p) {
    std::ifstream f(p, std::ios::binary);
    REQUIRE(f.good());
    std::ostringstream ss;
    ss << f.rdbuf();
    return ss.str();
}

int run_cli(const std::string& args) {
    const std::string cmd = std::string(NCT_CLI_PATH) + " " + args + " >/dev/null 2>&1";
    const int rc = std::system(cmd.c_str());
    return WIFEXITED(rc) ? WEXITSTATUS(rc) : -1;
}

fs::path fresh_dir(const std::string& name) {
    const fs::path p = fs::temp_directory_path() / ("nct_test_" + name);
    fs::remove_all(p);
    fs::create_directories(p);
    return p;
}

}  // namespace

TEST_CASE("format_double survives a parse round trip") {
    for (const double v : {0.1, 1.0 / 3.0, 1e-300, 6.02e23, -0.0, 2.5}) {
        const std::string s = format_double(v);
        CHECK(std::stod(s) == v);
    }
    CHECK(format_double(2.5) == "2.5");
}

TEST_CASE("dump_report emits full-precision floats and stable order") {
    Report r;
    r["b_first"] = 0.1;
    r["a_second"] = Report::array({1, 2.5});
    r["nested"] = Report{{"x", true}, {"y", "str"}};
    const std::string text = dump_report(r);
    // insertion order is preserved, not alphabetical
    CHECK(text.find("b_first") < text.find("a_second"));
    CHECK(text.find("0.10000000000000001") != std::string::npos);
    // parseable and value-identical
    const Report back = Report::parse(text);
    CHECK(back["b_first"].get<double>() == 0.1);
    CHECK(back["nested"]["y"] == "str");
    // emitting twice is byte-identical
    CHECK(dump_report(r) == text);
}

TEST_CASE("decay profile CSV") {
    DecayProfile empty;
    CHECK(decay_profile_csv(empty) == "shell,mass,log_mass\n");

    DecayProfile prof;
    prof.shell_mass = {1.0, 0.5};
    const std::string csv = decay_profile_csv(prof);
    CHECK(csv.find("0,1,0\n") != std::string::npos);
    CHECK(csv.find("1,0.5,") != std::string::npos);
}

TEST_CASE("matrix and signal CSV shapes") {
    Mat m = Mat::Zero(2, 2);
    m(0, 1) = cplx{1.0, -2.0};
    const std::string csv = matrix_csv(m);
    CHECK(csv == "0,0,1,-2\n0,0,0,0\n");

    Vec v(2);
    v << cplx{0.5, 0.0}, cplx{0.0, 1.0};
    CHECK(signal_csv(v) == "0.5,0\n0,1\n");
}

TEST_CASE("twisted sequence JSON round trip") {
    TwistedSeq a;
    a.theta = Theta::from_rational(3, 7);
    a.set(0, 0, cplx{1.0, 0.0});
    a.set(-2, 5, cplx{0.25, -0.125});
    const TwistedSeq back = twisted_seq_from_json(to_json(a));
    CHECK(back.theta == a.theta);
    REQUIRE(back.coeffs.size() == a.coeffs.size());
    for (const auto& [idx, v] : a.coeffs)
        CHECK(std::abs(back.at(idx.first, idx.second) - v) == 0.0);

    TwistedSeq irr;
    irr.theta = Theta::from_real(0.123456789);
    irr.set(1, 1, cplx{2.0, 3.0});
    const TwistedSeq iback = twisted_seq_from_json(to_json(irr));
    CHECK(iback.theta == irr.theta);
}

TEST_CASE("CLI: report is byte-identical across thread counts and reruns") {
    const fs::path d1 = fresh_dir("t1"), d2 = fresh_dir("t2"), d3 = fresh_dir("t3");
    const std::string base = "run janssen --L 32 --a 4 --b 4 --seed 7";
    REQUIRE(run_cli(base + " --threads 1 --out " + d1.string()) == 0);
    REQUIRE(run_cli(base + " --threads 4 --out " + d2.string()) == 0);
    REQUIRE(run_cli(base + " --threads 1 --out " + d3.string()) == 0);
    const std::string r1 = slurp(d1 / "report.json");
    CHECK(r1 == slurp(d2 / "report.json"));
    CHECK(r1 == slurp(d3 / "report.json"));
    CHECK(slurp(d1 / "decay.csv") == slurp(d2 / "decay.csv"));
    CHECK(Report::parse(r1)["results"]["rebuild_residual"].get<double>() < 1e-10);
}

TEST_CASE("CLI: exit codes") {
    const fs::path d = fresh_dir("codes");
    // unknown experiment -> usage error
    CHECK(run_cli("run no-such-experiment --out " + d.string()) == 1);
    // missing subcommand -> usage error
    CHECK(run_cli("--out " + d.string()) == 1);
    // a does not divide L -> validation error
    CHECK(run_cli("run frame-bounds --L 32 --a 5 --b 4 --out " + d.string()) == 2);
    // unknown window kind -> validation error
    CHECK(run_cli("run frame-bounds --L 32 --a 4 --b 4 --window blob --out " + d.string()) == 2);
    // point-mass window at redundancy 2 is not a frame: dual-window hits a
    // numerical failure
    CHECK(run_cli("run dual-window --L 32 --a 4 --b 8 --window point_mass --out " +
                  d.string()) == 3);
    // success path
    CHECK(run_cli("run frame-bounds --L 32 --a 4 --b 4 --out " + d.string()) == 0);
}

TEST_CASE("CLI: config file with flag override") {
    const fs::path d = fresh_dir("cfg");
    const fs::path cfgfile = d / "exp.cfg";
    write_file(cfgfile.string(), "L=32\na=4\nb=4\nseed=9\nwindow=gaussian\n");
    REQUIRE(run_cli("run frame-bounds --config " + cfgfile.string() + " --out " + d.string()) == 0);
    Report rep = Report::parse(slurp(d / "report.json"));
    CHECK(rep["config"]["L"].get<long>() == 32);
    CHECK(rep["config"]["seed"].get<std::uint64_t>() == 9);

    // the flag wins over the file
    REQUIRE(run_cli("run frame-bounds --config " + cfgfile.string() + " --seed 11 --out " +
                    d.string()) == 0);
    rep = Report::parse(slurp(d / "report.json"));
    CHECK(rep["config"]["seed"].get<std::uint64_t>() == 11);
}
