#include <filesystem>
#include <fstream>
#include <iterator>
#include <sstream>
#include <string>
#include <vector>

#include "doctest.h"

#include "cli.hpp"

namespace fs = std::filesystem;

namespace {

struct Run {
    int code;
    std::string out;
    std::string err;
};

Run run(std::vector<std::string> args) {
    args.insert(args.begin(), "cocycle_lab");
    std::vector<const char*> argv;
    for (const std::string& a : args) argv.push_back(a.c_str());
    std::ostringstream out, err;
    const int code = cocycle::cli::dispatch(static_cast<int>(argv.size()), argv.data(), out, err);
    return {code, out.str(), err.str()};
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    REQUIRE(in.good());
    return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

fs::path scratch_dir() {
    const fs::path d = fs::temp_directory_path() / "cocycle_lab_cli_test";
    fs::create_directories(d);
    return d;
}

}  // namespace

TEST_CASE("cli: toral exponent at epsilon 0") {
    const Run r = run({"exponent", "--spec", "toral", "--epsilon", "0", "--steps", "1000"});
    CHECK(r.code == cocycle::cli::kExitOk);
    CHECK(r.out.find("0.9624236501") != std::string::npos);
}

TEST_CASE("cli: usage errors exit 1") {
    const Run bad_flag = run({"exponent", "--bogus"});
    CHECK(bad_flag.code == cocycle::cli::kExitUsage);
    CHECK(bad_flag.err.find("Usage") != std::string::npos);
    CHECK(run({}).code == cocycle::cli::kExitUsage);
    CHECK(run({"nonsense"}).code == cocycle::cli::kExitUsage);
    CHECK(run({"exponent", "--steps", "10"}).code == cocycle::cli::kExitUsage);
    CHECK(run({"slice", "--alpha", "2/4"}).code == cocycle::cli::kExitUsage);

    const fs::path cfg = scratch_dir() / "bad.cfg";
    std::ofstream(cfg) << "# comment\nsteps = 3000\nbogus = 1\n";
    const Run unknown = run({"exponent", "--config", cfg.string()});
    CHECK(unknown.code == cocycle::cli::kExitUsage);
    CHECK(unknown.err.find("bogus") != std::string::npos);
}

TEST_CASE("cli: output failure exits 2") {
    const Run r = run({"exponent", "--steps", "1000", "--out", "/nonexistent-dir/x.json"});
    CHECK(r.code == cocycle::cli::kExitFailure);
}

TEST_CASE("cli: help exits 0") {
    const Run r = run({"butterfly", "--help"});
    CHECK(r.code == cocycle::cli::kExitOk);
    CHECK(r.out.find("--qmax") != std::string::npos);
}

TEST_CASE("cli: config file values and flag precedence") {
    const fs::path cfg = scratch_dir() / "toral.cfg";
    std::ofstream(cfg) << "spec = toral\n# the unperturbed map\nepsilon = 0\nsteps = 5000\n";
    const Run from_file = run({"exponent", "--config", cfg.string()});
    CHECK(from_file.code == 0);
    CHECK(from_file.out.find("steps = 5000") != std::string::npos);
    const Run flag_wins = run({"exponent", "--config", cfg.string(), "--steps", "2000"});
    CHECK(flag_wins.out.find("steps = 2000") != std::string::npos);
}

TEST_CASE("cli: echoed config reproduces the artifact") {
    const fs::path dir = scratch_dir();
    const fs::path report = dir / "exp.json";
    REQUIRE(run({"exponent", "--spec", "random-product", "--steps", "3000", "--seed", "5", "--out",
                 report.string()}).code == 0);
    const std::string first = slurp(report);
    CHECK(first.find("\"config\"") != std::string::npos);
    CHECK(first.find("\"exponents\"") != std::string::npos);
    REQUIRE(run({"exponent", "--config", report.string()}).code == 0);
    CHECK(slurp(report) == first);

    const fs::path pgm = dir / "b.pgm";
    REQUIRE(run({"butterfly", "--width", "40", "--height", "17", "--qmax", "6", "--out", pgm.string()}).code == 0);
    const std::string image = slurp(pgm), sidecar = slurp(fs::path(pgm.string() + ".json"));
    REQUIRE(run({"butterfly", "--config", pgm.string() + ".json"}).code == 0);
    CHECK(slurp(pgm) == image);
    CHECK(slurp(fs::path(pgm.string() + ".json")) == sidecar);
}

TEST_CASE("cli: outputs do not depend on the thread count") {
    const fs::path dir = scratch_dir();
    std::vector<std::string> artifacts;
    for (const char* threads : {"1", "4", "16"}) {
        const fs::path pgm = dir / (std::string("t") + threads + ".pgm");
        REQUIRE(run({"butterfly", "--width", "48", "--height", "21", "--qmax", "7", "--threads", threads, "--out",
                     pgm.string()}).code == 0);
        const Run bary = run({"barycentric", "--steps", "20000", "--seed", "3", "--threads", threads});
        const Run slice = run({"slice", "--alpha", "golden", "--points", "101", "--threads", threads});
        artifacts.push_back(slurp(pgm) + bary.out + slice.out);
    }
    CHECK(artifacts[0] == artifacts[1]);
    CHECK(artifacts[0] == artifacts[2]);
}

TEST_CASE("cli: remaining subcommands run") {
    CHECK(run({"spectrum", "--spec", "barycentric", "--steps", "2000"}).code == 0);
    const Run cert = run({"certify", "--spec", "constant", "--matrix", "2,1,1,1"});
    CHECK(cert.code == 0);
    CHECK(cert.out.find("certified-hyperbolic") != std::string::npos);
    const Run f = run({"furstenberg", "--preset", "so2-pair", "--steps", "2000"});
    CHECK(f.code == 0);
    const Run s = run({"slice", "--alpha", "1/3", "--points", "5"});
    CHECK(s.code == 0);
    CHECK(s.out.rfind("energy,in_spectrum,verdict\n", 0) == 0);
    const Run m = run({"slice", "--measure", "--points", "101", "--grid", "64"});
    CHECK(m.code == 0);
}
