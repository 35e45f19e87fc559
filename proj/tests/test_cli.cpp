#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include <unistd.h>

#include <nlohmann/json.hpp>

#include "hypoindex/cli.hpp"
#include "support/generators.hpp"

using namespace hypoindex;
using namespace hypoindex::testing;
namespace fs = std::filesystem;

namespace {

struct Result {
    int code;
    std::string out;
    std::string err;
};

Result run(std::vector<std::string> args) {
    std::ostringstream out, err;
    const int code = cli::dispatch(args, out, err);
    return {code, out.str(), err.str()};
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

class TempDir {
public:
    TempDir() : path_(fs::temp_directory_path() / ("hypoindex_cli_" + std::to_string(::getpid()))) {
        fs::create_directories(path_);
    }
    ~TempDir() { fs::remove_all(path_); }

    std::string write(const std::string& name, const std::string& content) const {
        std::ofstream(path_ / name, std::ios::binary) << content;
        return (path_ / name).string();
    }
    std::string file(const std::string& name) const { return (path_ / name).string(); }

private:
    fs::path path_;
};

std::string calibration_instance() {
    return serialize_instance(single_loop_instance(sample_loop(circle({1.0, 0.0}, 0.5), 64, "calib")));
}

}  // namespace

TEST_CASE("crosscheck on the calibration instance") {
    TempDir dir;
    const auto calib = dir.write("calib.json", calibration_instance());
    const auto r = run({"crosscheck", "--instance", calib});
    CHECK(r.code == cli::kOk);
    CHECK(r.out == "winding_index=1 chern_index=1 agreement=true\n");
}

TEST_CASE("index and chern commands with reports") {
    TempDir dir;
    const auto calib = dir.write("calib.json", calibration_instance());
    const auto report = dir.file("index.json");
    auto r = run({"index", "--instance", calib, "--report", report});
    CHECK(r.code == 0);
    CHECK(r.out == "index=1\n");
    const auto j = nlohmann::json::parse(slurp(report));
    CHECK(j["index"] == 1);
    CHECK(j["windings"]["1"] == 1);
    CHECK(j["windings"]["-1"] == 0);
    CHECK(j["command"] == "index");
    CHECK(j["exit_code"] == 0);
    CHECK(j["inputs_digest"].get<std::string>().size() == 64);
    CHECK(j["parameters"]["clearance"] == kDefaultClearance);

    r = run({"chern", "--instance", calib, "--report", dir.file("chern.json")});
    CHECK(r.out == "index=1 agreement=true\n");
    const auto c = nlohmann::json::parse(slurp(dir.file("chern.json")));
    CHECK(c["per_q_contributions"].size() == 2);
    CHECK(c["total_rounded"] == 1);
}

TEST_CASE("exit codes") {
    TempDir dir;
    CHECK(run({"index", "--instance", dir.file("missing.json")}).code == cli::kFileNotFound);
    CHECK(run({"frobnicate"}).code == cli::kUsage);
    CHECK(run({}).code == cli::kUsage);
    CHECK(run({"index"}).code == cli::kUsage);

    const auto bad = dir.write("bad.json", serialize_instance(single_loop_instance(GammaLoop{"b", {3.0, 2.0, 4.0}}, 0.1)));
    auto r = run({"validate", "--instance", bad});
    CHECK(r.code == cli::kValidationFailed);
    CHECK(r.out.find("odd-integer clearance") != std::string::npos);
    CHECK(run({"index", "--instance", bad}).code == cli::kValidationFailed);

    const auto garbage = dir.write("garbage.json", "{\"manifold\": ");
    CHECK(run({"index", "--instance", garbage}).code == cli::kValidationFailed);

    CHECK(run({"fock-spectrum", "--gamma", "0,0", "--t", "-1"}).code == cli::kUsage);
    CHECK(run({"rockland", "--gamma", "abc"}).code == cli::kUsage);
    CHECK(run({"frames", "check", "--x-field", "1,0", "--y-field", "0,1,x"}).code == cli::kValidationFailed);
    CHECK(run({"oracle"}).code == cli::kUsage);
}

TEST_CASE("rockland and fock-spectrum") {
    auto r = run({"rockland", "--gamma", "3,0"});
    CHECK(r.code == 0);
    CHECK(r.out == "rockland=false\n");
    CHECK(run({"rockland", "--gamma", "2,0"}).out == "rockland=true\n");
    CHECK(run({"rockland", "--gamma", "0,1"}).out == "rockland=true\n");

    r = run({"fock-spectrum", "--gamma", "0,0", "--n", "6"});
    CHECK(r.code == 0);
    std::istringstream lines(r.out);
    std::string line;
    std::getline(lines, line);
    CHECK(line == "q,re,im");
    int rows = 0;
    while (std::getline(lines, line)) {
        const auto first = line.find(',');
        const auto second = line.find(',', first + 1);
        CHECK(std::stoi(line.substr(0, first)) == rows);
        CHECK(std::stod(line.substr(first + 1, second - first - 1)) == doctest::Approx(2 * rows + 1));
        ++rows;
    }
    CHECK(rows == 4);

    r = run({"fock-spectrum", "--gamma", "2,0", "--n", "8", "--opposite"});
    CHECK(r.out.find("\n0,3") != std::string::npos);
}

TEST_CASE("oracle command") {
    auto r = run({"oracle", "--gamma", "2,0"});
    CHECK(r.code == 0);
    CHECK(r.out == "index=0\n");
    r = run({"oracle", "--gamma", "3,0", "--n-max", "2"});
    CHECK(r.out == "not-fredholm\nn,zero_modes\n1,1\n-1,0\n2,2\n-2,0\n");

    TempDir dir;
    const auto sweep = dir.write("sweep.txt", "# gamma values\n2,0\n3,0\n0.5,-1.25\n");
    r = run({"oracle", "--sweep", sweep, "--n-max", "3", "--lattice-max", "2"});
    CHECK(r.code == 0);
    CHECK(r.out ==
          "gamma_re,gamma_im,verdict,dim_ker,dim_coker\n"
          "2,0,index=0,1,1\n"
          "3,0,not-fredholm,7,7\n"
          "0.5,-1.25,index=0,1,1\n");
}

TEST_CASE("frames check") {
    const auto r = run({"frames", "check", "--x-field", "1, 0, -y/2", "--y-field", "0, 1, x/2", "--gamma", "2 + x*z",
                        "--theta", "x*y + z"});
    CHECK(r.code == 0);
    CHECK(r.out.rfind("span=true", 0) == 0);
    const auto pos = r.out.find("gamma_invariance_max_residual=");
    REQUIRE(pos != std::string::npos);
    CHECK(std::stod(r.out.substr(pos + 30)) < 1e-5);

    const auto flat = run({"frames", "check", "--x-field", "1,0,0", "--y-field", "0,1,0"});
    CHECK(flat.code == 0);
    CHECK(flat.out.rfind("span=false", 0) == 0);
}

TEST_CASE("quiet flag and determinism") {
    TempDir dir;
    const auto calib = dir.write("calib.json", calibration_instance());
    CHECK(run({"index", "--instance", calib, "--quiet"}).out.empty());
    CHECK(run({"--quiet", "index", "--instance", calib}).out.empty());

    const auto a = run({"crosscheck", "--instance", calib, "--report", dir.file("a.json")});
    const auto b = run({"crosscheck", "--instance", calib, "--report", dir.file("b.json")});
    CHECK(a.out == b.out);
    CHECK(slurp(dir.file("a.json")) == slurp(dir.file("b.json")));
}
