#include "odo/cli.hpp"
#include "odo/rational.hpp"

#include <doctest.h>
#include <json.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

using namespace odo;
using nlohmann::json;

namespace {

struct Run {
    int code;
    std::string out, err;
    json first() const { return json::parse(out.substr(0, out.find('\n'))); }
};

Run run(std::vector<std::string> args) {
    std::ostringstream out, err;
    const int code = run_cli(args, out, err);
    return {code, out.str(), err.str()};
}

std::filesystem::path temp_file(const std::string& name, const std::string& contents) {
    const auto p = std::filesystem::temp_directory_path() / name;
    std::ofstream(p) << contents;
    return p;
}

}  // namespace

TEST_CASE("claim1 through the driver") {
    const Run r = run({"verify", "claim1", "--k", "1"});
    CHECK(r.code == kExitVerified);
    const json j = r.first();
    CHECK(j["verdict"] == "verified");
    CHECK(j["values"]["count"] == "8128");
    CHECK_FALSE(j.contains("wall_time_s"));
    CHECK(run({"verify", "claim1", "--k", "1", "--timing"}).first().contains("wall_time_s"));
}

TEST_CASE("usage errors exit with 3") {
    CHECK(run({"verify", "claim1", "--k", "0"}).code == kExitUsage);
    CHECK(run({"verify", "nonsense"}).code == kExitUsage);
    CHECK(run({"measure"}).code == kExitUsage);
    CHECK(run({"measure", "--set", "B1", "--direction", "sideways"}).code == kExitUsage);
    CHECK(run({"witness", "--epsilon", "1"}).code == kExitUsage);
    CHECK(run({"--tol", "0", "verify", "claim1"}).code == kExitUsage);
    CHECK(run({}).code == kExitUsage);
    CHECK(run({"--help"}).code == kExitVerified);
}

TEST_CASE("refuted and inconclusive verdicts map to 1 and 2") {
    CHECK(run({"verify", "nonatomic"}).code == kExitRefuted);
    CHECK(run({"--system", "uniform:2", "verify", "nonatomic"}).code == kExitVerified);
    const Run sc = run({"verify", "sc-gap", "--phi", "2,2", "--lambda", "1", "--k", "1", "--epsilon", "1/2"});
    CHECK(sc.code == kExitInconclusive);
    CHECK(sc.first()["verdict"] == "hypotheses-not-met");
}

TEST_CASE("measure, orbit and witness records") {
    const Run m = run({"measure", "--set", "B1", "--n", "64", "--direction", "image"});
    REQUIRE(m.code == kExitVerified);
    const std::string hi = m.first()["enclosure"]["hi"];
    CHECK(parse_rational(hi) <= inv_pow(2, 7));

    const Run o = run({"orbit", "--indicator", "1,1,1,1", "--p", "2", "--steps", "16"});
    REQUIRE(o.code == kExitVerified);
    const json oj = o.first();
    REQUIRE(oj["values"].size() == 16);
    CHECK(oj["values"][15] == "1/128");
    for (const auto& v : oj["values"]) CHECK(v.get<std::string>().find('/') != std::string::npos);

    const Run w = run({"witness", "--epsilon", "1/4"});
    REQUIRE(w.code == kExitVerified);
    CHECK(w.first()["verdict"] == "verified");
}

TEST_CASE("records and tables can go to files") {
    const auto out = std::filesystem::temp_directory_path() / "odo_cli_records.jsonl";
    const auto csv = std::filesystem::temp_directory_path() / "odo_cli_orbit.csv";
    CHECK(run({"--out", out.string(), "--csv", csv.string(), "orbit", "--indicator", "0,1", "--steps", "4"}).code ==
          kExitVerified);
    std::ifstream f(out);
    std::string line;
    REQUIRE(std::getline(f, line));
    CHECK(json::parse(line)["values"].size() == 4);
    std::ifstream c(csv);
    int lines = 0;
    while (std::getline(c, line)) ++lines;
    CHECK(lines == 5);
}

TEST_CASE("configuration file and environment variable") {
    const auto cfg = temp_file("odo_cli.toml", "tol=\"1/1024\"\n");
    const Run a = run({"--config", cfg.string(), "measure", "--set", "B1", "--n", "3"});
    REQUIRE(a.code == kExitVerified);
    CHECK(a.first()["params"]["tolerance"] == "1/1024");
    // Flags win over the file.
    const Run b = run({"--config", cfg.string(), "--tol", "1/2048", "measure", "--set", "B1", "--n", "3"});
    CHECK(b.first()["params"]["tolerance"] == "1/2048");

    ::setenv("ODOMETER_CONFIG", cfg.string().c_str(), 1);
    const Run c = run({"measure", "--set", "B1", "--n", "3"});
    ::unsetenv("ODOMETER_CONFIG");
    CHECK(c.first()["params"]["tolerance"] == "1/1024");
}

TEST_CASE("system specs") {
    const auto table = temp_file("odo_cli_system.txt", "1/3 2/3\n1/2 1/2\ntail uniform:2\n");
    const Run r = run({"--system", "table:" + table.string(), "measure", "--set", "1", "--n", "1"});
    REQUIRE(r.code == kExitVerified);
    CHECK(r.first()["enclosure"]["lo"] == "1/3");
    CHECK(run({"--system", "bogus", "verify", "star"}).code == kExitUsage);
    CHECK(run({"--system", "table:/nonexistent/file", "verify", "star"}).code == kExitUsage);
}

TEST_CASE("output does not depend on the number of workers") {
    const Run one = run({"--jobs", "1", "verify", "dc1", "--samples", "50"});
    const Run eight = run({"--jobs", "8", "verify", "dc1", "--samples", "50"});
    CHECK(one.code == kExitVerified);
    CHECK(one.out == eight.out);
    const Run o1 = run({"--jobs", "1", "orbit", "--indicator", "1,0,1", "--steps", "40"});
    const Run o8 = run({"--jobs", "8", "orbit", "--indicator", "1,0,1", "--steps", "40"});
    CHECK(o1.out == o8.out);
}
