#include <doctest.h>

#include <json.hpp>

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "amalg/cli.hpp"

using namespace amalg;
using nlohmann::json;

namespace {

struct Run {
    int code = 0;
    std::string out;
    std::string err;
};

Run run(const std::vector<std::string>& args) {
    std::ostringstream out, err;
    Run r;
    r.code = run_cli(args, out, err);
    r.out = out.str();
    r.err = err.str();
    return r;
}

std::filesystem::path temp_file(const std::string& name) {
    const auto dir = std::filesystem::temp_directory_path() / "amalg_cli_test";
    std::filesystem::create_directories(dir);
    return dir / name;
}

}  // namespace

TEST_CASE("usage errors exit with 2") {
    CHECK(run({}).code == kExitUsage);
    CHECK(run({"nonsense"}).code == kExitUsage);
    CHECK(run({"field", "--basis", "torus"}).code == kExitUsage);
    CHECK(run({"field", "--x0", "abc"}).code == kExitUsage);
    CHECK(run({"field", "--n", "0"}).code == kExitUsage);
    CHECK(run({"props"}).code == kExitUsage);
    CHECK(run({"props", "--which", "9"}).code == kExitUsage);
    CHECK(run({"scan", "--x", "1", "--n-list", "10,5"}).code == kExitUsage);
    CHECK(run({"independence", "--point", "1", "--samples", "10"}).code == kExitUsage);
    CHECK(run({"graph", "--kind", "er", "--p", "2"}).code == kExitUsage);
    CHECK(run({"--verify", "/nonexistent/file.json"}).code == kExitUsage);
    const Run help = run({"--help"});
    CHECK(help.code == kExitOk);
    CHECK(help.out.find("certify") != std::string::npos);
}

TEST_CASE("field writes CSV under a manifest line") {
    const Run r = run({"field", "--basis", "circle", "--n", "10", "--x0", "0", "--grid-points", "8"});
    REQUIRE(r.code == kExitOk);
    REQUIRE(r.out.rfind("# ", 0) == 0);
    const auto eol = r.out.find('\n');
    const json manifest = json::parse(r.out.substr(2, eol - 2));
    CHECK(manifest["command"] == "field");
    CHECK(manifest["flags"]["basis"] == "circle");
    CHECK(manifest["flags"]["mode"] == "l2");
    CHECK(manifest["output_digest"].get<std::string>().size() == 64);
    CHECK_FALSE(manifest.contains("timestamp"));
    const std::string body = r.out.substr(eol + 1);
    CHECK(std::count(body.begin(), body.end(), '\n') == 9);  // header + 8 rows
}

TEST_CASE("props verdicts") {
    const Run four = run({"props", "--which", "4", "--n", "30"});
    REQUIRE(four.code == kExitOk);
    const json j = json::parse(four.out);
    CHECK(j["result"]["value"].get<double>() == doctest::Approx(-10.0).epsilon(0.2));
    CHECK(j["result"]["pass"] == true);

    const Run one = run({"props", "--which", "1", "--basis", "square", "--n", "20", "--x", "1.3,0.7"});
    REQUIRE(one.code == kExitOk);
    CHECK(json::parse(one.out)["result"]["pass"] == true);
}

TEST_CASE("certify on the interval") {
    const Run r = run({"certify", "--basis", "interval", "--n", "100"});
    REQUIRE(r.code == kExitOk);
    const json c = json::parse(r.out)["result"];
    CHECK(c["pass"] == true);
    CHECK(c["kappa"].get<double>() >= 1.0);
    const Run degenerate = run({"certify", "--n", "10", "--z", "0"});
    CHECK(degenerate.code == kExitContract);
}

TEST_CASE("graph rows") {
    const Run r = run({"graph", "--kind", "tutte", "--vertex", "3"});
    REQUIRE(r.code == kExitOk);
    const json manifest = json::parse(r.out.substr(2, r.out.find('\n') - 2));
    CHECK(manifest["summary"]["graph"]["vertices"] == 46);
    CHECK(manifest["summary"]["residual"].get<double>() < 1e-8);

    const auto path = temp_file("edges.txt");
    std::ofstream(path) << "# triangle\n0 1\n1 2\n0 2\n";
    const Run f = run({"graph", "--kind", "file", "--input", path.string(), "--count", "2"});
    CHECK(f.code == kExitOk);
}

TEST_CASE("output is deterministic and verifiable") {
    const std::vector<std::string> args = {"independence", "--basis", "circle", "--n", "50", "--point", "2.0943951",
                                           "--point", "0", "--samples", "10000", "--seed", "3"};
    const Run a = run(args), b = run(args);
    REQUIRE(a.code == kExitOk);
    CHECK(a.out == b.out);

    for (const auto& cmd : std::vector<std::vector<std::string>>{
             {"zonal", "--k-list", "10,20,40"},
             {"field", "--basis", "circle-random", "--seed", "4", "--n", "12", "--grid-points", "5"},
             {"correlation", "--basis", "sphere", "--n", "40", "--x0", "0"}}) {
        const auto path = temp_file(cmd[0] + ".out");
        std::vector<std::string> with_out = cmd;
        with_out.insert(with_out.end(), {"--out", path.string(), "--timestamp"});
        REQUIRE(run(with_out).code == kExitOk);
        const Run v = run({"--verify", path.string()});
        CHECK_MESSAGE(v.code == kExitOk, cmd[0]);
        CHECK(json::parse(v.out)["match"] == true);
    }

    // tampering with the payload is detected
    const auto path = temp_file("scan.json");
    REQUIRE(run({"scan", "--basis", "circle", "--x", "2.0943951", "--n-list", "10,20", "--out", path.string()}).code ==
            kExitOk);
    std::ifstream in(path);
    json doc = json::parse(in);
    in.close();
    doc["manifest"]["output_digest"] = std::string(64, '0');
    std::ofstream(path) << doc.dump();
    CHECK(run({"--verify", path.string()}).code == kExitContract);
}
