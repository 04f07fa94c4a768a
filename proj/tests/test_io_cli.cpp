#include "dosc/spectrum.hpp"
#include "dosc/table_io.hpp"

#include <doctest.h>
#include <json.hpp>

#include <cstdio>
#include <cstring>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <unistd.h>
#include <string>

using namespace dosc;

namespace {

struct CliResult {
    int exit_code = -1;
    std::string output;
};

// Runs the CLI binary named by DOSC_CLI (set by ctest); empty path if absent.
std::string cli_path() {
    const char* p = std::getenv("DOSC_CLI");
    return p ? p : "";
}

CliResult run_cli(const std::string& args) {
    CliResult res;
    const std::string path = "/tmp/dosc_cli_out_" + std::to_string(::getpid()) + ".txt";
    const std::string cmd = cli_path() + " " + args + " > " + path + " 2>/dev/null";
    const int status = std::system(cmd.c_str());
    res.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    std::ifstream f(path, std::ios::binary);
    std::ostringstream buf;
    buf << f.rdbuf();
    res.output = buf.str();
    std::remove(path.c_str());
    return res;
}

#define REQUIRE_CLI()                                                \
    if (cli_path().empty()) {                                        \
        MESSAGE("DOSC_CLI not set; skipping CLI integration check"); \
        return;                                                      \
    }

} // namespace

TEST_CASE("fmt_g17 round-trips doubles bit-exactly") {
    for (const double v : {0.1, 1.0 / 3.0, 2.6457513110645907, -1e-300, 1e300, 0.0, -0.0,
                           123456789.123456789}) {
        const std::string s = io::fmt_g17(v);
        const double back = std::strtod(s.c_str(), nullptr);
        CHECK(std::memcmp(&back, &v, sizeof v) == 0);
    }
    CHECK_THROWS_AS((void)io::fmt_g17(std::numeric_limits<double>::quiet_NaN()),
                    std::invalid_argument);
    CHECK_THROWS_AS((void)io::fmt_g17(std::numeric_limits<double>::infinity()),
                    std::invalid_argument);
}

TEST_CASE("csv escaping follows RFC-4180 quoting") {
    CHECK(io::csv_escape("plain") == "plain");
    CHECK(io::csv_escape("a,b") == "\"a,b\"");
    CHECK(io::csv_escape("say \"hi\"") == "\"say \"\"hi\"\"\"");
    CHECK(io::csv_escape("line\nbreak") == "\"line\nbreak\"");
}

TEST_CASE("JsonValue emits deterministic insertion-ordered documents") {
    io::JsonValue root = io::JsonValue::object();
    root.set("b_first", io::JsonValue::num(0.5));
    root.set("a_second", io::JsonValue::str("x\"y"));
    io::JsonValue arr = io::JsonValue::array();
    arr.push(io::JsonValue::integer(3)).push(io::JsonValue::boolean(false));
    root.set("list", std::move(arr));
    const std::string a = root.dump();
    CHECK(a == root.dump());
    CHECK(a.find("b_first") < a.find("a_second"));

    const auto parsed = nlohmann::json::parse(a);
    CHECK(parsed["b_first"].get<double>() == 0.5);
    CHECK(parsed["a_second"].get<std::string>() == "x\"y");
    CHECK(parsed["list"][0].get<int>() == 3);
}

TEST_CASE("JSON numbers re-parse bit-exactly through the emitter") {
    const auto sol = solve_spectrum({1, 0.01, 1, 0.1, 1, 1, 2}, SymmetryLimit::Spin);
    io::JsonValue arr = io::JsonValue::array();
    for (const auto& ra : sol.assessment) arr.push(io::JsonValue::num(ra.root.real()));
    const auto parsed = nlohmann::json::parse(arr.dump());
    for (int i = 0; i < 4; ++i) {
        const double want = sol.assessment[static_cast<std::size_t>(i)].root.real();
        const double got = parsed[i].get<double>();
        CHECK(std::memcmp(&want, &got, sizeof want) == 0);
    }
}

TEST_CASE("cli: flat spectrum JSON carries the sqrt(7) accepted root") {
    REQUIRE_CLI();
    const auto res = run_cli(
        "spectrum --alpha 1 --w 1 --lambda 1 --l 1 --n 0 --mu 0 --A 0 --limit spin");
    REQUIRE(res.exit_code == 0);
    const auto doc = nlohmann::json::parse(res.output);
    const double eps = doc["solution"]["accepted"][0]["eps"].get<double>();
    CHECK(std::abs(eps - std::sqrt(7.0)) < 1e-10);
}

TEST_CASE("cli: validation failures exit 2") {
    REQUIRE_CLI();
    CHECK(run_cli("spectrum --limit sideways").exit_code == 2);
    CHECK(run_cli("coherent --xi 1.5 0 --alpha 1 --w 1 --l 1 --lambda 1").exit_code == 2);
    CHECK(run_cli("wavefunction --alpha 1 --w 1 --l 1 --lambda 1 --r-max=-3").exit_code == 2);
    CHECK(run_cli("definitely-not-a-command").exit_code == 2);
}

TEST_CASE("cli: numerical failure exits 1 with a machine-readable error record") {
    REQUIRE_CLI();
    // A = -1.5 with lambda = 1, l = 0 drives the index radicand to
    // 1 + 4 A(2 lambda + A + 1) = -8 < 0: no bound-state representation.
    const auto res =
        run_cli("spectrum --alpha 1 --w 1 --lambda 1 --l 0 --A=-1.5 --n 0 --limit spin");
    CHECK(res.exit_code == 1);
    const auto doc = nlohmann::json::parse(res.output);
    CHECK(doc.contains("error"));
}

TEST_CASE("cli: coherent xi = 0 profile equals the n = 0 wavefunction profile") {
    REQUIRE_CLI();
    const std::string params = "--alpha 1 --mu 0 --w 1 --A 0 --lambda 1 --l 1 --n 0 "
                               "--limit spin --r-max 5 --points 40 --format json";
    const auto wf = run_cli("wavefunction " + params);
    const auto coh = run_cli("coherent --xi 0 0 " + params);
    REQUIRE(wf.exit_code == 0);
    REQUIRE(coh.exit_code == 0);
    const auto jw = nlohmann::json::parse(wf.output);
    const auto jc = nlohmann::json::parse(coh.output);
    for (std::size_t i = 0; i < jw["rows"].size(); ++i) {
        const double r1w = jw["rows"][i]["R1"].get<double>();
        const double r1c = jc["rows"][i]["R1_re"].get<double>();
        CHECK(r1c == doctest::Approx(r1w).epsilon(1e-8));  // same normalization convention
        CHECK(jc["rows"][i]["R1_im"].get<double>() == 0.0);
    }
}

TEST_CASE("cli: empty sweep range produces a header-only table") {
    REQUIRE_CLI();
    const auto res = run_cli("sweep --alpha 1:2:0 --w 1 --limit spin --format csv");
    REQUIRE(res.exit_code == 0);
    int data_lines = 0, header_lines = 0, comment_lines = 0;
    std::istringstream is(res.output);
    std::string line;
    while (std::getline(is, line)) {
        if (line.rfind("#", 0) == 0) ++comment_lines;
        else if (line.rfind("alpha,", 0) == 0) ++header_lines;
        else if (!line.empty()) ++data_lines;
    }
    CHECK(comment_lines >= 1);
    CHECK(header_lines == 1);
    CHECK(data_lines == 0);
}

TEST_CASE("cli: flat sweep rows all pass the residual filter") {
    REQUIRE_CLI();
    const auto res = run_cli("sweep --alpha 0.1,1 --w 0.5,1 --lambda 0:2 --l 0:2 --n 0:2 "
                             "--mu 0 --A 0 --limit spin --format json");
    REQUIRE(res.exit_code == 0);
    const auto doc = nlohmann::json::parse(res.output);
    REQUIRE(doc["rows"].size() == 2 * 2 * 3 * 3 * 3);
    for (const auto& row : doc["rows"]) {
        CHECK(row["status"].get<std::string>() == "ok");
        CHECK(row["accepted"].size() >= 1);
    }
}

TEST_CASE("cli: sweep across mu = 0 stays continuous") {
    REQUIRE_CLI();
    const auto res = run_cli("sweep --mu=-1e-8:1e-8:5 --alpha 1 --w 1 --lambda 1 --l 1 "
                             "--n 1 --A 0.1 --limit spin --format json");
    REQUIRE(res.exit_code == 0);
    const auto doc = nlohmann::json::parse(res.output);
    REQUIRE(doc["rows"].size() == 5);
    double prev = 0.0;
    for (std::size_t i = 0; i < doc["rows"].size(); ++i) {
        const double eps = doc["rows"][i]["accepted"][0]["eps"].get<double>();
        if (i > 0) CHECK(std::abs(eps - prev) < 1e-6);
        prev = eps;
    }
}

TEST_CASE("cli: identical configs give byte-identical outputs") {
    REQUIRE_CLI();
    const std::string sweep_args =
        "sweep --alpha 0.5,1 --w 1:2:3 --lambda 1 --l 1 --n 0:3 --mu 0.01 --A 0.1 "
        "--limit pseudospin --format csv";
    const auto a = run_cli(sweep_args);
    const auto b = run_cli(sweep_args);
    CHECK(a.exit_code == 0);
    CHECK(a.output == b.output);

    const std::string check_args = "check --suite flat_regression,normalization";
    const auto c = run_cli(check_args);
    const auto d = run_cli(check_args);
    CHECK(c.exit_code == 0);
    CHECK(c.output == d.output);
}

TEST_CASE("cli: check suite honors tolerance overrides") {
    REQUIRE_CLI();
    // an absurdly tight bound must flip the suite to FAIL and exit 1
    const auto res = run_cli("check --suite flat_regression --tol flat_regression=1e-30");
    CHECK(res.exit_code == 1);
    CHECK(res.output.find("[FAIL]") != std::string::npos);
}
