#include <catch_amalgamated.hpp>

#include <nlohmann/json.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <sys/wait.h>
#include <string>
#include <vector>

#include "commands.hpp"

namespace fs = std::filesystem;
using namespace dqwall;

namespace {

struct Outcome {
    int code;
    std::string out, err;
};

Outcome run_cli(std::vector<std::string> args) {
    args.insert(args.begin(), "dqwall_cli");
    std::vector<const char*> argv;
    for (const auto& a : args) argv.push_back(a.c_str());
    std::ostringstream out, err;
    int code = cli::main_entry(static_cast<int>(argv.size()), argv.data(), out, err);
    return {code, out.str(), err.str()};
}

fs::path scratch(const std::string& name) {
    fs::path p = fs::temp_directory_path() / ("dqwall-test-" + name);
    fs::remove_all(p);
    return p;
}

std::string slurp(const fs::path& p) {
    std::ifstream is(p, std::ios::binary);
    std::stringstream ss;
    ss << is.rdbuf();
    return ss.str();
}

const std::string kSmall = "64,64,-8,2,-10,10";

}  // namespace

TEST_CASE("argument parsing helpers", "[cli]") {
    auto g = cli::parse_grid("64,32,-4,1,-5,5");
    CHECK(g.n_x() == 64);
    CHECK(g.n_p() == 32);
    CHECK(g.p_min() == -5.0);
    CHECK(g.p_max() == 5.0);
    CHECK(g.x(g.wall_index()) == 0.0);
    CHECK_THROWS_AS(cli::parse_grid("64,32,-4,1,-5"), cli::UsageError);
    CHECK_THROWS_AS(cli::parse_grid("8,32,-4,1,-5,5"), cli::UsageError);
    CHECK_THROWS_AS(cli::parse_grid("64.5,32,-4,1,-5,5"), cli::UsageError);
    CHECK_THROWS_AS(cli::parse_grid("64,32,1,-4,-5,5"), cli::UsageError);

    CHECK(cli::parse_list("1,2.5,4") == std::vector<double>{1.0, 2.5, 4.0});
    CHECK_THROWS_AS(cli::parse_list("1,x"), cli::UsageError);
    CHECK_THROWS_AS(cli::parse_list("1,2abc"), cli::UsageError);

    CHECK(cli::parse_epsilon_rule("fixed") == Extrapolation::fixed);
    CHECK(cli::parse_epsilon_rule("richardson") == Extrapolation::richardson2);
    CHECK(cli::parse_epsilon_rule("richardson3") == Extrapolation::richardson3);
    CHECK_THROWS_AS(cli::parse_epsilon_rule("spline"), cli::UsageError);
}

TEST_CASE("usage errors exit with status 2", "[cli]") {
    const auto out = scratch("usage").string();
    CHECK(run_cli({}).code == cli::kExitUsage);
    CHECK(run_cli({"nonsense"}).code == cli::kExitUsage);
    CHECK(run_cli({"wigner", "--E", "0", "--out", out}).code == cli::kExitUsage);
    CHECK(run_cli({"wigner", "--E", "-2", "--out", out}).code == cli::kExitUsage);
    CHECK(run_cli({"wigner", "--grid", "1,2,3", "--out", out}).code == cli::kExitUsage);
    CHECK(run_cli({"wigner", "--format", "xml", "--out", out}).code == cli::kExitUsage);
    CHECK(run_cli({"wall-limit", "--out", out}).code == cli::kExitUsage);
    CHECK(run_cli({"wall-limit", "--alphas", "1,2", "--out", out}).code == cli::kExitUsage);
    CHECK(run_cli({"wall-limit", "--alphas", "1,4,2", "--out", out}).code == cli::kExitUsage);
    CHECK(run_cli({"residual-dp", "--epsilon-rule", "spline", "--out", out}).code == cli::kExitUsage);
    auto r = run_cli({"nonsense"});
    CHECK(r.err.find("usage error") != std::string::npos);
}

TEST_CASE("naive residual reports the confirmed failure", "[cli]") {
    auto r = run_cli({"residual-naive", "--out", scratch("naive").string()});
    CHECK(r.code == cli::kExitPass);
    CHECK(r.out.find("confirmed failure") != std::string::npos);
    CHECK(r.out.find("FAIL") == std::string::npos);
}

TEST_CASE("output is deterministic", "[cli]") {
    const auto a = scratch("det-a"), b = scratch("det-b");
    auto ra = run_cli({"wigner", "--grid", kSmall, "--out", a.string()});
    auto rb = run_cli({"wigner", "--grid", kSmall, "--out", b.string()});
    CHECK(ra.code == rb.code);
    CHECK(ra.out == rb.out);
    std::size_t files = 0;
    for (const auto& entry : fs::directory_iterator(a)) {
        ++files;
        const auto other = b / entry.path().filename();
        REQUIRE(fs::exists(other));
        CHECK(slurp(entry.path()) == slurp(other));
    }
    CHECK(files >= 2);
}

TEST_CASE("json reports parse", "[cli]") {
    const auto dir = scratch("json");
    auto r = run_cli({"residual-naive", "--grid", kSmall, "--format", "json", "--out", dir.string()});
    CHECK(r.code != cli::kExitUsage);
    const auto report = dir / "residual-naive-report.json";
    REQUIRE(fs::exists(report));
    auto j = nlohmann::json::parse(slurp(report));
    REQUIRE(j.is_array());
    REQUIRE_FALSE(j.empty());
    for (const auto& r : j) {
        CHECK(r.contains("label"));
        CHECK(r.contains("max_abs"));
        CHECK(r.contains("pass"));
    }
}

TEST_CASE("equivalence study passes at E = 1", "[cli][slow]") {
    auto r = run_cli({"equivalence", "--E", "1", "--out", scratch("equiv").string()});
    INFO(r.out);
    CHECK(r.code == cli::kExitPass);
}

TEST_CASE("wall-limit table", "[cli]") {
    const auto dir = scratch("wall");
    auto r = run_cli({"wall-limit", "--E", "1", "--alphas", "1,2,4,8", "--grid", "71,49,-6,1,-6,6",
                      "--out", dir.string()});
    CHECK(r.code != cli::kExitUsage);
    std::ifstream is(dir / "wall-limit.csv");
    std::string header;
    std::getline(is, header);
    CHECK(header == "alpha,sup_distance,phase_shift");
    std::vector<double> d;
    std::string line;
    while (std::getline(is, line)) {
        auto v = cli::parse_list(line);
        REQUIRE(v.size() == 3);
        d.push_back(v[1]);
    }
    REQUIRE(d.size() == 4);
    bool decreasing = true;
    for (std::size_t n = 1; n < d.size(); ++n) decreasing &= d[n] < d[n - 1];
    // the exit status follows the monotonicity verdict
    CHECK((r.code == cli::kExitPass) == decreasing);
    for (const char* a : {"1", "2", "4", "8"}) {
        bool found = false;
        for (const auto& entry : fs::directory_iterator(dir))
            found |= entry.path().filename().string().rfind(std::string("f-alpha-") + a, 0) == 0;
        CHECK(found);
    }
}

TEST_CASE("installed executable", "[cli]") {
    const auto dir = scratch("exe");
    const std::string exe = DQWALL_CLI_PATH;
    auto status = [](const std::string& cmd) {
        int s = std::system((cmd + " > /dev/null 2>&1").c_str());
        return WIFEXITED(s) ? WEXITSTATUS(s) : -1;
    };
    CHECK(status(exe + " residual-naive --grid " + kSmall + " --out " + dir.string()) == 0);
    CHECK(status(exe + " bogus") == 2);
    CHECK(status(exe + " --help") == 0);
}
