#include <catch2/catch_amalgamated.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

namespace fs = std::filesystem;

namespace {

int run(const std::string& args) {
    std::string cmd = std::string(DQLAB_CLI_PATH) + " " + args + " >/dev/null 2>&1";
    int rc = std::system(cmd.c_str());
    return WIFEXITED(rc) ? WEXITSTATUS(rc) : -1;
}

std::string slurp(const fs::path& p) {
    std::ifstream is(p);
    std::stringstream ss;
    ss << is.rdbuf();
    return ss.str();
}

}  // namespace

TEST_CASE("missing config file is a config error (exit 2)") {
    CHECK(run("--config /nonexistent.json norms") == 2);
}

TEST_CASE("bad schema version is a config error (exit 2)") {
    fs::path dir = fs::temp_directory_path() / "dqlab_cli_bad";
    fs::create_directories(dir);
    std::ofstream(dir / "bad.json") << "{\"schema_version\": 99}\n";
    CHECK(run("--config " + (dir / "bad.json").string() + " norms") == 2);
    std::ofstream(dir / "garbage.json") << "not json\n";
    CHECK(run("--config " + (dir / "garbage.json").string() + " norms") == 2);
}

TEST_CASE("unknown subcommand is rejected") {
    CHECK(run("frobnicate") != 0);
}

TEST_CASE("norms run is deterministic: identical bytes across reruns") {
    fs::path a = fs::temp_directory_path() / "dqlab_cli_a";
    fs::path b = fs::temp_directory_path() / "dqlab_cli_b";
    fs::remove_all(a);
    fs::remove_all(b);
    REQUIRE(run("--seed 42 --out-dir " + a.string() + " norms") == 0);
    REQUIRE(run("--seed 42 --out-dir " + b.string() + " norms") == 0);
    for (const char* f : {"norms.csv", "norms.json"}) {
        INFO(f);
        CHECK(slurp(a / f) == slurp(b / f));
        CHECK(!slurp(a / f).empty());
    }
}

TEST_CASE("wavelet artifacts exist and report aggregates them") {
    fs::path dir = fs::temp_directory_path() / "dqlab_cli_w";
    fs::remove_all(dir);
    REQUIRE(run("--out-dir " + dir.string() + " wavelet") == 0);
    CHECK(fs::exists(dir / "wavelet.json"));
    CHECK(fs::exists(dir / "haar_hat.csv"));
    std::string head = slurp(dir / "haar_hat.csv").substr(0, 12);
    CHECK(head == "e,j,k,value\n");
    REQUIRE(run("--out-dir " + dir.string() + " report") == 0);
    CHECK(fs::exists(dir / "report.json"));
    CHECK(slurp(dir / "report.json").find("\"all_pass\": true") != std::string::npos);
}
