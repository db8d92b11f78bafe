// End-to-end checks of the qseries binary. The harness passes the binary
// path as the first argument; everything else goes to doctest.

#define DOCTEST_CONFIG_IMPLEMENT
#include <doctest.h>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <string>
#include <vector>

#include <json.hpp>

namespace {

std::string g_binary;

struct run_result {
    int exit_code = -1;
    std::string output; // stdout and stderr combined
};

run_result run_cli(const std::string& args) {
    run_result result;
    std::string cmd = "'" + g_binary + "' " + args + " 2>&1";
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    char buf[4096];
    while (std::size_t got = fread(buf, 1, sizeof buf, pipe))
        result.output.append(buf, got);
    int status = pclose(pipe);
    result.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return result;
}

std::vector<std::string> lines_of(const std::string& text) {
    std::vector<std::string> lines;
    std::size_t pos = 0;
    while (pos < text.size()) {
        std::size_t eol = text.find('\n', pos);
        if (eol == std::string::npos) eol = text.size();
        lines.push_back(text.substr(pos, eol - pos));
        pos = eol + 1;
    }
    return lines;
}

bool contains_line(const std::string& text, const std::string& line) {
    for (const auto& l : lines_of(text))
        if (l == line) return true;
    return false;
}

} // namespace

TEST_CASE("compute rd prints the counting table") {
    auto r = run_cli("compute rd --ell 4 --t 9 --nmax 10");
    CHECK(r.exit_code == 0);
    CHECK(contains_line(r.output, "6 9"));
    CHECK(lines_of(r.output).size() == 11);
}

TEST_CASE("compute rd with a modulus") {
    auto r = run_cli("compute rd --ell 4 --t 9 --nmax 6 --mod 4");
    CHECK(r.exit_code == 0);
    CHECK(contains_line(r.output, "6 1")); // 9 mod 4
}

TEST_CASE("verify identity eq3 at an explicit depth") {
    auto r = run_cli("verify identity eq3 --depth 400");
    CHECK(r.exit_code == 0);
    CHECK(contains_line(r.output, "eq3 pass (400 terms)"));
}

TEST_CASE("verify theorem 3.1 emits six passing results as JSON") {
    auto r = run_cli("verify theorem 3.1 --prime 7 --alpha 0 --nmax 30 --json");
    CHECK(r.exit_code == 0);
    auto doc = nlohmann::json::parse(r.output);
    CHECK(doc["version"] == "1");
    REQUIRE(doc["results"].size() == 6);
    for (const auto& item : doc["results"]) {
        CHECK(item["status"] == "pass");
        CHECK(item["n_checked"] == 30);
    }
}

TEST_CASE("starved precision exits with the usage/precision code") {
    auto r = run_cli("verify identity eq34 --depth 100");
    CHECK(r.exit_code == 2);
    CHECK(r.output.find("insufficient-precision") != std::string::npos);
}

TEST_CASE("a corrupted catalog entry fails with exit code 1") {
    std::string path = "/tmp/qseries_corrupt_catalog.txt";
    {
        std::ofstream f(path);
        f << "# deliberately wrong sign\n";
        f << "id:bad3 f3^3/f1 == f4^3*f6^2/(f2^2*f12) - q*f12^3/f4\n";
    }
    auto r = run_cli("verify identity all --catalog " + path);
    CHECK(r.exit_code == 1);
    CHECK(r.output.find("bad3 fail") != std::string::npos);
    std::remove(path.c_str());
}

TEST_CASE("JSON output is byte-identical regardless of --jobs") {
    auto r1 = run_cli("verify theorem lemma1.1 --nmax 100 --json --jobs 1");
    auto r4 = run_cli("verify theorem lemma1.1 --nmax 100 --json --jobs 4");
    CHECK(r1.exit_code == 0);
    CHECK(r4.exit_code == 0);
    CHECK(r1.output == r4.output);
}

TEST_CASE("enumerate lists the nine partitions of 6") {
    auto r = run_cli("enumerate --ell 4 --t 9 --n 6");
    CHECK(r.exit_code == 0);
    auto lines = lines_of(r.output);
    REQUIRE(lines.size() == 9);
    CHECK(lines.front() == "(6)");
    CHECK(lines.back() == "(1^6)");
}

TEST_CASE("catalog list shows every entry") {
    auto r = run_cli("catalog list");
    CHECK(r.exit_code == 0);
    CHECK(lines_of(r.output).size() >= 25);
    CHECK(r.output.find("eq8") != std::string::npos);
}

TEST_CASE("scan reports the base congruence") {
    auto r = run_cli("scan --ell 4 --t 9 --amax 8 --mod 3 --nmax 200");
    CHECK(r.exit_code == 0);
    CHECK(contains_line(r.output, "RD(4,9)(4n+3) == 0 mod 3"));
}

TEST_CASE("verify aux runs the vanishing and self-similarity checks") {
    auto r = run_cli("verify aux --source a --prime 7 --nmax 40");
    CHECK(r.exit_code == 0);
    CHECK(contains_line(r.output, "a-vanishing(p=7) pass (40 terms)"));
    CHECK(contains_line(r.output, "a-selfsim(p=7,alpha=1) pass (40 terms)"));
}

TEST_CASE("usage errors exit with code 2") {
    CHECK(run_cli("bogus").exit_code == 2);
    CHECK(run_cli("verify identity eq3 --no-such-flag").exit_code == 2);
    CHECK(run_cli("verify identity no_such_entry").exit_code == 2);
    CHECK(run_cli("verify theorem 3.1 --prime 5 --nmax 5").exit_code == 2);
}

TEST_CASE("help is reachable and exits cleanly") {
    auto r = run_cli("--help");
    CHECK(r.exit_code == 0);
    CHECK(r.output.find("verify") != std::string::npos);
    CHECK(run_cli("verify --help").exit_code == 0);
}

int main(int argc, char** argv) {
    if (argc < 2) {
        std::fprintf(stderr, "usage: cli_tests <path-to-qseries> [doctest args]\n");
        return 1;
    }
    g_binary = argv[1];
    doctest::Context context;
    context.applyCommandLine(argc - 1, argv + 1);
    return context.run();
}
