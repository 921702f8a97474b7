#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>
#include <sys/wait.h>

namespace {

struct RunResult {
    int exit_code;
    std::string out;
};

RunResult run(const std::string& args) {
    std::string outfile = "cli_out.tmp";
    std::string cmd = std::string(CLI_PATH) + " " + args + " > " + outfile +
                      " 2> cli_err.tmp";
    int rc = std::system(cmd.c_str());
    RunResult r;
    r.exit_code = WIFEXITED(rc) ? WEXITSTATUS(rc) : -1;
    std::ifstream in(outfile);
    std::ostringstream os;
    os << in.rdbuf();
    r.out = os.str();
    return r;
}

std::string prob(const std::string& name) {
    return std::string(PROBLEMS_DIR) + "/" + name;
}

} // namespace

TEST_CASE("segre subcommand on a bundled problem") {
    auto r = run("segre " + prob("x2xy-p3.json"));
    CHECK(r.exit_code == 0);
    CHECK(r.out.find("H - 4H^3") != std::string::npos);
}

TEST_CASE("zeta subcommand prints both parts and passes properties") {
    auto r = run("zeta " + prob("x2xy-p3.json"));
    CHECK(r.exit_code == 0);
    CHECK(r.out.find("P = H + 4H^2") != std::string::npos);
    CHECK(r.out.find("Q = 1 + 4H + 4H^2") != std::string::npos);
    CHECK(r.out.find("[FAIL]") == std::string::npos);
}

TEST_CASE("verify-cone match gives exit 0") {
    auto r = run("verify-cone " + prob("x2xy-p3.json") + " --target 4");
    CHECK(r.exit_code == 0);
    CHECK(r.out.find("verdict: match") != std::string::npos);
}

TEST_CASE("verify-cone on a product with a two part target") {
    auto r = run("verify-cone " + prob("nonci-p2p2.json") + " --target 3,2");
    CHECK(r.exit_code == 0);
    CHECK(r.out.find("verdict: match") != std::string::npos);
}

TEST_CASE("properties subcommand") {
    auto r = run("properties " + prob("nonci-p2p2.json"));
    CHECK(r.exit_code == 0);
    CHECK(r.out.find("[FAIL]") == std::string::npos);
    CHECK(r.out.find("[pass]") != std::string::npos);
}

TEST_CASE("restrict subcommand keeps the zeta function") {
    auto r = run("restrict " + prob("x2xy-p3.json") + " --factor 0");
    CHECK(r.exit_code == 0);
    CHECK(r.out.find("verdict: match") != std::string::npos);
}

TEST_CASE("json output is byte identical across runs") {
    std::string args = "segre " + prob("x2xy-p3.json") +
                       " --json --seed 17 --prime 2147483647";
    auto a = run(args);
    auto b = run(args);
    CHECK(a.exit_code == 0);
    CHECK(a.out == b.out);
    CHECK(!a.out.empty());
}

TEST_CASE("missing file is an input error") {
    auto r = run("segre no-such-file.json");
    CHECK(r.exit_code == 2);
}

TEST_CASE("malformed problem file is an input error") {
    std::string path = "bad_problem.tmp.json";
    std::ofstream(path) << "{ not json";
    auto r = run("segre " + path);
    CHECK(r.exit_code == 2);
    std::remove(path.c_str());
}

TEST_CASE("bad target shape is an input error") {
    auto r = run("verify-cone " + prob("x2xy-p3.json") + " --target 4,4");
    CHECK(r.exit_code == 2);
}

TEST_CASE("rank gate violation is an input error") {
    // Three generators in P^2 break g < e.
    std::string path = "gate_problem.tmp.json";
    std::ofstream(path)
        << R"({"factors":[2],"variables":[["x0","x1","x2"]],)"
        << R"("generators":["x0*x1","x0*x2","x1*x2"],)"
        << R"("degrees":[[2],[2],[2]]})";
    auto r = run("zeta " + path);
    CHECK(r.exit_code == 2);
    std::remove(path.c_str());
}

TEST_CASE("genericity exhaustion maps to exit 3") {
    // The working prime divides the only generator; retries cannot help.
    std::string path = "killed_problem.tmp.json";
    std::ofstream(path)
        << R"({"factors":[2],"variables":[["x0","x1","x2"]],)"
        << R"("generators":["3*x0"],"degrees":[[1]]})";
    auto r = run("segre " + path + " --prime 3 --retries 0");
    CHECK(r.exit_code == 3);
    std::remove(path.c_str());
}

TEST_CASE("selftest --quick passes") {
    auto r = run("selftest --quick");
    CHECK(r.exit_code == 0);
    CHECK(r.out.find("[FAIL]") == std::string::npos);
}
