#include <array>
#include <cstdio>
#include <fstream>
#include <string>

#include "doctest.h"

namespace {

struct CmdResult {
    int exit_code = -1;
    std::string out;
};

CmdResult run_cmd(const std::string& args) {
    std::string cmd = std::string(ECS_CLI_PATH) + " " + args + " 2>/dev/null";
    std::array<char, 4096> buf;
    CmdResult result;
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    while (std::fgets(buf.data(), buf.size(), pipe)) {
        result.out += buf.data();
    }
    int status = pclose(pipe);
    result.exit_code = WEXITSTATUS(status);
    return result;
}

std::string corpus(const std::string& rel) {
    return std::string(ECS_CORPUS_DIR) + "/" + rel;
}

} // namespace

TEST_CASE("run builtin equilateral") {
    CmdResult r = run_cmd("run --builtin equilateral --samples 5 --seed 3 --format text");
    CHECK(r.exit_code == 0);
    CHECK(r.out.find("passed 5/5") != std::string::npos);
}

TEST_CASE("run corpus script with json traces") {
    CmdResult r = run_cmd("run " + corpus("good/bisector.ecs") + " --samples 2");
    CHECK(r.exit_code == 0);
    CHECK(r.out.find("\"root\"") != std::string::npos);
    CHECK(r.out.find("passed 2/2") != std::string::npos);
}

TEST_CASE("run is byte-identical across invocations") {
    std::string args = "run --builtin origin --samples 3 --seed 11";
    CmdResult a = run_cmd(args);
    CmdResult b = run_cmd(args);
    CHECK(a.exit_code == 0);
    CHECK(a.out == b.out);
    CHECK(a.out.find("passed 3/3") != std::string::npos);
}

TEST_CASE("run rejects malformed scripts with exit 2") {
    CmdResult r = run_cmd("run " + corpus("bad/use_before.ecs"));
    CHECK(r.exit_code == 2);
}

TEST_CASE("gen-y prints the published sample points") {
    CmdResult r = run_cmd("gen-y --alpha=-7 --alpha 0 --alpha 100");
    CHECK(r.exit_code == 0);
    CHECK(r.out.find("1.83944") != std::string::npos);
    CHECK(r.out.find("-1.06525") != std::string::npos);
    CHECK(r.out.find("0.93113") != std::string::npos);
    CHECK(r.out.find("0.96249") != std::string::npos);
    CHECK(r.out.find("1.033100") != std::string::npos);
    CHECK(r.out.find("-1.01587") != std::string::npos);
}

TEST_CASE("closure echoes the input at depth 0") {
    std::string seed_file = "/tmp/ecs_cli_seed.txt";
    {
        std::ofstream out(seed_file);
        out << "0 0\n1 0\n1 1\n0 1\n";
    }
    CmdResult r = run_cmd("closure --kind e --depth 0 --seed " + seed_file);
    CHECK(r.exit_code == 0);
    CHECK(r.out == "0 0\n1 0\n1 1\n0 1\n");

    CmdResult r1 = run_cmd("closure --kind e --depth 1 --seed " + seed_file);
    CHECK(r1.exit_code == 0);
    CHECK(r1.out.find("0.5 0.5") != std::string::npos);
}

TEST_CASE("adversary on the naive center script") {
    CmdResult r = run_cmd("adversary " + corpus("good/naive_center.ecs") +
                          " --forbidden center");
    CHECK(r.exit_code == 0);
    CHECK(r.out.find("avoided=true") != std::string::npos);
    CHECK(r.out.find("note:") != std::string::npos);
}

TEST_CASE("adversary rejects U-location builtins with exit 4") {
    CmdResult r = run_cmd("adversary --builtin center-via-u --forbidden center");
    CHECK(r.exit_code == 4);
}

TEST_CASE("adversary unit and origin modes") {
    CmdResult unit = run_cmd("adversary " + corpus("good/disc_walk.ecs") + " --forbidden unit");
    CHECK(unit.exit_code == 0);
    CHECK(unit.out.find("avoided=true") != std::string::npos);

    CmdResult origin = run_cmd("adversary " + corpus("good/disc_walk.ecs") +
                               " --forbidden origin");
    CHECK(origin.exit_code == 0);
}

TEST_CASE("proj-check battery") {
    CmdResult r = run_cmd("proj-check");
    CHECK(r.exit_code == 0);
    CHECK(r.out.find("all checks passed") != std::string::npos);
    CHECK(r.out.find("FAIL") == std::string::npos);
}

TEST_CASE("fmt round trip") {
    CmdResult once = run_cmd("fmt " + corpus("good/equilateral.ecs"));
    CHECK(once.exit_code == 0);
    // Formatting the formatter's output is a fixpoint.
    std::string tmp = "/tmp/ecs_cli_fmt.ecs";
    {
        std::ofstream out(tmp);
        out << once.out;
    }
    CmdResult twice = run_cmd("fmt " + tmp);
    CHECK(twice.exit_code == 0);
    CHECK(twice.out == once.out);

    CmdResult bad = run_cmd("fmt " + corpus("bad/line_same.ecs"));
    CHECK(bad.exit_code == 2);
}

TEST_CASE("apply-map with CLI map names") {
    std::string pts = "/tmp/ecs_cli_map_pts.txt";
    {
        std::ofstream out(pts);
        out << "2 1\n0 5\n1 0\n";
    }
    CmdResult r = run_cmd("apply-map --map strommer:1.5 --points " + pts);
    CHECK(r.exit_code == 0);
    CHECK(r.out == "0.5 0.5\nundefined\n1 0\n");

    CmdResult scaled = run_cmd("apply-map --map scale:2 --points " + pts);
    CHECK(scaled.exit_code == 0);
    CHECK(scaled.out.find("4 2") != std::string::npos);

    CmdResult transfer =
        run_cmd("apply-map --map \"transfer:1.5,0,1.118033988749895->0,0,1\" --points " + pts);
    CHECK(transfer.exit_code == 0);

    CmdResult bad = run_cmd("apply-map --map warp:3 --points " + pts);
    CHECK(bad.exit_code == 2);
}

TEST_CASE("tolerance override via environment") {
    // A huge eps_abs makes nearby points coincident, breaking rule 2.
    std::string cmd = std::string("ECS_TOLERANCE=10 ") + ECS_CLI_PATH + " run --builtin " +
                      "equilateral --samples 1 2>/dev/null";
    int status = std::system(cmd.c_str());
    CHECK(WEXITSTATUS(status) == 3);
}
