#include <filesystem>
#include <fstream>
#include <sstream>

#include "doctest.h"
#include "ecs/builtins.hpp"
#include "ecs/dsl.hpp"
#include "ecs/trace_io.hpp"

using namespace ecs;
namespace fs = std::filesystem;

namespace {

std::string slurp(const fs::path& path) {
    std::ifstream in(path);
    REQUIRE(in.good());
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

// First seed (under a bound) for which the program executes to a leaf.
std::optional<Trace> first_good_trace(const ConstructionProgram& p, std::uint64_t base) {
    for (std::uint64_t seed = base; seed < base + 64; ++seed) {
        SamplerChooser chooser(seed);
        try {
            return execute(p, chooser);
        } catch (const Error&) {
            continue;
        }
    }
    return std::nullopt;
}

} // namespace

TEST_CASE("good corpus round-trips") {
    fs::path dir = fs::path(ECS_CORPUS_DIR) / "good";
    int count = 0;
    for (const auto& entry : fs::directory_iterator(dir)) {
        if (entry.path().extension() != ".ecs") continue;
        ++count;
        INFO("script: " << entry.path().filename().string());
        std::string text = slurp(entry.path());
        ParsedScript first = parse_script(text);
        std::string formatted = format_program(first.program);
        ParsedScript second = parse_script(formatted);
        // Stable under a second round.
        CHECK(format_program(second.program) == formatted);

        // Same behaviour: identical traces (and replayed chooser decisions)
        // under the same sampler seed.
        auto t1 = first_good_trace(first.program, 7);
        auto t2 = first_good_trace(second.program, 7);
        REQUIRE(t1.has_value());
        REQUIRE(t2.has_value());
        CHECK(trace_to_json(*t1) == trace_to_json(*t2));
        CHECK(check_constructs(*t1, first.target) == check_constructs(*t2, second.target));
    }
    CHECK(count >= 15);
}

TEST_CASE("good corpus targets pass where declared") {
    fs::path dir = fs::path(ECS_CORPUS_DIR) / "good";
    for (const char* name : {"equilateral.ecs", "bisector.ecs", "center_chords.ecs",
                             "square_diagonals.ecs", "two_circles.ecs", "unit_length.ecs",
                             "macro_origin.ecs", "macro_unit.ecs", "macro_center.ecs"}) {
        INFO("script: " << name);
        ParsedScript script = parse_script(slurp(dir / name));
        auto trace = first_good_trace(script.program, 11);
        REQUIRE(trace.has_value());
        CHECK(check_constructs(*trace, script.target));
    }
}

TEST_CASE("malformed corpus yields positioned errors") {
    fs::path dir = fs::path(ECS_CORPUS_DIR) / "bad";
    int count = 0;
    for (const auto& entry : fs::directory_iterator(dir)) {
        if (entry.path().extension() != ".ecs") continue;
        ++count;
        INFO("script: " << entry.path().filename().string());
        std::string text = slurp(entry.path());
        // Expected position is recorded in the first line: "# expect L:C".
        int eline = 0, ecol = 0;
        REQUIRE(std::sscanf(text.c_str(), "# expect %d:%d", &eline, &ecol) == 2);
        try {
            parse_script(text);
            FAIL_CHECK("expected a parse error in " << entry.path().filename().string());
        } catch (const ParseError& e) {
            CHECK(e.line() == eline);
            CHECK(e.column() == ecol);
        }
    }
    CHECK(count >= 10);
}

TEST_CASE("diagnostic details") {
    try {
        parse_script("type general\nline L = line(p, q)\nend\n");
        FAIL("expected ParseError");
    } catch (const ParseError& e) {
        CHECK(e.message().find("use before define") != std::string::npos);
    }

    try {
        parse_script("type compass\ngiven point a = (0, 0)\ngiven point b = (1, 0)\n"
                     "line L = line(a, b)\nend\n");
        FAIL("expected ParseError");
    } catch (const ParseError& e) {
        CHECK(e.message().find("type header violation") != std::string::npos);
    }

    // Bad macro type header.
    try {
        parse_script("type compass\nmacro origin_via_u\nend\n");
        FAIL("expected ParseError");
    } catch (const ParseError& e) {
        CHECK(e.message().find("type header violation") != std::string::npos);
    }
}

TEST_CASE("format is NotExpressible for opaque programs") {
    ParsedScript script = parse_script("type general\nloc D = disc((0, 0), 1)\nchoose p in D\nend\n");
    ConstructionProgram opaque =
        refine_set_system(script.program, [](const Location& loc) { return loc; });
    try {
        format_program(opaque);
        FAIL("expected NotExpressible");
    } catch (const Error& e) {
        CHECK(e.code() == Err::NotExpressible);
    }

    // Builtin factories carry no script either.
    try {
        format_program(equilateral_triangle_program());
        FAIL("expected NotExpressible");
    } catch (const Error& e) {
        CHECK(e.code() == Err::NotExpressible);
    }
}

TEST_CASE("parser survives byte mutations without crashing") {
    fs::path dir = fs::path(ECS_CORPUS_DIR) / "good";
    std::mt19937_64 rng(99);
    const char charset[] = "()=,.0123456789abcdefgh #\n";
    for (const auto& entry : fs::directory_iterator(dir)) {
        if (entry.path().extension() != ".ecs") continue;
        std::string text = slurp(entry.path());
        for (int iter = 0; iter < 40; ++iter) {
            std::string mutated = text;
            int edits = 1 + static_cast<int>(rng() % 4);
            for (int e = 0; e < edits && !mutated.empty(); ++e) {
                std::size_t pos = rng() % mutated.size();
                mutated[pos] = charset[rng() % (sizeof(charset) - 1)];
            }
            try {
                parse_script(mutated); // either parses or raises a ParseError
            } catch (const ParseError&) {
            }
        }
    }
}

TEST_CASE("parsed programs agree with their declared type at runtime") {
    ParsedScript eq = parse_script(slurp(fs::path(ECS_CORPUS_DIR) / "good" / "equilateral.ecs"));
    auto trace = first_good_trace(eq.program, 3);
    REQUIRE(trace.has_value());
    TypeAudit audit = type_audit(*trace);
    CHECK(audit.minimal == ConstructionType::Compass);
    CHECK(audit.violations.empty());
    CHECK(trace->word.size() == 9);
}
