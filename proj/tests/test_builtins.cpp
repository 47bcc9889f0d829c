#include <cmath>
#include <random>

#include "doctest.h"
#include "ecs/builtins.hpp"

using namespace ecs;

namespace {

const Circle kConcreteCircle{{1.5, 0.0}, std::sqrt(1.25)};

double circle_residual(const Circle& k, Point p) {
    return std::abs(distance(k.center, p) - k.radius);
}

// Truncated-decimal prefix match: |v| agrees with the printed digits.
bool matches_printed_abs(double v, double printed_abs, int decimals, bool negative) {
    double mag = negative ? -v : v;
    double scale = std::pow(10.0, decimals);
    return mag >= printed_abs - 1e-12 && mag < printed_abs + 1.0 / scale;
}

Point last_point(const Trace& t) {
    return std::get<Point>(t.word.back());
}

} // namespace

TEST_CASE("y0_point rational parametrization") {
    CHECK(approx_equal(y0_point(2.0), {2, 1}, 1e-12)); // tangent double solution
    CHECK(approx_equal(y0_point(0.0), {0.4, 0.2}, 1e-12));
    CHECK(circle_residual(kConcreteCircle, y0_point(0.0)) < 1e-12);
    CHECK(y0_point(-7.0).x == doctest::Approx(100.0 / 68.0));
    CHECK(circle_residual(kConcreteCircle, y0_point(-7.0)) < 1e-12);

    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> alpha(-50.0, 50.0);
    for (int i = 0; i < 1000; ++i) {
        CHECK(circle_residual(kConcreteCircle, y0_point(alpha(rng))) < 1e-9);
    }
}

TEST_CASE("y_set_point printed sample values") {
    Point pm7 = y_set_point(-7.0);
    CHECK(matches_printed_abs(pm7.x, 1.83944, 5, false));
    CHECK(matches_printed_abs(pm7.y, 1.06525, 5, true));

    Point p0 = y_set_point(0.0);
    CHECK(matches_printed_abs(p0.x, 0.93113, 5, false));
    CHECK(matches_printed_abs(p0.y, 0.96249, 5, false));

    Point p100 = y_set_point(100.0);
    CHECK(matches_printed_abs(p100.x, 1.033100, 6, false));
    CHECK(matches_printed_abs(p100.y, 1.01587, 5, true));
}

TEST_CASE("y_set_point lies on the circle and matches the map route") {
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> alpha(-100.0, 100.0);
    for (int i = 0; i < 1000; ++i) {
        double a = alpha(rng);
        Point p = y_set_point(a);
        CHECK(circle_residual(kConcreteCircle, p) < 1e-9);
        Point q = y_set_point_via_maps(a);
        CHECK(distance(p, q) < 1e-12);
    }
}

TEST_CASE("y_set density covers the angle buckets") {
    // Images of a rational sweep hit every 0.1-radian bucket of the circle;
    // the deleted direction is a limit of nearby parameters, so even its
    // bucket fills in.
    const int buckets = 63;
    std::vector<int> hist(buckets, 0);
    for (int i = -40000; i <= 40000; ++i) {
        Point p = y_set_point(0.005 * i);
        double ang = std::atan2(p.y - kConcreteCircle.center.y, p.x - kConcreteCircle.center.x);
        int b = static_cast<int>(std::floor((ang + M_PI) / 0.1));
        if (b >= buckets) b = buckets - 1;
        hist[b]++;
    }
    int missed = 0;
    for (int h : hist) {
        if (h == 0) ++missed;
    }
    CHECK(missed == 0);
}

TEST_CASE("equilateral triangle program") {
    ConstructionProgram prog = equilateral_triangle_program();

    // Scripted run at the disc centers: side 3, apex selected at index 0.
    ScriptedChooser scripted({{0, 0}, {0, 3}});
    Trace t = execute(prog, scripted);
    REQUIRE(t.word.size() == 9);
    Point p3 = std::get<Point>(t.word[6]);
    CHECK(approx_equal(p3, {-3.0 * std::sqrt(3.0) / 2.0, 1.5}, 1e-9));
    CHECK(check_constructs(t, target_equilateral()));

    TypeAudit audit = type_audit(t);
    CHECK(audit.minimal == ConstructionType::Compass);
    CHECK(audit.violations.empty());

    for (std::uint64_t seed = 0; seed < 100; ++seed) {
        SamplerChooser chooser(seed);
        Trace ti = execute(prog, chooser);
        Point a = std::get<Point>(ti.word[6]);
        Point b = std::get<Point>(ti.word[7]);
        Point c = std::get<Point>(ti.word[8]);
        double ab = distance(a, b), ac = distance(a, c), bc = distance(b, c);
        double m = std::max({ab, ac, bc});
        CHECK(std::abs(ab - ac) < 1e-9 * m);
        CHECK(std::abs(ab - bc) < 1e-9 * m);
        CHECK(check_constructs(ti, target_equilateral()));
    }
}

TEST_CASE("bisector program") {
    ConstructionProgram prog = bisector_program({0, 0}, {2, 0});
    ScriptedChooser none({});
    Trace t = execute(prog, none);
    const Line& l = std::get<Line>(t.word.back());
    CHECK(same_line(l, make_line(1, 0, -1), 1e-9)); // x = 1

    ConstructionProgram diag = bisector_program({0, 0}, {1, 1});
    Trace t2 = execute(diag, none);
    const Line& l2 = std::get<Line>(t2.word.back());
    CHECK(std::abs(l2.eval({0.5, 0.5})) < 1e-9);
    // Slope -1: normal proportional to (1, 1).
    CHECK(std::abs(l2.a - l2.b) < 1e-9);

    TypeAudit audit = type_audit(t2);
    CHECK(audit.minimal == ConstructionType::General);
    CHECK_THROWS_AS(bisector_program({1, 1}, {1, 1}), Error);
}

TEST_CASE("unit length program") {
    ConstructionProgram prog = unit_length_program();
    CHECK(prog.root.empty());
    for (std::uint64_t seed = 0; seed < 100; ++seed) {
        SamplerChooser chooser(seed);
        Trace t = execute(prog, chooser);
        Point a = std::get<Point>(t.word[t.word.size() - 2]);
        Point b = last_point(t);
        CHECK(std::abs(distance(a, b) - 1.0) < 1e-9);
        CHECK(std::abs(a.x - b.x) < 1e-9); // vertical bisector
        CHECK(check_constructs(t, target_unit_pair()));
    }
}

TEST_CASE("center via U program") {
    std::mt19937_64 rng(9);
    std::uniform_real_distribution<double> coord(-5.0, 5.0);
    std::uniform_real_distribution<double> rad(0.5, 4.0);

    auto run_one = [](const Circle& k, std::uint64_t seed) {
        ConstructionProgram prog = center_via_u_program(k);
        SamplerChooser chooser(seed);
        Trace t = execute(prog, chooser);
        CHECK(distance(last_point(t), k.center) < 1e-9);
        TypeAudit audit = type_audit(t);
        CHECK(audit.minimal == ConstructionType::Straightedge);
        CHECK(audit.violations.empty());
    };

    run_one({{0, 0}, 2.0}, 1);
    run_one({{1.5, 0}, std::sqrt(1.25)}, 2);
    for (int i = 0; i < 20; ++i) {
        run_one({{coord(rng), coord(rng)}, rad(rng)}, 100 + i);
    }
}

TEST_CASE("origin program") {
    ConstructionProgram prog = origin_program();

    // Hand-replayed scripted case.
    ScriptedChooser scripted({{0.25, 0}, {2.5, 0}, {1, 1}, {1.5, 2}, {-1.5, -0.5}, {3.5, -0.5}});
    Trace t = execute(prog, scripted);
    CHECK(approx_equal(last_point(t), {0, 0}, 1e-9));
    // b = (0.25, -0.5): the mirror line is y = -0.5 and the mirrored points
    // are (1, -2) and (1.5, -3).
    CHECK(approx_equal(std::get<Point>(t.word[16]), {1, -2}, 1e-9));
    CHECK(approx_equal(std::get<Point>(t.word[19]), {1.5, -3}, 1e-9));

    // Collinearity of the origin with both mirrors.
    Point m1 = std::get<Point>(t.word[16]);
    Point m2 = std::get<Point>(t.word[19]);
    double area = m1.x * m2.y - m1.y * m2.x;
    CHECK(std::abs(area) < 1e-9);

    int admissible = 0;
    std::uint64_t seed = 0;
    while (admissible < 100) {
        SamplerChooser chooser(seed++);
        try {
            Trace ti = execute(prog, chooser);
            CHECK(approx_equal(last_point(ti), {0, 0}, 1e-9));
            ++admissible;
        } catch (const Error& e) {
            REQUIRE(e.code() == Err::GeometricFailure); // inadmissible draw
        }
        REQUIRE(seed < 5000);
    }
}
