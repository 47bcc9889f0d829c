#include <cmath>
#include <random>
#include <sstream>

#include "doctest.h"
#include "ecs/builtins.hpp"
#include "ecs/closure.hpp"
#include "support.hpp"

using namespace ecs;

TEST_CASE("e_closure basics") {
    PointSet square = make_point_set({{0, 0}, {1, 0}, {1, 1}, {0, 1}});

    PointSet d0 = e_closure(square, 0);
    CHECK(d0.size() == 4);

    PointSet d1 = e_closure(square, 1);
    CHECK(d1.contains({0.5, 0.5})); // diagonals meet at the center
    CHECK(d1.size() > 4);

    // Two-point seed: the closure holds both circle-circle apexes of
    // k(p, p, q) and k(q, q, p), per the kernel oracle.
    Point p{0, 0}, q{2, 0};
    PointSet two = make_point_set({p, q});
    PointSet closed = e_closure(two, 1);
    auto apexes = intersect_circles({p, distance(p, q)}, {q, distance(p, q)});
    REQUIRE(apexes.size() == 2);
    CHECK(closed.contains(apexes[0]));
    CHECK(closed.contains(apexes[1]));
}

TEST_CASE("e_closure size limit") {
    PointSet square = make_point_set({{0, 0}, {1, 0}, {1, 1}, {0, 1}});
    try {
        e_closure(square, 3, 500);
        FAIL("expected SizeLimit");
    } catch (const Error& e) {
        CHECK(e.code() == Err::SizeLimit);
    }
}

TEST_CASE("h_closure basics") {
    Circle k{{0, 0}, 2.0};
    // Four points on k spanning two distinct diameters.
    PointSet seed = make_point_set({{2, 0}, {-2, 0}, {0, 2}, {0, -2}});
    PointSet d0 = h_closure(seed, k, 0);
    CHECK(d0.size() == 4);

    PointSet d1 = h_closure(seed, k, 1);
    CHECK(d1.contains({0, 0})); // the two diameters meet at the center

    // Seed off the forbidden set: closure points keep a clear margin from
    // the center (dense-set points of the concrete configuration).
    Circle kc{{1.5, 0}, std::sqrt(1.25)};
    std::vector<Point> ys;
    for (double a : {-7.0, -1.0, 0.0, 0.5, 3.0, 100.0}) {
        ys.push_back(y_set_point(a));
    }
    PointSet yseed = make_point_set(ys);
    PointSet yclosed = h_closure(yseed, kc, 1);
    double min_dist = 1e300;
    for (const Point& pt : yclosed.points) {
        min_dist = std::min(min_dist, distance(pt, kc.center));
    }
    CHECK(min_dist > 1e-9);
}

TEST_CASE("closure monotonicity and provenance soundness") {
    std::mt19937_64 rng(31);
    std::uniform_real_distribution<double> coord(-2.0, 2.0);

    for (int iter = 0; iter < 10; ++iter) {
        PointSet seed = make_point_set({{coord(rng), coord(rng)}, {coord(rng), coord(rng)}});
        if (seed.size() < 2) continue;
        PointSet d1 = e_closure(seed, 1, 1000000);
        PointSet d2 = e_closure(seed, 2, 1000000);
        for (const Point& pt : d1.points) {
            CHECK(d2.contains(pt));
        }
        CHECK(!audit_closure_provenance(d2).has_value());
    }

    Circle k{{0.5, -0.5}, 1.5};
    for (int iter = 0; iter < 10; ++iter) {
        PointSet seed = make_point_set(
            {{coord(rng), coord(rng)}, {coord(rng), coord(rng)}, {coord(rng), coord(rng)}});
        if (seed.size() < 3) continue;
        PointSet d1 = h_closure(seed, k, 1, 1000000);
        PointSet d2 = h_closure(seed, k, 2, 1000000);
        for (const Point& pt : d1.points) {
            CHECK(d2.contains(pt));
        }
        CHECK(!audit_closure_provenance(d2).has_value());
    }
}

TEST_CASE("point set text round trip") {
    PointSet set = make_point_set({{0.1, -2.5}, {1.0 / 3.0, 7.25}, {-1e-3, 4}});
    std::ostringstream os;
    write_point_set(os, set);
    std::istringstream is(os.str());
    PointSet back = read_point_set(is);
    REQUIRE(back.size() == set.size());
    for (std::size_t i = 0; i < set.size(); ++i) {
        CHECK(set.points[i].x == back.points[i].x); // 17 digits round-trip exactly
        CHECK(set.points[i].y == back.points[i].y);
    }
}

TEST_CASE("scale_avoiding_unit") {
    PointSet pair = make_point_set({{0, 0}, {1, 0}});
    ScaledSet s = scale_avoiding_unit(pair);
    CHECK(std::abs(s.alpha - 1.0) > 1e-6); // M = {1}
    CHECK(std::abs(distance(s.scaled.points[0], s.scaled.points[1]) - 1.0) > 1e-9);

    PointSet square = make_point_set({{0, 0}, {1, 0}, {1, 1}, {0, 1}});
    PointSet closed = e_closure(square, 1);
    ScaledSet s2 = scale_avoiding_unit(closed);
    for (std::size_t i = 0; i < s2.scaled.size(); ++i) {
        for (std::size_t j = i + 1; j < s2.scaled.size(); ++j) {
            CHECK(std::abs(distance(s2.scaled.points[i], s2.scaled.points[j]) - 1.0) > 1e-9);
        }
    }
}

TEST_CASE("translate_avoiding_origin") {
    PointSet single = make_point_set({{0, 0}});
    ShiftedSet t = translate_avoiding_origin(single);
    CHECK(approx_equal(t.shift, {1, 0}, 0.0)); // the first candidate works

    // A base containing (-1, 0) rejects the first candidate.
    PointSet tricky = make_point_set({{-1, 0}, {0, 0}});
    ShiftedSet t2 = translate_avoiding_origin(tricky);
    for (const Point& p : t2.shifted.points) {
        CHECK(std::hypot(p.x, p.y) > 1e-6);
    }

    PointSet grid = e_closure(make_point_set({{0, 0}, {1, 0}, {0, 1}}), 1);
    ShiftedSet t3 = translate_avoiding_origin(grid);
    for (const Point& p : t3.shifted.points) {
        CHECK(std::hypot(p.x, p.y) > 1e-9);
    }
}

TEST_CASE("hilbert provider basics") {
    Circle k{{0, 0}, 2.0};
    auto provider = hilbert_x_provider(k, 1);

    // A tight disc around the center: the returned point stays inside and
    // clear of the center.
    Point p = provider->point_in(Location(Disc{k.center, k.radius / 10}));
    double d = distance(p, k.center);
    CHECK(d > 1e-9);
    CHECK(d < k.radius / 10);

    // A generic disc away from the special lines succeeds immediately.
    Point q = provider->point_in(Location(Disc{{1.0, 1.0}, 0.5}));
    CHECK(distance(q, {1.0, 1.0}) < 0.5);

    CHECK_THROWS_AS(provider->point_in(Location(HSegment{0, 1, 0})), Error);
    CHECK(provider->stats().calls == 2); // the rejected call is not counted
    CHECK(provider->describe().find("desk-scale") != std::string::npos);
}

TEST_CASE("adversary avoids the center") {
    Circle k{{0.5, -1.0}, 2.0};

    // Naive attempt: choose the center as an arbitrary point.
    ConstructionProgram naive;
    naive.root = {ConfigItem(k)};
    naive.declared_type = ConstructionType::Straightedge;
    auto steps = std::make_shared<std::vector<StepRule>>();
    steps->push_back(NewLocation{[k](const Word&) { return Location(Disc{k.center, 1.0}); }});
    steps->push_back(ChooseStep{});
    naive.next_step = [steps](const Word& w) -> StepRule {
        std::size_t idx = w.size() - 1;
        return idx < steps->size() ? (*steps)[idx] : StepRule(EndStep{});
    };

    auto provider = hilbert_x_provider(k, 1);
    auto forbidden = [k](Point p) { return distance(p, k.center) <= 1e-9; };
    AdversaryReport report = adversary_run(naive, forbidden, *provider);
    CHECK(report.avoided);
    CHECK(!report.witness);
    Point chosen = std::get<Point>(report.trace.word.back());
    CHECK(distance(chosen, k.center) > 1e-6);

    // Randomized straightedge scripts over disc locations.
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        auto prog = testsupport::random_straightedge_program(seed, 30, k);
        auto prov = hilbert_x_provider(k, 2);
        AdversaryReport r = adversary_run(prog, forbidden, *prov);
        CHECK(r.avoided);
        TypeAudit audit = type_audit(r.trace);
        CHECK(audit.violations.empty());
    }

    // U-locations are outside the classical provider contract.
    ConstructionProgram via_u = center_via_u_program(k);
    auto prov2 = hilbert_x_provider(k, 1);
    try {
        adversary_run(via_u, forbidden, *prov2);
        FAIL("expected UnsupportedLocation");
    } catch (const Error& e) {
        CHECK(e.code() == Err::UnsupportedLocation);
    }
}

TEST_CASE("adversary avoids unit distance and the origin") {
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        auto prog = testsupport::random_general_program(seed, 25);
        auto prov = unit_avoiding_provider(1);
        AdversaryReport r = adversary_run(prog, [](Point) { return false; }, *prov);
        CHECK(!find_unit_pair(r.trace).has_value());
    }

    auto origin_forbidden = [](Point p) { return std::hypot(p.x, p.y) <= 1e-9; };
    for (std::uint64_t seed = 100; seed < 110; ++seed) {
        auto prog = testsupport::random_general_program(seed, 25);
        auto prov = origin_avoiding_provider(1);
        AdversaryReport r = adversary_run(prog, origin_forbidden, *prov);
        CHECK(r.avoided);
    }
}
