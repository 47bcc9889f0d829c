#include <cmath>
#include <random>

#include "doctest.h"
#include "ecs/projective.hpp"

using namespace ecs;

TEST_CASE("projective points and lines") {
    ProjPoint ex = make_proj_point(1, 0, 0);
    ProjPoint ey = make_proj_point(0, 1, 0);
    ProjLine l = proj_line_through(ex, ey);
    CHECK(std::abs(l.n.z) == doctest::Approx(1.0)); // normal (0, 0, 1)

    // Antipodal representatives name the same line.
    ProjPoint ex_neg = make_proj_point(-1, 0, 0);
    ProjLine l2 = proj_line_through(ex_neg, ey);
    CHECK(norm(l.n - l2.n) < 1e-12);

    CHECK_THROWS_AS(proj_line_through(ex, ex_neg), Error);

    // Incidence residuals on random pairs.
    std::mt19937_64 rng(5);
    std::normal_distribution<double> g(0.0, 1.0);
    for (int i = 0; i < 200; ++i) {
        ProjPoint p = make_proj_point(g(rng), g(rng), g(rng));
        ProjPoint q = make_proj_point(g(rng), g(rng), g(rng));
        if (proj_equal(p, q, 1e-6)) continue;
        ProjLine through = proj_line_through(p, q);
        CHECK(std::abs(dot(through.n, p.v)) < 1e-12);
        CHECK(std::abs(dot(through.n, q.v)) < 1e-12);
    }

    ProjPoint meet = proj_intersect_lines(make_proj_line(0, 0, 1), make_proj_line(0, 1, 0));
    CHECK(proj_equal(meet, ex, 1e-12));
    CHECK_THROWS_AS(proj_intersect_lines(make_proj_line(0, 0, 1), make_proj_line(0, 0, 1)),
                    Error);

    // Affine parallels meet at a point at infinity (z = 0).
    ProjLine a1 = make_proj_line(0, 1, -1); // y = z plane: affine y = 1
    ProjLine a2 = make_proj_line(0, 1, -2); // affine y = 2
    ProjPoint inf = proj_intersect_lines(a1, a2);
    CHECK(std::abs(inf.v.z) < 1e-12);
}

TEST_CASE("projective line/circle intersection") {
    ProjCircle k = canonical_proj_circle();

    // The equatorial line (normal = poles) forces z = 0, but k needs
    // |z| = 1/sqrt2: empty.
    CHECK(proj_intersect_line_circle(make_proj_line(0, 0, 1), k).empty());

    // A line through the center meets k in two projective points (four
    // sphere points).
    ProjLine through_c = proj_line_through(proj_poles(), make_proj_point(1, 0, 0));
    auto pts = proj_intersect_line_circle(through_c, k);
    CHECK(pts.size() == 2);
    auto sphere = proj_intersect_line_circle_sphere(through_c, k);
    CHECK(sphere.size() == 4);

    // Generic samples satisfy both constraints.
    std::mt19937_64 rng(7);
    std::normal_distribution<double> g(0.0, 1.0);
    int checked = 0;
    while (checked < 200) {
        ProjLine l = make_proj_line(g(rng), g(rng), g(rng));
        auto ps = proj_intersect_line_circle(l, k);
        for (const ProjPoint& p : ps) {
            CHECK(std::abs(dot(p.v, l.n)) < 1e-9);
            CHECK(on_proj_circle(k, p, 1e-9));
        }
        if (!ps.empty()) ++checked;
    }
}

TEST_CASE("proj_circle_from") {
    ProjPoint p = proj_poles();
    ProjPoint q = make_proj_point(1, 0, 0);
    ProjPoint r = make_proj_point(1, 1, 0);

    // Degenerate: q = r gives back the center.
    auto deg = proj_circle_from(p, q, q);
    REQUIRE(std::holds_alternative<ProjPoint>(deg));
    CHECK(proj_equal(std::get<ProjPoint>(deg), p, 1e-12));

    // d(q, r) = pi/4 gives level 1/sqrt2: the canonical circle.
    auto k = proj_circle_from(p, q, r);
    REQUIRE(std::holds_alternative<ProjCircle>(k));
    CHECK(std::get<ProjCircle>(k).level == doctest::Approx(1.0 / std::sqrt(2.0)));

    // Radius pi/2 leaves the admissible level range.
    ProjPoint s = make_proj_point(0, 1, 0);
    CHECK_THROWS_AS(proj_circle_from(p, q, s), Error);
}

TEST_CASE("F bijection") {
    ProjPoint pole = proj_poles();
    auto rep = F_rep(pole);
    CHECK(rep[0] == 0);
    CHECK(rep[1] == 0);
    CHECK(rep[2] == 1);

    ProjPoint at_inf = make_proj_point(0, 1, 0);
    auto rep2 = F_rep(at_inf);
    CHECK(rep2[1] == 1);
    CHECK(rep2[2] == 0);

    // The canonical circle maps onto the radius-1 circle around (0, 0, 1)
    // in the plane z = 1.
    for (int i = 0; i < 100; ++i) {
        double t = 2 * M_PI * i / 100.0;
        const double r = 1.0 / std::sqrt(2.0);
        ProjPoint p = make_proj_point(r * std::cos(t), r * std::sin(t), r);
        auto f = F_rep(p);
        CHECK(std::hypot(f[0], f[1]) == doctest::Approx(1.0));
        CHECK(f[2] == 1);
    }
}

TEST_CASE("f0_bar values and involution") {
    auto fixed = f0_bar({0, 1, 0});
    CHECK(fixed[0] == 0);
    CHECK(fixed[2] == 0);
    CHECK(fixed[1] != 0);

    auto img = f0_bar({-std::sqrt(2.0), 0, 1});
    CHECK(img[0] == doctest::Approx(1.0));
    CHECK(img[1] == 0);
    CHECK(std::abs(img[2]) < 1e-15);

    CHECK_THROWS_AS(f0_bar({0, 0, 0}), Error);

    // Twice applied is proportional to the identity.
    std::mt19937_64 rng(11);
    std::normal_distribution<double> g(0.0, 1.0);
    for (int i = 0; i < 1000; ++i) {
        std::array<double, 3> h{g(rng), g(rng), g(rng)};
        auto hh = f0_bar(f0_bar(h));
        // Cross products of (h, hh) vanish when proportional.
        double c1 = h[0] * hh[1] - h[1] * hh[0];
        double c2 = h[0] * hh[2] - h[2] * hh[0];
        double c3 = h[1] * hh[2] - h[2] * hh[1];
        CHECK(std::abs(c1) < 1e-9);
        CHECK(std::abs(c2) < 1e-9);
        CHECK(std::abs(c3) < 1e-9);
    }
}

TEST_CASE("f_pr and the rotated family") {
    // c' = F^-1(-1/sqrt2, 0, 1), antipode-consistent normalization.
    ProjPoint cp = proj_center_image();
    ProjPoint expect = make_proj_point(-1.0 / std::sqrt(3.0), 0, std::sqrt(2.0 / 3.0));
    CHECK(proj_equal(cp, expect, 1e-12));

    // f_pr agrees with the explicit F-conjugation route.
    std::mt19937_64 rng(13);
    std::normal_distribution<double> g(0.0, 1.0);
    for (int i = 0; i < 500; ++i) {
        ProjPoint p = make_proj_point(g(rng), g(rng), g(rng));
        auto rep = F_rep(p);
        auto moved = f0_bar({rep[0], rep[1], rep[2]});
        ProjPoint via_f = F_inv(moved[0], moved[1], moved[2]);
        CHECK(proj_equal(f_pr(p), via_f, 1e-9));
    }

    // Rotated-family basics.
    ProjPoint sample{rotation_z(0.7).apply(cp.v)};
    double theta = rotation_angle_for(make_proj_point(sample.v.x, sample.v.y, sample.v.z));
    CHECK(theta == doctest::Approx(0.7));
    ProjPoint img = f_pr_rotated(proj_poles(), theta);
    CHECK(proj_equal(img, ProjPoint{sample.v}, 1e-9));

    CHECK_THROWS_AS(rotation_angle_for(make_proj_point(1, 0, 0)), Error);
}

TEST_CASE("projective invariant battery is green") {
    for (const ProjCheck& check : proj_invariant_battery(2024)) {
        INFO(check.name << " " << check.detail);
        CHECK(check.pass);
    }
}

TEST_CASE("projective adversary demonstration") {
    for (std::uint64_t seed = 0; seed < 5; ++seed) {
        ProjAdversaryResult r = proj_adversary_demo(seed, 25);
        CHECK(r.avoided);
        CHECK(r.point_letters > 0);
        CHECK(r.min_center_distance > 1e-9);
    }
}
