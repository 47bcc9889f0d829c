#include "ecs/builtins.hpp"

#include <cmath>

namespace ecs {

namespace {

// Uniform step-list program: rule k applies when the word has grown by k
// letters past the root. NewLocation entries may still read the word, which
// carries the non-uniform constructions.
ConstructionProgram from_steps(Word root, std::vector<StepRule> steps, ConstructionType type) {
    ConstructionProgram p;
    p.root = std::move(root);
    p.declared_type = type;
    std::size_t root_len = p.root.size();
    auto shared = std::make_shared<std::vector<StepRule>>(std::move(steps));
    p.next_step = [shared, root_len](const Word& w) -> StepRule {
        std::size_t idx = w.size() - root_len;
        if (idx < shared->size()) {
            return (*shared)[idx];
        }
        return EndStep{};
    };
    return p;
}

Location hseg(double a, double b, double c) { return HSegment{a, b, c}; }

NewLocation fixed_loc(Location loc) {
    return NewLocation{[loc](const Word&) { return loc; }};
}

} // namespace

YSetParams::YSetParams(double alpha_value) : alpha(alpha_value) {
    double denom = 5.0 - 2.0 * alpha + alpha * alpha;
    beta = (2.0 + 2.0 * alpha * alpha) / denom;
    gamma = (1.0 + 4.0 * alpha - alpha * alpha) / denom;
}

Point y0_point(double alpha) {
    YSetParams ps(alpha);
    return {ps.beta, ps.gamma};
}

Point y_set_point(double alpha) {
    YSetParams ps(alpha);
    const double s = std::sin(1.0);
    const double sp = std::cos(1.0);
    double denom = (ps.beta - 1.5) * sp + ps.gamma * s + 1.5;
    if (std::abs(denom) < 1e-15) {
        fail(Err::DegenerateDenominator, "y_set_point denominator vanished");
    }
    return {1.0 / denom, ((1.5 - ps.beta) * s + ps.gamma * sp) / denom};
}

Point y_set_point_via_maps(double alpha) {
    // f_p^-1 = f o phi^-1 for the angle-1 rotation of the a = 3/2 family.
    static const PlaneMap fp_inv = inverse(strommer_rotated_angle(1.5, 1.0));
    auto img = apply_point(fp_inv, y0_point(alpha));
    if (!img) {
        fail(Err::DegenerateDenominator, "y0 point fell on the excluded line");
    }
    return *img;
}

// ============================================================================
// Equilateral triangle (compass only, two classical arbitrary points)
// ============================================================================

ConstructionProgram equilateral_triangle_program() {
    std::vector<StepRule> steps;
    steps.push_back(fixed_loc(Disc{{0, 0}, 1.0})); // 0: D1
    steps.push_back(ChooseStep{});                 // 1: p1
    steps.push_back(fixed_loc(Disc{{0, 3}, 1.0})); // 2: D2
    steps.push_back(ChooseStep{});                 // 3: p2
    steps.push_back(NewCircle{1, 1, 3});           // 4: C1 = k(p1; p1 p2)
    steps.push_back(NewCircle{3, 1, 3});           // 5: C2 = k(p2; p1 p2)
    steps.push_back(NewIntersection{4, 5, 0});     // 6: p3
    steps.push_back(NewCircle{1, 1, 1});           // 7: p1 repeated
    steps.push_back(NewCircle{3, 3, 3});           // 8: p2 repeated
    return from_steps({}, std::move(steps), ConstructionType::Compass);
}

// ============================================================================
// Perpendicular bisector (deterministic, needs compass)
// ============================================================================

ConstructionProgram bisector_program(Point p1, Point p2) {
    if (approx_equal(p1, p2)) {
        fail(Err::CoincidentPoints, "bisector requires distinct points");
    }
    std::vector<StepRule> steps;
    steps.push_back(NewCircle{0, 0, 1});       // 2: k1 = k(p1; p1 p2)
    steps.push_back(NewCircle{1, 0, 1});       // 3: k2 = k(p2; p1 p2)
    steps.push_back(NewIntersection{2, 3, 0}); // 4: P1
    steps.push_back(NewIntersection{2, 3, 1}); // 5: P2
    steps.push_back(NewLine{4, 5});            // 6: the bisector
    return from_steps({ConfigItem(p1), ConfigItem(p2)}, std::move(steps),
                      ConstructionType::General);
}

// ============================================================================
// Unit length from nothing over horizontal segments
// ============================================================================

ConstructionProgram unit_length_program() {
    std::vector<StepRule> steps;
    // Lines y = 0 and y = 1 from four segment points.
    steps.push_back(fixed_loc(hseg(0, 1, 0)));  // 0
    steps.push_back(ChooseStep{});              // 1
    steps.push_back(fixed_loc(hseg(2, 3, 0)));  // 2
    steps.push_back(ChooseStep{});              // 3
    steps.push_back(NewLine{1, 3});             // 4: y = 0
    steps.push_back(fixed_loc(hseg(0, 1, 1)));  // 5
    steps.push_back(ChooseStep{});              // 6
    steps.push_back(fixed_loc(hseg(2, 3, 1)));  // 7
    steps.push_back(ChooseStep{});              // 8
    steps.push_back(NewLine{6, 8});             // 9: y = 1
    // Two distinct points a, b on y = 0 and their bisector.
    steps.push_back(fixed_loc(hseg(-2, -1, 0))); // 10
    steps.push_back(ChooseStep{});               // 11: a
    steps.push_back(fixed_loc(hseg(4, 5, 0)));   // 12
    steps.push_back(ChooseStep{});               // 13: b
    steps.push_back(NewCircle{11, 11, 13});      // 14
    steps.push_back(NewCircle{13, 11, 13});      // 15
    steps.push_back(NewIntersection{14, 15, 0}); // 16
    steps.push_back(NewIntersection{14, 15, 1}); // 17
    steps.push_back(NewLine{16, 17});            // 18: the vertical bisector
    // Its intersections with y = 0 and y = 1 are at distance exactly 1.
    steps.push_back(NewIntersection{18, 4, 0}); // 19
    steps.push_back(NewIntersection{18, 9, 0}); // 20
    return from_steps({}, std::move(steps), ConstructionType::General);
}

// ============================================================================
// Center of a circle, straightedge only, over horizontal segments
// ============================================================================

ConstructionProgram center_via_u_program(const Circle& k) {
    const double cx = k.center.x;
    const double t1 = k.center.y;          // encodes the center's height
    const double t2 = t1 + k.radius / 3.0; // well-conditioned chords
    const double t3 = t1 + k.radius / 2.0;
    const double off = cx + k.radius;

    std::vector<StepRule> steps;
    auto add_horizontal = [&](double t, int first_choice) {
        steps.push_back(fixed_loc(hseg(off + 1, off + 2, t)));
        steps.push_back(ChooseStep{});
        steps.push_back(fixed_loc(hseg(off + 3, off + 4, t)));
        steps.push_back(ChooseStep{});
        steps.push_back(NewLine{first_choice, first_choice + 2});
    };
    add_horizontal(t1, 2);  // 1..5: y = t1
    add_horizontal(t2, 7);  // 6..10: y = t2
    add_horizontal(t3, 12); // 11..15: y = t3
    // Chord endpoints p_i (left) and q_i (right); the kernel sorts by x.
    steps.push_back(NewIntersection{5, 0, 0});   // 16: p1
    steps.push_back(NewIntersection{5, 0, 1});   // 17: q1
    steps.push_back(NewIntersection{10, 0, 0});  // 18: p2
    steps.push_back(NewIntersection{10, 0, 1});  // 19: q2
    steps.push_back(NewIntersection{15, 0, 0});  // 20: p3
    steps.push_back(NewIntersection{15, 0, 1});  // 21: q3
    steps.push_back(NewLine{16, 19});            // 22: l1  = l(p1, q2)
    steps.push_back(NewLine{18, 17});            // 23: l1' = l(p2, q1)
    steps.push_back(NewLine{16, 21});            // 24: l2  = l(p1, q3)
    steps.push_back(NewLine{20, 17});            // 25: l2' = l(p3, q1)
    steps.push_back(NewIntersection{22, 23, 0}); // 26: a
    steps.push_back(NewIntersection{24, 25, 0}); // 27: b
    steps.push_back(NewLine{26, 27});            // 28: l3
    steps.push_back(NewIntersection{28, 5, 0});  // 29: the center
    return from_steps({ConfigItem(k)}, std::move(steps), ConstructionType::Straightedge);
}

// ============================================================================
// The origin from nothing over horizontal segments (non-uniform)
// ============================================================================

namespace {

// Mirror-line height from the chosen q1, q2; throws when the draw violates
// 2 q1x > q2x > q1x > 0.
double origin_mirror_height(const Word& w) {
    Point q1 = std::get<Point>(w[6]);
    Point q2 = std::get<Point>(w[8]);
    if (!(q1.x > 0.0 && q2.x > q1.x && 2.0 * q1.x > q2.x)) {
        fail(Err::GeometricFailure, "inadmissible q1, q2 (need 2 q1x > q2x > q1x > 0); resample");
    }
    return (q2.x - 2.0 * q1.x) / (2.0 * (q2.x - q1.x));
}

} // namespace

ConstructionProgram origin_program() {
    std::vector<StepRule> steps;
    steps.push_back(fixed_loc(hseg(0, 1, 0)));   // 0
    steps.push_back(ChooseStep{});               // 1
    steps.push_back(fixed_loc(hseg(2, 3, 0)));   // 2
    steps.push_back(ChooseStep{});               // 3
    steps.push_back(NewLine{1, 3});              // 4: y = 0
    steps.push_back(fixed_loc(hseg(0.5, 2, 1))); // 5
    steps.push_back(ChooseStep{});               // 6: q1
    steps.push_back(fixed_loc(hseg(0.5, 4, 2))); // 7
    steps.push_back(ChooseStep{});               // 8: q2
    steps.push_back(NewLine{8, 6});              // 9: kappa = l(q2, q1)
    // The segment heights below depend on the computed point b; this is the
    // non-uniform part of the construction.
    steps.push_back(NewLocation{[](const Word& w) {
        double by = origin_mirror_height(w);
        double q1x = std::get<Point>(w[6]).x;
        return Location(HSegment{q1x - 3, q1x - 2, by});
    }});                                          // 10
    steps.push_back(ChooseStep{});                // 11: p
    steps.push_back(NewLocation{[](const Word& w) {
        double by = origin_mirror_height(w);
        double q1x = std::get<Point>(w[6]).x;
        return Location(HSegment{q1x + 2, q1x + 3, by});
    }});                                          // 12
    steps.push_back(ChooseStep{});                // 13: p'
    steps.push_back(NewCircle{11, 11, 6});        // 14: k(p;  p  q1)
    steps.push_back(NewCircle{13, 13, 6});        // 15: k(p'; p' q1)
    steps.push_back(NewIntersection{14, 15, 0});  // 16: mirrored q1 (lower y)
    steps.push_back(NewCircle{11, 11, 8});        // 17: k(p;  p  q2)
    steps.push_back(NewCircle{13, 13, 8});        // 18: k(p'; p' q2)
    steps.push_back(NewIntersection{17, 18, 0});  // 19: mirrored q2
    steps.push_back(NewLine{16, 19});             // 20: l through the mirrors
    steps.push_back(NewIntersection{20, 4, 0});   // 21: the origin
    return from_steps({}, std::move(steps), ConstructionType::General);
}

std::optional<Builtin> find_builtin(const std::string& name) {
    if (name == "equilateral") {
        return Builtin{equilateral_triangle_program(), target_equilateral()};
    }
    if (name == "bisector") {
        Point p1{0, 0}, p2{2, 0};
        return Builtin{bisector_program(p1, p2), target_final_bisector(p1, p2)};
    }
    if (name == "unit-length") {
        return Builtin{unit_length_program(), target_unit_pair()};
    }
    if (name == "center-via-u") {
        Circle k{{0, 0}, 2.0};
        return Builtin{center_via_u_program(k), target_point(k.center)};
    }
    if (name == "origin") {
        return Builtin{origin_program(), target_point({0, 0})};
    }
    return std::nullopt;
}

} // namespace ecs
