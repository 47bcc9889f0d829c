#pragma once

#include <cmath>
#include <variant>
#include <vector>

#include "ecs/errors.hpp"

namespace ecs {

// Absolute/relative tolerances used by every predicate in the library.
// eps_abs bounds coordinate-level coincidence tests, eps_rel bounds
// normalized residuals (unit vectors, involution round trips).
struct Tolerance {
    double eps_abs = 1e-9;
    double eps_rel = 1e-12;
};

// Single process-wide tolerance. Set once at startup (the CLI honours
// ECS_TOLERANCE); concurrent readers are fine after that.
Tolerance& tolerance();

// ============================================================================
// Primitives
// ============================================================================

struct Point {
    double x = 0.0;
    double y = 0.0;

    friend Point operator+(Point p, Point q) { return {p.x + q.x, p.y + q.y}; }
    friend Point operator-(Point p, Point q) { return {p.x - q.x, p.y - q.y}; }
    friend Point operator*(double s, Point p) { return {s * p.x, s * p.y}; }
};

double distance(Point p, Point q);
bool approx_equal(Point p, Point q, double eps);
bool approx_equal(Point p, Point q); // eps = tolerance().eps_abs

// Line ax + by + c = 0, kept in canonical form: a^2 + b^2 = 1 and the first
// nonzero of (a, b) positive. Two values denote the same line iff their
// canonical coefficients agree within tolerance.
struct Line {
    double a = 0.0;
    double b = 0.0;
    double c = 0.0;

    // Signed distance from p to the line (canonical form makes it metric).
    double eval(Point p) const { return a * p.x + b * p.y + c; }
};

// Canonicalizes arbitrary coefficients. Requires (a, b) != (0, 0).
Line make_line(double a, double b, double c);
bool same_line(const Line& l1, const Line& l2, double eps);
bool same_line(const Line& l1, const Line& l2);

struct Circle {
    Point center;
    double radius = 0.0; // > 0 by construction; radius-0 objects are Points
};

bool same_circle(const Circle& k1, const Circle& k2, double eps);
bool same_circle(const Circle& k1, const Circle& k2);

// ============================================================================
// Operations
// ============================================================================

// Line through two distinct points. Throws CoincidentPoints when
// distance(p, q) <= eps_abs.
Line line_through(Point p, Point q);

// k(a, b, c): circle with center a and radius |bc|. The degenerate case
// b = c yields the point a itself (point repetition).
using CircleOrPoint = std::variant<Circle, Point>;
CircleOrPoint circle_from(Point a, Point b, Point c);

struct Parallel {};
struct Identical {};
using LineMeet = std::variant<Point, Parallel, Identical>;

LineMeet intersect_lines(const Line& l1, const Line& l2);

// Intersections are returned sorted by (x, then y) ascending so that callers
// can select deterministically by index. Near-tangency (within eps_abs)
// collapses to a single point.
std::vector<Point> intersect_line_circle(const Line& l, const Circle& k);

// Throws IdenticalCircles when the circles coincide within tolerance.
std::vector<Point> intersect_circles(const Circle& k1, const Circle& k2);

} // namespace ecs
