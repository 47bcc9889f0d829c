#include "ecs/geom.hpp"

#include <algorithm>

namespace ecs {

Tolerance& tolerance() {
    static Tolerance tol;
    return tol;
}

const char* err_name(Err code) {
    switch (code) {
        case Err::CoincidentPoints: return "CoincidentPoints";
        case Err::IdenticalCircles: return "IdenticalCircles";
        case Err::IdenticalLines: return "IdenticalLines";
        case Err::BadParameter: return "BadParameter";
        case Err::PointNotOnK0: return "PointNotOnK0";
        case Err::ExcludedLine: return "ExcludedLine";
        case Err::LevelOutOfRange: return "LevelOutOfRange";
        case Err::LevelMismatch: return "LevelMismatch";
        case Err::ZeroTriple: return "ZeroTriple";
        case Err::DegenerateDenominator: return "DegenerateDenominator";
        case Err::StepLimit: return "StepLimit";
        case Err::ChooserOutOfLocation: return "ChooserOutOfLocation";
        case Err::GeometricFailure: return "GeometricFailure";
        case Err::InvalidStep: return "InvalidStep";
        case Err::NotSeparated: return "NotSeparated";
        case Err::RefinementNotSubset: return "RefinementNotSubset";
        case Err::SizeLimit: return "SizeLimit";
        case Err::NoGapFound: return "NoGapFound";
        case Err::LocationUnreachable: return "LocationUnreachable";
        case Err::UnsupportedLocation: return "UnsupportedLocation";
        case Err::NotExpressible: return "NotExpressible";
    }
    return "UnknownError";
}

double distance(Point p, Point q) {
    return std::hypot(p.x - q.x, p.y - q.y);
}

bool approx_equal(Point p, Point q, double eps) {
    return distance(p, q) <= eps;
}

bool approx_equal(Point p, Point q) {
    return approx_equal(p, q, tolerance().eps_abs);
}

Line make_line(double a, double b, double c) {
    double n = std::hypot(a, b);
    if (n == 0.0 || !std::isfinite(n)) {
        fail(Err::BadParameter, "line requires (a, b) != (0, 0)");
    }
    a /= n;
    b /= n;
    c /= n;
    // Sign convention: first nonzero of (a, b) positive. "Nonzero" is
    // tolerance-bounded so that round-off straddling zero canonicalizes
    // consistently.
    const double eps = 1e-12;
    bool flip = false;
    if (a > eps) {
        flip = false;
    } else if (a < -eps) {
        flip = true;
    } else {
        flip = b < 0.0;
    }
    if (flip) {
        a = -a;
        b = -b;
        c = -c;
    }
    return Line{a, b, c};
}

bool same_line(const Line& l1, const Line& l2, double eps) {
    return std::abs(l1.a - l2.a) <= eps && std::abs(l1.b - l2.b) <= eps &&
           std::abs(l1.c - l2.c) <= eps;
}

bool same_line(const Line& l1, const Line& l2) {
    return same_line(l1, l2, tolerance().eps_abs);
}

bool same_circle(const Circle& k1, const Circle& k2, double eps) {
    return approx_equal(k1.center, k2.center, eps) && std::abs(k1.radius - k2.radius) <= eps;
}

bool same_circle(const Circle& k1, const Circle& k2) {
    return same_circle(k1, k2, tolerance().eps_abs);
}

Line line_through(Point p, Point q) {
    if (distance(p, q) <= tolerance().eps_abs) {
        fail(Err::CoincidentPoints, "line_through requires distinct points");
    }
    double dx = q.x - p.x;
    double dy = q.y - p.y;
    // Normal (-dy, dx), offset fixed by incidence with p.
    return make_line(-dy, dx, dy * p.x - dx * p.y);
}

CircleOrPoint circle_from(Point a, Point b, Point c) {
    double r = distance(b, c);
    if (r <= tolerance().eps_abs) {
        return a; // k(a, b, b) = a, point repetition
    }
    return Circle{a, r};
}

LineMeet intersect_lines(const Line& l1, const Line& l2) {
    double det = l1.a * l2.b - l2.a * l1.b;
    if (std::abs(det) <= tolerance().eps_abs) {
        // Parallel within tolerance; identical iff offsets agree too.
        if (same_line(l1, l2)) {
            return Identical{};
        }
        // Canonical forms of the same line always match sign, but compare the
        // flipped form as well in case the direction sits on the sign cut.
        Line flipped{-l2.a, -l2.b, -l2.c};
        if (same_line(l1, flipped)) {
            return Identical{};
        }
        return Parallel{};
    }
    double x = (l1.b * l2.c - l2.b * l1.c) / det;
    double y = (l2.a * l1.c - l1.a * l2.c) / det;
    return Point{x, y};
}

namespace {

void sort_points(std::vector<Point>& pts) {
    std::sort(pts.begin(), pts.end(), [](const Point& p, const Point& q) {
        if (p.x != q.x) return p.x < q.x;
        return p.y < q.y;
    });
}

} // namespace

std::vector<Point> intersect_line_circle(const Line& l, const Circle& k) {
    const double eps = tolerance().eps_abs;
    // Canonical coefficients make eval() the signed distance to the line.
    double d = l.eval(k.center);
    Point foot{k.center.x - d * l.a, k.center.y - d * l.b};
    double gap = k.radius - std::abs(d);
    if (gap < -eps) {
        return {};
    }
    if (gap <= eps) {
        return {foot}; // tangent within tolerance: double solution collapses
    }
    double h = std::sqrt(k.radius * k.radius - d * d);
    Point dir{-l.b, l.a};
    std::vector<Point> pts{foot + h * dir, foot - h * dir};
    sort_points(pts);
    return pts;
}

std::vector<Point> intersect_circles(const Circle& k1, const Circle& k2) {
    const double eps = tolerance().eps_abs;
    if (same_circle(k1, k2)) {
        fail(Err::IdenticalCircles, "intersect_circles requires distinct circles");
    }
    double d = distance(k1.center, k2.center);
    if (d <= eps) {
        return {}; // concentric, distinct radii
    }
    // Radical-line reduction: a = distance from k1.center to the chord
    // midpoint along the center axis.
    double a = (d * d + k1.radius * k1.radius - k2.radius * k2.radius) / (2.0 * d);
    double h2 = k1.radius * k1.radius - a * a;
    Point u{(k2.center.x - k1.center.x) / d, (k2.center.y - k1.center.y) / d};
    Point mid = k1.center + a * u;
    if (h2 < 0.0 && std::abs(h2) > eps * (k1.radius + k2.radius)) {
        return {};
    }
    double h = h2 > 0.0 ? std::sqrt(h2) : 0.0;
    if (h <= eps) {
        return {mid}; // tangent circles
    }
    Point perp{-u.y, u.x};
    std::vector<Point> pts{mid + h * perp, mid - h * perp};
    sort_points(pts);
    return pts;
}

} // namespace ecs
