#pragma once

#include <optional>
#include <variant>
#include <vector>

#include "ecs/geom.hpp"

namespace ecs {

struct PlaneMap;

struct Scale {
    double alpha = 1.0; // p -> alpha * p, alpha > 0
};
struct Translate {
    double dx = 0.0;
    double dy = 0.0;
};
struct Rotate {
    Point center;
    double theta = 0.0; // radians, counter-clockwise
};
struct Similarity {
    Point center;
    double ratio = 1.0; // > 0
};
// Strommer's partial involution (x, y) -> (1/x, y/x), undefined on the
// y-axis l0 = (x = 0). For a > 1 it fixes the circle (x-a)^2 + y^2 = a^2 - 1
// while moving its center.
struct Strommer {
    double a = 2.0;
};
// f_p = phi o f where phi rotates the plane around c = (a, 0) moving
// f(c) = (1/a, 0) to p; p must lie on k0 (center c, radius |c f(c)|).
struct StrommerRotated {
    double a = 2.0;
    Point p;
};
// Function-composition order: Composite{f, g} means f o g, so the last
// entry is applied first.
struct Composite {
    std::vector<PlaneMap> maps;
};

struct PlaneMap {
    std::variant<Scale, Translate, Rotate, Similarity, Strommer, StrommerRotated, Composite> v;
};

// Image of a line under a partial map: the unique line containing the image,
// plus the point deleted from it (empty when the source is parallel to the
// excluded line, or for total maps).
struct LineImage {
    Line line;
    std::optional<Point> deleted;
};

// nullopt when p lies on the map's excluded line.
std::optional<Point> apply_point(const PlaneMap& m, Point p);

// Throws ExcludedLine when l is the map's excluded line itself.
LineImage apply_line(const PlaneMap& m, const Line& l);

PlaneMap inverse(const PlaneMap& m);

// The circle (x-a)^2 + y^2 = a^2 - 1 fixed by Strommer's map; a > 1.
Circle strommer_circle(double a);

// The concentric circle k0 of radius |c f(c)| = a - 1/a carrying the
// rotation targets p of the f_p family.
Circle strommer_k0(double a);

// Validates p against k0 (throws PointNotOnK0).
PlaneMap strommer_rotated(double a, Point p);

// Convenience: p given by the counter-clockwise rotation angle moving f(c).
PlaneMap strommer_rotated_angle(double a, double theta);

// g = s1 o s2 moving circle k onto k' and center to center.
PlaneMap transfer_map(const Circle& k, const Circle& k_prime);

// CLI map names: "scale:a", "strommer:a", "strommer:a:theta" (p given by the
// rotation angle), "transfer:cx,cy,r->cx,cy,r". Throws BadParameter.
PlaneMap parse_map_name(const std::string& name);

} // namespace ecs
