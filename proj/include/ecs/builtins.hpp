#pragma once

#include "ecs/maps.hpp"
#include "ecs/model.hpp"

namespace ecs {

// Parameters of the concrete dense-subset family on the circle
// (x - 3/2)^2 + y^2 = 5/4. The denominator 5 - 2a + a^2 has negative
// discriminant, so beta and gamma are defined for every real alpha.
struct YSetParams {
    double alpha = 0.0;
    double beta = 0.0;  // (2 + 2a^2) / (5 - 2a + a^2)
    double gamma = 0.0; // (1 + 4a - a^2) / (5 - 2a + a^2)

    explicit YSetParams(double alpha_value);
};

// Rational parametrization of the circle through (2, 1): the second
// intersection of the chord through (2, 1) and (0, alpha).
Point y0_point(double alpha);

// p(alpha) = f(phi^-1(y0(alpha))) with phi the rotation around (3/2, 0) by
// angle 1; evaluated by the closed formula. Throws DegenerateDenominator.
Point y_set_point(double alpha);

// Same point computed through the deformation-map route (the f_p^-1 chain);
// agrees with y_set_point to 1e-12.
Point y_set_point_via_maps(double alpha);

// ============================================================================
// Program factories
// ============================================================================

// Compass-only program: two arbitrary points from unit discs at (0, 0) and
// (0, 3), circles around both, one intersection, both base points repeated.
// Every leaf ends with an equilateral triple.
ConstructionProgram equilateral_triangle_program();

// Deterministic general program whose final letter is the perpendicular
// bisector of p1 p2. Throws CoincidentPoints.
ConstructionProgram bisector_program(Point p1, Point p2);

// General program over horizontal-segment locations, from the empty root,
// ending with two points at distance exactly 1.
ConstructionProgram unit_length_program();

// Straightedge program over horizontal-segment locations constructing the
// center of k. The first segment height equals the center's y-coordinate,
// which is exactly the extra power of U-arbitrary points.
ConstructionProgram center_via_u_program(const Circle& k);

// Non-uniform general program over horizontal-segment locations from the
// empty root, ending at the origin. The mirror-line location depends on the
// chosen points; inadmissible draws raise GeometricFailure (resample).
ConstructionProgram origin_program();

// Builtin lookup used by the CLI: equilateral, bisector, unit-length,
// center-via-u, origin (nullopt for unknown names). Program plus the target
// its traces are checked against.
struct Builtin {
    ConstructionProgram program;
    Target target;
};
std::optional<Builtin> find_builtin(const std::string& name);

} // namespace ecs
