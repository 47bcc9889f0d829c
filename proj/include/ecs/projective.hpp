#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <variant>
#include <vector>

#include "ecs/geom.hpp"

namespace ecs {

// ============================================================================
// Sphere-model primitives
// ============================================================================

struct Vec3 {
    double x = 0, y = 0, z = 0;

    friend Vec3 operator+(Vec3 a, Vec3 b) { return {a.x + b.x, a.y + b.y, a.z + b.z}; }
    friend Vec3 operator-(Vec3 a, Vec3 b) { return {a.x - b.x, a.y - b.y, a.z - b.z}; }
    friend Vec3 operator*(double s, Vec3 a) { return {s * a.x, s * a.y, s * a.z}; }
};

double dot(Vec3 a, Vec3 b);
Vec3 cross(Vec3 a, Vec3 b);
double norm(Vec3 a);

// Unit representative with canonical sign: the last nonzero coordinate is
// positive, so antipodal representatives collapse to one value.
struct ProjPoint {
    Vec3 v;
};

struct ProjLine {
    Vec3 n; // unit normal, canonical sign
};

// |<x, axis>| = level, 0 < level < 1. The center is {axis, -axis}.
struct ProjCircle {
    Vec3 axis;
    double level = 0;
};

// |<x, axis>| > level.
struct ProjDisc {
    Vec3 axis;
    double level = 0;
};

// Throw ZeroTriple on the zero vector.
ProjPoint make_proj_point(double x, double y, double z);
ProjLine make_proj_line(double x, double y, double z);

bool proj_equal(const ProjPoint& p, const ProjPoint& q, double eps);
bool proj_equal(const ProjPoint& p, const ProjPoint& q);

// Spherical distance of projective points (minimum over representatives),
// in [0, pi/2].
double proj_distance(const ProjPoint& p, const ProjPoint& q);

bool on_proj_circle(const ProjCircle& k, const ProjPoint& p, double eps);
bool in_proj_disc(const ProjDisc& d, const ProjPoint& p);

// ============================================================================
// Incidence operations
// ============================================================================

ProjLine proj_line_through(const ProjPoint& p, const ProjPoint& q); // CoincidentPoints
ProjPoint proj_intersect_lines(const ProjLine& l1, const ProjLine& l2); // IdenticalLines

// Projective intersection points (antipodal sphere solutions merged),
// sorted lexicographically by canonical representative; 0, 1, or 2 entries.
std::vector<ProjPoint> proj_intersect_line_circle(const ProjLine& l, const ProjCircle& k);
// Sphere-point expansion: up to 4 unit vectors.
std::vector<Vec3> proj_intersect_line_circle_sphere(const ProjLine& l, const ProjCircle& k);

// k(p, q, r): circle with center p and spherical radius d(q, r); the
// degenerate case q = r yields p itself. Throws LevelOutOfRange when the
// radius reaches pi/2.
using ProjCircleOrPoint = std::variant<ProjCircle, ProjPoint>;
ProjCircleOrPoint proj_circle_from(const ProjPoint& p, const ProjPoint& q, const ProjPoint& r);

// ============================================================================
// The F bijection onto the plane/line/point model
// ============================================================================

// Representative in P2' : (x/z, y/z, 1), or (x/y, 1, 0), or (1, 0, 0).
std::array<double, 3> F_rep(const ProjPoint& p);
ProjPoint F_inv(double x, double y, double z);

// ============================================================================
// The homogeneous involution and its family
// ============================================================================

struct Mat3 {
    std::array<double, 9> m{1, 0, 0, 0, 1, 0, 0, 0, 1}; // row-major
    Vec3 apply(Vec3 v) const;
};

Mat3 mat_mul(const Mat3& a, const Mat3& b);
Mat3 transposed(const Mat3& a);
Mat3 rotation_z(double theta);
// Rotation moving unit vector `from` to unit vector `to`.
Mat3 rotation_between(Vec3 from, Vec3 to);

// (x : y : z) -> (-sqrt2 x - z : y : x + sqrt2 z). Throws ZeroTriple.
std::array<double, 3> f0_bar(const std::array<double, 3>& h);
Mat3 f0_bar_matrix();

// The shift-conjugated family for a > 1; a = sqrt2 reduces to f0_bar.
// Throws BadParameter.
Mat3 general_f0_matrix(double a);

// f_pr = F^-1 o f0_bar o F as a map of projective points.
ProjPoint f_pr(const ProjPoint& p);
// tau_theta o f_pr with tau the rotation about the z-axis.
ProjPoint f_pr_rotated(const ProjPoint& p, double theta);
// Inverse of the rotated map: f_pr o tau_{-theta}.
ProjPoint f_pr_rotated_inverse(const ProjPoint& p, double theta);

// The canonical projective circle x^2 + y^2 = 1/2 (axis z, level 1/sqrt2),
// its center (the poles), and the image c' = f_pr(center).
ProjCircle canonical_proj_circle();
ProjPoint proj_poles();
ProjPoint proj_center_image();

// The rotation angle about z moving c' to p, for p on the circle through c'
// around the poles. Throws PointNotOnK0.
double rotation_angle_for(const ProjPoint& p);

// Rotation sending circle k to k' (equal levels within tolerance; throws
// LevelMismatch).
Mat3 proj_transfer(const ProjCircle& k, const ProjCircle& k_prime);

// ============================================================================
// Invariant battery + adversary demonstration
// ============================================================================

struct ProjCheck {
    std::string name;
    bool pass = false;
    std::string detail;
};

// The full projective invariant battery (used by tests and the CLI).
std::vector<ProjCheck> proj_invariant_battery(std::uint64_t seed);

// Desk-scale projective Hilbert demonstration: a randomized straightedge
// trace over projective discs whose arbitrary points come from the
// f_pr-transported rational-class set; reports the minimal distance of any
// point letter to the center.
struct ProjAdversaryResult {
    int point_letters = 0;
    double min_center_distance = 0;
    bool avoided = false;
};
ProjAdversaryResult proj_adversary_demo(std::uint64_t seed, int steps);

} // namespace ecs
