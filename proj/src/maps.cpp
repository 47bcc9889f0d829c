#include "ecs/maps.hpp"

#include <cmath>
#include <cstdlib>
#include <sstream>
#include <string>

namespace ecs {

namespace {

struct Affine {
    // p -> M p + t
    double m00 = 1, m01 = 0, m10 = 0, m11 = 1;
    double tx = 0, ty = 0;

    Point apply(Point p) const {
        return {m00 * p.x + m01 * p.y + tx, m10 * p.x + m11 * p.y + ty};
    }
    Affine inverted() const {
        double det = m00 * m11 - m01 * m10;
        Affine inv;
        inv.m00 = m11 / det;
        inv.m01 = -m01 / det;
        inv.m10 = -m10 / det;
        inv.m11 = m00 / det;
        inv.tx = -(inv.m00 * tx + inv.m01 * ty);
        inv.ty = -(inv.m10 * tx + inv.m11 * ty);
        return inv;
    }
};

Affine affine_of(const Scale& s) { return {s.alpha, 0, 0, s.alpha, 0, 0}; }
Affine affine_of(const Translate& t) { return {1, 0, 0, 1, t.dx, t.dy}; }
Affine affine_of(const Rotate& r) {
    double c = std::cos(r.theta), s = std::sin(r.theta);
    Affine a{c, -s, s, c, 0, 0};
    Point moved = a.apply(r.center);
    a.tx = r.center.x - moved.x;
    a.ty = r.center.y - moved.y;
    return a;
}
Affine affine_of(const Similarity& s) {
    return {s.ratio, 0, 0, s.ratio, (1 - s.ratio) * s.center.x, (1 - s.ratio) * s.center.y};
}

Line map_line_affine(const Affine& a, const Line& l) {
    Affine inv = a.inverted();
    // Image line = original composed with the inverse map.
    double na = l.a * inv.m00 + l.b * inv.m10;
    double nb = l.a * inv.m01 + l.b * inv.m11;
    double nc = l.a * inv.tx + l.b * inv.ty + l.c;
    return make_line(na, nb, nc);
}

// Rotation phi of the f_p family: turns f(c) to p around c.
struct RotationAboutC {
    Point c;
    double cos_t = 1, sin_t = 0;

    Affine forward() const {
        Affine a{cos_t, -sin_t, sin_t, cos_t, 0, 0};
        Point moved = a.apply(c);
        a.tx = c.x - moved.x;
        a.ty = c.y - moved.y;
        return a;
    }
};

RotationAboutC rotation_of(const StrommerRotated& fr) {
    Point c{fr.a, 0.0};
    Point u{1.0 / fr.a - fr.a, 0.0}; // f(c) - c
    Point v = fr.p - c;
    double nu = std::hypot(u.x, u.y), nv = std::hypot(v.x, v.y);
    RotationAboutC rot;
    rot.c = c;
    rot.cos_t = (u.x * v.x + u.y * v.y) / (nu * nv);
    rot.sin_t = (u.x * v.y - u.y * v.x) / (nu * nv);
    return rot;
}

bool on_y_axis(Point p) { return std::abs(p.x) <= tolerance().eps_abs; }

bool is_y_axis(const Line& l) {
    const double eps = tolerance().eps_abs;
    return std::abs(l.b) <= eps && std::abs(l.c) <= eps;
}

std::optional<Point> strommer_point(Point p) {
    if (on_y_axis(p)) {
        return std::nullopt;
    }
    return Point{1.0 / p.x, p.y / p.x};
}

// f((ax + by + c = 0) \ l0) = (a + by' + cx' = 0) \ l0.
LineImage strommer_line(const Line& l) {
    const double eps = tolerance().eps_abs;
    if (is_y_axis(l)) {
        fail(Err::ExcludedLine, "Strommer map is undefined on x = 0");
    }
    LineImage img;
    img.line = make_line(l.c, l.b, l.a);
    if (std::abs(l.b) > eps) {
        // Non-vertical source: the image line loses the point (0, -a/b) on l0.
        img.deleted = Point{0.0, -l.a / l.b};
    }
    return img;
}

} // namespace

Circle strommer_circle(double a) {
    if (!(a > 1.0)) {
        fail(Err::BadParameter, "Strommer circle requires a > 1");
    }
    return Circle{{a, 0.0}, std::sqrt(a * a - 1.0)};
}

Circle strommer_k0(double a) {
    if (!(a > 1.0)) {
        fail(Err::BadParameter, "k0 requires a > 1");
    }
    return Circle{{a, 0.0}, a - 1.0 / a};
}

PlaneMap strommer_rotated(double a, Point p) {
    Circle k0 = strommer_k0(a);
    if (std::abs(distance(p, k0.center) - k0.radius) > tolerance().eps_abs) {
        std::ostringstream os;
        os << "(" << p.x << ", " << p.y << ") is not on k0";
        fail(Err::PointNotOnK0, os.str());
    }
    return PlaneMap{StrommerRotated{a, p}};
}

PlaneMap strommer_rotated_angle(double a, double theta) {
    Circle k0 = strommer_k0(a);
    Point fc{1.0 / a, 0.0};
    Point u = fc - k0.center;
    double c = std::cos(theta), s = std::sin(theta);
    Point p{k0.center.x + c * u.x - s * u.y, k0.center.y + s * u.x + c * u.y};
    return PlaneMap{StrommerRotated{a, p}};
}

PlaneMap transfer_map(const Circle& k, const Circle& k_prime) {
    Composite g;
    g.maps.push_back(PlaneMap{Similarity{k_prime.center, k_prime.radius / k.radius}});
    g.maps.push_back(PlaneMap{Translate{k_prime.center.x - k.center.x,
                                        k_prime.center.y - k.center.y}});
    return PlaneMap{std::move(g)};
}

std::optional<Point> apply_point(const PlaneMap& m, Point p) {
    return std::visit(
        [&](const auto& v) -> std::optional<Point> {
            using T = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<T, Scale> || std::is_same_v<T, Translate> ||
                          std::is_same_v<T, Rotate> || std::is_same_v<T, Similarity>) {
                return affine_of(v).apply(p);
            } else if constexpr (std::is_same_v<T, Strommer>) {
                return strommer_point(p);
            } else if constexpr (std::is_same_v<T, StrommerRotated>) {
                auto q = strommer_point(p);
                if (!q) return std::nullopt;
                return rotation_of(v).forward().apply(*q);
            } else { // Composite, last entry applied first
                Point cur = p;
                for (auto it = v.maps.rbegin(); it != v.maps.rend(); ++it) {
                    auto next = apply_point(*it, cur);
                    if (!next) return std::nullopt;
                    cur = *next;
                }
                return cur;
            }
        },
        m.v);
}

LineImage apply_line(const PlaneMap& m, const Line& l) {
    return std::visit(
        [&](const auto& v) -> LineImage {
            using T = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<T, Scale> || std::is_same_v<T, Translate> ||
                          std::is_same_v<T, Rotate> || std::is_same_v<T, Similarity>) {
                return {map_line_affine(affine_of(v), l), std::nullopt};
            } else if constexpr (std::is_same_v<T, Strommer>) {
                return strommer_line(l);
            } else if constexpr (std::is_same_v<T, StrommerRotated>) {
                LineImage img = strommer_line(l);
                Affine phi = rotation_of(v).forward();
                img.line = map_line_affine(phi, img.line);
                if (img.deleted) {
                    img.deleted = phi.apply(*img.deleted);
                }
                return img;
            } else { // Composite
                LineImage img{l, std::nullopt};
                for (auto it = v.maps.rbegin(); it != v.maps.rend(); ++it) {
                    LineImage next = apply_line(*it, img.line);
                    std::optional<Point> carried;
                    if (img.deleted) {
                        carried = apply_point(*it, *img.deleted);
                    }
                    img.line = next.line;
                    img.deleted = next.deleted ? next.deleted : carried;
                }
                return img;
            }
        },
        m.v);
}

namespace {

std::vector<double> split_numbers(const std::string& text, char sep) {
    std::vector<double> out;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        std::size_t next = text.find(sep, pos);
        std::string part = text.substr(pos, next == std::string::npos ? next : next - pos);
        if (part.empty()) {
            fail(Err::BadParameter, "empty number in map name");
        }
        char* end = nullptr;
        double v = std::strtod(part.c_str(), &end);
        if (end != part.c_str() + part.size()) {
            fail(Err::BadParameter, "bad number '" + part + "' in map name");
        }
        out.push_back(v);
        if (next == std::string::npos) break;
        pos = next + 1;
    }
    return out;
}

Circle circle_from_triplet(const std::string& text) {
    std::vector<double> v = split_numbers(text, ',');
    if (v.size() != 3 || !(v[2] > 0)) {
        fail(Err::BadParameter, "circle spec must be cx,cy,r with r > 0");
    }
    return Circle{{v[0], v[1]}, v[2]};
}

} // namespace

PlaneMap parse_map_name(const std::string& name) {
    std::size_t colon = name.find(':');
    if (colon == std::string::npos) {
        fail(Err::BadParameter, "map name must look like kind:args");
    }
    std::string kind = name.substr(0, colon);
    std::string rest = name.substr(colon + 1);
    if (kind == "scale") {
        std::vector<double> v = split_numbers(rest, ':');
        if (v.size() != 1 || !(v[0] > 0)) {
            fail(Err::BadParameter, "scale needs one positive number");
        }
        return PlaneMap{Scale{v[0]}};
    }
    if (kind == "strommer") {
        std::vector<double> v = split_numbers(rest, ':');
        if (v.size() == 1) {
            if (!(v[0] > 1)) fail(Err::BadParameter, "strommer needs a > 1");
            return PlaneMap{Strommer{v[0]}};
        }
        if (v.size() == 2) {
            return strommer_rotated_angle(v[0], v[1]);
        }
        fail(Err::BadParameter, "strommer takes a or a:theta");
    }
    if (kind == "transfer") {
        std::size_t arrow = rest.find("->");
        if (arrow == std::string::npos) {
            fail(Err::BadParameter, "transfer needs cx,cy,r->cx,cy,r");
        }
        Circle from = circle_from_triplet(rest.substr(0, arrow));
        Circle to = circle_from_triplet(rest.substr(arrow + 2));
        return transfer_map(from, to);
    }
    fail(Err::BadParameter, "unknown map kind '" + kind + "'");
}

PlaneMap inverse(const PlaneMap& m) {
    return std::visit(
        [&](const auto& v) -> PlaneMap {
            using T = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<T, Scale>) {
                return PlaneMap{Scale{1.0 / v.alpha}};
            } else if constexpr (std::is_same_v<T, Translate>) {
                return PlaneMap{Translate{-v.dx, -v.dy}};
            } else if constexpr (std::is_same_v<T, Rotate>) {
                return PlaneMap{Rotate{v.center, -v.theta}};
            } else if constexpr (std::is_same_v<T, Similarity>) {
                return PlaneMap{Similarity{v.center, 1.0 / v.ratio}};
            } else if constexpr (std::is_same_v<T, Strommer>) {
                return m; // involution
            } else if constexpr (std::is_same_v<T, StrommerRotated>) {
                // f_p^-1 = f o phi^-1
                RotationAboutC rot = rotation_of(v);
                double theta = std::atan2(rot.sin_t, rot.cos_t);
                Composite out;
                out.maps.push_back(PlaneMap{Strommer{v.a}});
                out.maps.push_back(PlaneMap{Rotate{rot.c, -theta}});
                return PlaneMap{std::move(out)};
            } else { // Composite: reversed chain of inverses
                Composite out;
                for (auto it = v.maps.rbegin(); it != v.maps.rend(); ++it) {
                    out.maps.push_back(inverse(*it));
                }
                return PlaneMap{std::move(out)};
            }
        },
        m.v);
}

} // namespace ecs
