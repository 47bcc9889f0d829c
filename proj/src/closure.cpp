#include "ecs/closure.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>
#include <unordered_map>
#include <unordered_set>

namespace ecs {

// ============================================================================
// Tolerance-bucketed point index
// ============================================================================

namespace {

class PointIndex {
public:
    explicit PointIndex(double cell) : cell_(cell) {}

    int find(const std::vector<Point>& pts, Point p, double eps) const {
        long long cx = static_cast<long long>(std::floor(p.x / cell_));
        long long cy = static_cast<long long>(std::floor(p.y / cell_));
        for (long long dx = -1; dx <= 1; ++dx) {
            for (long long dy = -1; dy <= 1; ++dy) {
                auto it = cells_.find(key(cx + dx, cy + dy));
                if (it == cells_.end()) continue;
                for (int idx : it->second) {
                    if (approx_equal(pts[idx], p, eps)) {
                        return idx;
                    }
                }
            }
        }
        return -1;
    }

    void insert(Point p, int idx) {
        long long cx = static_cast<long long>(std::floor(p.x / cell_));
        long long cy = static_cast<long long>(std::floor(p.y / cell_));
        cells_[key(cx, cy)].push_back(idx);
    }

private:
    static std::uint64_t key(long long cx, long long cy) {
        return static_cast<std::uint64_t>(cx) * 0x9e3779b97f4a7c15ull ^
               static_cast<std::uint64_t>(cy) * 0xc2b2ae3d27d4eb4full;
    }

    double cell_;
    std::unordered_map<std::uint64_t, std::vector<int>> cells_;
};

double dedupe_eps() { return tolerance().eps_abs; }

} // namespace

bool PointSet::contains(Point p) const {
    const double eps = dedupe_eps();
    for (const Point& q : points) {
        if (approx_equal(q, p, eps)) return true;
    }
    return false;
}

PointSet make_point_set(const std::vector<Point>& pts) {
    PointSet set;
    PointIndex index(std::max(dedupe_eps(), 1e-9) * 4);
    for (const Point& p : pts) {
        if (index.find(set.points, p, dedupe_eps()) >= 0) continue;
        index.insert(p, static_cast<int>(set.points.size()));
        set.points.push_back(p);
        set.provenance.push_back({ClosureProvenance::Op::Seed, {}});
    }
    set.seed_size = set.points.size();
    return set;
}

PointSet read_point_set(std::istream& in) {
    std::vector<Point> pts;
    double x, y;
    while (in >> x >> y) {
        pts.push_back({x, y});
    }
    return make_point_set(pts);
}

void write_point_set(std::ostream& out, const PointSet& set) {
    char buf[96];
    for (const Point& p : set.points) {
        std::snprintf(buf, sizeof(buf), "%.17g %.17g\n", p.x, p.y);
        out << buf;
    }
}

// ============================================================================
// Closure generation
// ============================================================================

namespace {

struct ClosureState {
    PointSet set;
    PointIndex index;
    std::size_t cap;
    long long op_budget = 200000000; // safety valve for tuple enumeration

    ClosureState(const PointSet& seed, std::size_t cap_points)
        : set(seed), index(std::max(dedupe_eps(), 1e-9) * 4), cap(cap_points) {
        for (std::size_t i = 0; i < set.points.size(); ++i) {
            index.insert(set.points[i], static_cast<int>(i));
        }
    }

    void spend(long long ops) {
        op_budget -= ops;
        if (op_budget < 0) {
            fail(Err::SizeLimit, "closure tuple enumeration exceeded the op budget");
        }
    }

    void add(Point p, ClosureProvenance prov) {
        if (index.find(set.points, p, dedupe_eps()) >= 0) return;
        if (set.points.size() >= cap) {
            std::ostringstream os;
            os << "closure exceeded the cap of " << cap << " points";
            fail(Err::SizeLimit, os.str());
        }
        index.insert(p, static_cast<int>(set.points.size()));
        set.points.push_back(p);
        set.provenance.push_back(std::move(prov));
    }
};

struct GenLine {
    Line line;
    int a, b; // generating point indices
};

struct GenCircle {
    Circle circle;
    int e, f, g; // center index, radius pair
};

// Distinct lines through point pairs of the current set.
std::vector<GenLine> collect_lines(const ClosureState& st, long long* ops) {
    std::vector<GenLine> lines;
    std::unordered_set<std::uint64_t> seen;
    const auto& pts = st.set.points;
    int n = static_cast<int>(pts.size());
    *ops += static_cast<long long>(n) * n / 2;
    for (int i = 0; i < n; ++i) {
        for (int j = i + 1; j < n; ++j) {
            if (approx_equal(pts[i], pts[j])) continue;
            Line l = line_through(pts[i], pts[j]);
            std::uint64_t h = std::hash<long long>{}(std::llround(l.a * 1e12)) ^
                              std::hash<long long>{}(std::llround(l.b * 1e12)) * 31 ^
                              std::hash<long long>{}(std::llround(l.c * 1e12)) * 131;
            if (!seen.insert(h).second) continue;
            lines.push_back({l, i, j});
        }
    }
    return lines;
}

std::vector<GenCircle> collect_circles(const ClosureState& st, long long* ops) {
    std::vector<GenCircle> circles;
    std::unordered_set<std::uint64_t> seen;
    const auto& pts = st.set.points;
    int n = static_cast<int>(pts.size());
    *ops += static_cast<long long>(n) * n * n / 2;
    for (int e = 0; e < n; ++e) {
        for (int f = 0; f < n; ++f) {
            for (int g = f + 1; g < n; ++g) {
                double r = distance(pts[f], pts[g]);
                if (r <= dedupe_eps()) continue;
                std::uint64_t h = (static_cast<std::uint64_t>(e) << 40) ^
                                  std::hash<long long>{}(std::llround(r * 1e12));
                if (!seen.insert(h).second) continue;
                circles.push_back({Circle{pts[e], r}, e, f, g});
            }
        }
    }
    return circles;
}

void close_once_e(ClosureState& st) {
    long long ops = 0;
    std::vector<GenLine> lines = collect_lines(st, &ops);
    std::vector<GenCircle> circles = collect_circles(st, &ops);
    ops += static_cast<long long>(lines.size()) * lines.size() / 2;
    ops += static_cast<long long>(lines.size()) * circles.size();
    ops += static_cast<long long>(circles.size()) * circles.size() / 2;
    st.spend(ops);

    for (std::size_t i = 0; i < lines.size(); ++i) {
        for (std::size_t j = i + 1; j < lines.size(); ++j) {
            LineMeet m = intersect_lines(lines[i].line, lines[j].line);
            if (const auto* p = std::get_if<Point>(&m)) {
                st.add(*p, {ClosureProvenance::Op::LineLine,
                            {lines[i].a, lines[i].b, lines[j].a, lines[j].b}});
            }
        }
    }
    for (const GenLine& l : lines) {
        for (const GenCircle& k : circles) {
            for (const Point& p : intersect_line_circle(l.line, k.circle)) {
                st.add(p, {ClosureProvenance::Op::LineCircle, {l.a, l.b, k.e, k.f, k.g}});
            }
        }
    }
    for (std::size_t i = 0; i < circles.size(); ++i) {
        for (std::size_t j = i + 1; j < circles.size(); ++j) {
            if (same_circle(circles[i].circle, circles[j].circle)) continue;
            for (const Point& p : intersect_circles(circles[i].circle, circles[j].circle)) {
                st.add(p, {ClosureProvenance::Op::CircleCircle,
                           {circles[i].e, circles[i].f, circles[i].g, circles[j].e,
                            circles[j].f, circles[j].g}});
            }
        }
    }
}

void close_once_h(ClosureState& st, const Circle& k) {
    long long ops = 0;
    std::vector<GenLine> lines = collect_lines(st, &ops);
    ops += static_cast<long long>(lines.size()) * lines.size() / 2;
    ops += static_cast<long long>(lines.size());
    st.spend(ops);

    for (std::size_t i = 0; i < lines.size(); ++i) {
        for (std::size_t j = i + 1; j < lines.size(); ++j) {
            LineMeet m = intersect_lines(lines[i].line, lines[j].line);
            if (const auto* p = std::get_if<Point>(&m)) {
                st.add(*p, {ClosureProvenance::Op::LineLine,
                            {lines[i].a, lines[i].b, lines[j].a, lines[j].b}});
            }
        }
    }
    for (const GenLine& l : lines) {
        for (const Point& p : intersect_line_circle(l.line, k)) {
            st.add(p, {ClosureProvenance::Op::FixedCircle, {l.a, l.b}});
        }
    }
}

} // namespace

PointSet e_closure(const PointSet& seed, int depth, std::size_t cap) {
    if (seed.size() < 2) {
        fail(Err::BadParameter, "e_closure needs at least 2 seed points");
    }
    ClosureState st(seed, cap);
    for (int d = 0; d < depth; ++d) {
        close_once_e(st);
    }
    st.set.kind = "e";
    st.set.depth = depth;
    st.set.seed_size = seed.size();
    return std::move(st.set);
}

PointSet h_closure(const PointSet& seed, const Circle& k, int depth, std::size_t cap) {
    if (seed.size() < 2) {
        fail(Err::BadParameter, "h_closure needs at least 2 seed points");
    }
    ClosureState st(seed, cap);
    for (int d = 0; d < depth; ++d) {
        close_once_h(st, k);
    }
    st.set.kind = "h";
    st.set.depth = depth;
    st.set.seed_size = seed.size();
    return std::move(st.set);
}

std::optional<std::size_t> audit_closure_provenance(const PointSet& set) {
    const double eps = 10 * tolerance().eps_abs;
    auto reproduced = [&](std::size_t i) -> bool {
        const auto& prov = set.provenance[i];
        const auto& ops = prov.operands;
        const Point& expect = set.points[i];
        auto pt = [&](int idx) { return set.points[idx]; };
        switch (prov.op) {
            case ClosureProvenance::Op::Seed:
                return true;
            case ClosureProvenance::Op::LineLine: {
                LineMeet m = intersect_lines(line_through(pt(ops[0]), pt(ops[1])),
                                             line_through(pt(ops[2]), pt(ops[3])));
                const auto* p = std::get_if<Point>(&m);
                return p && approx_equal(*p, expect, eps);
            }
            case ClosureProvenance::Op::LineCircle: {
                Circle k{pt(ops[2]), distance(pt(ops[3]), pt(ops[4]))};
                for (const Point& p :
                     intersect_line_circle(line_through(pt(ops[0]), pt(ops[1])), k)) {
                    if (approx_equal(p, expect, eps)) return true;
                }
                return false;
            }
            case ClosureProvenance::Op::CircleCircle: {
                Circle k1{pt(ops[0]), distance(pt(ops[1]), pt(ops[2]))};
                Circle k2{pt(ops[3]), distance(pt(ops[4]), pt(ops[5]))};
                for (const Point& p : intersect_circles(k1, k2)) {
                    if (approx_equal(p, expect, eps)) return true;
                }
                return false;
            }
            case ClosureProvenance::Op::FixedCircle:
                // The fixed circle is not stored in the set; incidence with
                // the generating line is the checkable half.
                return std::abs(line_through(pt(ops[0]), pt(ops[1])).eval(expect)) <= eps;
        }
        return false;
    };
    for (std::size_t i = 0; i < set.size(); ++i) {
        if (!reproduced(i)) return i;
    }
    return std::nullopt;
}

// ============================================================================
// Avoidance selections
// ============================================================================

ScaledSet scale_avoiding_unit(const PointSet& base, double delta) {
    if (base.size() < 2) {
        fail(Err::BadParameter, "scale_avoiding_unit needs at least 2 points");
    }
    if (base.size() > 5000) {
        fail(Err::SizeLimit, "pairwise inverse-distance set too large");
    }
    std::vector<double> inv; // the finite M-set
    for (std::size_t i = 0; i < base.size(); ++i) {
        for (std::size_t j = i + 1; j < base.size(); ++j) {
            double d = distance(base.points[i], base.points[j]);
            if (d > 0) inv.push_back(1.0 / d);
        }
    }
    std::sort(inv.begin(), inv.end());

    auto verify = [&](double alpha) {
        for (std::size_t i = 0; i < base.size(); ++i) {
            for (std::size_t j = i + 1; j < base.size(); ++j) {
                if (std::abs(alpha * distance(base.points[i], base.points[j]) - 1.0) <= 1e-9) {
                    return false;
                }
            }
        }
        return true;
    };

    std::vector<double> candidates;
    // Midpoints of gaps in M, widest first.
    std::vector<std::pair<double, double>> gaps; // (width, midpoint)
    for (std::size_t i = 0; i + 1 < inv.size(); ++i) {
        double w = inv[i + 1] - inv[i];
        if (w > 2 * delta) gaps.push_back({w, inv[i] + w / 2});
    }
    std::sort(gaps.rbegin(), gaps.rend());
    for (const auto& g : gaps) candidates.push_back(g.second);
    // Values beyond max(M) always satisfy the gap condition.
    for (int j = 0; j < 64; ++j) {
        candidates.push_back(inv.back() + 1.0 + 0.618 * j);
    }

    for (double alpha : candidates) {
        if (alpha <= 0) continue;
        bool gap_ok = true;
        for (double m : inv) {
            if (std::abs(alpha - m) <= delta) {
                gap_ok = false;
                break;
            }
        }
        if (!gap_ok || !verify(alpha)) continue;
        ScaledSet out;
        out.alpha = alpha;
        out.scaled = base;
        for (Point& p : out.scaled.points) {
            p = alpha * p;
        }
        return out;
    }
    fail(Err::NoGapFound, "no admissible scale found; raise the delta search range");
}

ShiftedSet translate_avoiding_origin(const PointSet& base) {
    if (base.size() < 1) {
        fail(Err::BadParameter, "translate_avoiding_origin needs at least 1 point");
    }
    auto verify = [&](Point t, double margin) {
        for (const Point& p : base.points) {
            if (std::hypot(p.x + t.x, p.y + t.y) <= margin) return false;
        }
        return true;
    };
    std::vector<Point> candidates{{1, 0}};
    for (int j = 0; j < 64; ++j) {
        candidates.push_back({0.5 + std::fmod(0.618 * j, 2.7), 0.25 + std::fmod(0.318 * j, 1.9)});
    }
    for (Point t : candidates) {
        if (verify(t, 1e-6)) {
            ShiftedSet out;
            out.map = PlaneMap{Translate{t.x, t.y}};
            out.shift = t;
            out.shifted = base;
            for (Point& p : out.shifted.points) {
                p = p + t;
            }
            return out;
        }
    }
    fail(Err::NoGapFound, "no origin-avoiding shift found");
}

// ============================================================================
// Lattice-snap providers
// ============================================================================

namespace {

// Shared mechanism: candidates inside the requested disc are pulled back to
// the base world, snapped to a dyadic lattice, and mapped forward again. The
// snapped lattice point is the provenance certificate of membership in the
// conceptual avoid-set.
class LatticeSnapProvider : public XProvider {
public:
    LatticeSnapProvider(PlaneMap world_from_base, PlaneMap base_from_world,
                        std::optional<Point> anchor, std::string description)
        : world_from_base_(std::move(world_from_base)),
          base_from_world_(std::move(base_from_world)),
          anchor_(anchor),
          description_(std::move(description)) {}

    Point point_in(const Location& loc) override {
        const auto* disc = std::get_if<Disc>(&loc);
        if (!disc) {
            fail(Err::UnsupportedLocation,
                 "provider contract requires Disc locations (classical system D)");
        }
        ++stats_.calls;
        const double margin_pref = std::min(1e-6, disc->radius / 4.0);
        double h = 0.125;
        for (int refinement = 0; refinement < 80; ++refinement, h /= 2) {
            if (refinement > 0) ++stats_.refinements;
            double relax = refinement < 40 ? margin_pref : 1e-9;
            for (const Point& cand : candidates(*disc)) {
                auto base = apply_point(base_from_world_, cand);
                if (!base) continue;
                Point snapped{std::round(base->x / h) * h, std::round(base->y / h) * h};
                auto world = apply_point(world_from_base_, snapped);
                if (!world) continue;
                if (distance(*world, disc->center) >= disc->radius * (1 - 1e-12)) continue;
                if (anchor_ && distance(*world, *anchor_) <= relax) continue;
                if (anchor_) {
                    double d = distance(*world, *anchor_);
                    if (stats_.min_anchor_distance < 0 || d < stats_.min_anchor_distance) {
                        stats_.min_anchor_distance = d;
                    }
                }
                return *world;
            }
        }
        fail(Err::LocationUnreachable,
             "no lattice point maps into the location at any refinement; refine the grid");
    }

    std::string describe() const override { return description_; }

private:
    static std::vector<Point> candidates(const Disc& d) {
        std::vector<Point> out{d.center};
        for (double frac : {0.5, 0.75, 0.25}) {
            for (int k = 0; k < 8; ++k) {
                double ang = 2.0 * M_PI * k / 8.0 + (frac == 0.75 ? M_PI / 8 : 0);
                out.push_back({d.center.x + frac * d.radius * std::cos(ang),
                               d.center.y + frac * d.radius * std::sin(ang)});
            }
        }
        return out;
    }

    PlaneMap world_from_base_;
    PlaneMap base_from_world_;
    std::optional<Point> anchor_;
    std::string description_;
};

PointSet dyadic_seed_grid() {
    std::vector<Point> pts;
    for (double x : {0.0, 0.5, 1.0}) {
        for (double y : {0.0, 0.5, 1.0}) {
            pts.push_back({x, y});
        }
    }
    return make_point_set(pts);
}

} // namespace

std::unique_ptr<XProvider> hilbert_x_provider(const Circle& k, int depth, std::uint64_t) {
    const double a = 2.0; // canonical Strommer parameter
    Circle canonical = strommer_circle(a);
    // p on k0 at the transcendental rotation angle 1; p lies outside every
    // rational-coordinate base set, which is what keeps f_p^-1(base) off c.
    PlaneMap fp = strommer_rotated_angle(a, 1.0);
    PlaneMap fp_inv = inverse(fp);
    PlaneMap g = transfer_map(canonical, k);
    PlaneMap g_inv = inverse(g);

    Composite world_from_base; // g o f_p^-1
    world_from_base.maps.push_back(g);
    world_from_base.maps.push_back(fp_inv);
    Composite base_from_world; // f_p o g^-1
    base_from_world.maps.push_back(fp);
    base_from_world.maps.push_back(g_inv);

    std::ostringstream os;
    os << "Hilbert adversary: points g(f_p^-1(q)) for dyadic lattice points q, "
          "canonical a = 2, rotation angle 1, transferred to circle ((" << k.center.x << ", "
       << k.center.y << "), r = " << k.radius << "). Finite desk-scale approximation of the "
          "H-closed avoid-set (conceptual base: algebraic points, here a rational lattice "
          "closed to depth " << depth << "); the theorem's universal claim over all branches "
          "is demonstrated, not reproduced.";
    return std::make_unique<LatticeSnapProvider>(PlaneMap{world_from_base},
                                                 PlaneMap{base_from_world}, k.center, os.str());
}

std::unique_ptr<XProvider> unit_avoiding_provider(int depth, std::uint64_t) {
    PointSet preview = e_closure(dyadic_seed_grid(), std::min(depth, 1), 20000);
    ScaledSet pick = scale_avoiding_unit(preview);
    std::ostringstream os;
    os << "Unit-distance adversary: points alpha * q for dyadic lattice points q, alpha = "
       << pick.alpha << " chosen off the inverse-distance set M of a depth-"
       << std::min(depth, 1) << " closure preview (" << preview.size()
       << " points). Finite desk-scale approximation; pairwise distances are audited "
          "against 1 after every run.";
    return std::make_unique<LatticeSnapProvider>(PlaneMap{Scale{pick.alpha}},
                                                 PlaneMap{Scale{1.0 / pick.alpha}},
                                                 std::nullopt, os.str());
}

std::unique_ptr<XProvider> origin_avoiding_provider(int depth, std::uint64_t) {
    PointSet preview = e_closure(dyadic_seed_grid(), std::min(depth, 1), 20000);
    ShiftedSet pick = translate_avoiding_origin(preview);
    std::ostringstream os;
    os << "Origin adversary: points q + (" << pick.shift.x << ", " << pick.shift.y
       << ") for dyadic lattice points q, shift verified against a depth-" << std::min(depth, 1)
       << " closure preview (" << preview.size()
       << " points). Finite desk-scale approximation of the translated avoid-set.";
    return std::make_unique<LatticeSnapProvider>(pick.map, inverse(pick.map), Point{0, 0},
                                                 os.str());
}

// ============================================================================
// Adversary execution
// ============================================================================

namespace {

class AdversaryChooser : public Chooser {
public:
    explicit AdversaryChooser(XProvider& provider) : provider_(provider) {}
    Point choose(const Location& loc, const Word&) override { return provider_.point_in(loc); }

private:
    XProvider& provider_;
};

} // namespace

AdversaryReport adversary_run(const ConstructionProgram& program,
                              const std::function<bool(Point)>& forbidden,
                              XProvider& provider) {
    AdversaryChooser chooser(provider);
    AdversaryReport report;
    report.trace = execute(program, chooser);
    report.avoided = true;
    for (const ConfigItem& it : report.trace.word) {
        if (!is_point(it)) continue;
        Point p = std::get<Point>(it);
        if (forbidden(p)) {
            report.avoided = false;
            report.witness = p;
            break;
        }
    }
    report.stats = provider.stats();
    report.note = provider.describe();
    return report;
}

std::optional<std::pair<Point, Point>> find_unit_pair(const Trace& trace, double eps) {
    std::vector<Point> pts;
    for (const ConfigItem& it : trace.word) {
        if (is_point(it)) pts.push_back(std::get<Point>(it));
    }
    for (std::size_t i = 0; i < pts.size(); ++i) {
        for (std::size_t j = i + 1; j < pts.size(); ++j) {
            if (approx_equal(pts[i], pts[j])) continue; // repetitions of one letter
            if (std::abs(distance(pts[i], pts[j]) - 1.0) <= eps) {
                return std::make_pair(pts[i], pts[j]);
            }
        }
    }
    return std::nullopt;
}

} // namespace ecs
