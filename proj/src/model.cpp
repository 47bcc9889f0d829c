#include "ecs/model.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace ecs {

const char* type_name(ConstructionType t) {
    switch (t) {
        case ConstructionType::Straightedge: return "straightedge";
        case ConstructionType::Compass: return "compass";
        case ConstructionType::General: return "general";
    }
    return "?";
}

const char* step_kind_name(StepKind k) {
    switch (k) {
        case StepKind::Root: return "root";
        case StepKind::NewLine: return "new_line";
        case StepKind::NewCircle: return "new_circle";
        case StepKind::NewIntersection: return "new_intersection";
        case StepKind::NewLocation: return "new_location";
        case StepKind::Chosen: return "choose";
    }
    return "?";
}

// ============================================================================
// Locations
// ============================================================================

void validate_location(const Location& loc) {
    if (const auto* d = std::get_if<Disc>(&loc)) {
        if (!(d->radius > 0.0) || !std::isfinite(d->radius)) {
            fail(Err::BadParameter, "disc radius must be positive");
        }
    } else if (const auto* h = std::get_if<HSegment>(&loc)) {
        if (!(h->a < h->b)) {
            fail(Err::BadParameter, "hseg requires a < b");
        }
    } else if (const auto* pp = std::get_if<PointPair>(&loc)) {
        if (approx_equal(pp->p, pp->q)) {
            fail(Err::BadParameter, "pair requires distinct points");
        }
    }
}

bool location_contains(const Location& loc, Point p) {
    const double eps = tolerance().eps_abs;
    if (const auto* d = std::get_if<Disc>(&loc)) {
        return distance(d->center, p) <= d->radius + eps;
    }
    if (const auto* h = std::get_if<HSegment>(&loc)) {
        return std::abs(p.y - h->c) <= eps && p.x >= h->a - eps && p.x <= h->b + eps;
    }
    const auto& pp = std::get<PointPair>(loc);
    return approx_equal(pp.p, p, eps) || approx_equal(pp.q, p, eps);
}

bool is_point(const ConfigItem& it) { return std::holds_alternative<Point>(it); }
bool is_curve(const ConfigItem& it) {
    return std::holds_alternative<Line>(it) || std::holds_alternative<Circle>(it);
}
bool is_location(const ConfigItem& it) { return std::holds_alternative<Location>(it); }

// ============================================================================
// Choosers
// ============================================================================

SamplerChooser::SamplerChooser(std::uint64_t seed) : rng_(seed) {}

Point SamplerChooser::choose(const Location& loc, const Word&) {
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    if (const auto* d = std::get_if<Disc>(&loc)) {
        double r = d->radius * std::sqrt(unit(rng_));
        double theta = 2.0 * M_PI * unit(rng_);
        return {d->center.x + r * std::cos(theta), d->center.y + r * std::sin(theta)};
    }
    if (const auto* h = std::get_if<HSegment>(&loc)) {
        return {h->a + unit(rng_) * (h->b - h->a), h->c};
    }
    const auto& pp = std::get<PointPair>(loc);
    return unit(rng_) < 0.5 ? pp.p : pp.q;
}

ScriptedChooser::ScriptedChooser(std::vector<Point> points) : points_(std::move(points)) {}

Point ScriptedChooser::choose(const Location&, const Word&) {
    if (next_ >= points_.size()) {
        fail(Err::ChooserOutOfLocation, "scripted chooser exhausted");
    }
    return points_[next_++];
}

// ============================================================================
// Step validation
// ============================================================================

namespace {

Violation violation(const std::string& msg) { return Violation{msg}; }

bool index_ok(const Word& word, int i) {
    return i >= 0 && static_cast<std::size_t>(i) < word.size();
}

bool last_is_location(const Word& word) {
    return !word.empty() && is_location(word.back());
}

bool distinct_curves(const ConfigItem& a, const ConfigItem& b) {
    if (const auto* l1 = std::get_if<Line>(&a)) {
        if (const auto* l2 = std::get_if<Line>(&b)) {
            return !same_line(*l1, *l2);
        }
        return true;
    }
    if (const auto* k1 = std::get_if<Circle>(&a)) {
        if (const auto* k2 = std::get_if<Circle>(&b)) {
            return !same_circle(*k1, *k2);
        }
        return true;
    }
    return true;
}

} // namespace

ValidationResult validate_step(const Word& word, const StepRule& step) {
    bool nondet = last_is_location(word);
    if (std::holds_alternative<ChooseStep>(step)) {
        if (!nondet) {
            return violation("rule 6 requires a trailing location letter");
        }
        return std::nullopt;
    }
    if (nondet) {
        return violation("non-deterministic vertex must choose an arbitrary point (rule 6)");
    }
    if (std::holds_alternative<EndStep>(step)) {
        return std::nullopt;
    }
    if (const auto* nl = std::get_if<NewLine>(&step)) {
        if (!index_ok(word, nl->i) || !index_ok(word, nl->j)) {
            return violation("rule 2: operand index out of range");
        }
        if (nl->i == nl->j) {
            return violation("rule 2 needs two distinct letters");
        }
        if (!is_point(word[nl->i]) || !is_point(word[nl->j])) {
            return violation("rule 2 operands must be points");
        }
        if (approx_equal(std::get<Point>(word[nl->i]), std::get<Point>(word[nl->j]))) {
            return violation("rule 2 needs a_i != a_j");
        }
        return std::nullopt;
    }
    if (const auto* nc = std::get_if<NewCircle>(&step)) {
        for (int idx : {nc->i, nc->j, nc->k}) {
            if (!index_ok(word, idx)) {
                return violation("rule 3: operand index out of range");
            }
            if (!is_point(word[idx])) {
                return violation("rule 3 operands must be points");
            }
        }
        return std::nullopt;
    }
    if (const auto* ni = std::get_if<NewIntersection>(&step)) {
        if (!index_ok(word, ni->i) || !index_ok(word, ni->j)) {
            return violation("rule 4: operand index out of range");
        }
        if (ni->i == ni->j) {
            return violation("rule 4 needs two distinct curves");
        }
        if (!is_curve(word[ni->i]) || !is_curve(word[ni->j])) {
            return violation("rule 4 operands must be curves");
        }
        if (!distinct_curves(word[ni->i], word[ni->j])) {
            return violation("rule 4 needs two distinct curves");
        }
        if (ni->select != 0 && ni->select != 1) {
            return violation("rule 4 intersection index must be 0 or 1");
        }
        return std::nullopt;
    }
    if (std::holds_alternative<NewLocation>(step)) {
        return std::nullopt; // the produced location is validated at execution
    }
    return violation("unknown step rule");
}

// ============================================================================
// Execution
// ============================================================================

namespace {

[[noreturn]] void exec_fail(Err code, int step_index, const std::string& msg) {
    std::ostringstream os;
    os << "step " << step_index << ": " << msg;
    fail(code, os.str());
}

std::vector<Point> intersections_of(const ConfigItem& a, const ConfigItem& b, int step_index) {
    if (const auto* l1 = std::get_if<Line>(&a)) {
        if (const auto* l2 = std::get_if<Line>(&b)) {
            LineMeet m = intersect_lines(*l1, *l2);
            if (const auto* p = std::get_if<Point>(&m)) {
                return {*p};
            }
            return {};
        }
        return intersect_line_circle(*l1, std::get<Circle>(b));
    }
    const auto& k1 = std::get<Circle>(a);
    if (const auto* l2 = std::get_if<Line>(&b)) {
        return intersect_line_circle(*l2, k1);
    }
    try {
        return intersect_circles(k1, std::get<Circle>(b));
    } catch (const Error& e) {
        exec_fail(Err::GeometricFailure, step_index, e.what());
    }
}

} // namespace

Trace execute(const ConstructionProgram& program, Chooser& chooser) {
    for (const auto& it : program.root) {
        if (is_location(it)) {
            fail(Err::InvalidStep, "root must not contain location letters");
        }
    }
    Trace trace;
    trace.word = program.root;
    trace.provenance.assign(program.root.size(), Provenance{});
    trace.declared_type = program.declared_type;

    for (int step_index = 0;; ++step_index) {
        if (step_index >= program.max_steps) {
            exec_fail(Err::StepLimit, step_index, "max_steps exceeded");
        }
        StepRule step = program.next_step(trace.word);
        if (auto bad = validate_step(trace.word, step)) {
            exec_fail(Err::InvalidStep, step_index, bad->message);
        }
        if (std::holds_alternative<EndStep>(step)) {
            break;
        }
        if (const auto* nl = std::get_if<NewLine>(&step)) {
            Line l = line_through(std::get<Point>(trace.word[nl->i]),
                                  std::get<Point>(trace.word[nl->j]));
            trace.word.emplace_back(l);
            trace.provenance.push_back({StepKind::NewLine, nl->i, nl->j, -1, -1});
        } else if (const auto* nc = std::get_if<NewCircle>(&step)) {
            CircleOrPoint res = circle_from(std::get<Point>(trace.word[nc->i]),
                                            std::get<Point>(trace.word[nc->j]),
                                            std::get<Point>(trace.word[nc->k]));
            if (const auto* k = std::get_if<Circle>(&res)) {
                trace.word.emplace_back(*k);
            } else {
                trace.word.emplace_back(std::get<Point>(res));
            }
            trace.provenance.push_back({StepKind::NewCircle, nc->i, nc->j, nc->k, -1});
        } else if (const auto* ni = std::get_if<NewIntersection>(&step)) {
            std::vector<Point> pts =
                intersections_of(trace.word[ni->i], trace.word[ni->j], step_index);
            if (static_cast<std::size_t>(ni->select) >= pts.size()) {
                std::ostringstream os;
                os << "required intersection " << ni->select << " missing (found "
                   << pts.size() << ")";
                exec_fail(Err::GeometricFailure, step_index, os.str());
            }
            trace.word.emplace_back(pts[ni->select]);
            trace.provenance.push_back({StepKind::NewIntersection, ni->i, ni->j, -1, ni->select});
        } else if (const auto* nloc = std::get_if<NewLocation>(&step)) {
            Location loc = nloc->make(trace.word);
            validate_location(loc);
            trace.word.emplace_back(loc);
            trace.provenance.push_back({StepKind::NewLocation, -1, -1, -1, -1});
        } else { // ChooseStep
            const Location& loc = std::get<Location>(trace.word.back());
            Point p = chooser.choose(loc, trace.word);
            if (!location_contains(loc, p)) {
                std::ostringstream os;
                os << "chosen point (" << p.x << ", " << p.y << ") outside its location";
                exec_fail(Err::ChooserOutOfLocation, step_index, os.str());
            }
            int loc_index = static_cast<int>(trace.word.size()) - 1;
            trace.chooser_log.push_back({loc, p});
            trace.word.emplace_back(p);
            trace.provenance.push_back({StepKind::Chosen, loc_index, -1, -1, -1});
        }
    }
    return trace;
}

// ============================================================================
// Constructs / weakly constructs
// ============================================================================

namespace {

bool word_constructs(std::span<const ConfigItem> word, const Target& target) {
    std::size_t max_len = word.size();
    if (target.max_len > 0) {
        max_len = std::min<std::size_t>(max_len, target.max_len);
    }
    for (std::size_t len = 0; len <= max_len; ++len) {
        if (target.accepts(word.subspan(word.size() - len, len))) {
            return true;
        }
    }
    return false;
}

// Enumerates ordered tuples of distinct non-location indices (a subsequence
// plus a permutation of it) and reports the first accepted one.
bool find_ordered_tuple(std::span<const ConfigItem> word, const Target& target,
                        std::size_t min_index, std::vector<int>* out) {
    if (target.accepts({})) {
        if (out) out->clear();
        return true;
    }
    std::vector<int> usable;
    for (std::size_t i = min_index; i < word.size(); ++i) {
        if (!is_location(word[i])) {
            usable.push_back(static_cast<int>(i));
        }
    }
    std::vector<int> tuple;
    std::vector<ConfigItem> letters;
    std::vector<bool> used(usable.size(), false);

    std::function<bool(std::size_t)> rec = [&](std::size_t k) -> bool {
        if (k > 0 && target.accepts(letters)) {
            if (out) *out = tuple;
            return true;
        }
        if (k == static_cast<std::size_t>(target.max_len)) {
            return false;
        }
        for (std::size_t u = 0; u < usable.size(); ++u) {
            if (used[u]) continue;
            used[u] = true;
            tuple.push_back(usable[u]);
            letters.push_back(word[usable[u]]);
            if (rec(k + 1)) return true;
            used[u] = false;
            tuple.pop_back();
            letters.pop_back();
        }
        return false;
    };
    return rec(0);
}

} // namespace

bool check_constructs(const Trace& trace, const Target& target) {
    return word_constructs(trace.word, target);
}

bool check_weakly_constructs(const Trace& trace, const Target& target) {
    if (target.max_len <= 0) {
        return target.accepts({});
    }
    return find_ordered_tuple(trace.word, target, 0, nullptr);
}

// ============================================================================
// strengthen_weak
// ============================================================================

namespace {

// Finds an earlier point pair spanning the given line (rule-2 operands for a
// re-derivation). Always succeeds for lines produced by rule 2.
std::optional<NewLine> line_rederivation(const Word& word, std::size_t idx) {
    const auto& line = std::get<Line>(word[idx]);
    for (std::size_t i = 0; i < idx; ++i) {
        if (!is_point(word[i])) continue;
        const auto& pi = std::get<Point>(word[i]);
        if (std::abs(line.eval(pi)) > tolerance().eps_abs) continue;
        for (std::size_t j = i + 1; j < idx; ++j) {
            if (!is_point(word[j])) continue;
            const auto& pj = std::get<Point>(word[j]);
            if (std::abs(line.eval(pj)) > tolerance().eps_abs) continue;
            if (approx_equal(pi, pj)) continue;
            return NewLine{static_cast<int>(i), static_cast<int>(j)};
        }
    }
    return std::nullopt;
}

std::optional<NewCircle> circle_rederivation(const Word& word, std::size_t idx) {
    const auto& circle = std::get<Circle>(word[idx]);
    const double eps = tolerance().eps_abs;
    for (std::size_t i = 0; i < idx; ++i) {
        if (!is_point(word[i])) continue;
        if (!approx_equal(std::get<Point>(word[i]), circle.center)) continue;
        for (std::size_t j = 0; j < idx; ++j) {
            if (!is_point(word[j])) continue;
            for (std::size_t k = 0; k < idx; ++k) {
                if (!is_point(word[k])) continue;
                double r = distance(std::get<Point>(word[j]), std::get<Point>(word[k]));
                if (std::abs(r - circle.radius) <= eps) {
                    return NewCircle{static_cast<int>(i), static_cast<int>(j),
                                     static_cast<int>(k)};
                }
            }
        }
    }
    return std::nullopt;
}

StepRule rederivation_step(const Word& word, int idx) {
    const ConfigItem& it = word[idx];
    if (is_point(it)) {
        // Degenerate circle k(a, a, a) repeats the point in any type.
        return NewCircle{idx, idx, idx};
    }
    if (std::holds_alternative<Line>(it)) {
        if (auto step = line_rederivation(word, idx)) {
            return *step;
        }
        fail(Err::NotSeparated, "line letter has no constructive re-derivation");
    }
    if (auto step = circle_rederivation(word, idx)) {
        return *step;
    }
    fail(Err::NotSeparated, "circle letter has no constructive re-derivation");
}

} // namespace

ConstructionProgram strengthen_weak(const ConstructionProgram& program, const Target& target) {
    if (target.max_len <= 0) {
        fail(Err::BadParameter, "strengthen_weak requires a bounded target");
    }
    ConstructionProgram out = program;
    out.script = nullptr;
    const ConstructionProgram orig = program;
    out.next_step = [orig, target](const Word& w) -> StepRule {
        // Shadow-replay the original program over w to locate its leaf.
        std::size_t len = orig.root.size();
        std::size_t leaf_len = 0;
        for (;;) {
            Word prefix(w.begin(), w.begin() + len);
            StepRule s = orig.next_step(prefix);
            if (std::holds_alternative<EndStep>(s)) {
                leaf_len = len;
                break;
            }
            if (len == w.size()) {
                return s; // still inside the original program
            }
            ++len;
        }
        std::span<const ConfigItem> leaf(w.data(), leaf_len);
        if (word_constructs(leaf, target)) {
            return EndStep{}; // already constructing: idempotent
        }
        std::vector<int> witness;
        if (!find_ordered_tuple(leaf, target, orig.root.size(), &witness)) {
            if (find_ordered_tuple(leaf, target, 0, &witness)) {
                fail(Err::NotSeparated, "target is witnessed only through root letters");
            }
            return EndStep{}; // leaf does not weakly construct the target
        }
        std::size_t appended = w.size() - leaf_len;
        if (appended >= witness.size()) {
            return EndStep{};
        }
        return rederivation_step(w, witness[appended]);
    };
    return out;
}

// ============================================================================
// refine_set_system
// ============================================================================

namespace {

void verify_subset(const Location& sub, const Location& super) {
    // Point pairs are finite: check exhaustively.
    if (const auto* pp = std::get_if<PointPair>(&sub)) {
        for (const Point& p : {pp->p, pp->q}) {
            if (!location_contains(super, p)) {
                std::ostringstream os;
                os << "witness (" << p.x << ", " << p.y << ") escapes the refined-from set";
                fail(Err::RefinementNotSubset, os.str());
            }
        }
        return;
    }
    // Desk-scale sampling with a fixed seed; discs also get near-boundary
    // probes where violations concentrate.
    SamplerChooser sampler(0xec5u);
    std::vector<Point> probes;
    if (const auto* d = std::get_if<Disc>(&sub)) {
        for (int i = 0; i < 8; ++i) {
            double theta = 2.0 * M_PI * i / 8.0;
            probes.push_back(
                {d->center.x + d->radius * std::cos(theta), d->center.y + d->radius * std::sin(theta)});
        }
    } else if (const auto* h = std::get_if<HSegment>(&sub)) {
        probes.push_back({h->a, h->c});
        probes.push_back({h->b, h->c});
    }
    Word dummy;
    for (int i = 0; i < 56; ++i) {
        probes.push_back(sampler.choose(sub, dummy));
    }
    for (const Point& p : probes) {
        if (!location_contains(super, p)) {
            std::ostringstream os;
            os << "witness (" << p.x << ", " << p.y << ") escapes the refined-from set";
            fail(Err::RefinementNotSubset, os.str());
        }
    }
}

} // namespace

ConstructionProgram refine_set_system(const ConstructionProgram& program,
                                      std::function<Location(const Location&)> refine) {
    ConstructionProgram out = program;
    out.script = nullptr;
    auto orig_next = program.next_step;
    out.next_step = [orig_next, refine](const Word& w) -> StepRule {
        StepRule s = orig_next(w);
        if (auto* nl = std::get_if<NewLocation>(&s)) {
            auto inner = nl->make;
            return NewLocation{[inner, refine](const Word& w2) {
                Location original = inner(w2);
                Location refined = refine(original);
                validate_location(refined);
                verify_subset(refined, original);
                return refined;
            }};
        }
        return s;
    };
    return out;
}

// ============================================================================
// type_audit
// ============================================================================

TypeAudit type_audit(const Trace& trace) {
    TypeAudit audit;
    for (std::size_t i = 0; i < trace.word.size(); ++i) {
        const Provenance& prov = trace.provenance[i];
        if (prov.kind == StepKind::NewLine) {
            audit.used_straightedge = true;
            if (trace.declared_type == ConstructionType::Compass) {
                std::ostringstream os;
                os << "letter " << i << ": rule 2 (line) forbidden in a compass construction";
                audit.violations.push_back(os.str());
            }
        } else if (prov.kind == StepKind::NewCircle && std::holds_alternative<Circle>(trace.word[i])) {
            // Non-degenerate rule 3; degenerate repetitions stay type-neutral.
            audit.used_compass = true;
            if (trace.declared_type == ConstructionType::Straightedge) {
                std::ostringstream os;
                os << "letter " << i << ": rule 3 (circle) forbidden in a straightedge construction";
                audit.violations.push_back(os.str());
            }
        }
    }
    if (audit.used_straightedge && audit.used_compass) {
        audit.minimal = ConstructionType::General;
    } else if (audit.used_compass) {
        audit.minimal = ConstructionType::Compass;
    } else {
        audit.minimal = ConstructionType::Straightedge;
    }
    return audit;
}

// ============================================================================
// Built-in targets
// ============================================================================

Target target_none() {
    return {"none", 0, [](std::span<const ConfigItem>) { return true; }};
}

Target target_equilateral() {
    return {"equilateral", 3, [](std::span<const ConfigItem> w) {
                if (w.size() != 3) return false;
                for (const auto& it : w) {
                    if (!is_point(it)) return false;
                }
                Point a = std::get<Point>(w[0]);
                Point b = std::get<Point>(w[1]);
                Point c = std::get<Point>(w[2]);
                double ab = distance(a, b), ac = distance(a, c), bc = distance(b, c);
                double m = std::max({ab, ac, bc});
                if (m <= tolerance().eps_abs) return false;
                return std::abs(ab - ac) <= 1e-9 * m && std::abs(ab - bc) <= 1e-9 * m;
            }};
}

Target target_unit_pair() {
    return {"unit_pair", 2, [](std::span<const ConfigItem> w) {
                if (w.size() != 2 || !is_point(w[0]) || !is_point(w[1])) return false;
                return std::abs(distance(std::get<Point>(w[0]), std::get<Point>(w[1])) - 1.0) <= 1e-9;
            }};
}

Target target_point(Point p) {
    return {"point", 1, [p](std::span<const ConfigItem> w) {
                if (w.size() != 1 || !is_point(w[0])) return false;
                return approx_equal(std::get<Point>(w[0]), p, 1e-9);
            }};
}

Target target_final_bisector(Point p1, Point p2) {
    return {"bisector", 1, [p1, p2](std::span<const ConfigItem> w) {
                if (w.size() != 1 || !std::holds_alternative<Line>(w[0])) return false;
                const auto& l = std::get<Line>(w[0]);
                Point mid = 0.5 * (p1 + p2);
                if (std::abs(l.eval(mid)) > 1e-9) return false;
                // Perpendicular to p1p2: the normal must be parallel to the segment.
                double dx = p2.x - p1.x, dy = p2.y - p1.y;
                double n = std::hypot(dx, dy);
                double cross = l.a * (dy / n) - l.b * (dx / n);
                return std::abs(cross) <= 1e-9;
            }};
}

} // namespace ecs
