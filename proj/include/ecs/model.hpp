#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <random>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "ecs/geom.hpp"

namespace ecs {

// ============================================================================
// Locations (set systems for arbitrary points)
// ============================================================================

// Open disc with positive radius (the classical system D).
struct Disc {
    Point center;
    double radius = 0.0;
};

// Proper horizontal segment [a, b] x {c} with a < b (the system U).
struct HSegment {
    double a = 0.0;
    double b = 0.0;
    double c = 0.0;
};

// Two-element point set {p, q}, p != q (the system J).
struct PointPair {
    Point p;
    Point q;
};

using Location = std::variant<Disc, HSegment, PointPair>;

// Membership with closed tolerance: points within eps_abs of the set count
// as inside.
bool location_contains(const Location& loc, Point p);
void validate_location(const Location& loc); // invariant check, throws BadParameter

// ============================================================================
// Configuration words
// ============================================================================

using ConfigItem = std::variant<Point, Line, Circle, Location>;
using Word = std::vector<ConfigItem>;

bool is_point(const ConfigItem& it);
bool is_curve(const ConfigItem& it); // Line or Circle
bool is_location(const ConfigItem& it);

// ============================================================================
// Step rules (the six rules of the construction definition)
// ============================================================================

struct EndStep {};
struct NewLine {
    int i = -1;
    int j = -1;
};
struct NewCircle {
    int i = -1;
    int j = -1;
    int k = -1;
};
struct NewIntersection {
    int i = -1;
    int j = -1;
    int select = 0; // index into the kernel's sorted intersection list
};
struct NewLocation {
    // Evaluated against the current word so that locations may depend on
    // previously constructed letters (non-uniform constructions).
    std::function<Location(const Word&)> make;
};
struct ChooseStep {};

using StepRule = std::variant<EndStep, NewLine, NewCircle, NewIntersection, NewLocation, ChooseStep>;

enum class ConstructionType { Straightedge, Compass, General };
const char* type_name(ConstructionType t);

// ============================================================================
// Programs and traces
// ============================================================================

struct ScriptInfo; // defined by the DSL; carried for re-serialization

// A construction program realizes one branch schema of the construction
// tree: next_step decides the applied rule from the whole current word, so
// steps may depend on chosen arbitrary points.
struct ConstructionProgram {
    Word root; // contains no Location letters
    std::function<StepRule(const Word&)> next_step;
    ConstructionType declared_type = ConstructionType::General;
    int max_steps = 10000;
    std::shared_ptr<const ScriptInfo> script; // null when not DSL-expressible
};

enum class StepKind { Root, NewLine, NewCircle, NewIntersection, NewLocation, Chosen };
const char* step_kind_name(StepKind k);

struct Provenance {
    StepKind kind = StepKind::Root;
    int i = -1;
    int j = -1;
    int k = -1;
    int select = -1;
};

struct ChooserEntry {
    Location location;
    Point point;
};

// One executed branch of a program: the word plus per-letter provenance and
// the chooser's decisions (sufficient for bit-exact replay).
struct Trace {
    Word word;
    std::vector<Provenance> provenance;
    std::vector<ChooserEntry> chooser_log;
    ConstructionType declared_type = ConstructionType::General;
};

// ============================================================================
// Choosers (strategies resolving rule-6 branching)
// ============================================================================

class Chooser {
public:
    virtual ~Chooser() = default;
    // Must return a point of loc; execute() re-verifies membership.
    virtual Point choose(const Location& loc, const Word& word) = 0;
};

// Uniform sampling inside the location, deterministic per seed.
class SamplerChooser : public Chooser {
public:
    explicit SamplerChooser(std::uint64_t seed);
    Point choose(const Location& loc, const Word& word) override;

private:
    std::mt19937_64 rng_;
};

// Replays a fixed list of points (e.g. a prior trace's chooser_log).
class ScriptedChooser : public Chooser {
public:
    explicit ScriptedChooser(std::vector<Point> points);
    Point choose(const Location& loc, const Word& word) override;

private:
    std::vector<Point> points_;
    std::size_t next_ = 0;
};

// ============================================================================
// Operations
// ============================================================================

struct Violation {
    std::string message;
};
using ValidationResult = std::optional<Violation>; // nullopt = ok

// Checks one step against the six rules: operand kinds and indices,
// distinctness where required, Choose exactly after a trailing location.
ValidationResult validate_step(const Word& word, const StepRule& step);

// Runs the program to its End rule. Throws Error with codes StepLimit,
// ChooserOutOfLocation, GeometricFailure or InvalidStep; geometric failures
// carry the step index in the message.
Trace execute(const ConstructionProgram& program, Chooser& chooser);

// Terminal-configuration predicate. accepts() sees a candidate word; max_len
// bounds the length of words in the target language (0 = unbounded, only
// usable with the contiguous check).
struct Target {
    std::string name;
    int max_len = 0;
    std::function<bool(std::span<const ConfigItem>)> accepts;
};

// True iff some contiguous final segment of the trace word satisfies the
// target (includes the empty suffix).
bool check_constructs(const Trace& trace, const Target& target);

// True iff some (not necessarily contiguous) subsequence, in some order,
// satisfies the target. Requires target.max_len > 0.
bool check_weakly_constructs(const Trace& trace, const Target& target);

// Prolongs every leaf that weakly constructs the target with re-derivation
// steps (degenerate circles for points, re-applied rules for curves) so the
// result constructs the target contiguously. Leaves already ending in a
// satisfying segment are left unchanged. Throws NotSeparated when a witness
// exists only through root letters.
ConstructionProgram strengthen_weak(const ConstructionProgram& program, const Target& target);

// Replaces every location the program emits by refine(location), verifying
// refine(S) is a subset of S by deterministic sampling at emission time
// (throws RefinementNotSubset with a witness point).
ConstructionProgram refine_set_system(const ConstructionProgram& program,
                                      std::function<Location(const Location&)> refine);

struct TypeAudit {
    bool used_straightedge = false;     // any rule-2 edge
    bool used_compass = false;          // any rule-3 edge with distinct radius points
    ConstructionType minimal = ConstructionType::Straightedge;
    std::vector<std::string> violations; // vs the declared type
};

TypeAudit type_audit(const Trace& trace);

// ============================================================================
// Built-in target predicates
// ============================================================================

Target target_none();
Target target_equilateral();             // three points, equal positive sides
Target target_unit_pair();               // two points at distance 1
Target target_point(Point p);            // single point equal to p
Target target_final_bisector(Point p1, Point p2); // line = perpendicular bisector

} // namespace ecs
