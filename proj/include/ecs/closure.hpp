#pragma once

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <memory>
#include <optional>
#include <string>

#include "ecs/maps.hpp"
#include "ecs/model.hpp"

namespace ecs {

// ============================================================================
// Point sets with generation provenance
// ============================================================================

struct ClosureProvenance {
    enum class Op { Seed, LineLine, LineCircle, CircleCircle, FixedCircle } op = Op::Seed;
    // Operand point indices into the owning set, in kernel-call order:
    //   LineLine      a b | c d        (two generating pairs)
    //   LineCircle    a b | e f g      (pair, then center/radius triple)
    //   CircleCircle  e f g | h i j    (two triples)
    //   FixedCircle   a b              (pair; intersected with the fixed circle)
    std::vector<int> operands;
};

struct PointSet {
    std::vector<Point> points;
    std::vector<ClosureProvenance> provenance;
    std::string kind = "seed"; // seed | e | h
    int depth = 0;
    std::size_t seed_size = 0;

    std::size_t size() const { return points.size(); }
    // Tolerance-bounded membership (eps_abs grid lookup).
    bool contains(Point p) const;
};

// Deduplicates within eps_abs; keeps first occurrences.
PointSet make_point_set(const std::vector<Point>& pts);

// One point per line, "x y" with 17 significant digits.
PointSet read_point_set(std::istream& in);
void write_point_set(std::ostream& out, const PointSet& set);

// ============================================================================
// Finite-depth closures
// ============================================================================

// Adds, depth times, all line-line / line-circle / circle-circle
// intersection points over admissible tuples of the current set (lines from
// distinct pairs, circles k(e, f, g) from triples with f != g). Throws
// SizeLimit beyond cap points.
PointSet e_closure(const PointSet& seed, int depth, std::size_t cap = 100000);

// Straightedge world with one fixed circle: line-line and line-with-k
// intersections only.
PointSet h_closure(const PointSet& seed, const Circle& k, int depth, std::size_t cap = 100000);

// Audits that every non-seed point is reproducible by one kernel call from
// its recorded operands; returns the first failing index, if any.
std::optional<std::size_t> audit_closure_provenance(const PointSet& set);

// ============================================================================
// Avoidance selections
// ============================================================================

struct ScaledSet {
    double alpha = 1.0;
    PointSet scaled;
};

// Picks alpha > 0 bounded away (by delta) from the inverse-distance set
// M = {1/|ab|} of the base, then verifies post-hoc that every scaled pairwise
// distance differs from 1 by more than 1e-9. Throws NoGapFound.
ScaledSet scale_avoiding_unit(const PointSet& base, double delta = 1e-6);

struct ShiftedSet {
    PlaneMap map; // a Translate
    Point shift;
    PointSet shifted;
};

// Picks a shift so that no point of the shifted set hits the origin
// (post-hoc verified). Throws NoGapFound.
ShiftedSet translate_avoiding_origin(const PointSet& base);

// ============================================================================
// Adversarial providers
// ============================================================================

struct ProviderStats {
    int calls = 0;
    int refinements = 0;
    double min_anchor_distance = -1.0; // over returned points; -1 = no anchor
};

// Dense point generator drawing only from a set that avoids the forbidden
// target by construction. Membership is certified by provenance: every
// returned point is the image of a snapped rational-lattice point under the
// provider's defining map, and is re-checked against the anchor per call.
class XProvider {
public:
    virtual ~XProvider() = default;
    // Throws UnsupportedLocation for non-Disc locations and
    // LocationUnreachable when lattice refinement bottoms out.
    virtual Point point_in(const Location& loc) = 0;
    virtual std::string describe() const = 0;
    const ProviderStats& stats() const { return stats_; }

protected:
    ProviderStats stats_;
};

// The Hilbert adversary for circle k: base world is the canonical a = 2
// Strommer configuration, transferred onto k; points are g(f_p^-1(q)) for
// lattice points q, and are certified to stay away from k's center.
std::unique_ptr<XProvider> hilbert_x_provider(const Circle& k, int depth = 1,
                                              std::uint64_t seed = 0);

// Scaled-lattice adversary: alpha * (dyadic lattice), alpha from
// scale_avoiding_unit over a closure preview of a small seed grid.
std::unique_ptr<XProvider> unit_avoiding_provider(int depth = 1, std::uint64_t seed = 0);

// Translated-lattice adversary avoiding the origin.
std::unique_ptr<XProvider> origin_avoiding_provider(int depth = 1, std::uint64_t seed = 0);

// ============================================================================
// Adversary execution
// ============================================================================

struct AdversaryReport {
    Trace trace;
    bool avoided = false;
    std::optional<Point> witness; // first forbidden point letter
    ProviderStats stats;
    std::string note; // provider description + approximation statement
};

// Executes the program choosing arbitrary points through the provider, then
// checks every point letter against the forbidden predicate.
AdversaryReport adversary_run(const ConstructionProgram& program,
                              const std::function<bool(Point)>& forbidden,
                              XProvider& provider);

// Pairwise audit used by the unit-distance demonstration: the first pair of
// point letters at distance within eps of 1, if any.
std::optional<std::pair<Point, Point>> find_unit_pair(const Trace& trace, double eps = 1e-9);

} // namespace ecs
