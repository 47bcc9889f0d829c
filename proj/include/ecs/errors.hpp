#pragma once

#include <stdexcept>
#include <string>

namespace ecs {

// Error conditions surfaced by the library. Markers that are part of a
// result value (Parallel, Identical, Undefined, empty intersection lists)
// are not errors and do not appear here.
enum class Err {
    CoincidentPoints,
    IdenticalCircles,
    IdenticalLines,
    BadParameter,
    PointNotOnK0,
    ExcludedLine,
    LevelOutOfRange,
    LevelMismatch,
    ZeroTriple,
    DegenerateDenominator,
    StepLimit,
    ChooserOutOfLocation,
    GeometricFailure,
    InvalidStep,
    NotSeparated,
    RefinementNotSubset,
    SizeLimit,
    NoGapFound,
    LocationUnreachable,
    UnsupportedLocation,
    NotExpressible,
};

const char* err_name(Err code);

class Error : public std::runtime_error {
public:
    Error(Err code, const std::string& message)
        : std::runtime_error(std::string(err_name(code)) + ": " + message), code_(code) {}

    Err code() const { return code_; }

private:
    Err code_;
};

[[noreturn]] inline void fail(Err code, const std::string& message) {
    throw Error(code, message);
}

} // namespace ecs
