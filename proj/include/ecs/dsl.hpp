#pragma once

#include <stdexcept>
#include <string>

#include "ecs/model.hpp"

namespace ecs {

// Positioned syntax/static error; line and column are 1-based.
class ParseError : public std::runtime_error {
public:
    ParseError(int line, int column, const std::string& message)
        : std::runtime_error("parse error at " + std::to_string(line) + ":" +
                             std::to_string(column) + ": " + message),
          line_(line),
          column_(column),
          message_(message) {}

    int line() const { return line_; }
    int column() const { return column_; }
    const std::string& message() const { return message_; }

private:
    int line_;
    int column_;
    std::string message_;
};

struct ParsedScript {
    ConstructionProgram program;
    Target target; // declared in the script; target_none() when absent
};

// Grammar (".ecs" files, UTF-8, "#" line comments):
//
//   script  := header stmt* "end"
//   header  := "type" ("straightedge" | "compass" | "general") given*
//   given   := "given" "point" ident "=" "(" num "," num ")"
//            | "given" "line" ident "=" "(" num "," num "," num ")"
//            | "given" "circle" ident "=" "(" "(" num "," num ")" "," num ")"
//   stmt    := "line" ident "=" "line" "(" ident "," ident ")"
//            | "circle" ident "=" "circle" "(" ident "," ident "," ident ")"
//            | "point" ident "=" "meet" "(" ident "," ident "," index ")"
//            | "loc" ident "=" "disc" "(" "(" num "," num ")" "," num ")"
//            | "loc" ident "=" "hseg" "(" num "," num "," num ")"
//            | "loc" ident "=" "pair" "(" "(" num "," num ")" "," "(" num "," num ")" ")"
//            | "choose" ident "in" ident
//            | "target" ("none" | "equilateral" | "unit_pair"
//                        | "point" "(" num "," num ")")
//            | "macro" ident [macro args]
//
// Non-uniform constructions are reachable only through whole-body macros
// (origin_via_u, unit_via_u, center_via_u ((cx, cy), r)); everything else
// maps one statement to one rule application.
ParsedScript parse_script(const std::string& text);

// Inverse of parse on the expressible fragment; throws NotExpressible for
// programs whose step function is opaque.
std::string format_program(const ConstructionProgram& program);

} // namespace ecs
