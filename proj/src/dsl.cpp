#include "ecs/dsl.hpp"

#include <cctype>
#include <cstdio>
#include <cstdlib>
#include <map>
#include <sstream>

#include "ecs/builtins.hpp"

namespace ecs {

// ============================================================================
// Script representation (kept on the program for re-serialization)
// ============================================================================

struct ScriptGiven {
    enum class Kind { Point, Line, Circle };
    Kind kind;
    std::string name;
    std::vector<double> nums;
};

struct ScriptStmt {
    enum class Kind { Line, Circle, Meet, LocDisc, LocHSeg, LocPair, Choose };
    Kind kind;
    std::string name;       // defined identifier
    std::string a, b, c;    // operand identifiers
    std::vector<double> nums;
    int index = 0;          // meet selection
    int line = 0, col = 0;  // for diagnostics
};

struct TargetSpec {
    std::string name; // none | equilateral | unit_pair | point
    double x = 0, y = 0;
};

struct ScriptInfo {
    ConstructionType type = ConstructionType::General;
    std::vector<ScriptGiven> givens;
    std::vector<ScriptStmt> stmts;
    std::optional<TargetSpec> target;
    std::optional<std::pair<std::string, std::vector<double>>> macro;
};

namespace {

// ============================================================================
// Tokenizer
// ============================================================================

struct Token {
    enum class Kind { Ident, Number, LParen, RParen, Comma, Eq, End };
    Kind kind;
    std::string text;
    double value = 0;
    int line = 1, col = 1;
};

class Lexer {
public:
    explicit Lexer(const std::string& text) : text_(text) {}

    std::vector<Token> run() {
        std::vector<Token> out;
        while (pos_ < text_.size()) {
            char ch = text_[pos_];
            if (ch == '#') {
                while (pos_ < text_.size() && text_[pos_] != '\n') ++pos_;
                continue;
            }
            if (ch == '\n') {
                ++line_;
                col_ = 1;
                ++pos_;
                continue;
            }
            if (std::isspace(static_cast<unsigned char>(ch))) {
                advance();
                continue;
            }
            if (ch == '(') {
                out.push_back(symbol(Token::Kind::LParen, "("));
                continue;
            }
            if (ch == ')') {
                out.push_back(symbol(Token::Kind::RParen, ")"));
                continue;
            }
            if (ch == ',') {
                out.push_back(symbol(Token::Kind::Comma, ","));
                continue;
            }
            if (ch == '=') {
                out.push_back(symbol(Token::Kind::Eq, "="));
                continue;
            }
            if (std::isalpha(static_cast<unsigned char>(ch)) || ch == '_') {
                out.push_back(ident());
                continue;
            }
            if (std::isdigit(static_cast<unsigned char>(ch)) || ch == '-' || ch == '+' ||
                ch == '.') {
                out.push_back(number());
                continue;
            }
            throw ParseError(line_, col_, std::string("unexpected character '") + ch + "'");
        }
        Token end;
        end.kind = Token::Kind::End;
        end.line = line_;
        end.col = col_;
        out.push_back(end);
        return out;
    }

private:
    void advance() {
        ++pos_;
        ++col_;
    }

    Token symbol(Token::Kind kind, const char* text) {
        Token t{kind, text, 0, line_, col_};
        advance();
        return t;
    }

    Token ident() {
        Token t;
        t.kind = Token::Kind::Ident;
        t.line = line_;
        t.col = col_;
        while (pos_ < text_.size() &&
               (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_')) {
            t.text += text_[pos_];
            advance();
        }
        return t;
    }

    Token number() {
        Token t;
        t.kind = Token::Kind::Number;
        t.line = line_;
        t.col = col_;
        std::size_t start = pos_;
        if (text_[pos_] == '-' || text_[pos_] == '+') advance();
        bool digits = false;
        int dots = 0;
        while (pos_ < text_.size() &&
               (std::isdigit(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '.')) {
            digits = digits || std::isdigit(static_cast<unsigned char>(text_[pos_]));
            if (text_[pos_] == '.') ++dots;
            advance();
        }
        if (pos_ < text_.size() && (text_[pos_] == 'e' || text_[pos_] == 'E')) {
            advance();
            if (pos_ < text_.size() && (text_[pos_] == '-' || text_[pos_] == '+')) advance();
            while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
                advance();
            }
        }
        t.text = text_.substr(start, pos_ - start);
        if (!digits || dots > 1) {
            throw ParseError(t.line, t.col, "malformed number '" + t.text + "'");
        }
        t.value = std::strtod(t.text.c_str(), nullptr);
        return t;
    }

    const std::string& text_;
    std::size_t pos_ = 0;
    int line_ = 1, col_ = 1;
};

// ============================================================================
// Parser
// ============================================================================

class Parser {
public:
    explicit Parser(const std::string& text) : tokens_(Lexer(text).run()) {}

    ScriptInfo run() {
        ScriptInfo info;
        expect_keyword("type", "script must start with a type header");
        Token type_tok = expect(Token::Kind::Ident, "construction type");
        if (type_tok.text == "straightedge") {
            info.type = ConstructionType::Straightedge;
        } else if (type_tok.text == "compass") {
            info.type = ConstructionType::Compass;
        } else if (type_tok.text == "general") {
            info.type = ConstructionType::General;
        } else {
            throw ParseError(type_tok.line, type_tok.col,
                             "unknown type '" + type_tok.text + "'");
        }
        while (peek_keyword("given")) {
            info.givens.push_back(given());
        }
        while (!peek_keyword("end")) {
            Token t = peek();
            if (t.kind == Token::Kind::End) {
                throw ParseError(t.line, t.col, "missing 'end'");
            }
            statement(info);
        }
        next(); // consume "end"
        Token trailing = peek();
        if (trailing.kind != Token::Kind::End) {
            throw ParseError(trailing.line, trailing.col, "trailing input after 'end'");
        }
        return info;
    }

    std::pair<int, int> macro_pos{0, 0};

private:
    const Token& peek() const { return tokens_[pos_]; }

    Token next() { return tokens_[pos_++]; }

    bool peek_keyword(const char* kw) const {
        return peek().kind == Token::Kind::Ident && peek().text == kw;
    }

    Token expect(Token::Kind kind, const char* what) {
        Token t = next();
        if (t.kind != kind) {
            throw ParseError(t.line, t.col,
                             std::string("expected ") + what + ", got '" +
                                 (t.kind == Token::Kind::End ? "<eof>" : t.text) + "'");
        }
        return t;
    }

    void expect_keyword(const char* kw, const char* message) {
        Token t = next();
        if (t.kind != Token::Kind::Ident || t.text != kw) {
            throw ParseError(t.line, t.col, message);
        }
    }

    void expect_symbol(Token::Kind kind, const char* sym) {
        Token t = next();
        if (t.kind != kind) {
            throw ParseError(t.line, t.col, std::string("expected '") + sym + "'");
        }
    }

    double number() { return expect(Token::Kind::Number, "a number").value; }

    std::string ident() { return expect(Token::Kind::Ident, "an identifier").text; }

    std::vector<double> point_literal() {
        expect_symbol(Token::Kind::LParen, "(");
        double x = number();
        expect_symbol(Token::Kind::Comma, ",");
        double y = number();
        expect_symbol(Token::Kind::RParen, ")");
        return {x, y};
    }

    ScriptGiven given() {
        next(); // "given"
        Token kind_tok = expect(Token::Kind::Ident, "point/line/circle");
        ScriptGiven g;
        g.name = ident();
        expect_symbol(Token::Kind::Eq, "=");
        if (kind_tok.text == "point") {
            g.kind = ScriptGiven::Kind::Point;
            g.nums = point_literal();
        } else if (kind_tok.text == "line") {
            g.kind = ScriptGiven::Kind::Line;
            expect_symbol(Token::Kind::LParen, "(");
            g.nums.push_back(number());
            expect_symbol(Token::Kind::Comma, ",");
            g.nums.push_back(number());
            expect_symbol(Token::Kind::Comma, ",");
            g.nums.push_back(number());
            expect_symbol(Token::Kind::RParen, ")");
        } else if (kind_tok.text == "circle") {
            g.kind = ScriptGiven::Kind::Circle;
            expect_symbol(Token::Kind::LParen, "(");
            auto c = point_literal();
            expect_symbol(Token::Kind::Comma, ",");
            g.nums = {c[0], c[1], number()};
            expect_symbol(Token::Kind::RParen, ")");
        } else {
            throw ParseError(kind_tok.line, kind_tok.col,
                             "given must declare a point, line, or circle");
        }
        return g;
    }

    void statement(ScriptInfo& info) {
        Token head = next();
        if (head.kind != Token::Kind::Ident) {
            throw ParseError(head.line, head.col, "expected a statement");
        }
        ScriptStmt s;
        s.line = head.line;
        s.col = head.col;
        if (head.text == "line") {
            s.kind = ScriptStmt::Kind::Line;
            s.name = ident();
            expect_symbol(Token::Kind::Eq, "=");
            expect_keyword("line", "expected line(...)");
            expect_symbol(Token::Kind::LParen, "(");
            s.a = ident();
            expect_symbol(Token::Kind::Comma, ",");
            s.b = ident();
            expect_symbol(Token::Kind::RParen, ")");
        } else if (head.text == "circle") {
            s.kind = ScriptStmt::Kind::Circle;
            s.name = ident();
            expect_symbol(Token::Kind::Eq, "=");
            expect_keyword("circle", "expected circle(...)");
            expect_symbol(Token::Kind::LParen, "(");
            s.a = ident();
            expect_symbol(Token::Kind::Comma, ",");
            s.b = ident();
            expect_symbol(Token::Kind::Comma, ",");
            s.c = ident();
            expect_symbol(Token::Kind::RParen, ")");
        } else if (head.text == "point") {
            s.kind = ScriptStmt::Kind::Meet;
            s.name = ident();
            expect_symbol(Token::Kind::Eq, "=");
            expect_keyword("meet", "expected meet(...)");
            expect_symbol(Token::Kind::LParen, "(");
            s.a = ident();
            expect_symbol(Token::Kind::Comma, ",");
            s.b = ident();
            expect_symbol(Token::Kind::Comma, ",");
            Token idx = expect(Token::Kind::Number, "an intersection index");
            expect_symbol(Token::Kind::RParen, ")");
            s.index = static_cast<int>(idx.value);
            if (idx.value != 0 && idx.value != 1) {
                throw ParseError(idx.line, idx.col, "intersection index must be 0 or 1");
            }
        } else if (head.text == "loc") {
            s.name = ident();
            expect_symbol(Token::Kind::Eq, "=");
            Token which = expect(Token::Kind::Ident, "disc/hseg/pair");
            if (which.text == "disc") {
                s.kind = ScriptStmt::Kind::LocDisc;
                expect_symbol(Token::Kind::LParen, "(");
                auto c = point_literal();
                expect_symbol(Token::Kind::Comma, ",");
                double r = number();
                expect_symbol(Token::Kind::RParen, ")");
                s.nums = {c[0], c[1], r};
                if (!(r > 0)) {
                    throw ParseError(which.line, which.col, "disc radius must be positive");
                }
            } else if (which.text == "hseg") {
                s.kind = ScriptStmt::Kind::LocHSeg;
                expect_symbol(Token::Kind::LParen, "(");
                double a = number();
                expect_symbol(Token::Kind::Comma, ",");
                double b = number();
                expect_symbol(Token::Kind::Comma, ",");
                double c = number();
                expect_symbol(Token::Kind::RParen, ")");
                s.nums = {a, b, c};
                if (!(a < b)) {
                    throw ParseError(which.line, which.col, "hseg requires a < b");
                }
            } else if (which.text == "pair") {
                s.kind = ScriptStmt::Kind::LocPair;
                expect_symbol(Token::Kind::LParen, "(");
                auto p = point_literal();
                expect_symbol(Token::Kind::Comma, ",");
                auto q = point_literal();
                expect_symbol(Token::Kind::RParen, ")");
                s.nums = {p[0], p[1], q[0], q[1]};
                if (p[0] == q[0] && p[1] == q[1]) {
                    throw ParseError(which.line, which.col, "pair requires distinct points");
                }
            } else {
                throw ParseError(which.line, which.col,
                                 "unknown location kind '" + which.text + "'");
            }
        } else if (head.text == "choose") {
            s.kind = ScriptStmt::Kind::Choose;
            s.name = ident();
            expect_keyword("in", "expected 'in'");
            s.a = ident();
        } else if (head.text == "target") {
            if (info.target) {
                throw ParseError(head.line, head.col, "duplicate target declaration");
            }
            Token which = expect(Token::Kind::Ident, "a target name");
            TargetSpec spec;
            spec.name = which.text;
            if (which.text == "point") {
                auto p = point_literal();
                spec.x = p[0];
                spec.y = p[1];
            } else if (which.text != "none" && which.text != "equilateral" &&
                       which.text != "unit_pair") {
                throw ParseError(which.line, which.col,
                                 "unknown target '" + which.text + "'");
            }
            info.target = spec;
            return;
        } else if (head.text == "macro") {
            if (!info.stmts.empty() || info.macro) {
                throw ParseError(head.line, head.col,
                                 "macro must be the only statement in the script");
            }
            Token name = expect(Token::Kind::Ident, "a macro name");
            std::vector<double> args;
            if (peek().kind == Token::Kind::LParen) {
                expect_symbol(Token::Kind::LParen, "(");
                auto c = point_literal();
                expect_symbol(Token::Kind::Comma, ",");
                args = {c[0], c[1], number()};
                expect_symbol(Token::Kind::RParen, ")");
            }
            info.macro = {name.text, args};
            macro_pos = {name.line, name.col};
            return;
        } else {
            throw ParseError(head.line, head.col, "unknown statement '" + head.text + "'");
        }
        if (info.macro) {
            throw ParseError(head.line, head.col,
                             "macro must be the only statement in the script");
        }
        info.stmts.push_back(std::move(s));
    }

    std::vector<Token> tokens_;
    std::size_t pos_ = 0;
};

// ============================================================================
// Static checks + compilation
// ============================================================================

enum class SymKind { Point, Line, Circle, Loc };

struct Symbol {
    SymKind kind;
    int letter; // index in the configuration word
    const ScriptGiven* given = nullptr;
};

Target target_of(const std::optional<TargetSpec>& spec) {
    if (!spec || spec->name == "none") return target_none();
    if (spec->name == "equilateral") return target_equilateral();
    if (spec->name == "unit_pair") return target_unit_pair();
    return target_point({spec->x, spec->y});
}

ParsedScript compile_macro(const ScriptInfo& info, std::pair<int, int> pos) {
    const auto& [name, args] = *info.macro;
    ConstructionProgram program;
    Target target = target_none();
    if (name == "origin_via_u") {
        program = origin_program();
        target = target_point({0, 0});
    } else if (name == "unit_via_u") {
        program = unit_length_program();
        target = target_unit_pair();
    } else if (name == "center_via_u") {
        if (args.size() != 3) {
            throw ParseError(pos.first, pos.second,
                             "center_via_u needs a circle argument ((cx, cy), r)");
        }
        if (!(args[2] > 0)) {
            throw ParseError(pos.first, pos.second, "circle radius must be positive");
        }
        Circle k{{args[0], args[1]}, args[2]};
        program = center_via_u_program(k);
        target = target_point(k.center);
    } else {
        throw ParseError(pos.first, pos.second, "unknown macro '" + name + "'");
    }
    if (program.declared_type != info.type) {
        throw ParseError(pos.first, pos.second,
                         std::string("type header violation: macro '") + name + "' is a " +
                             type_name(program.declared_type) + " construction");
    }
    if (info.target) {
        target = target_of(info.target);
    }
    program.script = std::make_shared<ScriptInfo>(info);
    return {std::move(program), std::move(target)};
}

ParsedScript compile(ScriptInfo info, std::pair<int, int> macro_pos) {
    if (info.macro) {
        return compile_macro(info, macro_pos);
    }
    std::map<std::string, Symbol> symbols;
    Word root;

    auto define = [&](const std::string& name, SymKind kind, int letter, int line, int col,
                      const ScriptGiven* given = nullptr) {
        if (symbols.count(name)) {
            throw ParseError(line, col, "duplicate identifier '" + name + "'");
        }
        symbols[name] = {kind, letter, given};
    };
    auto resolve = [&](const std::string& name, int line, int col) -> const Symbol& {
        auto it = symbols.find(name);
        if (it == symbols.end()) {
            throw ParseError(line, col, "use before define: '" + name + "'");
        }
        return it->second;
    };
    auto require_kind = [&](const Symbol& sym, SymKind kind, const std::string& name, int line,
                            int col, const char* what) {
        if (sym.kind != kind) {
            throw ParseError(line, col, "'" + name + "' is not a " + what);
        }
    };

    for (const ScriptGiven& g : info.givens) {
        int letter = static_cast<int>(root.size());
        switch (g.kind) {
            case ScriptGiven::Kind::Point:
                root.emplace_back(Point{g.nums[0], g.nums[1]});
                break;
            case ScriptGiven::Kind::Line:
                root.emplace_back(make_line(g.nums[0], g.nums[1], g.nums[2]));
                break;
            case ScriptGiven::Kind::Circle:
                if (!(g.nums[2] > 0)) {
                    throw ParseError(1, 1, "circle radius must be positive");
                }
                root.emplace_back(Circle{{g.nums[0], g.nums[1]}, g.nums[2]});
                break;
        }
        SymKind k = g.kind == ScriptGiven::Kind::Point  ? SymKind::Point
                    : g.kind == ScriptGiven::Kind::Line ? SymKind::Line
                                                        : SymKind::Circle;
        define(g.name, k, letter, 1, 1, &g);
    }

    std::vector<StepRule> steps;
    int pending_loc_letter = -1; // a location letter awaiting its choose
    std::string pending_loc_name;

    for (const ScriptStmt& s : info.stmts) {
        int letter = static_cast<int>(root.size() + steps.size());
        if (pending_loc_letter >= 0 && s.kind != ScriptStmt::Kind::Choose) {
            throw ParseError(s.line, s.col,
                             "location '" + pending_loc_name + "' must be followed by choose");
        }
        switch (s.kind) {
            case ScriptStmt::Kind::Line: {
                const Symbol& a = resolve(s.a, s.line, s.col);
                const Symbol& b = resolve(s.b, s.line, s.col);
                require_kind(a, SymKind::Point, s.a, s.line, s.col, "point");
                require_kind(b, SymKind::Point, s.b, s.line, s.col, "point");
                if (s.a == s.b) {
                    throw ParseError(s.line, s.col, "rule 2 needs two distinct points");
                }
                if (info.type == ConstructionType::Compass) {
                    throw ParseError(s.line, s.col,
                                     "type header violation: line drawing forbidden in a "
                                     "compass construction");
                }
                steps.push_back(NewLine{a.letter, b.letter});
                define(s.name, SymKind::Line, letter, s.line, s.col);
                break;
            }
            case ScriptStmt::Kind::Circle: {
                const Symbol& a = resolve(s.a, s.line, s.col);
                const Symbol& b = resolve(s.b, s.line, s.col);
                const Symbol& c = resolve(s.c, s.line, s.col);
                require_kind(a, SymKind::Point, s.a, s.line, s.col, "point");
                require_kind(b, SymKind::Point, s.b, s.line, s.col, "point");
                require_kind(c, SymKind::Point, s.c, s.line, s.col, "point");
                if (info.type == ConstructionType::Straightedge && s.b != s.c) {
                    // Statically decidable only for given literals.
                    if (b.given && c.given &&
                        (b.given->nums[0] != c.given->nums[0] ||
                         b.given->nums[1] != c.given->nums[1])) {
                        throw ParseError(s.line, s.col,
                                         "type header violation: non-degenerate circle "
                                         "forbidden in a straightedge construction");
                    }
                }
                steps.push_back(NewCircle{a.letter, b.letter, c.letter});
                define(s.name, SymKind::Circle, letter, s.line, s.col);
                break;
            }
            case ScriptStmt::Kind::Meet: {
                const Symbol& a = resolve(s.a, s.line, s.col);
                const Symbol& b = resolve(s.b, s.line, s.col);
                if (a.kind != SymKind::Line && a.kind != SymKind::Circle) {
                    throw ParseError(s.line, s.col, "'" + s.a + "' is not a curve");
                }
                if (b.kind != SymKind::Line && b.kind != SymKind::Circle) {
                    throw ParseError(s.line, s.col, "'" + s.b + "' is not a curve");
                }
                if (s.a == s.b) {
                    throw ParseError(s.line, s.col, "rule 4 needs two distinct curves");
                }
                steps.push_back(NewIntersection{a.letter, b.letter, s.index});
                define(s.name, SymKind::Point, letter, s.line, s.col);
                break;
            }
            case ScriptStmt::Kind::LocDisc: {
                Disc d{{s.nums[0], s.nums[1]}, s.nums[2]};
                steps.push_back(NewLocation{[d](const Word&) { return Location(d); }});
                define(s.name, SymKind::Loc, letter, s.line, s.col);
                pending_loc_letter = letter;
                pending_loc_name = s.name;
                break;
            }
            case ScriptStmt::Kind::LocHSeg: {
                HSegment h{s.nums[0], s.nums[1], s.nums[2]};
                steps.push_back(NewLocation{[h](const Word&) { return Location(h); }});
                define(s.name, SymKind::Loc, letter, s.line, s.col);
                pending_loc_letter = letter;
                pending_loc_name = s.name;
                break;
            }
            case ScriptStmt::Kind::LocPair: {
                PointPair pp{{s.nums[0], s.nums[1]}, {s.nums[2], s.nums[3]}};
                steps.push_back(NewLocation{[pp](const Word&) { return Location(pp); }});
                define(s.name, SymKind::Loc, letter, s.line, s.col);
                pending_loc_letter = letter;
                pending_loc_name = s.name;
                break;
            }
            case ScriptStmt::Kind::Choose: {
                const Symbol& loc = resolve(s.a, s.line, s.col);
                require_kind(loc, SymKind::Loc, s.a, s.line, s.col, "location");
                if (loc.letter != letter - 1) {
                    throw ParseError(s.line, s.col,
                                     "choose must immediately follow its location (rule 6)");
                }
                steps.push_back(ChooseStep{});
                define(s.name, SymKind::Point, letter, s.line, s.col);
                pending_loc_letter = -1;
                break;
            }
        }
    }
    if (pending_loc_letter >= 0) {
        throw ParseError(info.stmts.back().line, info.stmts.back().col,
                         "location '" + pending_loc_name + "' must be followed by choose");
    }

    ParsedScript out;
    out.target = target_of(info.target);
    out.program.root = std::move(root);
    out.program.declared_type = info.type;
    std::size_t root_len = out.program.root.size();
    auto shared = std::make_shared<std::vector<StepRule>>(std::move(steps));
    out.program.next_step = [shared, root_len](const Word& w) -> StepRule {
        std::size_t idx = w.size() - root_len;
        return idx < shared->size() ? (*shared)[idx] : StepRule(EndStep{});
    };
    out.program.script = std::make_shared<ScriptInfo>(std::move(info));
    return out;
}

std::string num(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

} // namespace

ParsedScript parse_script(const std::string& text) {
    Parser parser(text);
    ScriptInfo info = parser.run();
    return compile(std::move(info), parser.macro_pos);
}

std::string format_program(const ConstructionProgram& program) {
    if (!program.script) {
        fail(Err::NotExpressible, "program has no script form (opaque step function)");
    }
    const ScriptInfo& info = *program.script;
    std::ostringstream os;
    os << "type " << type_name(info.type) << "\n";
    for (const ScriptGiven& g : info.givens) {
        switch (g.kind) {
            case ScriptGiven::Kind::Point:
                os << "given point " << g.name << " = (" << num(g.nums[0]) << ", "
                   << num(g.nums[1]) << ")\n";
                break;
            case ScriptGiven::Kind::Line:
                os << "given line " << g.name << " = (" << num(g.nums[0]) << ", "
                   << num(g.nums[1]) << ", " << num(g.nums[2]) << ")\n";
                break;
            case ScriptGiven::Kind::Circle:
                os << "given circle " << g.name << " = ((" << num(g.nums[0]) << ", "
                   << num(g.nums[1]) << "), " << num(g.nums[2]) << ")\n";
                break;
        }
    }
    if (info.macro) {
        os << "macro " << info.macro->first;
        if (!info.macro->second.empty()) {
            const auto& a = info.macro->second;
            os << " ((" << num(a[0]) << ", " << num(a[1]) << "), " << num(a[2]) << ")";
        }
        os << "\n";
    }
    for (const ScriptStmt& s : info.stmts) {
        switch (s.kind) {
            case ScriptStmt::Kind::Line:
                os << "line " << s.name << " = line(" << s.a << ", " << s.b << ")\n";
                break;
            case ScriptStmt::Kind::Circle:
                os << "circle " << s.name << " = circle(" << s.a << ", " << s.b << ", " << s.c
                   << ")\n";
                break;
            case ScriptStmt::Kind::Meet:
                os << "point " << s.name << " = meet(" << s.a << ", " << s.b << ", " << s.index
                   << ")\n";
                break;
            case ScriptStmt::Kind::LocDisc:
                os << "loc " << s.name << " = disc((" << num(s.nums[0]) << ", "
                   << num(s.nums[1]) << "), " << num(s.nums[2]) << ")\n";
                break;
            case ScriptStmt::Kind::LocHSeg:
                os << "loc " << s.name << " = hseg(" << num(s.nums[0]) << ", "
                   << num(s.nums[1]) << ", " << num(s.nums[2]) << ")\n";
                break;
            case ScriptStmt::Kind::LocPair:
                os << "loc " << s.name << " = pair((" << num(s.nums[0]) << ", "
                   << num(s.nums[1]) << "), (" << num(s.nums[2]) << ", " << num(s.nums[3])
                   << "))\n";
                break;
            case ScriptStmt::Kind::Choose:
                os << "choose " << s.name << " in " << s.a << "\n";
                break;
        }
    }
    if (info.target) {
        os << "target " << info.target->name;
        if (info.target->name == "point") {
            os << " (" << num(info.target->x) << ", " << num(info.target->y) << ")";
        }
        os << "\n";
    }
    os << "end\n";
    return os.str();
}

} // namespace ecs
