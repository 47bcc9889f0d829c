// ecs: construction scripts, adversarial demonstrations, dense-set and
// closure generators on the command line.

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "ecs/builtins.hpp"
#include "ecs/closure.hpp"
#include "ecs/dsl.hpp"
#include "ecs/projective.hpp"
#include "ecs/trace_io.hpp"

using namespace ecs;

namespace {

constexpr int kExitParse = 2;
constexpr int kExitExec = 3;
constexpr int kExitUnsupportedLocation = 4;

std::string num(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

std::uint64_t stream_seed(std::uint64_t seed, std::uint64_t counter) {
    std::uint64_t z = seed ^ (0x9e3779b97f4a7c15ull * (counter + 1));
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
}

std::string slurp_file(const std::string& path) {
    std::ifstream in(path);
    if (!in.good()) {
        throw std::runtime_error("cannot open " + path);
    }
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

struct ProgramChoice {
    std::string script_path;
    std::string builtin;
    std::vector<double> circle; // cx cy r override for circle-taking builtins
};

ParsedScript load_program(const ProgramChoice& choice) {
    if (!choice.builtin.empty()) {
        if (choice.builtin == "center-via-u" && choice.circle.size() == 3) {
            Circle k{{choice.circle[0], choice.circle[1]}, choice.circle[2]};
            return {center_via_u_program(k), target_point(k.center)};
        }
        if (auto b = find_builtin(choice.builtin)) {
            return {std::move(b->program), std::move(b->target)};
        }
        throw std::runtime_error("unknown builtin '" + choice.builtin +
                                 "' (equilateral, bisector, unit-length, center-via-u, origin)");
    }
    return parse_script(slurp_file(choice.script_path));
}

std::optional<Circle> first_root_circle(const ConstructionProgram& p) {
    for (const ConfigItem& it : p.root) {
        if (const auto* k = std::get_if<Circle>(&it)) {
            return *k;
        }
    }
    return std::nullopt;
}

// Executes one sample, retrying rejection-sampled draws (GeometricFailure).
Trace run_sample(const ConstructionProgram& program, std::uint64_t seed, std::uint64_t index) {
    for (std::uint64_t attempt = 0; attempt < 256; ++attempt) {
        SamplerChooser chooser(stream_seed(seed, index * 1000 + attempt));
        try {
            return execute(program, chooser);
        } catch (const Error& e) {
            if (e.code() != Err::GeometricFailure || attempt == 255) {
                throw;
            }
        }
    }
    fail(Err::GeometricFailure, "unreachable");
}

int cmd_run(const ProgramChoice& choice, std::uint64_t seed, int samples,
            const std::string& format) {
    ParsedScript script;
    try {
        script = load_program(choice);
    } catch (const ParseError& e) {
        std::cerr << e.what() << "\n";
        return kExitParse;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitParse;
    }
    int passed = 0;
    for (int i = 0; i < samples; ++i) {
        Trace trace;
        try {
            trace = run_sample(script.program, seed, static_cast<std::uint64_t>(i));
        } catch (const Error& e) {
            std::cerr << "execution error on sample " << i << ": " << e.what() << "\n";
            return kExitExec;
        }
        bool ok = check_constructs(trace, script.target);
        passed += ok ? 1 : 0;
        if (format == "json") {
            std::cout << trace_to_json(trace) << "\n";
        } else {
            std::cout << "sample " << i << ": " << (ok ? "pass" : "fail") << " (letters "
                      << trace.word.size() << ", type "
                      << type_name(type_audit(trace).minimal) << ")\n";
        }
    }
    std::cout << "passed " << passed << "/" << samples << "\n";
    return passed == samples ? 0 : 1;
}

int cmd_adversary(const ProgramChoice& choice, const std::string& forbidden_name, int depth,
                  std::uint64_t seed) {
    ParsedScript script;
    try {
        script = load_program(choice);
    } catch (const ParseError& e) {
        std::cerr << e.what() << "\n";
        return kExitParse;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitParse;
    }

    std::unique_ptr<XProvider> provider;
    std::function<bool(Point)> forbidden;
    bool pairwise_unit = false;
    if (forbidden_name == "center") {
        Circle k{{0, 0}, 1};
        if (choice.circle.size() == 3) {
            k = Circle{{choice.circle[0], choice.circle[1]}, choice.circle[2]};
        } else if (auto root_k = first_root_circle(script.program)) {
            k = *root_k;
        }
        provider = hilbert_x_provider(k, depth, seed);
        forbidden = [k](Point p) { return distance(p, k.center) <= 1e-9; };
    } else if (forbidden_name == "origin") {
        provider = origin_avoiding_provider(depth, seed);
        forbidden = [](Point p) { return std::hypot(p.x, p.y) <= 1e-9; };
    } else if (forbidden_name == "unit") {
        provider = unit_avoiding_provider(depth, seed);
        forbidden = [](Point) { return false; };
        pairwise_unit = true;
    } else {
        std::cerr << "error: --forbidden must be center, origin, or unit\n";
        return kExitParse;
    }

    AdversaryReport report;
    try {
        report = adversary_run(script.program, forbidden, *provider);
    } catch (const Error& e) {
        if (e.code() == Err::UnsupportedLocation) {
            std::cerr << "unsupported location: " << e.what() << "\n"
                      << "The provider realizes classical (disc) arbitrary points only; "
                         "stronger location systems are exactly what the adversary cannot "
                         "control.\n";
            return kExitUnsupportedLocation;
        }
        std::cerr << "execution error: " << e.what() << "\n";
        return kExitExec;
    }

    std::optional<std::pair<Point, Point>> unit_hit;
    if (pairwise_unit) {
        unit_hit = find_unit_pair(report.trace);
        report.avoided = !unit_hit.has_value();
    }

    std::cout << "avoided=" << (report.avoided ? "true" : "false") << "\n";
    if (report.witness) {
        std::cout << "witness=(" << num(report.witness->x) << ", " << num(report.witness->y)
                  << ")\n";
    }
    if (unit_hit) {
        std::cout << "witness-pair=(" << num(unit_hit->first.x) << ", "
                  << num(unit_hit->first.y) << ") (" << num(unit_hit->second.x) << ", "
                  << num(unit_hit->second.y) << ")\n";
    }
    std::cout << "provider-calls=" << report.stats.calls
              << " refinements=" << report.stats.refinements;
    if (report.stats.min_anchor_distance >= 0) {
        std::cout << " min-anchor-distance=" << num(report.stats.min_anchor_distance);
    }
    std::cout << "\nnote: " << report.note << "\n";
    return report.avoided ? 0 : 1;
}

int cmd_gen_y(const std::vector<double>& alphas, const std::string& list_path,
              const std::vector<double>& range) {
    std::vector<double> values = alphas;
    if (!list_path.empty()) {
        std::ifstream in(list_path);
        if (!in.good()) {
            std::cerr << "error: cannot open " << list_path << "\n";
            return kExitParse;
        }
        double a;
        while (in >> a) values.push_back(a);
    }
    if (range.size() == 3) {
        for (double a = range[0]; a <= range[1] + 1e-12; a += range[2]) {
            values.push_back(a);
        }
    }
    if (values.empty()) {
        std::cerr << "error: no alphas given (--alpha, --alpha-list, or --range)\n";
        return kExitParse;
    }
    for (double a : values) {
        Point p = y_set_point(a);
        std::cout << num(a) << " " << num(p.x) << " " << num(p.y) << "\n";
    }
    return 0;
}

int cmd_closure(const std::string& kind, int depth, const std::string& seed_path,
                const std::vector<double>& circle, std::size_t cap) {
    PointSet seed;
    try {
        std::ifstream in(seed_path);
        if (!in.good()) {
            std::cerr << "error: cannot open " << seed_path << "\n";
            return kExitParse;
        }
        seed = read_point_set(in);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitParse;
    }
    try {
        PointSet out;
        if (kind == "e") {
            out = e_closure(seed, depth, cap);
        } else if (kind == "h") {
            if (circle.size() != 3) {
                std::cerr << "error: --kind h requires --circle cx cy r\n";
                return kExitParse;
            }
            out = h_closure(seed, Circle{{circle[0], circle[1]}, circle[2]}, depth, cap);
        } else {
            std::cerr << "error: --kind must be e or h\n";
            return kExitParse;
        }
        write_point_set(std::cout, out);
        std::cerr << "points " << out.size() << " (seed " << out.seed_size << ", depth "
                  << out.depth << ")\n";
        return 0;
    } catch (const Error& e) {
        std::cerr << "execution error: " << e.what() << "\n";
        return kExitExec;
    }
}

int cmd_proj_check(std::uint64_t seed) {
    bool all = true;
    for (const ProjCheck& check : proj_invariant_battery(seed)) {
        all = all && check.pass;
        std::cout << (check.pass ? "PASS" : "FAIL") << "  " << check.name;
        if (!check.detail.empty()) {
            std::cout << "  [" << check.detail << "]";
        }
        std::cout << "\n";
    }
    ProjPoint cp = proj_center_image();
    std::cout << "center image: " << num(cp.v.x) << " " << num(cp.v.y) << " " << num(cp.v.z)
              << "\n";
    std::cout << (all ? "all checks passed" : "some checks FAILED") << "\n";
    return all ? 0 : 1;
}

int cmd_apply_map(const std::string& name, const std::string& points_path) {
    try {
        PlaneMap map = parse_map_name(name);
        std::ifstream in(points_path);
        if (!in.good()) {
            std::cerr << "error: cannot open " << points_path << "\n";
            return kExitParse;
        }
        double x, y;
        while (in >> x >> y) {
            auto img = apply_point(map, {x, y});
            if (img) {
                std::cout << num(img->x) << " " << num(img->y) << "\n";
            } else {
                std::cout << "undefined\n";
            }
        }
        return 0;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitParse;
    }
}

int cmd_fmt(const std::string& path) {
    try {
        ParsedScript script = parse_script(slurp_file(path));
        std::cout << format_program(script.program);
        return 0;
    } catch (const ParseError& e) {
        std::cerr << e.what() << "\n";
        return kExitParse;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitExec;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitParse;
    }
}

} // namespace

int main(int argc, char** argv) {
    if (const char* tol = std::getenv("ECS_TOLERANCE")) {
        char* end = nullptr;
        double eps = std::strtod(tol, &end);
        if (end != tol && eps > 0) {
            tolerance().eps_abs = eps;
        }
    }

    CLI::App app{"Euclidean constructions with arbitrary points"};
    app.require_subcommand(1);

    // run
    auto* run = app.add_subcommand("run", "execute a construction script");
    ProgramChoice run_choice;
    std::uint64_t run_seed = 0;
    int run_samples = 1;
    std::string run_format = "json";
    run->add_option("script", run_choice.script_path, "path to a .ecs script");
    run->add_option("--builtin", run_choice.builtin, "builtin program name");
    run->add_option("--circle", run_choice.circle, "cx cy r for circle-taking builtins")
        ->expected(3);
    run->add_option("--seed", run_seed, "sampler seed");
    run->add_option("--samples", run_samples, "number of executions");
    run->add_option("--format", run_format, "json or text")
        ->check(CLI::IsMember({"json", "text"}));

    // adversary
    auto* adv = app.add_subcommand("adversary", "run with an adversarial chooser");
    ProgramChoice adv_choice;
    std::string adv_forbidden = "center";
    int adv_depth = 1;
    std::uint64_t adv_seed = 0;
    adv->add_option("script", adv_choice.script_path, "path to a .ecs script");
    adv->add_option("--builtin", adv_choice.builtin, "builtin program name");
    adv->add_option("--circle", adv_choice.circle, "cx cy r of the target circle")->expected(3);
    adv->add_option("--forbidden", adv_forbidden, "center, origin, or unit");
    adv->add_option("--depth", adv_depth, "closure preview depth");
    adv->add_option("--seed", adv_seed, "provider seed");

    // gen-y
    auto* gen = app.add_subcommand("gen-y", "emit dense-subset points p(alpha)");
    std::vector<double> gen_alphas;
    std::string gen_list;
    std::vector<double> gen_range;
    gen->add_option("--alpha", gen_alphas, "alpha value (repeatable)");
    gen->add_option("--alpha-list", gen_list, "file with one alpha per line");
    gen->add_option("--range", gen_range, "lo hi step")->expected(3);

    // closure
    auto* clo = app.add_subcommand("closure", "finite-depth intersection closure");
    std::string clo_kind = "e";
    int clo_depth = 1;
    std::string clo_seed_path;
    std::vector<double> clo_circle;
    std::size_t clo_cap = 100000;
    clo->add_option("--kind", clo_kind, "e or h");
    clo->add_option("--depth", clo_depth, "closure depth");
    clo->add_option("--seed", clo_seed_path, "seed point file (x y per line)")->required();
    clo->add_option("--circle", clo_circle, "cx cy r of the fixed circle (kind h)")->expected(3);
    clo->add_option("--cap", clo_cap, "point cap");

    // proj-check
    auto* proj = app.add_subcommand("proj-check", "projective invariant battery");
    std::uint64_t proj_seed = 2024;
    proj->add_option("--seed", proj_seed, "battery seed");

    // apply-map
    auto* amap = app.add_subcommand("apply-map", "apply a named deformation map to points");
    std::string amap_name;
    std::string amap_points;
    amap->add_option("--map", amap_name,
                     "scale:a | strommer:a | strommer:a:theta | transfer:cx,cy,r->cx,cy,r")
        ->required();
    amap->add_option("--points", amap_points, "point file (x y per line)")->required();

    // fmt
    auto* fmt = app.add_subcommand("fmt", "parse and re-serialize a script");
    std::string fmt_path;
    fmt->add_option("script", fmt_path, "path to a .ecs script")->required();

    CLI11_PARSE(app, argc, argv);

    if (run->parsed()) {
        if (run_choice.script_path.empty() && run_choice.builtin.empty()) {
            std::cerr << "error: give a script path or --builtin\n";
            return kExitParse;
        }
        return cmd_run(run_choice, run_seed, run_samples, run_format);
    }
    if (adv->parsed()) {
        if (adv_choice.script_path.empty() && adv_choice.builtin.empty()) {
            std::cerr << "error: give a script path or --builtin\n";
            return kExitParse;
        }
        return cmd_adversary(adv_choice, adv_forbidden, adv_depth, adv_seed);
    }
    if (gen->parsed()) {
        return cmd_gen_y(gen_alphas, gen_list, gen_range);
    }
    if (clo->parsed()) {
        return cmd_closure(clo_kind, clo_depth, clo_seed_path, clo_circle, clo_cap);
    }
    if (proj->parsed()) {
        return cmd_proj_check(proj_seed);
    }
    if (amap->parsed()) {
        return cmd_apply_map(amap_name, amap_points);
    }
    return cmd_fmt(fmt_path);
}
