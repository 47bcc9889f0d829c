#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "ecs/builtins.hpp"
#include "ecs/closure.hpp"
#include "ecs/dsl.hpp"
#include "ecs/projective.hpp"
#include "ecs/trace_io.hpp"

namespace py = pybind11;
using namespace ecs;

namespace {

std::pair<double, double> to_pair(Point p) { return {p.x, p.y}; }
Point to_point(std::pair<double, double> xy) { return {xy.first, xy.second}; }

std::vector<std::pair<double, double>> to_pairs(const std::vector<Point>& pts) {
    std::vector<std::pair<double, double>> out;
    out.reserve(pts.size());
    for (Point p : pts) out.push_back(to_pair(p));
    return out;
}

PointSet set_from_pairs(const std::vector<std::pair<double, double>>& pts) {
    std::vector<Point> raw;
    raw.reserve(pts.size());
    for (auto& xy : pts) raw.push_back(to_point(xy));
    return make_point_set(raw);
}

std::string run_builtin_json(const std::string& name, std::uint64_t seed) {
    auto b = find_builtin(name);
    if (!b) {
        throw std::invalid_argument("unknown builtin '" + name + "'");
    }
    for (std::uint64_t attempt = 0; attempt < 256; ++attempt) {
        SamplerChooser chooser(seed + 1000 * attempt);
        try {
            return trace_to_json(execute(b->program, chooser));
        } catch (const Error& e) {
            if (e.code() != Err::GeometricFailure) throw;
        }
    }
    throw std::runtime_error("no admissible sample found");
}

std::string run_script_json(const std::string& text, std::uint64_t seed) {
    ParsedScript script = parse_script(text);
    SamplerChooser chooser(seed);
    Trace trace = execute(script.program, chooser);
    return trace_to_json(trace);
}

py::dict adversary_center_demo(double cx, double cy, double r, std::uint64_t seed,
                               int max_letters) {
    Circle k{{cx, cy}, r};
    // Inline randomized straightedge run mirroring the C++ property suite:
    // arbitrary points in random discs, chords, chord intersections.
    auto provider = hilbert_x_provider(k, 2, seed);
    ConstructionProgram naive;
    naive.root = {ConfigItem(k)};
    naive.declared_type = ConstructionType::Straightedge;
    auto steps = std::make_shared<std::vector<StepRule>>();
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> c(-2.5, 2.5);
    std::uniform_real_distribution<double> rad(0.4, 1.2);
    int n_points = std::max(2, max_letters / 4);
    for (int i = 0; i < n_points; ++i) {
        Disc d{{k.center.x + c(rng), k.center.y + c(rng)}, rad(rng)};
        steps->push_back(NewLocation{[d](const Word&) { return Location(d); }});
        steps->push_back(ChooseStep{});
    }
    for (int i = 0; i + 1 < n_points; ++i) {
        steps->push_back(NewLine{1 + 2 * i + 1, 1 + 2 * (i + 1) + 1});
    }
    naive.next_step = [steps](const Word& w) -> StepRule {
        std::size_t idx = w.size() - 1;
        return idx < steps->size() ? (*steps)[idx] : StepRule(EndStep{});
    };
    auto forbidden = [k](Point p) { return distance(p, k.center) <= 1e-9; };
    AdversaryReport report = adversary_run(naive, forbidden, *provider);
    py::dict out;
    out["avoided"] = report.avoided;
    out["note"] = report.note;
    out["trace"] = trace_to_json(report.trace);
    out["provider_calls"] = report.stats.calls;
    return out;
}

} // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Euclidean constructions with arbitrary points: geometric kernel, "
              "construction engine, deformation maps, closures, adversaries";

    py::register_exception<Error>(m, "EcsError");
    py::register_exception<ParseError>(m, "EcsParseError");

    // Kernel -------------------------------------------------------------
    m.def("distance", [](std::pair<double, double> p, std::pair<double, double> q) {
        return distance(to_point(p), to_point(q));
    });
    m.def("line_through",
          [](std::pair<double, double> p, std::pair<double, double> q) {
              Line l = line_through(to_point(p), to_point(q));
              return std::make_tuple(l.a, l.b, l.c);
          },
          "Canonical coefficients (a, b, c) of the line through two points");
    m.def("intersect_lines",
          [](std::tuple<double, double, double> l1,
             std::tuple<double, double, double> l2) -> py::object {
              Line a = make_line(std::get<0>(l1), std::get<1>(l1), std::get<2>(l1));
              Line b = make_line(std::get<0>(l2), std::get<1>(l2), std::get<2>(l2));
              LineMeet meet = intersect_lines(a, b);
              if (const auto* p = std::get_if<Point>(&meet)) {
                  return py::cast(to_pair(*p));
              }
              return py::cast(std::holds_alternative<Parallel>(meet) ? "parallel"
                                                                     : "identical");
          });
    m.def("intersect_line_circle",
          [](std::tuple<double, double, double> l, std::pair<double, double> center,
             double radius) {
              Line line = make_line(std::get<0>(l), std::get<1>(l), std::get<2>(l));
              return to_pairs(intersect_line_circle(line, Circle{to_point(center), radius}));
          });
    m.def("intersect_circles",
          [](std::pair<double, double> c1, double r1, std::pair<double, double> c2,
             double r2) {
              return to_pairs(
                  intersect_circles(Circle{to_point(c1), r1}, Circle{to_point(c2), r2}));
          });

    // Dense subset on the concrete circle ---------------------------------
    m.def("y0_point", [](double alpha) { return to_pair(y0_point(alpha)); });
    m.def("y_set_point", [](double alpha) { return to_pair(y_set_point(alpha)); });

    // Deformation maps -----------------------------------------------------
    m.def("strommer_apply",
          [](double a, std::pair<double, double> p) -> py::object {
              auto img = apply_point(PlaneMap{Strommer{a}}, to_point(p));
              if (!img) return py::none();
              return py::cast(to_pair(*img));
          },
          "Apply (x, y) -> (1/x, y/x); None on the excluded line");
    m.def("strommer_circle", [](double a) {
        Circle k = strommer_circle(a);
        return std::make_tuple(k.center.x, k.center.y, k.radius);
    });
    m.def("strommer_rotated_apply",
          [](double a, double theta, std::pair<double, double> p) -> py::object {
              auto img = apply_point(strommer_rotated_angle(a, theta), to_point(p));
              if (!img) return py::none();
              return py::cast(to_pair(*img));
          });

    // Programs ---------------------------------------------------------
    m.def("run_builtin", &run_builtin_json, py::arg("name"), py::arg("seed") = 0,
          "Execute a builtin program; returns the trace as JSON");
    m.def("run_script", &run_script_json, py::arg("text"), py::arg("seed") = 0,
          "Parse and execute a construction script; returns the trace as JSON");
    m.def("format_script", [](const std::string& text) {
        return format_program(parse_script(text).program);
    });
    m.def("builtin_names", [] {
        return std::vector<std::string>{"equilateral", "bisector", "unit-length",
                                        "center-via-u", "origin"};
    });

    // Closures -----------------------------------------------------------
    m.def("e_closure",
          [](const std::vector<std::pair<double, double>>& pts, int depth, std::size_t cap) {
              return to_pairs(e_closure(set_from_pairs(pts), depth, cap).points);
          },
          py::arg("points"), py::arg("depth") = 1, py::arg("cap") = 100000);
    m.def("h_closure",
          [](const std::vector<std::pair<double, double>>& pts,
             std::pair<double, double> center, double radius, int depth, std::size_t cap) {
              return to_pairs(
                  h_closure(set_from_pairs(pts), Circle{to_point(center), radius}, depth, cap)
                      .points);
          },
          py::arg("points"), py::arg("center"), py::arg("radius"), py::arg("depth") = 1,
          py::arg("cap") = 100000);
    m.def("scale_avoiding_unit", [](const std::vector<std::pair<double, double>>& pts) {
        ScaledSet s = scale_avoiding_unit(set_from_pairs(pts));
        return std::make_pair(s.alpha, to_pairs(s.scaled.points));
    });

    // Adversary ----------------------------------------------------------
    m.def("adversary_center_demo", &adversary_center_demo, py::arg("cx") = 0.0,
          py::arg("cy") = 0.0, py::arg("r") = 2.0, py::arg("seed") = 0,
          py::arg("max_letters") = 24,
          "Randomized straightedge run whose arbitrary points avoid the center");

    // Projective ----------------------------------------------------------
    m.def("f0_bar", [](std::tuple<double, double, double> h) {
        auto out = f0_bar({std::get<0>(h), std::get<1>(h), std::get<2>(h)});
        return std::make_tuple(out[0], out[1], out[2]);
    });
    m.def("f_pr", [](std::tuple<double, double, double> v) {
        ProjPoint p = make_proj_point(std::get<0>(v), std::get<1>(v), std::get<2>(v));
        ProjPoint img = f_pr(p);
        return std::make_tuple(img.v.x, img.v.y, img.v.z);
    });
    m.def("proj_check", [](std::uint64_t seed) {
        std::vector<std::pair<std::string, bool>> out;
        for (const ProjCheck& check : proj_invariant_battery(seed)) {
            out.push_back({check.name, check.pass});
        }
        return out;
    }, py::arg("seed") = 2024);

    m.attr("__version__") = "0.1.0";
}
