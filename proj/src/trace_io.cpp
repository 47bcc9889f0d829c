#include "ecs/trace_io.hpp"

#include <cstdio>
#include <sstream>

#include "json.hpp"

namespace ecs {

namespace {

std::string num(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

void append_point(std::ostringstream& os, const Point& p) {
    os << "[" << num(p.x) << "," << num(p.y) << "]";
}

void append_item(std::ostringstream& os, const ConfigItem& it) {
    if (const auto* p = std::get_if<Point>(&it)) {
        os << R"({"kind":"point","xy":)";
        append_point(os, *p);
        os << "}";
    } else if (const auto* l = std::get_if<Line>(&it)) {
        os << R"({"kind":"line","abc":[)" << num(l->a) << "," << num(l->b) << ","
           << num(l->c) << "]}";
    } else if (const auto* k = std::get_if<Circle>(&it)) {
        os << R"({"kind":"circle","center":)";
        append_point(os, k->center);
        os << R"(,"radius":)" << num(k->radius) << "}";
    } else {
        const auto& loc = std::get<Location>(it);
        if (const auto* d = std::get_if<Disc>(&loc)) {
            os << R"({"kind":"disc","center":)";
            append_point(os, d->center);
            os << R"(,"radius":)" << num(d->radius) << "}";
        } else if (const auto* h = std::get_if<HSegment>(&loc)) {
            os << R"({"kind":"hseg","a":)" << num(h->a) << R"(,"b":)" << num(h->b)
               << R"(,"c":)" << num(h->c) << "}";
        } else {
            const auto& pp = std::get<PointPair>(loc);
            os << R"({"kind":"pair","p":)";
            append_point(os, pp.p);
            os << R"(,"q":)";
            append_point(os, pp.q);
            os << "}";
        }
    }
}

} // namespace

std::string trace_to_json(const Trace& trace) {
    std::ostringstream os;
    os << R"({"root":[)";
    std::size_t root_len = 0;
    while (root_len < trace.word.size() && trace.provenance[root_len].kind == StepKind::Root) {
        ++root_len;
    }
    for (std::size_t i = 0; i < root_len; ++i) {
        if (i) os << ",";
        append_item(os, trace.word[i]);
    }
    os << R"(],"steps":[)";
    for (std::size_t i = root_len; i < trace.word.size(); ++i) {
        if (i > root_len) os << ",";
        const Provenance& prov = trace.provenance[i];
        os << R"({"rule":")" << step_kind_name(prov.kind) << "\"";
        if (prov.kind == StepKind::NewLine) {
            os << R"(,"i":)" << prov.i << R"(,"j":)" << prov.j;
        } else if (prov.kind == StepKind::NewCircle) {
            os << R"(,"i":)" << prov.i << R"(,"j":)" << prov.j << R"(,"k":)" << prov.k;
        } else if (prov.kind == StepKind::NewIntersection) {
            os << R"(,"i":)" << prov.i << R"(,"j":)" << prov.j << R"(,"select":)" << prov.select;
        }
        os << R"(,"produced":)";
        append_item(os, trace.word[i]);
        os << "}";
    }
    os << R"(],"chooser_log":[)";
    for (std::size_t i = 0; i < trace.chooser_log.size(); ++i) {
        if (i) os << ",";
        os << R"({"location":)";
        append_item(os, ConfigItem(trace.chooser_log[i].location));
        os << R"(,"point":)";
        append_point(os, trace.chooser_log[i].point);
        os << "}";
    }
    os << R"(],"type":")" << type_name(trace.declared_type) << "\"}";
    return os.str();
}

std::vector<Point> chooser_points_from_json(const std::string& json_text) {
    nlohmann::json doc = nlohmann::json::parse(json_text);
    std::vector<Point> points;
    for (const auto& entry : doc.at("chooser_log")) {
        const auto& xy = entry.at("point");
        points.push_back({xy.at(0).get<double>(), xy.at(1).get<double>()});
    }
    return points;
}

} // namespace ecs
