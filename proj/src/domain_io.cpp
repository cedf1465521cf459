#include "meridian/domain_io.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

namespace meridian {

using nlohmann::json;

namespace {

Complex parse_point(const json& j) {
    if (!j.is_array() || j.size() != 2) throw IoFailure("point must be [re, im]");
    return Complex(j[0].get<double>(), j[1].get<double>());
}

json dump_point(Complex z) { return json::array({z.real(), z.imag()}); }

} // namespace

Domain parse_domain(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::exception& e) {
        throw IoFailure(std::string("domain file parse error: ") + e.what());
    }
    const double density = j.value("sample_density", 0.01);
    if (!j.contains("components") || !j["components"].is_array())
        throw IoFailure("domain file needs a components array");
    std::vector<Component> comps;
    for (const auto& c : j["components"]) {
        const std::string kind = c.value("kind", "");
        if (kind == "disc") {
            comps.push_back(make_component(
                DiscSpec{parse_point(c.at("center")), c.at("radius").get<double>()}, density));
        } else if (kind == "circle_arc_slit") {
            comps.push_back(make_component(
                CircleArcSlitSpec{parse_point(c.at("center")), c.at("radius").get<double>(),
                                  c.at("theta0").get<double>(), c.at("theta1").get<double>()},
                density));
        } else if (kind == "point") {
            comps.push_back(make_component(PointSpec{parse_point(c.at("z"))}, density));
        } else if (kind == "polyline") {
            PolylineSpec p;
            for (const auto& v : c.at("vertices")) p.vertices.push_back(parse_point(v));
            p.closed = c.value("closed", false);
            comps.push_back(make_component(p, density));
        } else if (kind == "outer_disc_complement") {
            comps.push_back(make_component(
                OuterDiscComplementSpec{parse_point(c.at("center")), c.at("radius").get<double>()},
                density));
        } else {
            throw IoFailure("unknown component kind '" + kind + "'");
        }
    }
    if (!j.contains("basepoint")) throw IoFailure("domain file needs a basepoint");
    return validate_domain(std::move(comps), parse_point(j["basepoint"]));
}

Domain load_domain(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoFailure("cannot open " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_domain(ss.str());
}

void save_domain(const Domain& domain, const std::string& path) {
    json comps = json::array();
    for (const auto& c : domain.components) {
        json e;
        if (const auto* d = std::get_if<DiscSpec>(&c.geometry)) {
            e["kind"] = "disc";
            e["center"] = dump_point(d->center);
            e["radius"] = d->radius;
        } else if (const auto* a = std::get_if<CircleArcSlitSpec>(&c.geometry)) {
            e["kind"] = "circle_arc_slit";
            e["center"] = dump_point(a->center);
            e["radius"] = a->radius;
            e["theta0"] = a->theta0;
            e["theta1"] = a->theta1;
        } else if (const auto* p = std::get_if<PointSpec>(&c.geometry)) {
            e["kind"] = "point";
            e["z"] = dump_point(p->z);
        } else if (const auto* pl = std::get_if<PolylineSpec>(&c.geometry)) {
            e["kind"] = "polyline";
            json verts = json::array();
            for (const auto& v : pl->vertices) verts.push_back(dump_point(v));
            e["vertices"] = verts;
            e["closed"] = pl->closed;
        } else if (const auto* o = std::get_if<OuterDiscComplementSpec>(&c.geometry)) {
            e["kind"] = "outer_disc_complement";
            e["center"] = dump_point(o->center);
            e["radius"] = o->radius;
        } else {
            // cloud components are an internal representation only
            continue;
        }
        comps.push_back(e);
    }
    json j;
    j["components"] = comps;
    j["basepoint"] = dump_point(domain.basepoint);
    std::ofstream out(path);
    if (!out) throw IoFailure("cannot write " + path);
    out << j.dump(2) << "\n";
}

} // namespace meridian
