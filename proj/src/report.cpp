#include "meridian/report.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>

namespace meridian {

namespace {
constexpr double kPi = 3.14159265358979323846;

std::string svg_num(double v) {
    char buf[48];
    std::snprintf(buf, sizeof(buf), "%.5f", v);
    return buf;
}
} // namespace

std::string csv_num(double v) {
    char buf[48];
    std::snprintf(buf, sizeof(buf), "%.9g", v);
    return buf;
}

void CsvTable::write(const std::string& path) const {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoFailure("cannot write " + path);
    for (size_t i = 0; i < header.size(); ++i) out << (i ? "," : "") << header[i];
    out << "\n";
    for (const auto& row : rows) {
        for (size_t i = 0; i < row.size(); ++i) out << (i ? "," : "") << row[i];
        out << "\n";
    }
}

void SvgScene::fit(const Domain& domain, double margin) {
    domain.bounding_box(x0, y0, x1, y1);
    const double m = margin * std::max(x1 - x0, y1 - y0);
    x0 -= m;
    y0 -= m;
    x1 += m;
    y1 += m;
}

void SvgScene::add_domain(const Domain& domain, const std::string& stroke) {
    for (const auto& comp : domain.components) {
        if (const auto* d = std::get_if<DiscSpec>(&comp.geometry)) {
            elements.push_back("<circle cx=\"" + svg_num(d->center.real()) + "\" cy=\"" +
                               svg_num(-d->center.imag()) + "\" r=\"" + svg_num(d->radius) +
                               "\" fill=\"none\" stroke=\"" + stroke + "\" stroke-width=\"0.006\"/>");
        } else if (const auto* o = std::get_if<OuterDiscComplementSpec>(&comp.geometry)) {
            elements.push_back("<circle cx=\"" + svg_num(o->center.real()) + "\" cy=\"" +
                               svg_num(-o->center.imag()) + "\" r=\"" + svg_num(o->radius) +
                               "\" fill=\"none\" stroke=\"" + stroke + "\" stroke-width=\"0.008\"/>");
        } else if (const auto* a = std::get_if<CircleArcSlitSpec>(&comp.geometry)) {
            double span = a->theta1 - a->theta0;
            while (span <= 0) span += 2 * kPi;
            const Complex p0 = a->center + std::polar(a->radius, a->theta0);
            const Complex p1 = a->center + std::polar(a->radius, a->theta0 + span);
            const int large = span > kPi ? 1 : 0;
            // sweep flag 0 because the y axis is flipped
            elements.push_back("<path d=\"M " + svg_num(p0.real()) + " " + svg_num(-p0.imag()) +
                               " A " + svg_num(a->radius) + " " + svg_num(a->radius) + " 0 " +
                               std::to_string(large) + " 0 " + svg_num(p1.real()) + " " +
                               svg_num(-p1.imag()) + "\" fill=\"none\" stroke=\"" + stroke +
                               "\" stroke-width=\"0.006\"/>");
        } else if (const auto* p = std::get_if<PointSpec>(&comp.geometry)) {
            elements.push_back("<circle cx=\"" + svg_num(p->z.real()) + "\" cy=\"" +
                               svg_num(-p->z.imag()) + "\" r=\"0.008\" fill=\"" + stroke + "\"/>");
        } else {
            // polyline or cloud: draw the boundary sample
            std::string pts;
            size_t count = 0;
            const auto& sample = comp.sample.points;
            const size_t stride = std::max<size_t>(1, sample.size() / 512);
            for (size_t k = 0; k < sample.size(); k += stride) {
                if (sample[k].is_infinity()) continue;
                pts += svg_num(sample[k].z.real()) + "," + svg_num(-sample[k].z.imag()) + " ";
                ++count;
            }
            if (count > 1)
                elements.push_back("<polyline points=\"" + pts + "\" fill=\"none\" stroke=\"" +
                                   stroke + "\" stroke-width=\"0.006\"/>");
        }
    }
}

void SvgScene::add_curve(const ClosedCurve& curve, const std::string& stroke, double width) {
    std::string pts;
    for (const auto& v : curve.vertices)
        pts += svg_num(v.real()) + "," + svg_num(-v.imag()) + " ";
    elements.push_back("<polyline points=\"" + pts + "\" fill=\"none\" stroke=\"" + stroke +
                       "\" stroke-width=\"" + svg_num(width) + "\"/>");
}

void SvgScene::add_point(Complex p, const std::string& fill, double radius) {
    elements.push_back("<circle cx=\"" + svg_num(p.real()) + "\" cy=\"" + svg_num(-p.imag()) +
                       "\" r=\"" + svg_num(radius) + "\" fill=\"" + fill + "\"/>");
}

void SvgScene::write(const std::string& path) const {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoFailure("cannot write " + path);
    out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"640\" height=\"640\" "
           "viewBox=\""
        << svg_num(x0) << " " << svg_num(-y1) << " " << svg_num(x1 - x0) << " " << svg_num(y1 - y0)
        << "\">\n";
    out << "<rect x=\"" << svg_num(x0) << "\" y=\"" << svg_num(-y1) << "\" width=\""
        << svg_num(x1 - x0) << "\" height=\"" << svg_num(y1 - y0) << "\" fill=\"#ffffff\"/>\n";
    for (const auto& e : elements) out << e << "\n";
    out << "</svg>\n";
}

void write_curve_csv(const ClosedCurve& curve, const std::string& path) {
    CsvTable t;
    t.header = {"x", "y"};
    for (const auto& v : curve.vertices) t.add_row({csv_num(v.real()), csv_num(v.imag())});
    t.write(path);
}

} // namespace meridian
