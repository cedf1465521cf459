#pragma once

#include <string>
#include <vector>

#include "meridian/domain.hpp"

namespace meridian {

// Minimal CSV table: comma separators, '.' decimal, LF line endings,
// fixed "%.9g" float formatting so output is byte-stable for a fixed seed.
struct CsvTable {
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;

    void add_row(std::vector<std::string> row) { rows.push_back(std::move(row)); }
    void write(const std::string& path) const;
};

std::string csv_num(double v);

// SVG 1.1 overlay of domain boundaries, curves and the basepoint.
struct SvgScene {
    double x0 = -1.1, y0 = -1.1, x1 = 1.1, y1 = 1.1;
    std::vector<std::string> elements;

    void fit(const Domain& domain, double margin = 0.08);
    void add_domain(const Domain& domain, const std::string& stroke = "#444444");
    void add_curve(const ClosedCurve& curve, const std::string& stroke, double width = 0.006);
    void add_point(Complex p, const std::string& fill, double radius = 0.012);
    void write(const std::string& path) const;
};

// Curve vertex dump: CSV `x,y` per vertex.
void write_curve_csv(const ClosedCurve& curve, const std::string& path);

} // namespace meridian
