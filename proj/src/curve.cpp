#include "meridian/curve.hpp"

#include <algorithm>
#include <cmath>

namespace meridian {

namespace {
constexpr double kPi = 3.14159265358979323846;
}

ClosedCurve::ClosedCurve(std::vector<Complex> open_loop) {
    vertices = std::move(open_loop);
    if (vertices.size() < 3) throw Error("closed curve needs at least 3 vertices");
    if (vertices.front() != vertices.back()) vertices.push_back(vertices.front());
    orientation = signed_area() >= 0.0 ? +1 : -1;
}

double ClosedCurve::euclidean_length() const {
    double len = 0.0;
    for (size_t i = 0; i + 1 < vertices.size(); ++i) len += std::abs(vertices[i + 1] - vertices[i]);
    return len;
}

Complex ClosedCurve::centroid() const {
    Complex s{0.0, 0.0};
    const size_t n = edge_count();
    for (size_t i = 0; i < n; ++i) s += vertices[i];
    return n ? s / static_cast<double>(n) : s;
}

double ClosedCurve::signed_area() const {
    double a = 0.0;
    for (size_t i = 0; i + 1 < vertices.size(); ++i) {
        const Complex p = vertices[i], q = vertices[i + 1];
        a += p.real() * q.imag() - q.real() * p.imag();
    }
    return 0.5 * a;
}

bool ClosedCurve::is_simple(double tol) const {
    const size_t n = edge_count();
    for (size_t i = 0; i < n; ++i) {
        for (size_t j = i + 2; j < n; ++j) {
            if (i == 0 && j == n - 1) continue; // adjacent through the closure
            if (segments_intersect(vertices[i], vertices[i + 1], vertices[j], vertices[j + 1]))
                return false;
            if (tol > 0.0) {
                if (dist_point_segment(vertices[i], vertices[j], vertices[j + 1]) < tol) return false;
            }
        }
    }
    return true;
}

ClosedCurve ClosedCurve::reversed() const {
    ClosedCurve out = *this;
    std::reverse(out.vertices.begin(), out.vertices.end());
    out.orientation = -orientation;
    for (auto& s : out.signature) s = -s;
    return out;
}

ClosedCurve ClosedCurve::resampled(size_t n) const {
    const size_t m = edge_count();
    std::vector<double> cum(m + 1, 0.0);
    for (size_t i = 0; i < m; ++i) cum[i + 1] = cum[i] + std::abs(vertices[i + 1] - vertices[i]);
    const double total = cum[m];
    std::vector<Complex> out;
    out.reserve(n + 1);
    size_t seg = 0;
    for (size_t k = 0; k < n; ++k) {
        const double target = total * k / n;
        while (seg + 1 < m && cum[seg + 1] < target) ++seg;
        const double span = cum[seg + 1] - cum[seg];
        const double t = span > 0.0 ? (target - cum[seg]) / span : 0.0;
        out.push_back(vertices[seg] + (vertices[seg + 1] - vertices[seg]) * t);
    }
    ClosedCurve c(std::move(out));
    c.orientation = orientation;
    c.signature = signature;
    return c;
}

ClosedCurve ClosedCurve::circle(Complex center, double radius, size_t n) {
    std::vector<Complex> v;
    v.reserve(n);
    for (size_t k = 0; k < n; ++k) v.push_back(center + std::polar(radius, 2.0 * kPi * k / n));
    return ClosedCurve(std::move(v));
}

ClosedCurve ClosedCurve::ellipse(Complex center, double rx, double ry, size_t n) {
    std::vector<Complex> v;
    v.reserve(n);
    for (size_t k = 0; k < n; ++k) {
        const double t = 2.0 * kPi * k / n;
        v.push_back(center + Complex(rx * std::cos(t), ry * std::sin(t)));
    }
    return ClosedCurve(std::move(v));
}

int winding_number(const std::vector<Complex>& cv, Complex w) {
    double total = 0.0;
    for (size_t i = 0; i + 1 < cv.size(); ++i) {
        const Complex a = cv[i] - w, b = cv[i + 1] - w;
        total += std::arg(b / a);
    }
    return static_cast<int>(std::lround(total / (2.0 * kPi)));
}

double dist_point_segment(Complex p, Complex a, Complex b) {
    const Complex ab = b - a;
    const double len2 = std::norm(ab);
    if (len2 == 0.0) return std::abs(p - a);
    double t = ((p.real() - a.real()) * ab.real() + (p.imag() - a.imag()) * ab.imag()) / len2;
    t = std::clamp(t, 0.0, 1.0);
    return std::abs(p - (a + ab * t));
}

namespace {
double cross2(Complex o, Complex a, Complex b) {
    return (a.real() - o.real()) * (b.imag() - o.imag()) -
           (a.imag() - o.imag()) * (b.real() - o.real());
}
} // namespace

bool segments_intersect(Complex a, Complex b, Complex c, Complex d) {
    const double d1 = cross2(c, d, a);
    const double d2 = cross2(c, d, b);
    const double d3 = cross2(a, b, c);
    const double d4 = cross2(a, b, d);
    if (((d1 > 0 && d2 < 0) || (d1 < 0 && d2 > 0)) &&
        ((d3 > 0 && d4 < 0) || (d3 < 0 && d4 > 0)))
        return true;
    return false;
}

double dist_to_curve(Complex p, const ClosedCurve& curve) {
    double best = std::numeric_limits<double>::max();
    for (size_t i = 0; i + 1 < curve.vertices.size(); ++i)
        best = std::min(best, dist_point_segment(p, curve.vertices[i], curve.vertices[i + 1]));
    return best;
}

namespace {
// Per-vertex spherical conversion: for a small gap the spherical distance is
// the Euclidean gap scaled by the local density 1/(1+|p|^2).
double directed_curve(const ClosedCurve& a, const ClosedCurve& b) {
    double worst = 0.0;
    for (size_t i = 0; i + 1 < a.vertices.size(); ++i) {
        const Complex p = a.vertices[i];
        worst = std::max(worst, dist_to_curve(p, b) / (1.0 + std::norm(p)));
    }
    return worst;
}
} // namespace

double curve_hausdorff(const ClosedCurve& a, const ClosedCurve& b) {
    return std::max(directed_curve(a, b), directed_curve(b, a));
}

} // namespace meridian
