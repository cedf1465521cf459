#pragma once

#include <complex>
#include <vector>

#include "meridian/sphere.hpp"

namespace meridian {

// Oriented closed polyline in the finite chart. The vertex list is stored
// closed: vertices.front() == vertices.back(). An n-vertex closed list has
// n-1 edges.
struct ClosedCurve {
    std::vector<Complex> vertices;
    int orientation = +1;
    std::vector<int> signature; // winding per bounded component, set by winding_signature

    ClosedCurve() = default;
    explicit ClosedCurve(std::vector<Complex> open_loop);

    size_t edge_count() const { return vertices.empty() ? 0 : vertices.size() - 1; }
    double euclidean_length() const;
    Complex centroid() const;
    double signed_area() const;
    bool is_simple(double tol = 0.0) const;
    ClosedCurve reversed() const;
    // Resample to n edges, uniformly in Euclidean arclength.
    ClosedCurve resampled(size_t n) const;

    static ClosedCurve circle(Complex center, double radius, size_t n = 128);
    static ClosedCurve ellipse(Complex center, double rx, double ry, size_t n = 128);
};

// Winding number of the closed polyline about w (w off the curve), by
// summing argument increments. Exact integer for polylines.
int winding_number(const std::vector<Complex>& closed_vertices, Complex w);

double dist_point_segment(Complex p, Complex a, Complex b);
bool segments_intersect(Complex a, Complex b, Complex c, Complex d);

// Minimum Euclidean distance from p to the curve.
double dist_to_curve(Complex p, const ClosedCurve& curve);

// Symmetric Hausdorff distance between two closed curves, in the spherical
// metric, measured on the vertex samples against full segments.
double curve_hausdorff(const ClosedCurve& a, const ClosedCurve& b);

} // namespace meridian
