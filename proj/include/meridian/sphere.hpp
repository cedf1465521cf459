#pragma once

#include <complex>
#include <vector>

#include "meridian/errors.hpp"

namespace meridian {

using Complex = std::complex<double>;

// Point on the Riemann sphere. Infinity is a distinguished tag, never a
// large float. Metric convention: length element |dz|/(1+|z|^2), so the
// sphere has diameter pi/2 and sph_dist(0, infinity) = pi/2.
struct SpherePoint {
    Complex z{0.0, 0.0};
    bool infinite = false;

    SpherePoint() = default;
    SpherePoint(Complex value) : z(value) {} // NOLINT: implicit by design
    SpherePoint(double value) : z(value, 0.0) {}

    static SpherePoint infinity() {
        SpherePoint p;
        p.infinite = true;
        return p;
    }

    bool is_infinity() const { return infinite; }

    bool operator==(const SpherePoint& o) const {
        if (infinite || o.infinite) return infinite == o.infinite;
        return z == o.z;
    }
};

// Geodesic distance for the density 1/(1+|z|^2). Symmetric, zero iff equal,
// maximum pi/2 for antipodal points.
double sph_dist(const SpherePoint& p, const SpherePoint& q);

// Chordal distance |p-q| / sqrt((1+|p|^2)(1+|q|^2)); cheaper, monotone in
// sph_dist (sph_dist = asin(chordal)).
double chordal_dist(const SpherePoint& p, const SpherePoint& q);

// Moebius transformation z -> (az+b)/(cz+d), stored normalized to ad-bc = 1.
struct MobiusMap {
    Complex a{1.0}, b{0.0}, c{0.0}, d{1.0};

    MobiusMap() = default;
    MobiusMap(Complex a_, Complex b_, Complex c_, Complex d_);

    Complex det() const { return a * d - b * c; }
    MobiusMap inverse() const { return MobiusMap(d, -b, -c, a); }

    static MobiusMap identity() { return MobiusMap(); }
    // Rigid rotation of the sphere about the axis through the images of
    // `pole` and its antipode, by `angle`; pole = 0 rotates about 0/infinity.
    static MobiusMap sphere_rotation(double angle, const SpherePoint& pole = SpherePoint(0.0));
};

MobiusMap compose(const MobiusMap& t, const MobiusMap& s); // t after s
SpherePoint apply_mobius(const MobiusMap& t, const SpherePoint& p);

// Derivative in the finite chart. Undefined (infinite) at the pole and at
// infinity; callers in this codebase only evaluate at finite regular points.
Complex mobius_derivative(const MobiusMap& t, Complex z);

// Unique Moebius map with T(z1)=0, T(z2)=1, T(z3)=infinity.
MobiusMap mobius_to_standard_triple(const SpherePoint& z1, const SpherePoint& z2,
                                    const SpherePoint& z3);

enum class SampleKind { Disc, SlitArc, PolylineRegion, Singleton };

// Finite sample of a compact subset of the sphere. For the region kinds used
// here (discs, slits, curves) boundary samples determine the set, so only
// boundary points are stored. `density` is the declared maximum spherical
// gap between consecutive samples; it doubles as the resolution error bar
// for distances computed from the sample.
struct CompactSample {
    std::vector<SpherePoint> points;
    SampleKind kind = SampleKind::PolylineRegion;
    double density = 0.0;

    CompactSample() = default;
    CompactSample(std::vector<SpherePoint> pts, SampleKind k, double dens);

    static CompactSample singleton(const SpherePoint& p);
    // Circle |z - center| = radius sampled with spherical gap <= density.
    static CompactSample circle(Complex center, double radius, double density,
                                SampleKind kind = SampleKind::Disc);
    // Circular arc from theta0 to theta1 (counterclockwise) on the circle.
    static CompactSample circle_arc(Complex center, double radius, double theta0,
                                    double theta1, double density);
    static CompactSample polyline(const std::vector<Complex>& vertices, double density);

    bool empty() const { return points.empty(); }
};

double sph_dist_to_sample(const SpherePoint& p, const CompactSample& s);

// Directed Hausdorff sup over a of inf over b.
double directed_hausdorff(const CompactSample& a, const CompactSample& b);

// Symmetric Hausdorff distance between the two samples in the spherical
// metric. Accurate to the declared sample densities.
double hausdorff_dist(const CompactSample& a, const CompactSample& b);

CompactSample transform_sample(const MobiusMap& t, const CompactSample& s);

} // namespace meridian
