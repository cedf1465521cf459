#include "meridian/sphere.hpp"

#include <algorithm>
#include <cmath>

namespace meridian {

namespace {

constexpr double kPi = 3.14159265358979323846;

// Chordal distance with chart switching: when a magnitude is large the
// formula is rewritten in terms of 1/z so nothing overflows near infinity.
double chordal_finite(Complex p, Complex q) {
    const double ap = std::abs(p), aq = std::abs(q);
    if (ap > 1.0 && aq > 1.0) {
        const Complex ip = 1.0 / p, iq = 1.0 / q;
        return chordal_finite(ip, iq);
    }
    if (aq > 1e8) {
        // |p - q| / sqrt((1+|p|^2)(1+|q|^2)) == |1 - p t| / sqrt((1+|p|^2)(1+|t|^2)), t = 1/q
        const Complex t = 1.0 / q;
        return std::abs(1.0 - p * t) / std::sqrt((1.0 + std::norm(p)) * (1.0 + std::norm(t)));
    }
    if (ap > 1e8) return chordal_finite(q, p);
    return std::abs(p - q) / std::sqrt((1.0 + std::norm(p)) * (1.0 + std::norm(q)));
}

} // namespace

double chordal_dist(const SpherePoint& p, const SpherePoint& q) {
    if (p.is_infinity() && q.is_infinity()) return 0.0;
    if (p.is_infinity() || q.is_infinity()) {
        const Complex z = p.is_infinity() ? q.z : p.z;
        const double az = std::abs(z);
        if (az > 1.0) {
            const Complex t = 1.0 / z;
            return std::abs(t) / std::sqrt(1.0 + std::norm(t));
        }
        return 1.0 / std::sqrt(1.0 + std::norm(z));
    }
    return chordal_finite(p.z, q.z);
}

double sph_dist(const SpherePoint& p, const SpherePoint& q) {
    const double c = std::min(1.0, chordal_dist(p, q));
    return std::asin(c);
}

MobiusMap::MobiusMap(Complex a_, Complex b_, Complex c_, Complex d_)
    : a(a_), b(b_), c(c_), d(d_) {
    const Complex det = a * d - b * c;
    if (std::abs(det) < 1e-300) throw DegenerateTriple("Moebius coefficients are singular");
    const Complex s = std::sqrt(det);
    a /= s; b /= s; c /= s; d /= s;
}

MobiusMap MobiusMap::sphere_rotation(double angle, const SpherePoint& pole) {
    // Rotation about 0/infinity is z -> e^{i angle} z; conjugate by the map
    // taking `pole` to 0 for a general axis.
    const Complex e = std::polar(1.0, angle / 2.0);
    const MobiusMap rot(e, 0.0, 0.0, std::conj(e));
    if (!pole.is_infinity() && pole.z == Complex(0.0, 0.0)) return rot;
    // Rigid motion sending pole -> 0: z -> (z - p) / (1 + conj(p) z), an
    // element of PSU(2) when extended appropriately.
    MobiusMap to_zero = pole.is_infinity() ? MobiusMap(0.0, 1.0, -1.0, 0.0)
                                           : MobiusMap(1.0, -pole.z, std::conj(pole.z), 1.0);
    return compose(to_zero.inverse(), compose(rot, to_zero));
}

MobiusMap compose(const MobiusMap& t, const MobiusMap& s) {
    return MobiusMap(t.a * s.a + t.b * s.c, t.a * s.b + t.b * s.d,
                     t.c * s.a + t.d * s.c, t.c * s.b + t.d * s.d);
}

SpherePoint apply_mobius(const MobiusMap& t, const SpherePoint& p) {
    if (p.is_infinity()) {
        if (std::abs(t.c) == 0.0) return SpherePoint::infinity();
        return SpherePoint(t.a / t.c);
    }
    const Complex num = t.a * p.z + t.b;
    const Complex den = t.c * p.z + t.d;
    const double an = std::abs(num), ad = std::abs(den);
    if (ad == 0.0 || (an > 1.0 && ad < an * 1e-15)) return SpherePoint::infinity();
    return SpherePoint(num / den);
}

Complex mobius_derivative(const MobiusMap& t, Complex z) {
    const Complex den = t.c * z + t.d;
    // det == 1 after normalization
    return 1.0 / (den * den);
}

MobiusMap mobius_to_standard_triple(const SpherePoint& z1, const SpherePoint& z2,
                                    const SpherePoint& z3) {
    const double sep = 1e-14;
    if (sph_dist(z1, z2) < sep || sph_dist(z2, z3) < sep || sph_dist(z1, z3) < sep)
        throw DegenerateTriple("inputs must be pairwise distinct");
    // Cross ratio map (z - z1)(z2 - z3) / ((z - z3)(z2 - z1)), with the usual
    // limits when one of the three points is infinity.
    if (z1.is_infinity()) return MobiusMap(0.0, z2.z - z3.z, 1.0, -z3.z);
    if (z2.is_infinity()) return MobiusMap(1.0, -z1.z, 1.0, -z3.z);
    if (z3.is_infinity()) return MobiusMap(1.0, -z1.z, 0.0, z2.z - z1.z);
    const Complex p = z2.z - z3.z, q = z2.z - z1.z;
    return MobiusMap(p, -z1.z * p, q, -z3.z * q);
}

CompactSample::CompactSample(std::vector<SpherePoint> pts, SampleKind k, double dens)
    : points(std::move(pts)), kind(k), density(dens) {
    if (points.empty()) throw EmptyComponent("CompactSample requires at least one point");
    if (kind == SampleKind::Singleton && points.size() != 1)
        throw EmptyComponent("singleton sample must have exactly one point");
}

CompactSample CompactSample::singleton(const SpherePoint& p) {
    return CompactSample({p}, SampleKind::Singleton, 0.0);
}

CompactSample CompactSample::circle(Complex center, double radius, double density,
                                    SampleKind kind) {
    // Conservative spherical step bound: the factor 1/(1+d^2) is largest at
    // the circle's closest approach d to the origin.
    const double dmin = std::max(0.0, std::abs(std::abs(center) - radius));
    const double factor = 1.0 / (1.0 + dmin * dmin);
    int n = static_cast<int>(std::ceil(2.0 * kPi * radius * factor / density)) + 4;
    n = std::clamp(n, 16, 200000);
    std::vector<SpherePoint> pts;
    pts.reserve(n);
    for (int k = 0; k < n; ++k) {
        const double th = 2.0 * kPi * k / n;
        pts.emplace_back(center + std::polar(radius, th));
    }
    return CompactSample(std::move(pts), kind, density);
}

CompactSample CompactSample::circle_arc(Complex center, double radius, double theta0,
                                        double theta1, double density) {
    double span = theta1 - theta0;
    while (span <= 0.0) span += 2.0 * kPi;
    const double dmin = std::max(0.0, std::abs(std::abs(center) - radius));
    const double factor = 1.0 / (1.0 + dmin * dmin);
    int n = static_cast<int>(std::ceil(span * radius * factor / density)) + 2;
    n = std::clamp(n, 8, 200000);
    std::vector<SpherePoint> pts;
    pts.reserve(n + 1);
    for (int k = 0; k <= n; ++k) {
        const double th = theta0 + span * k / n;
        pts.emplace_back(center + std::polar(radius, th));
    }
    return CompactSample(std::move(pts), SampleKind::SlitArc, density);
}

CompactSample CompactSample::polyline(const std::vector<Complex>& vertices, double density) {
    if (vertices.empty()) throw EmptyComponent("polyline needs vertices");
    std::vector<SpherePoint> pts;
    for (size_t i = 0; i + 1 < vertices.size(); ++i) {
        const Complex a = vertices[i], b = vertices[i + 1];
        const double gap = sph_dist(SpherePoint(a), SpherePoint(b));
        const int n = std::max(1, static_cast<int>(std::ceil(gap / (0.8 * density))));
        for (int k = 0; k < n; ++k)
            pts.emplace_back(a + (b - a) * (static_cast<double>(k) / n));
    }
    pts.emplace_back(vertices.back());
    return CompactSample(std::move(pts), SampleKind::PolylineRegion, density);
}

double sph_dist_to_sample(const SpherePoint& p, const CompactSample& s) {
    double best = 4.0; // > pi/2
    for (const auto& q : s.points) {
        const double d = chordal_dist(p, q);
        if (d < best) best = d;
    }
    return std::asin(std::min(1.0, best));
}

double directed_hausdorff(const CompactSample& a, const CompactSample& b) {
    // sup over a of inf over b, with early exit in the inner loop.
    double worst = 0.0;
    for (const auto& p : a.points) {
        double best = 4.0;
        for (const auto& q : b.points) {
            const double d = chordal_dist(p, q);
            if (d < best) {
                best = d;
                if (best <= worst) break;
            }
        }
        if (best > worst) worst = best;
    }
    return std::asin(std::min(1.0, worst));
}

double hausdorff_dist(const CompactSample& a, const CompactSample& b) {
    if (a.empty() || b.empty()) throw EmptyComponent("hausdorff_dist needs nonempty samples");
    return std::max(directed_hausdorff(a, b), directed_hausdorff(b, a));
}

CompactSample transform_sample(const MobiusMap& t, const CompactSample& s) {
    CompactSample out = s;
    for (auto& p : out.points) p = apply_mobius(t, p);
    return out;
}

} // namespace meridian
