#include "meridian/domain.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace meridian {

namespace {

constexpr double kPi = 3.14159265358979323846;

double arc_span(const CircleArcSlitSpec& a) {
    double s = a.theta1 - a.theta0;
    while (s <= 0.0) s += 2.0 * kPi;
    return s;
}

// Distance from z to a circular arc (set distance).
double dist_arc(const CircleArcSlitSpec& a, Complex z) {
    const Complex rel = z - a.center;
    const double r = std::abs(rel);
    double th = std::arg(rel) - a.theta0;
    while (th < 0.0) th += 2.0 * kPi;
    while (th >= 2.0 * kPi) th -= 2.0 * kPi;
    const double span = arc_span(a);
    if (th <= span) return std::abs(r - a.radius);
    const Complex p0 = a.center + std::polar(a.radius, a.theta0);
    const Complex p1 = a.center + std::polar(a.radius, a.theta0 + span);
    return std::min(std::abs(z - p0), std::abs(z - p1));
}

// Winding of a polyline spec boundary about z (closing edge implied).
int winding_number_closed(const PolylineSpec& p, Complex z) {
    double total = 0.0;
    const size_t n = p.vertices.size();
    for (size_t i = 0; i < n; ++i) {
        const Complex a = p.vertices[i] - z;
        const Complex b = p.vertices[(i + 1) % n] - z;
        total += std::arg(b / a);
    }
    return static_cast<int>(std::lround(total / (2.0 * kPi)));
}

bool polyline_region_contains(const PolylineSpec& p, Complex z) {
    if (!p.closed) return false;
    const bool inside_loop = winding_number_closed(p, z) != 0;
    return p.region_unbounded ? !inside_loop : inside_loop;
}

double dist_polyline(const PolylineSpec& p, Complex z) {
    if (polyline_region_contains(p, z)) return 0.0;
    double best = std::numeric_limits<double>::max();
    for (size_t i = 0; i + 1 < p.vertices.size(); ++i)
        best = std::min(best, dist_point_segment(z, p.vertices[i], p.vertices[i + 1]));
    if (p.closed && p.vertices.front() != p.vertices.back())
        best = std::min(best, dist_point_segment(z, p.vertices.back(), p.vertices.front()));
    return best;
}

} // namespace

Component::Component(ComponentGeometry g, double sample_density) : geometry(std::move(g)) {
    const double d = sample_density;
    if (const auto* disc = std::get_if<DiscSpec>(&geometry)) {
        if (disc->radius <= 0.0) throw EmptyComponent("disc radius must be positive");
        sample = CompactSample::circle(disc->center, disc->radius, d, SampleKind::Disc);
    } else if (const auto* arc = std::get_if<CircleArcSlitSpec>(&geometry)) {
        sample = CompactSample::circle_arc(arc->center, arc->radius, arc->theta0, arc->theta1, d);
    } else if (const auto* pt = std::get_if<PointSpec>(&geometry)) {
        sample = CompactSample::singleton(SpherePoint(pt->z));
    } else if (const auto* pl = std::get_if<PolylineSpec>(&geometry)) {
        std::vector<Complex> v = pl->vertices;
        if (pl->closed && !v.empty() && v.front() != v.back()) v.push_back(v.front());
        sample = CompactSample::polyline(v, d);
        sample.kind = SampleKind::PolylineRegion;
    } else if (const auto* outer = std::get_if<OuterDiscComplementSpec>(&geometry)) {
        if (outer->radius <= 0.0) throw EmptyComponent("outer radius must be positive");
        sample = CompactSample::circle(outer->center, outer->radius, d, SampleKind::Disc);
    } else if (const auto* cloud = std::get_if<CloudSpec>(&geometry)) {
        std::vector<SpherePoint> pts(cloud->points.begin(), cloud->points.end());
        sample = CompactSample(std::move(pts), SampleKind::PolylineRegion,
                               std::max(d, cloud->resolution));
    }
}

bool Component::unbounded() const {
    if (std::holds_alternative<OuterDiscComplementSpec>(geometry)) return true;
    if (const auto* pl = std::get_if<PolylineSpec>(&geometry)) return pl->region_unbounded;
    if (const auto* cl = std::get_if<CloudSpec>(&geometry)) return cl->unbounded;
    return false;
}

bool Component::is_point() const { return std::holds_alternative<PointSpec>(geometry); }

double Component::euclidean_dist(Complex z) const {
    if (const auto* disc = std::get_if<DiscSpec>(&geometry))
        return std::max(0.0, std::abs(z - disc->center) - disc->radius);
    if (const auto* arc = std::get_if<CircleArcSlitSpec>(&geometry)) return dist_arc(*arc, z);
    if (const auto* pt = std::get_if<PointSpec>(&geometry)) return std::abs(z - pt->z);
    if (const auto* pl = std::get_if<PolylineSpec>(&geometry)) return dist_polyline(*pl, z);
    if (const auto* outer = std::get_if<OuterDiscComplementSpec>(&geometry))
        return std::max(0.0, outer->radius - std::abs(z - outer->center));
    const auto& cloud = std::get<CloudSpec>(geometry);
    double best = std::numeric_limits<double>::max();
    for (const auto& p : cloud.points) best = std::min(best, std::abs(z - p));
    return best;
}

bool Component::contains(Complex z) const {
    if (const auto* disc = std::get_if<DiscSpec>(&geometry))
        return std::abs(z - disc->center) <= disc->radius;
    if (const auto* outer = std::get_if<OuterDiscComplementSpec>(&geometry))
        return std::abs(z - outer->center) >= outer->radius;
    if (const auto* pl = std::get_if<PolylineSpec>(&geometry)) {
        if (pl->closed) return polyline_region_contains(*pl, z);
    }
    return euclidean_dist(z) == 0.0;
}

Complex Component::witness() const {
    if (const auto* disc = std::get_if<DiscSpec>(&geometry)) return disc->center;
    if (const auto* arc = std::get_if<CircleArcSlitSpec>(&geometry))
        return arc->center + std::polar(arc->radius, arc->theta0 + 0.5 * arc_span(*arc));
    if (const auto* pt = std::get_if<PointSpec>(&geometry)) return pt->z;
    if (const auto* pl = std::get_if<PolylineSpec>(&geometry)) {
        if (pl->closed && !pl->region_unbounded) {
            // centroid if interior, otherwise fall back to an edge midpoint
            Complex c{0.0, 0.0};
            for (const auto& v : pl->vertices) c += v;
            c /= static_cast<double>(pl->vertices.size());
            if (winding_number_closed(*pl, c) != 0) return c;
        }
        const size_t mid = pl->vertices.size() / 2;
        return pl->vertices[mid];
    }
    if (const auto* cloud = std::get_if<CloudSpec>(&geometry))
        return cloud->points[cloud->points.size() / 2];
    const auto& outer = std::get<OuterDiscComplementSpec>(geometry);
    return outer.center + Complex(2.0 * outer.radius, 0.0);
}

bool Domain::degenerate() const {
    return std::any_of(components.begin(), components.end(),
                       [](const Component& c) { return c.is_point(); });
}

bool Domain::contains(Complex z) const {
    return std::none_of(components.begin(), components.end(),
                        [&](const Component& c) { return c.contains(z); });
}

double Domain::euclidean_boundary_dist(Complex z) const {
    double best = std::numeric_limits<double>::max();
    for (const auto& c : components) best = std::min(best, c.euclidean_dist(z));
    return best;
}

void Domain::bounding_box(double& x0, double& y0, double& x1, double& y1) const {
    x0 = y0 = std::numeric_limits<double>::max();
    x1 = y1 = std::numeric_limits<double>::lowest();
    for (const auto& c : components) {
        for (const auto& p : c.sample.points) {
            if (p.is_infinity()) continue;
            x0 = std::min(x0, p.z.real());
            y0 = std::min(y0, p.z.imag());
            x1 = std::max(x1, p.z.real());
            y1 = std::max(y1, p.z.imag());
        }
    }
}

CompactSample Domain::complement_sample() const {
    std::vector<SpherePoint> pts;
    double dens = 0.0;
    for (const auto& c : components) {
        pts.insert(pts.end(), c.sample.points.begin(), c.sample.points.end());
        dens = std::max(dens, c.sample.density);
    }
    return CompactSample(std::move(pts), SampleKind::PolylineRegion, dens);
}

Domain validate_domain(std::vector<Component> components, Complex basepoint) {
    if (components.empty()) throw EmptyComponent("domain needs at least one complement component");
    for (const auto& c : components)
        if (c.sample.empty()) throw EmptyComponent();

    // Unbounded-last convention.
    for (size_t i = 0; i + 1 < components.size(); ++i)
        if (components[i].unbounded())
            throw Error("unbounded component must be listed last");

    // Pairwise disjoint: positive distance between samples, and no sample of
    // one component inside another.
    for (size_t i = 0; i < components.size(); ++i) {
        for (size_t j = i + 1; j < components.size(); ++j) {
            for (const auto& p : components[j].sample.points) {
                if (p.is_infinity()) continue;
                if (components[i].contains(p.z) || components[i].euclidean_dist(p.z) <= 0.0)
                    throw OverlappingComponents("components " + std::to_string(i) + " and " +
                                                std::to_string(j) + " meet");
            }
            for (const auto& p : components[i].sample.points) {
                if (p.is_infinity()) continue;
                if (components[j].contains(p.z))
                    throw OverlappingComponents("components " + std::to_string(i) + " and " +
                                                std::to_string(j) + " meet");
            }
        }
    }

    for (size_t i = 0; i < components.size(); ++i)
        if (components[i].contains(basepoint))
            throw BasepointInComplement("basepoint lies in component " + std::to_string(i));

    Domain d;
    d.components = std::move(components);
    d.basepoint = basepoint;
    return d;
}

Component make_component(ComponentGeometry g, double sample_density) {
    return Component(std::move(g), sample_density);
}

std::vector<Separation> enumerate_separations(const Domain& domain) {
    const int n = domain.connectivity();
    if (n < 2) throw NotMultiplyConnected("need n >= 2, got n = " + std::to_string(n));

    auto classify = [&](unsigned mask) {
        Separation s;
        s.e_mask = mask;
        s.n = n;
        // A side is trivial iff it consists of exactly one point component.
        const int bits = __builtin_popcount(mask);
        bool e_point = false, f_point = false;
        if (bits == 1) {
            const int idx = __builtin_ctz(mask); // 0-based bounded component index
            e_point = domain.components[idx].is_point();
        }
        if (bits == n - 1) f_point = false; // F = {K^n} alone, unbounded, never a point
        s.nontrivial = !e_point && !f_point;
        return s;
    };

    std::vector<Separation> out;
    const unsigned full = (1u << (n - 1)) - 1u;
    // Principal candidates first: gamma^i separates K^i from the rest.
    const int pn = principal_count(n);
    for (int i = 1; i <= pn; ++i) {
        const unsigned mask = (i < n) ? (1u << (i - 1)) : full;
        Separation s = classify(mask);
        s.principal = true;
        s.principal_index = i;
        out.push_back(s);
    }
    for (unsigned mask = 1; mask <= full; ++mask) {
        const int bits = __builtin_popcount(mask);
        const bool is_principal = (bits == 1) || (mask == full && n >= 3);
        if (is_principal) continue;
        out.push_back(classify(mask));
    }
    return out;
}

std::vector<int> winding_signature(const ClosedCurve& curve, const Domain& domain, double tol) {
    const int n = domain.connectivity();
    for (size_t i = 0; i + 1 < curve.vertices.size(); ++i) {
        const Complex mid = 0.5 * (curve.vertices[i] + curve.vertices[i + 1]);
        for (const auto& c : domain.components) {
            if (c.euclidean_dist(curve.vertices[i]) <= tol || c.contains(mid))
                throw CurveTouchesComplement();
        }
    }
    std::vector<int> sig;
    sig.reserve(n - 1);
    for (int i = 0; i + 1 < n; ++i)
        sig.push_back(winding_number(curve.vertices, domain.components[i].witness()));
    return sig;
}

std::optional<Separation> classify_separation(const ClosedCurve& curve, const Domain& domain) {
    std::vector<int> sig = winding_signature(curve, domain);
    // Normalize orientation so entries are 0/1.
    const bool any_neg = std::any_of(sig.begin(), sig.end(), [](int s) { return s < 0; });
    if (any_neg)
        for (auto& s : sig) s = -s;
    unsigned mask = 0;
    for (size_t i = 0; i < sig.size(); ++i) {
        if (sig[i] == 1)
            mask |= (1u << i);
        else if (sig[i] != 0)
            return std::nullopt; // not a separation signature
    }
    if (mask == 0) return std::nullopt;
    for (const auto& s : enumerate_separations(domain))
        if (s.e_mask == mask) return s;
    return std::nullopt;
}

double boundary_distance(const Domain& domain, const SpherePoint& z) {
    if (!z.is_infinity()) {
        if (!domain.contains(z.z)) throw PointNotInDomain();
    } else {
        if (!domain.components.empty() && domain.components.back().unbounded())
            throw PointNotInDomain("infinity lies in the unbounded component");
    }
    double best = kPi;
    for (const auto& c : domain.components) best = std::min(best, sph_dist_to_sample(z, c.sample));
    return best;
}

Domain normalize_to_bounded(std::vector<Component> components, Complex basepoint,
                            double sample_density) {
    const bool has_unbounded =
        std::any_of(components.begin(), components.end(),
                    [](const Component& c) { return c.unbounded(); });
    if (has_unbounded) {
        // Already in convention; just validate (moving unbounded last if needed).
        std::stable_partition(components.begin(), components.end(),
                              [](const Component& c) { return !c.unbounded(); });
        return validate_domain(std::move(components), basepoint);
    }
    // Infinity lies in the domain: send a point of the last component to
    // infinity with T(z) = 1/(z - q), then rebuild components from their
    // transformed samples as cloud geometry.
    const Complex q = components.back().witness();
    const MobiusMap t(0.0, 1.0, 1.0, -q);
    std::vector<Component> moved;
    moved.reserve(components.size());
    for (size_t i = 0; i < components.size(); ++i) {
        CloudSpec cloud;
        cloud.unbounded = (i + 1 == components.size());
        for (const auto& p : components[i].sample.points) {
            const SpherePoint img = apply_mobius(t, p);
            if (!img.is_infinity()) cloud.points.push_back(img.z);
        }
        cloud.resolution = components[i].sample.density;
        if (cloud.points.empty()) throw EmptyComponent("component collapsed to infinity");
        moved.emplace_back(ComponentGeometry(cloud), sample_density);
    }
    const SpherePoint bp = apply_mobius(t, SpherePoint(basepoint));
    if (bp.is_infinity()) throw BasepointInComplement("basepoint maps to infinity");
    Domain d = validate_domain(std::move(moved), bp.z);
    d.normalization = t;
    return d;
}

} // namespace meridian
