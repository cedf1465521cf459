#pragma once

#include <optional>
#include <variant>
#include <vector>

#include "meridian/curve.hpp"
#include "meridian/sphere.hpp"

namespace meridian {

// Parametric geometry of one complement component in the finite chart.
struct DiscSpec {
    Complex center;
    double radius;
};
struct CircleArcSlitSpec {
    Complex center;
    double radius;
    double theta0, theta1; // arc runs counterclockwise from theta0 to theta1
};
struct PointSpec {
    Complex z;
};
struct PolylineSpec {
    std::vector<Complex> vertices;
    bool closed = false;
    bool region_unbounded = false; // closed loop: component is outside the loop
};
struct OuterDiscComplementSpec {
    Complex center;
    double radius;
};
// Point-cloud component (produced by the kernel extraction; no exact geometry).
struct CloudSpec {
    std::vector<Complex> points;
    bool unbounded = false;
    double resolution = 0.0;
};

using ComponentGeometry = std::variant<DiscSpec, CircleArcSlitSpec, PointSpec, PolylineSpec,
                                       OuterDiscComplementSpec, CloudSpec>;

struct Component {
    ComponentGeometry geometry;
    CompactSample sample;

    Component() = default;
    Component(ComponentGeometry g, double sample_density);

    bool unbounded() const;
    bool is_point() const;
    SampleKind kind() const { return sample.kind; }
    // Exact Euclidean distance in the chart from z to the component as a set
    // (zero inside filled regions).
    double euclidean_dist(Complex z) const;
    bool contains(Complex z) const;
    // A point of the component suitable as a winding-number witness.
    Complex witness() const;
};

// Finitely connected pointed domain given by its complement components.
// Convention: the last component is the unbounded one.
struct Domain {
    std::vector<Component> components;
    Complex basepoint{0.0, 0.0};
    // Set when the input had to be moved by a Moebius map to satisfy the
    // unbounded-last convention; never applied silently.
    std::optional<MobiusMap> normalization;

    int connectivity() const { return static_cast<int>(components.size()); }
    bool degenerate() const;          // true iff some component is a single point
    bool contains(Complex z) const;   // z in the open domain
    // Minimum Euclidean distance in the chart from z to the complement.
    double euclidean_boundary_dist(Complex z) const;
    // Chart bounding box of the complement (and hence of the domain).
    void bounding_box(double& x0, double& y0, double& x1, double& y1) const;
    // All complement samples pooled (used for Hausdorff limits).
    CompactSample complement_sample() const;
};

// Validates the component list and basepoint and assembles a Domain.
// Throws OverlappingComponents / BasepointInComplement / EmptyComponent.
Domain validate_domain(std::vector<Component> components, Complex basepoint);

// Convenience: build a component from geometry with a default sample density.
Component make_component(ComponentGeometry g, double sample_density = 0.01);

// A bipartition of the complement: bit i of e_mask set puts component i+1
// (1-based, bounded components only) on the bounded side E; the unbounded
// component always lies on F.
struct Separation {
    unsigned e_mask = 0;
    int n = 0;            // domain connectivity
    bool nontrivial = true;
    bool principal = false;
    int principal_index = 0; // i in "separates K^i from the rest", 1-based, 0 if not principal

    bool e_contains(int comp_index_1based) const {
        return comp_index_1based < n && (e_mask >> (comp_index_1based - 1)) & 1u;
    }
};

inline int separation_count(int n) { return (1 << (n - 1)) - 1; } // E(n)
inline int principal_count(int n) { return std::min(n, separation_count(n)); } // P(n)

// All E(n) separations; the P(n) principal candidates first, the i-th
// separating K^i from the rest. Throws NotMultiplyConnected for n < 2.
std::vector<Separation> enumerate_separations(const Domain& domain);

// Winding numbers of the curve about one witness point per bounded
// component. Throws CurveTouchesComplement when the curve is too close.
std::vector<int> winding_signature(const ClosedCurve& curve, const Domain& domain,
                                   double tol = 1e-9);

// Matches a simple curve's signature against the separations of the domain;
// returns the realized separation, or nullopt for a trivial curve.
std::optional<Separation> classify_separation(const ClosedCurve& curve, const Domain& domain);

// Spherical distance from z to the complement samples.
// Throws PointNotInDomain if z is not in the domain.
double boundary_distance(const Domain& domain, const SpherePoint& z);

// Moves a domain presented with infinity in its interior to the standard
// convention (unbounded component last) via a Moebius map, recorded on the
// result. `components` here may have no unbounded member.
Domain normalize_to_bounded(std::vector<Component> components, Complex basepoint,
                            double sample_density = 0.01);

} // namespace meridian
