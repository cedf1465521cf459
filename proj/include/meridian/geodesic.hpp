#pragma once

#include "meridian/metric.hpp"

namespace meridian {

// Shortest simple separating geodesic for one separation class.
struct Meridian {
    ClosedCurve curve;
    Separation separation;
    double length = 0.0;          // hyperbolic length
    double dist = 0.0;            // hyperbolic distance from the basepoint
    std::vector<double> local_minima; // lengths of the other local minima found
    double residual = 0.0;        // final geodesic residual (radians)
};

struct ShortenOptions {
    int max_iterations = 20000;
    double residual_tol = 1e-3;   // max lambda-weighted angle defect, radians
    double clearance_floor_cells = 2.0; // in units of h
    int respace_every = 25;
    uint64_t seed = 1;
};

// Gradient descent on the discrete hyperbolic length within the curve's
// separation class. Steps are capped by a quarter of the boundary clearance
// and a quarter of the local vertex gap, so the curve cannot cross complement
// components; the signature is verified unchanged afterwards.
ClosedCurve shorten_in_class(const MetricField& field, const ClosedCurve& start,
                             const ShortenOptions& opts = {});

double geodesic_residual(const MetricField& field, const ClosedCurve& curve);

struct MeridianOptions {
    ShortenOptions shorten;
    size_t curve_vertices = 192;
    int level_candidates = 3;     // level-set initial curves
    uint64_t seed = 1;
    double tie_tolerance = 5e-3;  // local minima within 0.5% count as ties
};

// Builds several separating initial curves (offset/bisector level sets of the
// separation plus a randomized variant), shortens each, and returns the
// shortest simple result; other local minima lengths are recorded.
// Throws NoSeparatingCurveFound / PrincipalMeridianAbsent.
Meridian find_meridian(const MetricField& field, const Separation& sep,
                       const MeridianOptions& opts = {});

// Principal system: for i in 1..P(n) the meridian separating K^i from the
// rest, in that order. Entries absent for degenerate (point) components.
struct PrincipalSystem {
    std::vector<std::optional<Meridian>> meridians; // indexed by i-1
    int absent_count() const;
};

PrincipalSystem principal_system(const MetricField& field, const MeridianOptions& opts = {});

// All E(n) meridians (extended system); meridians of distinct classes may
// intersect, so no disjointness is implied.
std::vector<Meridian> extended_system(const MetricField& field, const MeridianOptions& opts = {});

struct SystemRow {
    int index = 0;          // i, 1-based
    unsigned sep_mask = 0;
    double length = 0.0;    // ell^i
    double dist = 0.0;      // d^i
    size_t n_vertices = 0;
};

// Lengths ell^i and basepoint distances d^i of a system of meridians.
std::vector<SystemRow> system_metrics(const MetricField& field,
                                      const std::vector<Meridian>& system);

// Candidate separating curves used to seed the search; exposed for tests and
// for sampling-based optimality checks.
std::vector<ClosedCurve> separating_initial_curves(const MetricField& field, const Separation& sep,
                                                   const MeridianOptions& opts = {});

} // namespace meridian
