#pragma once

#include <memory>

#include "meridian/domain.hpp"

namespace meridian {

// Closed-form hyperbolic densities (curvature -1, Euclidean densities:
// lambda_D(0) = 2 for the unit disc).
double disc_density(Complex center, double radius, Complex z);
double annulus_density(Complex center, double r, double R, Complex z);
double punctured_disc_density(Complex puncture, double radius, Complex z);

enum class ClosedFormKind { Disc, Annulus };
struct ClosedFormParams {
    Complex center{0.0, 0.0};
    double r = 0.0; // inner radius (annulus only)
    double R = 1.0; // outer radius / disc radius
};
// Throws PointNotInDomain when z is outside the model domain.
double closed_form_density(ClosedFormKind kind, const ClosedFormParams& p, Complex z);

// Sampled hyperbolic density over a grid covering the domain's finite chart.
// logdensity holds u = log(lambda) at solved nodes (interior + the Dirichlet
// offset layer); the PDE residual max-norm over interior nodes is recorded.
struct MetricField {
    Domain domain;
    double x0 = 0.0, y0 = 0.0, h = 0.0;
    int nx = 0, ny = 0;
    std::vector<double> logdensity; // row-major, NaN where unsolved
    std::vector<double> bdist;      // Euclidean distance to the complement
    std::vector<uint8_t> state;     // 0 outside, 1 interior, 2 dirichlet layer
    double boundary_offset = 0.0;   // delta_0
    double residual_norm = 0.0;
    int newton_iterations = 0;
    // Declared relative change bound for an h -> h/2 refinement on interior
    // nodes with clearance; verified empirically against the disc oracle.
    double discretization_bound = 0.02;

    int idx(int i, int j) const { return j * nx + i; }
    Complex node(int i, int j) const { return {x0 + i * h, y0 + j * h}; }
    bool in_grid(int i, int j) const { return i >= 0 && i < nx && j >= 0 && j < ny; }

    // Bilinear interpolation of u = log(lambda); requires all four cell
    // corners solved. Throws CurveTooCloseToBoundary otherwise.
    double log_density_at(Complex z) const;
    double density_at(Complex z) const;
    bool covered(Complex z) const; // all four corners solved
    // Euclidean distance to the complement, interpolated from the grid.
    double clearance_at(Complex z) const;
    // Gradient of u by central differences of the interpolant.
    Complex log_density_gradient(Complex z) const;
};

struct SolveOptions {
    double offset_factor = 5.0;   // delta_0 = offset_factor * h
    double tol = 1e-6;            // Newton residual target (grid units)
    int max_newton = 50;
    double margin = 0.0;          // extra chart margin beyond the complement box
    bool check_gaps = true;       // enforce >= 8 nodes across component gaps
};

// Newton iteration on the Liouville equation  Laplace(u) = e^{2u}  with
// boundary data u = -log(delta) on the offset-delta_0 contour.
// Throws NonConvergence / GridTooCoarse.
MetricField solve_density(const Domain& domain, double h, const SolveOptions& opts = {});

// Fields sampled from the closed forms (for round model domains; no PDE).
MetricField closed_form_field(const Domain& domain, ClosedFormKind kind,
                              const ClosedFormParams& params, double h);

// Trapezoid hyperbolic length of a closed polyline with density interpolated
// from the field. Requires clearance >= 2h (CurveTooCloseToBoundary).
double hyp_length(const MetricField& field, const ClosedCurve& curve);
double hyp_length_open(const MetricField& field, const std::vector<Complex>& path);

// Shortest-path hyperbolic distance from z to the target curve (or point),
// via a grid-graph search refined by local path shortening. Overestimates by
// at most the discretization bound. Throws GridTooCoarse if disconnected.
double hyp_dist_point_to_set(const MetricField& field, Complex z, const ClosedCurve& target);
double hyp_dist_point_to_point(const MetricField& field, Complex z, Complex w);

// Optional field dump: CSV `x,y,logdensity` rows for solved nodes.
void dump_field_csv(const MetricField& field, const std::string& path);

} // namespace meridian
