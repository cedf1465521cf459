#pragma once

#include "meridian/domain.hpp"

namespace meridian {

// Parameters of a standard slit-annulus domain: inner radius 1, outer radius
// e^{lambda^1}, and n-2 concentric arc slits on the circles of radius
// e^{lambda^j}, running from angle theta^{2j-3} to theta^{2j-2}. 3n-5 reals.
struct LambdaVector {
    std::vector<double> lambdas; // lambda^1 .. lambda^{n-1}
    std::vector<double> thetas;  // theta^1 .. theta^{2n-4}
    int n = 2;

    int dimension() const { return static_cast<int>(lambdas.size() + thetas.size()); }
    double lambda1() const { return lambdas.at(0); }
    // sup-norm distance between parameter vectors
    static double inf_distance(const LambdaVector& a, const LambdaVector& b);
};

// Builds the standard domain A^Lambda as a Domain: closed unit disc, the arc
// slits, and the outer disc complement, with the given basepoint.
Domain standard_domain(const LambdaVector& lam, Complex basepoint, double sample_density = 0.005);

struct CanonicalLabeling {
    int inner_index = 0; // bounded component mapped to the closed unit disc
};

// Conformal map of an n-connected non-degenerate domain onto its standard
// slit annulus (inner component to the unit circle, unbounded component to
// the outer circle), normalized by phi#(u) > 0.
struct CanonicalMap {
    Domain domain;
    CanonicalLabeling labeling;
    LambdaVector lambda;
    // log|phi(z)| = c0 + log|z - c_inner| + Re sum coeff_k * basis_k(z)
    Complex inner_charge;              // c_inner
    double c0 = 0.0;
    std::vector<Complex> pole_centers; // charge locations (holes and slits)
    std::vector<double> pole_scales;
    std::vector<int> pole_orders;
    std::vector<Complex> pole_coeffs;
    Complex outer_center;              // nonnegative-power block
    double outer_scale = 1.0;
    std::vector<Complex> outer_coeffs; // k = 1..N_out
    double rotation = 0.0;             // phi includes the factor e^{i rotation}
    Complex basepoint_image;           // a = phi(u)
    double boundary_residual = 0.0;    // max |log|phi|| deviation on samples
    std::vector<double> component_levels; // log|phi| per component
    // seeds for the inverse map
    std::vector<Complex> seed_z, seed_w;

    Complex log_phi_analytic(Complex z) const; // log phi up to 2 pi i branches
    Complex phi(Complex z) const;
    Complex phi_prime(Complex z) const;
};

struct CanonicalOptions {
    int truncation = 16;       // Laurent terms per hole
    int samples_per_term = 12; // boundary samples per unknown, min 8
    double seed_spacing = 0.0; // 0: automatic
};

// Least-squares construction of the canonical map.
// Throws DegenerateComponent / IllConditioned.
CanonicalMap solve_canonical_map(const Domain& domain, const CanonicalLabeling& labeling,
                                 const CanonicalOptions& opts = {});

// Forward evaluation; PointNotInDomain outside the domain.
Complex eval_forward(const CanonicalMap& map, Complex z);

// Inverse by Newton iteration seeded from precomputed forward images.
// Throws WOutsideRange / NewtonDiverged.
Complex eval_inverse(const CanonicalMap& map, Complex w);

// lambda^1 of a 2-connected non-degenerate domain; modulus = lambda^1/(2 pi).
double modulus_annulus(const Domain& domain, const CanonicalOptions& opts = {});

// Map dump (structured text) and an SVG of the image slit annulus.
void dump_canonical_map(const CanonicalMap& map, const std::string& path);

} // namespace meridian
