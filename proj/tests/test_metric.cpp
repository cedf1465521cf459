#include <doctest.h>

#include <cmath>

#include "meridian/metric.hpp"
#include "oracles.hpp"

using namespace meridian;

namespace {

constexpr double kPi = 3.14159265358979323846;

Domain unit_disc_domain() {
    std::vector<Component> comps;
    comps.push_back(make_component(OuterDiscComplementSpec{Complex(0, 0), 1.0}, 0.005));
    return validate_domain(std::move(comps), Complex(0, 0));
}

Domain annulus_domain(double r = 0.25, double R = 1.0, Complex u = Complex(0.5, 0.0)) {
    std::vector<Component> comps;
    comps.push_back(make_component(DiscSpec{Complex(0, 0), r}, 0.005));
    comps.push_back(make_component(OuterDiscComplementSpec{Complex(0, 0), R}, 0.005));
    return validate_domain(std::move(comps), u);
}

Domain three_holes_domain() {
    std::vector<Component> comps;
    comps.push_back(make_component(DiscSpec{Complex(-0.4, 0), 0.18}, 0.005));
    comps.push_back(make_component(DiscSpec{Complex(0.4, 0), 0.18}, 0.005));
    comps.push_back(make_component(OuterDiscComplementSpec{Complex(0, 0), 1.0}, 0.005));
    return validate_domain(std::move(comps), Complex(0, -0.6));
}

// spherical boundary distance for |z| <= 1 domains bounded by the unit circle
double disc_delta_sharp(Complex z) { return kPi / 4 - std::atan(std::abs(z)); }

} // namespace

TEST_CASE("closed form densities") {
    CHECK(disc_density(Complex(0, 0), 1.0, Complex(0, 0)) == doctest::Approx(2.0));
    CHECK(disc_density(Complex(0, 0), 1.0, Complex(0.5, 0)) == doctest::Approx(8.0 / 3.0));
    CHECK_THROWS_AS(disc_density(Complex(0, 0), 1.0, Complex(1.5, 0)), PointNotInDomain);

    // annulus equator value against the explicit covering-map oracle
    const double lam = annulus_density(Complex(0, 0), 0.25, 1.0, Complex(0.5, 0));
    CHECK(lam == doctest::Approx(kPi / (0.5 * std::log(4.0))));
    CHECK(lam == doctest::Approx(oracles::annulus_density_via_cover(0.25, 1.0, Complex(0.5, 0)))
                     .epsilon(1e-8));
    for (double rho : {0.3, 0.45, 0.7, 0.9}) {
        const Complex z = std::polar(rho, 0.7);
        CHECK(annulus_density(Complex(0, 0), 0.25, 1.0, z) ==
              doctest::Approx(oracles::annulus_density_via_cover(0.25, 1.0, z)).epsilon(1e-6));
    }
    for (double rho : {0.0, 0.3, 0.6, 0.9}) {
        const Complex z(rho, 0.05);
        CHECK(disc_density(Complex(0, 0), 1.0, z) ==
              doctest::Approx(oracles::disc_density_via_cover(z)).epsilon(1e-6));
    }
}

TEST_CASE("liouville solver matches the disc closed form") {
    const Domain disc = unit_disc_domain();
    const MetricField f = solve_density(disc, 0.01);
    CHECK(f.residual_norm <= 1e-6);

    double worst = 0.0;
    for (int j = 0; j < f.ny; ++j) {
        for (int i = 0; i < f.nx; ++i) {
            if (f.state[f.idx(i, j)] != 1) continue;
            const Complex z = f.node(i, j);
            if (disc_delta_sharp(z) < 0.1) continue;
            const double lam = std::exp(f.logdensity[f.idx(i, j)]);
            const double exact = disc_density(Complex(0, 0), 1.0, z);
            worst = std::max(worst, std::abs(lam - exact) / exact);
        }
    }
    CHECK(worst <= 0.01);

    SUBCASE("grid refinement stays within the declared bound") {
        const MetricField f2 = solve_density(disc, 0.005);
        double change = 0.0;
        for (int j = 0; j < f.ny; ++j) {
            for (int i = 0; i < f.nx; ++i) {
                if (f.state[f.idx(i, j)] != 1) continue;
                const Complex z = f.node(i, j);
                if (disc_delta_sharp(z) < 0.1) continue;
                if (!f2.covered(z)) continue;
                const double a = std::exp(f.logdensity[f.idx(i, j)]);
                const double b = f2.density_at(z);
                change = std::max(change, std::abs(a - b) / b);
            }
        }
        CHECK(change < f.discretization_bound);
    }
}

TEST_CASE("liouville solver matches the annulus closed form") {
    const Domain ann = annulus_domain();
    const MetricField f = solve_density(ann, 0.005);
    double worst = 0.0;
    for (int j = 0; j < f.ny; ++j) {
        for (int i = 0; i < f.nx; ++i) {
            if (f.state[f.idx(i, j)] != 1) continue;
            const Complex z = f.node(i, j);
            const double rho = std::abs(z);
            // away from both boundary circles: delta# >= 0.1
            if (std::min(std::atan(rho) - std::atan(0.25), std::atan(1.0) - std::atan(rho)) < 0.1)
                continue;
            const double lam = std::exp(f.logdensity[f.idx(i, j)]);
            const double exact = annulus_density(Complex(0, 0), 0.25, 1.0, z);
            worst = std::max(worst, std::abs(lam - exact) / exact);
        }
    }
    CHECK(worst <= 0.01);

    SUBCASE("schwarz monotonicity against the disc on shared nodes") {
        const MetricField fd = solve_density(unit_disc_domain(), 0.005);
        int compared = 0;
        for (int j = 0; j < f.ny; ++j) {
            for (int i = 0; i < f.nx; ++i) {
                if (f.state[f.idx(i, j)] != 1) continue;
                const Complex z = f.node(i, j);
                if (!fd.covered(z)) continue;
                const double lam_ann = std::exp(f.logdensity[f.idx(i, j)]);
                const double lam_disc = fd.density_at(z);
                CHECK(lam_ann >= lam_disc * (1.0 - 2e-2));
                ++compared;
            }
        }
        CHECK(compared > 1000);
    }
}

TEST_CASE("solver error paths") {
    SUBCASE("grid too coarse across a gap") {
        std::vector<Component> comps;
        comps.push_back(make_component(DiscSpec{Complex(-0.26, 0), 0.25}, 0.005));
        comps.push_back(make_component(DiscSpec{Complex(0.26, 0), 0.25}, 0.005));
        comps.push_back(make_component(OuterDiscComplementSpec{Complex(0, 0), 1.0}, 0.005));
        const Domain d = validate_domain(std::move(comps), Complex(0, 0.8));
        CHECK_THROWS_AS(solve_density(d, 0.01), GridTooCoarse);
    }
}

TEST_CASE("hyperbolic length") {
    const Domain ann = annulus_domain();
    const MetricField f = solve_density(ann, 0.01);

    SUBCASE("degenerate curve has zero length") {
        std::vector<Complex> v = {Complex(0.5, 0), Complex(0.5, 0), Complex(0.5, 0)};
        ClosedCurve c;
        c.vertices = v;
        c.vertices.push_back(v[0]);
        CHECK(hyp_length(f, c) == doctest::Approx(0.0));
    }
    SUBCASE("equator length within 2 percent of the covering-map value") {
        const ClosedCurve eq = ClosedCurve::circle(Complex(0, 0), 0.5, 256);
        const double expect = 2.0 * kPi * kPi / std::log(4.0);
        CHECK(hyp_length(f, eq) == doctest::Approx(expect).epsilon(0.02));
    }
    SUBCASE("clearance precondition") {
        const ClosedCurve tight = ClosedCurve::circle(Complex(0, 0), 0.2501, 256);
        CHECK_THROWS_AS(hyp_length(f, tight), CurveTooCloseToBoundary);
    }
    SUBCASE("open segment in the disc") {
        const MetricField fd = solve_density(unit_disc_domain(), 0.01);
        std::vector<Complex> seg;
        for (int k = 0; k <= 100; ++k) seg.push_back(Complex(0.5 * k / 100.0, 0));
        CHECK(hyp_length_open(fd, seg) ==
              doctest::Approx(oracles::disc_radial_distance(0.5)).epsilon(0.01));
    }
}

TEST_CASE("hyperbolic point-to-set distance") {
    const Domain ann = annulus_domain(0.25, 1.0, Complex(0.4, 0.0));
    const MetricField f = solve_density(ann, 0.01);
    const ClosedCurve eq = ClosedCurve::circle(Complex(0, 0), 0.5, 256);

    SUBCASE("point on the target") {
        CHECK(hyp_dist_point_to_set(f, Complex(0.5, 0), eq) == doctest::Approx(0.0));
    }
    SUBCASE("disc centre to an interior circle") {
        const MetricField fd = solve_density(unit_disc_domain(), 0.01);
        const ClosedCurve c = ClosedCurve::circle(Complex(0, 0), 0.5, 256);
        CHECK(hyp_dist_point_to_set(fd, Complex(0, 0), c) ==
              doctest::Approx(oracles::disc_radial_distance(0.5)).epsilon(0.02));
    }
    SUBCASE("annulus point to equator against the radial-integral oracle") {
        const double expect = oracles::annulus_radial_distance(0.25, 1.0, 0.4, 0.5);
        CHECK(hyp_dist_point_to_set(f, Complex(0.4, 0), eq) ==
              doctest::Approx(expect).epsilon(0.02));
    }
}

TEST_CASE("lemma-style density sandwich near the boundary") {
    // The constant in the lower bound is measured once from the punctured
    // disc closed form (the degenerate reference shape), in the spherical
    // normalization lambda# = lambda (1+|z|^2).
    double C = 1e300;
    for (double rho = 0.005; rho <= 0.06; rho += 0.002) {
        const double lam = punctured_disc_density(Complex(0, 0), 1.0, Complex(rho, 0));
        const double ds = std::min(std::atan(rho), kPi / 4 - std::atan(rho));
        if (ds >= 0.05) continue;
        C = std::min(C, lam * (1.0 + rho * rho) * ds * std::log(1.0 / ds));
    }
    CHECK(C > 0.5);
    CHECK(C < 1.5);

    const Domain d3 = three_holes_domain();
    const MetricField f = solve_density(d3, 0.01);
    int band = 0;
    for (int j = 0; j < f.ny; ++j) {
        for (int i = 0; i < f.nx; ++i) {
            if (f.state[f.idx(i, j)] != 1) continue;
            const Complex z = f.node(i, j);
            const double ds = boundary_distance(d3, SpherePoint(z));
            if (ds >= 0.05) continue;
            const double lam_sph = std::exp(f.logdensity[f.idx(i, j)]) * (1.0 + std::norm(z));
            CHECK(lam_sph >= C / (ds * std::log(1.0 / ds)) * 0.99);
            CHECK(lam_sph <= 4.0 / ds * 1.01);
            ++band;
        }
    }
    CHECK(band > 100);
}

TEST_CASE("conformal invariance of the solved density") {
    const Domain ann = annulus_domain();
    const MetricField f = solve_density(ann, 0.01);

    SUBCASE("rotation") {
        const double th = 0.7;
        double worst = 0.0;
        for (double rho : {0.35, 0.5, 0.65, 0.8}) {
            for (int k = 0; k < 16; ++k) {
                const Complex z = std::polar(rho, 2 * kPi * k / 16.0);
                const Complex tz = z * std::polar(1.0, th);
                // |T'| = 1 and |Tz| = |z|: the invariance factor reduces to 1
                const double lhs = f.density_at(tz);
                const double rhs = f.density_at(z);
                worst = std::max(worst, std::abs(lhs - rhs) / rhs);
            }
        }
        CHECK(worst <= 0.02);
    }
    SUBCASE("small translation") {
        const Complex c(0.01, 0.0);
        std::vector<Component> comps;
        comps.push_back(make_component(DiscSpec{c, 0.25}, 0.005));
        comps.push_back(make_component(OuterDiscComplementSpec{c, 1.0}, 0.005));
        const Domain moved = validate_domain(std::move(comps), Complex(0.5, 0) + c);
        const MetricField g = solve_density(moved, 0.01);
        double worst = 0.0;
        for (double rho : {0.35, 0.5, 0.65, 0.8}) {
            for (int k = 0; k < 16; ++k) {
                const Complex z = std::polar(rho, 2 * kPi * k / 16.0);
                const Complex tz = z + c;
                const double lhs =
                    g.density_at(tz) * (1.0 + std::norm(z)) / (1.0 + std::norm(tz));
                const double rhs = f.density_at(z);
                worst = std::max(worst, std::abs(lhs - rhs) / rhs);
            }
        }
        CHECK(worst <= 0.02);
    }
}
