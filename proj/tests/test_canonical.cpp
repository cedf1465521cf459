#include <doctest.h>

#include <cmath>
#include <random>

#include "meridian/canonical.hpp"
#include "oracles.hpp"

using namespace meridian;

namespace {

constexpr double kPi = 3.14159265358979323846;

Domain round_annulus(double r = 0.25, double R = 1.0, Complex u = Complex(0.5, 0.0)) {
    std::vector<Component> comps;
    comps.push_back(make_component(DiscSpec{Complex(0, 0), r}, 0.005));
    comps.push_back(make_component(OuterDiscComplementSpec{Complex(0, 0), R}, 0.005));
    return validate_domain(std::move(comps), u);
}

Domain eccentric_annulus(double c = 0.3, double rho = 0.25, Complex u = Complex(-0.5, 0.0)) {
    std::vector<Component> comps;
    comps.push_back(make_component(DiscSpec{Complex(c, 0), rho}, 0.005));
    comps.push_back(make_component(OuterDiscComplementSpec{Complex(0, 0), 1.0}, 0.005));
    return validate_domain(std::move(comps), u);
}

} // namespace

TEST_CASE("canonical map of a round annulus") {
    const Domain d = round_annulus();
    const CanonicalMap map = solve_canonical_map(d, CanonicalLabeling{0});

    CHECK(map.boundary_residual <= 1e-6);
    REQUIRE(map.lambda.lambdas.size() == 1);
    CHECK(map.lambda.lambda1() == doctest::Approx(std::log(4.0)).epsilon(1e-8));
    CHECK(map.lambda.thetas.empty());

    SUBCASE("map is z/r up to the forced rotation") {
        std::mt19937_64 rng(2);
        std::uniform_real_distribution<double> rad(0.3, 0.9), ang(0.0, 2 * kPi);
        const Complex rot = std::polar(1.0, map.rotation);
        for (int k = 0; k < 40; ++k) {
            const Complex z = std::polar(rad(rng), ang(rng));
            CHECK(std::abs(eval_forward(map, z) - rot * z / 0.25) < 1e-6);
        }
    }
    SUBCASE("normalization phi'(u) > 0 and basepoint image") {
        const Complex dp = map.phi_prime(d.basepoint);
        CHECK(dp.imag() == doctest::Approx(0.0).epsilon(1e-9));
        CHECK(dp.real() > 0.0);
        CHECK(std::abs(map.basepoint_image - eval_forward(map, d.basepoint)) < 1e-12);
    }
    SUBCASE("boundary correspondence") {
        for (int k = 0; k < 32; ++k) {
            const Complex zi = std::polar(0.2500001, 2 * kPi * k / 32.0);
            CHECK(std::abs(std::abs(map.phi(zi)) - 1.0) < 1e-4);
            const Complex zo = std::polar(0.9999999, 2 * kPi * k / 32.0);
            CHECK(std::abs(std::abs(map.phi(zo)) - std::exp(map.lambda.lambda1())) < 1e-4);
        }
    }
    SUBCASE("geometric mean circle maps to the half level") {
        const Complex z = std::polar(0.5, 1.1);
        CHECK(std::abs(std::abs(eval_forward(map, z)) - std::exp(map.lambda.lambda1() / 2)) <
              1e-6);
    }
    SUBCASE("points outside rejected") {
        CHECK_THROWS_AS(eval_forward(map, Complex(0.1, 0)), PointNotInDomain);
    }
}

TEST_CASE("canonical map of the eccentric annulus") {
    const Domain d = eccentric_annulus();
    const CanonicalMap map = solve_canonical_map(d, CanonicalLabeling{0});
    const double oracle = oracles::eccentric_annulus_lambda1(0.3, 0.25);

    CHECK(map.boundary_residual <= 1e-4);
    CHECK(std::abs(map.lambda.lambda1() - oracle) < 1e-3);

    SUBCASE("lambda stable under truncation change") {
        CanonicalOptions o2;
        o2.truncation = 20;
        const CanonicalMap map2 = solve_canonical_map(d, CanonicalLabeling{0}, o2);
        CHECK(LambdaVector::inf_distance(map.lambda, map2.lambda) < 1e-3);
    }
    SUBCASE("inverse round trips") {
        CHECK(std::abs(eval_inverse(map, map.basepoint_image) - d.basepoint) < 1e-8);
        std::mt19937_64 rng(4);
        std::uniform_real_distribution<double> xr(-0.95, 0.95), yr(-0.95, 0.95);
        int done = 0;
        while (done < 50) {
            const Complex z(xr(rng), yr(rng));
            if (!d.contains(z) || d.euclidean_boundary_dist(z) < 0.03) continue;
            const Complex w = eval_forward(map, z);
            CHECK(std::abs(eval_inverse(map, w) - z) < 1e-8);
            ++done;
        }
    }
    SUBCASE("w outside the ring rejected") {
        CHECK_THROWS_AS(eval_inverse(map, Complex(0.2, 0)), WOutsideRange);
    }
}

TEST_CASE("slit annulus is a fixed point of the solver") {
    LambdaVector lam;
    lam.n = 3;
    lam.lambdas = {std::log(4.0), 0.5 * std::log(4.0)};
    lam.thetas = {0.6, 2.1};
    const Domain d = standard_domain(lam, Complex(1.5, 0.0));
    const CanonicalMap map = solve_canonical_map(d, CanonicalLabeling{0});

    CHECK(map.boundary_residual <= 1e-4);
    CHECK(LambdaVector::inf_distance(map.lambda, lam) < 1e-3);

    SUBCASE("map is the identity up to rotation") {
        const Complex rot = std::polar(1.0, map.rotation);
        for (const Complex z : {Complex(1.5, 0.3), Complex(-1.2, 1.1), Complex(0.0, -1.4)}) {
            if (!d.contains(z)) continue;
            CHECK(std::abs(eval_forward(map, z) - rot * z) < 1e-3);
        }
    }
}

TEST_CASE("modulus of doubly connected domains") {
    SUBCASE("round annulus in closed form") {
        CHECK(modulus_annulus(round_annulus()) == doctest::Approx(std::log(4.0)));
    }
    SUBCASE("eccentric annulus against the Moebius oracle") {
        CHECK(std::abs(modulus_annulus(eccentric_annulus()) -
                       oracles::eccentric_annulus_lambda1(0.3, 0.25)) < 1e-3);
    }
    SUBCASE("puncture rejected") {
        std::vector<Component> comps;
        comps.push_back(make_component(PointSpec{Complex(0, 0)}, 0.005));
        comps.push_back(make_component(OuterDiscComplementSpec{Complex(0, 0), 1.0}, 0.005));
        const Domain d = validate_domain(std::move(comps), Complex(0.5, 0));
        CHECK_THROWS_AS(modulus_annulus(d), DegenerateComponent);
    }
}

TEST_CASE("degenerate domains are rejected, non-degenerate accepted") {
    // three-connected with a puncture: solver must refuse
    std::vector<Component> comps;
    comps.push_back(make_component(DiscSpec{Complex(-0.4, 0), 0.18}, 0.005));
    comps.push_back(make_component(PointSpec{Complex(0.4, 0)}, 0.005));
    comps.push_back(make_component(OuterDiscComplementSpec{Complex(0, 0), 1.0}, 0.005));
    const Domain bad = validate_domain(std::move(comps), Complex(0, -0.6));
    CHECK_THROWS_AS(solve_canonical_map(bad, CanonicalLabeling{0}), DegenerateComponent);

    std::vector<Component> good_comps;
    good_comps.push_back(make_component(DiscSpec{Complex(-0.4, 0), 0.18}, 0.005));
    good_comps.push_back(make_component(DiscSpec{Complex(0.4, 0), 0.18}, 0.005));
    good_comps.push_back(make_component(OuterDiscComplementSpec{Complex(0, 0), 1.0}, 0.005));
    const Domain good = validate_domain(std::move(good_comps), Complex(0, -0.6));
    const CanonicalMap map = solve_canonical_map(good, CanonicalLabeling{0});
    CHECK(map.boundary_residual <= 1e-4);
    REQUIRE(map.lambda.lambdas.size() == 2);
    CHECK(map.lambda.lambda1() > map.lambda.lambdas[1]);
    CHECK(map.lambda.lambdas[1] > 0.0);
    REQUIRE(map.lambda.thetas.size() == 2);
    // slit arcs nondegenerate
    CHECK(std::abs(map.lambda.thetas[1] - map.lambda.thetas[0]) > 1e-3);
}
