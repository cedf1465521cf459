#include <doctest.h>

#include <cmath>

#include "meridian/domain.hpp"
#include "meridian/domain_io.hpp"

using namespace meridian;

namespace {

Domain annulus_domain(double r = 0.25, double R = 1.0, Complex u = Complex(0.5, 0.0)) {
    std::vector<Component> comps;
    comps.push_back(make_component(DiscSpec{Complex(0, 0), r}));
    comps.push_back(make_component(OuterDiscComplementSpec{Complex(0, 0), R}));
    return validate_domain(std::move(comps), u);
}

Domain three_connected(Complex u = Complex(0.0, -0.6)) {
    std::vector<Component> comps;
    comps.push_back(make_component(DiscSpec{Complex(-0.4, 0), 0.18}));
    comps.push_back(make_component(DiscSpec{Complex(0.4, 0), 0.18}));
    comps.push_back(make_component(OuterDiscComplementSpec{Complex(0, 0), 1.0}));
    return validate_domain(std::move(comps), u);
}

} // namespace

TEST_CASE("validate_domain accepts and rejects as specified") {
    SUBCASE("annulus is a valid 2-connected domain") {
        const Domain d = annulus_domain();
        CHECK(d.connectivity() == 2);
        CHECK(d.contains(Complex(0.5, 0)));
        CHECK_FALSE(d.contains(Complex(0.1, 0)));
        CHECK_FALSE(d.contains(Complex(1.5, 0)));
    }
    SUBCASE("overlapping discs rejected") {
        std::vector<Component> comps;
        comps.push_back(make_component(DiscSpec{Complex(0, 0), 0.3}));
        comps.push_back(make_component(DiscSpec{Complex(0.4, 0), 0.3}));
        comps.push_back(make_component(OuterDiscComplementSpec{Complex(0, 0), 1.0}));
        CHECK_THROWS_AS(validate_domain(std::move(comps), Complex(0, 0.8)), OverlappingComponents);
    }
    SUBCASE("basepoint inside a component rejected") {
        std::vector<Component> comps;
        comps.push_back(make_component(DiscSpec{Complex(0, 0), 0.25}));
        comps.push_back(make_component(OuterDiscComplementSpec{Complex(0, 0), 1.0}));
        CHECK_THROWS_AS(validate_domain(std::move(comps), Complex(0.1, 0)), BasepointInComplement);
    }
}

TEST_CASE("separation enumeration counts") {
    // E(n) = 2^(n-1) - 1 and P(n) = min(n, E(n))
    for (int n = 2; n <= 6; ++n) {
        std::vector<Component> comps;
        for (int k = 0; k + 1 < n; ++k)
            comps.push_back(make_component(DiscSpec{Complex(-0.8 + 1.6 * k / (n - 1), 0), 0.05}));
        comps.push_back(make_component(OuterDiscComplementSpec{Complex(0, 0), 2.0}));
        const Domain d = validate_domain(std::move(comps), Complex(0, 1.0));
        const auto seps = enumerate_separations(d);
        CHECK(static_cast<int>(seps.size()) == (1 << (n - 1)) - 1);
        int principals = 0;
        for (const auto& s : seps)
            if (s.principal) ++principals;
        CHECK(principals == std::min(n, (1 << (n - 1)) - 1));
        // principal candidates come first, gamma^i separating K^i
        for (int i = 0; i < principals; ++i) {
            CHECK(seps[i].principal);
            CHECK(seps[i].principal_index == i + 1);
        }
    }
    SUBCASE("n = 1 rejected") {
        std::vector<Component> comps;
        comps.push_back(make_component(OuterDiscComplementSpec{Complex(0, 0), 1.0}));
        const Domain d = validate_domain(std::move(comps), Complex(0, 0));
        CHECK_THROWS_AS(enumerate_separations(d), NotMultiplyConnected);
    }
}

TEST_CASE("winding signatures") {
    const Domain ann = annulus_domain();
    SUBCASE("separating circle") {
        const ClosedCurve c = ClosedCurve::circle(Complex(0, 0), 0.5, 128);
        const auto sig = winding_signature(c, ann);
        REQUIRE(sig.size() == 1);
        CHECK(sig[0] == 1);
    }
    SUBCASE("contractible circle") {
        const ClosedCurve c = ClosedCurve::circle(Complex(0.55, 0.2), 0.08, 64);
        const auto sig = winding_signature(c, ann);
        CHECK(sig[0] == 0);
    }
    SUBCASE("orientation reversal negates the signature") {
        const ClosedCurve c = ClosedCurve::circle(Complex(0, 0), 0.5, 128);
        const auto sig = winding_signature(c, ann);
        const auto rev = winding_signature(c.reversed(), ann);
        REQUIRE(sig.size() == rev.size());
        for (size_t i = 0; i < sig.size(); ++i) CHECK(rev[i] == -sig[i]);
    }
    SUBCASE("invariant under cyclic reindexing and refinement") {
        const Domain d3 = three_connected();
        ClosedCurve c = ClosedCurve::ellipse(Complex(-0.4, 0), 0.3, 0.26, 96);
        const auto sig = winding_signature(c, d3);
        // cyclic shift
        std::vector<Complex> rot(c.vertices.begin() + 10, c.vertices.end() - 1);
        rot.insert(rot.end(), c.vertices.begin(), c.vertices.begin() + 10);
        const auto sig2 = winding_signature(ClosedCurve(rot), d3);
        CHECK(sig == sig2);
        // refinement
        const auto sig3 = winding_signature(c.resampled(211), d3);
        CHECK(sig == sig3);
    }
    SUBCASE("figure eight around two holes from the argument-sum oracle") {
        const Domain d3 = three_connected();
        // loop around the left hole counterclockwise, then the right one
        // clockwise, crossing over between the holes
        std::vector<Complex> v;
        for (int k = 0; k < 64; ++k) {
            const double t = 2 * 3.14159265358979323846 * k / 64;
            v.push_back(Complex(-0.4, 0) + std::polar(0.28, t));
        }
        for (int k = 0; k < 64; ++k) {
            const double t = 2 * 3.14159265358979323846 * k / 64;
            v.push_back(Complex(0.4, 0) + std::polar(0.28, 3.14159265358979323846 - t));
        }
        const auto sig = winding_signature(ClosedCurve(v), d3);
        REQUIRE(sig.size() == 2);
        CHECK(sig[0] == 1);
        CHECK(sig[1] == -1);
    }
    SUBCASE("curve touching complement rejected") {
        const ClosedCurve c = ClosedCurve::circle(Complex(0, 0), 0.25, 128);
        CHECK_THROWS_AS(winding_signature(c, ann), CurveTouchesComplement);
    }
    SUBCASE("simple curves classify to separations with 0/1 entries") {
        const Domain d3 = three_connected();
        const ClosedCurve c = ClosedCurve::ellipse(Complex(0, 0), 0.75, 0.5, 128);
        const auto sep = classify_separation(c, d3);
        REQUIRE(sep.has_value());
        CHECK(sep->e_mask == 3u); // both holes inside
        CHECK(sep->principal);
        CHECK(sep->principal_index == 3);
    }
}

TEST_CASE("boundary distance") {
    SUBCASE("unit disc centre") {
        std::vector<Component> comps;
        comps.push_back(make_component(OuterDiscComplementSpec{Complex(0, 0), 1.0}));
        const Domain d = validate_domain(std::move(comps), Complex(0, 0));
        CHECK(boundary_distance(d, SpherePoint(0.0)) ==
              doctest::Approx(3.14159265358979323846 / 4).epsilon(1e-4));
    }
    SUBCASE("annulus interior point against a dense-sampling oracle") {
        const Domain d = annulus_domain();
        const double expected = std::min(std::atan(0.5) - std::atan(0.25),
                                         std::atan(1.0) - std::atan(0.5));
        CHECK(boundary_distance(d, SpherePoint(0.5)) == doctest::Approx(expected).epsilon(1e-3));
    }
    SUBCASE("outside point rejected") {
        const Domain d = annulus_domain();
        CHECK_THROWS_AS(boundary_distance(d, SpherePoint(0.1)), PointNotInDomain);
    }
}

TEST_CASE("domain file round trip") {
    const std::string text = R"({
      "components": [
        {"kind": "disc", "center": [0.0, 0.0], "radius": 0.25},
        {"kind": "outer_disc_complement", "center": [0.0, 0.0], "radius": 1.0}
      ],
      "basepoint": [0.5, 0.0]
    })";
    const Domain d = parse_domain(text);
    CHECK(d.connectivity() == 2);
    CHECK(d.basepoint == Complex(0.5, 0.0));
    save_domain(d, "/tmp/meridian_domain_roundtrip.json");
    const Domain d2 = load_domain("/tmp/meridian_domain_roundtrip.json");
    CHECK(d2.connectivity() == 2);
    CHECK(d2.basepoint == d.basepoint);
}

TEST_CASE("normalization when infinity lies in the domain") {
    // complement entirely bounded: infinity is in the domain, so the builder
    // must move it by a recorded Moebius map
    std::vector<Component> comps;
    comps.push_back(make_component(DiscSpec{Complex(-2.0, 0), 0.3}));
    comps.push_back(make_component(DiscSpec{Complex(2.0, 0), 0.3}));
    const Domain d = normalize_to_bounded(std::move(comps), Complex(0, 0));
    CHECK(d.normalization.has_value());
    CHECK(d.components.back().unbounded());
    CHECK(d.contains(d.basepoint));
}
