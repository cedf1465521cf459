#include <doctest.h>

#include <cmath>

#include "meridian/caratheodory.hpp"
#include "oracles.hpp"

using namespace meridian;

namespace {

constexpr double kPi = 3.14159265358979323846;

Domain round_annulus(double r, double R, Complex u) {
    std::vector<Component> comps;
    comps.push_back(make_component(DiscSpec{Complex(0, 0), r}, 0.005));
    comps.push_back(make_component(OuterDiscComplementSpec{Complex(0, 0), R}, 0.005));
    return validate_domain(std::move(comps), u);
}

DomainSequence constant_annulus_sequence(int horizon = 12) {
    DomainSequence seq;
    seq.description = "constant-annulus";
    seq.horizon = horizon;
    seq.generator = [](int) { return round_annulus(0.25, 1.0, Complex(0.5, 0.0)); };
    return seq;
}

// The classical pathological family: the unit disc minus circles C(0, 1-1/i)
// each with an angular gap shrinking like 1/m.
DomainSequence rings_sequence(int horizon = 40, int ring_cap = 12) {
    DomainSequence seq;
    seq.description = "disc-minus-circles-with-arcs";
    seq.horizon = horizon;
    seq.generator = [ring_cap](int m) {
        std::vector<Component> comps;
        const int top = std::min(std::max(m, 2), ring_cap);
        for (int i = 2; i <= top; ++i) {
            const double r = 1.0 - 1.0 / i;
            const double half_gap = 0.5 / (std::max(m, 2) * r); // arc height 1/m
            comps.push_back(make_component(
                CircleArcSlitSpec{Complex(0, 0), r, half_gap, 2 * kPi - half_gap}, 0.004));
        }
        comps.push_back(make_component(OuterDiscComplementSpec{Complex(0, 0), 1.0}, 0.004));
        return validate_domain(std::move(comps), Complex(0, 0));
    };
    return seq;
}

FieldBuilder annulus_closed_form_builder(double h) {
    return [h](const Domain& d, int) {
        const auto& disc = std::get<DiscSpec>(d.components[0].geometry);
        const auto& outer = std::get<OuterDiscComplementSpec>(d.components[1].geometry);
        ClosedFormParams params;
        params.center = disc.center;
        params.r = disc.radius;
        params.R = outer.radius;
        return closed_form_field(d, ClosedFormKind::Annulus, params, h);
    };
}

} // namespace

TEST_CASE("kernel of a constant sequence is the domain") {
    const DomainSequence seq = constant_annulus_sequence();
    const KernelResult k = hausdorff_kernel(seq);
    REQUIRE_FALSE(k.degenerate);
    CHECK(k.connectivity == 2);
    const double gap =
        hausdorff_dist(k.boundary_sample(), seq.at(1).complement_sample());
    CHECK(gap < 0.03);

    SUBCASE("lemma: kernel boundary lies in the limit complement") {
        const CompactSample limit_complement = seq.at(seq.horizon).complement_sample();
        for (size_t i = 0; i < k.boundary.size(); i += 7)
            CHECK(sph_dist_to_sample(SpherePoint(k.boundary[i]), limit_complement) < 0.02);
    }
    SUBCASE("subsequence kernels agree (strides 2 and 3)") {
        for (int stride : {2, 3}) {
            const KernelResult ks = hausdorff_kernel_subseq(seq, stride, stride);
            CHECK_FALSE(ks.degenerate);
            CHECK(hausdorff_dist(k.boundary_sample(), ks.boundary_sample()) < 0.02);
        }
    }
}

TEST_CASE("kernel of the shrinking annuli is the singleton at the origin") {
    DomainSequence seq;
    seq.description = "shrinking";
    seq.horizon = 30;
    seq.generator = [](int m) {
        const double mm = std::max(m, 2);
        return round_annulus(1.0 / (mm * mm * mm), mm, Complex(1.0 / mm, 0.0));
    };
    const KernelResult k = hausdorff_kernel(seq);
    CHECK(k.degenerate);
    CHECK(sph_dist(SpherePoint(k.basepoint), SpherePoint(0.0)) < 0.05);
}

TEST_CASE("kernel of the circles-with-arcs family is the half disc") {
    const DomainSequence seq = rings_sequence(40, 12);
    KernelOptions kopts;
    kopts.block_radius = 0.013;
    kopts.grid_h = 0.004;
    const KernelResult k = hausdorff_kernel(seq, kopts);
    REQUIRE_FALSE(k.degenerate);

    // the component of the basepoint is D(0, 1/2): every boundary sample on
    // the i = 2 circle, and the kernel simply connected
    std::vector<Component> half;
    half.push_back(make_component(OuterDiscComplementSpec{Complex(0, 0), 0.5}, 0.004));
    const Domain half_disc = validate_domain(std::move(half), Complex(0, 0));
    const double gap = hausdorff_dist(k.boundary_sample(), half_disc.complement_sample());
    CHECK(gap < 0.02);
    CHECK(k.connectivity == 1);
}

TEST_CASE("check_convergence verdicts") {
    SUBCASE("constant sequence converges to itself") {
        const DomainSequence seq = constant_annulus_sequence();
        const ConvergenceReport rep =
            check_convergence(seq, CandidateLimit::pointed(seq.at(1)));
        CHECK(rep.verdict == Verdict::Converges);
        CHECK(rep.cond_i.pass);
        CHECK(rep.cond_ii.pass);
        CHECK(rep.cond_iii.pass);
        CHECK(rep.text().find("up to m=") != std::string::npos);
    }
    SUBCASE("alternating annuli diverge: even and odd kernels differ") {
        DomainSequence seq;
        seq.description = "alternating";
        seq.horizon = 12;
        seq.generator = [](int m) {
            return (m % 2) ? round_annulus(0.25, 1.0, Complex(0.5, 0.0))
                           : round_annulus(0.45, 1.6, Complex(0.5, 0.0));
        };
        const ConvergenceReport rep =
            check_convergence(seq, CandidateLimit::pointed(seq.at(1)));
        CHECK(rep.verdict == Verdict::Diverges);
        CHECK_FALSE(rep.cond_iii.pass);
    }
    SUBCASE("shrinking annuli are degenerate") {
        DomainSequence seq;
        seq.description = "shrinking";
        seq.horizon = 30;
        seq.generator = [](int m) {
            const double mm = std::max(m, 2);
            return round_annulus(1.0 / (mm * mm * mm), mm, Complex(1.0 / mm, 0.0));
        };
        const ConvergenceReport rep =
            check_convergence(seq, CandidateLimit::singleton(Complex(0, 0)));
        CHECK(rep.verdict == Verdict::Degenerate);
    }
}

TEST_CASE("geodesic convergence suite") {
    const Domain limit = round_annulus(0.25, 1.0, Complex(0.5, 0.0));
    const FieldBuilder fields = annulus_closed_form_builder(0.01);
    const MetricField limit_field = fields(limit, 0);
    const Meridian limit_meridian =
        find_meridian(limit_field, enumerate_separations(limit)[0]);

    SUBCASE("constant sequence has vanishing deviations") {
        const DomainSequence seq = constant_annulus_sequence();
        const GeodesicSuite suite = geodesic_convergence_suite(
            seq, limit_field, limit_meridian, {2, 4, 6}, fields, TrackMode::Track);
        for (const auto& row : suite.rows) {
            CHECK(row.deviation < 2e-3);
            CHECK(std::abs(row.length - limit_meridian.length) < 1e-2);
        }
    }
    SUBCASE("A(0.25 - 0.1/m, 1 + 1/m) converges to the limit equator") {
        DomainSequence seq;
        seq.description = "inflating-annuli";
        seq.horizon = 24;
        seq.generator = [](int m) {
            return round_annulus(0.25 - 0.1 / m, 1.0 + 1.0 / m, Complex(0.5, 0.0));
        };
        const GeodesicSuite suite = geodesic_convergence_suite(
            seq, limit_field, limit_meridian, {6, 10, 16, 24}, fields, TrackMode::Track);
        CHECK(suite.deviations_decreasing());
        CHECK(suite.length_gaps_decreasing());
        const double expect = 2 * kPi * kPi / std::log(4.0);
        CHECK(std::abs(suite.rows.back().length - expect) / expect < 0.05);
        CHECK(suite.rows.back().deviation < 0.02);
    }
}

TEST_CASE("meridian bounds suite") {
    SUBCASE("constant three-connected domain reproduces its own values") {
        DomainSequence seq;
        seq.description = "constant-3";
        seq.horizon = 2;
        seq.generator = [](int) {
            std::vector<Component> comps;
            comps.push_back(make_component(DiscSpec{Complex(-0.4, 0), 0.18}, 0.005));
            comps.push_back(make_component(DiscSpec{Complex(0.4, 0), 0.18}, 0.005));
            comps.push_back(make_component(OuterDiscComplementSpec{Complex(0, 0), 1.0}, 0.005));
            return validate_domain(std::move(comps), Complex(0, -0.6));
        };
        const BoundsSuite suite =
            meridian_bounds_suite(seq, {1, 2}, pde_field_builder(0.015));
        REQUIRE(suite.rows.size() == 2);
        REQUIRE(suite.rows[0].lengths.size() == 3); // E(3) classes
        for (size_t c = 0; c < 3; ++c)
            CHECK(suite.rows[0].lengths[c] ==
                  doctest::Approx(suite.rows[1].lengths[c]).epsilon(1e-6));
        CHECK(suite.lower_bound_ok);
        CHECK(suite.maxima_stable);
    }
    SUBCASE("converging annuli stay bounded below") {
        DomainSequence seq;
        seq.description = "converging";
        seq.horizon = 24;
        seq.generator = [](int m) {
            return round_annulus(0.25 - 0.1 / m, 1.0 + 1.0 / m, Complex(0.5, 0.0));
        };
        const BoundsSuite suite =
            meridian_bounds_suite(seq, {16, 20, 24}, annulus_closed_form_builder(0.01));
        const double expect = 2 * kPi * kPi / std::log(4.0);
        CHECK(suite.min_length >= 0.9 * expect);
        CHECK(suite.lower_bound_ok);
    }
}

TEST_CASE("canonical convergence suite") {
    SUBCASE("constant sequence has zero deviations") {
        const DomainSequence seq = constant_annulus_sequence();
        const CanonicalSuite suite = canonical_convergence_suite(
            seq, seq.at(1), CanonicalLabeling{0}, {2, 5});
        for (const auto& row : suite.rows) {
            CHECK(row.lambda_dev < 1e-9);
            CHECK(row.psi_dev < 1e-7);
        }
    }
    SUBCASE("standard domains with Lambda shifted by 1/m") {
        LambdaVector base;
        base.n = 3;
        base.lambdas = {std::log(4.0), 0.5 * std::log(4.0)};
        base.thetas = {0.6, 2.1};
        DomainSequence seq;
        seq.description = "standard-shifted";
        seq.horizon = 8;
        seq.generator = [base](int m) {
            LambdaVector lam = base;
            for (auto& l : lam.lambdas) l += 1.0 / m;
            for (auto& t : lam.thetas) t += 1.0 / m;
            return standard_domain(lam, Complex(1.5, 0.0));
        };
        const Domain limit = standard_domain(base, Complex(1.5, 0.0));
        const CanonicalSuite suite =
            canonical_convergence_suite(seq, limit, CanonicalLabeling{0}, {2, 4, 8});
        for (size_t k = 0; k < suite.rows.size(); ++k) {
            const double m = suite.rows[k].m;
            // the construction makes the deviation exactly 1/m
            CHECK(std::abs(suite.rows[k].lambda_dev - 1.0 / m) < 2e-3);
        }
        CHECK(suite.rows.back().psi_dev < 0.05);
    }
}
