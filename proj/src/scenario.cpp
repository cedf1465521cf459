#include "meridian/scenario.hpp"

#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "meridian/report.hpp"

namespace meridian {

namespace {

constexpr double kPi = 3.14159265358979323846;

std::string fmt(double v) { return csv_num(v); }

CriterionResult criterion(const std::string& name, bool pass, const std::string& measured,
                          const std::string& expected) {
    CriterionResult c;
    c.name = name;
    c.status = pass ? CriterionStatus::Pass : CriterionStatus::Fail;
    c.measured = measured;
    c.expected = expected;
    return c;
}

Domain round_annulus_domain(Complex center, double r, double R, Complex u,
                            double density = 0.005) {
    std::vector<Component> comps;
    comps.push_back(make_component(DiscSpec{center, r}, density));
    comps.push_back(make_component(OuterDiscComplementSpec{center, R}, density));
    return validate_domain(std::move(comps), u);
}

Domain disc_domain(Complex center, double R, Complex u, double density = 0.005) {
    std::vector<Component> comps;
    comps.push_back(make_component(OuterDiscComplementSpec{center, R}, density));
    return validate_domain(std::move(comps), u);
}

// ---------------------------------------------------------------- sequences

// A(0, 1/m^3, m) with basepoint 1/m; starts at m = 2 (m = 1 is empty).
DomainSequence shrinking_annuli_sequence(int horizon) {
    DomainSequence seq;
    seq.description = "shrinking-annuli";
    seq.horizon = horizon > 0 ? horizon : 50;
    seq.generator = [](int m) {
        const double mm = std::max(m, 2);
        return round_annulus_domain(Complex(0, 0), 1.0 / (mm * mm * mm), mm,
                                    Complex(1.0 / mm, 0.0));
    };
    return seq;
}

// Unit disc minus two almost-closed semicircular arcs on |z| = 1/2 (angular
// gaps 1/m at 0 and pi) and a shrinking pinch disc; connectivity 4 for all m.
DomainSequence figure2_sequence(int horizon) {
    DomainSequence seq;
    seq.description = "figure2-pinch";
    seq.horizon = horizon > 0 ? horizon : 40;
    seq.generator = [](int m) {
        const double eps = 1.0 / std::max(m, 2);
        std::vector<Component> comps;
        comps.push_back(
            make_component(CircleArcSlitSpec{Complex(0, 0), 0.5, eps, kPi - eps}, 0.004));
        comps.push_back(make_component(
            CircleArcSlitSpec{Complex(0, 0), 0.5, kPi + eps, 2 * kPi - eps}, 0.004));
        comps.push_back(
            make_component(DiscSpec{Complex(-0.7, 0), 0.2 / std::max(m, 2)}, 0.004));
        comps.push_back(make_component(OuterDiscComplementSpec{Complex(0, 0), 1.0}, 0.004));
        return validate_domain(std::move(comps), Complex(0, 0));
    };
    return seq;
}

// Inversion-symmetric blob annulus: boundary radii exp(+-(a + b cos t)), so
// the unit circle is the equator by symmetry.
Domain blob_annulus(double a, double b, Complex u, int nvert = 384) {
    std::vector<Complex> inner, outer;
    for (int k = 0; k < nvert; ++k) {
        const double t = 2 * kPi * k / nvert;
        inner.push_back(std::polar(std::exp(-(a + b * std::cos(t))), t));
        outer.push_back(std::polar(std::exp(a + b * std::cos(t)), t));
    }
    std::vector<Component> comps;
    comps.push_back(make_component(PolylineSpec{inner, true, false}, 0.008));
    comps.push_back(make_component(PolylineSpec{outer, true, true}, 0.008));
    return validate_domain(std::move(comps), u);
}

DomainSequence figure3_sequence(int horizon) {
    DomainSequence seq;
    seq.description = "figure3-alternating";
    seq.horizon = horizon > 0 ? horizon : 20;
    seq.generator = [](int m) {
        return (m % 2 == 1) ? blob_annulus(0.55, 0.12, Complex(1.0, 0.0))
                            : blob_annulus(0.42, -0.10, Complex(1.0, 0.0));
    };
    return seq;
}

DomainSequence converging_annuli_sequence(int horizon) {
    DomainSequence seq;
    seq.description = "converging-annuli";
    seq.horizon = horizon > 0 ? horizon : 30;
    seq.generator = [](int m) {
        const double s = std::pow(0.85, m);
        return round_annulus_domain(Complex(0, 0), 0.25 - 0.1 * s, 1.0 + s, Complex(0.5, 0.0));
    };
    return seq;
}

DomainSequence eccentric_annuli_sequence(int horizon) {
    DomainSequence seq;
    seq.description = "eccentric-annuli";
    seq.horizon = horizon > 0 ? horizon : 20;
    seq.generator = [](int m) {
        std::vector<Component> comps;
        comps.push_back(make_component(DiscSpec{Complex(0.3 / m, 0), 0.25}, 0.005));
        comps.push_back(make_component(OuterDiscComplementSpec{Complex(0, 0), 1.0}, 0.005));
        return validate_domain(std::move(comps), Complex(-0.5, 0.0));
    };
    return seq;
}

Domain symmetric_three_domain(double density = 0.005) {
    std::vector<Component> comps;
    comps.push_back(make_component(DiscSpec{Complex(-0.4, 0), 0.18}, density));
    comps.push_back(make_component(DiscSpec{Complex(0.4, 0), 0.18}, density));
    comps.push_back(make_component(OuterDiscComplementSpec{Complex(0, 0), 1.0}, density));
    return validate_domain(std::move(comps), Complex(0, -0.6));
}

DomainSequence symmetric_three_sequence(int horizon) {
    DomainSequence seq;
    seq.description = "symmetric-3-connected";
    seq.horizon = horizon > 0 ? horizon : 12;
    seq.generator = [](int) { return symmetric_three_domain(); };
    return seq;
}

// ------------------------------------------------------------- common checks

// Corollary-2.1-style basepoint shift: rerun check_convergence with shifted
// basepoints w_m -> w at the same horizon.
CriterionResult basepoint_shift_criterion(const DomainSequence& seq, const Domain& limit,
                                          Complex shift, const ConvergenceOptions& opts) {
    DomainSequence shifted = seq;
    shifted.generator = [base = seq.generator, shift](int m) {
        Domain d = base(m);
        d.basepoint += shift;
        return d;
    };
    Domain limit_shifted = limit;
    limit_shifted.basepoint += shift;
    const ConvergenceReport rep =
        check_convergence(shifted, CandidateLimit::pointed(limit_shifted), opts);
    return criterion("basepoint-shift-invariance", rep.verdict == Verdict::Converges,
                     verdict_name(rep.verdict), "converges at the same horizon");
}

void maybe_emit_domain_svg(const std::string& out_dir, const std::string& name,
                           const Domain& domain, const std::vector<const Meridian*>& meridians) {
    if (out_dir.empty()) return;
    SvgScene svg;
    svg.fit(domain);
    svg.add_domain(domain);
    const char* palette[] = {"#c0392b", "#2471a3", "#1e8449", "#b7950b", "#7d3c98"};
    int k = 0;
    for (const auto* m : meridians) {
        if (m) svg.add_curve(m->curve, palette[k % 5]);
        ++k;
    }
    svg.add_point(domain.basepoint, "#000000");
    svg.write(out_dir + "/" + name + ".svg");
}

// ----------------------------------------------------------------- scenarios

RunReport run_shrinking_annuli(const ScenarioConfig& cfg) {
    RunReport rep;
    rep.scenario = "shrinking-annuli";
    const DomainSequence seq = shrinking_annuli_sequence(cfg.horizon);
    rep.horizon = seq.horizon;

    ConvergenceOptions copts;
    const ConvergenceReport conv = check_convergence(seq, CandidateLimit::singleton(Complex(0, 0)),
                                                     copts);
    rep.criteria.push_back(criterion("degenerate-verdict", conv.verdict == Verdict::Degenerate,
                                     verdict_name(conv.verdict), "degenerate"));
    rep.criteria.push_back(criterion(
        "kernel-is-singleton-origin",
        conv.kernel_full.degenerate &&
            sph_dist(SpherePoint(conv.kernel_full.basepoint), SpherePoint(0.0)) < 0.05,
        fmt(sph_dist(SpherePoint(conv.kernel_full.basepoint), SpherePoint(0.0))),
        "singleton within 0.05 of 0"));

    // exact modulus halving: A(0, 1/m^2, 1) has the same equator and half the
    // modulus of A(0, 1/m^3, m)
    double worst = 0.0;
    for (int m = 2; m <= std::max(seq.horizon, 50); ++m) {
        const double mm = m;
        const Domain small = round_annulus_domain(Complex(0, 0), 1.0 / (mm * mm), 1.0,
                                                  Complex(1.0 / mm, 0.0));
        const Domain big = round_annulus_domain(Complex(0, 0), 1.0 / (mm * mm * mm), mm,
                                                Complex(1.0 / mm, 0.0));
        const double ratio = modulus_annulus(small) / modulus_annulus(big);
        worst = std::max(worst, std::abs(ratio - 0.5));
    }
    rep.criteria.push_back(
        criterion("modulus-ratio-half", worst <= 1e-12, fmt(worst), "|ratio - 1/2| <= 1e-12"));

    if (!cfg.out_dir.empty()) {
        CsvTable t;
        t.header = {"m", "lambda1_inner", "lambda1_outer", "ratio"};
        for (int m = 2; m <= 12; ++m) {
            const double mm = m;
            const double a = modulus_annulus(round_annulus_domain(
                Complex(0, 0), 1.0 / (mm * mm), 1.0, Complex(1.0 / mm, 0.0)));
            const double b = modulus_annulus(round_annulus_domain(
                Complex(0, 0), 1.0 / (mm * mm * mm), mm, Complex(1.0 / mm, 0.0)));
            t.add_row({std::to_string(m), fmt(a), fmt(b), fmt(a / b)});
        }
        t.write(cfg.out_dir + "/shrinking_annuli_modulus.csv");
    }
    return rep;
}

RunReport run_figure2(const ScenarioConfig& cfg) {
    RunReport rep;
    rep.scenario = "figure2-pinch";
    const DomainSequence seq = figure2_sequence(cfg.horizon);
    rep.horizon = seq.horizon;

    // kernel against D(0, 1/2) at the horizon
    ConvergenceOptions copts;
    copts.kernel.block_radius = 0.013;
    copts.kernel.grid_h = 0.004;
    const Domain half_disc = disc_domain(Complex(0, 0), 0.5, Complex(0, 0));
    const ConvergenceReport conv =
        check_convergence(seq, CandidateLimit::pointed(half_disc), copts);
    double kernel_gap = kPi;
    if (!conv.kernel_full.degenerate)
        kernel_gap =
            hausdorff_dist(conv.kernel_full.boundary_sample(), half_disc.complement_sample());
    rep.criteria.push_back(criterion("kernel-is-half-disc", kernel_gap <= 0.02, fmt(kernel_gap),
                                     "Hausdorff gap to D(0,1/2) <= 0.02"));
    rep.criteria.push_back(criterion("caratheodory-verdict", conv.verdict == Verdict::Converges,
                                     verdict_name(conv.verdict), "converges"));
    rep.criteria.push_back(criterion(
        "kernel-connectivity-nonincreasing",
        !conv.kernel_full.degenerate && conv.kernel_full.connectivity <= 4,
        std::to_string(conv.kernel_full.connectivity), "<= 4 (cannot split into more components)"));

    // meridian trends over a geometric tail schedule: the merging class (one
    // of the two near-closed arcs) must lengthen, the pinching class must
    // shorten
    const std::vector<int> schedule = {8, 11, 15, 21};
    std::vector<double> merge_len, pinch_len;
    std::vector<Meridian> last_meridians;
    Domain last_domain;
    for (const int m : schedule) {
        const Domain dm = seq.at(m);
        SolveOptions sopts;
        sopts.offset_factor = 3.0;
        const double h = 1.0 / (12.0 * m);
        const MetricField fm = solve_density(dm, h, sopts);
        const auto seps = enumerate_separations(dm);
        // principal candidates are listed first: K^1 = upper arc, K^3 = pinch
        MeridianOptions mopts;
        mopts.seed = cfg.seed;
        const Meridian merging = find_meridian(fm, seps[0], mopts);
        const Meridian pinching = find_meridian(fm, seps[2], mopts);
        merge_len.push_back(merging.length);
        pinch_len.push_back(pinching.length);
        if (m == schedule.back()) {
            last_meridians = {merging, pinching};
            last_domain = dm;
        }
    }
    bool merge_up = true, pinch_down = true;
    for (size_t k = 1; k < schedule.size(); ++k) {
        merge_up = merge_up && merge_len[k] > merge_len[k - 1];
        pinch_down = pinch_down && pinch_len[k] < pinch_len[k - 1];
    }
    {
        std::ostringstream ms, ps;
        for (double v : merge_len) ms << fmt(v) << " ";
        for (double v : pinch_len) ps << fmt(v) << " ";
        rep.criteria.push_back(criterion("merging-meridian-length-increasing", merge_up, ms.str(),
                                         "strictly increasing over the tail"));
        rep.criteria.push_back(criterion("pinching-meridian-length-decreasing", pinch_down,
                                         ps.str(), "strictly decreasing over the tail"));
    }

    if (!cfg.out_dir.empty()) {
        CsvTable t;
        t.header = {"m", "merging_length", "pinching_length"};
        for (size_t k = 0; k < schedule.size(); ++k)
            t.add_row({std::to_string(schedule[k]), fmt(merge_len[k]), fmt(pinch_len[k])});
        t.write(cfg.out_dir + "/figure2_meridian_trends.csv");
        maybe_emit_domain_svg(cfg.out_dir, "figure2_domain", last_domain,
                              {&last_meridians[0], &last_meridians[1]});
    }
    return rep;
}

RunReport run_figure3(const ScenarioConfig& cfg) {
    RunReport rep;
    rep.scenario = "figure3-alternating";
    const DomainSequence seq = figure3_sequence(cfg.horizon);
    rep.horizon = seq.horizon;

    ConvergenceOptions copts;
    const ConvergenceReport conv =
        check_convergence(seq, CandidateLimit::pointed(seq.at(1)), copts);
    rep.criteria.push_back(criterion("verdict-diverges", conv.verdict == Verdict::Diverges,
                                     verdict_name(conv.verdict), "diverges"));

    double eo_gap = 0.0;
    if (!conv.kernel_even.degenerate && !conv.kernel_odd.degenerate)
        eo_gap = hausdorff_dist(conv.kernel_even.boundary_sample(),
                                conv.kernel_odd.boundary_sample());
    rep.criteria.push_back(criterion("even-odd-kernels-differ", eo_gap > 0.1, fmt(eo_gap),
                                     "spherical Hausdorff gap > 0.1"));

    // both members are symmetric under inversion in the unit circle, so the
    // unit circle is the equator of each
    const double h = cfg.resolution > 0 ? cfg.resolution : 0.008;
    const ClosedCurve unit = ClosedCurve::circle(Complex(0, 0), 1.0, 256);
    std::vector<Meridian> meridians;
    for (int which = 1; which <= 2; ++which) {
        const Domain d = seq.at(which);
        const MetricField f = solve_density(d, h);
        MeridianOptions mopts;
        mopts.seed = cfg.seed;
        meridians.push_back(find_meridian(f, enumerate_separations(d)[0], mopts));
        const double gap = curve_hausdorff(meridians.back().curve, unit);
        rep.criteria.push_back(criterion("meridian-is-unit-circle-" + std::to_string(which),
                                         gap < 1e-2, fmt(gap), "Hausdorff gap < 1e-2"));
    }

    if (!cfg.out_dir.empty()) {
        maybe_emit_domain_svg(cfg.out_dir, "figure3_domain_odd", seq.at(1), {&meridians[0]});
        maybe_emit_domain_svg(cfg.out_dir, "figure3_domain_even", seq.at(2), {&meridians[1]});
    }
    return rep;
}

RunReport run_converging_annuli(const ScenarioConfig& cfg) {
    RunReport rep;
    rep.scenario = "converging-annuli";
    const DomainSequence seq = converging_annuli_sequence(cfg.horizon);
    rep.horizon = seq.horizon;

    const Domain limit = round_annulus_domain(Complex(0, 0), 0.25, 1.0, Complex(0.5, 0.0));

    ConvergenceOptions copts;
    const ConvergenceReport conv = check_convergence(seq, CandidateLimit::pointed(limit), copts);
    rep.criteria.push_back(criterion("verdict-converges", conv.verdict == Verdict::Converges,
                                     verdict_name(conv.verdict), "converges"));

    // geodesic convergence against the closed-form limit: round annuli use
    // the analytic density (the covering-map field), the geodesic machinery
    // on top is unchanged
    const double h = cfg.resolution > 0 ? cfg.resolution : 0.01;
    auto closed_form_for = [h](const Domain& d, int) {
        const auto& disc = std::get<DiscSpec>(d.components[0].geometry);
        const auto& outer = std::get<OuterDiscComplementSpec>(d.components[1].geometry);
        ClosedFormParams params;
        params.center = disc.center;
        params.r = disc.radius;
        params.R = outer.radius;
        return closed_form_field(d, ClosedFormKind::Annulus, params, h);
    };
    const MetricField limit_field = closed_form_for(limit, 0);
    MeridianOptions mopts;
    mopts.seed = cfg.seed;
    const Meridian limit_meridian = find_meridian(limit_field, enumerate_separations(limit)[0],
                                                  mopts);

    std::vector<int> schedule;
    for (int m = seq.horizon - 9; m <= seq.horizon; ++m) schedule.push_back(m);
    const GeodesicSuite suite = geodesic_convergence_suite(seq, limit_field, limit_meridian,
                                                           schedule, closed_form_for,
                                                           TrackMode::Track);

    const double expect = 2 * kPi * kPi / std::log(4.0);
    rep.criteria.push_back(criterion("limit-length-matches-covering-map",
                                     std::abs(limit_meridian.length - expect) / expect < 0.02,
                                     fmt(limit_meridian.length), fmt(expect) + " within 2%"));
    rep.criteria.push_back(criterion("curve-deviation-decreasing", suite.deviations_decreasing(),
                                     fmt(suite.rows.back().deviation),
                                     "strictly decreasing over the tail"));
    rep.criteria.push_back(criterion("length-gap-decreasing", suite.length_gaps_decreasing(),
                                     fmt(std::abs(suite.rows.back().length - expect)),
                                     "strictly decreasing over the tail"));
    rep.criteria.push_back(criterion("final-deviation-small",
                                     suite.rows.back().deviation < 0.02,
                                     fmt(suite.rows.back().deviation), "< 0.02 at the horizon"));
    rep.criteria.push_back(
        criterion("final-length-gap-small",
                  std::abs(suite.rows.back().length - expect) / expect < 0.02,
                  fmt(std::abs(suite.rows.back().length - expect) / expect), "< 2% at the horizon"));

    // meridian bounds over the scheduled tail
    const std::vector<int> bschedule = {seq.horizon - 9, seq.horizon - 6, seq.horizon - 3,
                                        seq.horizon};
    const BoundsSuite bounds = meridian_bounds_suite(seq, bschedule, closed_form_for);
    rep.criteria.push_back(criterion("tail-lengths-bounded-below",
                                     bounds.min_length >= 0.9 * expect, fmt(bounds.min_length),
                                     ">= 0.9 * equator length"));
    rep.criteria.push_back(criterion("tail-maxima-stable",
                                     bounds.maxima_stable && bounds.max_dist < 10.0,
                                     fmt(bounds.max_length), "stable over the tail"));

    rep.criteria.push_back(basepoint_shift_criterion(seq, limit, Complex(0.0, 0.1), copts));

    if (!cfg.out_dir.empty()) {
        CsvTable t;
        t.header = {"m", "length", "dist", "deviation"};
        for (const auto& r : suite.rows)
            t.add_row({std::to_string(r.m), fmt(r.length), fmt(r.dist), fmt(r.deviation)});
        t.write(cfg.out_dir + "/converging_annuli_geodesics.csv");
        maybe_emit_domain_svg(cfg.out_dir, "converging_annuli_limit", limit, {&limit_meridian});
    }
    return rep;
}

RunReport run_eccentric_annuli(const ScenarioConfig& cfg) {
    RunReport rep;
    rep.scenario = "eccentric-annuli";
    const DomainSequence seq = eccentric_annuli_sequence(cfg.horizon);
    rep.horizon = seq.horizon;

    const Domain limit = round_annulus_domain(Complex(0, 0), 0.25, 1.0, Complex(-0.5, 0.0));

    ConvergenceOptions copts;
    const ConvergenceReport conv = check_convergence(seq, CandidateLimit::pointed(limit), copts);
    rep.criteria.push_back(criterion("verdict-converges", conv.verdict == Verdict::Converges,
                                     verdict_name(conv.verdict), "converges"));

    std::vector<int> schedule;
    for (int m = 4; m <= seq.horizon; m += 4) schedule.push_back(m);
    const CanonicalSuite suite =
        canonical_convergence_suite(seq, limit, CanonicalLabeling{0}, schedule);

    rep.criteria.push_back(criterion(
        "limit-lambda-matches-round-annulus",
        std::abs(suite.limit_lambda.lambda1() - std::log(4.0)) < 1e-6,
        fmt(suite.limit_lambda.lambda1()), "log 4"));
    bool dev_decreasing = true;
    for (size_t k = 1; k < suite.rows.size(); ++k)
        dev_decreasing = dev_decreasing && suite.rows[k].lambda_dev <= suite.rows[k - 1].lambda_dev;
    rep.criteria.push_back(criterion("lambda-deviation-decreasing", dev_decreasing,
                                     fmt(suite.rows.back().lambda_dev), "non-increasing"));
    rep.criteria.push_back(criterion("lambda-deviation-final", suite.rows.back().lambda_dev < 1e-3,
                                     fmt(suite.rows.back().lambda_dev), "< 1e-3 at the horizon"));
    rep.criteria.push_back(criterion("inverse-map-deviation-final",
                                     suite.rows.back().psi_dev < 0.02,
                                     fmt(suite.rows.back().psi_dev), "< 0.02 at the horizon"));

    rep.criteria.push_back(basepoint_shift_criterion(seq, limit, Complex(0.0, 0.1), copts));

    if (!cfg.out_dir.empty()) {
        CsvTable t;
        t.header = {"m", "lambda1", "lambda_dev", "psi_dev"};
        for (const auto& r : suite.rows)
            t.add_row({std::to_string(r.m), fmt(r.lambda.lambda1()), fmt(r.lambda_dev),
                       fmt(r.psi_dev)});
        t.write(cfg.out_dir + "/eccentric_annuli_canonical.csv");
    }
    return rep;
}

RunReport run_symmetric_three(const ScenarioConfig& cfg) {
    RunReport rep;
    rep.scenario = "symmetric-3-connected";
    const DomainSequence seq = symmetric_three_sequence(cfg.horizon);
    rep.horizon = seq.horizon;

    const Domain domain = symmetric_three_domain();
    ConvergenceOptions copts;
    const ConvergenceReport conv = check_convergence(seq, CandidateLimit::pointed(domain), copts);
    rep.criteria.push_back(criterion("constant-sequence-converges",
                                     conv.verdict == Verdict::Converges,
                                     verdict_name(conv.verdict), "converges"));

    const double h = cfg.resolution > 0 ? cfg.resolution : 0.01;
    const MetricField field = solve_density(domain, h);
    MeridianOptions mopts;
    mopts.seed = cfg.seed;
    const PrincipalSystem sys = principal_system(field, mopts);
    rep.criteria.push_back(criterion("principal-system-complete", sys.absent_count() == 0,
                                     std::to_string(3 - sys.absent_count()) + " of 3",
                                     "3 principal meridians"));

    const Meridian& m1 = *sys.meridians[0];
    const Meridian& m2 = *sys.meridians[1];
    const Meridian& m3 = *sys.meridians[2];

    rep.criteria.push_back(criterion("mirror-lengths-agree",
                                     std::abs(m1.length - m2.length) / m1.length < 0.01,
                                     fmt(m1.length) + " vs " + fmt(m2.length), "within 1%"));
    {
        ClosedCurve mirrored = m1.curve;
        for (auto& v : mirrored.vertices) v = -v;
        const double gap = curve_hausdorff(mirrored, m2.curve);
        rep.criteria.push_back(criterion("mirror-image-is-other-meridian", gap < 1e-2, fmt(gap),
                                         "Hausdorff gap < 1e-2"));
    }
    {
        double gap = std::numeric_limits<double>::max();
        const Meridian* ms[3] = {&m1, &m2, &m3};
        for (int a = 0; a < 3; ++a)
            for (int b = a + 1; b < 3; ++b)
                for (const auto& v : ms[a]->curve.vertices)
                    gap = std::min(gap, dist_to_curve(v, ms[b]->curve));
        rep.criteria.push_back(criterion("principal-meridians-disjoint", gap > 0.0, fmt(gap),
                                         "positive pairwise gap"));
    }

    // conformal invariance through the canonical map
    const CanonicalMap map = solve_canonical_map(domain, CanonicalLabeling{0});
    rep.criteria.push_back(criterion("canonical-boundary-residual",
                                     map.boundary_residual <= 1e-4,
                                     fmt(map.boundary_residual), "<= 1e-4"));
    {
        ClosedCurve image = m1.curve;
        for (auto& v : image.vertices) v = eval_forward(map, v);
        image = image.resampled(256);

        const Domain image_domain = standard_domain(map.lambda, map.basepoint_image);
        const double hi = std::exp(map.lambda.lambda1()) / 55.0;
        const MetricField image_field = solve_density(image_domain, hi);

        const double len_before = m1.length;
        const double len_after = hyp_length(image_field, image);
        rep.criteria.push_back(criterion(
            "meridian-length-conformally-invariant",
            std::abs(len_after - len_before) / len_before < 0.03,
            fmt(len_before) + " -> " + fmt(len_after), "equal within 3%"));

        MeridianOptions iopts;
        iopts.seed = cfg.seed;
        const Meridian native = find_meridian(image_field, enumerate_separations(image_domain)[0],
                                              iopts);
        const double gap = curve_hausdorff(image, native.curve);
        rep.criteria.push_back(criterion("meridian-image-matches-native", gap < 0.02, fmt(gap),
                                         "spherical Hausdorff < 0.02"));
    }

    rep.criteria.push_back(basepoint_shift_criterion(seq, domain, Complex(0.05, 0.0), copts));

    if (!cfg.out_dir.empty()) {
        maybe_emit_domain_svg(cfg.out_dir, "symmetric3_domain", domain, {&m1, &m2, &m3});
        CsvTable t;
        t.header = {"sep_mask", "length", "dist", "n_vertices"};
        for (const auto& m : sys.meridians)
            if (m)
                t.add_row({std::to_string(m->separation.e_mask), fmt(m->length), fmt(m->dist),
                           std::to_string(m->curve.edge_count())});
        t.write(cfg.out_dir + "/symmetric3_meridians.csv");
    }
    return rep;
}

struct ScenarioEntry {
    const char* name;
    RunReport (*run)(const ScenarioConfig&);
    DomainSequence (*sequence)(int);
};

const ScenarioEntry kScenarios[] = {
    {"shrinking-annuli", run_shrinking_annuli, shrinking_annuli_sequence},
    {"figure2-pinch", run_figure2, figure2_sequence},
    {"figure3-alternating", run_figure3, figure3_sequence},
    {"converging-annuli", run_converging_annuli, converging_annuli_sequence},
    {"eccentric-annuli", run_eccentric_annuli, eccentric_annuli_sequence},
    {"symmetric-3-connected", run_symmetric_three, symmetric_three_sequence},
};

} // namespace

bool RunReport::all_pass() const {
    for (const auto& c : criteria)
        if (c.status != CriterionStatus::Pass) return false;
    return true;
}

std::string RunReport::text() const {
    std::ostringstream os;
    os << "scenario: " << scenario << "\n";
    os << "horizon: " << horizon << " (all verdicts are consistency statements up to this m)\n";
    os << "seed: " << seed << "\n";
    for (const auto& c : criteria) {
        const char* s = c.status == CriterionStatus::Pass
                            ? "PASS"
                            : (c.status == CriterionStatus::Fail ? "FAIL" : "INCONCLUSIVE");
        os << "  [" << s << "] " << c.name << ": measured " << c.measured << "; expected "
           << c.expected << "\n";
    }
    os << "runtime_seconds: " << csv_num(runtime_seconds) << "\n";
    return os.str();
}

std::vector<std::string> scenario_names() {
    std::vector<std::string> out;
    for (const auto& s : kScenarios) out.emplace_back(s.name);
    return out;
}

bool scenario_exists(const std::string& name) {
    for (const auto& s : kScenarios)
        if (name == s.name) return true;
    return false;
}

RunReport run_scenario(const std::string& name, const ScenarioConfig& config) {
    for (const auto& s : kScenarios) {
        if (name != s.name) continue;
        if (!config.out_dir.empty()) std::filesystem::create_directories(config.out_dir);
        const auto start = std::chrono::steady_clock::now();
        RunReport rep = s.run(config);
        rep.seed = config.seed;
        rep.runtime_seconds =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        if (!config.out_dir.empty())
            emit_report(rep, "text", config.out_dir + "/" + rep.scenario + "_report.txt");
        return rep;
    }
    throw UnknownScenario(name);
}

DomainSequence scenario_sequence(const std::string& name, int horizon) {
    for (const auto& s : kScenarios)
        if (name == s.name) return s.sequence(horizon);
    throw UnknownScenario(name);
}

CandidateLimit scenario_candidate(const std::string& name, int horizon) {
    if (name == "shrinking-annuli") return CandidateLimit::singleton(Complex(0, 0));
    if (name == "figure2-pinch")
        return CandidateLimit::pointed(disc_domain(Complex(0, 0), 0.5, Complex(0, 0)));
    if (name == "figure3-alternating")
        return CandidateLimit::pointed(scenario_sequence(name, horizon).at(1));
    if (name == "converging-annuli")
        return CandidateLimit::pointed(
            round_annulus_domain(Complex(0, 0), 0.25, 1.0, Complex(0.5, 0.0)));
    if (name == "eccentric-annuli")
        return CandidateLimit::pointed(
            round_annulus_domain(Complex(0, 0), 0.25, 1.0, Complex(-0.5, 0.0)));
    if (name == "symmetric-3-connected")
        return CandidateLimit::pointed(symmetric_three_domain());
    throw UnknownScenario(name);
}

void emit_report(const RunReport& report, const std::string& format, const std::string& path) {
    if (format == "text") {
        std::ofstream out(path, std::ios::binary);
        if (!out) throw IoFailure("cannot write " + path);
        out << report.text();
        return;
    }
    if (format == "csv") {
        CsvTable t;
        t.header = {"criterion", "status", "measured", "expected"};
        for (const auto& c : report.criteria) {
            const char* s = c.status == CriterionStatus::Pass
                                ? "pass"
                                : (c.status == CriterionStatus::Fail ? "fail" : "inconclusive");
            t.add_row({c.name, s, c.measured, c.expected});
        }
        t.write(path);
        return;
    }
    throw IoFailure("unknown report format " + format);
}

} // namespace meridian
