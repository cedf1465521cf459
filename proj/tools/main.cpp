#include <cstdio>
#include <filesystem>

#include <CLI11.hpp>

#include "meridian/canonical.hpp"
#include "meridian/domain_io.hpp"
#include "meridian/geodesic.hpp"
#include "meridian/report.hpp"
#include "meridian/scenario.hpp"

using namespace meridian;

namespace {

void ensure_dir(const std::string& dir) {
    if (!dir.empty()) std::filesystem::create_directories(dir);
}

int cmd_metric(const std::string& domain_file, double h, double offset_factor,
               const std::string& out) {
    const Domain domain = load_domain(domain_file);
    SolveOptions opts;
    if (offset_factor > 0) opts.offset_factor = offset_factor;
    const MetricField field = solve_density(domain, h, opts);
    std::printf("grid %dx%d h=%g interior_offset=%g\n", field.nx, field.ny, field.h,
                field.boundary_offset);
    std::printf("newton_iterations %d residual %.3e\n", field.newton_iterations,
                field.residual_norm);
    if (!out.empty()) {
        ensure_dir(out);
        dump_field_csv(field, out + "/logdensity.csv");
        std::printf("wrote %s/logdensity.csv\n", out.c_str());
    }
    return 0;
}

int cmd_meridian(const std::string& domain_file, double h, int sep_mask, bool principal,
                 uint64_t seed, const std::string& out) {
    const Domain domain = load_domain(domain_file);
    const MetricField field = solve_density(domain, h);
    MeridianOptions mopts;
    mopts.seed = seed;

    std::vector<Meridian> found;
    if (principal || sep_mask < 0) {
        const PrincipalSystem sys = principal_system(field, mopts);
        int i = 1;
        for (const auto& m : sys.meridians) {
            if (m)
                found.push_back(*m);
            else
                std::printf("principal meridian %d absent (degenerate component)\n", i);
            ++i;
        }
    } else {
        Separation chosen{};
        bool ok = false;
        for (const auto& s : enumerate_separations(domain))
            if (static_cast<int>(s.e_mask) == sep_mask) {
                chosen = s;
                ok = true;
            }
        if (!ok) {
            std::fprintf(stderr, "no separation with mask %d\n", sep_mask);
            return 2;
        }
        found.push_back(find_meridian(field, chosen, mopts));
    }

    CsvTable t;
    t.header = {"sep_mask", "length", "dist", "n_vertices"};
    for (const auto& m : found) {
        t.add_row({std::to_string(m.separation.e_mask), csv_num(m.length), csv_num(m.dist),
                   std::to_string(m.curve.edge_count())});
        std::printf("sep_mask=%u length=%.6f dist=%.6f vertices=%zu\n", m.separation.e_mask,
                    m.length, m.dist, m.curve.edge_count());
    }
    if (!out.empty()) {
        ensure_dir(out);
        t.write(out + "/meridians.csv");
        for (size_t k = 0; k < found.size(); ++k)
            write_curve_csv(found[k].curve,
                            out + "/meridian_" + std::to_string(found[k].separation.e_mask) +
                                ".csv");
        SvgScene svg;
        svg.fit(domain);
        svg.add_domain(domain);
        const char* palette[] = {"#c0392b", "#2471a3", "#1e8449", "#b7950b", "#7d3c98"};
        for (size_t k = 0; k < found.size(); ++k)
            svg.add_curve(found[k].curve, palette[k % 5]);
        svg.add_point(domain.basepoint, "#000000");
        svg.write(out + "/meridians.svg");
        std::printf("wrote %s/meridians.{csv,svg}\n", out.c_str());
    }
    return 0;
}

int cmd_map(const std::string& domain_file, int inner, int truncation, const std::string& out) {
    const Domain domain = load_domain(domain_file);
    CanonicalOptions opts;
    if (truncation > 0) opts.truncation = truncation;
    const CanonicalMap map = solve_canonical_map(domain, CanonicalLabeling{inner}, opts);
    std::printf("lambda1 %.9f (modulus %.9f)\n", map.lambda.lambda1(),
                map.lambda.lambda1() / (2 * 3.14159265358979323846));
    for (size_t j = 1; j < map.lambda.lambdas.size(); ++j)
        std::printf("lambda%zu %.9f theta %.6f..%.6f\n", j + 1, map.lambda.lambdas[j],
                    map.lambda.thetas[2 * j - 2], map.lambda.thetas[2 * j - 1]);
    std::printf("boundary_residual %.3e\n", map.boundary_residual);
    if (!out.empty()) {
        ensure_dir(out);
        dump_canonical_map(map, out + "/canonical_map.txt");
        const Domain image = standard_domain(map.lambda, map.basepoint_image);
        SvgScene svg;
        svg.fit(image);
        svg.add_domain(image);
        svg.add_point(map.basepoint_image, "#000000");
        svg.write(out + "/slit_annulus.svg");
        std::printf("wrote %s/canonical_map.txt and %s/slit_annulus.svg\n", out.c_str(),
                    out.c_str());
    }
    return 0;
}

int cmd_converge(const std::string& scenario, int horizon, const std::string& out) {
    const DomainSequence seq = scenario_sequence(scenario, horizon);
    const CandidateLimit cand = scenario_candidate(scenario, horizon);
    const ConvergenceReport rep = check_convergence(seq, cand);
    std::fputs(rep.text().c_str(), stdout);
    if (!out.empty()) {
        ensure_dir(out);
        std::ofstream f(out + "/convergence_report.txt", std::ios::binary);
        f << rep.text();
        std::printf("wrote %s/convergence_report.txt\n", out.c_str());
    }
    return rep.verdict == Verdict::Inconclusive ? 1 : 0;
}

int cmd_scenario(const std::string& name, int horizon, uint64_t seed, double resolution,
                 const std::string& out) {
    ScenarioConfig cfg;
    cfg.horizon = horizon;
    cfg.seed = seed;
    cfg.resolution = resolution;
    cfg.out_dir = out;
    const RunReport rep = run_scenario(name, cfg);
    std::fputs(rep.text().c_str(), stdout);
    return rep.all_pass() ? 0 : 1;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"hyperbolic geometry of finitely connected planar domains"};
    app.require_subcommand(1);

    std::string domain_file, out_dir, scenario_name;
    double resolution = 0.01, offset_factor = 0.0;
    int horizon = 0, sep_mask = -1, inner = 0, truncation = 0;
    uint64_t seed = 1;
    bool principal = false, list = false;

    auto* metric = app.add_subcommand("metric", "solve the hyperbolic density field");
    metric->add_option("--domain", domain_file, "domain spec file")->required();
    metric->add_option("--resolution", resolution, "grid spacing h");
    metric->add_option("--offset-factor", offset_factor, "boundary offset in units of h");
    metric->add_option("--out", out_dir, "output directory");

    auto* meridian_cmd = app.add_subcommand("meridian", "compute meridians");
    meridian_cmd->add_option("--domain", domain_file, "domain spec file")->required();
    meridian_cmd->add_option("--resolution", resolution, "grid spacing h");
    meridian_cmd->add_option("--sep", sep_mask, "separation mask (bounded components on E)");
    meridian_cmd->add_flag("--principal", principal, "compute the principal system");
    meridian_cmd->add_option("--seed", seed, "random seed");
    meridian_cmd->add_option("--out", out_dir, "output directory");

    auto* map_cmd = app.add_subcommand("map", "canonical slit-annulus map");
    map_cmd->add_option("--domain", domain_file, "domain spec file")->required();
    map_cmd->add_option("--inner", inner, "bounded component mapped to the unit disc");
    map_cmd->add_option("--truncation", truncation, "series terms per hole");
    map_cmd->add_option("--out", out_dir, "output directory");

    auto* converge = app.add_subcommand("converge", "convergence check for a scenario sequence");
    converge->add_option("--scenario", scenario_name, "scenario name")->required();
    converge->add_option("--horizon", horizon, "sequence horizon M");
    converge->add_option("--out", out_dir, "output directory");

    auto* scenario = app.add_subcommand("scenario", "run a registered scenario");
    scenario->add_option("--name", scenario_name, "scenario name");
    scenario->add_flag("--list", list, "list registered scenarios");
    scenario->add_option("--horizon", horizon, "sequence horizon M");
    scenario->add_option("--seed", seed, "random seed");
    scenario->add_option("--resolution", resolution, "grid spacing h");
    scenario->add_option("--out", out_dir, "output directory");

    CLI11_PARSE(app, argc, argv);

    try {
        if (metric->parsed()) return cmd_metric(domain_file, resolution, offset_factor, out_dir);
        if (meridian_cmd->parsed())
            return cmd_meridian(domain_file, resolution, sep_mask, principal, seed, out_dir);
        if (map_cmd->parsed()) return cmd_map(domain_file, inner, truncation, out_dir);
        if (converge->parsed()) return cmd_converge(scenario_name, horizon, out_dir);
        if (scenario->parsed()) {
            if (list) {
                for (const auto& n : scenario_names()) std::printf("%s\n", n.c_str());
                return 0;
            }
            if (scenario_name.empty()) {
                std::fprintf(stderr, "scenario: provide --name or --list\n");
                return 2;
            }
            return cmd_scenario(scenario_name, horizon, seed,
                                resolution == 0.01 ? 0.0 : resolution, out_dir);
        }
    } catch (const Error& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 3;
    }
    return 0;
}
