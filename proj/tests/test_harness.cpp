#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "meridian/report.hpp"
#include "meridian/scenario.hpp"

using namespace meridian;

namespace {

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    REQUIRE(in.good());
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

} // namespace

TEST_CASE("scenario registry") {
    const auto names = scenario_names();
    // the registered minimum
    for (const char* required :
         {"shrinking-annuli", "figure2-pinch", "figure3-alternating", "converging-annuli",
          "eccentric-annuli", "symmetric-3-connected"})
        CHECK(std::find(names.begin(), names.end(), required) != names.end());
    CHECK_THROWS_AS(run_scenario("no-such-scenario"), UnknownScenario);
}

TEST_CASE("shrinking annuli scenario") {
    ScenarioConfig cfg;
    cfg.horizon = 30; // trimmed horizon for the unit suite
    const RunReport rep = run_scenario("shrinking-annuli", cfg);
    for (const auto& c : rep.criteria) {
        INFO(c.name, ": ", c.measured, " expected ", c.expected);
        CHECK(c.status == CriterionStatus::Pass);
    }
    CHECK(rep.text().find("consistency statements up to this m") != std::string::npos);
}

TEST_CASE("report emission is byte-stable for a fixed seed") {
    const std::string dir1 = "/tmp/meridian_harness_a";
    const std::string dir2 = "/tmp/meridian_harness_b";
    std::filesystem::remove_all(dir1);
    std::filesystem::remove_all(dir2);
    ScenarioConfig cfg;
    cfg.horizon = 12; // short horizon: determinism is what is under test here
    cfg.seed = 7;
    cfg.out_dir = dir1;
    const RunReport r1 = run_scenario("shrinking-annuli", cfg);
    cfg.out_dir = dir2;
    const RunReport r2 = run_scenario("shrinking-annuli", cfg);
    CHECK(r1.criteria.size() == r2.criteria.size());
    for (size_t k = 0; k < r1.criteria.size(); ++k)
        CHECK(r1.criteria[k].measured == r2.criteria[k].measured);
    CHECK(slurp(dir1 + "/shrinking_annuli_modulus.csv") ==
          slurp(dir2 + "/shrinking_annuli_modulus.csv"));

    SUBCASE("csv shape: header plus data lines, LF endings") {
        const std::string csv = slurp(dir1 + "/shrinking_annuli_modulus.csv");
        CHECK(csv.find("\r") == std::string::npos);
        CHECK(csv.rfind("m,lambda1_inner", 0) == 0);
        int lines = 0;
        for (char ch : csv)
            if (ch == '\n') ++lines;
        CHECK(lines == 12); // header + 11 rows (m = 2..12)
    }
}

TEST_CASE("svg emission") {
    const std::string dir = "/tmp/meridian_harness_svg";
    std::filesystem::remove_all(dir);
    std::filesystem::create_directories(dir);

    std::vector<Component> comps;
    comps.push_back(make_component(DiscSpec{Complex(0, 0), 0.25}, 0.01));
    comps.push_back(make_component(OuterDiscComplementSpec{Complex(0, 0), 1.0}, 0.01));
    const Domain ann = validate_domain(std::move(comps), Complex(0.5, 0.0));

    SvgScene svg;
    svg.fit(ann);
    svg.add_domain(ann);
    svg.add_curve(ClosedCurve::circle(Complex(0, 0), 0.5, 64), "#c0392b");
    svg.add_point(ann.basepoint, "#000000");
    svg.write(dir + "/annulus.svg");

    const std::string content = slurp(dir + "/annulus.svg");
    CHECK(content.find("<svg") != std::string::npos);
    CHECK(content.find("version=\"1.1\"") != std::string::npos);
    // two boundary circles, one basepoint dot, one polyline curve
    size_t circles = 0, pos = 0;
    while ((pos = content.find("<circle", pos)) != std::string::npos) {
        ++circles;
        ++pos;
    }
    CHECK(circles == 3);
    CHECK(content.find("<polyline") != std::string::npos);
}

TEST_CASE("convergence text block wording is horizon qualified") {
    const DomainSequence seq = scenario_sequence("shrinking-annuli", 20);
    const CandidateLimit cand = scenario_candidate("shrinking-annuli");
    const ConvergenceReport rep = check_convergence(seq, cand);
    const std::string text = rep.text();
    CHECK(text.find("up to m=20") != std::string::npos);
    CHECK(text.find("degenerate") != std::string::npos);
}
