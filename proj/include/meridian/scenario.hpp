#pragma once

#include <string>
#include <vector>

#include "meridian/caratheodory.hpp"

namespace meridian {

enum class CriterionStatus { Pass, Fail, Inconclusive };

struct CriterionResult {
    std::string name;
    CriterionStatus status = CriterionStatus::Inconclusive;
    std::string measured;
    std::string expected;
};

struct RunReport {
    std::string scenario;
    int horizon = 0;
    uint64_t seed = 0;
    std::vector<CriterionResult> criteria;
    double runtime_seconds = 0.0;

    bool all_pass() const;
    std::string text() const;
};

struct ScenarioConfig {
    int horizon = 0;     // 0: scenario default
    uint64_t seed = 1;
    double resolution = 0.0; // 0: scenario default
    std::string out_dir; // empty: no file emission
};

// Scenario registry: each scenario rebuilds one of the source constructions
// (shrinking annuli, the pinching/merging family, the alternating pair, ...)
// and evaluates its expected behaviour.
std::vector<std::string> scenario_names();
bool scenario_exists(const std::string& name);
// Throws UnknownScenario.
RunReport run_scenario(const std::string& name, const ScenarioConfig& config = {});

// The sequence a scenario is built on (for the converge subcommand and
// basepoint-shift checks).
DomainSequence scenario_sequence(const std::string& name, int horizon = 0);
CandidateLimit scenario_candidate(const std::string& name, int horizon = 0);

// Report emission: text plus one CSV per tabular criterion; SVG overlays of
// domains and meridians where a scenario produces curves.
void emit_report(const RunReport& report, const std::string& format, const std::string& path);

} // namespace meridian
