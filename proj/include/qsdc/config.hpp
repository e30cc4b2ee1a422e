// Scenario configuration files (strict JSON: unknown keys rejected, all
// bounds validated on load) and the replayable witness format produced by
// failed certifications.
#pragma once

#include <optional>
#include <string>

#include "qsdc/period_design.hpp"
#include "qsdc/sampled_loop.hpp"

namespace qsdc {

/// Scenario plus the optional file-level extras.
struct ScenarioFile {
    Scenario scenario{};
    std::optional<std::string> out;  ///< optional default output path
};

/// Parses and validates a scenario document. Unknown keys anywhere in the
/// tree are errors naming the key; a `physical_unit_rad_per_s` block is
/// rejected here (only the design command honors physical rates; dynamic
/// commands take dimensionless scenarios).
ScenarioFile parse_scenario_text(const std::string& json_text);
ScenarioFile load_scenario(const std::string& path);

/// Design-command inputs, either from flags or a small config file.
struct DesignInputs {
    DesignParams params{};  ///< dimensionless rates and targets
    double beta = 0.0;      ///< for the alpha-bound report (0 disables)
    std::optional<DesignParams> physical;  ///< rad/s rates for second table
};

DesignInputs parse_design_text(const std::string& json_text);
DesignInputs load_design(const std::string& path);

/// A replayable worst-case record: integrating `realization` from `initial`
/// over `horizon` with zero control reproduces `objective_value`.
struct Witness {
    DecoherenceKind kind = DecoherenceKind::Closed;
    SearchObjective objective = SearchObjective::FailureProb;
    UncertaintyBounds bounds{};
    BlochState initial{};
    double horizon = 0.0;
    double dt = 0.0;
    double objective_value = 0.0;
    Realization realization{};
};

/// Serializes with full double precision so a replay is bit-reproducible.
std::string witness_to_text(const Witness& w);
Witness parse_witness_text(const std::string& json_text);
void write_witness(const std::string& path, const Witness& w);
Witness load_witness(const std::string& path);

Witness make_witness(const Scenario& sc, const CertifyResult& res);

}  // namespace qsdc
