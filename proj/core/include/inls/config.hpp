#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>

#include "inls/evolution.hpp"
#include "inls/grid.hpp"
#include "inls/params.hpp"
#include "inls/transforms.hpp"

namespace inls {

/// Initial-condition specification, tagged by kind.
struct InitialCondition {
    enum class Kind { ground_state, s_family, gaussian, snapshot };
    Kind kind = Kind::ground_state;
    SFamilyParams s_family;  ///< used when kind == s_family
    double amplitude = 1.0;  ///< gaussian
    double width = 1.0;      ///< gaussian
    std::string path;        ///< snapshot
};

struct OutputSpec {
    std::string diagnostics_csv;  ///< empty disables
    std::string snapshot_dir;     ///< empty disables
};

struct RunConfig {
    Params params;
    CartesianGrid grid;
    InitialCondition initial_condition;
    EvolutionConfig evolution;
    OutputSpec outputs;
    std::uint64_t seed = 1;
};

/// Parse and validate a JSON run configuration. Unknown keys are
/// rejected with the offending key path in the error message.
RunConfig parse_config(std::istream& in);
RunConfig parse_config_string(const std::string& text);

/// Serialize the effective configuration; the output re-parses to an
/// identical RunConfig.
std::string echo_config(const RunConfig& cfg);

/// Materialize the configured initial condition (builds the ground
/// state when the kind requires one).
Field build_initial_condition(const RunConfig& cfg);

} // namespace inls
