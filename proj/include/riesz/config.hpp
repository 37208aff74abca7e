#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

#include "riesz/anisotropy.hpp"
#include "riesz/measures.hpp"
#include "riesz/oracle.hpp"
#include "riesz/potential.hpp"

namespace riesz {

using json = nlohmann::json;

/// Reads one JSON document; ConfigError on I/O or syntax problems.
json load_json_file(const std::string& path);

/// Sets a dotted path ("kernel.s") to a scalar.  The value is read as JSON
/// when it parses (numbers, true/false, null, quoted strings) and kept as a
/// bare string otherwise.  Objects and arrays cannot be overridden.
void apply_override(json& doc, const std::string& key, const std::string& value);

Profile profile_from_json(const json& j, int d);
json profile_to_json(const Profile& p);

Ellipsoid ellipsoid_from_json(const json& j);
json ellipsoid_to_json(const Ellipsoid& e);

struct Numerics {
    int quad_level = 0;
    std::size_t node_cap = 0;
    /// closed-form results whose error bound exceeds this (relative) are
    /// reported as numerical failures
    double potential_rel = 1e-6;
};

struct Evaluation {
    std::string method = "closed";  // closed | radial | mc | regularized
    double r = 0.0;
    Mat points;
    int n_samples = 0;
    int mc_samples = 1'000'000;
    std::optional<std::uint64_t> seed;
};

struct CounterexampleSpec {
    int d = 0;
    double s = 0.0;
    double eps = 0.0;
};

/// Validated run configuration for one subcommand.
struct RunConfig {
    std::string command;
    std::optional<Kernel> kernel;
    std::optional<Ellipsoid> ellipsoid;
    std::optional<EquilibriumMeasure> measure;
    Evaluation evaluation;
    Numerics numerics;
    ElOptions el;
    CounterexampleSpec counterexample;
    int perturbations = 0;
};

/// Checks every field the command needs; throws ConfigError for malformed
/// or out-of-range input and DomainError for evaluation points outside E.
RunConfig parse_run_config(const json& doc, const std::string& command);

std::uint64_t require_seed(const RunConfig& cfg);

json to_json(const PotentialEstimate& p);
json to_json(const ElReport& r);
json to_json(const CounterexampleReport& r);
json to_json(const EnergyEstimate& e);
json to_json(const MinimalityReport& m);

ElReport el_report_from_json(const json& j);
CounterexampleReport counterexample_report_from_json(const json& j);

} // namespace riesz
