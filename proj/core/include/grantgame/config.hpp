#pragma once

#include <cstdint>
#include <filesystem>
#include <string>

#include "grantgame/model.hpp"

namespace grantgame {

enum class DistributionKind { Uniform, BetaBinomial, ZeroInflatedBetaBinomial };

std::string to_string(DistributionKind kind);
DistributionKind distribution_kind_from_string(const std::string& name);

/// Tagged distribution record as it appears in config files.
struct DistributionSpec {
    DistributionKind kind = DistributionKind::Uniform;
    double a = 0.0;          // beta-binomial shape
    double b = 0.0;          // beta-binomial shape
    double zero_mass = 0.0;  // mixture weight of the point mass at zero

    bool operator==(const DistributionSpec&) const = default;
};

/// Everything one run needs: model, solver, simulation, and output settings.
struct RunConfig {
    int schema_version = 1;

    std::size_t grid_points = 51;
    double income_lo = 0.0;
    double income_hi = 5.0;
    double beta = 0.95;
    DistributionSpec field_spec;  // F
    DistributionSpec topic_spec;  // G

    double tolerance = 1e-9;
    long max_iterations = 100000;

    long horizon = 400;
    long trials = 10000;
    std::uint64_t seed = 20120501;

    std::string output_dir = "out";
    std::string output_format = "csv";

    bool operator==(const RunConfig&) const = default;
};

/// Embedded figure recipes: "fig4a", "fig4b", "fig5".
RunConfig preset_config(const std::string& name);

/// Throws std::invalid_argument naming the failing field.
void validate_run_config(const RunConfig& config);

/// Materializes a DistributionSpec on the configured income grid.
DiscreteDistribution build_distribution(const DistributionSpec& spec, std::size_t grid_points,
                                        double lo, double hi);

/// Validates the config and builds the solvable model instance.
ModelConfig build_model(const RunConfig& config);

std::string run_config_to_json(const RunConfig& config);
RunConfig run_config_from_json(const std::string& text);
RunConfig load_run_config(const std::filesystem::path& path);

}  // namespace grantgame
