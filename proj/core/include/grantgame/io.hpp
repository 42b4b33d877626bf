#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "grantgame/config.hpp"
#include "grantgame/model.hpp"
#include "grantgame/simulate.hpp"
#include "grantgame/solver.hpp"
#include "grantgame/trends.hpp"

namespace grantgame {

/// Shortest round-trippable decimal form (17 significant digits).
std::string format_double(double value);

// --- solver outputs ---

void write_value_csv(const std::filesystem::path& path, const GridSpec& grid,
                     const ValueFunction& value);
void write_policy_csv(const std::filesystem::path& path, const GridSpec& grid,
                      const Matrix<Action>& policy);
void write_action_values_csv(const std::filesystem::path& path, const GridSpec& grid,
                             const std::array<ValueFunction, 3>& action_values);
void write_manifest_json(const std::filesystem::path& path, const RunConfig& config,
                         long iterations, double residual);
void write_results_json(const std::filesystem::path& path, const GridSpec& grid,
                        const SolveResult& result);

/// Writes the value/policy/action-value files plus the run manifest into
/// `dir`, honoring config.output_format ("csv" or "json").
void write_solve_outputs(const std::filesystem::path& dir, const RunConfig& config,
                         const SolveResult& result);

struct PolicyFile {
    GridSpec grid;
    Matrix<Action> policy;
};

/// Reads a policy grid written by write_policy_csv.
PolicyFile read_policy_csv(const std::filesystem::path& path);

// --- simulation outputs ---

void write_trajectory_csv(const std::filesystem::path& path, double beta,
                          const CareerTrajectory& trajectory);
void write_comparison_csv(const std::filesystem::path& path,
                          const std::vector<PolicyComparison>& table, long trials, long horizon);
void write_comparison_text(const std::filesystem::path& path,
                           const std::vector<PolicyComparison>& table, long trials, long horizon);

// --- coded-ads inputs and trend outputs ---

/// CSV with header year,issue,ad_id,topics; topics are ';'-separated codes.
std::vector<CodedAd> read_coded_ads_csv(const std::filesystem::path& path);

/// CSV with header item_id,coder1,coder2.
CoderTable read_coder_table_csv(const std::filesystem::path& path);

/// One category code per line; blank lines and lines starting with # skipped.
std::vector<std::string> read_scheme_file(const std::filesystem::path& path);

void write_trend_long_csv(const std::filesystem::path& path, const TrendMatrix& matrix);
void write_trend_series_csvs(const std::filesystem::path& dir, const TrendMatrix& matrix);
void write_yearly_totals_csv(const std::filesystem::path& path, const TrendMatrix& matrix);
void write_issue_counts_csv(const std::filesystem::path& path,
                            const std::vector<IssueCount>& series);

std::string kappa_report_json(const KappaResult& result);

}  // namespace grantgame
