// grantgame: solve, simulate, and verify the career-switching income model,
// and compute hiring-trend statistics from coded job advertisements.

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "grantgame/config.hpp"
#include "grantgame/io.hpp"
#include "grantgame/oracle.hpp"
#include "grantgame/simulate.hpp"
#include "grantgame/solver.hpp"
#include "grantgame/trends.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitInputError = 2;
constexpr int kExitNonConvergence = 3;
constexpr int kExitOracleMismatch = 4;

struct CommonOptions {
    CLI::App* cmd = nullptr;
    std::string config_path;
    std::string preset;
    std::string out_dir = "out";
    double tolerance = 0.0;
    std::size_t grid_points = 0;
    long max_iterations = 0;
    std::uint64_t seed = 0;
    std::string format;
};

void add_model_flags(CLI::App* cmd, CommonOptions& opts) {
    opts.cmd = cmd;
    auto* config_opt = cmd->add_option("--config", opts.config_path, "Run config JSON file");
    cmd->add_option("--preset", opts.preset, "Embedded recipe: fig4a, fig4b, or fig5")
        ->excludes(config_opt);
    cmd->add_option("--grid", opts.grid_points, "Grid points per axis");
    cmd->add_option("--tolerance", opts.tolerance, "Solver tolerance (sup-norm bound on V)");
    cmd->add_option("--max-iterations", opts.max_iterations, "Value-iteration sweep cap");
    cmd->add_option("--seed", opts.seed, "Master RNG seed");
}

grantgame::RunConfig resolve_config(const CommonOptions& opts) {
    grantgame::RunConfig config;
    if (!opts.config_path.empty()) {
        config = grantgame::load_run_config(opts.config_path);
    } else if (!opts.preset.empty()) {
        config = grantgame::preset_config(opts.preset);
    } else {
        throw std::invalid_argument("either --config or --preset is required");
    }
    if (opts.cmd->count("--grid") > 0) config.grid_points = opts.grid_points;
    if (opts.cmd->count("--tolerance") > 0) config.tolerance = opts.tolerance;
    if (opts.cmd->count("--max-iterations") > 0) config.max_iterations = opts.max_iterations;
    if (opts.cmd->count("--seed") > 0) config.seed = opts.seed;
    if (!opts.format.empty()) config.output_format = opts.format;
    config.output_dir = opts.out_dir;
    grantgame::validate_run_config(config);
    return config;
}

int cmd_solve(const CommonOptions& opts) {
    const grantgame::RunConfig config = resolve_config(opts);
    const grantgame::ModelConfig model = grantgame::build_model(config);
    const grantgame::SolveResult result =
        grantgame::solve(model, config.tolerance, config.max_iterations);
    grantgame::write_solve_outputs(config.output_dir, config, result);
    std::cout << "solved " << model.theta_count() << "x" << model.epsilon_count() << " grid in "
              << result.iterations << " iterations, residual "
              << grantgame::format_double(result.sup_norm_residual) << "\n"
              << "outputs written to " << config.output_dir << "\n";
    return kExitOk;
}

int cmd_simulate(const CommonOptions& opts, const std::string& policy_path, long trials_override,
                 long horizon_override) {
    grantgame::RunConfig config = resolve_config(opts);
    if (trials_override > 0) config.trials = trials_override;
    if (horizon_override > 0) config.horizon = horizon_override;
    grantgame::validate_run_config(config);
    const grantgame::ModelConfig model = grantgame::build_model(config);

    grantgame::StationaryPolicy policy;
    std::string policy_name;
    if (!policy_path.empty()) {
        const grantgame::PolicyFile file = grantgame::read_policy_csv(policy_path);
        const auto axes_match = [](const std::vector<double>& a, const std::vector<double>& b) {
            if (a.size() != b.size()) return false;
            for (std::size_t k = 0; k < a.size(); ++k) {
                if (std::abs(a[k] - b[k]) > 1e-9) return false;
            }
            return true;
        };
        if (!axes_match(file.grid.theta_values, model.grid().theta_values) ||
            !axes_match(file.grid.epsilon_values, model.grid().epsilon_values)) {
            throw std::invalid_argument("policy file grid does not match the configured model");
        }
        policy = file.policy;
        policy_name = "loaded_policy";
    } else {
        policy = grantgame::solve(model, config.tolerance, config.max_iterations).policy;
        policy_name = "optimal";
    }

    const std::vector<std::pair<std::string, grantgame::StationaryPolicy>> policies = {
        {policy_name, policy},
        {"always_stay", grantgame::constant_policy(model, grantgame::Action::Stay)},
        {"always_new_field", grantgame::constant_policy(model, grantgame::Action::NewField)},
    };
    const auto table = grantgame::compare_policies(model, policies, config.trials, config.horizon,
                                                   config.seed);

    std::filesystem::create_directories(config.output_dir);
    const std::filesystem::path dir = config.output_dir;
    grantgame::write_comparison_csv(dir / "comparison.csv", table, config.trials, config.horizon);
    grantgame::write_comparison_text(dir / "comparison.txt", table, config.trials,
                                     config.horizon);
    const grantgame::CareerTrajectory sample =
        grantgame::simulate_career(model, policy, std::nullopt, config.horizon, config.seed);
    grantgame::write_trajectory_csv(dir / "trajectory.csv", config.beta, sample);

    for (const auto& row : table) {
        std::printf("%-18s mean %.4f  se %.4f\n", row.name.c_str(), row.mean_discounted_income,
                    row.std_error);
    }
    std::cout << "outputs written to " << config.output_dir << "\n";
    return kExitOk;
}

int cmd_oracle_check(const CommonOptions& opts) {
    grantgame::RunConfig config = resolve_config(opts);
    if (opts.cmd->count("--grid") == 0) config.grid_points = 3;
    if (config.grid_points > 3) {
        throw std::invalid_argument(
            "oracle-check runs on at most 3 grid points per axis; pass --grid 3 or smaller");
    }
    const grantgame::ModelConfig model = grantgame::build_model(config);
    const grantgame::SolveResult solved =
        grantgame::solve(model, config.tolerance, config.max_iterations);
    const grantgame::EnumerationResult oracle = grantgame::enumerate_and_maximize(model);

    double max_diff = 0.0;
    std::size_t worst_i = 0, worst_j = 0;
    for (std::size_t i = 0; i < solved.value.rows(); ++i) {
        for (std::size_t j = 0; j < solved.value.cols(); ++j) {
            const double diff = std::abs(solved.value(i, j) - oracle.best_value(i, j));
            if (diff > max_diff) {
                max_diff = diff;
                worst_i = i;
                worst_j = j;
            }
        }
    }
    if (max_diff > 1e-8) {
        std::cerr << "ORACLE MISMATCH: max |solver - oracle| = "
                  << grantgame::format_double(max_diff) << "\n";
        for (std::size_t i = 0; i < solved.value.rows(); ++i) {
            for (std::size_t j = 0; j < solved.value.cols(); ++j) {
                std::fprintf(stderr, "  theta=%g epsilon=%g solver=%.12f oracle=%.12f\n",
                             model.grid().theta_values[i], model.grid().epsilon_values[j],
                             solved.value(i, j), oracle.best_value(i, j));
            }
        }
        std::fprintf(stderr, "  worst cell: theta=%g epsilon=%g\n",
                     model.grid().theta_values[worst_i], model.grid().epsilon_values[worst_j]);
        return kExitOracleMismatch;
    }
    std::cout << "oracle check passed: " << model.cell_count()
              << "-cell grid, max |solver - oracle| = " << grantgame::format_double(max_diff)
              << "\n";
    return kExitOk;
}

int cmd_trends(const std::string& ads_path, const std::string& scheme_path,
               const std::string& out_dir) {
    const std::vector<grantgame::CodedAd> ads = grantgame::read_coded_ads_csv(ads_path);
    const std::vector<std::string> scheme = scheme_path.empty()
                                                ? grantgame::default_category_scheme()
                                                : grantgame::read_scheme_file(scheme_path);
    const grantgame::TrendMatrix matrix = grantgame::trend_matrix(ads, scheme);
    for (const std::string& warning : matrix.warnings) {
        std::cerr << "warning: " << warning << "\n";
    }

    std::filesystem::create_directories(out_dir);
    const std::filesystem::path dir = out_dir;
    grantgame::write_trend_long_csv(dir / "trend_long.csv", matrix);
    grantgame::write_trend_series_csvs(dir / "series", matrix);
    grantgame::write_yearly_totals_csv(dir / "yearly_totals.csv", matrix);
    grantgame::write_issue_counts_csv(dir / "ads_per_issue.csv", grantgame::ads_per_issue(ads));
    std::cout << "trend outputs for " << matrix.years.size() << " years written to " << out_dir
              << "\n";
    return kExitOk;
}

int cmd_kappa(const std::string& coders_path, const std::string& out_path) {
    const grantgame::CoderTable table = grantgame::read_coder_table_csv(coders_path);
    const grantgame::KappaResult result = grantgame::cohens_kappa(table);
    const std::string report = grantgame::kappa_report_json(result);
    std::cout << report;
    if (!out_path.empty()) {
        std::ofstream out(out_path);
        if (!out) throw std::invalid_argument("cannot write file: " + out_path);
        out << report;
    }
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Career-switching income model solver and hiring-trend statistics"};
    app.require_subcommand(1);

    CommonOptions solve_opts;
    auto* solve_cmd = app.add_subcommand("solve", "Solve the model and write policy maps");
    add_model_flags(solve_cmd, solve_opts);
    solve_cmd->add_option("--out", solve_opts.out_dir, "Output directory");
    solve_cmd->add_option("--format", solve_opts.format, "Output format: csv or json")
        ->check(CLI::IsMember({"csv", "json"}));

    CommonOptions sim_opts;
    std::string policy_path;
    long trials_override = 0;
    long horizon_override = 0;
    auto* sim_cmd =
        app.add_subcommand("simulate", "Monte Carlo career simulation and policy comparison");
    add_model_flags(sim_cmd, sim_opts);
    sim_cmd->add_option("--out", sim_opts.out_dir, "Output directory");
    sim_cmd->add_option("--policy", policy_path, "Policy CSV (defaults to solving first)");
    sim_cmd->add_option("--trials", trials_override, "Number of simulated careers");
    sim_cmd->add_option("--horizon", horizon_override, "Periods per career");

    CommonOptions oracle_opts;
    auto* oracle_cmd = app.add_subcommand(
        "oracle-check", "Compare the solver against exhaustive policy enumeration");
    add_model_flags(oracle_cmd, oracle_opts);

    std::string ads_path, scheme_path, trends_out = "out";
    auto* trends_cmd =
        app.add_subcommand("trends", "Yearly topic-proportion matrix from coded job ads");
    trends_cmd->add_option("--ads", ads_path, "Coded ads CSV (year,issue,ad_id,topics)")
        ->required();
    trends_cmd->add_option("--scheme", scheme_path, "Category scheme file, one code per line");
    trends_cmd->add_option("--out", trends_out, "Output directory");

    std::string coders_path, kappa_out;
    auto* kappa_cmd = app.add_subcommand("kappa", "Cohen's kappa for a two-coder table");
    kappa_cmd->add_option("--coders", coders_path, "Coder table CSV (item_id,coder1,coder2)")
        ->required();
    kappa_cmd->add_option("--out", kappa_out, "Also write the JSON report to this file");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& err) {
        const int code = app.exit(err);
        return code == 0 ? kExitOk : kExitInputError;
    }

    try {
        if (solve_cmd->parsed()) return cmd_solve(solve_opts);
        if (sim_cmd->parsed()) {
            return cmd_simulate(sim_opts, policy_path, trials_override, horizon_override);
        }
        if (oracle_cmd->parsed()) return cmd_oracle_check(oracle_opts);
        if (trends_cmd->parsed()) return cmd_trends(ads_path, scheme_path, trends_out);
        if (kappa_cmd->parsed()) return cmd_kappa(coders_path, kappa_out);
    } catch (const grantgame::NonConvergenceError& err) {
        std::cerr << "error: " << err.what() << "\n";
        return kExitNonConvergence;
    } catch (const std::exception& err) {
        std::cerr << "error: " << err.what() << "\n";
        return kExitInputError;
    }
    return kExitInputError;
}
