// Acceptance suite: each criterion runs at its pinned tolerance and prints
// one PASS/FAIL line. The binary exits nonzero if any criterion fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <limits>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "grantgame/config.hpp"
#include "grantgame/oracle.hpp"
#include "grantgame/simulate.hpp"
#include "grantgame/solver.hpp"
#include "grantgame/trends.hpp"

using namespace grantgame;

namespace {

int g_failures = 0;

void report(int index, const std::string& name, bool pass, const std::string& detail) {
    std::printf("[%d/8] %s %s (%s)\n", index, pass ? "PASS" : "FAIL", name.c_str(),
                detail.c_str());
    std::fflush(stdout);
    if (!pass) ++g_failures;
}

double seconds_since(const std::chrono::steady_clock::time_point& start) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

double action_fraction(const Matrix<Action>& policy, Action action) {
    std::size_t count = 0;
    for (Action a : policy.data()) {
        if (a == action) ++count;
    }
    return static_cast<double>(count) / static_cast<double>(policy.size());
}

bool stay_region_is_corner_shaped(const Matrix<Action>& policy) {
    // within each theta row, once Stay appears it persists to the top epsilon
    for (std::size_t i = 0; i < policy.rows(); ++i) {
        bool seen_stay = false;
        for (std::size_t j = 0; j < policy.cols(); ++j) {
            if (seen_stay && policy(i, j) != Action::Stay) return false;
            if (policy(i, j) == Action::Stay) seen_stay = true;
        }
    }
    return true;
}

struct PresetRun {
    SolveResult result;
    ModelConfig model;
    double solve_seconds;
};

PresetRun run_preset(const std::string& name) {
    const RunConfig config = preset_config(name);
    ModelConfig model = build_model(config);
    const auto start = std::chrono::steady_clock::now();
    SolveResult result = solve(model, config.tolerance, config.max_iterations);
    const double elapsed = seconds_since(start);
    return PresetRun{std::move(result), std::move(model), elapsed};
}

ModelConfig random_config(std::mt19937& rng, std::size_t max_points, double beta) {
    std::uniform_int_distribution<std::size_t> size_dist(1, max_points);
    std::uniform_real_distribution<double> value_dist(0.0, 5.0);
    std::uniform_real_distribution<double> weight_dist(0.05, 1.0);
    auto make = [&]() {
        const std::size_t n = size_dist(rng);
        std::vector<double> support;
        while (support.size() < n) {
            const double x = value_dist(rng);
            bool distinct = true;
            for (double s : support) {
                if (std::abs(s - x) < 1e-6) distinct = false;
            }
            if (distinct) support.push_back(x);
        }
        std::sort(support.begin(), support.end());
        std::vector<double> probs(n);
        double total = 0.0;
        for (double& w : probs) total += (w = weight_dist(rng));
        for (double& w : probs) w /= total;
        return DiscreteDistribution(std::move(support), std::move(probs));
    };
    return ModelConfig(beta, make(), make());
}

// --- criteria -------------------------------------------------------------

double criterion_1_fig4a(double* fig4a_new_field_fraction) {
    const PresetRun run = run_preset("fig4a");
    const double fraction = action_fraction(run.result.policy, Action::NewField);
    *fig4a_new_field_fraction = fraction;
    const bool corner_stay =
        run.result.policy(run.result.policy.rows() - 1, run.result.policy.cols() - 1) ==
        Action::Stay;
    const bool pass = fraction > 0.5 && corner_stay &&
                      stay_region_is_corner_shaped(run.result.policy) &&
                      run.solve_seconds < 5.0;
    std::ostringstream detail;
    detail << "new-field fraction " << fraction << " > 0.5, stay at (5,5): "
           << (corner_stay ? "yes" : "no") << ", solve " << run.solve_seconds << "s < 5s";
    report(1, "fig4a policy map dominated by field switching", pass, detail.str());
    return fraction;
}

double criterion_2_fig4b(double fig4a_fraction) {
    const PresetRun run = run_preset("fig4b");
    const double fraction = action_fraction(run.result.policy, Action::NewField);
    const double stay_topic = action_fraction(run.result.policy, Action::Stay) +
                              action_fraction(run.result.policy, Action::NewTopic);
    const double fig4a_stay_topic = 1.0 - fig4a_fraction;
    const bool pass = fraction < fig4a_fraction && stay_topic > fig4a_stay_topic;
    std::ostringstream detail;
    detail << "new-field fraction " << fraction << " < fig4a " << fig4a_fraction
           << ", stay+topic " << stay_topic << " > " << fig4a_stay_topic;
    report(2, "fig4b shrinks the field-switching region", pass, detail.str());
    return fraction;
}

void criterion_3_fig5(double fig4b_fraction) {
    const PresetRun run = run_preset("fig5");
    const double fraction = action_fraction(run.result.policy, Action::NewField);
    const bool pass = fraction < fig4b_fraction;
    std::ostringstream detail;
    detail << "new-field fraction " << fraction << " < fig4b " << fig4b_fraction;
    report(3, "pessimism (beta 0.5) shrinks it further", pass, detail.str());
}

void criterion_4_oracle() {
    const ModelConfig config(0.5, uniform_on_grid(3), uniform_on_grid(3));
    const auto start = std::chrono::steady_clock::now();
    const SolveResult solved = solve(config, 1e-9, 100000);
    const EnumerationResult oracle = enumerate_and_maximize(config);
    const double elapsed = seconds_since(start);
    double max_diff = 0.0;
    for (std::size_t k = 0; k < solved.value.size(); ++k) {
        max_diff = std::max(max_diff,
                            std::abs(solved.value.data()[k] - oracle.best_value.data()[k]));
    }
    const bool pass = max_diff < 1e-8 && elapsed < 10.0;
    std::ostringstream detail;
    detail << "19683 policies enumerated, max |solver - oracle| " << max_diff << " < 1e-8, "
           << elapsed << "s < 10s";
    report(4, "solver matches exhaustive policy enumeration", pass, detail.str());
}

void criterion_5_properties() {
    const double tolerance = 1e-9;
    const double betas[] = {0.3, 0.5, 0.9, 0.95};
    std::mt19937 rng(160493);
    bool pass = true;
    std::string first_failure;
    for (int rep = 0; rep < 100 && pass; ++rep) {
        const ModelConfig config = random_config(rng, 21, betas[rep % 4]);
        const double beta = config.beta();
        const double threshold = tolerance * (1.0 - beta) / (2.0 * beta);

        ValueFunction v(config.theta_count(), config.epsilon_count(), 0.0);
        double prev_residual = -1.0;
        for (int sweep = 0; sweep < 100000; ++sweep) {
            const BellmanBackup backup = bellman_backup(config, v);
            double residual = 0.0;
            for (std::size_t k = 0; k < v.size(); ++k) {
                residual =
                    std::max(residual, std::abs(backup.value.data()[k] - v.data()[k]));
            }
            if (prev_residual >= 0.0 && residual > beta * prev_residual + 1e-10) {
                pass = false;
                first_failure = "contraction bound violated (config " + std::to_string(rep) + ")";
                break;
            }
            prev_residual = residual;
            v = backup.value;
            if (residual < threshold) break;
        }
        if (!pass) break;

        const SolveResult result = solve(config, tolerance, 100000);
        const auto& theta = config.grid().theta_values;
        const auto& epsilon = config.grid().epsilon_values;
        for (std::size_t i = 0; i < config.theta_count() && pass; ++i) {
            for (std::size_t j = 0; j < config.epsilon_count() && pass; ++j) {
                if (j + 1 < config.epsilon_count() &&
                    result.value(i, j + 1) < result.value(i, j) - 1e-10) {
                    pass = false;
                    first_failure = "V not monotone in epsilon (config " + std::to_string(rep) + ")";
                }
                if (i + 1 < config.theta_count() &&
                    result.value(i + 1, j) < result.value(i, j) - 1e-10) {
                    pass = false;
                    first_failure = "V not monotone in theta (config " + std::to_string(rep) + ")";
                }
                if (result.policy(i, j) == Action::Stay) {
                    const double closed_form = (theta[i] + epsilon[j]) / (1.0 - beta);
                    if (std::abs(result.value(i, j) - closed_form) >= 10.0 * tolerance) {
                        pass = false;
                        first_failure =
                            "stay cell misses the closed form (config " + std::to_string(rep) + ")";
                    }
                }
            }
        }
    }
    report(5, "contraction, monotonicity, and stay closed form over 100 random configs", pass,
           pass ? "all bounds held at tolerance 1e-9" : first_failure);
}

void criterion_6_simulation() {
    const RunConfig config = preset_config("fig4a");
    const ModelConfig model = build_model(config);
    const auto start = std::chrono::steady_clock::now();
    const SolveResult solved = solve(model, config.tolerance, config.max_iterations);

    double expected_value = 0.0;
    const auto& f = model.field_income().probs();
    const auto& g = model.topic_income().probs();
    for (std::size_t i = 0; i < model.theta_count(); ++i) {
        for (std::size_t j = 0; j < model.epsilon_count(); ++j) {
            expected_value += f[i] * g[j] * solved.value(i, j);
        }
    }

    const auto table = compare_policies(
        model,
        {{"optimal", solved.policy},
         {"always_stay", constant_policy(model, Action::Stay)},
         {"always_new_field", constant_policy(model, Action::NewField)}},
        10000, 400, config.seed);
    const double elapsed = seconds_since(start);

    const double gap = std::abs(table[0].mean_discounted_income - expected_value);
    const bool consistent = gap <= 3.0 * table[0].std_error;
    const bool dominates_stay =
        table[0].mean_discounted_income >=
        table[1].mean_discounted_income - 3.0 * (table[0].std_error + table[1].std_error);
    const bool dominates_field =
        table[0].mean_discounted_income >=
        table[2].mean_discounted_income - 3.0 * (table[0].std_error + table[2].std_error);
    const bool pass = consistent && dominates_stay && dominates_field && elapsed < 30.0;
    std::ostringstream detail;
    detail << "mean " << table[0].mean_discounted_income << " vs E[V] " << expected_value
           << " (gap " << gap << " <= 3se " << 3.0 * table[0].std_error << "), baselines "
           << table[1].mean_discounted_income << " / " << table[2].mean_discounted_income << ", "
           << elapsed << "s < 30s";
    report(6, "10k simulated careers agree with the value function", pass, detail.str());
}

void criterion_7_kappa() {
    bool pass = true;
    std::string detail = "perfect = 1 exactly, chance = 0, synthetic 40-item table = 0.8";

    CoderTable perfect;
    perfect.items = {{"1", "A", "A"}, {"2", "B", "B"}, {"3", "A", "A"}, {"4", "B", "B"}};
    if (cohens_kappa(perfect).kappa != 1.0) {
        pass = false;
        detail = "perfect-agreement table did not give kappa == 1";
    }

    CoderTable chance;
    chance.items = {{"1", "A", "A"}, {"2", "A", "B"}, {"3", "B", "A"}, {"4", "B", "B"}};
    if (std::abs(cohens_kappa(chance).kappa) > 1e-12) {
        pass = false;
        detail = "chance-agreement table did not give kappa == 0";
    }

    CoderTable synthetic;
    int id = 0;
    for (int k = 0; k < 18; ++k) synthetic.items.push_back({std::to_string(id++), "A", "A"});
    for (int k = 0; k < 18; ++k) synthetic.items.push_back({std::to_string(id++), "B", "B"});
    synthetic.items.push_back({std::to_string(id++), "A", "B"});
    synthetic.items.push_back({std::to_string(id++), "A", "B"});
    synthetic.items.push_back({std::to_string(id++), "B", "A"});
    synthetic.items.push_back({std::to_string(id++), "B", "A"});
    const KappaResult result = cohens_kappa(synthetic);
    if (std::abs(result.kappa - 0.8) > 1e-12 || std::abs(result.p_o - 0.9) > 1e-15 ||
        std::abs(result.p_e - 0.5) > 1e-15) {
        pass = false;
        detail = "40-item table did not give kappa = 0.8";
    }

    report(7, "kappa unit suite", pass, detail);
    std::printf("      note: the original coding sheets behind the published agreement scores\n"
                "      (0.83 raw, 0.96 reconciled) are not distributed with this project, so\n"
                "      those values are documentation anchors, not test targets.\n");
}

void criterion_8_trends() {
    // three-year corpus with hand-computed proportions
    const std::vector<CodedAd> corpus = {
        {2000, "2000-1", "ad1", {"tcs", "security"}},
        {2000, "2000-1", "ad2", {"security"}},
        {2001, "2001-1", "ad3", {"ai_ml"}},
        {2001, "2001-1", "ad4", {"ai_ml", "databases", "tcs"}},
        {2001, "2001-5", "ad5", {"databases"}},
        {2002, "2002-1", "ad6", {"other"}},
    };
    const auto& scheme = default_category_scheme();
    const TrendMatrix m = trend_matrix(corpus, scheme);

    auto row = [&](const std::string& code) {
        return static_cast<std::size_t>(
            std::find(scheme.begin(), scheme.end(), code) - scheme.begin());
    };
    bool pass = m.years == std::vector<int>{2000, 2001, 2002} &&
                m.yearly_totals == std::vector<long>{3, 5, 1};
    const struct {
        const char* code;
        std::size_t year_col;
        double expected;
    } checks[] = {
        {"security", 0, 2.0 / 3.0}, {"tcs", 0, 1.0 / 3.0},  {"ai_ml", 1, 2.0 / 5.0},
        {"databases", 1, 2.0 / 5.0}, {"tcs", 1, 1.0 / 5.0}, {"other", 2, 1.0},
        {"security", 1, 0.0},        {"open", 0, 0.0},
    };
    for (const auto& check : checks) {
        if (std::abs(m.proportions(row(check.code), check.year_col) - check.expected) > 1e-12) {
            pass = false;
        }
    }
    for (std::size_t j = 0; j < m.years.size(); ++j) {
        double column_sum = 0.0;
        for (std::size_t i = 0; i < scheme.size(); ++i) column_sum += m.proportions(i, j);
        if (std::abs(column_sum - 1.0) > 1e-9) pass = false;
    }

    std::vector<CodedAd> reversed(corpus.rbegin(), corpus.rend());
    const TrendMatrix m2 = trend_matrix(reversed, scheme);
    if (!(m2.proportions == m.proportions && m2.years == m.years &&
          m2.yearly_totals == m.yearly_totals)) {
        pass = false;
    }

    report(8, "trend matrix matches hand counts, columns sum to 1, order-invariant", pass,
           pass ? "all 8 pinned proportions matched to 1e-12"
                : "a pinned proportion or invariant failed");
}

}  // namespace

int main() {
    std::printf("acceptance suite\n");
    double fig4a_fraction = 0.0;
    criterion_1_fig4a(&fig4a_fraction);
    const double fig4b_fraction = criterion_2_fig4b(fig4a_fraction);
    criterion_3_fig5(fig4b_fraction);
    criterion_4_oracle();
    criterion_5_properties();
    criterion_6_simulation();
    criterion_7_kappa();
    criterion_8_trends();
    std::printf("%d/8 criteria passed\n", 8 - g_failures);
    return g_failures == 0 ? 0 : 1;
}
