#include "grantgame/solver.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace grantgame {

namespace {

Action select_action(double stay, double topic, double field) {
    const double best = std::max({stay, topic, field});
    if (stay >= best - kTieTolerance) return Action::Stay;
    if (topic >= best - kTieTolerance) return Action::NewTopic;
    return Action::NewField;
}

}  // namespace

BellmanBackup bellman_backup(const ModelConfig& config, const ValueFunction& v) {
    const auto& theta = config.grid().theta_values;
    const auto& epsilon = config.grid().epsilon_values;
    const std::size_t n_theta = theta.size();
    const std::size_t n_epsilon = epsilon.size();
    if (v.rows() != n_theta || v.cols() != n_epsilon) {
        throw std::invalid_argument("value function dimensions do not match the grid");
    }

    const auto& f = config.field_income().probs();
    const auto& g = config.topic_income().probs();
    const double beta = config.beta();
    const double mean_f = config.field_income().mean();
    const double mean_g = config.topic_income().mean();

    // G-weighted row averages of v, then their F-weighted average.
    std::vector<double> row_avg(n_theta, 0.0);
    for (std::size_t i = 0; i < n_theta; ++i) {
        double acc = 0.0;
        for (std::size_t j = 0; j < n_epsilon; ++j) acc += v(i, j) * g[j];
        row_avg[i] = acc;
    }
    double full_avg = 0.0;
    for (std::size_t i = 0; i < n_theta; ++i) full_avg += f[i] * row_avg[i];

    BellmanBackup out{
        ValueFunction(n_theta, n_epsilon),
        {ValueFunction(n_theta, n_epsilon), ValueFunction(n_theta, n_epsilon),
         ValueFunction(n_theta, n_epsilon)},
    };
    auto& stay_values = out.action_values[static_cast<std::size_t>(Action::Stay)];
    auto& topic_values = out.action_values[static_cast<std::size_t>(Action::NewTopic)];
    auto& field_values = out.action_values[static_cast<std::size_t>(Action::NewField)];

    const double field_value = mean_f + mean_g + beta * full_avg;
    for (std::size_t i = 0; i < n_theta; ++i) {
        const double topic_value = theta[i] + mean_g + beta * row_avg[i];
        for (std::size_t j = 0; j < n_epsilon; ++j) {
            const double stay_value = theta[i] + epsilon[j] + beta * v(i, j);
            stay_values(i, j) = stay_value;
            topic_values(i, j) = topic_value;
            field_values(i, j) = field_value;
            out.value(i, j) = std::max({stay_value, topic_value, field_value});
        }
    }
    return out;
}

NonConvergenceError::NonConvergenceError(const std::string& message, SolveResult partial)
    : std::runtime_error(message),
      partial_(std::make_shared<const SolveResult>(std::move(partial))) {}

SolveResult solve(const ModelConfig& config, double tolerance, long max_iterations) {
    if (!(tolerance > 0.0)) throw std::invalid_argument("tolerance must be positive");
    if (max_iterations < 1) throw std::invalid_argument("max_iterations must be at least 1");

    const double beta = config.beta();
    // Residual threshold that bounds ||v - V*|| by tolerance (see header).
    const double threshold =
        beta > 0.0 ? tolerance * (1.0 - beta) / (2.0 * beta) : 0.0;

    ValueFunction v(config.theta_count(), config.epsilon_count(), 0.0);
    BellmanBackup backup;
    double residual = std::numeric_limits<double>::infinity();
    long iterations = 0;
    bool converged = false;
    while (iterations < max_iterations) {
        backup = bellman_backup(config, v);
        ++iterations;
        residual = 0.0;
        for (std::size_t k = 0; k < v.size(); ++k) {
            residual = std::max(residual, std::abs(backup.value.data()[k] - v.data()[k]));
        }
        v = backup.value;
        if (beta > 0.0 ? residual < threshold : residual == 0.0) {
            converged = true;
            break;
        }
    }

    SolveResult result;
    result.value = std::move(backup.value);
    result.action_values = std::move(backup.action_values);
    result.iterations = iterations;
    result.sup_norm_residual = residual;
    result.policy = Matrix<Action>(config.theta_count(), config.epsilon_count(), Action::Stay);
    const auto& stay_values = result.action_value(Action::Stay);
    const auto& topic_values = result.action_value(Action::NewTopic);
    const auto& field_values = result.action_value(Action::NewField);
    for (std::size_t i = 0; i < result.policy.rows(); ++i) {
        for (std::size_t j = 0; j < result.policy.cols(); ++j) {
            result.policy(i, j) =
                select_action(stay_values(i, j), topic_values(i, j), field_values(i, j));
        }
    }

    if (!converged) {
        throw NonConvergenceError(
            "value iteration did not converge within " + std::to_string(max_iterations) +
                " iterations (last residual " + std::to_string(residual) + ")",
            std::move(result));
    }
    return result;
}

PolicyThresholds policy_thresholds(const ModelConfig& config, const SolveResult& result) {
    const auto& theta = config.grid().theta_values;
    const auto& epsilon = config.grid().epsilon_values;
    const auto& policy = result.policy;

    PolicyThresholds out;
    std::optional<std::size_t> theta_bar_row;
    for (std::size_t i = 0; i < policy.rows(); ++i) {
        bool has_new_field = false;
        for (std::size_t j = 0; j < policy.cols(); ++j) {
            if (policy(i, j) == Action::NewField) {
                has_new_field = true;
                break;
            }
        }
        if (!has_new_field) {
            theta_bar_row = i;
            break;
        }
    }
    if (!theta_bar_row) return out;

    out.theta_bar = theta[*theta_bar_row];
    for (std::size_t i = *theta_bar_row; i < policy.rows(); ++i) {
        RowStayThreshold row{theta[i], std::nullopt};
        for (std::size_t j = 0; j < policy.cols(); ++j) {
            if (policy(i, j) == Action::Stay) {
                row.epsilon_bar = epsilon[j];
                break;
            }
        }
        out.stay_thresholds.push_back(row);
    }
    return out;
}

}  // namespace grantgame
