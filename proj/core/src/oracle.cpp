#include "grantgame/oracle.hpp"

#include <Eigen/Dense>

#include <cmath>
#include <stdexcept>
#include <string>

namespace grantgame {

ValueFunction evaluate_policy(const ModelConfig& config, const StationaryPolicy& policy,
                              double tolerance, std::size_t max_cells) {
    const std::size_t n_theta = config.theta_count();
    const std::size_t n_epsilon = config.epsilon_count();
    if (policy.rows() != n_theta || policy.cols() != n_epsilon) {
        throw std::invalid_argument("policy dimensions do not match the grid");
    }
    const std::size_t cells = n_theta * n_epsilon;
    if (cells > max_cells) {
        throw std::invalid_argument("refusing to evaluate a policy on " + std::to_string(cells) +
                                    " cells (cap " + std::to_string(max_cells) + ")");
    }
    if (!(tolerance > 0.0)) throw std::invalid_argument("tolerance must be positive");

    const auto& theta = config.grid().theta_values;
    const auto& epsilon = config.grid().epsilon_values;
    const auto& f = config.field_income().probs();
    const auto& g = config.topic_income().probs();
    const double beta = config.beta();
    const double mean_f = config.field_income().mean();
    const double mean_g = config.topic_income().mean();

    // (I - beta * P) v = r, one row per cell, cell index c = i * n_epsilon + j.
    Eigen::MatrixXd system = Eigen::MatrixXd::Identity(static_cast<Eigen::Index>(cells),
                                                       static_cast<Eigen::Index>(cells));
    Eigen::VectorXd reward(static_cast<Eigen::Index>(cells));
    for (std::size_t i = 0; i < n_theta; ++i) {
        for (std::size_t j = 0; j < n_epsilon; ++j) {
            const auto c = static_cast<Eigen::Index>(i * n_epsilon + j);
            switch (policy(i, j)) {
                case Action::Stay:
                    reward(c) = theta[i] + epsilon[j];
                    system(c, c) -= beta;
                    break;
                case Action::NewTopic:
                    reward(c) = theta[i] + mean_g;
                    for (std::size_t j2 = 0; j2 < n_epsilon; ++j2) {
                        system(c, static_cast<Eigen::Index>(i * n_epsilon + j2)) -= beta * g[j2];
                    }
                    break;
                case Action::NewField:
                    reward(c) = mean_f + mean_g;
                    for (std::size_t i2 = 0; i2 < n_theta; ++i2) {
                        for (std::size_t j2 = 0; j2 < n_epsilon; ++j2) {
                            system(c, static_cast<Eigen::Index>(i2 * n_epsilon + j2)) -=
                                beta * f[i2] * g[j2];
                        }
                    }
                    break;
            }
        }
    }

    const Eigen::VectorXd solution = system.partialPivLu().solve(reward);
    const double fixed_point_gap = (system * solution - reward).lpNorm<Eigen::Infinity>();
    if (!(fixed_point_gap <= tolerance)) {
        throw std::runtime_error("policy evaluation failed the fixed-point check, gap " +
                                 std::to_string(fixed_point_gap));
    }

    ValueFunction value(n_theta, n_epsilon);
    for (std::size_t i = 0; i < n_theta; ++i) {
        for (std::size_t j = 0; j < n_epsilon; ++j) {
            value(i, j) = solution(static_cast<Eigen::Index>(i * n_epsilon + j));
        }
    }
    return value;
}

EnumerationResult enumerate_and_maximize(const ModelConfig& config) {
    const std::size_t cells = config.cell_count();
    if (cells > kEnumerationCellCap) {
        throw std::invalid_argument("refusing to enumerate policies on " + std::to_string(cells) +
                                    " cells (cap " + std::to_string(kEnumerationCellCap) + ")");
    }
    const std::size_t n_theta = config.theta_count();
    const std::size_t n_epsilon = config.epsilon_count();

    std::size_t policy_count = 1;
    for (std::size_t c = 0; c < cells; ++c) policy_count *= 3;

    ValueFunction best_value(n_theta, n_epsilon, -1.0);
    StationaryPolicy best_policy(n_theta, n_epsilon, Action::Stay);
    ValueFunction best_policy_value;
    double best_sum = -1.0;

    StationaryPolicy policy(n_theta, n_epsilon, Action::Stay);
    for (std::size_t code = 0; code < policy_count; ++code) {
        std::size_t digits = code;
        for (std::size_t c = 0; c < cells; ++c) {
            policy.data()[c] = static_cast<Action>(digits % 3);
            digits /= 3;
        }
        const ValueFunction value = evaluate_policy(config, policy);
        double sum = 0.0;
        for (std::size_t c = 0; c < cells; ++c) {
            best_value.data()[c] = std::max(best_value.data()[c], value.data()[c]);
            sum += value.data()[c];
        }
        if (sum > best_sum) {
            best_sum = sum;
            best_policy = policy;
            best_policy_value = value;
        }
    }

    // By discounted-MDP theory one stationary policy is optimal at every cell
    // at once; fail loudly if the enumeration contradicts that.
    for (std::size_t c = 0; c < cells; ++c) {
        if (!(best_policy_value.data()[c] >= best_value.data()[c] - 1e-9)) {
            throw std::logic_error("no single stationary policy attains the cell-wise maximum");
        }
    }
    return EnumerationResult{std::move(best_value), std::move(best_policy)};
}

}  // namespace grantgame
