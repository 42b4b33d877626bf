#pragma once

#include <array>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "grantgame/matrix.hpp"
#include "grantgame/model.hpp"

namespace grantgame {

using ValueFunction = Matrix<double>;

/// Absolute tolerance for treating two branch values as tied in the argmax.
inline constexpr double kTieTolerance = 1e-12;

/// Result of one application of the Bellman operator T.
struct BellmanBackup {
    ValueFunction value;                          ///< T(v), cell-wise max of the branches
    std::array<ValueFunction, 3> action_values;   ///< branch values, indexed by Action
};

/**
 * One Bellman backup. Each cell takes the best of three branches:
 *
 *   stay       theta + epsilon + beta * v(theta, epsilon)
 *   new topic  theta + E[epsilon'] + beta * E_G[v(theta, epsilon')]
 *   new field  E[theta'] + E[epsilon'] + beta * E_FxG[v(theta', epsilon')]
 *
 * Expectations are exact sums over the pmfs of F and G. The new-field value
 * is a single scalar broadcast to every cell and the new-topic value depends
 * only on the theta row, so a full sweep costs O(|theta| * |epsilon|) after
 * the same-order precomputation of the G-weighted row averages.
 *
 * Throws std::invalid_argument when v does not match the grid dimensions.
 */
BellmanBackup bellman_backup(const ModelConfig& config, const ValueFunction& v);

/// Converged value function, optimal policy, and solve diagnostics.
struct SolveResult {
    ValueFunction value;
    Matrix<Action> policy;
    std::array<ValueFunction, 3> action_values;  ///< branch values of the final backup
    long iterations = 0;
    double sup_norm_residual = 0.0;

    const ValueFunction& action_value(Action a) const {
        return action_values[static_cast<std::size_t>(a)];
    }
};

/// Thrown when value iteration fails to converge; carries the partial result.
class NonConvergenceError : public std::runtime_error {
public:
    NonConvergenceError(const std::string& message, SolveResult partial);

    long iterations() const noexcept { return partial_->iterations; }
    double residual() const noexcept { return partial_->sup_norm_residual; }
    const SolveResult& partial_result() const noexcept { return *partial_; }

private:
    std::shared_ptr<const SolveResult> partial_;
};

/**
 * Value-function iteration from v = 0 until the sup-norm residual drops
 * below tolerance * (1 - beta) / (2 * beta), which bounds the distance to
 * the fixed point by `tolerance` via the contraction inequality. For
 * beta == 0 a single backup is exact and the loop stops once the residual
 * reaches zero (the second sweep).
 *
 * Ties in the policy argmax are broken toward the least disruptive action,
 * Stay over NewTopic over NewField, using kTieTolerance as the comparison
 * slack.
 *
 * Throws NonConvergenceError after max_iterations sweeps without meeting
 * the criterion; the partial result is attached to the error.
 */
SolveResult solve(const ModelConfig& config, double tolerance = 1e-9,
                  long max_iterations = 100000);

/// Smallest epsilon at which Stay is chosen within one theta row, if any.
struct RowStayThreshold {
    double theta = 0.0;
    std::optional<double> epsilon_bar;
};

/**
 * Reservation-value summary of a solved policy. theta_bar is the smallest
 * theta grid value whose row contains no NewField cell (absent when every
 * row has one); stay_thresholds lists, for each theta >= theta_bar, the
 * smallest epsilon at which Stay is the policy (absent when the row has no
 * Stay cell).
 */
struct PolicyThresholds {
    std::optional<double> theta_bar;
    std::vector<RowStayThreshold> stay_thresholds;
};

PolicyThresholds policy_thresholds(const ModelConfig& config, const SolveResult& result);

}  // namespace grantgame
