#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "grantgame/matrix.hpp"
#include "grantgame/model.hpp"
#include "grantgame/oracle.hpp"

namespace grantgame {

/// One grid state, a (theta, epsilon) pair.
struct State {
    double theta = 0.0;
    double epsilon = 0.0;

    bool operator==(const State&) const = default;
};

/// Deterministic substream for trial `stream` of master seed `seed`.
/// Trials seeded this way are independent of evaluation order.
std::mt19937_64 substream(std::uint64_t seed, std::uint64_t stream);

/// Uniform double in [0, 1) from the top 53 bits of the generator output.
double uniform01(std::mt19937_64& rng);

/// Inverse-CDF sampler over a finite pmf; the one sampling path in the library.
class DistributionSampler {
public:
    explicit DistributionSampler(const DiscreteDistribution& dist);

    std::size_t sample_index(std::mt19937_64& rng) const;
    double sample_value(std::mt19937_64& rng) const { return support_[sample_index(rng)]; }

private:
    std::vector<double> support_;
    std::vector<double> cumulative_;
};

/// A simulated career: per-period states, actions, incomes, and the
/// discounted total sum of beta^t * income[t].
struct CareerTrajectory {
    std::vector<State> states;
    std::vector<Action> actions;
    std::vector<double> incomes;
    double discounted_total = 0.0;
};

/**
 * Simulates one career of `horizon` periods under a stationary policy.
 *
 * Each period the action is read at the current state; Stay keeps the
 * state, NewTopic redraws epsilon from G, NewField redraws both components.
 * The freshly drawn state earns that period's income, so states[t] is the
 * state held during period t and incomes[t] = states[t].theta +
 * states[t].epsilon.
 *
 * initial_state must lie on the grid (within 1e-9 per coordinate); nullopt
 * draws theta_0 from F and epsilon_0 from G. Identical inputs and seed give
 * a bit-identical trajectory.
 */
CareerTrajectory simulate_career(const ModelConfig& config, const StationaryPolicy& policy,
                                 std::optional<State> initial_state, long horizon,
                                 std::uint64_t seed);

/// Same, drawing randomness from a caller-owned generator.
CareerTrajectory simulate_career(const ModelConfig& config, const StationaryPolicy& policy,
                                 std::optional<State> initial_state, long horizon,
                                 std::mt19937_64& rng);

/// Summary row of a Monte Carlo policy comparison.
struct PolicyComparison {
    std::string name;
    double mean_discounted_income = 0.0;
    double std_error = 0.0;
};

/**
 * Runs `trials` careers per named policy from drawn initial states, using
 * common random numbers: trial k of every policy uses substream(seed, k),
 * so identical policies produce identical means. Requires trials >= 2.
 */
std::vector<PolicyComparison> compare_policies(
    const ModelConfig& config,
    const std::vector<std::pair<std::string, StationaryPolicy>>& policies, long trials,
    long horizon, std::uint64_t seed);

/// Policy taking the same action at every cell, for baselines.
StationaryPolicy constant_policy(const ModelConfig& config, Action action);

}  // namespace grantgame
