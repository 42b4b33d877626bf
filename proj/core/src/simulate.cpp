#include "grantgame/simulate.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace grantgame {

namespace {

constexpr double kGridMatchTolerance = 1e-9;

std::size_t grid_index(const std::vector<double>& values, double x, const char* axis) {
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (std::abs(values[i] - x) <= kGridMatchTolerance) return i;
    }
    throw std::invalid_argument(std::string("initial ") + axis + " value " + std::to_string(x) +
                                " is not on the grid");
}

}  // namespace

std::mt19937_64 substream(std::uint64_t seed, std::uint64_t stream) {
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(stream),
                      static_cast<std::uint32_t>(stream >> 32)};
    return std::mt19937_64(seq);
}

double uniform01(std::mt19937_64& rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

DistributionSampler::DistributionSampler(const DiscreteDistribution& dist)
    : support_(dist.support()), cumulative_(dist.probs()) {
    for (std::size_t i = 1; i < cumulative_.size(); ++i) cumulative_[i] += cumulative_[i - 1];
}

std::size_t DistributionSampler::sample_index(std::mt19937_64& rng) const {
    const double u = uniform01(rng);
    const auto it = std::upper_bound(cumulative_.begin(), cumulative_.end(), u);
    const auto idx = static_cast<std::size_t>(it - cumulative_.begin());
    return std::min(idx, cumulative_.size() - 1);  // guard the rounding tail at u ~ 1
}

CareerTrajectory simulate_career(const ModelConfig& config, const StationaryPolicy& policy,
                                 std::optional<State> initial_state, long horizon,
                                 std::uint64_t seed) {
    std::mt19937_64 rng = substream(seed, 0);
    return simulate_career(config, policy, initial_state, horizon, rng);
}

CareerTrajectory simulate_career(const ModelConfig& config, const StationaryPolicy& policy,
                                 std::optional<State> initial_state, long horizon,
                                 std::mt19937_64& rng) {
    if (horizon < 1) throw std::invalid_argument("horizon must be at least 1");
    if (policy.rows() != config.theta_count() || policy.cols() != config.epsilon_count()) {
        throw std::invalid_argument("policy dimensions do not match the grid");
    }
    const auto& theta = config.grid().theta_values;
    const auto& epsilon = config.grid().epsilon_values;
    const DistributionSampler field_sampler(config.field_income());
    const DistributionSampler topic_sampler(config.topic_income());

    std::size_t i, j;
    if (initial_state) {
        i = grid_index(theta, initial_state->theta, "theta");
        j = grid_index(epsilon, initial_state->epsilon, "epsilon");
    } else {
        i = field_sampler.sample_index(rng);
        j = topic_sampler.sample_index(rng);
    }

    CareerTrajectory trajectory;
    trajectory.states.reserve(static_cast<std::size_t>(horizon));
    trajectory.actions.reserve(static_cast<std::size_t>(horizon));
    trajectory.incomes.reserve(static_cast<std::size_t>(horizon));

    const double beta = config.beta();
    double discount = 1.0;
    for (long t = 0; t < horizon; ++t) {
        const Action action = policy(i, j);
        switch (action) {
            case Action::Stay:
                break;
            case Action::NewTopic:
                j = topic_sampler.sample_index(rng);
                break;
            case Action::NewField:
                i = field_sampler.sample_index(rng);
                j = topic_sampler.sample_index(rng);
                break;
        }
        const double income = theta[i] + epsilon[j];
        trajectory.states.push_back(State{theta[i], epsilon[j]});
        trajectory.actions.push_back(action);
        trajectory.incomes.push_back(income);
        trajectory.discounted_total += discount * income;
        discount *= beta;
    }
    return trajectory;
}

std::vector<PolicyComparison> compare_policies(
    const ModelConfig& config,
    const std::vector<std::pair<std::string, StationaryPolicy>>& policies, long trials,
    long horizon, std::uint64_t seed) {
    if (trials < 2) throw std::invalid_argument("trials must be at least 2");

    std::vector<PolicyComparison> table;
    table.reserve(policies.size());
    for (const auto& [name, policy] : policies) {
        double sum = 0.0;
        double sum_sq = 0.0;
        for (long k = 0; k < trials; ++k) {
            // common random numbers: trial k shares its stream across policies
            std::mt19937_64 rng = substream(seed, static_cast<std::uint64_t>(k));
            const CareerTrajectory traj =
                simulate_career(config, policy, std::nullopt, horizon, rng);
            sum += traj.discounted_total;
            sum_sq += traj.discounted_total * traj.discounted_total;
        }
        const double n = static_cast<double>(trials);
        const double mean = sum / n;
        const double variance = std::max(0.0, (sum_sq - n * mean * mean) / (n - 1.0));
        table.push_back(PolicyComparison{name, mean, std::sqrt(variance / n)});
    }
    return table;
}

StationaryPolicy constant_policy(const ModelConfig& config, Action action) {
    return StationaryPolicy(config.theta_count(), config.epsilon_count(), action);
}

}  // namespace grantgame
