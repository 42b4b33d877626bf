#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>
#include <stdexcept>

#include "grantgame/simulate.hpp"
#include "grantgame/solver.hpp"

using namespace grantgame;

namespace {

ModelConfig uniform_config(std::size_t n, double beta) {
    return ModelConfig(beta, uniform_on_grid(n), uniform_on_grid(n));
}

ModelConfig point_mass_config(double theta0, double epsilon0, double beta) {
    return ModelConfig(beta, DiscreteDistribution({theta0}, {1.0}),
                       DiscreteDistribution({epsilon0}, {1.0}));
}

}  // namespace

TEST_CASE("all-Stay career from (3,2) approaches the geometric series") {
    const auto config = point_mass_config(3.0, 2.0, 0.9);
    const auto traj = simulate_career(config, constant_policy(config, Action::Stay),
                                      State{3.0, 2.0}, 200, 42u);
    REQUIRE(traj.incomes.size() == 200);
    for (double income : traj.incomes) CHECK(income == 5.0);
    CHECK(std::abs(traj.discounted_total - 50.0) < 1e-7);
}

TEST_CASE("point-mass model gives a constant trajectory under any policy") {
    const auto config = point_mass_config(4.0, 1.0, 0.5);
    for (Action action : kAllActions) {
        const auto traj = simulate_career(config, constant_policy(config, action),
                                          std::nullopt, 50, 7u);
        for (const State& s : traj.states) {
            CHECK(s.theta == 4.0);
            CHECK(s.epsilon == 1.0);
        }
    }
}

TEST_CASE("trajectory invariants under the optimal policy") {
    const auto config = uniform_config(9, 0.9);
    const auto policy = solve(config).policy;
    const auto traj = simulate_career(config, policy, std::nullopt, 300, 1234u);
    REQUIRE(traj.states.size() == 300);
    REQUIRE(traj.actions.size() == 300);
    REQUIRE(traj.incomes.size() == 300);

    double expected_total = 0.0;
    for (std::size_t t = 0; t < 300; ++t) {
        CHECK(traj.incomes[t] == traj.states[t].theta + traj.states[t].epsilon);
        expected_total += std::pow(0.9, static_cast<double>(t)) * traj.incomes[t];
        if (t > 0 && traj.actions[t] == Action::Stay) {
            CHECK(traj.states[t] == traj.states[t - 1]);
        }
        if (t > 0 && traj.actions[t] == Action::NewTopic) {
            CHECK(traj.states[t].theta == traj.states[t - 1].theta);
        }
    }
    CHECK(std::abs(traj.discounted_total - expected_total) < 1e-10);
}

TEST_CASE("identical seeds give bit-identical trajectories") {
    const auto config = uniform_config(7, 0.8);
    const auto policy = solve(config).policy;
    const auto a = simulate_career(config, policy, std::nullopt, 150, 99u);
    const auto b = simulate_career(config, policy, std::nullopt, 150, 99u);
    CHECK(a.states == b.states);
    CHECK(a.actions == b.actions);
    CHECK(a.incomes == b.incomes);
    CHECK(a.discounted_total == b.discounted_total);

    const auto c = simulate_career(config, policy, std::nullopt, 150, 100u);
    CHECK(a.states != c.states);  // different substream
}

TEST_CASE("simulate_career rejects bad inputs") {
    const auto config = uniform_config(3, 0.5);
    const auto policy = constant_policy(config, Action::Stay);
    CHECK_THROWS_AS(simulate_career(config, policy, State{1.23, 0.0}, 10, 1u),
                    std::invalid_argument);
    CHECK_THROWS_AS(simulate_career(config, policy, State{0.0, 0.0}, 0, 1u),
                    std::invalid_argument);
    CHECK_THROWS_AS(
        simulate_career(config, StationaryPolicy(2, 3, Action::Stay), std::nullopt, 10, 1u),
        std::invalid_argument);
}

TEST_CASE("horizon truncation error obeys the geometric tail bound") {
    const auto config = point_mass_config(3.0, 2.0, 0.9);
    const auto policy = constant_policy(config, Action::Stay);
    for (long horizon : {10L, 25L, 50L}) {
        const auto traj = simulate_career(config, policy, std::nullopt, horizon, 5u);
        const double tail_bound =
            std::pow(0.9, static_cast<double>(horizon)) * (3.0 + 2.0) / (1.0 - 0.9);
        CHECK(std::abs(50.0 - traj.discounted_total) <= tail_bound + 1e-9);
    }
}

TEST_CASE("compare_policies: a policy compared with itself is identical") {
    const auto config = uniform_config(5, 0.9);
    const auto policy = solve(config).policy;
    const auto table = compare_policies(
        config, {{"first", policy}, {"second", policy}}, 64, 100, 2718u);
    REQUIRE(table.size() == 2);
    CHECK(table[0].mean_discounted_income == table[1].mean_discounted_income);
    CHECK(table[0].std_error == table[1].std_error);
}

TEST_CASE("compare_policies requires at least two trials") {
    const auto config = uniform_config(3, 0.5);
    const auto policy = constant_policy(config, Action::Stay);
    CHECK_THROWS_AS(compare_policies(config, {{"p", policy}}, 1, 10, 1u),
                    std::invalid_argument);
}

TEST_CASE("optimal policy weakly dominates the baselines") {
    const auto config = uniform_config(11, 0.95);
    const auto optimal = solve(config).policy;
    const auto table = compare_policies(
        config,
        {{"optimal", optimal},
         {"always_stay", constant_policy(config, Action::Stay)},
         {"always_new_field", constant_policy(config, Action::NewField)}},
        400, 300, 31u);
    REQUIRE(table.size() == 3);
    CHECK(table[0].mean_discounted_income >=
          table[1].mean_discounted_income - 3.0 * (table[0].std_error + table[1].std_error));
    CHECK(table[0].mean_discounted_income >=
          table[2].mean_discounted_income - 3.0 * (table[0].std_error + table[2].std_error));
}

TEST_CASE("myopic researcher at the top state: staying beats switching fields") {
    const auto config = uniform_config(6, 0.0);
    const auto stay = constant_policy(config, Action::Stay);
    const auto field = constant_policy(config, Action::NewField);
    double stay_sum = 0.0, field_sum = 0.0;
    for (std::uint64_t trial = 0; trial < 100; ++trial) {
        std::mt19937_64 rng_stay = substream(808u, trial);
        std::mt19937_64 rng_field = substream(808u, trial);
        const auto s = simulate_career(config, stay, State{5.0, 5.0}, 5, rng_stay);
        const auto f = simulate_career(config, field, State{5.0, 5.0}, 5, rng_field);
        CHECK(s.discounted_total >= f.discounted_total);  // 10 is the ceiling
        stay_sum += s.discounted_total;
        field_sum += f.discounted_total;
    }
    CHECK(stay_sum > field_sum);
}

TEST_CASE("simulated mean matches the expected value function") {
    const auto config = uniform_config(5, 0.9);
    const auto result = solve(config);
    double expected_value = 0.0;
    const auto& f = config.field_income().probs();
    const auto& g = config.topic_income().probs();
    for (std::size_t i = 0; i < 5; ++i) {
        for (std::size_t j = 0; j < 5; ++j) {
            expected_value += f[i] * g[j] * result.value(i, j);
        }
    }
    const auto table =
        compare_policies(config, {{"optimal", result.policy}}, 4000, 250, 6021u);
    // 4 standard errors keeps the fixed-seed check far from the boundary
    CHECK(std::abs(table[0].mean_discounted_income - expected_value) <=
          4.0 * table[0].std_error);
}

TEST_CASE("sampler draws match the pmf (chi-square, 100k draws)") {
    // 0.999 chi-square quantiles: df=10 -> 29.59, df=1 -> 10.83
    struct Case {
        DiscreteDistribution dist;
        double critical;
    };
    const Case cases[] = {
        {uniform_on_grid(11), 29.59},
        {beta_binomial_on_grid(11, 10.0, 10.0), 29.59},
        {inflate_at_zero(beta_binomial_on_grid(11, 10.0, 10.0), 0.6), 29.59},
        {uniform_on_grid(2), 10.83},
    };
    int case_index = 0;
    for (const auto& [dist, critical] : cases) {
        const DistributionSampler sampler(dist);
        std::mt19937_64 rng = substream(424242u, static_cast<std::uint64_t>(case_index++));
        const long draws = 100000;
        std::vector<long> counts(dist.size(), 0);
        for (long k = 0; k < draws; ++k) ++counts[sampler.sample_index(rng)];
        double statistic = 0.0;
        for (std::size_t i = 0; i < dist.size(); ++i) {
            const double expected = static_cast<double>(draws) * dist.probs()[i];
            const double diff = static_cast<double>(counts[i]) - expected;
            statistic += diff * diff / expected;
        }
        CHECK(statistic < critical);
    }
}
