#pragma once

#include <array>
#include <string>
#include <vector>

#include "grantgame/distribution.hpp"

namespace grantgame {

/// The three moves a researcher can make each period.
enum class Action {
    Stay = 0,      ///< change nothing
    NewTopic = 1,  ///< redraw the topic component epsilon from G
    NewField = 2,  ///< redraw both components, theta from F and epsilon from G
};

inline constexpr std::array<Action, 3> kAllActions = {Action::Stay, Action::NewTopic,
                                                      Action::NewField};

/// Wire names: "stay", "new_topic", "new_field".
std::string to_string(Action action);
Action action_from_string(const std::string& name);

/// Rectangular state grid: rows are field incomes theta, columns topic incomes epsilon.
struct GridSpec {
    std::vector<double> theta_values;
    std::vector<double> epsilon_values;

    bool operator==(const GridSpec&) const = default;
};

/**
 * One solvable problem instance: the state grid, the future discount beta,
 * and the income distributions F (theta axis) and G (epsilon axis).
 *
 * The grid axes are exactly the supports of F and G, so the expectation
 * terms in the Bellman equation are exact finite sums. Construction fails
 * with std::invalid_argument when beta is outside [0, 1) or when an
 * explicitly supplied grid disagrees with the distribution supports.
 */
class ModelConfig {
public:
    ModelConfig(double beta, DiscreteDistribution field_income, DiscreteDistribution topic_income);
    ModelConfig(GridSpec grid, double beta, DiscreteDistribution field_income,
                DiscreteDistribution topic_income);

    double beta() const noexcept { return beta_; }
    const GridSpec& grid() const noexcept { return grid_; }
    const DiscreteDistribution& field_income() const noexcept { return field_income_; }
    const DiscreteDistribution& topic_income() const noexcept { return topic_income_; }

    std::size_t theta_count() const noexcept { return grid_.theta_values.size(); }
    std::size_t epsilon_count() const noexcept { return grid_.epsilon_values.size(); }
    std::size_t cell_count() const noexcept { return theta_count() * epsilon_count(); }

private:
    void validate() const;

    GridSpec grid_;
    double beta_;
    DiscreteDistribution field_income_;
    DiscreteDistribution topic_income_;
};

}  // namespace grantgame
