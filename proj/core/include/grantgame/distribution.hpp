#pragma once

#include <cstddef>
#include <vector>

namespace grantgame {

/**
 * Finite discrete distribution of a grant-income component.
 *
 * Support values are strictly increasing and nonnegative; probabilities are
 * nonnegative and sum to one (within 1e-12). Instances are immutable after
 * construction and safe to share across threads.
 */
class DiscreteDistribution {
public:
    /// Throws std::invalid_argument when the invariants above do not hold.
    DiscreteDistribution(std::vector<double> support, std::vector<double> probs);

    const std::vector<double>& support() const noexcept { return support_; }
    const std::vector<double>& probs() const noexcept { return probs_; }
    std::size_t size() const noexcept { return support_.size(); }

    /// Expected value, sum of support[i] * probs[i].
    double mean() const noexcept;

    /// Probability attached to an exact support value, 0 if absent.
    double prob_at(double value) const noexcept;

    bool operator==(const DiscreteDistribution&) const = default;

private:
    std::vector<double> support_;
    std::vector<double> probs_;
};

/// Tolerance used when checking that probabilities sum to one.
inline constexpr double kProbabilitySumTolerance = 1e-12;

/**
 * Uniform distribution on `grid_points` evenly spaced values from lo to hi
 * inclusive. A single point sits at lo when grid_points == 1.
 */
DiscreteDistribution uniform_on_grid(std::size_t grid_points, double lo = 0.0, double hi = 5.0);

/**
 * Beta-binomial distribution with shapes a, b, mapped onto `grid_points`
 * evenly spaced values from lo to hi. The number of trials is
 * grid_points - 1, so the outcomes k = 0..n land exactly on the grid.
 * The pmf is evaluated in log space, which keeps n up to ~10,000 safe.
 */
DiscreteDistribution beta_binomial_on_grid(std::size_t grid_points, double a, double b,
                                           double lo = 0.0, double hi = 5.0);

/**
 * Two-component mixture: weight `mass` on a point mass at income 0 and
 * weight 1 - mass on `base`. The support is unchanged except that 0 is
 * inserted when absent.
 */
DiscreteDistribution inflate_at_zero(const DiscreteDistribution& base, double mass);

}  // namespace grantgame
