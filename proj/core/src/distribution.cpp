#include "grantgame/distribution.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace grantgame {

namespace {

std::vector<double> linspace(std::size_t n, double lo, double hi) {
    std::vector<double> values(n);
    if (n == 1) {
        values[0] = lo;
        return values;
    }
    const double step = (hi - lo) / static_cast<double>(n - 1);
    for (std::size_t i = 0; i < n; ++i) values[i] = lo + step * static_cast<double>(i);
    values.back() = hi;  // avoid drift at the top endpoint
    return values;
}

void check_range(std::size_t grid_points, double lo, double hi) {
    if (grid_points == 0) throw std::invalid_argument("grid_points must be at least 1");
    if (lo < 0.0 || !(lo < hi)) {
        throw std::invalid_argument("income range requires 0 <= lo < hi");
    }
}

double log_beta(double x, double y) { return std::lgamma(x) + std::lgamma(y) - std::lgamma(x + y); }

}  // namespace

DiscreteDistribution::DiscreteDistribution(std::vector<double> support, std::vector<double> probs)
    : support_(std::move(support)), probs_(std::move(probs)) {
    if (support_.empty()) throw std::invalid_argument("support must contain at least one value");
    if (support_.size() != probs_.size()) {
        throw std::invalid_argument("support and probs must have the same length");
    }
    double sum = 0.0;
    for (std::size_t i = 0; i < support_.size(); ++i) {
        if (!(support_[i] >= 0.0)) {
            throw std::invalid_argument("support values must be nonnegative, got " +
                                        std::to_string(support_[i]));
        }
        if (i > 0 && !(support_[i] > support_[i - 1])) {
            throw std::invalid_argument("support values must be strictly increasing");
        }
        if (!(probs_[i] >= 0.0)) {
            throw std::invalid_argument("probabilities must be nonnegative, got " +
                                        std::to_string(probs_[i]));
        }
        sum += probs_[i];
    }
    if (std::abs(sum - 1.0) > kProbabilitySumTolerance) {
        throw std::invalid_argument("probabilities must sum to 1, got " + std::to_string(sum));
    }
}

double DiscreteDistribution::mean() const noexcept {
    double m = 0.0;
    for (std::size_t i = 0; i < support_.size(); ++i) m += support_[i] * probs_[i];
    return m;
}

double DiscreteDistribution::prob_at(double value) const noexcept {
    for (std::size_t i = 0; i < support_.size(); ++i) {
        if (support_[i] == value) return probs_[i];
    }
    return 0.0;
}

DiscreteDistribution uniform_on_grid(std::size_t grid_points, double lo, double hi) {
    check_range(grid_points, lo, hi);
    std::vector<double> probs(grid_points, 1.0 / static_cast<double>(grid_points));
    return DiscreteDistribution(linspace(grid_points, lo, hi), std::move(probs));
}

DiscreteDistribution beta_binomial_on_grid(std::size_t grid_points, double a, double b,
                                           double lo, double hi) {
    check_range(grid_points, lo, hi);
    if (!(a > 0.0) || !(b > 0.0)) {
        throw std::invalid_argument("beta-binomial shapes a and b must be positive");
    }
    const std::size_t n = grid_points - 1;  // number of trials
    const double nd = static_cast<double>(n);
    const double log_norm = log_beta(a, b);
    std::vector<double> probs(grid_points);
    double sum = 0.0;
    for (std::size_t k = 0; k <= n; ++k) {
        const double kd = static_cast<double>(k);
        // log C(n,k) + log B(k+a, n-k+b) - log B(a,b)
        const double log_choose =
            std::lgamma(nd + 1.0) - std::lgamma(kd + 1.0) - std::lgamma(nd - kd + 1.0);
        probs[k] = std::exp(log_choose + log_beta(kd + a, nd - kd + b) - log_norm);
        sum += probs[k];
    }
    for (double& p : probs) p /= sum;
    return DiscreteDistribution(linspace(grid_points, lo, hi), std::move(probs));
}

DiscreteDistribution inflate_at_zero(const DiscreteDistribution& base, double mass) {
    if (!(mass >= 0.0) || !(mass <= 1.0)) {
        throw std::invalid_argument("zero-inflation mass must lie in [0, 1]");
    }
    std::vector<double> support = base.support();
    std::vector<double> probs = base.probs();
    for (double& p : probs) p *= 1.0 - mass;
    if (support.front() == 0.0) {
        probs.front() += mass;
    } else if (mass > 0.0) {
        support.insert(support.begin(), 0.0);
        probs.insert(probs.begin(), mass);
    }
    return DiscreteDistribution(std::move(support), std::move(probs));
}

}  // namespace grantgame
