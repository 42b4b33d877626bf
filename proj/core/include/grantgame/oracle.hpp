#pragma once

#include <cstddef>

#include "grantgame/matrix.hpp"
#include "grantgame/model.hpp"
#include "grantgame/solver.hpp"

namespace grantgame {

/// A fixed map from grid cells to actions, applied at every period.
using StationaryPolicy = Matrix<Action>;

/// Largest grid (in cells) accepted by evaluate_policy by default.
inline constexpr std::size_t kDefaultEvaluationCellCap = 16;

/// Hard cap for exhaustive enumeration: 3^9 = 19,683 policies.
inline constexpr std::size_t kEnumerationCellCap = 9;

/**
 * Exact value of one stationary policy: the unique solution of the linear
 * system v = r + beta * P v, where each cell's reward and transition row
 * follow its assigned action. Solved directly (dense LU), then checked to
 * satisfy the fixed-point equation within `tolerance`.
 *
 * Refuses grids larger than max_cells, which guards the 3^cells blowup in
 * enumerate_and_maximize.
 */
ValueFunction evaluate_policy(const ModelConfig& config, const StationaryPolicy& policy,
                              double tolerance = 1e-9,
                              std::size_t max_cells = kDefaultEvaluationCellCap);

struct EnumerationResult {
    ValueFunction best_value;      ///< cell-wise max over all stationary policies
    StationaryPolicy best_policy;  ///< a policy attaining that max at every cell
};

/**
 * Brute-force verification path: evaluates every stationary policy on a tiny
 * grid (at most kEnumerationCellCap cells) and returns the cell-wise maximal
 * value function together with a policy that attains it. A single policy
 * must attain the maximum at all cells simultaneously; if none does, a
 * std::logic_error is thrown.
 */
EnumerationResult enumerate_and_maximize(const ModelConfig& config);

}  // namespace grantgame
