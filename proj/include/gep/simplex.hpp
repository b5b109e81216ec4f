// Bounded-variable revised simplex.
//
// Each row i gets a logical variable s_i with bounds [row_lower_i,
// row_upper_i] and the solver works on A x - s = 0. Variables keep their own
// bounds, so ranged rows and boxed columns cost nothing extra. Phase 1
// minimizes the sum of bound violations of the basic variables; the phase is
// re-decided every iteration, so feasibility lost to round-off is recovered
// automatically.

#pragma once

#include <cstddef>

#include "gep/lp_problem.hpp"
#include "gep/types.hpp"

namespace gep {

struct SolveOptions {
    double feas_tol = 1e-7;
    double opt_tol = 1e-7;
    std::size_t max_iterations = 1'000'000;
    bool scaling = true;
    std::size_t refactor_interval = 100;
    /// Consecutive degenerate pivots before switching to Bland's rule.
    std::size_t degeneracy_streak = 50;
};

/// Solves the problem. `values` holds the column values; `duals` the row
/// prices, with the convention that a binding lower row bound has a
/// non-negative price (d objective / d row bound).
///
/// Throws std::invalid_argument when the problem is structurally invalid.
Solution solve(const LPProblem& problem, const SolveOptions& opts = {});

}  // namespace gep
