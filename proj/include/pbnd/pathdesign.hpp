#pragma once

// Network design without conductance bounds. Some optimal design is always
// supported on a single s-t path (arc directions are irrelevant), and the
// conductances of a fixed path have a closed form, so the problem reduces to
// path selection.

#include <vector>

#include "pbnd/core.hpp"

namespace pbnd {

struct PathSolution {
  std::vector<ArcId> path;  // s -> t, in traversal order
  std::vector<double> y;    // per path arc; kUnbounded where c_a == 0
  double objective = 0.0;
};

/// Cost-minimal conductances on a fixed path under sum 1/y^r = B over the
/// arcs with positive variable cost. Works for any path; bounds are ignored.
PathSolution optimal_y_for_path(const Instance& inst, std::vector<ArcId> path);

/// Expands a path solution into a full per-arc Solution.
Solution to_solution(const Instance& inst, const PathSolution& ps);

/// c == 0: shortest path under the fixed costs.
PathSolution solve_fixed_cost_only(const Instance& inst);

/// gamma == 0: shortest path under lengths c_a^(r/(r+1)).
PathSolution solve_variable_cost_only(const Instance& inst);

struct LambdaBounds {
  double L = 0.0;
  double U = 0.0;
};

/// Bracket of the optimal multiplier of the path constraint. Throws
/// AllVariableCostsZero when c == 0.
LambdaBounds lambda_bounds(const Instance& inst);

struct LambdaGrid {
  double L = 0.0;
  double U = 0.0;
  double epsilon = 0.0;
  std::size_t covered = 0;     // |I|: points L*(1+eps/3)^(i(r+1)) <= U
  std::vector<double> points;  // the |I| covering points plus one above U
};

LambdaGrid make_lambda_grid(const Instance& inst, double eps);

/// ceil(3*log2((n-1)^((r+1)/r) * Cratio)/eps) + 1, the admissible |I|.
double lambda_grid_bound(const Instance& inst, double eps);

struct PathFptasOptions {
  unsigned threads = 1;
};

struct PathFptasStats {
  std::size_t grid_points = 0;
  std::size_t grid_covered = 0;
  std::size_t rsp_calls = 0;
  double grid_bound = 0.0;
};

/// (1+eps)-approximation for arbitrary costs, eps in (0, 1].
PathSolution solve_path_fptas(const Instance& inst, double eps,
                              const PathFptasOptions& opts = {},
                              PathFptasStats* stats = nullptr);

}  // namespace pbnd
