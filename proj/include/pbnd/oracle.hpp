#pragma once

// Exhaustive reference solvers for small instances. Each refuses inputs
// above its size guard with TooLarge instead of running for hours.

#include <cstddef>
#include <vector>

#include "pbnd/core.hpp"
#include "pbnd/pathdesign.hpp"

namespace pbnd {

inline constexpr std::size_t kMaxPathOracleNodes = 12;
inline constexpr std::size_t kMaxFixedOracleArcs = 14;
inline constexpr std::size_t kMaxContinuousOracleArcs = 10;

/// Calls fn(path) for every simple s-t path of the underlying undirected
/// graph, in lexicographic order of the arc sequences.
template <class Fn>
void for_each_simple_path(const Graph& g, NodeId s, NodeId t, Fn&& fn);

/// Best path design over all simple s-t paths (ybar == inf). Ties go to the
/// lexicographically smallest path.
PathSolution brute_paths_unbounded(const Instance& inst);

/// Cheapest feasible option assignment by enumeration. The resistance is
/// computed by SP composition when the graph is series-parallel and by the
/// energy solver otherwise.
FixedSolution brute_subsets_fixed(const FixedInstance& inst, double tol = kDefaultTol);

/// Continuous optimum on an SP graph with finite bounds, by enumerating the
/// supports and solving the convex problem of each.
Solution brute_subsets_continuous_sp(const Instance& inst, double tol = kDefaultTol);

/// Continuous optimum restricted to one support (arcs with support[a] != 0).
/// Cost is +inf when the support cannot meet the budget or is dominated by
/// a smaller one (some arc carries no flow).
struct SupportOptimum {
  std::vector<double> y;
  double cost = kInf;
  long long rounds = 0;
};
SupportOptimum optimize_support(const Instance& inst, const std::vector<char>& support,
                                double tol = kDefaultTol);

/// Derivative of the SP resistance with respect to y_a at y (all y_a > 0 on
/// the support): -r |f_a|^(r+1) / y_a^(r+1), f the unit flow.
std::vector<double> resistance_gradient_sp(const Instance& inst, const std::vector<double>& y);

// Implementation of the path enumerator.

namespace detail {
template <class Fn>
void path_dfs(const Graph& g, const std::vector<std::vector<ArcId>>& adj, NodeId u, NodeId t,
              std::vector<char>& on_path, std::vector<ArcId>& path, Fn& fn) {
  if (u == t) {
    fn(static_cast<const std::vector<ArcId>&>(path));
    return;
  }
  for (ArcId a : adj[u]) {
    const NodeId v = g.other_end(a, u);
    if (v == u || on_path[v]) continue;
    on_path[v] = 1;
    path.push_back(a);
    path_dfs(g, adj, v, t, on_path, path, fn);
    path.pop_back();
    on_path[v] = 0;
  }
}
}  // namespace detail

template <class Fn>
void for_each_simple_path(const Graph& g, NodeId s, NodeId t, Fn&& fn) {
  const auto adj = incidence(g);
  std::vector<char> on_path(g.n, 0);
  std::vector<ArcId> path;
  on_path[s] = 1;
  detail::path_dfs(g, adj, s, t, on_path, path, fn);
}

}  // namespace pbnd
