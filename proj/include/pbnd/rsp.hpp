#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "pbnd/core.hpp"

namespace pbnd {

/// Restricted shortest path: cheapest s-t path whose total length stays
/// within a budget. With `directed == false` arcs may be used either way.
struct RspInstance {
  Graph graph;
  NodeId s = 0;
  NodeId t = 1;
  std::vector<double> cost;
  std::vector<double> length;
  double budget = 0.0;
  bool directed = true;
};

struct RspPath {
  std::vector<ArcId> arcs;  // in traversal order from s
  double cost = 0.0;
  double length = 0.0;
};

struct RspStats {
  long long dp_runs = 0;
  long long labels = 0;  // (cost level, node) labels filled
};

/// Exact pseudo-polynomial DP for integral costs with total cost <= cap.
/// The cost levels are explored upward, so the cap only bounds the search.
/// Throws Infeasible when no path within the budget costs at most cap.
RspPath rsp_exact(const RspInstance& inst, std::int64_t cap);

/// Same, with cap = sum of all arc costs.
RspPath rsp_exact(const RspInstance& inst);

/// (1+eps)-approximation: geometric search over cost scales, costs rounded
/// down to multiples of delta = eps*V/(n-1), each scale solved exactly.
/// Lengths are never rounded, so the budget holds exactly.
RspPath rsp_fptas(const RspInstance& inst, double eps, RspStats* stats = nullptr);

/// Shortest s-t path under `weight` (Dijkstra, strict improvements in
/// ascending arc order). Empty optional when t is unreachable.
std::optional<std::vector<ArcId>> shortest_path(const Graph& g, NodeId s, NodeId t,
                                                const std::vector<double>& weight,
                                                bool directed);

}  // namespace pbnd
