#include "pbnd/rsp.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <queue>
#include <stdexcept>
#include <utility>

namespace pbnd {

namespace {

constexpr ArcId kNoArc = static_cast<ArcId>(-1);

// Visit the arcs usable from `u` as (arc, other end).
template <class Fn>
void for_each_move(const Graph& g, const std::vector<std::vector<ArcId>>& adj,
                   bool directed, NodeId u, Fn&& fn) {
  for (ArcId a : adj[u]) {
    const Arc& arc = g.arcs[a];
    if (arc.tail == arc.head) continue;
    if (directed && arc.tail != u) continue;
    fn(a, g.other_end(a, u));
  }
}

void check_inputs(const RspInstance& inst) {
  const std::size_t m = inst.graph.m();
  if (inst.cost.size() != m || inst.length.size() != m)
    throw DimensionMismatch("rsp: cost/length vectors must have one entry per arc");
  if (inst.s >= inst.graph.n || inst.t >= inst.graph.n || inst.s == inst.t)
    throw ValidationError("rsp: invalid terminals");
  for (std::size_t a = 0; a < m; ++a) {
    if (!(inst.cost[a] >= 0.0) || !(inst.length[a] >= 0.0))
      throw ValidationError("rsp: costs and lengths must be nonnegative");
  }
  if (!(inst.budget >= 0.0)) throw ValidationError("rsp: budget must be nonnegative");
}

RspPath price(const RspInstance& inst, std::vector<ArcId> arcs) {
  RspPath p;
  for (ArcId a : arcs) {
    p.cost += inst.cost[a];
    p.length += inst.length[a];
  }
  p.arcs = std::move(arcs);
  return p;
}

// Label (level k, node v): minimal length of an s-v path whose integral cost
// is at most k. Levels are filled upward until t fits in the budget.
struct Pred {
  ArcId arc = kNoArc;  // kNoArc: inherited from level k-1 (or the origin)
  std::int64_t level = 0;
  NodeId from = 0;
};

std::optional<std::vector<ArcId>> level_dp(const RspInstance& inst,
                                           const std::vector<std::int64_t>& icost,
                                           std::int64_t cap, RspStats* stats) {
  const Graph& g = inst.graph;
  const std::size_t n = g.n;
  const auto adj = incidence(g);
  std::vector<double> len;   // len[k*n + v]
  std::vector<Pred> pred;
  if (stats) ++stats->dp_runs;

  using Item = std::pair<double, NodeId>;
  for (std::int64_t k = 0; k <= cap; ++k) {
    const std::size_t base = static_cast<std::size_t>(k) * n;
    len.resize(base + n, kInf);
    pred.resize(base + n);
    if (k == 0) {
      len[base + inst.s] = 0.0;
    } else {
      for (NodeId v = 0; v < n; ++v) len[base + v] = len[base - n + v];
    }
    // Arcs with positive integral cost come from lower levels.
    for (NodeId u = 0; u < n; ++u) {
      for_each_move(g, adj, inst.directed, u, [&](ArcId a, NodeId v) {
        const std::int64_t c = icost[a];
        if (c <= 0 || c > k) return;
        const double cand = len[static_cast<std::size_t>(k - c) * n + u] + inst.length[a];
        if (cand < len[base + v]) {
          len[base + v] = cand;
          pred[base + v] = {a, k - c, u};
        }
      });
    }
    // Zero-cost arcs stay on this level: Dijkstra seeded with all labels.
    std::priority_queue<Item, std::vector<Item>, std::greater<>> heap;
    for (NodeId v = 0; v < n; ++v)
      if (len[base + v] < kInf) heap.push({len[base + v], v});
    while (!heap.empty()) {
      auto [d, u] = heap.top();
      heap.pop();
      if (d > len[base + u]) continue;
      for_each_move(g, adj, inst.directed, u, [&](ArcId a, NodeId v) {
        if (icost[a] != 0) return;
        const double cand = d + inst.length[a];
        if (cand < len[base + v]) {
          len[base + v] = cand;
          pred[base + v] = {a, k, u};
          heap.push({cand, v});
        }
      });
    }
    if (stats) stats->labels += static_cast<long long>(n);

    if (len[base + inst.t] <= inst.budget) {
      std::vector<ArcId> arcs;
      std::vector<char> visited(n, 0);
      std::int64_t level = k;
      NodeId v = inst.t;
      visited[v] = 1;
      while (!(v == inst.s && level == 0)) {
        const Pred& p = pred[static_cast<std::size_t>(level) * n + v];
        if (p.arc == kNoArc) {
          --level;
          continue;
        }
        arcs.push_back(p.arc);
        level = p.level;
        v = p.from;
        if (visited[v]) throw std::logic_error("rsp: reconstructed walk is not simple");
        visited[v] = 1;
      }
      std::reverse(arcs.begin(), arcs.end());
      return arcs;
    }
  }
  return std::nullopt;
}

std::optional<double> min_length(const RspInstance& inst) {
  auto p = shortest_path(inst.graph, inst.s, inst.t, inst.length, inst.directed);
  if (!p) return std::nullopt;
  return price(inst, *p).length;
}

}  // namespace

std::optional<std::vector<ArcId>> shortest_path(const Graph& g, NodeId s, NodeId t,
                                                const std::vector<double>& weight,
                                                bool directed) {
  const auto adj = incidence(g);
  std::vector<double> dist(g.n, kInf);
  std::vector<ArcId> via(g.n, kNoArc);
  using Item = std::pair<double, NodeId>;
  std::priority_queue<Item, std::vector<Item>, std::greater<>> heap;
  dist[s] = 0.0;
  heap.push({0.0, s});
  while (!heap.empty()) {
    auto [d, u] = heap.top();
    heap.pop();
    if (d > dist[u]) continue;
    for_each_move(g, adj, directed, u, [&](ArcId a, NodeId v) {
      if (std::isinf(weight[a])) return;
      const double cand = d + weight[a];
      if (cand < dist[v]) {
        dist[v] = cand;
        via[v] = a;
        heap.push({cand, v});
      }
    });
  }
  if (std::isinf(dist[t])) return std::nullopt;
  std::vector<ArcId> path;
  for (NodeId v = t; v != s; v = g.other_end(via[v], v)) path.push_back(via[v]);
  std::reverse(path.begin(), path.end());
  return path;
}

RspPath rsp_exact(const RspInstance& inst, std::int64_t cap) {
  check_inputs(inst);
  std::vector<std::int64_t> icost(inst.graph.m());
  for (std::size_t a = 0; a < icost.size(); ++a) {
    if (std::floor(inst.cost[a]) != inst.cost[a]) throw ValidationError("rsp_exact needs integral costs");
    icost[a] = static_cast<std::int64_t>(inst.cost[a]);
  }
  auto shortest = min_length(inst);
  if (!shortest || *shortest > inst.budget) throw Infeasible("no s-t path fits the length budget");
  auto arcs = level_dp(inst, icost, cap, nullptr);
  if (!arcs) throw Infeasible("no path within the budget costs at most the cap");
  return price(inst, std::move(*arcs));
}

RspPath rsp_exact(const RspInstance& inst) {
  double total = 0.0;
  for (double c : inst.cost) total += c;
  return rsp_exact(inst, static_cast<std::int64_t>(total));
}

RspPath rsp_fptas(const RspInstance& inst, double eps, RspStats* stats) {
  check_inputs(inst);
  if (!(eps > 0.0 && eps <= 1.0)) throw ValidationError("rsp_fptas: epsilon must lie in (0, 1]");
  const Graph& g = inst.graph;

  auto by_length = shortest_path(g, inst.s, inst.t, inst.length, inst.directed);
  if (!by_length) throw Infeasible("t is unreachable from s");
  const RspPath fallback = price(inst, *by_length);
  if (fallback.length > inst.budget) throw Infeasible("no s-t path fits the length budget");

  // A feasible path of zero cost is optimal.
  std::vector<double> zero_only(g.m());
  for (std::size_t a = 0; a < g.m(); ++a) zero_only[a] = inst.cost[a] == 0.0 ? inst.length[a] : kInf;
  if (auto z = shortest_path(g, inst.s, inst.t, zero_only, inst.directed)) {
    RspPath p = price(inst, *z);
    if (p.length <= inst.budget) return p;
  }

  // The cheapest path overall is optimal if it fits.
  const RspPath cheapest = price(inst, *shortest_path(g, inst.s, inst.t, inst.cost, inst.directed));
  if (cheapest.length <= inst.budget) return cheapest;

  // OPT > 0 from here on, so it is at least the smallest positive cost.
  double lower = kInf;
  for (double c : inst.cost)
    if (c > 0.0) lower = std::min(lower, c);
  lower = std::max(lower, cheapest.cost);
  const double upper = fallback.cost;

  const double steps = static_cast<double>(g.n - 1);  // arcs on a simple path
  const auto cap = static_cast<std::int64_t>(std::ceil(2.0 * steps / eps));
  std::vector<std::int64_t> icost(g.m());
  // With V <= OPT < 2V the optimum has scaled cost below cap, so the first
  // scale that succeeds satisfies V <= OPT and the rounding loss is eps*V.
  for (double V = lower; V <= 2.0 * upper; V *= 2.0) {
    const double delta = eps * V / steps;
    for (std::size_t a = 0; a < g.m(); ++a) {
      const double q = std::floor(inst.cost[a] / delta);
      icost[a] = q > static_cast<double>(cap) ? cap + 1 : static_cast<std::int64_t>(q);
    }
    if (auto arcs = level_dp(inst, icost, cap, stats)) return price(inst, std::move(*arcs));
  }
  throw std::logic_error("rsp_fptas: geometric search exhausted");
}

}  // namespace pbnd
