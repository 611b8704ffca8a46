#include "pbnd/generators.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <queue>

namespace pbnd {

double uniform(std::mt19937_64& rng, double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(rng);
}

std::size_t uniform_index(std::mt19937_64& rng, std::size_t lo, std::size_t hi) {
  return std::uniform_int_distribution<std::size_t>(lo, hi)(rng);
}

PartitionGadget gen_partition(const std::vector<long long>& a, double r) {
  if (a.empty()) throw ValidationError("partition needs at least one number");
  for (long long v : a)
    if (v <= 0) throw ValidationError("partition numbers must be positive");
  const long long sum = std::accumulate(a.begin(), a.end(), 0LL);
  if (sum % 2 != 0) throw OddSum("the numbers sum to an odd value");

  PartitionGadget g;
  g.a = a;
  g.T = static_cast<double>(sum) / 2.0;
  const std::size_t n = a.size();
  const double big = 2.0 * std::pow(g.T, (r + 1.0) / r);
  const double root = std::pow(g.T, 1.0 / r);

  Instance& inst = g.inst;
  inst.graph.n = n + 1;
  inst.s = 0;
  inst.t = n;
  inst.r = r;
  inst.B = 1.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double ai = static_cast<double>(a[i]);
    inst.graph.arcs.push_back({i, i + 1});  // top
    inst.c.push_back(std::pow(ai, (r + 1.0) / r));
    inst.gamma.push_back(big - root * ai);
    inst.graph.arcs.push_back({i, i + 1});  // bottom
    inst.c.push_back(0.0);
    inst.gamma.push_back(big);
  }
  inst.ybar.assign(inst.m(), kInf);
  g.threshold = static_cast<double>(n) * big;
  return g;
}

double partition_objective(const PartitionGadget& g, const std::vector<bool>& chosen) {
  const double r = g.inst.r;
  double x = 0.0;
  for (std::size_t i = 0; i < g.a.size(); ++i)
    if (chosen[i]) x += static_cast<double>(g.a[i]);
  return std::pow(x, (r + 1.0) / r) + g.threshold - std::pow(g.T, 1.0 / r) * x;
}

std::vector<ArcId> partition_path(const PartitionGadget& g, const std::vector<bool>& chosen) {
  std::vector<ArcId> path;
  for (std::size_t i = 0; i < g.a.size(); ++i) path.push_back(chosen[i] ? 2 * i : 2 * i + 1);
  return path;
}

FixedInstance gen_min_knapsack(const std::vector<double>& mu, const std::vector<double>& p,
                               double D, double r) {
  if (mu.size() != p.size()) throw DimensionMismatch("mu and p must have equal length");
  if (!(D >= 0.0)) throw ValidationError("demand must be nonnegative");
  FixedInstance fi;
  fi.graph.n = 2;
  fi.s = 0;
  fi.t = 1;
  fi.r = r;
  fi.B = D == 0.0 ? kInf : std::pow(D, -r);
  for (std::size_t i = 0; i < mu.size(); ++i) {
    fi.graph.arcs.push_back({0, 1});
    fi.options.push_back({{mu[i], p[i]}});
  }
  return fi;
}

Instance knapsack_instance(const std::vector<double>& mu, const std::vector<double>& p,
                           double D, double r) {
  if (mu.size() != p.size()) throw DimensionMismatch("mu and p must have equal length");
  if (!(D > 0.0)) throw ValidationError("demand must be positive");
  Instance inst;
  inst.graph.n = 2;
  inst.s = 0;
  inst.t = 1;
  inst.r = r;
  inst.B = std::pow(D, -r);
  for (std::size_t i = 0; i < mu.size(); ++i) inst.graph.arcs.push_back({0, 1});
  inst.c.assign(mu.size(), 0.0);
  inst.gamma = p;
  inst.ybar = mu;
  return inst;
}

SteinerGadget gen_steiner_gadget(const Graph& g, const std::vector<NodeId>& terminals,
                                 const std::vector<double>& edge_costs, double r) {
  if (terminals.size() < 2) throw ValidationError("need at least two terminals");
  if (edge_costs.size() != g.m()) throw DimensionMismatch("one cost per edge required");
  for (NodeId v : terminals)
    if (v >= g.n) throw ValidationError("terminal out of range");

  SteinerGadget sg;
  sg.base_arcs = g.m();
  sg.terminals = terminals;
  sg.mparam = static_cast<double>(terminals.size() - 1);
  const double n = static_cast<double>(g.n);
  const double m = sg.mparam;

  Instance& inst = sg.inst;
  inst.graph = g;
  const NodeId sink = g.n;
  inst.graph.n = g.n + 1;
  inst.s = terminals[0];
  inst.t = sink;
  inst.r = r;
  inst.gamma = edge_costs;
  inst.ybar.assign(g.m(), n * m);
  for (std::size_t i = 1; i < terminals.size(); ++i) {
    inst.graph.arcs.push_back({terminals[i], sink});
    inst.gamma.push_back(0.0);
    inst.ybar.push_back(1.0 / m);
  }
  inst.c.assign(inst.m(), 0.0);
  inst.B = 1.0 + (n - 1.0) / (std::pow(n, r) * std::pow(m, r));
  return sg;
}

Solution steiner_to_solution(const SteinerGadget& gadget, const std::vector<ArcId>& tree) {
  const Instance& inst = gadget.inst;
  Solution sol;
  sol.x.assign(inst.m(), 0);
  sol.y.assign(inst.m(), 0.0);
  auto install = [&](ArcId a) {
    sol.x[a] = 1;
    sol.y[a] = inst.ybar[a];
  };
  for (ArcId a : tree) install(a);
  for (ArcId a = gadget.base_arcs; a < inst.m(); ++a) install(a);
  sol.cost = solution_cost(inst, sol.x, sol.y);
  return sol;
}

std::vector<ArcId> spanning_steiner_tree(const Graph& g, const std::vector<NodeId>& terminals) {
  const auto adj = incidence(g);
  constexpr ArcId kNone = static_cast<ArcId>(-1);
  std::vector<ArcId> parent(g.n, kNone);
  std::vector<char> seen(g.n, 0);
  std::queue<NodeId> q;
  q.push(terminals[0]);
  seen[terminals[0]] = 1;
  while (!q.empty()) {
    const NodeId u = q.front();
    q.pop();
    for (ArcId a : adj[u]) {
      const NodeId v = g.other_end(a, u);
      if (seen[v]) continue;
      seen[v] = 1;
      parent[v] = a;
      q.push(v);
    }
  }
  std::vector<char> keep(g.n, 0), in_tree(g.m(), 0);
  for (NodeId v : terminals) {
    if (!seen[v]) throw Disconnected("terminals are not connected");
    for (NodeId u = v; u != terminals[0] && !keep[u]; u = g.other_end(parent[u], u)) {
      keep[u] = 1;
      in_tree[parent[u]] = 1;
    }
  }
  std::vector<ArcId> tree;
  for (ArcId a = 0; a < g.m(); ++a)
    if (in_tree[a]) tree.push_back(a);
  return tree;
}

namespace {

void build_sp(std::mt19937_64& rng, Graph& g, std::size_t m, NodeId u, NodeId v) {
  if (m == 1) {
    if (uniform_index(rng, 0, 1) == 0) {
      g.arcs.push_back({u, v});
    } else {
      g.arcs.push_back({v, u});
    }
    return;
  }
  const std::size_t left = uniform_index(rng, 1, m - 1);
  if (uniform_index(rng, 0, 1) == 0) {
    const NodeId w = g.n++;
    build_sp(rng, g, left, u, w);
    build_sp(rng, g, m - left, w, v);
  } else {
    build_sp(rng, g, left, u, v);
    build_sp(rng, g, m - left, u, v);
  }
}

}  // namespace

SpGraph random_sp_graph(std::mt19937_64& rng, std::size_t m) {
  if (m == 0) throw ValidationError("need at least one arc");
  SpGraph sp;
  sp.graph.n = 2;
  sp.s = 0;
  sp.t = 1;
  build_sp(rng, sp.graph, m, 0, 1);
  return sp;
}

Graph random_connected_graph(std::mt19937_64& rng, std::size_t n, std::size_t m) {
  if (n < 2 || m + 1 < n) throw ValidationError("need n >= 2 and m >= n-1");
  Graph g;
  g.n = n;
  for (NodeId v = 1; v < n; ++v) {
    const NodeId u = uniform_index(rng, 0, v - 1);
    if (uniform_index(rng, 0, 1) == 0) {
      g.arcs.push_back({u, v});
    } else {
      g.arcs.push_back({v, u});
    }
  }
  while (g.m() < m) {
    const NodeId u = uniform_index(rng, 0, n - 1);
    const NodeId v = uniform_index(rng, 0, n - 1);
    if (u != v) g.arcs.push_back({u, v});
  }
  return g;
}

Graph path_graph(std::size_t m) {
  Graph g;
  g.n = m + 1;
  for (NodeId i = 0; i < m; ++i) g.arcs.push_back({i, i + 1});
  return g;
}

Graph parallel_graph(std::size_t m) {
  Graph g;
  g.n = 2;
  g.arcs.assign(m, {0, 1});
  return g;
}

}  // namespace pbnd
