#include "support/support.hpp"

#include <algorithm>
#include <cmath>

#include "pbnd/generators.hpp"
#include "pbnd/oracle.hpp"
#include "pbnd/sptree.hpp"

namespace pbnd::testing {

bool rel_close(double a, double b, double tol) {
  if (a == b) return true;
  return std::abs(a - b) <= tol * std::max({1.0, std::abs(a), std::abs(b)});
}

double pick(std::mt19937_64& rng, std::initializer_list<double> values) {
  const std::size_t i = uniform_index(rng, 0, values.size() - 1);
  return *(values.begin() + static_cast<std::ptrdiff_t>(i));
}

Instance random_unbounded_instance(std::mt19937_64& rng, std::size_t n, std::size_t m,
                                   double r, CostShape shape) {
  Instance inst;
  inst.graph = random_connected_graph(rng, n, m);
  inst.s = 0;
  inst.t = n - 1;
  inst.r = r;
  for (std::size_t a = 0; a < inst.m(); ++a) {
    inst.c.push_back(shape == CostShape::FixedOnly ? 0.0 : uniform(rng, 0.1, 10.0));
    inst.gamma.push_back(shape == CostShape::VariableOnly ? 0.0 : uniform(rng, 0.0, 10.0));
  }
  inst.ybar.assign(inst.m(), kInf);
  inst.B = uniform(rng, 0.5, 2.0);
  return inst;
}

Instance random_bounded_sp_instance(std::mt19937_64& rng, std::size_t m, double r) {
  const SpGraph sp = random_sp_graph(rng, m);
  Instance inst;
  inst.graph = sp.graph;
  inst.s = sp.s;
  inst.t = sp.t;
  inst.r = r;
  for (std::size_t a = 0; a < m; ++a) {
    inst.c.push_back(uniform(rng, 0.1, 10.0));
    inst.gamma.push_back(uniform(rng, 0.0, 5.0));
    inst.ybar.push_back(uniform(rng, 0.5, 5.0));
  }
  const SPTree tree = decompose(inst.graph, inst.s, inst.t);
  inst.B = resistance_sp(tree, inst.ybar, r) * uniform(rng, 1.2, 4.0);
  return inst;
}

FixedInstance random_fixed_sp(std::mt19937_64& rng, std::size_t m, int max_p,
                              std::size_t max_options, double r) {
  const SpGraph sp = random_sp_graph(rng, m);
  FixedInstance fi;
  fi.graph = sp.graph;
  fi.s = sp.s;
  fi.t = sp.t;
  fi.r = r;
  std::vector<double> strongest(m, 0.0);
  for (std::size_t a = 0; a < m; ++a) {
    const std::size_t k = uniform_index(rng, 1, max_options);
    std::vector<Option> opts;
    for (std::size_t i = 0; i < k; ++i) {
      opts.push_back({uniform(rng, 0.5, 5.0), static_cast<double>(uniform_index(rng, 0, static_cast<std::size_t>(max_p)))});
      strongest[a] = std::max(strongest[a], opts.back().mu);
    }
    fi.options.push_back(opts);
  }
  const SPTree tree = decompose(fi.graph, fi.s, fi.t);
  fi.B = resistance_sp(tree, strongest, r) * uniform(rng, 1.0, 4.0);
  return fi;
}

double min_knapsack_dp(const std::vector<long long>& weight, const std::vector<long long>& cost,
                       long long D) {
  if (D <= 0) return 0.0;
  std::vector<double> best(static_cast<std::size_t>(D) + 1, INFINITY);
  best[0] = 0.0;
  for (std::size_t i = 0; i < weight.size(); ++i) {
    for (long long w = D; w >= 1; --w) {
      const long long rest = std::max(0LL, w - weight[i]);
      best[static_cast<std::size_t>(w)] =
          std::min(best[static_cast<std::size_t>(w)], best[static_cast<std::size_t>(rest)] + static_cast<double>(cost[i]));
    }
  }
  return best[static_cast<std::size_t>(D)];
}

std::optional<RspPath> brute_rsp(const RspInstance& inst) {
  std::optional<RspPath> best;
  for_each_simple_path(inst.graph, inst.s, inst.t, [&](const std::vector<ArcId>& path) {
    RspPath p;
    NodeId at = inst.s;
    for (ArcId a : path) {
      if (inst.directed && inst.graph.arcs[a].tail != at) return;
      at = inst.graph.other_end(a, at);
      p.cost += inst.cost[a];
      p.length += inst.length[a];
    }
    if (p.length > inst.budget) return;
    p.arcs = path;
    if (!best || p.cost < best->cost) best = p;
  });
  return best;
}

}  // namespace pbnd::testing
