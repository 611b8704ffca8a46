#include "pbnd/spdesign.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace pbnd {

namespace {

std::size_t idx(int node) { return static_cast<std::size_t>(node); }

void fill_leaf(DPTable& t, std::size_t v, const std::vector<Option>& opts,
               const std::vector<std::int64_t>& cost, std::int64_t U, double r) {
  std::int64_t cap = 0;
  for (std::int64_t c : cost)
    if (c >= 0 && c <= U) cap = std::max(cap, c);
  auto& R = t.R[v];
  auto& C = t.C[v];
  auto& ch = t.choice[v];
  R.assign(static_cast<std::size_t>(cap + 1), kInf);
  C.assign(static_cast<std::size_t>(cap + 1), 0.0);
  ch.assign(static_cast<std::size_t>(cap + 1), -1);
  // Best option bought at exactly k, then carried forward.
  for (std::size_t o = 0; o < opts.size(); ++o) {
    const std::int64_t c = cost[o];
    if (c < 0 || c > cap) continue;
    const auto k = static_cast<std::size_t>(c);
    if (opts[o].mu > C[k]) {
      C[k] = opts[o].mu;
      ch[k] = static_cast<std::int64_t>(o);
    }
  }
  for (std::size_t k = 0; k < C.size(); ++k) {
    if (k > 0 && C[k - 1] >= C[k]) {
      C[k] = C[k - 1];
      ch[k] = ch[k - 1];
    }
    R[k] = ch[k] < 0 ? kInf : leaf_resistance(C[k], r);
    ++t.iterations;
  }
}

void fill_internal(DPTable& t, std::size_t v, const SpNode& node, std::int64_t U, double r) {
  const auto l = idx(node.left), w = idx(node.right);
  const auto capl = static_cast<std::int64_t>(t.R[l].size()) - 1;
  const auto capw = static_cast<std::int64_t>(t.R[w].size()) - 1;
  const std::int64_t cap = std::min(U, capl + capw);
  auto& R = t.R[v];
  auto& C = t.C[v];
  auto& ch = t.choice[v];
  R.assign(static_cast<std::size_t>(cap + 1), kInf);
  C.assign(static_cast<std::size_t>(cap + 1), 0.0);
  ch.assign(static_cast<std::size_t>(cap + 1), 0);
  const bool series = node.kind == SpKind::Series;
  for (std::int64_t k = 0; k <= cap; ++k) {
    const auto ku = static_cast<std::size_t>(k);
    const std::int64_t lo = std::max<std::int64_t>(0, k - capw);
    const std::int64_t hi = std::min(k, capl);
    bool first = true;
    for (std::int64_t kl = lo; kl <= hi; ++kl) {
      ++t.iterations;
      const auto a = static_cast<std::size_t>(kl), b = static_cast<std::size_t>(k - kl);
      if (series) {
        const double cand = t.R[l][a] + t.R[w][b];
        if (first || cand < R[ku]) {
          R[ku] = cand;
          ch[ku] = kl;
        }
      } else {
        const double cand = t.C[l][a] + t.C[w][b];
        if (first || cand > C[ku]) {
          C[ku] = cand;
          ch[ku] = kl;
        }
      }
      first = false;
    }
    if (series) {
      C[ku] = to_conductance(R[ku], r);
    } else {
      R[ku] = to_resistance(C[ku], r);
    }
  }
}

void check_integral(const FixedInstance& inst) {
  for (const auto& opts : inst.options)
    for (const Option& o : opts)
      if (std::floor(o.p) != o.p) throw ValidationError("dp_exact needs integral option costs");
}

double price(const FixedInstance& inst, const std::vector<int>& choice) {
  double cost = 0.0;
  for (std::size_t a = 0; a < choice.size(); ++a)
    if (choice[a] >= 0) cost += inst.options[a][static_cast<std::size_t>(choice[a])].p;
  return cost;
}

}  // namespace

DPTable dp_fill(const SPTree& tree, const FixedInstance& inst, const IntCosts& icost,
                std::int64_t U) {
  DPTable t;
  t.U = U;
  t.R.resize(tree.nodes.size());
  t.C.resize(tree.nodes.size());
  t.choice.resize(tree.nodes.size());
  // Children precede parents, so index order is bottom-up.
  for (std::size_t v = 0; v < tree.nodes.size(); ++v) {
    const SpNode& node = tree.nodes[v];
    if (node.kind == SpKind::Leaf) {
      fill_leaf(t, v, inst.options[node.arc], icost[node.arc], U, inst.r);
    } else {
      fill_internal(t, v, node, U, inst.r);
    }
  }
  return t;
}

std::int64_t dp_answer(const DPTable& table, const SPTree& tree, double B, double tol) {
  const auto& R = table.R[idx(tree.root)];
  for (std::size_t k = 0; k < R.size(); ++k)
    if (within_budget(R[k], B, tol)) return static_cast<std::int64_t>(k);
  return -1;
}

std::vector<int> dp_reconstruct(const DPTable& table, const SPTree& tree, std::int64_t k) {
  std::vector<int> choice(tree.leaf_count(), -1);
  std::vector<std::pair<int, std::int64_t>> stack{{tree.root, k}};
  while (!stack.empty()) {
    auto [v, kv] = stack.back();
    stack.pop_back();
    const auto& ch = table.choice[idx(v)];
    kv = std::min<std::int64_t>(kv, static_cast<std::int64_t>(ch.size()) - 1);
    const std::int64_t c = ch[static_cast<std::size_t>(kv)];
    const SpNode& node = tree.nodes[idx(v)];
    if (node.kind == SpKind::Leaf) {
      choice[node.arc] = static_cast<int>(c);
    } else {
      stack.push_back({node.left, c});
      stack.push_back({node.right, kv - c});
    }
  }
  return choice;
}

FixedSolution dp_exact(const FixedInstance& inst, std::int64_t U, double tol, DpStats* stats) {
  validate(inst);
  check_integral(inst);
  if (U < 0) throw ValidationError("dp_exact: U must be nonnegative");
  const SPTree tree = decompose(inst.graph, inst.s, inst.t);
  IntCosts icost(inst.m());
  for (std::size_t a = 0; a < inst.m(); ++a)
    for (const Option& o : inst.options[a]) icost[a].push_back(static_cast<std::int64_t>(o.p));

  const DPTable table = dp_fill(tree, inst, icost, U);
  if (stats) {
    ++stats->dp_runs;
    stats->iterations += table.iterations;
  }
  const std::int64_t k = dp_answer(table, tree, inst.B, tol);
  if (k < 0) throw Infeasible("no installation of cost at most U meets the budget");
  auto choice = dp_reconstruct(table, tree, k);
  const double R = table.R[idx(tree.root)][static_cast<std::size_t>(k)];
  return make_fixed_solution(inst, std::move(choice), R);
}

FixedSolution dp_exact(const FixedInstance& inst, double tol, DpStats* stats) {
  double total = 0.0;
  for (const auto& opts : inst.options) {
    double most = 0.0;
    for (const Option& o : opts) most = std::max(most, o.p);
    total += most;
  }
  return dp_exact(inst, static_cast<std::int64_t>(total), tol, stats);
}

ScaledCosts scale_costs(const FixedInstance& inst, double p_max, double eps) {
  ScaledCosts sc;
  sc.rho.resize(inst.m());
  const double m = static_cast<double>(inst.m());
  if (p_max == 0.0) {
    for (std::size_t a = 0; a < inst.m(); ++a)
      for (const Option& o : inst.options[a]) sc.rho[a].push_back(o.p == 0.0 ? 0 : -1);
    return sc;
  }
  sc.delta = eps * p_max / m;
  for (std::size_t a = 0; a < inst.m(); ++a) {
    for (const Option& o : inst.options[a]) {
      sc.rho[a].push_back(o.p <= p_max ? static_cast<std::int64_t>(std::floor(o.p / sc.delta)) : -1);
    }
  }
  sc.U = static_cast<std::int64_t>(m) * static_cast<std::int64_t>(std::floor(p_max / sc.delta));
  return sc;
}

FixedSolution solve_fixed_conductance_fptas(const FixedInstance& inst, double eps, double tol,
                                            DpStats* stats) {
  validate(inst);
  if (!(eps > 0.0 && eps <= 1.0)) throw ValidationError("epsilon must lie in (0, 1]");
  const SPTree tree = decompose(inst.graph, inst.s, inst.t);

  std::vector<double> guesses;
  for (const auto& opts : inst.options)
    for (const Option& o : opts) guesses.push_back(o.p);
  std::sort(guesses.begin(), guesses.end());
  guesses.erase(std::unique(guesses.begin(), guesses.end()), guesses.end());

  bool found = false;
  FixedSolution best;
  for (double g : guesses) {
    // The costliest option of an optimum never exceeds the optimum itself.
    if (found && g > best.cost) break;

    // Skip guesses where even the strongest affordable options fall short.
    std::vector<double> y(inst.m(), 0.0);
    for (std::size_t a = 0; a < inst.m(); ++a)
      for (const Option& o : inst.options[a])
        if (o.p <= g) y[a] = std::max(y[a], o.mu);
    if (!within_budget(resistance_sp(tree, y, inst.r), inst.B, tol)) continue;

    const ScaledCosts sc = scale_costs(inst, g, eps);
    const DPTable table = dp_fill(tree, inst, sc.rho, sc.U);
    if (stats) {
      ++stats->guesses;
      ++stats->dp_runs;
      stats->iterations += table.iterations;
    }
    const std::int64_t k = dp_answer(table, tree, inst.B, tol);
    if (k < 0) continue;
    auto choice = dp_reconstruct(table, tree, k);
    const double cost = price(inst, choice);
    if (!found || cost < best.cost || (cost == best.cost && choice < best.choice)) {
      const double R = table.R[idx(tree.root)][static_cast<std::size_t>(k)];
      best = make_fixed_solution(inst, std::move(choice), R);
      found = true;
    }
  }
  if (!found) throw Infeasible("no installation meets the budget");
  return best;
}

Discretization discretize_conductances(const Instance& inst, double eps) {
  const double m = static_cast<double>(inst.m());
  const double D = inst.demand();
  Discretization d;
  d.L = kInf;
  for (std::size_t a = 0; a < inst.m(); ++a) d.L = std::min(d.L, inst.c[a] * D / m + inst.gamma[a]);

  d.fixed.graph = inst.graph;
  d.fixed.s = inst.s;
  d.fixed.t = inst.t;
  d.fixed.r = inst.r;
  d.fixed.B = inst.B;
  d.fixed.options.resize(inst.m());
  const double base = 1.0 + eps / 6.0;
  for (std::size_t a = 0; a < inst.m(); ++a) {
    const double c = inst.c[a], cap = inst.ybar[a];
    const double low = eps * d.L / (6.0 * c * m);
    auto& opts = d.fixed.options[a];
    for (int i = 0;; ++i) {
      const double mu = low * std::pow(base, i);
      if (!(mu <= cap)) break;
      opts.push_back({mu, c * mu + inst.gamma[a]});
    }
    d.ylow.push_back(low);
    d.grid.push_back(opts.size());
    const double span = cap * 6.0 * c * m / (eps * d.L);
    d.grid_bound.push_back(std::max(0.0, std::ceil(6.0 / eps * std::log2(span)) + 1.0));
    if (opts.empty() || opts.back().mu != cap) opts.push_back({cap, c * cap + inst.gamma[a]});
  }
  return d;
}

FixedInstance fixed_from_bounds(const Instance& inst) {
  FixedInstance fi;
  fi.graph = inst.graph;
  fi.s = inst.s;
  fi.t = inst.t;
  fi.r = inst.r;
  fi.B = inst.B;
  for (std::size_t a = 0; a < inst.m(); ++a)
    fi.options.push_back({{inst.ybar[a], inst.c[a] * inst.ybar[a] + inst.gamma[a]}});
  return fi;
}

Solution to_solution(const Instance& inst, const FixedSolution& fs) {
  Solution sol;
  sol.x = fs.x;
  sol.y = fs.y;
  sol.cost = solution_cost(inst, sol.x, sol.y);
  sol.achievedR = fs.achievedR;
  return sol;
}

Solution solve_sp_fptas(const Instance& inst, double eps, double tol, DpStats* stats) {
  validate(inst);
  if (!(eps > 0.0 && eps < 1.0)) throw ValidationError("epsilon must lie in (0, 1)");
  for (std::size_t a = 0; a < inst.m(); ++a) {
    if (std::isinf(inst.ybar[a]))
      throw Unsupported("arc " + std::to_string(a) + " has no conductance bound; the bounded SP scheme needs finite ybar");
    if (inst.c[a] == 0.0)
      throw Unsupported("arc " + std::to_string(a) +
                        " has zero variable cost; install it at ybar beforehand or use sp-exact");
  }
  const SPTree tree = decompose(inst.graph, inst.s, inst.t);
  if (!within_budget(resistance_sp(tree, inst.ybar, inst.r), inst.B, tol))
    throw Infeasible("even y = ybar exceeds the resistance budget");

  const Discretization d = discretize_conductances(inst, eps);
  for (std::size_t a = 0; a < inst.m(); ++a)
    if (static_cast<double>(d.grid[a]) > d.grid_bound[a])
      throw std::logic_error("conductance grid exceeds its size bound");

  const FixedSolution fs = solve_fixed_conductance_fptas(d.fixed, eps / 3.0, tol / 2.0, stats);
  Solution sol = to_solution(inst, fs);
  const VerificationReport rep = verify(inst, sol, tol);
  if (!rep.feasible) throw std::logic_error("sp fptas produced an infeasible design: " + rep.reason);
  sol.achievedR = rep.achievedR;
  return sol;
}

}  // namespace pbnd
