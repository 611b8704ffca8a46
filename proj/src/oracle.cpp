#include "pbnd/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <optional>
#include <string>

#include "pbnd/resistance.hpp"
#include "pbnd/sptree.hpp"

namespace pbnd {

namespace {

bool better_path(const PathSolution& a, const PathSolution& b) {
  if (a.objective != b.objective) return a.objective < b.objective;
  return a.path < b.path;
}

// For fixed flow magnitudes f on the support, the cheapest conductances with
// sum |f|^(r+1) / y^r = B: y_a = min(ybar_a, |f_a| (nu r / c_a)^(1/(r+1))).
// The multiplier nu is found segment by segment as arcs reach their bound.
std::vector<double> conductance_step(const Instance& inst, const std::vector<char>& support,
                                     const std::vector<double>& f) {
  const double r = inst.r;
  const std::size_t m = inst.m();
  std::vector<double> y(m, 0.0);
  double capped = 0.0;  // energy of arcs at their bound
  double free = 0.0;    // coefficient of nu^(-r/(r+1)) for the others
  std::vector<std::pair<double, std::size_t>> hits;  // nu where arc a reaches ybar
  for (std::size_t a = 0; a < m; ++a) {
    if (!support[a]) continue;
    const double fa = std::abs(f[a]);
    if (inst.c[a] == 0.0) {
      capped += std::pow(fa, r + 1.0) / std::pow(inst.ybar[a], r);
      continue;
    }
    free += fa * std::pow(inst.c[a] / r, r / (r + 1.0));
    hits.push_back({std::pow(inst.ybar[a] / fa, r + 1.0) * inst.c[a] / r, a});
  }
  std::sort(hits.begin(), hits.end());

  double nu = kInf;
  for (std::size_t j = 0; j <= hits.size(); ++j) {
    if (inst.B > capped && free > 0.0) {
      const double cand = std::pow(free / (inst.B - capped), (r + 1.0) / r);
      if (j == hits.size() || cand <= hits[j].first) {
        nu = cand;
        break;
      }
    }
    if (j == hits.size()) break;
    const std::size_t a = hits[j].second;
    const double fa = std::abs(f[a]);
    free -= fa * std::pow(inst.c[a] / r, r / (r + 1.0));
    capped += std::pow(fa, r + 1.0) / std::pow(inst.ybar[a], r);
  }
  for (std::size_t a = 0; a < m; ++a) {
    if (!support[a]) continue;
    if (inst.c[a] == 0.0 || std::isinf(nu)) {
      y[a] = inst.ybar[a];
    } else {
      y[a] = std::min(inst.ybar[a], std::abs(f[a]) * std::pow(nu * r / inst.c[a], 1.0 / (r + 1.0)));
    }
  }
  return y;
}

double support_cost(const Instance& inst, const std::vector<char>& support, const std::vector<double>& y) {
  double cost = 0.0;
  for (std::size_t a = 0; a < inst.m(); ++a)
    if (support[a]) cost += inst.c[a] * y[a] + inst.gamma[a];
  return cost;
}

}  // namespace

PathSolution brute_paths_unbounded(const Instance& inst) {
  validate(inst);
  if (!inst.unbounded()) throw Unsupported("path oracle needs ybar == inf on every arc");
  if (inst.graph.n > kMaxPathOracleNodes)
    throw TooLarge("path oracle is limited to " + std::to_string(kMaxPathOracleNodes) + " nodes");
  bool found = false;
  PathSolution best;
  for_each_simple_path(inst.graph, inst.s, inst.t, [&](const std::vector<ArcId>& path) {
    PathSolution cand = optimal_y_for_path(inst, path);
    if (!found || better_path(cand, best)) {
      best = std::move(cand);
      found = true;
    }
  });
  if (!found) throw Disconnected("s and t are not connected");
  return best;
}

FixedSolution brute_subsets_fixed(const FixedInstance& inst, double tol) {
  validate(inst);
  const std::size_t m = inst.m();
  if (m > kMaxFixedOracleArcs)
    throw TooLarge("subset oracle is limited to " + std::to_string(kMaxFixedOracleArcs) + " arcs");

  std::optional<SPTree> tree;
  try {
    tree = decompose(inst.graph, inst.s, inst.t);
  } catch (const NotSeriesParallel&) {
  }

  // Mixed-radix counter over choices -1..|options|-1 per arc.
  std::vector<int> choice(m, -1);
  std::vector<double> y(m, 0.0);
  bool found = false;
  FixedSolution best;
  double best_cost = kInf;
  for (;;) {
    double cost = 0.0;
    for (std::size_t a = 0; a < m; ++a) {
      if (choice[a] < 0) {
        y[a] = 0.0;
      } else {
        const Option& o = inst.options[a][static_cast<std::size_t>(choice[a])];
        y[a] = o.mu;
        cost += o.p;
      }
    }
    if (!found || cost < best_cost || (cost == best_cost && choice < best.choice)) {
      const double R = tree ? resistance_sp(*tree, y, inst.r)
                            : effective_resistance(inst.graph, y, inst.r, inst.s, inst.t);
      if (within_budget(R, inst.B, tol)) {
        best = make_fixed_solution(inst, choice, R);
        best_cost = cost;
        found = true;
      }
    }
    std::size_t a = 0;
    for (; a < m; ++a) {
      if (++choice[a] < static_cast<int>(inst.options[a].size())) break;
      choice[a] = -1;
    }
    if (a == m) break;
  }
  if (!found) throw Infeasible("no option assignment meets the budget");
  return best;
}

std::vector<double> resistance_gradient_sp(const Instance& inst, const std::vector<double>& y) {
  const SPTree tree = decompose(inst.graph, inst.s, inst.t);
  const std::vector<double> f = flows_sp(tree, y, inst.r);
  std::vector<double> g(inst.m(), 0.0);
  for (std::size_t a = 0; a < inst.m(); ++a)
    if (y[a] > 0.0) g[a] = -inst.r * std::pow(std::abs(f[a]) / y[a], inst.r + 1.0);
  return g;
}

SupportOptimum optimize_support(const Instance& inst, const std::vector<char>& support, double tol) {
  const SPTree tree = decompose(inst.graph, inst.s, inst.t);
  SupportOptimum out;
  std::vector<double> y(inst.m(), 0.0);
  for (std::size_t a = 0; a < inst.m(); ++a)
    if (support[a]) y[a] = inst.ybar[a];
  if (!within_budget(resistance_sp(tree, y, inst.r), inst.B, tol)) return out;

  std::vector<double> f = flows_sp(tree, y, inst.r);
  for (std::size_t a = 0; a < inst.m(); ++a)
    if (support[a] && f[a] == 0.0) return out;

  // Alternate between the unit flow for y and the cheapest y carrying that
  // flow within the budget. Both steps keep the energy at most B, and a
  // fixed point satisfies the optimality conditions of the convex program.
  constexpr long long kMaxRounds = 200000;
  double cost = support_cost(inst, support, y);
  for (out.rounds = 1; out.rounds <= kMaxRounds; ++out.rounds) {
    std::vector<double> next = conductance_step(inst, support, f);
    const double next_cost = support_cost(inst, support, next);
    if (next_cost > cost) break;  // rounding noise at the fixed point
    const double gain = cost - next_cost;
    y = std::move(next);
    cost = next_cost;
    if (gain <= 1e-13 * cost) break;
    for (std::size_t a = 0; a < inst.m(); ++a) {
      // An arc driven to zero only adds its fixed cost: a smaller support wins.
      if (support[a] && y[a] < 1e-9 * inst.ybar[a]) return out;
    }
    f = flows_sp(tree, y, inst.r);
  }
  out.y = std::move(y);
  out.cost = cost;
  return out;
}

Solution brute_subsets_continuous_sp(const Instance& inst, double tol) {
  validate(inst);
  const std::size_t m = inst.m();
  if (!inst.fully_bounded()) throw Unsupported("continuous oracle needs finite ybar on every arc");
  if (m > kMaxContinuousOracleArcs)
    throw TooLarge("continuous oracle is limited to " + std::to_string(kMaxContinuousOracleArcs) + " arcs");
  const SPTree tree = decompose(inst.graph, inst.s, inst.t);

  SupportOptimum best;
  std::vector<char> best_support;
  std::vector<char> support(m);
  for (std::size_t mask = 1; mask < (std::size_t{1} << m); ++mask) {
    for (std::size_t a = 0; a < m; ++a) support[a] = (mask >> a) & 1;
    SupportOptimum cand = optimize_support(inst, support, tol);
    if (cand.cost < best.cost) {
      best = std::move(cand);
      best_support = support;
    }
  }
  if (std::isinf(best.cost)) throw Infeasible("no support meets the budget");

  Solution sol;
  sol.x.assign(m, 0);
  for (std::size_t a = 0; a < m; ++a) sol.x[a] = best_support[a] ? 1 : 0;
  sol.y = best.y;
  sol.cost = solution_cost(inst, sol.x, sol.y);
  sol.achievedR = resistance_sp(tree, sol.y, inst.r);
  return sol;
}

}  // namespace pbnd
