#include "pbnd/pathdesign.hpp"

#include <algorithm>
#include <cmath>
#include <future>
#include <optional>

#include "pbnd/rsp.hpp"
#include "pbnd/sptree.hpp"

namespace pbnd {

namespace {

void require_unbounded(const Instance& inst) {
  if (!inst.unbounded()) throw Unsupported("path solvers need ybar == inf on every arc");
}

// Orders candidates by objective, then lexicographically by arc sequence.
bool better(const PathSolution& a, const PathSolution& b) {
  if (a.objective != b.objective) return a.objective < b.objective;
  return a.path < b.path;
}

std::vector<ArcId> undirected_shortest(const Instance& inst, const std::vector<double>& len) {
  auto p = shortest_path(inst.graph, inst.s, inst.t, len, false);
  if (!p) throw Disconnected("s and t are not connected");
  return *p;
}

std::vector<double> reduced_lengths(const Instance& inst) {
  std::vector<double> len(inst.m());
  const double e = inst.r / (inst.r + 1.0);
  for (std::size_t a = 0; a < inst.m(); ++a) len[a] = std::pow(inst.c[a], e);
  return len;
}

}  // namespace

PathSolution optimal_y_for_path(const Instance& inst, std::vector<ArcId> path) {
  const double r = inst.r;
  const double e = r / (r + 1.0);
  const double Broot = std::pow(inst.B, 1.0 / r);

  double weight = 0.0;  // sum over P+ of c^(r/(r+1))
  double scaled = 0.0;  // sum over P of (c/B^(1/r))^(r/(r+1))
  double fixed = 0.0;
  for (ArcId a : path) {
    if (inst.c[a] > 0.0) {
      weight += std::pow(inst.c[a], e);
      scaled += std::pow(inst.c[a] / Broot, e);
    }
    fixed += inst.gamma[a];
  }

  PathSolution ps;
  ps.y.reserve(path.size());
  const double numer = std::pow(weight, 1.0 / r);
  for (ArcId a : path) {
    if (inst.c[a] > 0.0) {
      ps.y.push_back(numer / (std::pow(inst.c[a], 1.0 / (r + 1.0)) * Broot));
    } else {
      ps.y.push_back(kUnbounded);
    }
  }
  ps.objective = std::pow(scaled, (r + 1.0) / r) + fixed;
  ps.path = std::move(path);
  return ps;
}

Solution to_solution(const Instance& inst, const PathSolution& ps) {
  Solution sol;
  sol.x.assign(inst.m(), 0);
  sol.y.assign(inst.m(), 0.0);
  double R = 0.0;
  for (std::size_t i = 0; i < ps.path.size(); ++i) {
    const ArcId a = ps.path[i];
    sol.x[a] = 1;
    sol.y[a] = ps.y[i];
    R += leaf_resistance(ps.y[i], inst.r);
  }
  sol.cost = solution_cost(inst, sol.x, sol.y);
  sol.achievedR = R;
  return sol;
}

PathSolution solve_fixed_cost_only(const Instance& inst) {
  require_unbounded(inst);
  if (!inst.zero_variable_cost()) throw Unsupported("solve_fixed_cost_only needs c == 0");
  return optimal_y_for_path(inst, undirected_shortest(inst, inst.gamma));
}

PathSolution solve_variable_cost_only(const Instance& inst) {
  require_unbounded(inst);
  if (!inst.zero_fixed_cost()) throw Unsupported("solve_variable_cost_only needs gamma == 0");
  return optimal_y_for_path(inst, undirected_shortest(inst, reduced_lengths(inst)));
}

LambdaBounds lambda_bounds(const Instance& inst) {
  double cmin = kInf, cmax = 0.0;
  for (double c : inst.c) {
    if (c > 0.0) {
      cmin = std::min(cmin, c);
      cmax = std::max(cmax, c);
    }
  }
  if (cmax == 0.0) throw AllVariableCostsZero("all variable costs are zero; use solve_fixed_cost_only");
  const double r = inst.r;
  const double denom = r * std::pow(inst.B, (r + 1.0) / r);
  const double paths = std::pow(static_cast<double>(inst.graph.n - 1), (r + 1.0) / r);
  return {cmin / denom, cmax * paths / denom};
}

LambdaGrid make_lambda_grid(const Instance& inst, double eps) {
  const LambdaBounds b = lambda_bounds(inst);
  LambdaGrid grid{b.L, b.U, eps, 0, {}};
  const double base = 1.0 + eps / 3.0;
  for (std::size_t i = 0;; ++i) {
    const double lambda = b.L * std::pow(base, static_cast<double>(i) * (inst.r + 1.0));
    grid.points.push_back(lambda);
    if (lambda > b.U) break;
    ++grid.covered;
  }
  return grid;
}

double lambda_grid_bound(const Instance& inst, double eps) {
  double cmin = kInf, cmax = 0.0;
  for (double c : inst.c) {
    if (c > 0.0) {
      cmin = std::min(cmin, c);
      cmax = std::max(cmax, c);
    }
  }
  const double r = inst.r;
  const double span = std::pow(static_cast<double>(inst.graph.n - 1), (r + 1.0) / r) * (cmax / cmin);
  return std::ceil(3.0 * std::log2(span) / eps) + 1.0;
}

PathSolution solve_path_fptas(const Instance& inst, double eps, const PathFptasOptions& opts,
                              PathFptasStats* stats) {
  require_unbounded(inst);
  if (!(eps > 0.0 && eps <= 1.0)) throw ValidationError("epsilon must lie in (0, 1]");
  if (inst.zero_variable_cost()) return solve_fixed_cost_only(inst);

  const double r = inst.r;
  const std::vector<double> length = reduced_lengths(inst);
  const LambdaGrid grid = make_lambda_grid(inst, eps);

  // Seeds: the optima for the two pure cost structures. Their objectives
  // also prune the grid: a path feasible at lambda costs at least
  // (lambda r)^(1/(r+1)) * min length + min fixed cost.
  const auto len_path = undirected_shortest(inst, length);
  const auto fix_path = undirected_shortest(inst, inst.gamma);
  std::vector<PathSolution> seeds{optimal_y_for_path(inst, len_path),
                                  optimal_y_for_path(inst, fix_path)};
  double min_length = 0.0, min_fixed = 0.0;
  for (ArcId a : len_path) min_length += length[a];
  for (ArcId a : fix_path) min_fixed += inst.gamma[a];
  const double incumbent = std::min(seeds[0].objective, seeds[1].objective);

  RspInstance sub;
  sub.graph = inst.graph;
  sub.s = inst.s;
  sub.t = inst.t;
  sub.length = length;
  sub.directed = false;

  std::vector<std::size_t> todo;
  for (std::size_t i = 0; i < grid.points.size(); ++i) {
    const double lr = grid.points[i] * r;
    if (min_length > std::pow(lr, r / (r + 1.0)) * inst.B) continue;  // nothing fits
    if (std::pow(lr, 1.0 / (r + 1.0)) * min_length + min_fixed > incumbent) break;
    todo.push_back(i);
  }

  auto solve_at = [&](std::size_t i) -> std::optional<PathSolution> {
    RspInstance local = sub;
    const double lr = grid.points[i] * r;
    const double scale = std::pow(lr, 1.0 / (r + 1.0));
    local.cost.resize(inst.m());
    for (std::size_t a = 0; a < inst.m(); ++a) local.cost[a] = scale * length[a] + inst.gamma[a];
    local.budget = std::pow(lr, r / (r + 1.0)) * inst.B * (1.0 + 1e-12);
    try {
      return optimal_y_for_path(inst, rsp_fptas(local, eps / 3.0).arcs);
    } catch (const Infeasible&) {
      return std::nullopt;
    }
  };

  std::vector<std::optional<PathSolution>> found(todo.size());
  const unsigned threads = std::max(1u, opts.threads);
  if (threads == 1 || todo.size() < 2) {
    for (std::size_t k = 0; k < todo.size(); ++k) found[k] = solve_at(todo[k]);
  } else {
    std::vector<std::future<void>> jobs;
    for (unsigned w = 0; w < threads; ++w) {
      jobs.push_back(std::async(std::launch::async, [&, w] {
        for (std::size_t k = w; k < todo.size(); k += threads) found[k] = solve_at(todo[k]);
      }));
    }
    for (auto& j : jobs) j.get();
  }

  PathSolution best = seeds[0];
  if (better(seeds[1], best)) best = seeds[1];
  for (auto& cand : found)
    if (cand && better(*cand, best)) best = std::move(*cand);

  if (stats) {
    stats->grid_points = grid.points.size();
    stats->grid_covered = grid.covered;
    stats->rsp_calls = todo.size();
    stats->grid_bound = lambda_grid_bound(inst, eps);
  }
  return best;
}

}  // namespace pbnd
