#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>

#include "pbnd/generators.hpp"
#include "pbnd/oracle.hpp"
#include "pbnd/pathdesign.hpp"
#include "pbnd/sptree.hpp"
#include "support/support.hpp"

using namespace pbnd;
using pbnd::testing::CostShape;
using pbnd::testing::pick;
using pbnd::testing::random_unbounded_instance;
using pbnd::testing::rel_close;

namespace {

Instance on_graph(Graph g, NodeId t, std::vector<double> c, std::vector<double> gamma, double r,
                  double B) {
  Instance inst;
  inst.graph = std::move(g);
  inst.t = t;
  inst.r = r;
  inst.c = std::move(c);
  inst.gamma = std::move(gamma);
  inst.ybar.assign(inst.m(), kInf);
  inst.B = B;
  return inst;
}

double path_resistance(const Instance& inst, const PathSolution& ps) {
  double R = 0.0;
  for (std::size_t i = 0; i < ps.path.size(); ++i)
    if (inst.c[ps.path[i]] > 0.0) R += std::pow(ps.y[i], -inst.r);
  return R;
}

bool has_variable_cost(const Instance& inst, const PathSolution& ps) {
  return std::any_of(ps.path.begin(), ps.path.end(), [&](ArcId a) { return inst.c[a] > 0.0; });
}

double recomputed_objective(const Instance& inst, const PathSolution& ps) {
  double obj = 0.0;
  for (std::size_t i = 0; i < ps.path.size(); ++i) {
    const ArcId a = ps.path[i];
    if (inst.c[a] > 0.0) obj += inst.c[a] * ps.y[i];
    obj += inst.gamma[a];
  }
  return obj;
}

}  // namespace

TEST_CASE("closed form on fixed paths") {
  const Instance one = on_graph(path_graph(1), 1, {1.0}, {0.0}, 1.0, 1.0);
  const PathSolution a = optimal_y_for_path(one, {0});
  CHECK(a.y[0] == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(a.objective == doctest::Approx(1.0).epsilon(1e-15));

  const Instance two = on_graph(path_graph(2), 2, {1.0, 1.0}, {0.0, 0.0}, 1.0, 1.0);
  const PathSolution b = optimal_y_for_path(two, {0, 1});
  CHECK(b.y[0] == doctest::Approx(2.0).epsilon(1e-15));
  CHECK(b.y[1] == doctest::Approx(2.0).epsilon(1e-15));
  CHECK(b.objective == doctest::Approx(4.0).epsilon(1e-15));

  const Instance skew = on_graph(path_graph(2), 2, {1.0, 4.0}, {0.0, 0.0}, 1.0, 1.0);
  const PathSolution c = optimal_y_for_path(skew, {0, 1});
  CHECK(c.y[0] == doctest::Approx(3.0).epsilon(1e-15));
  CHECK(c.y[1] == doctest::Approx(1.5).epsilon(1e-15));
  CHECK(c.objective == doctest::Approx(9.0).epsilon(1e-15));
  // One-dimensional scan over y1 with y2 = 1/(1 - 1/y1).
  double best = kInf;
  for (double y1 = 1.001; y1 < 20.0; y1 += 0.001) best = std::min(best, y1 + 4.0 / (1.0 - 1.0 / y1));
  CHECK(best >= 9.0 - 1e-9);
  CHECK(best <= 9.0 + 1e-4);
}

TEST_CASE("zero variable cost arcs are unbounded") {
  const Instance inst = on_graph(path_graph(2), 2, {0.0, 2.0}, {1.0, 0.5}, 2.0, 0.5);
  const PathSolution ps = optimal_y_for_path(inst, {0, 1});
  CHECK(std::isinf(ps.y[0]));
  CHECK(rel_close(std::pow(ps.y[1], -2.0), 0.5, 1e-12));
  const Solution sol = to_solution(inst, ps);
  CHECK(verify(inst, sol).feasible);
  CHECK(rel_close(sol.cost, ps.objective, 1e-12));
}

TEST_CASE("KKT multipliers agree and the budget is tight") {
  std::mt19937_64 rng(51);
  for (int i = 0; i < 100; ++i) {
    const double r = pick(rng, {1.0, 1.5, 2.0, 3.0});
    const std::size_t k = uniform_index(rng, 1, 8);
    std::vector<double> c(k), gamma(k, 0.0);
    for (double& v : c) v = uniform(rng, 0.1, 10.0);
    const Instance inst = on_graph(path_graph(k), k, c, gamma, r, uniform(rng, 0.1, 5.0));
    std::vector<ArcId> path(k);
    for (std::size_t a = 0; a < k; ++a) path[a] = a;
    const PathSolution ps = optimal_y_for_path(inst, path);
    double lo = kInf, hi = 0.0;
    for (std::size_t a = 0; a < k; ++a) {
      const double lambda = c[a] * std::pow(ps.y[a], r + 1.0) / r;
      lo = std::min(lo, lambda);
      hi = std::max(hi, lambda);
    }
    CHECK(hi / lo <= 1.0 + 1e-9);
    CHECK(rel_close(path_resistance(inst, ps), inst.B, 1e-9));
    CHECK(rel_close(recomputed_objective(inst, ps), ps.objective, 1e-9));
  }
}

TEST_CASE("fixed cost only") {
  const Instance inst = on_graph(parallel_graph(2), 1, {0.0, 0.0}, {3.0, 5.0}, 1.0, 1.0);
  const PathSolution ps = solve_fixed_cost_only(inst);
  CHECK(ps.path == std::vector<ArcId>{0});
  CHECK(ps.objective == 3.0);
  CHECK(std::isinf(ps.y[0]));

  const Instance free = on_graph(path_graph(3), 3, {0, 0, 0}, {0, 0, 0}, 2.0, 1.0);
  CHECK(solve_fixed_cost_only(free).objective == 0.0);

  Instance cut = on_graph(path_graph(2), 2, {0, 0}, {1, 1}, 1.0, 1.0);
  cut.graph.arcs[1] = {0, 1};
  CHECK_THROWS_AS(solve_fixed_cost_only(cut), Disconnected);
  CHECK_THROWS_AS(solve_fixed_cost_only(on_graph(path_graph(1), 1, {1}, {0}, 1, 1)), Unsupported);
}

TEST_CASE("variable cost only") {
  const Instance inst = on_graph(parallel_graph(2), 1, {1.0, 4.0}, {0.0, 0.0}, 1.0, 1.0);
  const PathSolution ps = solve_variable_cost_only(inst);
  CHECK(ps.path == std::vector<ArcId>{0});
  CHECK(ps.y[0] == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(ps.objective == doctest::Approx(1.0).epsilon(1e-15));

  const std::vector<double> c{1.0, 2.0, 3.0};
  for (double r : {1.0, 2.0, 3.0}) {
    const Instance series = on_graph(path_graph(3), 3, c, {0, 0, 0}, r, 0.7);
    double sum = 0.0;
    for (double v : c) sum += std::pow(v, r / (r + 1.0));
    const double expect = std::pow(sum, (r + 1.0) / r) / std::pow(0.7, 1.0 / r);
    CHECK(rel_close(solve_variable_cost_only(series).objective, expect, 1e-12));
  }
}

TEST_CASE("exact special cases match path enumeration") {
  std::mt19937_64 rng(52);
  for (int i = 0; i < 100; ++i) {
    const std::size_t n = uniform_index(rng, 2, 8);
    const std::size_t m = n - 1 + uniform_index(rng, 0, 6);
    const bool fixed = i % 2 == 0;
    const double r = fixed ? pick(rng, {1.0, 1.5, 2.0, 3.0}) : pick(rng, {1.0, 2.0});
    const Instance inst =
        random_unbounded_instance(rng, n, m, r, fixed ? CostShape::FixedOnly : CostShape::VariableOnly);
    const PathSolution oracle = brute_paths_unbounded(inst);
    const PathSolution ps = fixed ? solve_fixed_cost_only(inst) : solve_variable_cost_only(inst);
    CHECK(rel_close(ps.objective, oracle.objective, 1e-9));
    if (!fixed) CHECK(rel_close(path_resistance(inst, ps), inst.B, 1e-9));
  }
}

TEST_CASE("lambda bounds") {
  const LambdaBounds a = lambda_bounds(on_graph(path_graph(1), 1, {1.0}, {0.0}, 1.0, 1.0));
  CHECK(a.L == 1.0);
  CHECK(a.U == 1.0);

  const LambdaBounds b = lambda_bounds(on_graph(path_graph(2), 2, {1.0, 4.0}, {0.0, 0.0}, 1.0, 1.0));
  CHECK(b.L == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(b.U == doctest::Approx(16.0).epsilon(1e-15));

  const LambdaBounds c = lambda_bounds(on_graph(path_graph(1), 1, {2.0}, {0.0}, 2.0, 4.0));
  CHECK(c.L == doctest::Approx(0.125).epsilon(1e-15));

  CHECK_THROWS_AS(lambda_bounds(on_graph(path_graph(1), 1, {0.0}, {1.0}, 1.0, 1.0)), AllVariableCostsZero);
}

TEST_CASE("lambda grid covers the bracket") {
  std::mt19937_64 rng(53);
  for (int i = 0; i < 50; ++i) {
    const double r = pick(rng, {1.0, 2.0, 3.0});
    const Instance inst = random_unbounded_instance(rng, uniform_index(rng, 2, 8), 10, r, CostShape::Both);
    const double eps = pick(rng, {0.5, 0.1, 0.01});
    const LambdaGrid grid = make_lambda_grid(inst, eps);
    REQUIRE(grid.points.size() == grid.covered + 1);
    CHECK(grid.L <= grid.U);
    CHECK(grid.points.front() == grid.L);
    CHECK(grid.points[grid.covered - 1] <= grid.U);
    CHECK(grid.points.back() > grid.U);
    CHECK(static_cast<double>(grid.covered) <= lambda_grid_bound(inst, eps));
    for (std::size_t k = 1; k < grid.points.size(); ++k)
      CHECK(rel_close(grid.points[k] / grid.points[k - 1], std::pow(1.0 + eps / 3.0, r + 1.0), 1e-12));
  }
}

TEST_CASE("fptas small examples") {
  const Instance inst = on_graph(parallel_graph(2), 1, {1.0, 4.0}, {10.0, 0.0}, 1.0, 1.0);
  const PathSolution ps = solve_path_fptas(inst, 0.1);
  CHECK(ps.objective <= 4.4);
  CHECK(ps.objective >= 4.0 - 1e-12);
  CHECK(brute_paths_unbounded(inst).objective == doctest::Approx(4.0).epsilon(1e-15));

  const Instance fixed = on_graph(parallel_graph(3), 1, {0, 0, 0}, {4.0, 2.0, 3.0}, 2.0, 1.0);
  const PathSolution a = solve_path_fptas(fixed, 0.5);
  const PathSolution b = solve_fixed_cost_only(fixed);
  CHECK(a.path == b.path);
  CHECK(a.objective == b.objective);

  CHECK_THROWS_AS(solve_path_fptas(inst, 0.0), ValidationError);
  CHECK_THROWS_AS(solve_path_fptas(inst, 1.5), ValidationError);
  CHECK_NOTHROW(solve_path_fptas(inst, 1.0));
}

TEST_CASE("fptas envelope against path enumeration") {
  std::mt19937_64 rng(54);
  for (double eps : {0.5, 0.1}) {
    for (int i = 0; i < 100; ++i) {
      const std::size_t n = uniform_index(rng, 2, 8);
      const double r = pick(rng, {1.0, 1.5, 2.0, 3.0});
      const Instance inst = random_unbounded_instance(rng, n, n - 1 + uniform_index(rng, 0, 6), r, CostShape::Both);
      const PathSolution oracle = brute_paths_unbounded(inst);
      PathFptasStats st;
      const PathSolution ps = solve_path_fptas(inst, eps, {}, &st);
      CHECK(ps.objective <= (1.0 + eps) * oracle.objective * (1.0 + 1e-12));
      CHECK(ps.objective >= oracle.objective * (1.0 - 1e-12));
      if (has_variable_cost(inst, ps)) CHECK(rel_close(path_resistance(inst, ps), inst.B, 1e-9));
      CHECK(static_cast<double>(st.grid_covered) <= st.grid_bound);
      CHECK(verify(inst, to_solution(inst, ps)).feasible);
    }
  }
}

TEST_CASE("threads do not change the answer") {
  std::mt19937_64 rng(55);
  for (int i = 0; i < 20; ++i) {
    const Instance inst = random_unbounded_instance(rng, 8, 14, pick(rng, {1.0, 2.0}), CostShape::Both);
    const PathSolution a = solve_path_fptas(inst, 0.05);
    const PathSolution b = solve_path_fptas(inst, 0.05, {4});
    CHECK(a.path == b.path);
    CHECK(a.y == b.y);
    CHECK(a.objective == b.objective);
  }
}

TEST_CASE("no support beats the best path") {
  // Random SP graphs with bounds far above any optimal conductance behave as
  // unbounded instances; the continuous oracle then ranges over all supports.
  std::mt19937_64 rng(56);
  for (int i = 0; i < 30; ++i) {
    const SpGraph sp = random_sp_graph(rng, uniform_index(rng, 2, 6));
    if (sp.graph.n > 5) continue;
    Instance inst;
    inst.graph = sp.graph;
    inst.s = sp.s;
    inst.t = sp.t;
    inst.r = pick(rng, {1.0, 2.0});
    for (std::size_t a = 0; a < inst.m(); ++a) {
      inst.c.push_back(uniform(rng, 0.5, 5.0));
      inst.gamma.push_back(uniform(rng, 0.0, 5.0));
    }
    inst.ybar.assign(inst.m(), kInf);
    inst.B = uniform(rng, 0.5, 2.0);
    const double paths = brute_paths_unbounded(inst).objective;
    Instance capped = inst;
    capped.ybar.assign(inst.m(), 1e6);
    const double supports = brute_subsets_continuous_sp(capped).cost;
    CHECK(supports >= paths * (1.0 - 1e-7));
  }
}
