#include <doctest.h>

#include <cmath>
#include <random>

#include "pbnd/generators.hpp"
#include "pbnd/rsp.hpp"
#include "support/support.hpp"

using namespace pbnd;
using pbnd::testing::brute_rsp;

namespace {

RspInstance two_arcs(double budget) {
  RspInstance inst;
  inst.graph = parallel_graph(2);
  inst.cost = {1, 2};
  inst.length = {5, 1};
  inst.budget = budget;
  return inst;
}

// Random DAG on n nodes (arcs go from lower to higher index), s=0, t=n-1.
RspInstance random_dag(std::mt19937_64& rng, std::size_t n, bool integral) {
  RspInstance inst;
  inst.graph.n = n;
  inst.s = 0;
  inst.t = n - 1;
  for (NodeId u = 0; u < n; ++u)
    for (NodeId v = u + 1; v < n; ++v)
      if (uniform(rng, 0, 1) < 0.6 || v == u + 1) inst.graph.arcs.push_back({u, v});
  for (std::size_t a = 0; a < inst.graph.m(); ++a) {
    inst.cost.push_back(integral ? static_cast<double>(uniform_index(rng, 0, 9)) : uniform(rng, 0.0, 10.0));
    inst.length.push_back(uniform(rng, 0.0, 10.0));
  }
  inst.budget = uniform(rng, 5.0, 25.0);
  return inst;
}

}  // namespace

TEST_CASE("exact on two parallel arcs") {
  const RspPath tight = rsp_exact(two_arcs(1));
  CHECK(tight.arcs == std::vector<ArcId>{1});
  CHECK(tight.cost == 2);
  const RspPath loose = rsp_exact(two_arcs(5));
  CHECK(loose.arcs == std::vector<ArcId>{0});
  CHECK(loose.cost == 1);
  CHECK_THROWS_AS(rsp_exact(two_arcs(0.5)), Infeasible);
}

TEST_CASE("exact on the diamond matches enumeration") {
  std::mt19937_64 rng(41);
  for (int i = 0; i < 50; ++i) {
    RspInstance inst;
    inst.graph.n = 4;
    inst.graph.arcs = {{0, 1}, {1, 3}, {0, 2}, {2, 3}, {1, 2}};
    inst.t = 3;
    for (int a = 0; a < 5; ++a) {
      inst.cost.push_back(static_cast<double>(uniform_index(rng, 0, 6)));
      inst.length.push_back(static_cast<double>(uniform_index(rng, 0, 6)));
    }
    inst.budget = static_cast<double>(uniform_index(rng, 0, 10));
    inst.directed = uniform_index(rng, 0, 1) == 0;
    const auto best = brute_rsp(inst);
    if (!best) {
      CHECK_THROWS_AS(rsp_exact(inst), Infeasible);
      continue;
    }
    const RspPath p = rsp_exact(inst);
    CHECK(p.cost == best->cost);
    CHECK(p.length <= inst.budget);
  }
}

TEST_CASE("fptas envelope on random DAGs") {
  std::mt19937_64 rng(42);
  for (double eps : {0.5, 0.1}) {
    for (int i = 0; i < 100; ++i) {
      const RspInstance inst = random_dag(rng, uniform_index(rng, 2, 8), false);
      const auto best = brute_rsp(inst);
      if (!best) {
        CHECK_THROWS_AS(rsp_fptas(inst, eps), Infeasible);
        continue;
      }
      const RspPath p = rsp_fptas(inst, eps);
      CHECK(p.length <= inst.budget);
      CHECK(p.cost <= (1.0 + eps) * best->cost + 1e-12);
      CHECK(p.cost >= best->cost - 1e-12);
    }
  }
}

TEST_CASE("undirected paths may traverse arcs backwards") {
  std::mt19937_64 rng(43);
  for (int i = 0; i < 100; ++i) {
    RspInstance inst;
    inst.graph = random_connected_graph(rng, uniform_index(rng, 2, 7), 9);
    inst.s = 0;
    inst.t = inst.graph.n - 1;
    inst.directed = false;
    for (std::size_t a = 0; a < inst.graph.m(); ++a) {
      inst.cost.push_back(uniform(rng, 0.0, 10.0));
      inst.length.push_back(uniform(rng, 0.0, 10.0));
    }
    inst.budget = uniform(rng, 3.0, 20.0);
    const auto best = brute_rsp(inst);
    if (!best) continue;
    const RspPath p = rsp_fptas(inst, 0.1);
    CHECK(p.length <= inst.budget);
    CHECK(p.cost <= 1.1 * best->cost + 1e-12);
  }
}

TEST_CASE("tiny instances are solved exactly") {
  std::mt19937_64 rng(44);
  for (int i = 0; i < 50; ++i) {
    RspInstance inst;
    inst.graph = parallel_graph(uniform_index(rng, 1, 2));
    for (std::size_t a = 0; a < inst.graph.m(); ++a) {
      inst.cost.push_back(uniform(rng, 0.0, 10.0));
      inst.length.push_back(uniform(rng, 0.0, 10.0));
    }
    inst.budget = uniform(rng, 0.0, 10.0);
    const auto best = brute_rsp(inst);
    if (!best) continue;
    CHECK(rsp_fptas(inst, 0.5).cost == best->cost);
  }
}

TEST_CASE("zero budget") {
  RspInstance inst = two_arcs(0.0);
  CHECK_THROWS_AS(rsp_fptas(inst, 0.5), Infeasible);
  CHECK_THROWS_AS(rsp_exact(inst), Infeasible);
  inst.length = {0.0, 1.0};
  CHECK(rsp_fptas(inst, 0.5).arcs == std::vector<ArcId>{0});
}

TEST_CASE("small epsilon agrees with the exact DP") {
  std::mt19937_64 rng(45);
  for (int i = 0; i < 30; ++i) {
    const RspInstance inst = random_dag(rng, uniform_index(rng, 2, 7), true);
    const auto best = brute_rsp(inst);
    if (!best) continue;
    CHECK(rsp_fptas(inst, 1e-3).cost == rsp_exact(inst).cost);
  }
}

TEST_CASE("larger budgets never cost more in the exact DP") {
  std::mt19937_64 rng(46);
  for (int i = 0; i < 50; ++i) {
    RspInstance inst = random_dag(rng, uniform_index(rng, 3, 8), true);
    double prev = INFINITY;
    for (double b = 0.0; b <= 30.0; b += 2.5) {
      inst.budget = b;
      if (!brute_rsp(inst)) continue;
      const double cost = rsp_exact(inst).cost;
      CHECK(cost <= prev);
      prev = cost;
    }
  }
}

TEST_CASE("shortest path ties and reachability") {
  Graph g = parallel_graph(3);
  CHECK(*shortest_path(g, 0, 1, {2.0, 1.0, 1.0}, true) == std::vector<ArcId>{1});
  CHECK_FALSE(shortest_path(g, 1, 0, {1.0, 1.0, 1.0}, true).has_value());
  CHECK(shortest_path(g, 1, 0, {1.0, 1.0, 1.0}, false).has_value());
  CHECK_FALSE(shortest_path(g, 0, 1, {INFINITY, INFINITY, INFINITY}, false).has_value());
}

TEST_CASE("input validation") {
  RspInstance inst = two_arcs(1);
  CHECK_THROWS_AS(rsp_fptas(inst, 0.0), ValidationError);
  CHECK_THROWS_AS(rsp_fptas(inst, 1.5), ValidationError);
  inst.cost = {1};
  CHECK_THROWS_AS(rsp_fptas(inst, 0.5), DimensionMismatch);
  inst = two_arcs(1);
  inst.cost = {1.5, 2};
  CHECK_THROWS_AS(rsp_exact(inst), ValidationError);
}
