#pragma once

// Data model shared by all solvers: the design instance, its discrete
// fixed-conductance variant, solutions, and the feasibility verifier.

#include <cstddef>
#include <limits>
#include <span>
#include <string>
#include <vector>

#include "pbnd/errors.hpp"

namespace pbnd {

using NodeId = std::size_t;
using ArcId = std::size_t;

inline constexpr double kInf = std::numeric_limits<double>::infinity();

/// Conductance sentinel for arcs that are made arbitrarily efficient
/// (legal only when the arc has zero variable cost and no bound).
inline constexpr double kUnbounded = kInf;

/// Default relative slack for every comparison against the budget B.
inline constexpr double kDefaultTol = 1e-9;

struct Arc {
  NodeId tail = 0;
  NodeId head = 0;
};

/// Directed multigraph. Parallel and antiparallel arcs are allowed; arc
/// direction only fixes the sign convention of flows.
struct Graph {
  std::size_t n = 0;
  std::vector<Arc> arcs;

  std::size_t m() const { return arcs.size(); }
  NodeId other_end(ArcId a, NodeId v) const {
    return arcs[a].tail == v ? arcs[a].head : arcs[a].tail;
  }
};

/// Undirected incidence lists, arcs in ascending index order per node.
std::vector<std::vector<ArcId>> incidence(const Graph& g);

struct Instance {
  Graph graph;
  NodeId s = 0;
  NodeId t = 1;
  double r = 1.0;
  std::vector<double> c;      // variable cost per unit conductance
  std::vector<double> gamma;  // fixed installation cost
  std::vector<double> ybar;   // conductance bound, kInf when unbounded
  double B = 1.0;             // resistance budget

  std::size_t m() const { return graph.m(); }
  /// Demand D = B^(-1/r) in the conductance form of the budget.
  double demand() const;
  bool unbounded() const;  // ybar == inf everywhere
  bool fully_bounded() const;
  bool zero_variable_cost() const;
  bool zero_fixed_cost() const;
};

/// Throws ValidationError when an invariant does not hold.
void validate(const Instance& inst);

struct Solution {
  std::vector<int> x;
  std::vector<double> y;  // kUnbounded allowed, see Instance
  double cost = 0.0;
  double achievedR = kInf;
};

/// Sum of c_a*y_a + gamma_a*x_a; an unbounded arc contributes gamma_a only.
double solution_cost(const Instance& inst, std::span<const int> x,
                     std::span<const double> y);

struct Option {
  double mu = 0.0;  // conductance
  double p = 0.0;   // installation cost
};

/// Discrete variant: every arc offers a list of (conductance, cost) options
/// and may also be left out.
struct FixedInstance {
  Graph graph;
  NodeId s = 0;
  NodeId t = 1;
  double r = 1.0;
  double B = 1.0;  // may be +inf (vacuous budget)
  std::vector<std::vector<Option>> options;

  std::size_t m() const { return graph.m(); }
};

void validate(const FixedInstance& inst);

/// One chosen option per arc, -1 meaning the arc is not installed.
struct FixedSolution {
  std::vector<int> choice;
  std::vector<int> x;
  std::vector<double> y;
  double cost = 0.0;
  double achievedR = kInf;
};

FixedSolution make_fixed_solution(const FixedInstance& inst,
                                  std::vector<int> choice, double achievedR);

/// Budget test R <= B*(1+tol); +inf <= +inf holds.
inline bool within_budget(double R, double B, double tol) {
  return R <= B * (1.0 + tol);
}

struct VerificationReport {
  bool feasible = false;
  double achievedR = kInf;
  double cost = 0.0;
  std::string reason;  // empty when feasible
};

/// Checks bounds, x/y consistency and the resistance budget. The resistance
/// is recomputed from scratch with the energy solver.
VerificationReport verify(const Instance& inst, const Solution& sol,
                          double tol = kDefaultTol);

// JSON I/O. Infinite values are encoded as the string "inf".
Instance parse_instance(const std::string& text);
std::string write_instance(const Instance& inst);
Solution parse_solution(const std::string& text);
std::string write_solution(const Solution& sol);

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& text);

}  // namespace pbnd
