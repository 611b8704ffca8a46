#pragma once

// Design on series-parallel graphs with conductance bounds: the budgeted DP
// over the SP-tree, its cost-scaling FPTAS, and the discretization pipeline
// for continuous conductances.

#include <cstdint>
#include <vector>

#include "pbnd/core.hpp"
#include "pbnd/sptree.hpp"

namespace pbnd {

/// Per SP-tree node and integer cost level k: the least resistance reachable
/// with cost at most k, its conductance, and the choice that attains it
/// (leaf: option index or -1 for skip; internal: cost given to the left
/// child). Arrays are truncated at the node's own cap; entries beyond it
/// equal the last one.
struct DPTable {
  std::vector<std::vector<double>> R;
  std::vector<std::vector<double>> C;
  std::vector<std::vector<std::int64_t>> choice;
  std::int64_t U = 0;
  long long iterations = 0;  // (node, k, k') triples visited
};

/// Integer option costs, -1 marking options that are excluded.
using IntCosts = std::vector<std::vector<std::int64_t>>;

DPTable dp_fill(const SPTree& tree, const FixedInstance& inst, const IntCosts& icost,
                std::int64_t U);

/// Smallest k with R(root, k) within the budget, or -1.
std::int64_t dp_answer(const DPTable& table, const SPTree& tree, double B, double tol);

/// Option choice per arc realizing R(root, k).
std::vector<int> dp_reconstruct(const DPTable& table, const SPTree& tree, std::int64_t k);

struct DpStats {
  long long dp_runs = 0;
  long long iterations = 0;
  long long guesses = 0;
};

/// Exact optimum for integral option costs, searching total cost up to U.
/// Throws Infeasible when R(root, U) exceeds the budget.
FixedSolution dp_exact(const FixedInstance& inst, std::int64_t U, double tol = kDefaultTol,
                       DpStats* stats = nullptr);

/// dp_exact with U = sum over arcs of the costliest option.
FixedSolution dp_exact(const FixedInstance& inst, double tol = kDefaultTol,
                       DpStats* stats = nullptr);

/// Rounded costs for one guess p_max: delta = eps*p_max/m, rho = floor(p/delta)
/// for options with p <= p_max, others excluded (-1); U = m*floor(p_max/delta).
/// For p_max == 0 only free options survive and U = 0.
struct ScaledCosts {
  double delta = 0.0;
  IntCosts rho;
  std::int64_t U = 0;
};
ScaledCosts scale_costs(const FixedInstance& inst, double p_max, double eps);

/// (1+eps)-approximation for the option model, eps in (0, 1].
FixedSolution solve_fixed_conductance_fptas(const FixedInstance& inst, double eps,
                                            double tol = kDefaultTol,
                                            DpStats* stats = nullptr);

/// Conductance options for the continuous problem: per arc the grid
/// ylow*(1+eps/6)^i up to ybar, then ybar itself, each priced c*mu + gamma.
struct Discretization {
  FixedInstance fixed;
  double L = 0.0;                    // min over arcs of c*D/m + gamma
  std::vector<double> ylow;          // eps*L/(6*c*m)
  std::vector<std::size_t> grid;     // |I_a|, grid points below or at ybar
  std::vector<double> grid_bound;    // admissible |I_a|
};
Discretization discretize_conductances(const Instance& inst, double eps);

/// Installs y = ybar on every arc; with options (ybar, gamma) this is the
/// option model of a zero-variable-cost bounded instance.
FixedInstance fixed_from_bounds(const Instance& inst);

/// Maps a discrete solution back onto the continuous instance.
Solution to_solution(const Instance& inst, const FixedSolution& fs);

/// (1+eps)-approximation for SP graphs with c > 0 and finite ybar,
/// eps in (0, 1). The answer is verified before it is returned.
Solution solve_sp_fptas(const Instance& inst, double eps, double tol = kDefaultTol,
                        DpStats* stats = nullptr);

}  // namespace pbnd
