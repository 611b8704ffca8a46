#pragma once

// Instance families built from the hardness reductions, plus seeded random
// graphs used as test corpora.

#include <cstdint>
#include <random>
#include <vector>

#include "pbnd/core.hpp"

namespace pbnd {

/// Path gadget for Partition: nodes v_0..v_n, bundle i joins v_i and v_{i+1}
/// by a top arc 2i and a bottom arc 2i+1.
struct PartitionGadget {
  std::vector<long long> a;
  double T = 0.0;
  Instance inst;
  double threshold = 0.0;  // 2 n T^((r+1)/r)
};

/// Throws OddSum when the numbers cannot split evenly.
PartitionGadget gen_partition(const std::vector<long long>& a, double r);

/// Objective of the path taking the top arcs of the bundles in `chosen`:
/// x^((r+1)/r) + 2nT^((r+1)/r) - T^(1/r) x with x the chosen sum.
double partition_objective(const PartitionGadget& g, const std::vector<bool>& chosen);

/// Arc sequence of that path.
std::vector<ArcId> partition_path(const PartitionGadget& g, const std::vector<bool>& chosen);

/// Parallel arcs between two nodes; choosing items with sum mu >= D is the
/// budget C >= D, i.e. B = D^(-r) (+inf for D = 0).
FixedInstance gen_min_knapsack(const std::vector<double>& mu, const std::vector<double>& p,
                               double D, double r = 1.0);

/// The same bundle as a continuous instance with c = 0, ybar = mu, gamma = p.
/// Requires D > 0.
Instance knapsack_instance(const std::vector<double>& mu, const std::vector<double>& p,
                           double D, double r = 1.0);

/// Steiner gadget: the original graph plus a new node t joined to every
/// terminal except the first, which becomes s.
struct SteinerGadget {
  Instance inst;
  std::size_t base_arcs = 0;        // arcs 0..base_arcs-1 are the original edges
  std::vector<NodeId> terminals;
  double mparam = 0.0;              // number of terminals minus one
};

SteinerGadget gen_steiner_gadget(const Graph& g, const std::vector<NodeId>& terminals,
                                 const std::vector<double>& edge_costs, double r);

/// Design installing ybar on the given original edges and on all new arcs.
Solution steiner_to_solution(const SteinerGadget& gadget, const std::vector<ArcId>& tree);

/// Steiner tree from a BFS spanning tree of g by pruning non-terminal leaves.
std::vector<ArcId> spanning_steiner_tree(const Graph& g, const std::vector<NodeId>& terminals);

struct SpGraph {
  Graph graph;
  NodeId s = 0;
  NodeId t = 1;
};

/// Random two-terminal SP graph with exactly m arcs (random orientations).
SpGraph random_sp_graph(std::mt19937_64& rng, std::size_t m);

/// Random connected multigraph with n nodes and m >= n-1 arcs.
Graph random_connected_graph(std::mt19937_64& rng, std::size_t n, std::size_t m);

/// Path with m arcs from node 0 to node m.
Graph path_graph(std::size_t m);

/// m parallel arcs from node 0 to node 1.
Graph parallel_graph(std::size_t m);

double uniform(std::mt19937_64& rng, double lo, double hi);
std::size_t uniform_index(std::mt19937_64& rng, std::size_t lo, std::size_t hi);  // inclusive

}  // namespace pbnd
