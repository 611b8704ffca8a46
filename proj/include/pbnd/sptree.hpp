#pragma once

#include <span>
#include <vector>

#include "pbnd/core.hpp"

namespace pbnd {

enum class SpKind { Leaf, Series, Parallel };

struct SpNode {
  SpKind kind = SpKind::Leaf;
  ArcId arc = 0;       // Leaf only
  int left = -1;       // Series/Parallel only
  int right = -1;
  NodeId source = 0;   // terminals of the represented subgraph
  NodeId sink = 0;
};

/// Full binary decomposition tree of a two-terminal series-parallel graph.
/// For a Series node the left child runs source -> mid and the right child
/// mid -> sink; both children of a Parallel node share its terminals. Leaf
/// terminals follow the traversal direction, which may oppose the arc.
struct SPTree {
  std::vector<SpNode> nodes;
  int root = -1;

  std::size_t leaf_count() const { return (nodes.size() + 1) / 2; }
};

/// Recognizes (s, t)-series-parallel graphs by repeated series and parallel
/// reductions of the underlying undirected multigraph. Throws
/// NotSeriesParallel.
SPTree decompose(const Graph& g, NodeId s, NodeId t);

/// Structural check of the tree invariants against g; empty string if valid.
std::string check_tree(const SPTree& tree, const Graph& g, NodeId s, NodeId t);

// Composition primitives. Resistances compose in series, conductances in
// parallel; the conversions treat 0 and +inf as each other's reciprocal.
double to_conductance(double R, double r);
double to_resistance(double C, double r);
double leaf_resistance(double y, double r);

/// Per-node resistance and conductance for conductances y (0 = absent,
/// +inf = short circuit).
struct SpValues {
  std::vector<double> R;
  std::vector<double> C;
};
SpValues evaluate_sp(const SPTree& tree, std::span<const double> y, double r);

double resistance_sp(const SPTree& tree, std::span<const double> y, double r);
double conductance_sp(const SPTree& tree, std::span<const double> y, double r);

/// Magnitudes of the unit s-t flow per arc, split at parallel nodes in
/// proportion to the branch conductances. Requires finite y.
std::vector<double> flows_sp(const SPTree& tree, std::span<const double> y, double r);

}  // namespace pbnd
