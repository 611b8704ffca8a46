#include "pbnd/sptree.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <string>
#include <utility>

namespace pbnd {

namespace {

struct LiveEdge {
  NodeId u, v;  // unordered end points
  int node;     // tree node represented by this edge
  bool alive = true;
};

void orient(SPTree& tree, const std::vector<NodeId>& mid, int id, NodeId from, NodeId to) {
  SpNode& node = tree.nodes[static_cast<std::size_t>(id)];
  node.source = from;
  node.sink = to;
  if (node.kind == SpKind::Leaf) return;
  if (node.kind == SpKind::Parallel) {
    orient(tree, mid, node.left, from, to);
    orient(tree, mid, node.right, from, to);
    return;
  }
  const NodeId middle = mid[static_cast<std::size_t>(id)];
  const SpNode& l = tree.nodes[static_cast<std::size_t>(node.left)];
  // Until oriented, a node's (source, sink) holds its unordered end points.
  bool left_at_source = (l.source == from && l.sink == middle) || (l.sink == from && l.source == middle);
  if (!left_at_source) std::swap(node.left, node.right);
  int left = node.left, right = node.right;
  orient(tree, mid, left, from, middle);
  orient(tree, mid, right, middle, to);
}

}  // namespace

SPTree decompose(const Graph& g, NodeId s, NodeId t) {
  if (s >= g.n || t >= g.n || s == t) throw ValidationError("invalid terminals");
  if (g.m() == 0) throw NotSeriesParallel("graph has no arcs");

  SPTree tree;
  std::vector<NodeId> mid;
  std::vector<LiveEdge> edges;
  std::vector<std::size_t> degree(g.n, 0);
  for (ArcId a = 0; a < g.m(); ++a) {
    const Arc& arc = g.arcs[a];
    if (arc.tail == arc.head) throw NotSeriesParallel("self-loop on arc " + std::to_string(a));
    tree.nodes.push_back({SpKind::Leaf, a, -1, -1, arc.tail, arc.head});
    mid.push_back(0);
    edges.push_back({arc.tail, arc.head, static_cast<int>(a)});
    ++degree[arc.tail];
    ++degree[arc.head];
  }

  auto make_node = [&](SpKind kind, int left, int right, NodeId u, NodeId v, NodeId middle) {
    tree.nodes.push_back({kind, 0, left, right, u, v});
    mid.push_back(middle);
    return static_cast<int>(tree.nodes.size() - 1);
  };

  std::size_t alive = edges.size();
  for (bool changed = true; changed && alive > 1;) {
    changed = false;

    // Merge parallel edges (same unordered end points).
    std::map<std::pair<NodeId, NodeId>, std::size_t> first;
    for (std::size_t e = 0; e < edges.size(); ++e) {
      if (!edges[e].alive) continue;
      auto key = std::minmax(edges[e].u, edges[e].v);
      auto [it, inserted] = first.emplace(key, e);
      if (inserted) continue;
      LiveEdge& keep = edges[it->second];
      keep.node = make_node(SpKind::Parallel, keep.node, edges[e].node, keep.u, keep.v, 0);
      edges[e].alive = false;
      --degree[edges[e].u];
      --degree[edges[e].v];
      --alive;
      changed = true;
    }

    // Contract interior vertices of degree two.
    for (NodeId v = 0; v < g.n; ++v) {
      if (v == s || v == t || degree[v] == 0) continue;
      if (degree[v] == 1) throw NotSeriesParallel("vertex " + std::to_string(v) + " is a dead end");
      if (degree[v] != 2) continue;
      std::size_t pair[2];
      int found = 0;
      for (std::size_t e = 0; e < edges.size() && found < 2; ++e) {
        if (edges[e].alive && (edges[e].u == v || edges[e].v == v)) pair[found++] = e;
      }
      LiveEdge& e1 = edges[pair[0]];
      LiveEdge& e2 = edges[pair[1]];
      NodeId a = e1.u == v ? e1.v : e1.u;
      NodeId b = e2.u == v ? e2.v : e2.u;
      if (a == b) throw NotSeriesParallel("vertex " + std::to_string(v) + " lies on a pendant cycle");
      e1.node = make_node(SpKind::Series, e1.node, e2.node, a, b, v);
      e1.u = a;
      e1.v = b;
      e2.alive = false;
      degree[v] = 0;
      --alive;
      changed = true;
    }
  }

  if (alive != 1) throw NotSeriesParallel("graph is not series-parallel with respect to (s, t)");
  for (const LiveEdge& e : edges) {
    if (!e.alive) continue;
    if (std::minmax(e.u, e.v) != std::minmax(s, t))
      throw NotSeriesParallel("reduction does not end in an s-t edge");
    tree.root = e.node;
  }
  orient(tree, mid, tree.root, s, t);
  return tree;
}

std::string check_tree(const SPTree& tree, const Graph& g, NodeId s, NodeId t) {
  const std::size_t m = g.m();
  if (tree.nodes.size() != 2 * m - 1) return "tree must have 2m-1 nodes";
  if (tree.root < 0 || static_cast<std::size_t>(tree.root) >= tree.nodes.size()) return "bad root";
  const SpNode& root = tree.nodes[static_cast<std::size_t>(tree.root)];
  if (root.source != s || root.sink != t) return "root terminals must be (s, t)";

  std::vector<int> parents(tree.nodes.size(), 0), leaf_hits(m, 0);
  for (std::size_t i = 0; i < tree.nodes.size(); ++i) {
    const SpNode& n = tree.nodes[i];
    if (n.kind == SpKind::Leaf) {
      if (n.arc >= m) return "leaf refers to a missing arc";
      ++leaf_hits[n.arc];
      const Arc& a = g.arcs[n.arc];
      if (std::minmax(a.tail, a.head) != std::minmax(n.source, n.sink)) return "leaf terminals differ from its arc";
      continue;
    }
    for (int c : {n.left, n.right}) {
      if (c < 0 || static_cast<std::size_t>(c) >= tree.nodes.size()) return "dangling child";
      ++parents[static_cast<std::size_t>(c)];
    }
    const SpNode& l = tree.nodes[static_cast<std::size_t>(n.left)];
    const SpNode& r = tree.nodes[static_cast<std::size_t>(n.right)];
    if (n.kind == SpKind::Series) {
      if (l.source != n.source || l.sink != r.source || r.sink != n.sink) return "series children do not chain";
    } else {
      if (l.source != n.source || l.sink != n.sink || r.source != n.source || r.sink != n.sink)
        return "parallel children do not share terminals";
    }
  }
  for (std::size_t a = 0; a < m; ++a)
    if (leaf_hits[a] != 1) return "arc " + std::to_string(a) + " is not exactly one leaf";
  for (std::size_t i = 0; i < tree.nodes.size(); ++i) {
    int expect = static_cast<int>(i) == tree.root ? 0 : 1;
    if (parents[i] != expect) return "node " + std::to_string(i) + " has a wrong parent count";
  }
  return {};
}

double to_conductance(double R, double r) {
  if (std::isinf(R)) return 0.0;
  if (R == 0.0) return kInf;
  return std::pow(R, -1.0 / r);
}

double to_resistance(double C, double r) {
  if (C == 0.0) return kInf;
  if (std::isinf(C)) return 0.0;
  return std::pow(C, -r);
}

double leaf_resistance(double y, double r) {
  if (y == 0.0) return kInf;
  if (std::isinf(y)) return 0.0;
  return 1.0 / std::pow(y, r);
}

// Children always precede their parent in `nodes`, so index order is a valid
// bottom-up order.
SpValues evaluate_sp(const SPTree& tree, std::span<const double> y, double r) {
  SpValues val;
  val.R.resize(tree.nodes.size());
  val.C.resize(tree.nodes.size());
  for (std::size_t i = 0; i < tree.nodes.size(); ++i) {
    const SpNode& n = tree.nodes[i];
    switch (n.kind) {
      case SpKind::Leaf:
        val.R[i] = leaf_resistance(y[n.arc], r);
        val.C[i] = y[n.arc];
        break;
      case SpKind::Series:
        val.R[i] = val.R[static_cast<std::size_t>(n.left)] + val.R[static_cast<std::size_t>(n.right)];
        val.C[i] = to_conductance(val.R[i], r);
        break;
      case SpKind::Parallel:
        val.C[i] = val.C[static_cast<std::size_t>(n.left)] + val.C[static_cast<std::size_t>(n.right)];
        val.R[i] = to_resistance(val.C[i], r);
        break;
    }
  }
  return val;
}

double resistance_sp(const SPTree& tree, std::span<const double> y, double r) {
  return evaluate_sp(tree, y, r).R[static_cast<std::size_t>(tree.root)];
}

double conductance_sp(const SPTree& tree, std::span<const double> y, double r) {
  return evaluate_sp(tree, y, r).C[static_cast<std::size_t>(tree.root)];
}

std::vector<double> flows_sp(const SPTree& tree, std::span<const double> y, double r) {
  const SpValues val = evaluate_sp(tree, y, r);
  std::vector<double> node_flow(tree.nodes.size(), 0.0), f(y.size(), 0.0);
  if (val.C[static_cast<std::size_t>(tree.root)] > 0.0) node_flow[static_cast<std::size_t>(tree.root)] = 1.0;
  for (std::size_t i = tree.nodes.size(); i-- > 0;) {
    const SpNode& n = tree.nodes[i];
    const double flow = node_flow[i];
    if (n.kind == SpKind::Leaf) {
      f[n.arc] = flow;
    } else if (n.kind == SpKind::Series) {
      node_flow[static_cast<std::size_t>(n.left)] = flow;
      node_flow[static_cast<std::size_t>(n.right)] = flow;
    } else if (flow != 0.0) {
      for (int c : {n.left, n.right})
        node_flow[static_cast<std::size_t>(c)] = flow * val.C[static_cast<std::size_t>(c)] / val.C[i];
    }
  }
  return f;
}

}  // namespace pbnd
