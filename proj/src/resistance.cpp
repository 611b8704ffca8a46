#include "pbnd/resistance.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <queue>
#include <string>

namespace pbnd {

namespace {

// sign(z) |z|^r
double signed_pow(double z, double r) {
  if (z == 0.0) return 0.0;
  double p = r == 1.0 ? std::abs(z) : std::pow(std::abs(z), r);
  return z > 0.0 ? p : -p;
}

struct CycleTerm {
  ArcId arc;
  double sign;  // +1 when the cycle traverses the arc tail -> head
};

// Exact minimizer over t of sum_i w_i |x_i + t v_i|^(r+1). The derivative
// sum_i w_i v_i sign(z)|z|^r, z = x_i + t v_i, is nondecreasing in t and
// changes sign between the smallest and largest root -x_i/v_i.
double line_min(const std::vector<double>& x, const std::vector<double>& v,
                const std::vector<double>& w, double r, double guess) {
  if (r == 1.0) {
    double num = 0.0, den = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
      num += w[i] * v[i] * x[i];
      den += w[i] * v[i] * v[i];
    }
    return den > 0.0 ? -num / den : 0.0;
  }
  double lo = kInf, hi = -kInf;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (v[i] == 0.0) continue;
    const double root = -x[i] / v[i];
    lo = std::min(lo, root);
    hi = std::max(hi, root);
  }
  if (lo > hi) return 0.0;
  if (lo == hi) return lo;
  double t = std::clamp(guess, lo, hi);
  const double scale = std::max(std::abs(lo), std::abs(hi));
  for (int it = 0; it < 200; ++it) {
    double g = 0.0, dg = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
      if (v[i] == 0.0) continue;
      const double z = x[i] + t * v[i];
      const double az = std::abs(z);
      const double p = std::pow(az, r - 1.0);
      g += w[i] * v[i] * (z >= 0.0 ? az * p : -az * p);
      dg += w[i] * v[i] * v[i] * p;
    }
    if (g == 0.0) return t;
    if (g > 0.0) {
      hi = t;
    } else {
      lo = t;
    }
    double next = dg > 0.0 ? t - g / (r * dg) : 0.5 * (lo + hi);
    if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
    const double step = std::abs(next - t);
    t = next;
    if (step <= 1e-17 * (std::abs(t) + scale)) break;
    if (hi - lo <= 4e-16 * (std::abs(lo) + std::abs(hi))) break;
  }
  return t;
}

// Solves (H + lambda I) p = b in place for symmetric H (row-major, k x k),
// raising lambda until the Cholesky factorization succeeds.
std::vector<double> regularized_solve(std::vector<double> H, std::vector<double> b, std::size_t k) {
  double diag = 0.0;
  for (std::size_t i = 0; i < k; ++i) diag = std::max(diag, H[i * k + i]);
  double lambda = diag > 0.0 ? 1e-13 * diag : 1.0;
  for (;;) {
    std::vector<double> L = H;
    for (std::size_t i = 0; i < k; ++i) L[i * k + i] += lambda;
    bool ok = true;
    for (std::size_t j = 0; j < k && ok; ++j) {
      double d = L[j * k + j];
      for (std::size_t p = 0; p < j; ++p) d -= L[j * k + p] * L[j * k + p];
      if (!(d > 0.0)) {
        ok = false;
        break;
      }
      d = std::sqrt(d);
      L[j * k + j] = d;
      for (std::size_t i = j + 1; i < k; ++i) {
        double e = L[i * k + j];
        for (std::size_t p = 0; p < j; ++p) e -= L[i * k + p] * L[j * k + p];
        L[i * k + j] = e / d;
      }
    }
    if (!ok) {
      lambda *= 100.0;
      continue;
    }
    for (std::size_t i = 0; i < k; ++i) {
      for (std::size_t p = 0; p < i; ++p) b[i] -= L[i * k + p] * b[p];
      b[i] /= L[i * k + i];
    }
    for (std::size_t i = k; i-- > 0;) {
      for (std::size_t p = i + 1; p < k; ++p) b[i] -= L[p * k + i] * b[p];
      b[i] /= L[i * k + i];
    }
    return b;
  }
}

}  // namespace

FlowState min_energy_flow(const Graph& g, std::span<const double> y, double r,
                          NodeId s, NodeId t, const EnergyOptions& opts) {
  const std::size_t m = g.m();
  if (y.size() != m) throw DimensionMismatch("conductance vector has wrong length");
  if (s >= g.n || t >= g.n || s == t) throw ValidationError("invalid terminals");

  std::vector<double> w(m, 0.0);  // arc resistance 1/y^r on the support
  std::vector<std::vector<ArcId>> adj(g.n);
  for (ArcId a = 0; a < m; ++a) {
    if (!(y[a] >= 0.0)) throw ValidationError("negative conductance");
    if (std::isinf(y[a])) throw ValidationError("min_energy_flow requires finite conductances");
    if (y[a] == 0.0 || g.arcs[a].tail == g.arcs[a].head) continue;
    w[a] = 1.0 / std::pow(y[a], r);
    adj[g.arcs[a].tail].push_back(a);
    adj[g.arcs[a].head].push_back(a);
  }

  // BFS spanning tree of the support component rooted at t.
  constexpr ArcId kNone = static_cast<ArcId>(-1);
  std::vector<ArcId> parent_arc(g.n, kNone);
  std::vector<NodeId> parent(g.n, 0);
  std::vector<std::size_t> depth(g.n, 0);
  std::vector<char> seen(g.n, 0), in_tree(m, 0);
  std::vector<NodeId> order{t};
  seen[t] = 1;
  for (std::size_t head = 0; head < order.size(); ++head) {
    NodeId v = order[head];
    for (ArcId a : adj[v]) {
      NodeId u = g.other_end(a, v);
      if (seen[u]) continue;
      seen[u] = 1;
      parent_arc[u] = a;
      parent[u] = v;
      depth[u] = depth[v] + 1;
      in_tree[a] = 1;
      order.push_back(u);
    }
  }
  if (!seen[s]) throw Disconnected("s and t are not connected in the support");

  FlowState st;
  st.f.assign(m, 0.0);
  st.pi.assign(g.n, 0.0);

  // Unit flow along the tree path s -> t.
  for (NodeId v = s; v != t; v = parent[v]) {
    ArcId a = parent_arc[v];
    st.f[a] = g.arcs[a].tail == v ? 1.0 : -1.0;
  }

  // Fundamental cycles: non-tree arc u -> v, then the tree path v -> u.
  std::vector<std::vector<CycleTerm>> cycles;
  for (ArcId a = 0; a < m; ++a) {
    if (w[a] == 0.0 || in_tree[a] || !seen[g.arcs[a].tail]) continue;
    std::vector<CycleTerm> cyc{{a, 1.0}};
    NodeId u = g.arcs[a].tail, v = g.arcs[a].head;
    std::vector<CycleTerm> down;  // from the LCA towards u, reversed later
    while (u != v) {
      if (depth[v] >= depth[u]) {
        ArcId b = parent_arc[v];
        cyc.push_back({b, g.arcs[b].tail == v ? 1.0 : -1.0});
        v = parent[v];
      } else {
        ArcId b = parent_arc[u];
        down.push_back({b, g.arcs[b].tail == u ? -1.0 : 1.0});
        u = parent[u];
      }
    }
    cyc.insert(cyc.end(), down.rbegin(), down.rend());
    cycles.push_back(std::move(cyc));
  }

  auto drop = [&](ArcId a) { return signed_pow(st.f[a], r) * w[a]; };
  auto energy = [&] {
    double e = 0.0;
    for (ArcId a = 0; a < m; ++a)
      if (w[a] != 0.0) e += st.f[a] * drop(a);
    return e;
  };
  auto residual = [&] {
    double worst = 0.0;
    for (const auto& cyc : cycles) {
      double sum = 0.0;
      for (const auto& term : cyc) sum += term.sign * drop(term.arc);
      worst = std::max(worst, std::abs(sum));
    }
    return worst;
  };

  auto cap_hit = [&] {
    return NonConvergence("energy solver hit the line-search cap (" +
                              std::to_string(opts.max_line_searches) + ") before reaching tol",
                          opts.max_line_searches, opts.tol);
  };

  // Newton steps in cycle space with an exact line search along each
  // direction. The Hessian degenerates where flows vanish (r > 1), which the
  // regularization absorbs; convergence there is linear instead of quadratic.
  const std::size_t k = cycles.size();
  std::vector<std::vector<std::pair<std::size_t, double>>> arc_cycles(m);
  for (std::size_t i = 0; i < k; ++i)
    for (const auto& term : cycles[i]) arc_cycles[term.arc].push_back({i, term.sign});
  std::vector<ArcId> support;
  for (ArcId a = 0; a < m; ++a)
    if (!arc_cycles[a].empty()) support.push_back(a);

  std::vector<double> grad(k), H(k * k), x, v, ws;
  constexpr int kNewtonRounds = 200;
  for (int round = 0; k > 0; ++round) {
    std::fill(grad.begin(), grad.end(), 0.0);
    for (std::size_t i = 0; i < k; ++i)
      for (const auto& term : cycles[i]) grad[i] += term.sign * drop(term.arc);
    double worst = 0.0;
    for (double gi : grad) worst = std::max(worst, std::abs(gi));
    if (worst <= opts.tol * (1.0 + energy()) || round == kNewtonRounds) break;
    if (st.line_searches >= opts.max_line_searches) throw cap_hit();

    std::fill(H.begin(), H.end(), 0.0);
    for (ArcId a : support) {
      const double h = r == 1.0 ? w[a] : r * w[a] * std::pow(std::abs(st.f[a]), r - 1.0);
      for (const auto& [i, si] : arc_cycles[a])
        for (const auto& [j, sj] : arc_cycles[a]) H[i * k + j] += si * sj * h;
    }
    for (double& gi : grad) gi = -gi;
    const std::vector<double> p = regularized_solve(H, grad, k);

    x.clear();
    v.clear();
    ws.clear();
    for (ArcId a : support) {
      double dir = 0.0;
      for (const auto& [i, si] : arc_cycles[a]) dir += si * p[i];
      x.push_back(st.f[a]);
      v.push_back(dir);
      ws.push_back(w[a]);
    }
    const double t = line_min(x, v, ws, r, 1.0);
    for (std::size_t i = 0; i < support.size(); ++i) st.f[support[i]] += t * v[i];
    ++st.line_searches;
  }

  // Round-robin exact minimization along single cycles finishes whatever
  // the Newton phase left.
  std::vector<double> q, cw, ones;
  for (;;) {
    st.residual = residual();
    if (st.residual <= opts.tol * (1.0 + energy())) break;
    for (const auto& cyc : cycles) {
      if (st.line_searches >= opts.max_line_searches) throw cap_hit();
      q.clear();
      cw.clear();
      ones.assign(cyc.size(), 1.0);
      for (const auto& term : cyc) {
        q.push_back(term.sign * st.f[term.arc]);
        cw.push_back(w[term.arc]);
      }
      const double theta = line_min(q, ones, cw, r, 0.0);
      for (const auto& term : cyc) st.f[term.arc] += term.sign * theta;
      ++st.line_searches;
    }
  }

  for (std::size_t i = 1; i < order.size(); ++i) {
    NodeId v = order[i];
    ArcId a = parent_arc[v];
    st.pi[v] = g.arcs[a].tail == v ? st.pi[parent[v]] + drop(a)
                                   : st.pi[parent[v]] - drop(a);
  }
  st.energy = energy();
  return st;
}

double effective_resistance(const Graph& g, std::span<const double> y,
                            double r, NodeId s, NodeId t,
                            const EnergyOptions& opts) {
  if (y.size() != g.m()) throw DimensionMismatch("conductance vector has wrong length");

  // Contract arcs of infinite conductance.
  std::vector<NodeId> rep(g.n);
  std::iota(rep.begin(), rep.end(), NodeId{0});
  auto find = [&](NodeId v) {
    while (rep[v] != v) v = rep[v] = rep[rep[v]];
    return v;
  };
  bool any_inf = false;
  for (ArcId a = 0; a < g.m(); ++a) {
    if (std::isinf(y[a]) && y[a] > 0.0) {
      any_inf = true;
      NodeId u = find(g.arcs[a].tail), v = find(g.arcs[a].head);
      if (u != v) rep[std::max(u, v)] = std::min(u, v);
    }
  }

  try {
    if (!any_inf) return min_energy_flow(g, y, r, s, t, opts).energy;
    if (find(s) == find(t)) return 0.0;
    Graph h{g.n, {}};
    std::vector<double> hy;
    for (ArcId a = 0; a < g.m(); ++a) {
      if (std::isinf(y[a])) continue;
      h.arcs.push_back({find(g.arcs[a].tail), find(g.arcs[a].head)});
      hy.push_back(y[a]);
    }
    return min_energy_flow(h, hy, r, find(s), find(t), opts).energy;
  } catch (const Disconnected&) {
    return kInf;
  }
}

double effective_conductance(const Graph& g, std::span<const double> y,
                             double r, NodeId s, NodeId t,
                             const EnergyOptions& opts) {
  double R = effective_resistance(g, y, r, s, t, opts);
  if (std::isinf(R)) return 0.0;
  return std::pow(R, -1.0 / r);
}

}  // namespace pbnd
