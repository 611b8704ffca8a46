#pragma once

#include <span>
#include <vector>

#include "pbnd/core.hpp"

namespace pbnd {

/// Unit s-t potential-based flow of a network with given conductances.
struct FlowState {
  std::vector<double> f;   // signed flow per arc, 0 off the support
  std::vector<double> pi;  // potentials, pi[t] == 0
  double energy = 0.0;     // sum |f_a|^(r+1) / y_a^r == pi[s] - pi[t]
  double residual = 0.0;   // max |potential drop around a fundamental cycle|
  long long line_searches = 0;
};

struct EnergyOptions {
  double tol = 1e-10;
  long long max_line_searches = 1'000'000;
};

/// Minimizes the flow energy over unit s-t flows supported on {a : y_a > 0}
/// in the cycle space of a spanning tree: Newton steps with exact line
/// searches, then exact line searches along single fundamental cycles.
/// Requires finite y. Throws Disconnected or NonConvergence.
FlowState min_energy_flow(const Graph& g, std::span<const double> y, double r,
                          NodeId s, NodeId t, const EnergyOptions& opts = {});

/// Effective resistance of the network induced by y; +inf when s and t are
/// separated. Arcs with y = +inf are contracted.
double effective_resistance(const Graph& g, std::span<const double> y,
                            double r, NodeId s, NodeId t,
                            const EnergyOptions& opts = {});

/// R^(-1/r), and 0 for a disconnected network.
double effective_conductance(const Graph& g, std::span<const double> y,
                             double r, NodeId s, NodeId t,
                             const EnergyOptions& opts = {});

}  // namespace pbnd
