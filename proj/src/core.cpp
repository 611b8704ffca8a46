#include "pbnd/core.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include "pbnd/resistance.hpp"

namespace pbnd {

std::vector<std::vector<ArcId>> incidence(const Graph& g) {
  std::vector<std::vector<ArcId>> adj(g.n);
  for (ArcId a = 0; a < g.m(); ++a) {
    adj[g.arcs[a].tail].push_back(a);
    if (g.arcs[a].head != g.arcs[a].tail) adj[g.arcs[a].head].push_back(a);
  }
  return adj;
}

double Instance::demand() const { return std::pow(B, -1.0 / r); }

bool Instance::unbounded() const {
  return std::all_of(ybar.begin(), ybar.end(), [](double v) { return std::isinf(v); });
}

bool Instance::fully_bounded() const {
  return std::none_of(ybar.begin(), ybar.end(), [](double v) { return std::isinf(v); });
}

bool Instance::zero_variable_cost() const {
  return std::all_of(c.begin(), c.end(), [](double v) { return v == 0.0; });
}

bool Instance::zero_fixed_cost() const {
  return std::all_of(gamma.begin(), gamma.end(), [](double v) { return v == 0.0; });
}

namespace {

void validate_graph(const Graph& g, NodeId s, NodeId t) {
  if (g.n < 2) throw ValidationError("graph needs at least two nodes");
  if (s >= g.n || t >= g.n) throw ValidationError("terminal out of range");
  if (s == t) throw ValidationError("s and t must differ");
  for (const Arc& a : g.arcs) {
    if (a.tail >= g.n || a.head >= g.n) throw ValidationError("arc endpoint out of range");
  }
}

}  // namespace

void validate(const Instance& inst) {
  validate_graph(inst.graph, inst.s, inst.t);
  const std::size_t m = inst.m();
  if (inst.c.size() != m || inst.gamma.size() != m || inst.ybar.size() != m)
    throw ValidationError("per-arc vectors must have one entry per arc");
  if (!(inst.r >= 1.0) || std::isinf(inst.r)) throw ValidationError("r must be a finite real >= 1");
  if (!(inst.B > 0.0) || std::isinf(inst.B)) throw ValidationError("B must be a positive real");
  for (std::size_t a = 0; a < m; ++a) {
    if (!(inst.c[a] >= 0.0) || std::isinf(inst.c[a])) throw ValidationError("c must be finite and nonnegative");
    if (!(inst.gamma[a] >= 0.0) || std::isinf(inst.gamma[a]))
      throw ValidationError("gamma must be finite and nonnegative");
    if (!(inst.ybar[a] > 0.0)) throw ValidationError("ybar must be positive");
  }
}

void validate(const FixedInstance& inst) {
  validate_graph(inst.graph, inst.s, inst.t);
  if (inst.options.size() != inst.m()) throw ValidationError("one option list per arc required");
  if (!(inst.r >= 1.0) || std::isinf(inst.r)) throw ValidationError("r must be a finite real >= 1");
  if (!(inst.B > 0.0)) throw ValidationError("B must be positive");
  for (const auto& opts : inst.options) {
    if (opts.empty()) throw ValidationError("every arc needs at least one option");
    for (const Option& o : opts) {
      if (!(o.mu > 0.0) || std::isinf(o.mu)) throw ValidationError("option conductance must be positive and finite");
      if (!(o.p >= 0.0) || std::isinf(o.p)) throw ValidationError("option cost must be finite and nonnegative");
    }
  }
}

double solution_cost(const Instance& inst, std::span<const int> x,
                     std::span<const double> y) {
  double cost = 0.0;
  for (std::size_t a = 0; a < inst.m(); ++a) {
    if (std::isinf(y[a])) {
      cost += inst.c[a] == 0.0 ? inst.gamma[a] * x[a] : kInf;
    } else {
      cost += inst.c[a] * y[a] + inst.gamma[a] * x[a];
    }
  }
  return cost;
}

FixedSolution make_fixed_solution(const FixedInstance& inst,
                                  std::vector<int> choice, double achievedR) {
  FixedSolution sol;
  sol.x.assign(inst.m(), 0);
  sol.y.assign(inst.m(), 0.0);
  for (std::size_t a = 0; a < inst.m(); ++a) {
    if (choice[a] < 0) continue;
    const Option& o = inst.options[a][static_cast<std::size_t>(choice[a])];
    sol.x[a] = 1;
    sol.y[a] = o.mu;
    sol.cost += o.p;
  }
  sol.choice = std::move(choice);
  sol.achievedR = achievedR;
  return sol;
}

VerificationReport verify(const Instance& inst, const Solution& sol, double tol) {
  const std::size_t m = inst.m();
  if (sol.x.size() != m || sol.y.size() != m)
    throw DimensionMismatch("solution has " + std::to_string(sol.y.size()) +
                            " conductances for " + std::to_string(m) + " arcs");
  VerificationReport rep;
  rep.cost = solution_cost(inst, sol.x, sol.y);

  for (std::size_t a = 0; a < m && rep.reason.empty(); ++a) {
    const double y = sol.y[a];
    const std::string arc = "arc " + std::to_string(a);
    if (sol.x[a] != 0 && sol.x[a] != 1) {
      rep.reason = arc + ": x must be 0 or 1";
    } else if (!(y >= 0.0)) {
      rep.reason = arc + ": negative conductance";
    } else if (y > 0.0 && sol.x[a] != 1) {
      rep.reason = arc + ": positive conductance on an arc that is not installed";
    } else if (std::isinf(y) && (inst.c[a] != 0.0 || !std::isinf(inst.ybar[a]))) {
      rep.reason = arc + ": unbounded conductance needs c = 0 and no bound";
    } else if (!std::isinf(inst.ybar[a]) && y > inst.ybar[a] * (1.0 + tol)) {
      rep.reason = arc + ": conductance exceeds its bound";
    }
  }

  rep.achievedR = effective_resistance(inst.graph, sol.y, inst.r, inst.s, inst.t);
  if (rep.reason.empty() && !within_budget(rep.achievedR, inst.B, tol)) {
    std::ostringstream os;
    os.precision(17);
    os << "effective resistance " << rep.achievedR << " exceeds budget " << inst.B;
    rep.reason = os.str();
  }
  rep.feasible = rep.reason.empty();
  return rep;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open " + path);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error("cannot write " + path);
  out << text;
  if (!out) throw Error("write failed for " + path);
}

}  // namespace pbnd
