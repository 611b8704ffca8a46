#include "pbnd/cli.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <iostream>
#include <optional>
#include <random>
#include <sstream>

#include "pbnd/core.hpp"
#include "pbnd/generators.hpp"
#include "pbnd/json_io.hpp"
#include "pbnd/oracle.hpp"
#include "pbnd/pathdesign.hpp"
#include "pbnd/resistance.hpp"
#include "pbnd/spdesign.hpp"
#include "pbnd/sptree.hpp"

namespace pbnd::cli {

namespace {

struct Config {
  std::string in;
  std::string out;
  std::string sol;
  std::string meta;
  std::string mode = "auto";
  std::string family;
  double eps = 0.1;
  double tol = kDefaultTol;
  std::uint64_t seed = 1;
  std::optional<double> r;
  unsigned threads = 1;
};

// Failure that maps directly onto an exit code.
struct Exit {
  int code;
  std::string message;
};

void emit(const Config& cfg, std::ostream& out, const std::string& text) {
  if (cfg.out.empty()) {
    out << text;
  } else {
    write_file(cfg.out, text);
  }
}

Instance load_instance(const Config& cfg) {
  if (cfg.in.empty()) throw Exit{kUsage, "--in is required"};
  Instance inst = parse_instance(read_file(cfg.in));
  if (cfg.r) {
    inst.r = *cfg.r;
    validate(inst);
  }
  return inst;
}

bool is_sp(const Instance& inst) {
  try {
    decompose(inst.graph, inst.s, inst.t);
    return true;
  } catch (const NotSeriesParallel&) {
    return false;
  }
}

bool all_positive(const std::vector<double>& v) {
  for (double x : v)
    if (!(x > 0.0)) return false;
  return true;
}

bool integral(const std::vector<double>& v) {
  for (double x : v)
    if (std::floor(x) != x) return false;
  return true;
}

std::string pick_mode(const Instance& inst) {
  if (inst.unbounded()) {
    if (inst.zero_variable_cost() || inst.zero_fixed_cost()) return "path-exact";
    return "path-fptas";
  }
  if (!inst.fully_bounded())
    throw Exit{kUnsupported, "mixed bounded and unbounded arcs are not covered by any solver"};
  if (!is_sp(inst))
    throw Exit{kUnsupported, "bounded conductances on a non-series-parallel graph are APX-hard; no solver available"};
  if (all_positive(inst.c)) return "sp-fptas";
  if (inst.zero_variable_cost() && integral(inst.gamma)) return "sp-exact";
  throw Exit{kUnsupported, "bounded SP instances need c > 0 on every arc, or c == 0 with integral gamma"};
}

void require_eps(double eps, bool open_top) {
  const bool ok = eps > 0.0 && (open_top ? eps < 1.0 : eps <= 1.0);
  if (!ok) throw Exit{kUsage, std::string("--eps must lie in (0, 1") + (open_top ? ")" : "]") + " for this mode"};
}

Solution solve_with(const Instance& inst, const std::string& mode, const Config& cfg) {
  if (mode == "path-exact") {
    if (!inst.unbounded()) throw Exit{kUnsupported, "path-exact needs ybar == inf"};
    if (inst.zero_variable_cost()) return to_solution(inst, solve_fixed_cost_only(inst));
    if (inst.zero_fixed_cost()) return to_solution(inst, solve_variable_cost_only(inst));
    throw Exit{kUnsupported, "path-exact needs c == 0 or gamma == 0; use path-fptas"};
  }
  if (mode == "path-fptas") {
    require_eps(cfg.eps, false);
    if (!inst.unbounded()) throw Exit{kUnsupported, "path-fptas needs ybar == inf"};
    PathFptasOptions opts;
    opts.threads = cfg.threads;
    return to_solution(inst, solve_path_fptas(inst, cfg.eps, opts));
  }
  if (mode == "sp-fptas") {
    require_eps(cfg.eps, true);
    return solve_sp_fptas(inst, cfg.eps, cfg.tol);
  }
  if (mode == "sp-exact") {
    if (!inst.fully_bounded() || !inst.zero_variable_cost() || !integral(inst.gamma))
      throw Exit{kUnsupported, "sp-exact needs finite ybar, c == 0 and integral gamma"};
    Solution sol = to_solution(inst, dp_exact(fixed_from_bounds(inst), cfg.tol / 2.0));
    const VerificationReport rep = verify(inst, sol, cfg.tol);
    if (!rep.feasible) throw Exit{kInfeasible, "exact design failed verification: " + rep.reason};
    sol.achievedR = rep.achievedR;
    return sol;
  }
  if (mode == "brute") {
    if (inst.unbounded()) return to_solution(inst, brute_paths_unbounded(inst));
    if (inst.fully_bounded() && all_positive(inst.c)) return brute_subsets_continuous_sp(inst, cfg.tol);
    if (inst.fully_bounded() && inst.zero_variable_cost()) {
      Solution sol = to_solution(inst, brute_subsets_fixed(fixed_from_bounds(inst), cfg.tol));
      sol.achievedR = effective_resistance(inst.graph, sol.y, inst.r, inst.s, inst.t);
      return sol;
    }
    throw Exit{kUnsupported, "no brute-force oracle covers this instance shape"};
  }
  throw Exit{kUsage, "unknown mode '" + mode + "'"};
}

int cmd_solve(const Config& cfg, std::ostream& out) {
  const Instance inst = load_instance(cfg);
  const std::string mode = cfg.mode == "auto" ? pick_mode(inst) : cfg.mode;
  const Solution sol = solve_with(inst, mode, cfg);
  Json doc = to_json(sol);
  Json meta;
  meta["mode"] = mode;
  meta["eps"] = cfg.eps;
  meta["tol"] = cfg.tol;
  doc["meta"] = std::move(meta);
  emit(cfg, out, doc.dump() + "\n");
  return kOk;
}

int cmd_verify(const Config& cfg, std::ostream& out) {
  const Instance inst = load_instance(cfg);
  if (cfg.sol.empty()) throw Exit{kUsage, "--sol is required"};
  const Solution sol = parse_solution(read_file(cfg.sol));
  const VerificationReport rep = verify(inst, sol, cfg.tol);
  Json doc;
  doc["feasible"] = rep.feasible;
  doc["achievedR"] = number_or_inf(rep.achievedR);
  doc["cost"] = number_or_inf(rep.cost);
  doc["B"] = inst.B;
  if (!rep.feasible) doc["reason"] = rep.reason;
  emit(cfg, out, doc.dump() + "\n");
  return rep.feasible ? kOk : kInfeasible;
}

int cmd_resistance(const Config& cfg, std::ostream& out) {
  const Instance inst = load_instance(cfg);
  std::vector<double> y = inst.ybar;
  if (!cfg.sol.empty()) y = parse_solution(read_file(cfg.sol)).y;
  if (y.size() != inst.m()) throw DimensionMismatch("solution does not match the instance");
  const double R = effective_resistance(inst.graph, y, inst.r, inst.s, inst.t);
  Json doc;
  doc["R"] = number_or_inf(R);
  doc["C"] = number_or_inf(to_conductance(R, inst.r));
  emit(cfg, out, doc.dump() + "\n");
  return kOk;
}

std::vector<double> random_ints(std::mt19937_64& rng, std::size_t n, std::size_t lo, std::size_t hi) {
  std::vector<double> v;
  for (std::size_t i = 0; i < n; ++i) v.push_back(static_cast<double>(uniform_index(rng, lo, hi)));
  return v;
}

int cmd_gen(const Config& cfg, std::ostream& out) {
  std::mt19937_64 rng(cfg.seed);
  const double r = cfg.r.value_or(1.0);
  Json meta;
  meta["family"] = cfg.family;
  meta["seed"] = cfg.seed;
  meta["r"] = r;
  Instance inst;

  if (cfg.family == "partition") {
    std::vector<long long> a(uniform_index(rng, 4, 6));
    for (auto& v : a) v = static_cast<long long>(uniform_index(rng, 1, 9));
    long long sum = 0;
    for (auto v : a) sum += v;
    if (sum % 2 != 0) ++a.back();
    const PartitionGadget g = gen_partition(a, r);
    inst = g.inst;
    meta["a"] = a;
    meta["T"] = g.T;
    meta["threshold"] = g.threshold;
  } else if (cfg.family == "knapsack") {
    const std::vector<double> mu = random_ints(rng, 6, 1, 10);
    const std::vector<double> p = random_ints(rng, 6, 1, 20);
    double total = 0.0;
    for (double v : mu) total += v;
    const double D = std::floor(total / 2.0);
    inst = knapsack_instance(mu, p, D, r);
    meta["mu"] = mu;
    meta["p"] = p;
    meta["D"] = D;
  } else if (cfg.family == "steiner") {
    const std::size_t n = 6;
    const Graph g = random_connected_graph(rng, n, 9);
    std::vector<NodeId> nodes(n);
    for (NodeId v = 0; v < n; ++v) nodes[v] = v;
    std::shuffle(nodes.begin(), nodes.end(), rng);
    const std::vector<NodeId> terminals(nodes.begin(), nodes.begin() + 3);
    const SteinerGadget sg = gen_steiner_gadget(g, terminals, random_ints(rng, g.m(), 1, 9), r);
    inst = sg.inst;
    meta["terminals"] = terminals;
    meta["base_arcs"] = sg.base_arcs;
    meta["m"] = sg.mparam;
    meta["B"] = inst.B;
  } else if (cfg.family == "random-sp") {
    const std::size_t m = 8;
    const SpGraph sp = random_sp_graph(rng, m);
    inst.graph = sp.graph;
    inst.s = sp.s;
    inst.t = sp.t;
    inst.r = r;
    for (std::size_t a = 0; a < m; ++a) {
      inst.c.push_back(uniform(rng, 0.1, 10.0));
      inst.gamma.push_back(uniform(rng, 0.0, 5.0));
      inst.ybar.push_back(uniform(rng, 0.5, 5.0));
    }
    const SPTree tree = decompose(inst.graph, inst.s, inst.t);
    inst.B = resistance_sp(tree, inst.ybar, r) * uniform(rng, 1.5, 4.0);
    meta["m"] = m;
  } else {
    throw Exit{kUsage, "--family must be one of partition, knapsack, steiner, random-sp"};
  }

  emit(cfg, out, write_instance(inst));
  std::string meta_path = cfg.meta;
  if (meta_path.empty() && !cfg.out.empty()) meta_path = cfg.out + ".meta.json";
  if (!meta_path.empty()) write_file(meta_path, meta.dump() + "\n");
  return kOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Minimum-cost design of potential-based flow networks", "pbnd"};
  app.require_subcommand(1);
  Config cfg;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--in", cfg.in, "instance JSON");
    sub->add_option("--out", cfg.out, "write the result here instead of stdout");
    sub->add_option("--tol", cfg.tol, "relative tolerance for budget comparisons");
    sub->add_option("--r", cfg.r, "override the exponent r");
  };
  CLI::App* solve = app.add_subcommand("solve", "compute a design");
  add_common(solve);
  solve->add_option("--mode", cfg.mode, "auto, path-exact, path-fptas, sp-exact, sp-fptas or brute")
      ->check(CLI::IsMember({"auto", "path-exact", "path-fptas", "sp-exact", "sp-fptas", "brute"}));
  solve->add_option("--eps", cfg.eps, "approximation parameter");
  solve->add_option("--threads", cfg.threads, "worker threads for the lambda grid");
  solve->add_option("--seed", cfg.seed, "unused by the deterministic solvers");

  CLI::App* resist = app.add_subcommand("resistance", "effective resistance of a design (default y = ybar)");
  add_common(resist);
  resist->add_option("--sol", cfg.sol, "solution JSON");

  CLI::App* gen = app.add_subcommand("gen", "generate an instance");
  gen->add_option("--family", cfg.family, "partition, knapsack, steiner or random-sp")->required();
  gen->add_option("--seed", cfg.seed, "64-bit seed");
  gen->add_option("--out", cfg.out, "instance path (stdout if absent)");
  gen->add_option("--meta", cfg.meta, "metadata path (default <out>.meta.json)");
  gen->add_option("--r", cfg.r, "exponent r (default 1)");

  CLI::App* ver = app.add_subcommand("verify", "check a solution against an instance");
  add_common(ver);
  ver->add_option("--sol", cfg.sol, "solution JSON")->required();

  std::vector<const char*> argv{"pbnd"};
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  }

  try {
    if (solve->parsed()) return cmd_solve(cfg, out);
    if (resist->parsed()) return cmd_resistance(cfg, out);
    if (gen->parsed()) return cmd_gen(cfg, out);
    return cmd_verify(cfg, out);
  } catch (const Exit& e) {
    err << "error: " << e.message << "\n";
    return e.code;
  } catch (const Infeasible& e) {
    err << "infeasible: " << e.what() << "\n";
    return kInfeasible;
  } catch (const Disconnected& e) {
    err << "infeasible: " << e.what() << "\n";
    return kInfeasible;
  } catch (const Unsupported& e) {
    err << "unsupported: " << e.what() << "\n";
    return kUnsupported;
  } catch (const NotSeriesParallel& e) {
    err << "unsupported: " << e.what() << "\n";
    return kUnsupported;
  } catch (const TooLarge& e) {
    err << "unsupported: " << e.what() << "\n";
    return kUnsupported;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  }
}

int run(int argc, const char* const* argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return run(args, std::cout, std::cerr);
}

}  // namespace pbnd::cli
