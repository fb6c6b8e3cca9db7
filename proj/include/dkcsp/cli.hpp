// Copyright 2026 The dkcsp Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef DKCSP_CLI_HPP
#define DKCSP_CLI_HPP

// Command-line front end. Exit status: 10 satisfiable, 20 unsatisfiable,
// 0 other success (including an inconclusive randomized solve), 1 error.

#include <cmath>
#include <cstdint>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <memory>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "dkcsp/analysis.hpp"
#include "dkcsp/bench.hpp"
#include "dkcsp/colorgraph.hpp"
#include "dkcsp/covercode.hpp"
#include "dkcsp/formula.hpp"
#include "dkcsp/search.hpp"
#include "dkcsp/volume.hpp"

namespace dkcsp::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitError = 1;
inline constexpr int kExitSat = 10;
inline constexpr int kExitUnsat = 20;

struct Config {
  std::string method = "det";
  std::string graph = "cycle";
  int d = 3;
  int k = 3;
  int n = 8;
  int m = 20;
  int r = -1;
  int j = 2;
  std::optional<std::uint64_t> seed;
  std::optional<std::uint64_t> reps;
  int steps_mult = 0;
  std::uint64_t block_cap = kDefaultBlockCap;
  int jobs = 1;
  bool verify_oracle = false;
  bool verify = false;
  bool planted = false;
  std::size_t count = 10;
  std::uint64_t trials = 100000;
  std::uint64_t max_steps = 10000;
  std::string output;
  std::string input;
  int verbosity = 0;
};

/// "complete" | "cycle" | "hypercube" | "file:<path>"
inline ColorGraph make_graph(const std::string& name, int d) {
  if (name == "complete") return ColorGraph::complete(d);
  if (name == "cycle") return ColorGraph::directed_cycle(d);
  if (name == "hypercube") {
    int ell = 0;
    while ((1 << ell) < d) ++ell;
    if ((1 << ell) != d) throw std::invalid_argument("hypercube graph needs d to be a power of two, got " + std::to_string(d));
    return ColorGraph::hypercube(ell);
  }
  if (name.rfind("file:", 0) == 0) {
    std::ifstream in(name.substr(5));
    if (!in) throw std::runtime_error("cannot open graph file " + name.substr(5));
    ColorGraph g = parse_graph(in);
    if (g.num_colors() != d)
      throw std::invalid_argument("graph file has d=" + std::to_string(g.num_colors()) + ", expected " + std::to_string(d));
    profile(g);
    return g;
  }
  throw std::invalid_argument("unknown graph '" + name + "'");
}

inline std::string fixed6(const Rational& q) {
  std::ostringstream s;
  s << std::fixed << std::setprecision(6) << to_double(q);
  return s.str();
}

namespace detail {

inline std::uint64_t resolve_seed(Config& cfg, std::ostream& out) {
  if (!cfg.seed) {
    cfg.seed = (static_cast<std::uint64_t>(std::random_device{}()) << 32) ^ std::random_device{}();
    out << "c seed " << *cfg.seed << '\n';
  }
  return *cfg.seed;
}

// Destination for the main output: the -o file if given, else out.
class Sink {
 public:
  Sink(const std::string& path, std::ostream& fallback) : stream_(&fallback) {
    if (!path.empty()) {
      file_ = std::make_unique<std::ofstream>(path);
      if (!*file_) throw std::runtime_error("cannot open output file " + path);
      stream_ = file_.get();
    }
  }
  std::ostream& get() { return *stream_; }

 private:
  std::unique_ptr<std::ofstream> file_;
  std::ostream* stream_;
};

inline Formula load_instance(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open instance " + path);
  return parse_instance(in);
}

inline int cmd_gen(Config& cfg, std::ostream& out) {
  Sink sink(cfg.output, out);
  Rng rng = make_stream(resolve_seed(cfg, out), 1);
  std::optional<Assignment> planted;
  if (cfg.planted) {
    Assignment a(static_cast<std::size_t>(cfg.n), 1);
    for (int& c : a.colors) c = uniform_int(rng, 1, cfg.d);
    planted = a;
    sink.get() << "c planted";
    for (int c : a.colors) sink.get() << ' ' << c;
    sink.get() << '\n';
  }
  serialize_instance(sink.get(), generate_random(cfg.n, cfg.d, cfg.k, cfg.m, *cfg.seed, planted));
  return kExitOk;
}

// Default repetitions for the walk: 10 (n+1) (d(k-1)/k)^n, capped at 10^9.
inline std::uint64_t default_repetitions(const Formula& f) {
  const int k = std::max(f.width(), 2);
  const double base = static_cast<double>(f.num_colors()) * (k - 1) / k;
  const double reps = 10.0 * (f.num_vars() + 1) * std::pow(base, f.num_vars());
  return static_cast<std::uint64_t>(std::clamp(std::ceil(reps), 1.0, 1e9));
}

inline int cmd_solve(Config& cfg, std::ostream& out, std::ostream& err) {
  const Formula f = load_instance(cfg.input);
  SolveResult res;
  if (cfg.method == "brute") {
    auto w = brute_force_solve(f);
    res.status = w ? SolveStatus::satisfiable : SolveStatus::unsatisfiable;
    res.witness = std::move(w);
    out << "c method brute\n";
  } else {
    const ColorGraph g = make_graph(cfg.graph, f.num_colors());
    if (cfg.method == "det") {
      res = det_solve(f, g, cfg.block_cap, cfg.jobs);
      out << "c method det graph " << g.name() << " code-size " << res.code_size << " radius " << res.radius
          << '\n';
    } else if (cfg.method == "schoening") {
      const std::uint64_t seed = resolve_seed(cfg, out);
      const std::uint64_t reps = cfg.reps.value_or(default_repetitions(f));
      const int mult = cfg.steps_mult > 0 ? cfg.steps_mult : default_steps_multiplier(f.num_colors());
      res = schoening_solve(f, g, reps, mult, seed, cfg.jobs);
      out << "c method schoening graph " << g.name() << " reps-limit " << reps << " steps-mult " << mult << '\n';
    } else {
      throw std::invalid_argument("unknown method '" + cfg.method + "'");
    }
    out << "c nodes " << res.stats.nodes_visited << " balls " << res.stats.balls_searched << " reps "
        << res.stats.repetitions << " steps " << res.stats.steps << '\n';
  }
  if (res.witness && !satisfies(f, *res.witness)) throw std::logic_error("witness failed verification");
  if (cfg.verify_oracle) {
    const bool oracle_sat = brute_force_solve(f).has_value();
    const bool disagree = (res.status == SolveStatus::satisfiable && !oracle_sat) ||
                          (res.status == SolveStatus::unsatisfiable && oracle_sat);
    if (disagree) {
      err << "error: solver disagrees with brute-force oracle\n";
      return kExitError;
    }
    out << "c oracle agrees\n";
  }
  Sink sink(cfg.output, out);
  if (res.status == SolveStatus::unknown) {
    sink.get() << "s UNKNOWN\n";
    return kExitOk;
  }
  write_witness(sink.get(), res.witness);
  return res.status == SolveStatus::satisfiable ? kExitSat : kExitUnsat;
}

inline int cmd_code(Config& cfg, std::ostream& out, std::ostream& err) {
  const ColorGraph g = make_graph(cfg.graph, cfg.d);
  const CoveringCode code = build_code(g, cfg.n, cfg.k, cfg.block_cap);
  if (cfg.verify) {
    const CoverReport rep = verify_cover(code);
    if (!rep) {
      err << "error: code does not cover [d]^n\n";
      return kExitError;
    }
    err << "c coverage verified\n";
  }
  Sink sink(cfg.output, out);
  write_code(sink.get(), code);
  return kExitOk;
}

inline int cmd_volume(Config& cfg, std::ostream& out) {
  const ColorGraph g = make_graph(cfg.graph, cfg.d);
  const DistanceProfile p = profile(g);
  const ShellTable table = shell_counts(p, cfg.n);
  const int r = cfg.r < 0 ? table.max_radius() : std::min(cfg.r, table.max_radius());
  Sink sink(cfg.output, out);
  auto& o = sink.get();
  o << "c graph " << g.name() << " d " << cfg.d << " n " << cfg.n << " r " << r << '\n';
  o << "shells";
  for (int i = 0; i <= r; ++i) o << ' ' << table.shell(i);
  o << "\nvolume " << table.volume(r) << '\n';
  return kExitOk;
}

inline int cmd_predict(Config& cfg, std::ostream& out, bool graph_given) {
  std::optional<DistanceProfile> extra;
  std::string name;
  if (graph_given) {
    const ColorGraph g = make_graph(cfg.graph, cfg.d);
    extra = profile(g);
    name = g.name();
  }
  const BaseReport rep = predict(cfg.d, cfg.k, extra);
  Sink sink(cfg.output, out);
  auto& o = sink.get();
  o << "c d " << rep.d << " k " << rep.k << '\n';
  o << "schoening " << fixed6(rep.schoening_base) << ' ' << rep.schoening_base << '\n';
  o << "det-complete " << fixed6(rep.det_complete_base) << ' ' << rep.det_complete_base << '\n';
  o << "det-cycle " << fixed6(rep.det_cycle_base) << ' ' << rep.det_cycle_base << '\n';
  if (rep.graph_base) o << "graph " << name << ' ' << fixed6(*rep.graph_base) << ' ' << *rep.graph_base << '\n';
  o << "recommended " << to_string(rep.recommended_graph) << '\n';
  return kExitOk;
}

inline int cmd_markov(Config& cfg, std::ostream& out) {
  const std::uint64_t seed = resolve_seed(cfg, out);
  const LambdaSolution lam = solve_lambda(cfg.d, cfg.k);
  const IdentityCheck id = success_probability_identity(cfg.d, cfg.k, cfg.n);
  const MarkovEstimate est = markov_simulate(cfg.d, cfg.k, cfg.j, cfg.max_steps, cfg.trials, seed, cfg.jobs);
  Sink sink(cfg.output, out);
  auto& o = sink.get();
  o << std::setprecision(12);
  o << "lambda " << lam.lambda << " residual " << lam.residual << (lam.degenerate ? " degenerate" : "") << '\n';
  o << "reach j " << cfg.j << ' ' << reach_probability(cfg.d, cfg.k, cfg.j) << '\n';
  o << "identity n " << cfg.n << " lhs " << id.lhs << " rhs " << id.rhs << " rel-err " << id.relative_error() << '\n';
  o << "simulate trials " << est.trials << " max-steps " << cfg.max_steps << " hits " << est.hits << " freq "
    << est.frequency << " stderr " << est.std_error << '\n';
  return kExitOk;
}

inline int cmd_bench(Config& cfg, std::ostream& out) {
  BenchConfig b;
  b.n = cfg.n;
  b.d = cfg.d;
  b.k = cfg.k;
  b.m = cfg.m;
  b.count = cfg.count;
  b.seed = resolve_seed(cfg, out);
  b.planted = cfg.planted;
  b.repetitions = cfg.reps.value_or(1000);
  b.steps_multiplier = cfg.steps_mult;
  b.block_cap = cfg.block_cap;
  b.jobs = cfg.jobs;
  Sink sink(cfg.output, out);
  write_bench_csv(sink.get(), run_bench(b));
  return kExitOk;
}

}  // namespace detail

inline int run(int argc, const char* const* argv, std::ostream& out = std::cout, std::ostream& err = std::cerr) {
  Config cfg;
  CLI::App app{"dkcsp: (d,k)-CSP local search, covering-code search and running-time analysis", "dkcsp"};
  app.require_subcommand(1);
  app.set_help_all_flag("--help-all");

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("-o", cfg.output, "Write the main output to this file");
    sub->add_option("--seed", cfg.seed, "RNG seed (drawn and printed when omitted)");
    sub->add_option("--jobs", cfg.jobs, "Worker threads")->check(CLI::PositiveNumber);
    sub->add_flag("-v", cfg.verbosity, "Verbosity");
  };
  auto add_graph = [&](CLI::App* sub) {
    return sub->add_option("--graph", cfg.graph, "complete | cycle | hypercube | file:<path>");
  };
  auto add_dk = [&](CLI::App* sub) {
    sub->add_option("--d", cfg.d, "Number of colors")->check(CLI::Range(2, 1 << 16));
    sub->add_option("--k", cfg.k, "Constraint width")->check(CLI::Range(1, 1 << 16));
  };

  auto* gen = app.add_subcommand("gen", "Generate a random instance");
  add_common(gen);
  add_dk(gen);
  gen->add_option("--n", cfg.n, "Variables")->check(CLI::NonNegativeNumber);
  gen->add_option("--m", cfg.m, "Constraints")->check(CLI::NonNegativeNumber);
  gen->add_flag("--planted", cfg.planted, "Force satisfiability by a random planted assignment");

  auto* solve = app.add_subcommand("solve", "Solve an instance file");
  add_common(solve);
  add_graph(solve);
  solve->add_option("--method", cfg.method, "det | schoening | brute")
      ->check(CLI::IsMember({"det", "schoening", "brute"}));
  solve->add_option("--reps", cfg.reps, "Walk repetitions");
  solve->add_option("--steps-mult", cfg.steps_mult, "Walk length multiplier c (steps = c n)");
  solve->add_option("--block-cap", cfg.block_cap, "Largest block size d^m for greedy covering");
  solve->add_flag("--verify-oracle", cfg.verify_oracle, "Cross-check SAT/UNSAT against brute force");
  solve->add_option("instance", cfg.input, "Instance file")->required();

  auto* code = app.add_subcommand("code", "Build a covering code");
  add_common(code);
  add_graph(code);
  add_dk(code);
  code->add_option("--n", cfg.n, "Coordinates")->check(CLI::NonNegativeNumber);
  code->add_option("--block-cap", cfg.block_cap, "Largest block size d^m for greedy covering");
  code->add_flag("--verify", cfg.verify, "Check coverage exhaustively");

  auto* volume = app.add_subcommand("volume", "Shell counts and ball volume");
  add_common(volume);
  add_graph(volume);
  add_dk(volume);
  volume->add_option("--n", cfg.n, "Coordinates")->check(CLI::NonNegativeNumber);
  volume->add_option("--r", cfg.r, "Radius (default: all shells)")->check(CLI::NonNegativeNumber);

  auto* predict_cmd = app.add_subcommand("predict", "Per-variable running-time bases");
  add_common(predict_cmd);
  auto* predict_graph = add_graph(predict_cmd);
  add_dk(predict_cmd);

  auto* markov = app.add_subcommand("markov", "Walk chain: lambda, reach probabilities, simulation");
  add_common(markov);
  add_dk(markov);
  markov->add_option("--n", cfg.n, "Variables for the success-probability identity")->check(CLI::NonNegativeNumber);
  markov->add_option("--j", cfg.j, "Start state")->check(CLI::NonNegativeNumber);
  markov->add_option("--trials", cfg.trials, "Simulated walks")->check(CLI::PositiveNumber);
  markov->add_option("--max-steps", cfg.max_steps, "Step cap per walk");

  auto* bench = app.add_subcommand("bench", "Run both methods on both graphs, CSV output");
  add_common(bench);
  add_dk(bench);
  bench->add_option("--n", cfg.n, "Variables")->check(CLI::NonNegativeNumber);
  bench->add_option("--m", cfg.m, "Constraints")->check(CLI::NonNegativeNumber);
  bench->add_option("--count", cfg.count, "Instances");
  bench->add_option("--reps", cfg.reps, "Walk repetitions");
  bench->add_option("--steps-mult", cfg.steps_mult, "Walk length multiplier");
  bench->add_option("--block-cap", cfg.block_cap, "Largest block size d^m");
  bench->add_flag("--planted", cfg.planted, "Planted satisfiable instances");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code_ = app.exit(e, out, err);
    return code_ == 0 ? kExitOk : kExitError;
  }

  try {
    if (gen->parsed()) return detail::cmd_gen(cfg, out);
    if (solve->parsed()) return detail::cmd_solve(cfg, out, err);
    if (code->parsed()) return detail::cmd_code(cfg, out, err);
    if (volume->parsed()) return detail::cmd_volume(cfg, out);
    if (predict_cmd->parsed()) return detail::cmd_predict(cfg, out, predict_graph->count() > 0);
    if (markov->parsed()) return detail::cmd_markov(cfg, out);
    if (bench->parsed()) return detail::cmd_bench(cfg, out);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitError;
  }
  return kExitError;
}

}  // namespace dkcsp::cli

#endif  // DKCSP_CLI_HPP
