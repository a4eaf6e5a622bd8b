// SPDX-License-Identifier: Apache-2.0
// Command-line front end: eval, params, solve, check, gen, bench.

#include <CLI11.hpp>

#include <algorithm>
#include <chrono>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "algexpr/algexpr.hpp"

namespace {

using namespace algexpr;

enum Exit { kOk = 0, kMismatch = 1, kInputError = 2, kInternalError = 3 };

/// key=value lines in insertion order.
class RunReport {
 public:
  void add(std::string key, std::string value) {
    fields_.emplace_back(std::move(key), std::move(value));
  }
  void add(std::string key, std::size_t value) { add(std::move(key), std::to_string(value)); }
  void add(std::string key, bool value) { add(std::move(key), std::string(value ? "true" : "false")); }
  void add(std::string key, const char* value) { add(std::move(key), std::string(value)); }

  void print(std::ostream& out) const {
    for (const auto& [k, v] : fields_) out << k << '=' << v << '\n';
  }

 private:
  std::vector<std::pair<std::string, std::string>> fields_;
};

struct Globals {
  std::uint64_t seed = 1;
  bool verify = false;
  std::string output;
};

class Clock {
 public:
  Clock() : start_(std::chrono::steady_clock::now()) {}
  double ms() const {
    auto d = std::chrono::steady_clock::now() - start_;
    return std::chrono::duration<double, std::milli>(d).count();
  }

 private:
  std::chrono::steady_clock::time_point start_;
};

std::string fixed3(double v) {
  std::ostringstream s;
  s.setf(std::ios::fixed);
  s.precision(3);
  s << v;
  return s.str();
}

Expression load(const std::string& path) {
  Expression e = parse_file(path);
  require_valid(e);
  return e;
}

/// Writes to -o when given, else to stdout.
template <class Fn>
void emit(const std::string& path, Fn&& fn) {
  if (path.empty()) {
    fn(std::cout);
    return;
  }
  std::ofstream out(path);
  if (!out) throw Error("cannot write " + path);
  fn(out);
}

void add_params(RunReport& r, const Params& p) {
  r.add("k", p.k);
  r.add("h", p.h);
  r.add("l", p.l);
}

/// Stats lines plus the accounting verdict; returns false on a breach.
bool add_stats(RunReport& r, const FoldStats& s, const Params& p) {
  r.add("fold_nodes", s.empty_count + s.vertex_count + s.inc_count + s.subst_count +
                          s.subst_td_count);
  r.add("inc_count", s.inc_count);
  r.add("subst_count", s.subst_count);
  r.add("subst_td_count", s.subst_td_count);
  r.add("sum_pattern_order", s.sum_pattern_order);
  r.add("max_inc_nesting", s.max_inc_nesting);
  r.add("max_subst_order", s.max_subst_order);
  r.add("max_pattern_td", s.max_pattern_td);
  auto failed = assert_stats(s, s.graph_order, p);
  r.add("stats_ok", failed.empty());
  for (const auto& f : failed) std::cerr << "stats: " << f << '\n';
  return failed.empty();
}

bool add_verify(RunReport& r, const VerifyReport& v) {
  if (!v.enabled) return true;
  r.add("verify_checked", v.checked);
  r.add("verify_violations", v.violations);
  return v.violations == 0;
}

struct GraphLines {
  std::vector<std::string> vertices;
  std::vector<std::pair<std::string, std::string>> edges;
};

GraphLines sorted_lines(const Graph& g) {
  GraphLines out;
  out.vertices = g.names();
  std::sort(out.vertices.begin(), out.vertices.end());
  for (auto [u, v] : g.edges()) {
    std::string a = g.name(u);
    std::string b = g.name(v);
    if (!g.directed() && b < a) std::swap(a, b);
    out.edges.emplace_back(std::move(a), std::move(b));
  }
  std::sort(out.edges.begin(), out.edges.end());
  return out;
}

int cmd_eval(const std::string& file, const Globals& g) {
  Graph graph = evaluate(load(file));
  GraphLines lines = sorted_lines(graph);
  std::cout << "n=" << graph.vertex_count() << '\n' << "m=" << graph.edge_count() << '\n';
  emit(g.output, [&](std::ostream& out) {
    for (const auto& v : lines.vertices) out << "vertex\t" << v << '\n';
    for (const auto& [a, b] : lines.edges) out << "edge\t" << a << '\t' << b << '\n';
  });
  return kOk;
}

int cmd_params(const std::string& file) {
  Params p = params(load(file));
  std::cout << "k=" << p.k << "\nh=" << p.h << "\nl=" << p.l << '\n';
  return kOk;
}

void write_matrix(std::ostream& out, const std::vector<std::string>& names, const DistMatrix& d) {
  std::vector<std::size_t> order(names.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](auto a, auto b) { return names[a] < names[b]; });
  out << "from\tto\tdist\n";
  for (auto i : order) {
    for (auto j : order) out << names[i] << '\t' << names[j] << '\t' << format_double(d(i, j)) << '\n';
  }
}

int cmd_solve(const std::string& problem, const std::string& file, const std::string& weights_path,
              const Globals& g) {
  Expression e = load(file);
  Params p = params(e);
  RunReport r;
  r.add("command", "solve " + problem);
  add_params(r, p);
  bool ok = true;
  Clock clock;
  if (problem == "tc") {
    TriangleRun run = run_triangles(e, g.verify);
    double ms = clock.ms();
    const TriFold& v = run.result.value;
    r.add("triangles", std::to_string(v.t) + " n=" + std::to_string(v.n) + " m=" + std::to_string(v.m));
    ok = add_stats(r, run.result.stats, p) & add_verify(r, run.verify);
    r.add("wall_ms", fixed3(ms));
    r.print(std::cout);
    return ok ? kOk : kInternalError;
  }
  if (weights_path.empty()) throw Error(problem + " needs a weights file");
  WeightMap w = read_weights_file(weights_path);
  if (problem == "ncd") {
    NcdResult res = solve_ncd(e, w, g.verify);
    double ms = clock.ms();
    r.add("negative-cycle", res.negative_cycle);
    if (!res.negative_cycle) r.add("msp", format_double(res.msp));
    ok = add_stats(r, res.stats, p) & add_verify(r, res.verify);
    r.add("wall_ms", fixed3(ms));
    r.print(std::cout);
    return ok ? kOk : kInternalError;
  }
  ApspResult res = solve_apsp(e, w, g.verify);
  double ms = clock.ms();
  r.add("negative-cycle", res.negative_cycle);
  if (!res.negative_cycle) r.add("msp", format_double(res.msp));
  ok = add_stats(r, res.stats, p) & add_verify(r, res.verify);
  r.add("wall_ms", fixed3(ms));
  r.print(std::cout);
  if (!res.negative_cycle) {
    emit(g.output, [&](std::ostream& out) { write_matrix(out, res.names, res.dist); });
  }
  return ok ? kOk : kInternalError;
}

int cmd_check(const std::string& problem, const std::string& file, const std::string& weights_path,
              double tolerance) {
  Expression e = load(file);
  CheckResult c;
  if (problem == "tc") {
    c = check_triangles(e);
  } else {
    if (weights_path.empty()) throw Error(problem + " needs a weights file");
    WeightMap w = read_weights_file(weights_path);
    c = problem == "ncd" ? check_ncd(e, w, tolerance) : check_apsp(e, w, tolerance);
  }
  RunReport r;
  r.add("command", "check " + problem);
  r.add("check", c.pass ? "pass" : "fail");
  r.add("dev", format_double(c.dev));
  if (!c.detail.empty()) r.add("detail", c.detail);
  r.print(std::cout);
  return c.pass ? kOk : kMismatch;
}

GraphKind parse_mode(const std::string& m) {
  if (m == "D" || m == "directed") return GraphKind::directed;
  if (m == "U" || m == "undirected") return GraphKind::undirected;
  throw Error("unknown mode '" + m + "'");
}

Orientation parse_orientation(const std::string& o) {
  if (o == "dag") return Orientation::dag;
  if (o == "sparse-back") return Orientation::sparse_back;
  if (o == "cyclic") return Orientation::cyclic;
  throw Error("unknown orientation '" + o + "'");
}

std::string comment_block(const std::string& text) {
  std::string out;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) out += "# " + line + "\n";
  return out;
}

struct GenOptions {
  std::string mode = "U";
  std::string orientation = "cyclic";
  std::size_t k = 0;
  std::size_t h = 0;
  std::size_t l = 0;
  std::size_t budget = 10;
  std::string weights_out;
};

GenSpec to_spec(const GenOptions& o, std::uint64_t seed) {
  GenSpec s;
  s.mode = parse_mode(o.mode);
  s.orientation = parse_orientation(o.orientation);
  s.k = o.k;
  s.h = o.h;
  s.l = o.l;
  s.budget = o.budget;
  s.seed = seed;
  return s;
}

int cmd_gen_random(const GenOptions& o, const Globals& g) {
  GenSpec spec = to_spec(o, g.seed);
  Expression e = gen_random(spec);
  std::ostringstream header;
  header << "# mode=" << to_string(spec.mode) << " k=" << spec.k << " h=" << spec.h
         << " l=" << spec.l << " budget=" << spec.budget << " seed=" << spec.seed << '\n';
  emit(g.output, [&](std::ostream& out) { out << header.str() << print(e); });
  if (!o.weights_out.empty()) {
    std::ofstream out(o.weights_out);
    if (!out) throw Error("cannot write " + o.weights_out);
    out << header.str();
    write_weights(out, gen_weights(evaluate(e), spec));
  }
  return kOk;
}

int cmd_gen_fixture(const std::string& name, std::size_t p, std::size_t k, const std::string& mode,
                    const Globals& g) {
  Fixture f = gen_fixture(name, p, k, parse_mode(mode));
  emit(g.output, [&](std::ostream& out) { out << comment_block(f.comment) << print(f.expr); });
  return kOk;
}

int cmd_bench(const std::string& problem, GenOptions o, const std::vector<std::size_t>& sizes,
              std::size_t reps, const Globals& g) {
  if (problem == "tc") {
    o.mode = "U";
  } else {
    o.mode = "D";
    if (problem == "apsp") o.orientation = "dag";
  }
  emit(g.output, [&](std::ostream& out) {
    out << "n\tm\tk\th\tl\trep\twall_ms\tinc_count\tsubst_count\tsubst_td_count"
           "\tsum_pattern_order\tmax_inc_nesting\tstats_ok\n";
    for (std::size_t s = 0; s < sizes.size(); ++s) {
      o.budget = sizes[s];
      GenSpec spec = to_spec(o, g.seed + s);
      Expression e = gen_random(spec);
      Graph graph = evaluate(e);
      WeightMap w = problem == "tc" ? WeightMap{} : gen_weights(graph, spec);
      for (std::size_t rep = 0; rep < reps; ++rep) {
        Clock clock;
        FoldStats stats;
        if (problem == "tc") {
          stats = solve_triangles(e).stats;
        } else if (problem == "ncd") {
          stats = solve_ncd(e, w).stats;
        } else {
          stats = solve_apsp(e, w).stats;
        }
        double ms = clock.ms();
        bool ok = assert_stats(stats, graph.vertex_count(), {spec.k, spec.h, spec.l}).empty();
        out << graph.vertex_count() << '\t' << graph.edge_count() << '\t' << spec.k << '\t'
            << spec.h << '\t' << spec.l << '\t' << rep << '\t' << fixed3(ms) << '\t'
            << stats.inc_count << '\t' << stats.subst_count << '\t' << stats.subst_td_count << '\t'
            << stats.sum_pattern_order << '\t' << stats.max_inc_nesting << '\t'
            << (ok ? "true" : "false") << '\n';
      }
    }
  });
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Algebraic graph expressions: evaluation, parameters and fold solvers"};
  app.require_subcommand(1);
  app.fallthrough();
  Globals g;
  app.add_option("--seed", g.seed, "Random seed");
  app.add_flag("--verify", g.verify, "Check every fold node against the materialized subgraph");
  app.add_option("-o,--output", g.output, "Output file");

  std::string file;
  std::string problem;
  std::string weights;
  double tolerance = 1e-6;

  auto* eval = app.add_subcommand("eval", "Evaluate an expression to its graph");
  eval->add_option("expr", file, "Expression file")->required();

  auto* par = app.add_subcommand("params", "Print the (k, h, l) parameters");
  par->add_option("expr", file, "Expression file")->required();

  const std::vector<std::string> problems{"tc", "ncd", "apsp"};
  auto* solve = app.add_subcommand("solve", "Run a fold solver");
  solve->add_option("problem", problem, "tc, ncd or apsp")->required()->check(CLI::IsMember(problems));
  solve->add_option("expr", file, "Expression file")->required();
  solve->add_option("weights", weights, "Vertex weight TSV");

  auto* check = app.add_subcommand("check", "Compare a solver with the oracle");
  check->add_option("problem", problem, "tc, ncd or apsp")->required()->check(CLI::IsMember(problems));
  check->add_option("expr", file, "Expression file")->required();
  check->add_option("weights", weights, "Vertex weight TSV");
  check->add_option("--tolerance", tolerance, "Allowed absolute deviation")->check(CLI::NonNegativeNumber);

  auto* gen = app.add_subcommand("gen", "Generate expressions");
  gen->require_subcommand(1);
  GenOptions go;
  auto* random = gen->add_subcommand("random", "Random expression with exact parameters");
  random->set_help_flag("--help", "Print this help message and exit");
  random->add_option("--mode", go.mode, "D or U");
  random->add_option("-k", go.k, "Inc nesting");
  random->add_option("-h", go.h, "Largest explicit pattern");
  random->add_option("-l", go.l, "Pattern expression depth");
  random->add_option("--budget", go.budget, "Number of vertices");
  random->add_option("--orientation", go.orientation, "dag, sparse-back or cyclic");
  random->add_option("--weights", go.weights_out, "Also write random weights here");

  std::string fixture;
  std::size_t fp = 2;
  std::size_t fk = 1;
  std::string fmode = "U";
  auto* fix = gen->add_subcommand("fixture", "Hand-built construction");
  fix->add_option("name", fixture, "Fixture name")->required()->check(CLI::IsMember(fixture_names()));
  fix->add_option("-p", fp, "Size parameter (at least 2)");
  fix->add_option("-k", fk, "Modules are cliques of k+1 vertices");
  fix->add_option("--mode", fmode, "D or U");

  GenOptions bo;
  bo.k = 2;
  bo.h = 4;
  std::vector<std::size_t> sizes{1000, 2000, 4000};
  std::size_t reps = 3;
  auto* bench = app.add_subcommand("bench", "Time a solver on growing random inputs");
  bench->set_help_flag("--help", "Print this help message and exit");
  bench->add_option("problem", problem, "tc, ncd or apsp")->required()->check(CLI::IsMember(problems));
  bench->add_option("-k", bo.k, "Inc nesting");
  bench->add_option("-h", bo.h, "Largest explicit pattern");
  bench->add_option("-l", bo.l, "Pattern expression depth");
  bench->add_option("--sizes", sizes, "Vertex counts")->delimiter(',');
  bench->add_option("--reps", reps, "Repetitions per size");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kOk : kInputError;
  }

  try {
    if (*eval) return cmd_eval(file, g);
    if (*par) return cmd_params(file);
    if (*solve) return cmd_solve(problem, file, weights, g);
    if (*check) return cmd_check(problem, file, weights, tolerance);
    if (*random) return cmd_gen_random(go, g);
    if (*fix) return cmd_gen_fixture(fixture, fp, fk, fmode, g);
    if (*bench) return cmd_bench(problem, bo, sizes, reps, g);
  } catch (const FoldError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return e.contract() ? kInternalError : kInputError;
  } catch (const ContractViolation& e) {
    std::cerr << "internal error: " << e.what() << '\n';
    return kInternalError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kInputError;
  }
  return kInputError;
}
