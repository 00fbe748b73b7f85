// Command-line front-end for the girthlab library.
//
// Exit codes: 0 success, 2 invalid input or violated precondition, 3
// numerical degeneracy or non-convergence. Errors are single-line JSON
// diagnostics on standard error. All randomized subcommands require an
// explicit seed, and identical configurations produce byte-identical output.

#include <cstdio>
#include <fstream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "girthlab/certificates.hpp"
#include "girthlab/errors.hpp"
#include "girthlab/graph.hpp"
#include "girthlab/odd_girth.hpp"
#include "girthlab/procedure.hpp"
#include "girthlab/recurrence.hpp"
#include "girthlab/trace_io.hpp"

namespace {

using namespace girthlab;

std::string json_escape(const std::string& s) {
  std::string out;
  out.reserve(s.size() + 8);
  for (char c : s) {
    switch (c) {
      case '"': out += "\\\""; break;
      case '\\': out += "\\\\"; break;
      case '\n': out += "\\n"; break;
      case '\t': out += "\\t"; break;
      case '\r': out += "\\r"; break;
      default:
        if (static_cast<unsigned char>(c) < 0x20) {
          char buf[8];
          std::snprintf(buf, sizeof buf, "\\u%04x", static_cast<unsigned>(c));
          out += buf;
        } else {
          out += c;
        }
    }
  }
  return out;
}

std::string json_str(const std::string& s) { return "\"" + json_escape(s) + "\""; }

std::string json_int_array(const std::vector<int>& v) {
  std::string out = "[";
  for (size_t i = 0; i < v.size(); ++i) {
    if (i) out += ",";
    out += std::to_string(v[i]);
  }
  return out + "]";
}

std::string json_double_array(const double* v, size_t count) {
  std::string out = "[";
  for (size_t i = 0; i < count; ++i) {
    if (i) out += ",";
    out += format_double(v[i]);
  }
  return out + "]";
}

void emit(const std::string& text, const std::string& output_path) {
  if (output_path.empty()) {
    std::fwrite(text.data(), 1, text.size(), stdout);
    return;
  }
  std::ofstream out(output_path, std::ios::binary);
  if (!out) throw PreconditionError("cannot write output file: " + output_path);
  out << text;
  if (!out.flush()) throw PreconditionError("failed writing output file: " + output_path);
}

// Options shared by the subcommands that read a graph.
struct GraphSource {
  std::string input;
  std::string named;

  void attach(CLI::App* cmd) {
    auto* in = cmd->add_option("--input", input, "edge-list file (header 'n m', lines 'u v')");
    auto* nm = cmd->add_option("--named", named,
                               "built-in graph: k4, prism, petersen, heawood, pappus, "
                               "mcgee, tutte_coxeter");
    in->excludes(nm);
    nm->excludes(in);
  }

  CubicGraph load() const {
    if (!input.empty()) return load_edge_list_file(input);
    if (!named.empty()) return named_graph(named);
    throw PreconditionError("one of --input or --named is required");
  }

  std::string config_json() const {
    if (!input.empty()) return "\"input\":" + json_str(input);
    return "\"named\":" + json_str(named);
  }
};

// ---------------------------------------------------------------------------

struct SolveCmd {
  Params params;
  std::string format = "json";
  std::string output;

  int run() const {
    const Trace trace = solve(params);
    if (!trace.converged())
      throw DegeneracyError("recurrence did not reach the white threshold " +
                            format_double(params.white_threshold) + " within " +
                            std::to_string(params.max_rounds) + " rounds");
    const std::string cfg = "{\"subcommand\":\"solve\",\"p1\":" + format_double(params.p1) +
                            ",\"p2\":" + format_double(params.p2) +
                            ",\"threshold\":" + format_double(params.white_threshold) +
                            ",\"max_rounds\":" + std::to_string(params.max_rounds) +
                            ",\"compensated\":" + (params.compensated_sums ? "true" : "false") +
                            ",\"format\":" + json_str(format) + "}";
    const RoundState& last = trace.final_state();
    if (format == "csv") {
      std::string text = "# config: " + cfg + "\n" + trace_to_csv(trace);
      emit(text, output);
    } else {
      std::string text = "{\"config\":" + cfg + ",\"stop\":" +
                         json_str(stop_reason_name(trace.stop)) +
                         ",\"K\":" + std::to_string(last.k) +
                         ",\"r_K\":" + format_double(last.red) +
                         ",\"b_K\":" + format_double(last.blue) +
                         ",\"w_K\":" + format_double(last.white) +
                         ",\"rounds\":" + trace_to_json(trace) + "}\n";
      emit(text, output);
    }
    return 0;
  }
};

struct GenerateCmd {
  int n = 0;
  uint64_t seed = 0;
  int target_girth = 0;  // 0: no boosting
  long max_proposals = 5000000;
  std::string output;

  int run() const {
    CubicGraph g = generate_random_cubic(n, seed);
    long steps = 0, proposals = 0;
    bool reached = true;
    int achieved;
    if (target_girth > 0) {
      BoostResult res = boost_girth(g, target_girth, max_proposals, seed + 0x9e3779b97f4a7c15ULL);
      g = std::move(res.graph);
      steps = res.steps;
      proposals = res.proposals;
      reached = res.reached;
      achieved = res.achieved_girth;
    } else {
      achieved = girth(g).girth.value_or(0);
    }
    save_edge_list_file(g, output);
    const std::string cfg = "{\"subcommand\":\"generate\",\"n\":" + std::to_string(n) +
                            ",\"seed\":" + std::to_string(seed) +
                            ",\"target_girth\":" + std::to_string(target_girth) +
                            ",\"max_proposals\":" + std::to_string(max_proposals) +
                            ",\"output\":" + json_str(output) + "}";
    std::string text = "{\"config\":" + cfg + ",\"n\":" + std::to_string(g.vertex_count()) +
                       ",\"m\":" + std::to_string(g.edge_count()) +
                       ",\"girth\":" + std::to_string(achieved) +
                       ",\"boost_steps\":" + std::to_string(steps) +
                       ",\"boost_proposals\":" + std::to_string(proposals) +
                       ",\"reached\":" + (reached ? "true" : "false") + "}\n";
    std::fwrite(text.data(), 1, text.size(), stdout);
    if (target_girth > 0 && !reached)
      throw DegeneracyError("girth boosting did not reach target " +
                            std::to_string(target_girth) + " within " +
                            std::to_string(max_proposals) + " proposals");
    return 0;
  }
};

struct GirthCmd {
  GraphSource src;
  std::string output;

  int run() const {
    const CubicGraph g = src.load();
    const GirthReport rep = girth(g);
    const std::string cfg = "{\"subcommand\":\"girth\"," + src.config_json() + "}";
    std::string text = "{\"config\":" + cfg + ",\"n\":" + std::to_string(g.vertex_count()) +
                       ",\"m\":" + std::to_string(g.edge_count()) + ",\"girth\":" +
                       (rep.girth ? std::to_string(*rep.girth) : "null") + ",\"odd_girth\":" +
                       (rep.odd_girth ? std::to_string(*rep.odd_girth) : "null") +
                       ",\"girth_cycle\":" + json_int_array(rep.girth_cycle) +
                       ",\"odd_girth_cycle\":" + json_int_array(rep.odd_girth_cycle) + "}\n";
    emit(text, output);
    return 0;
  }
};

std::string aggregates_json(const std::vector<RoundAggregates>& rows) {
  std::string out = "[";
  for (size_t i = 0; i < rows.size(); ++i) {
    const RoundAggregates& a = rows[i];
    if (i) out += ",";
    out += "{\"k\":" + std::to_string(a.k) + ",\"w\":" + format_double(a.frac_white) +
           ",\"b\":" + format_double(a.frac_blue) + ",\"r\":" + format_double(a.frac_red) +
           ",\"wdeg\":" + json_double_array(a.wdeg_hist, 4) +
           ",\"qdeg\":" + json_double_array(a.qdeg_hist, 3) + "}";
  }
  return out + "]";
}

std::string aggregates_csv(const std::vector<RoundAggregates>& rows) {
  std::string out = "k,w,b,r,wdeg0,wdeg1,wdeg2,wdeg3,qdeg1,qdeg2,qdeg3\n";
  for (const RoundAggregates& a : rows) {
    out += std::to_string(a.k) + "," + format_double(a.frac_white) + "," +
           format_double(a.frac_blue) + "," + format_double(a.frac_red);
    for (double x : a.wdeg_hist) out += "," + format_double(x);
    for (double x : a.qdeg_hist) out += "," + format_double(x);
    out += "\n";
  }
  return out;
}

struct SimulateCmd {
  GraphSource src;
  SimParams params{0, 0, 1000000};
  uint64_t seed = 0;
  bool emit_red = false;
  std::string format = "json";
  std::string output;

  int run() const {
    const CubicGraph g = src.load();
    Rng rng(seed);
    const SimResult res = run_procedure(g, params, rng);
    const std::string cfg = "{\"subcommand\":\"simulate\"," + src.config_json() +
                            ",\"p1\":" + format_double(params.p1) +
                            ",\"p2\":" + format_double(params.p2) +
                            ",\"rounds\":" + std::to_string(params.rounds) +
                            ",\"seed\":" + std::to_string(seed) +
                            ",\"emit_red\":" + (emit_red ? "true" : "false") +
                            ",\"format\":" + json_str(format) + "}";
    if (format == "csv") {
      emit("# config: " + cfg + "\n" + aggregates_csv(res.per_round), output);
      return 0;
    }
    std::string text = "{\"config\":" + cfg +
                       ",\"rounds_run\":" + std::to_string(res.state.round) +
                       ",\"whites_left\":" + std::to_string(res.state.whites) +
                       ",\"per_round\":" + aggregates_json(res.per_round);
    if (emit_red) {
      std::vector<int> red;
      for (int v = 0; v < g.vertex_count(); ++v)
        if (res.state.color[v] == Color::red) red.push_back(v);
      text += ",\"red\":" + json_int_array(red);
    }
    text += "}\n";
    emit(text, output);
    return 0;
  }
};

std::string coverage_json(const CoverageReport& rep, bool per_vertex) {
  std::string out = "{\"trials\":" + std::to_string(rep.trials) +
                    ",\"min\":" + format_double(rep.min_frequency) +
                    ",\"argmin\":" + std::to_string(rep.argmin) +
                    ",\"min_radius\":" +
                    format_double(rep.argmin >= 0 ? rep.radius99[rep.argmin] : 0.0) +
                    ",\"mean\":" + format_double(rep.mean_frequency);
  if (per_vertex) {
    out += ",\"per_vertex\":";
    out += json_double_array(rep.frequency.data(), rep.frequency.size());
  }
  return out + "}";
}

struct CoverageCmd {
  GraphSource src;
  SimParams params{0, 0, 1000000};
  long trials = 0;
  uint64_t seed = 0;
  int workers = 1;
  bool per_vertex = false;
  std::string output;

  int run() const {
    const CubicGraph g = src.load();
    const CoverageReport rep = monte_carlo_coverage(g, params, trials, seed, workers);
    const std::string cfg = "{\"subcommand\":\"coverage\"," + src.config_json() +
                            ",\"p1\":" + format_double(params.p1) +
                            ",\"p2\":" + format_double(params.p2) +
                            ",\"rounds\":" + std::to_string(params.rounds) +
                            ",\"trials\":" + std::to_string(trials) +
                            ",\"seed\":" + std::to_string(seed) +
                            ",\"workers\":" + std::to_string(workers) + "}";
    std::string text = "{\"config\":" + cfg + ",\"coverage\":" + coverage_json(rep, per_vertex);
    // The fractional bound is undefined until every vertex is covered beyond
    // its confidence radius; report that state instead of failing the
    // coverage measurement that succeeded.
    try {
      const FractionalBound fb = fractional_upper_bound(rep);
      text += ",\"fractional_bound\":" + format_double(fb.upper_bound);
    } catch (const PreconditionError& e) {
      text += ",\"fractional_bound\":null,\"fractional_error\":" + json_str(e.what());
    }
    text += "}\n";
    emit(text, output);
    return 0;
  }
};

struct OddGirthCmd {
  GraphSource src;
  int g_odd = 0;  // 0: use the graph's own odd girth
  long trials = 0;
  uint64_t seed = 0;
  int workers = 1;
  bool per_vertex = false;
  std::string output;

  int run() const {
    const CubicGraph g = src.load();
    const GirthReport grep = girth(g);
    int used = g_odd;
    if (used == 0) {
      if (!grep.odd_girth)
        throw PreconditionError(
            "the graph is bipartite (no odd girth); pass --g-odd explicitly");
      used = *grep.odd_girth;
    }
    const TwoFactor tf = find_two_factor(g);
    const CoverageReport rep = odd_girth_coverage(g, tf, used, trials, seed, workers);
    const OddGirthBound bound = odd_girth_bound(used);

    const std::string cfg = "{\"subcommand\":\"oddgirth\"," + src.config_json() +
                            ",\"g_odd\":" + std::to_string(used) +
                            ",\"trials\":" + std::to_string(trials) +
                            ",\"seed\":" + std::to_string(seed) +
                            ",\"workers\":" + std::to_string(workers) + "}";
    std::string cycles = "[";
    for (size_t i = 0; i < tf.cycles.size(); ++i) {
      if (i) cycles += ",";
      cycles += json_int_array(tf.cycles[i]);
    }
    cycles += "]";
    std::string matching = "[";
    for (size_t i = 0; i < tf.matching.size(); ++i) {
      if (i) matching += ",";
      matching += "[" + std::to_string(tf.matching[i].first) + "," +
                  std::to_string(tf.matching[i].second) + "]";
    }
    matching += "]";

    std::string text =
        "{\"config\":" + cfg + ",\"odd_girth\":" +
        (grep.odd_girth ? std::to_string(*grep.odd_girth) : "null") +
        ",\"two_factor\":{\"cycles\":" + cycles + ",\"matching\":" + matching + "}" +
        ",\"coverage\":" + coverage_json(rep, per_vertex) +
        ",\"bound_coverage\":" + format_double(bound.coverage) +
        ",\"bound_fractional\":" + format_double(bound.fractional);
    try {
      const FractionalBound fb = fractional_upper_bound(rep);
      text += ",\"fractional_bound\":" + format_double(fb.upper_bound);
    } catch (const PreconditionError& e) {
      text += ",\"fractional_bound\":null,\"fractional_error\":" + json_str(e.what());
    }
    text += "}\n";
    emit(text, output);
    return 0;
  }
};

struct MaxcutCmd {
  GraphSource src;
  std::string set_file;
  SimParams params{0, 0, 1000000};
  std::optional<uint64_t> seed;
  bool exact = false;
  std::string output;

  static std::vector<int> read_set_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw PreconditionError("cannot open vertex set file: " + path);
    std::vector<int> set;
    long v;
    while (in >> v) set.push_back(static_cast<int>(v));
    if (!in.eof()) throw ParseError("vertex set file " + path + ": expected integers only");
    return set;
  }

  int run() const {
    const CubicGraph g = src.load();
    if (set_file.empty() && !seed.has_value() && !exact)
      throw PreconditionError("nothing to do: pass --set, or --seed to simulate, or --exact");

    std::string cfg = "{\"subcommand\":\"maxcut\"," + src.config_json();
    if (!set_file.empty()) cfg += ",\"set\":" + json_str(set_file);
    if (seed.has_value())
      cfg += ",\"p1\":" + format_double(params.p1) + ",\"p2\":" + format_double(params.p2) +
             ",\"rounds\":" + std::to_string(params.rounds) +
             ",\"seed\":" + std::to_string(*seed);
    cfg += std::string(",\"exact\":") + (exact ? "true" : "false") + "}";

    std::string text = "{\"config\":" + cfg;
    if (!set_file.empty() || seed.has_value()) {
      std::vector<int> set;
      if (!set_file.empty()) {
        set = read_set_file(set_file);
      } else {
        Rng rng(*seed);
        const SimResult res = run_procedure(g, params, rng);
        for (int v = 0; v < g.vertex_count(); ++v)
          if (res.state.color[v] == Color::red) set.push_back(v);
      }
      const CutResult cut = cut_from_independent_set(g, set);
      text += ",\"set_size\":" + std::to_string(set.size()) +
              ",\"cut_size\":" + std::to_string(cut.cut_size);
    }
    if (exact) {
      const IndependentSetResult mis = exact_max_independent_set(g);
      const CutResult alpha_cut = cut_from_independent_set(g, mis.vertices);
      const CutResult best = exact_max_cut(g);
      text += ",\"alpha\":" + std::to_string(mis.size) +
              ",\"alpha_set\":" + json_int_array(mis.vertices) +
              ",\"alpha_cut_size\":" + std::to_string(alpha_cut.cut_size) +
              ",\"max_cut_size\":" + std::to_string(best.cut_size);
    }
    text += "}\n";
    emit(text, output);
    return 0;
  }
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"girthlab: independent sets in subcubic graphs of large girth"};
  app.require_subcommand(1);

  SolveCmd solve_cmd;
  auto* solve_app = app.add_subcommand(
      "solve", "iterate the infinite-tree recurrence until the white mass vanishes");
  solve_app->add_option("--p1", solve_cmd.params.p1, "round-1 activation probability")
      ->required();
  solve_app->add_option("--p2", solve_cmd.params.p2, "later-round activation probability")
      ->required();
  solve_app->add_option("--threshold", solve_cmd.params.white_threshold,
                        "stop once the white mass is at or below this");
  solve_app->add_option("--max-rounds", solve_cmd.params.max_rounds, "round cap");
  solve_app->add_flag("--compensated", solve_cmd.params.compensated_sums,
                      "compensated accumulation in the degree updates");
  solve_app->add_option("--format", solve_cmd.format, "json or csv")
      ->check(CLI::IsMember({"json", "csv"}));
  solve_app->add_option("--output", solve_cmd.output, "write to this file instead of stdout");

  GenerateCmd gen_cmd;
  auto* gen_app = app.add_subcommand("generate",
                                     "random cubic graph via the pairing model, "
                                     "optionally girth-boosted by edge swaps");
  gen_app->add_option("--n", gen_cmd.n, "vertex count (even, >= 4)")->required();
  gen_app->add_option("--seed", gen_cmd.seed, "random seed")->required();
  gen_app->add_option("--target-girth", gen_cmd.target_girth, "boost the girth to this value");
  gen_app->add_option("--max-proposals", gen_cmd.max_proposals, "swap-proposal budget");
  gen_app->add_option("--output", gen_cmd.output, "edge-list output file")->required();

  GirthCmd girth_cmd;
  auto* girth_app = app.add_subcommand("girth", "girth and odd girth with witness cycles");
  girth_cmd.src.attach(girth_app);
  girth_app->add_option("--output", girth_cmd.output, "write to this file instead of stdout");

  SimulateCmd sim_cmd;
  auto* sim_app = app.add_subcommand("simulate",
                                     "run the randomized procedure once, reporting "
                                     "per-round aggregates");
  sim_cmd.src.attach(sim_app);
  sim_app->add_option("--p1", sim_cmd.params.p1, "round-1 activation probability")->required();
  sim_app->add_option("--p2", sim_cmd.params.p2, "later-round activation probability")
      ->required();
  sim_app->add_option("--rounds", sim_cmd.params.rounds,
                      "maximum rounds (stops early when no white vertex remains)");
  sim_app->add_option("--seed", sim_cmd.seed, "random seed")->required();
  sim_app->add_flag("--emit-red", sim_cmd.emit_red, "include the final red set");
  sim_app->add_option("--format", sim_cmd.format, "json or csv")
      ->check(CLI::IsMember({"json", "csv"}));
  sim_app->add_option("--output", sim_cmd.output, "write to this file instead of stdout");

  CoverageCmd cov_cmd;
  auto* cov_app = app.add_subcommand("coverage",
                                     "per-vertex red-set coverage over repeated runs, "
                                     "with the implied fractional-chromatic bound");
  cov_cmd.src.attach(cov_app);
  cov_app->add_option("--p1", cov_cmd.params.p1, "round-1 activation probability")->required();
  cov_app->add_option("--p2", cov_cmd.params.p2, "later-round activation probability")
      ->required();
  cov_app->add_option("--rounds", cov_cmd.params.rounds, "maximum rounds per trial");
  cov_app->add_option("--trials", cov_cmd.trials, "number of independent runs")->required();
  cov_app->add_option("--seed", cov_cmd.seed, "base seed; trial t uses seed+t")->required();
  cov_app->add_option("--workers", cov_cmd.workers, "worker threads (0 = hardware)")
      ->envname("GIRTHLAB_WORKERS");
  cov_app->add_flag("--per-vertex", cov_cmd.per_vertex, "include per-vertex frequencies");
  cov_app->add_option("--output", cov_cmd.output, "write to this file instead of stdout");

  OddGirthCmd odd_cmd;
  auto* odd_app = app.add_subcommand("oddgirth",
                                     "two-factor construction for large odd girth: "
                                     "coverage trials against the printed bounds");
  odd_cmd.src.attach(odd_app);
  odd_app->add_option("--g-odd", odd_cmd.g_odd,
                      "odd-girth parameter (default: the graph's own odd girth)");
  odd_app->add_option("--trials", odd_cmd.trials, "number of draws")->required();
  odd_app->add_option("--seed", odd_cmd.seed, "base seed; trial t uses seed+t")->required();
  odd_app->add_option("--workers", odd_cmd.workers, "worker threads (0 = hardware)")
      ->envname("GIRTHLAB_WORKERS");
  odd_app->add_flag("--per-vertex", odd_cmd.per_vertex, "include per-vertex frequencies");
  odd_app->add_option("--output", odd_cmd.output, "write to this file instead of stdout");

  MaxcutCmd cut_cmd;
  auto* cut_app = app.add_subcommand("maxcut",
                                     "cut induced by an independent set, plus exact "
                                     "small-instance oracles behind --exact");
  cut_cmd.src.attach(cut_app);
  cut_app->add_option("--set", cut_cmd.set_file, "file of vertex indices (the independent set)");
  uint64_t cut_seed_value = 0;
  auto* cut_seed =
      cut_app->add_option("--seed", cut_seed_value, "simulate one run and use its red set");
  cut_app->add_option("--p1", cut_cmd.params.p1, "round-1 activation probability");
  cut_app->add_option("--p2", cut_cmd.params.p2, "later-round activation probability");
  cut_app->add_option("--rounds", cut_cmd.params.rounds, "maximum rounds");
  cut_app->add_flag("--exact", cut_cmd.exact, "also run the exact oracles (n-capped)");
  cut_app->add_option("--output", cut_cmd.output, "write to this file instead of stdout");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);  // help text on stdout, exit 0
  } catch (const CLI::ParseError& e) {
    std::string diag = "{\"error\":\"precondition\",\"message\":" +
                       json_str(std::string("argument parsing: ") + e.what()) + "}\n";
    std::fwrite(diag.data(), 1, diag.size(), stderr);
    return 2;
  }

  if (cut_seed->count() > 0) cut_cmd.seed = cut_seed_value;

  try {
    if (solve_app->parsed()) return solve_cmd.run();
    if (gen_app->parsed()) return gen_cmd.run();
    if (girth_app->parsed()) return girth_cmd.run();
    if (sim_app->parsed()) return sim_cmd.run();
    if (cov_app->parsed()) return cov_cmd.run();
    if (odd_app->parsed()) return odd_cmd.run();
    if (cut_app->parsed()) return cut_cmd.run();
    throw PreconditionError("no subcommand selected");
  } catch (const DegeneracyError& e) {
    std::string diag =
        "{\"error\":\"degeneracy\",\"message\":" + json_str(e.what()) + "}\n";
    std::fwrite(diag.data(), 1, diag.size(), stderr);
    return 3;
  } catch (const PreconditionError& e) {
    std::string diag =
        "{\"error\":\"precondition\",\"message\":" + json_str(e.what()) + "}\n";
    std::fwrite(diag.data(), 1, diag.size(), stderr);
    return 2;
  } catch (const std::exception& e) {
    std::string diag = "{\"error\":\"internal\",\"message\":" + json_str(e.what()) + "}\n";
    std::fwrite(diag.data(), 1, diag.size(), stderr);
    return 1;
  }
}
