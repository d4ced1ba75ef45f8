// sparseflip: generate instances, run seeded FLIP trials with analysis
// attached, sweep parameter grids, verify against the brute-force oracle,
// and print explicit iteration bounds.
//
// Exit codes: 0 success, 1 verification/assertion failure, 2 configuration
// error.

#include <cstdint>
#include <cstdio>
#include <exception>
#include <optional>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "sparseflip/analysis.hpp"
#include "sparseflip/experiment.hpp"
#include "sparseflip/generators.hpp"
#include "sparseflip/graph.hpp"
#include "sparseflip/io.hpp"
#include "sparseflip/smoothing.hpp"

namespace {

using namespace sparseflip;

constexpr int kExitOk = 0;
constexpr int kExitFailure = 1;
constexpr int kExitConfig = 2;

struct GraphSourceFlags {
  std::string file;
  std::string family;
  NodeId n = 0;
  int gen_alpha = 2;
  int m_attach = 3;
  NodeId rows = 0, cols = 0;
  std::uint64_t seed = 1;

  // generate owns the plain --alpha/--seed spellings; run/verify reserve
  // those for the analysis parameters and the experiment base seed.
  void attach(CLI::App* cmd, bool standalone = false) {
    if (!standalone) cmd->add_option("--graph", file, "graph file to load");
    cmd->add_option("--family", family,
                    "generator family: forest-union | pref-attach | complete | grid");
    cmd->add_option("--n", n, "node count (generators)");
    cmd->add_option(standalone ? "--alpha,--alpha-gen" : "--alpha-gen", gen_alpha,
                    "forest count for forest-union")
        ->capture_default_str();
    cmd->add_option("--m-attach", m_attach, "attachment degree for pref-attach")
        ->capture_default_str();
    cmd->add_option("--rows", rows, "grid rows");
    cmd->add_option("--cols", cols, "grid cols");
    cmd->add_option(standalone ? "--seed,--graph-seed" : "--graph-seed", seed,
                    "generator seed")
        ->capture_default_str();
  }

  // (graph, human-readable source description, optional file weights)
  std::tuple<GraphTopology, std::string, std::optional<WeightAssignment>> resolve() const {
    if (!file.empty()) {
      GraphFile gf = read_graph_file(file);
      return {std::move(gf.graph), file, std::move(gf.weights)};
    }
    if (family.empty())
      throw std::invalid_argument("one of --graph or --family is required");
    std::string desc = family;
    GraphTopology g;
    if (family == "forest-union") {
      g = gen_forest_union(n, gen_alpha, seed);
      desc += " n=" + std::to_string(n) + " alpha=" + std::to_string(gen_alpha) +
              " seed=" + std::to_string(seed);
    } else if (family == "pref-attach") {
      g = gen_preferential_attachment(n, m_attach, seed);
      desc += " n=" + std::to_string(n) + " m=" + std::to_string(m_attach) +
              " seed=" + std::to_string(seed);
    } else if (family == "complete") {
      g = gen_complete(n);
      desc += " n=" + std::to_string(n);
    } else if (family == "grid") {
      g = gen_grid(rows, cols);
      desc += " rows=" + std::to_string(rows) + " cols=" + std::to_string(cols);
    } else {
      throw std::invalid_argument("unknown family: " + family);
    }
    return {std::move(g), desc, std::nullopt};
  }
};

struct ModelFlags {
  std::string kind = "uniform";
  double phi = 0.5;
  double base_const = 0.0;
  bool base_from_graph = false;

  void attach(CLI::App* cmd) {
    cmd->add_option("--model", kind, "uniform | adversarial")->capture_default_str();
    cmd->add_option("--phi", phi, "density bound (adversarial requires phi > 1/2)")
        ->capture_default_str();
    cmd->add_option("--base-const", base_const,
                    "constant adversarial offset b_e for every edge");
    cmd->add_flag("--base-from-graph", base_from_graph,
                  "take adversarial offsets from the graph file's edge weights");
  }

  SmoothedModel resolve(const GraphTopology& g,
                        const std::optional<WeightAssignment>& file_weights) const {
    if (parse_model_kind(kind) == ModelKind::Uniform) return SmoothedModel::uniform();
    if (base_from_graph) {
      if (!file_weights)
        throw std::invalid_argument("--base-from-graph requires a weighted graph file");
      return SmoothedModel::adversarial(phi, file_weights->values);
    }
    return SmoothedModel::adversarial_const(phi, base_const, g.edge_count());
  }
};

struct RunFlags {
  std::string rule = "first";
  std::string init = "zeros";
  std::string init_file;
  int trials = 1;
  std::uint64_t seed = 0;
  double c = 1.0;
  double beta = 2.0;
  int alpha = 0;
  std::int64_t max_steps = -1;
  int threads = 0;

  void attach(CLI::App* cmd) {
    cmd->add_option("--rule", rule, "pivot rule: first | max | min | random")
        ->capture_default_str();
    cmd->add_option("--init", init, "initial cut: zeros | random | file")
        ->capture_default_str();
    cmd->add_option("--init-file", init_file, "cut file for --init file");
    cmd->add_option("--trials", trials)->capture_default_str();
    cmd->add_option("--seed", seed, "base seed; trial t derives its own streams")
        ->capture_default_str();
    cmd->add_option("--c", c, "confidence exponent in epsilon_c")->capture_default_str();
    cmd->add_option("--beta", beta, "peeling parameter in [2, n]")->capture_default_str();
    cmd->add_option("--alpha", alpha, "arboricity parameter; 0 = use degeneracy")
        ->capture_default_str();
    cmd->add_option("--max-steps", max_steps, "flip budget per trial; -1 = unlimited")
        ->capture_default_str();
    cmd->add_option("--threads", threads,
                    "worker pool size; 0 = FLIP_SMOOTH_THREADS env or hardware");
  }

  void fill(ExperimentConfig& cfg) const {
    cfg.rule = parse_pivot_rule(rule);
    cfg.init = parse_init_policy(init);
    if (cfg.init == InitCutPolicy::FromFile) {
      if (init_file.empty()) throw std::invalid_argument("--init file needs --init-file");
      cfg.init_cut = read_cut_file(init_file);
    }
    cfg.trials = trials;
    cfg.base_seed = seed;
    cfg.c = c;
    cfg.beta = beta;
    cfg.alpha = alpha;
    cfg.max_steps = max_steps;
    cfg.threads = threads;
  }
};

int cmd_generate(const GraphSourceFlags& src, const std::string& out) {
  auto [g, desc, weights] = src.resolve();
  write_graph_file(out, g, weights ? &*weights : nullptr);
  const auto dg = degeneracy(g);
  std::printf("family: %s\nn: %d\nm: %d\ndegeneracy: %d\nwrote %s\n", desc.c_str(), g.n,
              g.edge_count(), dg.degeneracy, out.c_str());
  return kExitOk;
}

int cmd_run(const GraphSourceFlags& src, const ModelFlags& model, const RunFlags& run_flags,
            const std::string& out_dir, bool dump_leveling, bool no_traces) {
  ExperimentConfig cfg;
  auto [g, desc, weights] = src.resolve();
  cfg.graph = std::move(g);
  cfg.graph_source = desc;
  cfg.model = model.resolve(cfg.graph, weights);
  run_flags.fill(cfg);
  cfg.out_dir = out_dir;
  cfg.dump_leveling = dump_leveling;
  cfg.write_traces = !no_traces;

  const ExperimentResult res = run_experiment(cfg);
  for (const TrialOutput& t : res.trials)
    std::printf("%s\n", summary_json_line(t.record, res.epsilon_c, res.explicit_bound).c_str());
  if (!res.all_local_optimum) {
    std::fprintf(stderr, "error: some trials exhausted the flip budget\n");
    return kExitFailure;
  }
  return kExitOk;
}

int cmd_sweep(SweepSpec spec) {
  const SweepResult res = run_sweep(spec);
  std::printf("%s\n", sweep_csv_header().c_str());
  for (const SweepRow& row : res.rows) std::printf("%s\n", sweep_csv_row(row).c_str());
  for (const std::string& f : res.failures)
    std::fprintf(stderr, "config failed: %s\n", f.c_str());
  return res.failures.empty() ? kExitOk : kExitFailure;
}

int cmd_verify(const GraphSourceFlags& src, const ModelFlags& model,
               const RunFlags& run_flags) {
  ExperimentConfig cfg;
  auto [g, desc, weights] = src.resolve();
  cfg.graph = std::move(g);
  cfg.graph_source = desc;
  cfg.model = model.resolve(cfg.graph, weights);
  run_flags.fill(cfg);

  const VerifyOutcome out = verify_against_oracle(cfg);
  for (const std::string& f : out.failures) std::fprintf(stderr, "%s\n", f.c_str());
  std::printf("verified %d/%d trials against brute force (%d budget-exhausted, %d failed)\n",
              out.passed, out.passed + out.failed, out.budget_exhausted, out.failed);
  return out.ok() ? kExitOk : kExitFailure;
}

int cmd_bound(std::int64_t n, double phi, int alpha, double beta, double c) {
  const BoundReport rep = theoretical_bound(n, phi, alpha, beta, c);
  nlohmann::ordered_json j;
  j["n"] = rep.n;
  j["phi"] = rep.phi;
  j["alpha"] = rep.alpha;
  j["beta"] = rep.beta;
  j["c"] = rep.c;
  j["epsilon_c"] = rep.epsilon_c;
  j["window"] = rep.window.str();
  j["explicit_bound"] = rep.explicit_bound;
  std::printf("%s\n", j.dump().c_str());
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"FLIP local search for smoothed local Max-Cut on sparse graphs"};
  app.require_subcommand(1);

  // generate
  auto* gen = app.add_subcommand("generate", "generate a graph and write the graph file");
  GraphSourceFlags gen_src;
  gen_src.attach(gen, /*standalone=*/true);
  std::string gen_out;
  gen->add_option("-o,--out", gen_out, "output graph file")->required();

  // run
  auto* run_cmd = app.add_subcommand("run", "run seeded FLIP trials with analysis attached");
  GraphSourceFlags run_src;
  ModelFlags run_model;
  RunFlags run_flags;
  run_src.attach(run_cmd);
  run_model.attach(run_cmd);
  run_flags.attach(run_cmd);
  std::string run_out;
  bool run_dump_leveling = false, run_no_traces = false;
  run_cmd->add_option("--out", run_out, "output directory for config/summary/traces");
  run_cmd->add_flag("--dump-leveling", run_dump_leveling, "also write leveling.json");
  run_cmd->add_flag("--no-traces", run_no_traces, "skip per-trial trace CSVs");

  // sweep
  auto* sweep_cmd = app.add_subcommand("sweep", "run a parameter grid, aggregate to CSV");
  SweepSpec spec;
  std::string sweep_rule = "first", sweep_init = "zeros", sweep_model = "uniform";
  sweep_cmd->add_option("--family", spec.family)->capture_default_str();
  sweep_cmd->add_option("--n-list", spec.n_list, "node counts")->required()->delimiter(',');
  sweep_cmd->add_option("--alpha-list", spec.alpha_list, "arboricity parameters")
      ->required()
      ->delimiter(',');
  sweep_cmd->add_option("--beta-list", spec.beta_list, "peeling parameters")
      ->required()
      ->delimiter(',');
  double sweep_phi = 0.5, sweep_base = 0.0;
  sweep_cmd->add_option("--model", sweep_model)->capture_default_str();
  sweep_cmd->add_option("--phi", sweep_phi)->capture_default_str();
  sweep_cmd->add_option("--base-const", sweep_base);
  sweep_cmd->add_option("--rule", sweep_rule)->capture_default_str();
  sweep_cmd->add_option("--init", sweep_init)->capture_default_str();
  sweep_cmd->add_option("--trials", spec.trials)->capture_default_str();
  sweep_cmd->add_option("--seed", spec.base_seed)->capture_default_str();
  sweep_cmd->add_option("--c", spec.c)->capture_default_str();
  sweep_cmd->add_option("--max-steps", spec.max_steps)->capture_default_str();
  sweep_cmd->add_option("--threads", spec.threads);
  sweep_cmd->add_option("--out", spec.out_dir, "output directory for sweep CSVs");

  // verify
  auto* verify_cmd =
      app.add_subcommand("verify", "check FLIP terminal cuts against brute force (n <= 16)");
  GraphSourceFlags verify_src;
  ModelFlags verify_model;
  RunFlags verify_flags;
  verify_src.attach(verify_cmd);
  verify_model.attach(verify_cmd);
  verify_flags.attach(verify_cmd);

  // bound
  auto* bound_cmd = app.add_subcommand("bound", "print the explicit iteration bound");
  std::int64_t bound_n = 0;
  double bound_phi = 0.5, bound_beta = 2.0, bound_c = 1.0;
  int bound_alpha = 1;
  bound_cmd->add_option("--n", bound_n)->required();
  bound_cmd->add_option("--phi", bound_phi)->capture_default_str();
  bound_cmd->add_option("--alpha", bound_alpha)->capture_default_str();
  bound_cmd->add_option("--beta", bound_beta)->capture_default_str();
  bound_cmd->add_option("--c", bound_c)->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitConfig;
  }

  try {
    if (gen->parsed()) return cmd_generate(gen_src, gen_out);
    if (run_cmd->parsed())
      return cmd_run(run_src, run_model, run_flags, run_out, run_dump_leveling, run_no_traces);
    if (sweep_cmd->parsed()) {
      spec.model = parse_model_kind(sweep_model) == ModelKind::Uniform
                       ? SmoothedModel::uniform()
                       : SmoothedModel::adversarial_const(sweep_phi, sweep_base, 0);
      spec.base_const = sweep_base;
      spec.rule = parse_pivot_rule(sweep_rule);
      spec.init = parse_init_policy(sweep_init);
      return cmd_sweep(std::move(spec));
    }
    if (verify_cmd->parsed()) return cmd_verify(verify_src, verify_model, verify_flags);
    if (bound_cmd->parsed())
      return cmd_bound(bound_n, bound_phi, bound_alpha, bound_beta, bound_c);
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitConfig;
  }
  return kExitConfig;
}
