#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "sparseflip/analysis.hpp"
#include "sparseflip/flip.hpp"
#include "sparseflip/graph.hpp"
#include "sparseflip/leveling.hpp"
#include "sparseflip/oracle.hpp"
#include "sparseflip/smoothing.hpp"

namespace sparseflip {

enum class InitCutPolicy { AllZeros, Random, FromFile };

std::string to_string(InitCutPolicy p);
InitCutPolicy parse_init_policy(const std::string& s);

/// One experiment: `trials` independent weight samples and FLIP runs on a
/// fixed topology, analysis attached. Trial t draws weights from
/// derive_stream(base_seed, t, 0), its initial cut from substream 1 and its
/// pivot decisions from substream 2, so outputs do not depend on the worker
/// pool or scheduling.
struct ExperimentConfig {
  GraphTopology graph;
  std::string graph_source;  ///< path or generator description, echoed to config.json
  SmoothedModel model;
  PivotRule rule = PivotRule::FirstImproving;
  InitCutPolicy init = InitCutPolicy::AllZeros;
  Cut init_cut;  ///< FromFile only
  int trials = 1;
  std::uint64_t base_seed = 0;
  double c = 1.0;
  double beta = 2.0;
  int alpha = 0;                 ///< 0 = use degeneracy(graph)
  std::int64_t max_steps = -1;   ///< -1 = no practical budget (2^62)
  int threads = 0;               ///< 0 = FLIP_SMOOTH_THREADS env or hardware
  bool write_traces = true;
  bool dump_leveling = false;
  std::string out_dir;           ///< empty = keep everything in memory
};

struct TrialRecord {
  int trial = 0;
  std::uint64_t seed = 0;  ///< weight substream seed
  std::int64_t steps = 0;  ///< T
  TerminalStatus status = TerminalStatus::LocalOptimum;
  double final_cut_weight = 0.0;
  std::int64_t good_pairs = 0;
  std::optional<double> min_pair_gain;
  std::int64_t max_gap = 0;
  std::string initial_potential;  ///< exact decimal
  double wall_ms = 0.0;
};

struct TrialOutput {
  TrialRecord record;
  FlipTrace trace;
  TraceAnnotations annotations;
  WeightAssignment weights;
};

struct ExperimentResult {
  Leveling leveling;
  int alpha_used = 0;
  double epsilon_c = 0.0;
  double explicit_bound = 0.0;
  std::vector<TrialOutput> trials;
  bool all_local_optimum = true;
};

/// Runs every trial (worker pool bounded by threads) and, when out_dir is
/// set, writes config.json, summary.jsonl and per-trial trace CSVs. Bytes
/// are identical across reruns with the same config and base seed except
/// for the wall_ms fields.
ExperimentResult run_experiment(const ExperimentConfig& cfg);

std::string summary_json_line(const TrialRecord& r, double epsilon_c, double explicit_bound);
std::string config_json(const ExperimentConfig& cfg, int alpha_used);

/// True iff cut is one of the oracle's local optima and its weight does not
/// exceed the oracle maximum.
bool oracle_accepts(const GraphTopology& g, const WeightAssignment& w, const Cut& cut,
                    const BruteForceResult& bf);

struct VerifyOutcome {
  int passed = 0;
  int failed = 0;
  int budget_exhausted = 0;  ///< counted separately, not verification failures
  std::vector<std::string> failures;
  bool ok() const { return failed == 0; }
};

/// Re-runs the experiment's trials and checks every LocalOptimum terminal
/// cut against brute_force. Guarded to n <= 16.
VerifyOutcome verify_against_oracle(const ExperimentConfig& cfg);

/// Parameter grid for sweeps; the cross product n_list x alpha_list x
/// beta_list defines the configs. For the randomized families alpha also
/// parameterizes the generator (forest count / attachment degree).
struct SweepSpec {
  std::string family = "forest-union";  ///< forest-union | pref-attach | complete | grid
  std::vector<NodeId> n_list;
  std::vector<int> alpha_list;
  std::vector<double> beta_list;
  SmoothedModel model;  ///< base resolved per graph for adversarial sweeps
  double base_const = 0.0;
  PivotRule rule = PivotRule::FirstImproving;
  InitCutPolicy init = InitCutPolicy::AllZeros;
  int trials = 1;
  std::uint64_t base_seed = 0;
  double c = 1.0;
  std::int64_t max_steps = -1;
  int threads = 0;
  std::string out_dir;
};

struct SweepRow {
  std::string family;
  NodeId n = 0;
  int alpha = 0;
  double beta = 0.0;
  double phi = 0.0;
  double c = 0.0;
  std::uint64_t graph_seed = 0;
  TrialRecord record;
  double epsilon_c = 0.0;
  double explicit_bound = 0.0;
};

struct SweepResult {
  std::vector<SweepRow> rows;
  /// One "family,n,alpha,beta,...,median_T" entry per config.
  std::vector<std::string> median_rows;
  std::vector<std::string> failures;  ///< per-config errors, sweep continues past them
};

/// Runs the whole grid; when out_dir is set writes sweep.csv and
/// sweep_medians.csv. Per-config failures are recorded, not fatal.
SweepResult run_sweep(const SweepSpec& spec);

std::string sweep_csv_header();
std::string sweep_csv_row(const SweepRow& row);

}  // namespace sparseflip
