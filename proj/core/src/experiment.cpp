#include "sparseflip/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <functional>
#include <mutex>
#include <sstream>
#include <stdexcept>
#include <thread>

#include <json.hpp>

#include "sparseflip/generators.hpp"
#include "sparseflip/io.hpp"
#include "sparseflip/rng.hpp"

namespace sparseflip {

using nlohmann::ordered_json;

namespace {

constexpr std::uint64_t kWeightStream = 0;
constexpr std::uint64_t kInitCutStream = 1;
constexpr std::uint64_t kPivotStream = 2;
constexpr std::uint64_t kSweepGraphStream = 17;

int resolve_threads(int requested, int trials) {
  if (requested > 0) return requested;
  if (const char* env = std::getenv("FLIP_SMOOTH_THREADS")) {
    const int v = std::atoi(env);
    if (v > 0) return v;
  }
  const int hw = static_cast<int>(std::thread::hardware_concurrency());
  return std::max(1, std::min(hw > 0 ? hw : 1, trials));
}

std::int64_t resolve_max_steps(std::int64_t requested) {
  return requested < 0 ? (std::int64_t{1} << 62) : requested;
}

Cut initial_cut_for_trial(const ExperimentConfig& cfg, int trial) {
  switch (cfg.init) {
    case InitCutPolicy::AllZeros:
      return all_zeros_cut(cfg.graph.n);
    case InitCutPolicy::Random: {
      Rng rng(derive_stream(cfg.base_seed, static_cast<std::uint64_t>(trial), kInitCutStream));
      Cut c = all_zeros_cut(cfg.graph.n);
      for (auto& b : c.side) b = rng.coin() ? 1 : 0;
      return c;
    }
    case InitCutPolicy::FromFile:
      if (cfg.init_cut.size() != cfg.graph.n)
        throw std::invalid_argument("initial cut size does not match the graph");
      return cfg.init_cut;
  }
  throw std::logic_error("unreachable init policy");
}

TrialOutput run_one_trial(const ExperimentConfig& cfg, const Leveling& lv, int trial,
                          std::int64_t max_steps) {
  const auto t0 = std::chrono::steady_clock::now();

  TrialOutput out;
  const std::uint64_t weight_seed =
      derive_stream(cfg.base_seed, static_cast<std::uint64_t>(trial), kWeightStream);
  out.weights = sample_weights(cfg.model, cfg.graph, weight_seed);

  Rng pivot_rng(derive_stream(cfg.base_seed, static_cast<std::uint64_t>(trial), kPivotStream));
  TraceAnnotator annotator(lv);
  out.trace = run(cfg.graph, out.weights, initial_cut_for_trial(cfg, trial), cfg.rule,
                  max_steps, pivot_rng,
                  [&annotator](const FlipStep& s) { annotator.observe(s); });
  out.annotations = annotator.annotations();

  TrialRecord& rec = out.record;
  rec.trial = trial;
  rec.seed = weight_seed;
  rec.steps = out.trace.length();
  rec.status = out.trace.status;
  rec.final_cut_weight = out.trace.steps.empty()
                             ? cut_weight(cfg.graph, out.weights, out.trace.initial)
                             : out.trace.steps.back().weight_after;
  const auto pairs = scan_good_pairs(out.trace, lv, cfg.graph, out.weights);
  rec.good_pairs = static_cast<std::int64_t>(pairs.size());
  for (const auto& p : pairs)
    rec.min_pair_gain = rec.min_pair_gain ? std::min(*rec.min_pair_gain, p.gain_sum)
                                          : p.gain_sum;
  rec.max_gap = gaps_from_flags(out.annotations.good).max_gap;
  rec.initial_potential = out.annotations.initial_potential;
  rec.wall_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0)
                    .count();
  return out;
}

void for_each_trial(int trials, int threads, const std::function<void(int)>& body) {
  if (threads <= 1) {
    for (int t = 0; t < trials; ++t) body(t);
    return;
  }
  std::atomic<int> next{0};
  std::vector<std::thread> pool;
  std::exception_ptr error;
  std::mutex error_mu;
  pool.reserve(static_cast<std::size_t>(threads));
  for (int k = 0; k < threads; ++k) {
    pool.emplace_back([&] {
      while (true) {
        const int t = next.fetch_add(1);
        if (t >= trials) return;
        try {
          body(t);
        } catch (...) {
          std::lock_guard<std::mutex> lock(error_mu);
          if (!error) error = std::current_exception();
          return;
        }
      }
    });
  }
  for (auto& th : pool) th.join();
  if (error) std::rethrow_exception(error);
}

std::string trace_file_name(int trial) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "trace_%05d.csv", trial);
  return buf;
}

}  // namespace

std::string to_string(InitCutPolicy p) {
  switch (p) {
    case InitCutPolicy::AllZeros: return "zeros";
    case InitCutPolicy::Random: return "random";
    case InitCutPolicy::FromFile: return "file";
  }
  return "?";
}

InitCutPolicy parse_init_policy(const std::string& s) {
  if (s == "zeros") return InitCutPolicy::AllZeros;
  if (s == "random") return InitCutPolicy::Random;
  if (s == "file") return InitCutPolicy::FromFile;
  throw std::invalid_argument("unknown init policy: " + s);
}

std::string summary_json_line(const TrialRecord& r, double epsilon_c, double explicit_bound) {
  ordered_json j;
  j["trial"] = r.trial;
  j["seed"] = r.seed;
  j["T"] = r.steps;
  j["status"] = to_string(r.status);
  j["final_cut_weight"] = r.final_cut_weight;
  j["good_pairs"] = r.good_pairs;
  if (r.min_pair_gain)
    j["min_pair_gain"] = *r.min_pair_gain;
  else
    j["min_pair_gain"] = nullptr;
  j["max_gap"] = r.max_gap;
  j["initial_potential"] = r.initial_potential;
  j["epsilon_c"] = epsilon_c;
  j["explicit_bound"] = explicit_bound;
  j["wall_ms"] = r.wall_ms;
  return j.dump();
}

std::string config_json(const ExperimentConfig& cfg, int alpha_used) {
  ordered_json j;
  j["graph"] = {{"source", cfg.graph_source},
                {"n", cfg.graph.n},
                {"m", cfg.graph.edge_count()}};
  ordered_json model;
  model["phi"] = cfg.model.phi;
  model["kind"] = to_string(cfg.model.kind);
  if (cfg.model.kind == ModelKind::AdversarialPlusNoise) model["base"] = cfg.model.base;
  model["seed"] = cfg.base_seed;
  j["model"] = model;
  j["rule"] = to_string(cfg.rule);
  j["init"] = to_string(cfg.init);
  j["trials"] = cfg.trials;
  j["base_seed"] = cfg.base_seed;
  j["c"] = cfg.c;
  j["beta"] = cfg.beta;
  j["alpha"] = alpha_used;
  j["max_steps"] = resolve_max_steps(cfg.max_steps);
  return j.dump();
}

ExperimentResult run_experiment(const ExperimentConfig& cfg) {
  if (cfg.trials < 1) throw std::invalid_argument("trials must be >= 1");
  if (cfg.graph.n < 1) throw std::invalid_argument("experiment requires a nonempty graph");

  ExperimentResult res;
  const DegeneracyResult dg = degeneracy(cfg.graph);
  res.alpha_used = cfg.alpha > 0 ? cfg.alpha : std::max(1, dg.degeneracy);
  if (dg.degeneracy > 2 * res.alpha_used - 1)
    std::fprintf(stderr,
                 "warning: degeneracy %d exceeds 2*alpha-1 = %d; alpha=%d is below the "
                 "graph's arboricity\n",
                 dg.degeneracy, 2 * res.alpha_used - 1, res.alpha_used);
  res.leveling = peel_partition(cfg.graph, res.alpha_used, cfg.beta);

  if (cfg.graph.n >= 2) {
    const BoundReport bound =
        theoretical_bound(cfg.graph.n, cfg.model.phi, res.alpha_used, cfg.beta, cfg.c);
    res.epsilon_c = bound.epsilon_c;
    res.explicit_bound = bound.explicit_bound;
  }

  const std::int64_t max_steps = resolve_max_steps(cfg.max_steps);
  const int threads = resolve_threads(cfg.threads, cfg.trials);

  res.trials.resize(static_cast<std::size_t>(cfg.trials));
  for_each_trial(cfg.trials, threads, [&](int t) {
    res.trials[static_cast<std::size_t>(t)] = run_one_trial(cfg, res.leveling, t, max_steps);
  });

  res.all_local_optimum =
      std::all_of(res.trials.begin(), res.trials.end(), [](const TrialOutput& t) {
        return t.record.status == TerminalStatus::LocalOptimum;
      });

  if (!cfg.out_dir.empty()) {
    std::filesystem::create_directories(cfg.out_dir);
    const std::filesystem::path dir(cfg.out_dir);
    write_text_file((dir / "config.json").string(), config_json(cfg, res.alpha_used) + "\n");
    if (cfg.dump_leveling) write_leveling_file((dir / "leveling.json").string(), res.leveling);
    std::ostringstream summary;
    for (const TrialOutput& t : res.trials)
      summary << summary_json_line(t.record, res.epsilon_c, res.explicit_bound) << '\n';
    write_text_file((dir / "summary.jsonl").string(), summary.str());
    if (cfg.write_traces) {
      for (const TrialOutput& t : res.trials)
        write_trace_csv((dir / trace_file_name(t.record.trial)).string(), t.trace,
                        &t.annotations);
    }
  }
  return res;
}

bool oracle_accepts(const GraphTopology& g, const WeightAssignment& w, const Cut& cut,
                    const BruteForceResult& bf) {
  if (!bf.contains(cut)) return false;
  return cut_weight(g, w, cut) <= bf.max_cut_weight + 1e-9;
}

VerifyOutcome verify_against_oracle(const ExperimentConfig& cfg) {
  if (cfg.graph.n > 16)
    throw std::invalid_argument("verify is guarded to n <= 16, got n = " +
                                std::to_string(cfg.graph.n));
  ExperimentConfig quiet = cfg;
  quiet.out_dir.clear();
  quiet.write_traces = false;
  const ExperimentResult res = run_experiment(quiet);

  VerifyOutcome out;
  for (const TrialOutput& t : res.trials) {
    if (t.record.status == TerminalStatus::BudgetExhausted) {
      ++out.budget_exhausted;
      continue;
    }
    Cut final_cut = t.trace.initial;
    for (const FlipStep& s : t.trace.steps)
      final_cut.side[static_cast<std::size_t>(s.node)] ^= 1u;
    const BruteForceResult bf = brute_force(cfg.graph, t.weights);
    if (oracle_accepts(cfg.graph, t.weights, final_cut, bf)) {
      ++out.passed;
    } else {
      ++out.failed;
      out.failures.push_back("trial " + std::to_string(t.record.trial) +
                             ": terminal cut rejected by brute-force oracle");
    }
  }
  return out;
}

namespace {

GraphTopology sweep_graph(const std::string& family, NodeId n, int alpha,
                          std::uint64_t graph_seed) {
  if (family == "forest-union") return gen_forest_union(n, alpha, graph_seed);
  if (family == "pref-attach") return gen_preferential_attachment(n, alpha, graph_seed);
  if (family == "complete") return gen_complete(n);
  if (family == "grid") {
    // Squarest factorization of n.
    NodeId rows = static_cast<NodeId>(std::max(1.0, std::floor(std::sqrt(double(n)))));
    while (n % rows != 0) --rows;
    return gen_grid(rows, n / rows);
  }
  throw std::invalid_argument("unknown family: " + family);
}

}  // namespace

std::string sweep_csv_header() {
  return "family,n,alpha,beta,phi,c,graph_seed,trial,seed,T,status,final_cut_weight,"
         "good_pairs,max_gap,initial_potential,epsilon_c,explicit_bound,wall_ms";
}

std::string sweep_csv_row(const SweepRow& row) {
  std::ostringstream out;
  const TrialRecord& r = row.record;
  out << row.family << ',' << row.n << ',' << row.alpha << ',' << format_double(row.beta)
      << ',' << format_double(row.phi) << ',' << format_double(row.c) << ',' << row.graph_seed
      << ',' << r.trial << ',' << r.seed << ',' << r.steps << ',' << to_string(r.status) << ','
      << format_double(r.final_cut_weight) << ',' << r.good_pairs << ',' << r.max_gap << ','
      << r.initial_potential << ',' << format_double(row.epsilon_c) << ','
      << format_double(row.explicit_bound) << ',' << format_double(r.wall_ms);
  return out.str();
}

SweepResult run_sweep(const SweepSpec& spec) {
  if (spec.n_list.empty() || spec.alpha_list.empty() || spec.beta_list.empty())
    throw std::invalid_argument("sweep grid is empty");
  if (spec.trials < 1) throw std::invalid_argument("sweep trials must be >= 1");

  SweepResult res;
  std::uint64_t config_index = 0;
  for (const NodeId n : spec.n_list) {
    for (const int alpha : spec.alpha_list) {
      for (const double beta : spec.beta_list) {
        const std::uint64_t graph_seed =
            derive_stream(spec.base_seed, config_index, kSweepGraphStream);
        ++config_index;
        std::ostringstream desc;
        desc << spec.family << " n=" << n << " alpha=" << alpha << " beta=" << beta;
        try {
          ExperimentConfig cfg;
          cfg.graph = sweep_graph(spec.family, n, alpha, graph_seed);
          cfg.graph_source = desc.str();
          cfg.model = spec.model;
          if (cfg.model.kind == ModelKind::AdversarialPlusNoise)
            cfg.model = SmoothedModel::adversarial_const(spec.model.phi, spec.base_const,
                                                         cfg.graph.edge_count());
          cfg.rule = spec.rule;
          cfg.init = spec.init;
          cfg.trials = spec.trials;
          cfg.base_seed = derive_stream(spec.base_seed, config_index - 1, 23);
          cfg.c = spec.c;
          cfg.beta = beta;
          cfg.alpha = alpha;
          cfg.max_steps = spec.max_steps;
          cfg.threads = spec.threads;
          cfg.write_traces = false;

          const ExperimentResult er = run_experiment(cfg);
          std::vector<std::int64_t> ts;
          for (const TrialOutput& t : er.trials) {
            SweepRow row;
            row.family = spec.family;
            row.n = n;
            row.alpha = alpha;
            row.beta = beta;
            row.phi = spec.model.phi;
            row.c = spec.c;
            row.graph_seed = graph_seed;
            row.record = t.record;
            row.epsilon_c = er.epsilon_c;
            row.explicit_bound = er.explicit_bound;
            res.rows.push_back(std::move(row));
            ts.push_back(t.record.steps);
          }
          std::sort(ts.begin(), ts.end());
          const std::size_t mid = ts.size() / 2;
          const double median = ts.size() % 2 == 1
                                    ? static_cast<double>(ts[mid])
                                    : (static_cast<double>(ts[mid - 1] + ts[mid]) / 2.0);
          std::ostringstream m;
          m << spec.family << ',' << n << ',' << alpha << ',' << format_double(beta) << ','
            << format_double(spec.model.phi) << ',' << format_double(spec.c) << ','
            << spec.trials << ',' << format_double(median);
          res.median_rows.push_back(m.str());
        } catch (const std::exception& e) {
          res.failures.push_back(desc.str() + ": " + e.what());
        }
      }
    }
  }

  if (!spec.out_dir.empty()) {
    std::filesystem::create_directories(spec.out_dir);
    const std::filesystem::path dir(spec.out_dir);
    std::ostringstream table;
    table << sweep_csv_header() << '\n';
    for (const SweepRow& row : res.rows) table << sweep_csv_row(row) << '\n';
    write_text_file((dir / "sweep.csv").string(), table.str());
    std::ostringstream medians;
    medians << "family,n,alpha,beta,phi,c,trials,median_T\n";
    for (const std::string& m : res.median_rows) medians << m << '\n';
    write_text_file((dir / "sweep_medians.csv").string(), medians.str());
    if (!res.failures.empty()) {
      std::ostringstream fails;
      for (const std::string& f : res.failures) fails << f << '\n';
      write_text_file((dir / "failures.txt").string(), fails.str());
    }
  }
  return res;
}

}  // namespace sparseflip
