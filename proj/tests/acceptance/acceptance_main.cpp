// Acceptance suite: one pass/fail line per criterion, nonzero exit on any
// failure. Tolerances and thresholds are pinned in the criterion bodies.

#include <array>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <regex>
#include <sstream>
#include <string>
#include <vector>

#include "sparseflip/analysis.hpp"
#include "sparseflip/experiment.hpp"
#include "sparseflip/flip.hpp"
#include "sparseflip/generators.hpp"
#include "sparseflip/io.hpp"
#include "sparseflip/leveling.hpp"
#include "sparseflip/oracle.hpp"
#include "sparseflip/smoothing.hpp"

using namespace sparseflip;

namespace {

Rng g_probe_rng(20260810);

GraphTopology random_gnp(NodeId n, double p, Rng& rng) {
  std::vector<std::pair<NodeId, NodeId>> edges;
  for (NodeId u = 0; u < n; ++u)
    for (NodeId v = u + 1; v < n; ++v)
      if (rng.uniform01() < p) edges.emplace_back(u, v);
  return from_edge_list(n, edges);
}

WeightAssignment random_weights(EdgeId m, Rng& rng) {
  WeightAssignment w;
  for (EdgeId e = 0; e < m; ++e) w.values.push_back(rng.uniform(-1.0, 1.0));
  return w;
}

Cut random_cut(NodeId n, Rng& rng) {
  Cut c = all_zeros_cut(n);
  for (auto& b : c.side) b = rng.coin() ? 1 : 0;
  return c;
}

// ---- criterion 1: local-optimality vs the brute-force oracle ----
bool criterion_local_optimality(std::string& detail) {
  int passed = 0, total = 0;
  for (const PivotRule rule : {PivotRule::FirstImproving, PivotRule::MaxGain,
                               PivotRule::MinPositiveGain, PivotRule::RandomImproving}) {
    ExperimentConfig cfg;
    cfg.graph = gen_forest_union(12, 2, 4242);
    cfg.model = SmoothedModel::uniform();
    cfg.rule = rule;
    cfg.trials = 100;
    cfg.base_seed = 1000 + static_cast<std::uint64_t>(rule);
    cfg.alpha = 2;
    cfg.beta = 2.0;
    const VerifyOutcome out = verify_against_oracle(cfg);
    passed += out.passed;
    total += out.passed + out.failed + out.budget_exhausted;
  }
  detail = std::to_string(passed) + "/" + std::to_string(total) +
           " terminal cuts confirmed by enumeration (100 trials per pivot rule)";
  return passed == total && total == 400;
}

// ---- criterion 2: gain exactness and incremental cache drift ----
bool criterion_gain_exactness(std::string& detail) {
  double worst_probe = 0.0;
  for (int probe = 0; probe < 10000; ++probe) {
    const NodeId n = 2 + static_cast<NodeId>(g_probe_rng.bounded(31));
    const GraphTopology g = random_gnp(n, 0.3, g_probe_rng);
    const WeightAssignment w = random_weights(g.edge_count(), g_probe_rng);
    const Cut c = random_cut(n, g_probe_rng);
    const NodeId v = static_cast<NodeId>(g_probe_rng.bounded(n));
    Cut flipped = c;
    flipped.side[v] ^= 1;
    const double err =
        std::abs(gain(g, w, c, v) - (cut_weight(g, w, flipped) - cut_weight(g, w, c)));
    worst_probe = std::max(worst_probe, err);
  }
  if (worst_probe > 1e-12) {
    detail = "gain probe error " + std::to_string(worst_probe) + " exceeds 1e-12";
    return false;
  }

  double worst_cache = 0.0;
  for (int run_idx = 0; run_idx < 50; ++run_idx) {
    const GraphTopology g = gen_forest_union(48, 2, 300 + run_idx);
    const WeightAssignment w =
        sample_weights(SmoothedModel::uniform(), g, derive_stream(2, run_idx, 0));
    CutState st = make_cut_state(g, w, random_cut(g.n, g_probe_rng));
    Rng pivot(run_idx);
    const PivotRule rule = static_cast<PivotRule>(run_idx % 4);
    std::int64_t t = 1;
    while (step(g, w, st, rule, pivot, t)) {
      ++t;
      worst_cache = std::max(worst_cache, std::abs(st.weight - cut_weight(g, w, st.cut)));
      for (NodeId v = 0; v < g.n; ++v)
        worst_cache = std::max(worst_cache, std::abs(st.gains[v] - gain(g, w, st.cut, v)));
    }
  }
  std::ostringstream ss;
  ss << "worst probe error " << worst_probe << ", worst cache drift " << worst_cache;
  detail = ss.str();
  return worst_cache <= 1e-9;
}

// ---- criterion 3: leveling invariants across every generator family ----
bool criterion_leveling_invariants(std::string& detail) {
  struct Case {
    GraphTopology g;
    int alpha;
  };
  int checked = 0;
  for (const double beta : {2.0, 4.0}) {
    std::vector<Case> cases;
    for (std::uint64_t s = 0; s < 20; ++s)
      cases.push_back({gen_forest_union(200, 2, s), 2});
    for (std::uint64_t s = 0; s < 20; ++s)
      cases.push_back({gen_preferential_attachment(200, 3, s), 3});
    for (NodeId n = 5; n < 25; ++n) cases.push_back({gen_complete(n), (n + 1) / 2});
    for (NodeId r = 2; r < 22; ++r) cases.push_back({gen_grid(r, 11), 2});

    for (const Case& cs : cases) {
      Leveling lv;
      try {
        lv = peel_partition(cs.g, cs.alpha, beta);
      } catch (const std::exception& e) {
        detail = "peel_partition failed (n=" + std::to_string(cs.g.n) + "): " + e.what();
        return false;
      }
      if (lv.num_levels > ceil_log(beta, cs.g.n)) {
        detail = "round count exceeded ceil(log_beta n)";
        return false;
      }
      const double cap = 2.0 * beta * cs.alpha;
      for (NodeId v = 0; v < cs.g.n; ++v) {
        if (static_cast<double>(lv.restricted[v].size()) > cap) {
          detail = "|N_*(v)| exceeded 2*beta*alpha";
          return false;
        }
      }
      if (!validate_leveling(cs.g, lv).empty()) {
        detail = "validate_leveling reported violations";
        return false;
      }
      ++checked;
    }
  }
  detail = std::to_string(checked) + " (family, instance, beta) levelings validated clean";
  return true;
}

struct TraceBundle {
  GraphTopology graph;
  Leveling leveling;
  std::vector<FlipTrace> traces;
  std::vector<WeightAssignment> weights;
};

// Shared corpus for criteria 4 and 5: n=256, alpha=2, beta=2, mixed rules
// and models so the traces actually contain re-flips.
const TraceBundle& trace_corpus() {
  static const TraceBundle bundle = [] {
    TraceBundle b;
    b.graph = gen_forest_union(256, 2, 77);
    b.leveling = peel_partition(b.graph, 2, 2.0);
    const SmoothedModel uniform = SmoothedModel::uniform();
    const SmoothedModel biased =
        SmoothedModel::adversarial_const(0.6, -0.9, b.graph.edge_count());
    Rng init_rng(5150);
    int trial = 0;
    for (int k = 0; k < 60; ++k, ++trial) {
      const SmoothedModel& model = (k % 2 == 0) ? uniform : biased;
      const WeightAssignment w =
          sample_weights(model, b.graph, derive_stream(640, trial, 0));
      Rng pivot(derive_stream(640, trial, 2));
      const PivotRule rule = static_cast<PivotRule>(k % 4);
      b.traces.push_back(run(b.graph, w, random_cut(b.graph.n, init_rng), rule,
                             std::int64_t{1} << 40, pivot));
      b.weights.push_back(w);
    }
    return b;
  }();
  return bundle;
}

// ---- criterion 4: potential decrease and gap ceiling ----
bool criterion_potential_decrease(std::string& detail) {
  const TraceBundle& b = trace_corpus();
  std::int64_t flips = 0, good = 0;
  for (const FlipTrace& t : b.traces) {
    ActivityState st = init_activity(b.leveling);
    const BigInt initial = st.potential();
    std::vector<std::uint8_t> flags;
    for (const FlipStep& s : t.steps) {
      const auto eff = st.record_flip(s.node);
      ++flips;
      if (eff.was_good) {
        ++good;
      } else if (eff.delta_potential > -1) {
        detail = "non-good flip changed the potential by " + eff.delta_potential.str();
        return false;
      }
      if (st.potential() < 0) {
        detail = "potential went negative";
        return false;
      }
      flags.push_back(eff.was_good ? 1 : 0);
    }
    const GapReport gaps = gaps_from_flags(flags);
    if (BigInt(gaps.max_gap) > initial) {
      detail = "gap " + std::to_string(gaps.max_gap) + " exceeded the initial potential " +
               initial.str();
      return false;
    }
  }
  detail = std::to_string(b.traces.size()) + " runs, " + std::to_string(flips) +
           " flips (" + std::to_string(good) + " good): potential dropped >= 1 on every "
           "non-good flip, gaps within the initial potential";
  return true;
}

// ---- criterion 5: pair-gain decomposition over E_*(v) ----
bool criterion_pair_gain(std::string& detail) {
  const TraceBundle& b = trace_corpus();
  std::int64_t pairs_checked = 0;
  double worst = 0.0;
  for (std::size_t i = 0; i < b.traces.size(); ++i) {
    const FlipTrace& t = b.traces[i];
    const WeightAssignment& w = b.weights[i];
    for (const GoodPair& p : scan_good_pairs(t, b.leveling, b.graph, w)) {
      PairGain pg;
      try {
        pg = pair_gain(t, b.leveling, b.graph, w, p.t1, p.t2);
      } catch (const std::exception& e) {
        detail = "pair (" + std::to_string(p.t1) + "," + std::to_string(p.t2) +
                 ") rejected: " + e.what();
        return false;
      }
      // Independent recount: parity of neighbor flips inside (t1, t2).
      std::vector<std::int64_t> flips(b.graph.n, 0);
      for (std::int64_t s = p.t1 + 1; s < p.t2; ++s)
        ++flips[t.steps[static_cast<std::size_t>(s - 1)].node];
      double sum = 0.0;
      for (const auto& [e, coeff] : pg.coefficients) {
        const auto [eu, ev] = b.graph.edges[static_cast<std::size_t>(e)];
        const NodeId u = (eu == p.node) ? ev : eu;
        if (flips[u] % 2 == 0 && coeff != 0) {
          detail = "even-flipped neighbor carried a nonzero coefficient";
          return false;
        }
        if (coeff != -2 && coeff != 0 && coeff != 2) {
          detail = "coefficient outside {-2,0,2}";
          return false;
        }
        sum += coeff * w.values[static_cast<std::size_t>(e)];
      }
      const double gain_sum =
          t.steps[static_cast<std::size_t>(p.t1 - 1)].gain +
          t.steps[static_cast<std::size_t>(p.t2 - 1)].gain;
      worst = std::max(worst, std::abs(gain_sum - sum));
      ++pairs_checked;
    }
  }
  std::ostringstream ss;
  ss << pairs_checked << " good pairs decomposed, worst residual " << worst;
  detail = ss.str();
  return pairs_checked > 0 && worst <= 1e-9;
}

// ---- criterion 6: Monte Carlo check of the union bound ----
bool criterion_union_bound_mc(std::string& detail) {
  // Fixed node with |E_*(v)| = 4: the star K_{1,4}. For eps = 1e-3 the
  // chance that any nonzero lambda in {-2,0,2}^4 lands in [0, eps] is at
  // most union_bound(4, 1e-3, 1/2) = 0.0405.
  const GraphTopology star = from_edge_list(5, {{0, 1}, {0, 2}, {0, 3}, {0, 4}});
  const SmoothedModel model = SmoothedModel::uniform();
  constexpr double kEps = 1e-3;
  constexpr int kResamples = 1000000;

  std::vector<std::array<int, 4>> lambdas;
  for (int code = 0; code < 81; ++code) {
    std::array<int, 4> lam{};
    int x = code;
    for (int i = 0; i < 4; ++i, x /= 3) lam[i] = (x % 3 - 1) * 2;
    if (lam == std::array<int, 4>{0, 0, 0, 0}) continue;
    lambdas.push_back(lam);
  }

  std::int64_t hits = 0;
  for (int r = 0; r < kResamples; ++r) {
    const WeightAssignment w = sample_weights(model, star, derive_stream(606, r, 0));
    for (const auto& lam : lambdas) {
      double s = 0.0;
      for (int i = 0; i < 4; ++i) s += lam[i] * w.values[static_cast<std::size_t>(i)];
      if (s >= 0.0 && s <= kEps) {
        ++hits;
        break;
      }
    }
  }
  const double bound = union_bound(4, kEps, 0.5);
  const double sigma = std::sqrt(bound * (1.0 - bound) / double(kResamples));
  const double rate = double(hits) / double(kResamples);
  std::ostringstream ss;
  ss << "empirical " << rate << " vs bound " << bound << " + 5*sigma = "
     << bound + 5.0 * sigma;
  detail = ss.str();
  return bound == 0.0405 && rate <= bound + 5.0 * sigma;
}

// ---- criterion 7: observed iterations stay under the explicit bound ----
bool criterion_bound_ceiling(std::string& detail) {
  SweepSpec spec;
  spec.family = "forest-union";
  spec.n_list = {64, 128, 256};
  spec.alpha_list = {1, 2};
  spec.beta_list = {2.0};
  spec.model = SmoothedModel::uniform();
  spec.trials = 5;
  spec.base_seed = 2026;
  spec.c = 1.0;
  const SweepResult res = run_sweep(spec);
  if (!res.failures.empty()) {
    detail = "sweep config failed: " + res.failures.front();
    return false;
  }
  std::int64_t max_T = 0;
  for (const SweepRow& row : res.rows) {
    max_T = std::max(max_T, row.record.steps);
    if (double(row.record.steps) > row.explicit_bound) {
      detail = "T exceeded the explicit bound";
      return false;
    }
  }
  detail = std::to_string(res.rows.size()) + " runs, max T " + std::to_string(max_T) +
           ", all under their explicit bounds";
  return res.rows.size() == 30;
}

// ---- criterion 8: sampler density histograms ----
bool criterion_density(std::string& detail) {
  std::vector<std::pair<NodeId, NodeId>> chain;
  for (NodeId e = 0; e < 10000; ++e) chain.emplace_back(e, e + 1);
  const GraphTopology path = from_edge_list(10001, chain);
  constexpr int kBins = 200;
  constexpr double kWidth = 2.0 / kBins;
  constexpr std::int64_t kDraws = 1000000;

  const auto max_density = [&](const SmoothedModel& model) {
    std::array<std::int64_t, kBins> bins{};
    for (std::uint64_t s = 0; s < 100; ++s) {
      const WeightAssignment w = sample_weights(model, path, derive_stream(808, s, 0));
      for (const double x : w.values) {
        int b = static_cast<int>((x + 1.0) / kWidth);
        if (b == kBins) b = kBins - 1;
        ++bins[static_cast<std::size_t>(b)];
      }
    }
    std::int64_t worst = 0;
    for (const std::int64_t c : bins) worst = std::max(worst, c);
    return double(worst) / (double(kDraws) * kWidth);
  };

  const auto ceiling = [&](double phi) {
    const double p = std::min(1.0, phi * kWidth);
    return phi + 5.0 * std::sqrt(p * (1.0 - p) / double(kDraws)) / kWidth;
  };

  const double uniform_peak = max_density(SmoothedModel::uniform());
  const double adv_peak =
      max_density(SmoothedModel::adversarial_const(2.0, -0.3, path.edge_count()));
  std::ostringstream ss;
  ss << "uniform peak " << uniform_peak << " <= " << ceiling(0.5) << ", adversarial peak "
     << adv_peak << " <= " << ceiling(2.0);
  detail = ss.str();
  return uniform_peak <= ceiling(0.5) && adv_peak <= ceiling(2.0);
}

// ---- criterion 9: byte-identical reruns ----
bool criterion_determinism(std::string& detail) {
  namespace fs = std::filesystem;
  const fs::path root = fs::temp_directory_path() / "sparseflip_acceptance";
  fs::remove_all(root);

  const auto strip_wall_json = [](std::string text) {
    return std::regex_replace(text, std::regex("\"wall_ms\":[^,}\\n]*"), "\"wall_ms\":X");
  };
  const auto strip_wall_csv = [](const std::string& text) {
    std::istringstream in(text);
    std::ostringstream out;
    std::string line;
    while (std::getline(in, line)) {
      const auto pos = line.rfind(',');
      out << line.substr(0, pos) << '\n';
    }
    return out.str();
  };

  ExperimentConfig cfg;
  cfg.graph = gen_forest_union(64, 2, 31);
  cfg.graph_source = "forest-union n=64 alpha=2 seed=31";
  cfg.model = SmoothedModel::uniform();
  cfg.rule = PivotRule::RandomImproving;
  cfg.init = InitCutPolicy::Random;
  cfg.trials = 6;
  cfg.base_seed = 99;
  cfg.alpha = 2;
  cfg.beta = 2.0;
  cfg.dump_leveling = true;

  cfg.out_dir = (root / "run_a").string();
  cfg.threads = 1;
  run_experiment(cfg);
  cfg.out_dir = (root / "run_b").string();
  cfg.threads = 4;
  run_experiment(cfg);

  for (const char* name : {"config.json", "leveling.json"}) {
    if (read_text_file((root / "run_a" / name).string()) !=
        read_text_file((root / "run_b" / name).string())) {
      detail = std::string(name) + " differs between reruns";
      return false;
    }
  }
  if (strip_wall_json(read_text_file((root / "run_a" / "summary.jsonl").string())) !=
      strip_wall_json(read_text_file((root / "run_b" / "summary.jsonl").string()))) {
    detail = "summary.jsonl differs between reruns";
    return false;
  }
  for (int t = 0; t < cfg.trials; ++t) {
    char name[32];
    std::snprintf(name, sizeof(name), "trace_%05d.csv", t);
    if (read_text_file((root / "run_a" / name).string()) !=
        read_text_file((root / "run_b" / name).string())) {
      detail = std::string(name) + " differs between reruns";
      return false;
    }
  }

  SweepSpec spec;
  spec.family = "forest-union";
  spec.n_list = {32, 64};
  spec.alpha_list = {2};
  spec.beta_list = {2.0};
  spec.model = SmoothedModel::uniform();
  spec.trials = 3;
  spec.base_seed = 11;
  spec.out_dir = (root / "sweep_a").string();
  run_sweep(spec);
  spec.out_dir = (root / "sweep_b").string();
  spec.threads = 3;
  run_sweep(spec);

  if (strip_wall_csv(read_text_file((root / "sweep_a" / "sweep.csv").string())) !=
      strip_wall_csv(read_text_file((root / "sweep_b" / "sweep.csv").string()))) {
    detail = "sweep.csv differs between reruns";
    return false;
  }
  if (read_text_file((root / "sweep_a" / "sweep_medians.csv").string()) !=
      read_text_file((root / "sweep_b" / "sweep_medians.csv").string())) {
    detail = "sweep_medians.csv differs between reruns";
    return false;
  }
  detail = "run and sweep outputs byte-identical across reruns and thread counts "
           "(wall_ms aside)";
  return true;
}

struct Criterion {
  int id;
  const char* name;
  std::function<bool(std::string&)> body;
};

}  // namespace

int main() {
  const std::vector<Criterion> criteria = {
      {1, "local-optimality oracle", criterion_local_optimality},
      {2, "gain exactness", criterion_gain_exactness},
      {3, "leveling invariants", criterion_leveling_invariants},
      {4, "potential decrease", criterion_potential_decrease},
      {5, "pair-gain decomposition", criterion_pair_gain},
      {6, "union-bound Monte Carlo", criterion_union_bound_mc},
      {7, "explicit bound ceiling", criterion_bound_ceiling},
      {8, "sampler density", criterion_density},
      {9, "determinism", criterion_determinism},
  };

  int failures = 0;
  for (const Criterion& c : criteria) {
    std::string detail;
    bool ok = false;
    try {
      ok = c.body(detail);
    } catch (const std::exception& e) {
      detail = std::string("exception: ") + e.what();
    }
    if (!ok) ++failures;
    std::printf("[%s] criterion %d: %s — %s\n", ok ? "PASS" : "FAIL", c.id, c.name,
                detail.c_str());
    std::fflush(stdout);
  }
  if (failures == 0)
    std::printf("all %zu acceptance criteria passed\n", criteria.size());
  else
    std::printf("%d acceptance criteria FAILED\n", failures);
  return failures;
}
