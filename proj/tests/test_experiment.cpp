#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <regex>
#include <string>

#include <json.hpp>

#include "sparseflip/experiment.hpp"
#include "sparseflip/generators.hpp"
#include "sparseflip/io.hpp"

using namespace sparseflip;

namespace {

std::filesystem::path scratch_dir(const std::string& name) {
  const auto dir = std::filesystem::temp_directory_path() / "sparseflip_exp_tests" / name;
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir);
  return dir;
}

std::string strip_wall_ms(const std::string& text) {
  return std::regex_replace(text, std::regex("\"wall_ms\":[^,}\\n]*"), "\"wall_ms\":X");
}

ExperimentConfig base_config(GraphTopology g) {
  ExperimentConfig cfg;
  cfg.graph = std::move(g);
  cfg.graph_source = "test";
  cfg.model = SmoothedModel::uniform();
  cfg.rule = PivotRule::FirstImproving;
  cfg.trials = 4;
  cfg.base_seed = 7;
  cfg.beta = 2.0;
  cfg.alpha = 2;
  return cfg;
}

}  // namespace

TEST_CASE("run_experiment on a single edge") {
  ExperimentConfig cfg = base_config(from_edge_list(2, {{0, 1}}));
  cfg.alpha = 1;
  cfg.trials = 8;
  const ExperimentResult res = run_experiment(cfg);
  CHECK(res.alpha_used == 1);
  CHECK(res.all_local_optimum);
  for (const TrialOutput& t : res.trials) {
    // Only two cut classes exist, so FLIP needs at most one move.
    CHECK(t.record.steps <= 1);
    CHECK(t.record.status == TerminalStatus::LocalOptimum);
    CHECK(t.record.initial_potential == "2");
  }
}

TEST_CASE("run_experiment derives alpha from degeneracy when unset") {
  ExperimentConfig cfg = base_config(gen_forest_union(24, 2, 5));
  cfg.alpha = 0;
  const ExperimentResult res = run_experiment(cfg);
  CHECK(res.alpha_used == degeneracy(cfg.graph).degeneracy);
}

TEST_CASE("file-provided initial cuts are honored") {
  ExperimentConfig cfg = base_config(from_edge_list(2, {{0, 1}}));
  cfg.alpha = 1;
  cfg.init = InitCutPolicy::FromFile;
  cfg.init_cut.side = {0, 1};  // already optimal whenever the weight is positive
  cfg.trials = 1;
  const ExperimentResult res = run_experiment(cfg);
  CHECK(res.trials[0].trace.initial.side == std::vector<std::uint8_t>{0, 1});

  cfg.init_cut.side = {0, 1, 0};
  CHECK_THROWS_AS(run_experiment(cfg), std::invalid_argument);
}

TEST_CASE("zero budget exhausts every trial") {
  ExperimentConfig cfg = base_config(gen_forest_union(16, 2, 3));
  cfg.max_steps = 0;
  const ExperimentResult res = run_experiment(cfg);
  CHECK(!res.all_local_optimum);
  for (const TrialOutput& t : res.trials)
    CHECK(t.record.status == TerminalStatus::BudgetExhausted);
}

TEST_CASE("summary lines carry the record faithfully") {
  ExperimentConfig cfg = base_config(gen_forest_union(20, 2, 9));
  const ExperimentResult res = run_experiment(cfg);
  const TrialRecord& r = res.trials[1].record;
  const auto j = nlohmann::json::parse(summary_json_line(r, res.epsilon_c, res.explicit_bound));
  CHECK(j.at("trial").get<int>() == 1);
  CHECK(j.at("T").get<std::int64_t>() == r.steps);
  CHECK(j.at("status").get<std::string>() == to_string(r.status));
  CHECK(j.at("final_cut_weight").get<double>() == r.final_cut_weight);
  CHECK(j.at("initial_potential").get<std::string>() == r.initial_potential);
  CHECK(j.at("epsilon_c").get<double>() == res.epsilon_c);
}

TEST_CASE("trial records are re-derivable from their traces") {
  ExperimentConfig cfg = base_config(gen_forest_union(32, 2, 21));
  cfg.init = InitCutPolicy::Random;
  const ExperimentResult res = run_experiment(cfg);
  for (const TrialOutput& t : res.trials) {
    CHECK(t.record.steps == t.trace.length());
    const auto pairs = scan_good_pairs(t.trace, res.leveling, cfg.graph, t.weights);
    CHECK(t.record.good_pairs == static_cast<std::int64_t>(pairs.size()));
    const GapReport gaps = good_move_gaps(t.trace, res.leveling);
    CHECK(t.record.max_gap == gaps.max_gap);
    if (!t.trace.steps.empty())
      CHECK(t.record.final_cut_weight == t.trace.steps.back().weight_after);
  }
}

TEST_CASE("reruns are byte-identical apart from wall time") {
  const auto dir_a = scratch_dir("rerun_a");
  const auto dir_b = scratch_dir("rerun_b");
  ExperimentConfig cfg = base_config(gen_forest_union(40, 2, 33));
  cfg.init = InitCutPolicy::Random;
  cfg.dump_leveling = true;

  cfg.out_dir = dir_a.string();
  cfg.threads = 1;
  run_experiment(cfg);
  cfg.out_dir = dir_b.string();
  cfg.threads = 4;  // scheduling must not leak into the bytes
  run_experiment(cfg);

  CHECK(read_text_file((dir_a / "config.json").string()) ==
        read_text_file((dir_b / "config.json").string()));
  CHECK(read_text_file((dir_a / "leveling.json").string()) ==
        read_text_file((dir_b / "leveling.json").string()));
  CHECK(strip_wall_ms(read_text_file((dir_a / "summary.jsonl").string())) ==
        strip_wall_ms(read_text_file((dir_b / "summary.jsonl").string())));
  for (int t = 0; t < cfg.trials; ++t) {
    char name[32];
    std::snprintf(name, sizeof(name), "trace_%05d.csv", t);
    CHECK(read_text_file((dir_a / name).string()) == read_text_file((dir_b / name).string()));
  }
}

TEST_CASE("verify_against_oracle") {
  SUBCASE("forest instances all pass") {
    ExperimentConfig cfg = base_config(gen_forest_union(12, 2, 77));
    cfg.trials = 100;
    const VerifyOutcome out = verify_against_oracle(cfg);
    CHECK(out.passed == 100);
    CHECK(out.failed == 0);
    CHECK(out.ok());
  }
  SUBCASE("size guard") {
    ExperimentConfig cfg = base_config(gen_forest_union(17, 2, 1));
    CHECK_THROWS_AS(verify_against_oracle(cfg), std::invalid_argument);
  }
  SUBCASE("budget-exhausted trials are counted separately") {
    ExperimentConfig cfg = base_config(gen_forest_union(12, 2, 77));
    cfg.max_steps = 0;
    cfg.trials = 5;
    const VerifyOutcome out = verify_against_oracle(cfg);
    CHECK(out.budget_exhausted == 5);
    CHECK(out.failed == 0);
    CHECK(out.passed == 0);
    CHECK(out.ok());
  }
  SUBCASE("a corrupted terminal cut is rejected") {
    const GraphTopology g = from_edge_list(2, {{0, 1}});
    const WeightAssignment w{{0.7}};
    const BruteForceResult bf = brute_force(g, w);
    Cut optimal = all_zeros_cut(2);
    optimal.side[1] = 1;
    CHECK(oracle_accepts(g, w, optimal, bf));
    CHECK(!oracle_accepts(g, w, all_zeros_cut(2), bf));
  }
}

TEST_CASE("run_sweep") {
  SUBCASE("grid accounting and bound ceiling") {
    SweepSpec spec;
    spec.family = "forest-union";
    spec.n_list = {16, 32, 48};
    spec.alpha_list = {2};
    spec.beta_list = {2.0};
    spec.model = SmoothedModel::uniform();
    spec.trials = 2;
    spec.base_seed = 99;
    const SweepResult res = run_sweep(spec);
    CHECK(res.failures.empty());
    CHECK(res.rows.size() == 6);
    CHECK(res.median_rows.size() == 3);
    for (const SweepRow& row : res.rows) {
      CHECK(double(row.record.steps) <= row.explicit_bound);
      CHECK(row.record.status == TerminalStatus::LocalOptimum);
    }
  }
  SUBCASE("empty grid is rejected") {
    SweepSpec spec;
    spec.model = SmoothedModel::uniform();
    CHECK_THROWS_AS(run_sweep(spec), std::invalid_argument);
  }
  SUBCASE("adversarial sweeps resolve the base offset per graph") {
    SweepSpec spec;
    spec.family = "forest-union";
    spec.n_list = {16, 24};
    spec.alpha_list = {2};
    spec.beta_list = {2.0};
    spec.model = SmoothedModel::adversarial_const(2.0, -0.25, 0);
    spec.base_const = -0.25;
    spec.trials = 2;
    const SweepResult res = run_sweep(spec);
    CHECK(res.failures.empty());
    CHECK(res.rows.size() == 4);
    for (const SweepRow& row : res.rows) CHECK(row.phi == 2.0);
  }
  SUBCASE("per-config failures do not abort the sweep") {
    SweepSpec spec;
    spec.family = "complete";  // K16 cannot peel with alpha=1
    spec.n_list = {4, 16};
    spec.alpha_list = {1};
    spec.beta_list = {2.0};
    spec.model = SmoothedModel::uniform();
    spec.trials = 1;
    const SweepResult res = run_sweep(spec);
    CHECK(res.failures.size() == 1);
    CHECK(res.rows.size() == 1);
  }
}
