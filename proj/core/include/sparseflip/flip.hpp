#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "sparseflip/graph.hpp"
#include "sparseflip/rng.hpp"

namespace sparseflip {

/// Which improving vertex FLIP moves next. The algorithm itself is
/// rule-agnostic; every rule only ever selects a node with gain > 0.
enum class PivotRule {
  FirstImproving,   ///< round-robin scan starting after the last flipped index
  MaxGain,          ///< largest gain, ties to the smallest node index
  MinPositiveGain,  ///< smallest positive gain, ties to the smallest node index
  RandomImproving   ///< seeded uniform choice among improving nodes
};

std::string to_string(PivotRule rule);
PivotRule parse_pivot_rule(const std::string& s);

/// Mutable FLIP state: the cut plus the incrementally maintained cut weight
/// and per-node gains. last_flipped seeds the FirstImproving scan.
struct CutState {
  Cut cut;
  double weight = 0.0;
  std::vector<double> gains;
  NodeId last_flipped = -1;
};

struct FlipStep {
  std::int64_t index = 0;  ///< 1-based position in the trace
  NodeId node = -1;
  double gain = 0.0;       ///< > 0 in any genuine trace
  double weight_after = 0.0;
};

enum class TerminalStatus { LocalOptimum, BudgetExhausted };

std::string to_string(TerminalStatus s);

struct FlipTrace {
  Cut initial;
  std::vector<FlipStep> steps;
  TerminalStatus status = TerminalStatus::LocalOptimum;

  std::int64_t length() const { return static_cast<std::int64_t>(steps.size()); }
};

/// Called synchronously after each applied step; analysis instrumentation
/// attaches here.
using StepObserver = std::function<void(const FlipStep&)>;

/// From-scratch gain of flipping v: (sum of v's currently-uncut incident
/// weights) - (sum of currently-cut ones). Equals the cut-weight delta of
/// the flip.
double gain(const GraphTopology& g, const WeightAssignment& w, const Cut& c, NodeId v);

/// Builds the state with weight and all gains computed from scratch.
CutState make_cut_state(const GraphTopology& g, const WeightAssignment& w, Cut initial);

/// Exactly the nodes with gain > 0, ascending index, each with its gain.
std::vector<std::pair<NodeId, double>> improving_moves(const GraphTopology& g,
                                                       const WeightAssignment& w,
                                                       const CutState& st);

/// One FLIP move: selects per rule among improving nodes, applies the flip
/// with O(deg v) cache updates, and returns the step. Returns nullopt (state
/// untouched) at a local optimum. step_index is recorded in the step.
std::optional<FlipStep> step(const GraphTopology& g, const WeightAssignment& w, CutState& st,
                             PivotRule rule, Rng& rng, std::int64_t step_index = 1);

/// Repeats step until no improving move (LocalOptimum) or max_steps applied
/// flips (BudgetExhausted).
FlipTrace run(const GraphTopology& g, const WeightAssignment& w, Cut initial, PivotRule rule,
              std::int64_t max_steps, Rng& rng, const StepObserver& observer = {});

/// True iff gain(v) <= 0 for every v.
bool is_local_optimum(const GraphTopology& g, const WeightAssignment& w, const Cut& c);

}  // namespace sparseflip
