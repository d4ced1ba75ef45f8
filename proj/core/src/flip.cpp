#include "sparseflip/flip.hpp"

#include <stdexcept>

namespace sparseflip {

std::string to_string(PivotRule rule) {
  switch (rule) {
    case PivotRule::FirstImproving: return "first-improving";
    case PivotRule::MaxGain: return "max-gain";
    case PivotRule::MinPositiveGain: return "min-positive-gain";
    case PivotRule::RandomImproving: return "random-improving";
  }
  return "?";
}

PivotRule parse_pivot_rule(const std::string& s) {
  if (s == "first-improving" || s == "first") return PivotRule::FirstImproving;
  if (s == "max-gain" || s == "max") return PivotRule::MaxGain;
  if (s == "min-positive-gain" || s == "min") return PivotRule::MinPositiveGain;
  if (s == "random-improving" || s == "random") return PivotRule::RandomImproving;
  throw std::invalid_argument("unknown pivot rule: " + s);
}

std::string to_string(TerminalStatus s) {
  return s == TerminalStatus::LocalOptimum ? "LocalOptimum" : "BudgetExhausted";
}

double gain(const GraphTopology& g, const WeightAssignment& w, const Cut& c, NodeId v) {
  if (v < 0 || v >= g.n) throw std::invalid_argument("gain: node out of range");
  double total = 0.0;
  const auto side_v = c.side[static_cast<std::size_t>(v)];
  for (const auto& [u, e] : g.adjacency[static_cast<std::size_t>(v)]) {
    const double we = w.values[static_cast<std::size_t>(e)];
    // Uncut incident edge becomes cut on flip (+w), cut becomes uncut (-w).
    total += (c.side[static_cast<std::size_t>(u)] == side_v) ? we : -we;
  }
  return total;
}

CutState make_cut_state(const GraphTopology& g, const WeightAssignment& w, Cut initial) {
  if (initial.size() != g.n) throw std::invalid_argument("initial cut size mismatch");
  if (static_cast<EdgeId>(w.values.size()) != g.edge_count())
    throw std::invalid_argument("weight count mismatch");
  CutState st;
  st.cut = std::move(initial);
  st.weight = cut_weight(g, w, st.cut);
  st.gains.resize(static_cast<std::size_t>(g.n));
  for (NodeId v = 0; v < g.n; ++v) st.gains[static_cast<std::size_t>(v)] = gain(g, w, st.cut, v);
  return st;
}

std::vector<std::pair<NodeId, double>> improving_moves(const GraphTopology& g,
                                                       const WeightAssignment&,
                                                       const CutState& st) {
  std::vector<std::pair<NodeId, double>> out;
  for (NodeId v = 0; v < g.n; ++v) {
    const double gv = st.gains[static_cast<std::size_t>(v)];
    if (gv > 0.0) out.emplace_back(v, gv);
  }
  return out;
}

namespace {

NodeId select_node(const GraphTopology& g, const CutState& st, PivotRule rule, Rng& rng) {
  const NodeId n = g.n;
  switch (rule) {
    case PivotRule::FirstImproving: {
      const NodeId start = st.last_flipped + 1;
      for (NodeId k = 0; k < n; ++k) {
        const NodeId v = static_cast<NodeId>((start + k) % n);
        if (st.gains[static_cast<std::size_t>(v)] > 0.0) return v;
      }
      return -1;
    }
    case PivotRule::MaxGain: {
      NodeId best = -1;
      double best_gain = 0.0;
      for (NodeId v = 0; v < n; ++v) {
        const double gv = st.gains[static_cast<std::size_t>(v)];
        if (gv > 0.0 && (best == -1 || gv > best_gain)) {
          best = v;
          best_gain = gv;
        }
      }
      return best;
    }
    case PivotRule::MinPositiveGain: {
      NodeId best = -1;
      double best_gain = 0.0;
      for (NodeId v = 0; v < n; ++v) {
        const double gv = st.gains[static_cast<std::size_t>(v)];
        if (gv > 0.0 && (best == -1 || gv < best_gain)) {
          best = v;
          best_gain = gv;
        }
      }
      return best;
    }
    case PivotRule::RandomImproving: {
      // Count then index: two passes, no allocation in the hot loop.
      std::uint64_t count = 0;
      for (NodeId v = 0; v < n; ++v)
        if (st.gains[static_cast<std::size_t>(v)] > 0.0) ++count;
      if (count == 0) return -1;
      std::uint64_t pick = rng.bounded(count);
      for (NodeId v = 0; v < n; ++v) {
        if (st.gains[static_cast<std::size_t>(v)] > 0.0 && pick-- == 0) return v;
      }
      return -1;
    }
  }
  return -1;
}

void apply_flip(const GraphTopology& g, const WeightAssignment& w, CutState& st, NodeId v) {
  const double gv = st.gains[static_cast<std::size_t>(v)];
  st.weight += gv;
  st.cut.side[static_cast<std::size_t>(v)] ^= 1u;
  const auto side_v = st.cut.side[static_cast<std::size_t>(v)];
  for (const auto& [u, e] : g.adjacency[static_cast<std::size_t>(v)]) {
    const double we = w.values[static_cast<std::size_t>(e)];
    const bool now_cut = st.cut.side[static_cast<std::size_t>(u)] != side_v;
    // The edge switched cut status, so its sign in u's gain flips.
    st.gains[static_cast<std::size_t>(u)] += now_cut ? -2.0 * we : 2.0 * we;
  }
  st.gains[static_cast<std::size_t>(v)] = -gv;
  st.last_flipped = v;
}

}  // namespace

std::optional<FlipStep> step(const GraphTopology& g, const WeightAssignment& w, CutState& st,
                             PivotRule rule, Rng& rng, std::int64_t step_index) {
  const NodeId v = select_node(g, st, rule, rng);
  if (v == -1) return std::nullopt;
  FlipStep s;
  s.index = step_index;
  s.node = v;
  s.gain = st.gains[static_cast<std::size_t>(v)];
  apply_flip(g, w, st, v);
  s.weight_after = st.weight;
  return s;
}

FlipTrace run(const GraphTopology& g, const WeightAssignment& w, Cut initial, PivotRule rule,
              std::int64_t max_steps, Rng& rng, const StepObserver& observer) {
  if (max_steps < 0) throw std::invalid_argument("run requires max_steps >= 0");
  FlipTrace trace;
  trace.initial = initial;
  CutState st = make_cut_state(g, w, std::move(initial));
  while (true) {
    if (trace.length() >= max_steps) {
      // Budget spent; only a terminal state if no move remains.
      trace.status = improving_moves(g, w, st).empty() ? TerminalStatus::LocalOptimum
                                                       : TerminalStatus::BudgetExhausted;
      return trace;
    }
    auto s = step(g, w, st, rule, rng, trace.length() + 1);
    if (!s) {
      trace.status = TerminalStatus::LocalOptimum;
      return trace;
    }
    trace.steps.push_back(*s);
    if (observer) observer(*s);
  }
}

bool is_local_optimum(const GraphTopology& g, const WeightAssignment& w, const Cut& c) {
  for (NodeId v = 0; v < g.n; ++v)
    if (gain(g, w, c, v) > 0.0) return false;
  return true;
}

}  // namespace sparseflip
