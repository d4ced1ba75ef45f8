#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "sparseflip/flip.hpp"
#include "sparseflip/graph.hpp"
#include "sparseflip/leveling.hpp"

namespace sparseflip {

/// Potentials reach n^Theta(log_beta(2*beta*alpha)) and overflow any fixed
/// width, so all potential arithmetic is exact arbitrary precision.
using BigInt = boost::multiprecision::cpp_int;

/// Level weight W(i) = (L - i + 1) * B^(L - i), with B = floor(2*beta*alpha).
/// The unadjusted (L - i) * B^(L-i) vanishes at i = L, so a deepest-level
/// flip would not decrease the potential; the +1 keeps every non-good flip
/// strictly decreasing and only inflates bounds by a constant factor.
BigInt level_weight(int level, int num_levels, std::int64_t base);

/// Active/inactive bookkeeping from the termination argument. All nodes
/// start active; a node turns inactive when it flips and is re-activated
/// when a strictly lower-level neighbor flips. Flipping a currently
/// inactive node is a good movement. potential = sum_i a_i * W(i) is
/// maintained exactly and decreases by at least 1 on every non-good flip.
class ActivityState {
 public:
  explicit ActivityState(const Leveling& lv);

  struct FlipEffect {
    bool was_good = false;
    BigInt delta_potential;
  };

  /// Applies one flip of v: reports whether v was inactive (good movement),
  /// deactivates v, activates v's strictly higher-level neighbors, and
  /// updates counts and potential. delta_potential is the exact change.
  FlipEffect record_flip(NodeId v);

  const BigInt& potential() const { return potential_; }
  /// Recomputes sum_i a_i * W(i) from the active flags; equals potential().
  BigInt potential_from_scratch() const;
  const BigInt& initial_potential() const { return initial_potential_; }

  bool active(NodeId v) const { return active_[static_cast<std::size_t>(v)] != 0; }
  std::int64_t active_count(int level) const {
    return active_per_level_[static_cast<std::size_t>(level - 1)];
  }
  const BigInt& weight_of_level(int level) const {
    return weights_[static_cast<std::size_t>(level - 1)];
  }
  const Leveling& leveling() const { return *lv_; }

 private:
  const Leveling* lv_;
  std::vector<std::uint8_t> active_;
  std::vector<std::int64_t> active_per_level_;  // a_i, index i-1
  std::vector<BigInt> weights_;                 // W(i), index i-1
  BigInt potential_;
  BigInt initial_potential_;
};

/// All nodes active, potential = sum_i |V_i| * W(i).
ActivityState init_activity(const Leveling& lv);

struct PairGain {
  double sum = 0.0;  ///< gain(t1) + gain(t2)
  /// One entry per edge of E_*(v), coefficient in {-2, 0, 2}. Edges to
  /// neighbors flipped an even number of times inside (t1, t2) cancel to 0.
  std::vector<std::pair<EdgeId, int>> coefficients;
};

/// Decomposes the combined gain of two flips of the same node v at trace
/// steps t1 < t2 (1-based) into coefficients over E_*(v). Requires that no
/// node of N(v) \ N_*(v) flipped inside (t1, t2); violations and any
/// mismatch between the stored gains and the coefficient sum are errors.
PairGain pair_gain(const FlipTrace& trace, const Leveling& lv, const GraphTopology& g,
                   const WeightAssignment& w, std::int64_t t1, std::int64_t t2);

struct GoodPair {
  std::int64_t t1 = 0;
  std::int64_t t2 = 0;
  NodeId node = -1;
  double gain_sum = 0.0;
};

/// Every pair of consecutive same-node flips with no strictly lower-level
/// neighbor flipping in between -- equivalently, every flip of a currently
/// inactive node paired with that node's previous flip. Re-derived from the
/// raw trace, independent of any online observer.
std::vector<GoodPair> scan_good_pairs(const FlipTrace& trace, const Leveling& lv,
                                      const GraphTopology& g, const WeightAssignment& w);

struct GapReport {
  std::int64_t max_gap = 0;
  std::vector<std::int64_t> gaps;
};

/// Step gaps between consecutive good movements, including the stretch
/// before the first and after the last one. A trace without good movements
/// reports the single gap T.
GapReport good_move_gaps(const FlipTrace& trace, const Leveling& lv);

/// Gap arithmetic on a precomputed per-step good-movement flag vector.
GapReport gaps_from_flags(const std::vector<std::uint8_t>& good);

struct BoundReport {
  std::int64_t n = 0;
  double phi = 0.0;
  int alpha = 0;
  double beta = 0.0;
  double c = 0.0;
  double epsilon_c = 0.0;    ///< lemma1_epsilon(phi, beta, alpha, n, c)
  BigInt window;             ///< worst-case initial potential + 1
  double explicit_bound = 0.0;
};

/// Explicit (non-asymptotic) iteration ceiling: within every `window` steps
/// the cut weight rises by at least epsilon_c, and it cannot rise more than
/// 2n^2 in total, so FLIP stops within ceil(2n^2 / epsilon_c) * window
/// steps. The window uses the worst case of all n nodes at level 1. The
/// constants are this implementation's derivation; the stated guarantee is
/// asymptotic only.
BoundReport theoretical_bound(std::int64_t n, double phi, int alpha, double beta, double c);

/// Per-step annotations produced while a run is in flight.
struct TraceAnnotations {
  std::vector<int> level;                     ///< level of the flipped node
  std::vector<std::uint8_t> good;             ///< good-movement flag
  std::vector<std::string> potential_after;   ///< exact decimal
  std::string initial_potential;
};

/// Observer for flip::run; feeds each step through an ActivityState and
/// accumulates the trace annotations.
class TraceAnnotator {
 public:
  explicit TraceAnnotator(const Leveling& lv);
  void observe(const FlipStep& s);
  const TraceAnnotations& annotations() const { return ann_; }
  const ActivityState& activity() const { return st_; }

 private:
  ActivityState st_;
  TraceAnnotations ann_;
};

}  // namespace sparseflip
