#include "sparseflip/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "sparseflip/smoothing.hpp"

namespace sparseflip {

BigInt level_weight(int level, int num_levels, std::int64_t base) {
  if (level < 1 || level > num_levels) throw std::invalid_argument("level outside [1, L]");
  BigInt w = num_levels - level + 1;
  BigInt b = base;
  return w * boost::multiprecision::pow(b, static_cast<unsigned>(num_levels - level));
}

ActivityState::ActivityState(const Leveling& lv) : lv_(&lv) {
  const NodeId n = lv.node_count();
  active_.assign(static_cast<std::size_t>(n), 1);
  active_per_level_.assign(static_cast<std::size_t>(lv.num_levels), 0);
  weights_.reserve(static_cast<std::size_t>(lv.num_levels));
  const std::int64_t base = lv.threshold_floor();
  for (int i = 1; i <= lv.num_levels; ++i)
    weights_.push_back(level_weight(i, lv.num_levels, base));
  for (NodeId v = 0; v < n; ++v)
    ++active_per_level_[static_cast<std::size_t>(lv.level[static_cast<std::size_t>(v)] - 1)];
  potential_ = potential_from_scratch();
  initial_potential_ = potential_;
}

BigInt ActivityState::potential_from_scratch() const {
  std::vector<std::int64_t> counts(static_cast<std::size_t>(lv_->num_levels), 0);
  for (NodeId v = 0; v < lv_->node_count(); ++v)
    if (active_[static_cast<std::size_t>(v)])
      ++counts[static_cast<std::size_t>(lv_->level[static_cast<std::size_t>(v)] - 1)];
  BigInt total = 0;
  for (int i = 1; i <= lv_->num_levels; ++i)
    total += BigInt(counts[static_cast<std::size_t>(i - 1)]) *
             weights_[static_cast<std::size_t>(i - 1)];
  return total;
}

ActivityState::FlipEffect ActivityState::record_flip(NodeId v) {
  if (v < 0 || v >= lv_->node_count())
    throw std::invalid_argument("record_flip: node out of range");
  FlipEffect eff;
  eff.was_good = active_[static_cast<std::size_t>(v)] == 0;
  eff.delta_potential = 0;

  const int level_v = lv_->level[static_cast<std::size_t>(v)];
  if (!eff.was_good) {
    active_[static_cast<std::size_t>(v)] = 0;
    --active_per_level_[static_cast<std::size_t>(level_v - 1)];
    eff.delta_potential -= weights_[static_cast<std::size_t>(level_v - 1)];
  }
  // Re-activate exactly the strictly higher-level neighbors; they all live
  // in restricted(v), lower levels are never touched.
  for (const auto& [u, e] : lv_->restricted[static_cast<std::size_t>(v)]) {
    (void)e;
    const int level_u = lv_->level[static_cast<std::size_t>(u)];
    if (level_u > level_v && !active_[static_cast<std::size_t>(u)]) {
      active_[static_cast<std::size_t>(u)] = 1;
      ++active_per_level_[static_cast<std::size_t>(level_u - 1)];
      eff.delta_potential += weights_[static_cast<std::size_t>(level_u - 1)];
    }
  }
  potential_ += eff.delta_potential;
  return eff;
}

ActivityState init_activity(const Leveling& lv) { return ActivityState(lv); }

namespace {

// Side bits just before 1-based step t, replayed from the initial cut.
std::vector<std::uint8_t> replay_sides(const FlipTrace& trace, std::int64_t t) {
  std::vector<std::uint8_t> side = trace.initial.side;
  for (std::int64_t s = 1; s < t; ++s)
    side[static_cast<std::size_t>(trace.steps[static_cast<std::size_t>(s - 1)].node)] ^= 1u;
  return side;
}

}  // namespace

PairGain pair_gain(const FlipTrace& trace, const Leveling& lv, const GraphTopology& g,
                   const WeightAssignment& w, std::int64_t t1, std::int64_t t2) {
  if (t1 < 1 || t2 > trace.length() || t1 >= t2)
    throw std::invalid_argument("pair_gain: need 1 <= t1 < t2 <= T");
  const FlipStep& s1 = trace.steps[static_cast<std::size_t>(t1 - 1)];
  const FlipStep& s2 = trace.steps[static_cast<std::size_t>(t2 - 1)];
  if (s1.node != s2.node)
    throw std::invalid_argument("pair_gain: steps " + std::to_string(t1) + " and " +
                                std::to_string(t2) + " flip different nodes");
  const NodeId v = s1.node;
  const int level_v = lv.level[static_cast<std::size_t>(v)];

  // Flip counts of v's neighbors inside the open interval (t1, t2); any
  // flip of a strictly lower-level neighbor voids the decomposition.
  std::vector<std::uint8_t> lower_neighbor(static_cast<std::size_t>(g.n), 0);
  for (const auto& [u, e] : g.adjacency[static_cast<std::size_t>(v)]) {
    (void)e;
    if (lv.level[static_cast<std::size_t>(u)] < level_v)
      lower_neighbor[static_cast<std::size_t>(u)] = 1;
  }
  std::vector<std::int64_t> flips(static_cast<std::size_t>(g.n), 0);
  for (std::int64_t t = t1 + 1; t < t2; ++t) {
    const NodeId u = trace.steps[static_cast<std::size_t>(t - 1)].node;
    if (lower_neighbor[static_cast<std::size_t>(u)])
      throw std::invalid_argument("pair_gain: step " + std::to_string(t) + " flips node " +
                                  std::to_string(u) + " in N(v) \\ N_*(v)");
    ++flips[static_cast<std::size_t>(u)];
  }

  const std::vector<std::uint8_t> side = replay_sides(trace, t1);
  PairGain pg;
  pg.sum = s1.gain + s2.gain;
  double coeff_sum = 0.0;
  for (const auto& [u, e] : lv.restricted[static_cast<std::size_t>(v)]) {
    // sigma is the edge's sign in the t1 gain: +1 if uncut just before t1.
    const int sigma = side[static_cast<std::size_t>(u)] == side[static_cast<std::size_t>(v)]
                          ? 1
                          : -1;
    const bool odd = (flips[static_cast<std::size_t>(u)] & 1) != 0;
    const int coeff = odd ? 2 * sigma : 0;
    pg.coefficients.emplace_back(e, coeff);
    coeff_sum += coeff * w.values[static_cast<std::size_t>(e)];
  }
  if (std::abs(pg.sum - coeff_sum) > 1e-9)
    throw std::logic_error("pair_gain: decomposition mismatch, gains sum to " +
                           std::to_string(pg.sum) + " but coefficients give " +
                           std::to_string(coeff_sum));
  return pg;
}

std::vector<GoodPair> scan_good_pairs(const FlipTrace& trace, const Leveling& lv,
                                      const GraphTopology& g, const WeightAssignment&) {
  (void)g;
  std::vector<GoodPair> pairs;
  ActivityState st(lv);
  std::vector<std::int64_t> last_flip(static_cast<std::size_t>(lv.node_count()), 0);
  for (std::int64_t t = 1; t <= trace.length(); ++t) {
    const FlipStep& s = trace.steps[static_cast<std::size_t>(t - 1)];
    const auto eff = st.record_flip(s.node);
    if (eff.was_good) {
      const std::int64_t t1 = last_flip[static_cast<std::size_t>(s.node)];
      pairs.push_back({t1, t, s.node,
                       trace.steps[static_cast<std::size_t>(t1 - 1)].gain + s.gain});
    }
    last_flip[static_cast<std::size_t>(s.node)] = t;
  }
  return pairs;
}

GapReport gaps_from_flags(const std::vector<std::uint8_t>& good) {
  GapReport rep;
  const std::int64_t T = static_cast<std::int64_t>(good.size());
  std::int64_t prev = 0;
  for (std::int64_t t = 1; t <= T; ++t) {
    if (good[static_cast<std::size_t>(t - 1)]) {
      rep.gaps.push_back(t - prev);
      prev = t;
    }
  }
  rep.gaps.push_back(T - prev);
  // A trailing good move leaves a zero-length stretch; drop it unless the
  // trace is empty.
  if (rep.gaps.size() > 1 && rep.gaps.back() == 0) rep.gaps.pop_back();
  for (const auto gapv : rep.gaps) rep.max_gap = std::max(rep.max_gap, gapv);
  return rep;
}

GapReport good_move_gaps(const FlipTrace& trace, const Leveling& lv) {
  std::vector<std::uint8_t> good;
  good.reserve(static_cast<std::size_t>(trace.length()));
  ActivityState st(lv);
  for (const FlipStep& s : trace.steps) good.push_back(st.record_flip(s.node).was_good ? 1 : 0);
  return gaps_from_flags(good);
}

BoundReport theoretical_bound(std::int64_t n, double phi, int alpha, double beta, double c) {
  if (n < 2) throw std::invalid_argument("theoretical_bound requires n >= 2");
  BoundReport rep;
  rep.n = n;
  rep.phi = phi;
  rep.alpha = alpha;
  rep.beta = beta;
  rep.c = c;
  rep.epsilon_c = lemma1_epsilon(phi, beta, alpha, n, c);

  const int levels = ceil_log(beta, n);
  const std::int64_t base = static_cast<std::int64_t>(2.0 * beta * alpha);
  // Worst case: all n nodes at level 1, the heaviest weight.
  rep.window = BigInt(n) * level_weight(1, levels, base) + 1;

  const double improvements = std::ceil(2.0 * static_cast<double>(n) * static_cast<double>(n) /
                                        rep.epsilon_c);
  rep.explicit_bound = improvements * rep.window.convert_to<double>();
  return rep;
}

TraceAnnotator::TraceAnnotator(const Leveling& lv) : st_(lv) {
  ann_.initial_potential = st_.potential().str();
}

void TraceAnnotator::observe(const FlipStep& s) {
  const auto eff = st_.record_flip(s.node);
  ann_.level.push_back(st_.leveling().level[static_cast<std::size_t>(s.node)]);
  ann_.good.push_back(eff.was_good ? 1 : 0);
  ann_.potential_after.push_back(st_.potential().str());
}

}  // namespace sparseflip
