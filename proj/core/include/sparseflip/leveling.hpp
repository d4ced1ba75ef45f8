#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "sparseflip/graph.hpp"

namespace sparseflip {

/// Hierarchical vertex partition obtained by repeatedly peeling, all at
/// once, the nodes of degree <= 2*beta*alpha from the remaining induced
/// subgraph. Level 1 is peeled first. restricted[v] holds exactly the
/// neighbors of v at levels >= level[v] (with edge index) -- the N_*(v)
/// neighborhoods every analysis consumes -- and has size <= 2*beta*alpha.
struct Leveling {
  int alpha = 1;
  double beta = 2.0;
  int num_levels = 0;                                           ///< L
  std::vector<int> level;                                       ///< per node, in [1, L]
  std::vector<std::vector<std::pair<NodeId, EdgeId>>> restricted;

  double peel_threshold() const { return 2.0 * beta * alpha; }

  /// Largest integer degree passing the peel test, i.e. floor(2*beta*alpha).
  /// Caps |N_*(v)| and the per-flip activation count; also the base of the
  /// potential level weights.
  std::int64_t threshold_floor() const {
    return static_cast<std::int64_t>(peel_threshold());
  }

  NodeId node_count() const { return static_cast<NodeId>(level.size()); }
};

/// Thrown when a peeling round removes no vertex: every remaining node has
/// degree above 2*beta*alpha in the induced subgraph, witnessing that alpha
/// is below the graph's density and the partition guarantee cannot hold.
class PeelStuckError : public std::runtime_error {
 public:
  PeelStuckError(const std::string& msg, std::vector<NodeId> stuck)
      : std::runtime_error(msg), stuck_(std::move(stuck)) {}
  const std::vector<NodeId>& stuck_nodes() const { return stuck_; }

 private:
  std::vector<NodeId> stuck_;
};

/// Peels V into V_1..V_L. Each round removes ALL nodes meeting the threshold
/// simultaneously; degrees are re-evaluated only between rounds. Deterministic
/// (nodes scanned in index order). Throws PeelStuckError when a round gets
/// stuck with nodes remaining.
Leveling peel_partition(const GraphTopology& g, int alpha, double beta);

struct LevelingIssue {
  NodeId node = -1;  ///< -1 for global issues
  std::string what;
};

/// Re-checks every Leveling invariant against the topology, independently of
/// peel_partition. Violations come back as report entries, never as errors.
std::vector<LevelingIssue> validate_leveling(const GraphTopology& g, const Leveling& lv);

/// Smallest integer k >= 0 with beta^k >= n, i.e. ceil(log_beta(n)).
int ceil_log(double beta, std::int64_t n);

}  // namespace sparseflip
