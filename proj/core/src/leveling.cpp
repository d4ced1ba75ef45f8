#include "sparseflip/leveling.hpp"

#include <algorithm>
#include <sstream>

namespace sparseflip {

int ceil_log(double beta, std::int64_t n) {
  if (beta <= 1.0) throw std::invalid_argument("ceil_log requires beta > 1");
  if (n <= 1) return 0;
  int k = 0;
  double acc = 1.0;
  while (acc < static_cast<double>(n)) {
    acc *= beta;
    ++k;
  }
  return k;
}

Leveling peel_partition(const GraphTopology& g, int alpha, double beta) {
  const NodeId n = g.n;
  if (n < 1) throw std::invalid_argument("peel_partition requires n >= 1");
  if (alpha < 1) throw std::invalid_argument("peel_partition requires alpha >= 1");
  if (beta < 2.0 || (n >= 2 && beta > static_cast<double>(n)))
    throw std::invalid_argument("peel_partition requires beta in [2, n]");

  Leveling lv;
  lv.alpha = alpha;
  lv.beta = beta;
  lv.level.assign(static_cast<std::size_t>(n), 0);
  const double threshold = lv.peel_threshold();

  std::vector<int> deg(static_cast<std::size_t>(n));
  for (NodeId v = 0; v < n; ++v) deg[static_cast<std::size_t>(v)] = g.degree(v);

  std::vector<NodeId> alive;
  alive.reserve(static_cast<std::size_t>(n));
  for (NodeId v = 0; v < n; ++v) alive.push_back(v);

  int round = 0;
  while (!alive.empty()) {
    ++round;
    std::vector<NodeId> peeled;
    std::vector<NodeId> survivors;
    for (const NodeId v : alive) {
      if (static_cast<double>(deg[static_cast<std::size_t>(v)]) <= threshold)
        peeled.push_back(v);
      else
        survivors.push_back(v);
    }
    if (peeled.empty()) {
      std::ostringstream msg;
      msg << "peeling stuck at round " << round << ": " << alive.size()
          << " nodes all have degree > " << threshold
          << " in the induced subgraph {";
      for (std::size_t i = 0; i < alive.size() && i < 16; ++i) {
        if (i) msg << ",";
        msg << alive[i];
      }
      if (alive.size() > 16) msg << ",... (" << alive.size() - 16 << " more)";
      msg << "}; alpha=" << lv.alpha << " is below the density of this subgraph";
      throw PeelStuckError(msg.str(), alive);
    }
    for (const NodeId v : peeled) {
      lv.level[static_cast<std::size_t>(v)] = round;
      for (const auto& [u, e] : g.adjacency[static_cast<std::size_t>(v)]) {
        (void)e;
        --deg[static_cast<std::size_t>(u)];
      }
    }
    alive = std::move(survivors);
  }
  lv.num_levels = round;

  lv.restricted.assign(static_cast<std::size_t>(n), {});
  for (NodeId v = 0; v < n; ++v) {
    const int level_v = lv.level[static_cast<std::size_t>(v)];
    for (const auto& [u, e] : g.adjacency[static_cast<std::size_t>(v)]) {
      if (lv.level[static_cast<std::size_t>(u)] >= level_v)
        lv.restricted[static_cast<std::size_t>(v)].emplace_back(u, e);
    }
  }
  return lv;
}

std::vector<LevelingIssue> validate_leveling(const GraphTopology& g, const Leveling& lv) {
  std::vector<LevelingIssue> issues;
  const NodeId n = g.n;

  if (lv.node_count() != n) {
    issues.push_back({-1, "level array has " + std::to_string(lv.level.size()) +
                              " entries for " + std::to_string(n) + " nodes"});
    return issues;
  }
  if (static_cast<NodeId>(lv.restricted.size()) != n) {
    issues.push_back({-1, "restricted array has " + std::to_string(lv.restricted.size()) +
                              " entries for " + std::to_string(n) + " nodes"});
    return issues;
  }

  // The round-count cap is only meaningful for beta > 1; hand-built
  // levelings may carry degenerate parameters and still get a report.
  if (n >= 2 && lv.beta > 1.0) {
    const int cap = ceil_log(lv.beta, n);
    if (lv.num_levels > cap)
      issues.push_back({-1, "L=" + std::to_string(lv.num_levels) +
                                " exceeds ceil(log_beta n)=" + std::to_string(cap)});
  }

  const double threshold = lv.peel_threshold();
  for (NodeId v = 0; v < n; ++v) {
    const int level_v = lv.level[static_cast<std::size_t>(v)];
    if (level_v < 1 || level_v > lv.num_levels) {
      issues.push_back({v, "level " + std::to_string(level_v) + " outside [1, L]"});
      continue;
    }
    const auto& rs = lv.restricted[static_cast<std::size_t>(v)];
    if (static_cast<double>(rs.size()) > threshold)
      issues.push_back({v, "|N_*(v)|=" + std::to_string(rs.size()) + " exceeds 2*beta*alpha=" +
                               std::to_string(threshold)});
    // Recompute N_*(v) from the adjacency and compare; both derive from
    // edge-insertion order so element-wise equality is the right check.
    std::vector<std::pair<NodeId, EdgeId>> expect;
    for (const auto& [u, e] : g.adjacency[static_cast<std::size_t>(v)]) {
      if (lv.level[static_cast<std::size_t>(u)] >= level_v) expect.emplace_back(u, e);
    }
    if (expect != rs)
      issues.push_back({v, "restricted list does not match {u in N(v) : level(u) >= level(v)}"});
  }
  return issues;
}

}  // namespace sparseflip
