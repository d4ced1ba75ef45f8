#include "sparseflip/generators.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>
#include <utility>

#include "sparseflip/rng.hpp"

namespace sparseflip {

namespace {

constexpr double kForestKeepProb = 0.8;

// Aldous-Broder on K_n: walk uniformly, keep first-entry edges; the result
// is a uniform spanning tree.
std::vector<std::pair<NodeId, NodeId>> random_spanning_tree(NodeId n, Rng& rng) {
  std::vector<std::pair<NodeId, NodeId>> tree;
  if (n < 2) return tree;
  tree.reserve(static_cast<std::size_t>(n - 1));
  std::vector<std::uint8_t> visited(static_cast<std::size_t>(n), 0);
  NodeId current = static_cast<NodeId>(rng.bounded(static_cast<std::uint64_t>(n)));
  visited[static_cast<std::size_t>(current)] = 1;
  NodeId remaining = n - 1;
  while (remaining > 0) {
    // Uniform jump to any *other* node = uniform walk step on K_n.
    NodeId next = static_cast<NodeId>(rng.bounded(static_cast<std::uint64_t>(n - 1)));
    if (next >= current) ++next;
    if (!visited[static_cast<std::size_t>(next)]) {
      visited[static_cast<std::size_t>(next)] = 1;
      tree.emplace_back(current, next);
      --remaining;
    }
    current = next;
  }
  return tree;
}

}  // namespace

GraphTopology gen_forest_union(NodeId n, int alpha, std::uint64_t seed) {
  if (n < 1) throw std::invalid_argument("gen_forest_union requires n >= 1");
  if (alpha < 1) throw std::invalid_argument("gen_forest_union requires alpha >= 1");
  Rng rng(mix64(seed));
  std::set<std::pair<NodeId, NodeId>> edge_set;
  for (int f = 0; f < alpha; ++f) {
    for (const auto& [u, v] : random_spanning_tree(n, rng)) {
      if (rng.uniform01() >= kForestKeepProb) continue;
      edge_set.emplace(std::min(u, v), std::max(u, v));
    }
  }
  return from_edge_list(n, {edge_set.begin(), edge_set.end()});
}

GraphTopology gen_preferential_attachment(NodeId n, int m_attach, std::uint64_t seed) {
  if (m_attach < 1) throw std::invalid_argument("gen_preferential_attachment requires m_attach >= 1");
  if (n < m_attach + 1)
    throw std::invalid_argument("gen_preferential_attachment requires n >= m_attach + 1");
  Rng rng(mix64(seed));
  std::vector<std::pair<NodeId, NodeId>> edges;
  // Degree-proportional sampling via the repeated-endpoint pool.
  std::vector<NodeId> pool;
  const NodeId clique = static_cast<NodeId>(m_attach) + 1;
  for (NodeId u = 0; u < clique; ++u) {
    for (NodeId v = static_cast<NodeId>(u + 1); v < clique; ++v) {
      edges.emplace_back(u, v);
      pool.push_back(u);
      pool.push_back(v);
    }
  }
  std::vector<NodeId> targets;
  for (NodeId v = clique; v < n; ++v) {
    targets.clear();
    while (static_cast<int>(targets.size()) < m_attach) {
      const NodeId t = pool[static_cast<std::size_t>(rng.bounded(pool.size()))];
      if (std::find(targets.begin(), targets.end(), t) == targets.end()) targets.push_back(t);
    }
    for (const NodeId t : targets) {
      edges.emplace_back(t, v);
      pool.push_back(t);
      pool.push_back(v);
    }
  }
  return from_edge_list(n, edges);
}

GraphTopology gen_complete(NodeId n) {
  if (n < 1) throw std::invalid_argument("gen_complete requires n >= 1");
  std::vector<std::pair<NodeId, NodeId>> edges;
  edges.reserve(static_cast<std::size_t>(n) * static_cast<std::size_t>(n - 1) / 2);
  for (NodeId u = 0; u < n; ++u)
    for (NodeId v = static_cast<NodeId>(u + 1); v < n; ++v) edges.emplace_back(u, v);
  return from_edge_list(n, edges);
}

GraphTopology gen_grid(NodeId rows, NodeId cols) {
  if (rows < 1 || cols < 1) throw std::invalid_argument("gen_grid requires rows, cols >= 1");
  std::vector<std::pair<NodeId, NodeId>> edges;
  const auto id = [cols](NodeId r, NodeId c) { return static_cast<NodeId>(r * cols + c); };
  for (NodeId r = 0; r < rows; ++r) {
    for (NodeId c = 0; c < cols; ++c) {
      if (c + 1 < cols) edges.emplace_back(id(r, c), id(r, c + 1));
      if (r + 1 < rows) edges.emplace_back(id(r, c), id(r + 1, c));
    }
  }
  return from_edge_list(static_cast<NodeId>(rows * cols), edges);
}

}  // namespace sparseflip
