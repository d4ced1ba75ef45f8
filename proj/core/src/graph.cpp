#include "sparseflip/graph.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>
#include <unordered_set>

namespace sparseflip {

GraphTopology from_edge_list(NodeId n, const std::vector<std::pair<NodeId, NodeId>>& pairs) {
  if (n < 0) throw std::invalid_argument("node count must be nonnegative");
  GraphTopology g;
  g.n = n;
  g.edges.reserve(pairs.size());
  g.adjacency.assign(static_cast<std::size_t>(n), {});

  std::unordered_set<std::uint64_t> seen;
  seen.reserve(pairs.size() * 2);
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    const auto [u, v] = pairs[i];
    if (u < 0 || u >= n || v < 0 || v >= n)
      throw std::invalid_argument("edge " + std::to_string(i) + " endpoint out of range");
    if (u == v)
      throw std::invalid_argument("edge " + std::to_string(i) + " is a self-loop at node " +
                                  std::to_string(u));
    const NodeId lo = std::min(u, v), hi = std::max(u, v);
    const std::uint64_t key =
        (static_cast<std::uint64_t>(lo) << 32) | static_cast<std::uint32_t>(hi);
    if (!seen.insert(key).second)
      throw std::invalid_argument("duplicate edge (" + std::to_string(u) + "," +
                                  std::to_string(v) + ")");
    const EdgeId e = static_cast<EdgeId>(g.edges.size());
    g.edges.emplace_back(u, v);
    g.adjacency[static_cast<std::size_t>(u)].emplace_back(v, e);
    g.adjacency[static_cast<std::size_t>(v)].emplace_back(u, e);
  }
  return g;
}

double cut_weight(const GraphTopology& g, const WeightAssignment& w, const Cut& c) {
  if (static_cast<EdgeId>(w.values.size()) != g.edge_count())
    throw std::invalid_argument("weight count does not match edge count");
  if (c.size() != g.n) throw std::invalid_argument("cut size does not match node count");
  double total = 0.0;
  for (EdgeId e = 0; e < g.edge_count(); ++e) {
    const auto [u, v] = g.edges[static_cast<std::size_t>(e)];
    if (c.side[static_cast<std::size_t>(u)] != c.side[static_cast<std::size_t>(v)])
      total += w.values[static_cast<std::size_t>(e)];
  }
  return total;
}

DegeneracyResult degeneracy(const GraphTopology& g) {
  const NodeId n = g.n;
  DegeneracyResult res;
  res.order.reserve(static_cast<std::size_t>(n));
  if (n == 0) return res;

  // Bucket-queue peeling (Matula-Beck) with lazy deletion: repeatedly remove
  // a minimum-degree node; degeneracy is the largest degree seen at removal.
  std::vector<int> deg(static_cast<std::size_t>(n));
  int max_deg = 0;
  for (NodeId v = 0; v < n; ++v) {
    deg[static_cast<std::size_t>(v)] = g.degree(v);
    max_deg = std::max(max_deg, deg[static_cast<std::size_t>(v)]);
  }
  std::vector<std::vector<NodeId>> bucket(static_cast<std::size_t>(max_deg) + 1);
  for (NodeId v = 0; v < n; ++v)
    bucket[static_cast<std::size_t>(deg[static_cast<std::size_t>(v)])].push_back(v);

  std::vector<std::uint8_t> removed(static_cast<std::size_t>(n), 0);
  int d = 0;
  int cur = 0;
  for (NodeId taken = 0; taken < n; ++taken) {
    NodeId v = -1;
    while (v == -1) {
      auto& b = bucket[static_cast<std::size_t>(cur)];
      if (b.empty()) {
        ++cur;
        continue;
      }
      const NodeId cand = b.back();
      b.pop_back();
      // Skip stale entries left behind by degree updates.
      if (!removed[static_cast<std::size_t>(cand)] && deg[static_cast<std::size_t>(cand)] == cur)
        v = cand;
    }
    removed[static_cast<std::size_t>(v)] = 1;
    d = std::max(d, cur);
    res.order.push_back(v);
    for (const auto& [u, e] : g.adjacency[static_cast<std::size_t>(v)]) {
      (void)e;
      if (removed[static_cast<std::size_t>(u)]) continue;
      const int nd = --deg[static_cast<std::size_t>(u)];
      bucket[static_cast<std::size_t>(nd)].push_back(u);
      if (nd < cur) cur = nd;
    }
  }
  res.degeneracy = d;
  return res;
}

Cut all_zeros_cut(NodeId n) {
  Cut c;
  c.side.assign(static_cast<std::size_t>(n), 0);
  return c;
}

Cut flip_all(const Cut& c) {
  Cut out = c;
  for (auto& b : out.side) b ^= 1u;
  return out;
}

Cut canonical(const Cut& c) {
  if (!c.side.empty() && c.side[0] != 0) return flip_all(c);
  return c;
}

}  // namespace sparseflip
