#pragma once

#include <cstdint>
#include <utility>
#include <vector>

namespace sparseflip {

using NodeId = std::int32_t;
using EdgeId = std::int32_t;

/// Immutable weighted-graph topology. Nodes are dense indices 0..n-1; the
/// edge order given at construction defines the edge index used everywhere
/// else (weight vectors, trace decompositions, the graph file format).
struct GraphTopology {
  NodeId n = 0;
  std::vector<std::pair<NodeId, NodeId>> edges;
  /// adjacency[v] = list of (neighbor, edge index), in edge-insertion order.
  std::vector<std::vector<std::pair<NodeId, EdgeId>>> adjacency;

  EdgeId edge_count() const { return static_cast<EdgeId>(edges.size()); }
  NodeId degree(NodeId v) const { return static_cast<NodeId>(adjacency[v].size()); }
};

/// One real weight per edge in [-1, 1], index-aligned with GraphTopology::edges.
struct WeightAssignment {
  std::vector<double> values;
};

/// Side bit per node. An edge is cut iff its endpoints carry different bits.
struct Cut {
  std::vector<std::uint8_t> side;

  NodeId size() const { return static_cast<NodeId>(side.size()); }
  bool operator==(const Cut&) const = default;
};

/// Builds a validated topology. Rejects self-loops, duplicate pairs (in
/// either orientation) and endpoints outside [0, n).
GraphTopology from_edge_list(NodeId n, const std::vector<std::pair<NodeId, NodeId>>& pairs);

/// Sum of w_e over the edges cut by c. Pure; used by validation paths, the
/// flip engine maintains its own incremental copy.
double cut_weight(const GraphTopology& g, const WeightAssignment& w, const Cut& c);

struct DegeneracyResult {
  int degeneracy = 0;
  /// Elimination order: every node has at most `degeneracy` neighbors later
  /// in the order.
  std::vector<NodeId> order;
};

/// Min-degree peeling. arboricity <= degeneracy <= 2*arboricity - 1, so this
/// is the sanity check for user-supplied arboricity parameters.
DegeneracyResult degeneracy(const GraphTopology& g);

Cut all_zeros_cut(NodeId n);
Cut flip_all(const Cut& c);
/// Representative of the cut class with node 0 on side 0.
Cut canonical(const Cut& c);

}  // namespace sparseflip
