#pragma once

#include <cstdint>
#include <vector>

#include "sparseflip/graph.hpp"

namespace sparseflip {

inline constexpr NodeId kBruteForceMaxNodes = 22;

struct BruteForceResult {
  double max_cut_weight = 0.0;
  /// Every cut class where all single flips have gain <= 0, canonical form
  /// (node 0 on side 0).
  std::vector<Cut> local_optima;

  std::int64_t local_optima_count() const {
    return static_cast<std::int64_t>(local_optima.size());
  }
  bool contains(const Cut& c) const;
};

/// Exhaustive enumeration of all 2^(n-1) cut classes with node 0 pinned to
/// side 0. Gains and weights are accumulated directly from the edge list;
/// no flip-engine code is involved, so this stays an independent oracle.
BruteForceResult brute_force(const GraphTopology& g, const WeightAssignment& w);

}  // namespace sparseflip
