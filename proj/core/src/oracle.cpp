#include "sparseflip/oracle.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace sparseflip {

bool BruteForceResult::contains(const Cut& c) const {
  const Cut canon = canonical(c);
  return std::find(local_optima.begin(), local_optima.end(), canon) != local_optima.end();
}

BruteForceResult brute_force(const GraphTopology& g, const WeightAssignment& w) {
  const NodeId n = g.n;
  if (n > kBruteForceMaxNodes)
    throw std::invalid_argument("brute_force guards n <= " +
                                std::to_string(kBruteForceMaxNodes) + ", got " +
                                std::to_string(n));
  if (static_cast<EdgeId>(w.values.size()) != g.edge_count())
    throw std::invalid_argument("weight count mismatch");

  BruteForceResult res;
  if (n == 0) {
    res.max_cut_weight = 0.0;
    return res;
  }

  const std::uint64_t classes = n == 1 ? 1 : (1ULL << (n - 1));
  std::vector<double> gains(static_cast<std::size_t>(n));
  Cut cut = all_zeros_cut(n);
  bool first = true;
  for (std::uint64_t mask = 0; mask < classes; ++mask) {
    // Node 0 pinned to side 0; bit k of mask is the side of node k+1.
    for (NodeId v = 1; v < n; ++v)
      cut.side[static_cast<std::size_t>(v)] =
          static_cast<std::uint8_t>((mask >> (v - 1)) & 1ULL);

    double weight = 0.0;
    std::fill(gains.begin(), gains.end(), 0.0);
    for (EdgeId e = 0; e < g.edge_count(); ++e) {
      const auto [u, v] = g.edges[static_cast<std::size_t>(e)];
      const double we = w.values[static_cast<std::size_t>(e)];
      if (cut.side[static_cast<std::size_t>(u)] != cut.side[static_cast<std::size_t>(v)]) {
        weight += we;
        gains[static_cast<std::size_t>(u)] -= we;
        gains[static_cast<std::size_t>(v)] -= we;
      } else {
        gains[static_cast<std::size_t>(u)] += we;
        gains[static_cast<std::size_t>(v)] += we;
      }
    }
    if (first || weight > res.max_cut_weight) {
      res.max_cut_weight = weight;
      first = false;
    }
    if (std::all_of(gains.begin(), gains.end(), [](double gv) { return gv <= 0.0; }))
      res.local_optima.push_back(cut);
  }
  return res;
}

}  // namespace sparseflip
