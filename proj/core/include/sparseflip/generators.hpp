#pragma once

#include <cstdint>

#include "sparseflip/graph.hpp"

namespace sparseflip {

/// Union of `alpha` uniform random spanning trees of K_n (random-walk
/// construction), each thinned by dropping every edge independently with
/// probability 0.2, deduplicated. Arboricity <= alpha by construction and
/// m <= alpha * (n - 1). Deterministic per seed.
GraphTopology gen_forest_union(NodeId n, int alpha, std::uint64_t seed);

/// Barabasi-Albert with a complete seed graph on m_attach+1 nodes; every
/// later node attaches m_attach edges to distinct nodes chosen proportional
/// to degree. Degeneracy of the result is exactly m_attach.
GraphTopology gen_preferential_attachment(NodeId n, int m_attach, std::uint64_t seed);

GraphTopology gen_complete(NodeId n);

/// rows x cols lattice; planar, arboricity <= 2 (row edges and column edges
/// each form forests).
GraphTopology gen_grid(NodeId rows, NodeId cols);

}  // namespace sparseflip
