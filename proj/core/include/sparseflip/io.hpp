#pragma once

#include <optional>
#include <string>

#include "sparseflip/analysis.hpp"
#include "sparseflip/flip.hpp"
#include "sparseflip/graph.hpp"
#include "sparseflip/leveling.hpp"

namespace sparseflip {

/// Graph file: {"n": int, "edges": [[u, v, w], ...]}, 0-indexed, w null for
/// unweighted topologies. The order of edges in the file defines the edge
/// index.
struct GraphFile {
  GraphTopology graph;
  std::optional<WeightAssignment> weights;
};

GraphFile read_graph_file(const std::string& path);
void write_graph_file(const std::string& path, const GraphTopology& g,
                      const WeightAssignment* weights = nullptr);

/// Leveling dump: {"levels": [int, ...], "restricted_degree": [int, ...]}.
void write_leveling_file(const std::string& path, const Leveling& lv);

/// Cut file: {"side": [0, 1, ...]}.
Cut read_cut_file(const std::string& path);
void write_cut_file(const std::string& path, const Cut& c);

/// Trace CSV, header row then one row per step:
///   step,node,level,gain,cut_weight,good_move,potential_after
/// The last three columns come from the analysis annotations and stay empty
/// when none are attached.
void write_trace_csv(const std::string& path, const FlipTrace& trace,
                     const TraceAnnotations* ann = nullptr);

/// Shortest representation that round-trips the exact double.
std::string format_double(double v);

std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& content);

}  // namespace sparseflip
