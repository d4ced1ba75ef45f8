#include "sparseflip/io.hpp"

#include <charconv>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <system_error>

#include <json.hpp>

namespace sparseflip {

using nlohmann::json;
using nlohmann::ordered_json;

std::string format_double(double v) {
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  if (ec != std::errc()) throw std::runtime_error("format_double failed");
  return std::string(buf, ptr);
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << content;
  if (!out) throw std::runtime_error("write failed for " + path);
}

GraphFile read_graph_file(const std::string& path) {
  json j;
  try {
    j = json::parse(read_text_file(path));
  } catch (const json::parse_error& e) {
    throw std::runtime_error(path + ": not valid JSON: " + e.what());
  }
  if (!j.is_object() || !j.contains("n") || !j.contains("edges"))
    throw std::runtime_error(path + ": expected {\"n\": ..., \"edges\": [...]}");

  const NodeId n = j.at("n").get<NodeId>();
  std::vector<std::pair<NodeId, NodeId>> pairs;
  std::vector<double> weights;
  bool any_weight = false, any_null = false;
  for (const auto& row : j.at("edges")) {
    if (!row.is_array() || row.size() < 2)
      throw std::runtime_error(path + ": each edge must be [u, v, w]");
    pairs.emplace_back(row[0].get<NodeId>(), row[1].get<NodeId>());
    if (row.size() >= 3 && !row[2].is_null()) {
      any_weight = true;
      weights.push_back(row[2].get<double>());
    } else {
      any_null = true;
      weights.push_back(0.0);
    }
  }
  if (any_weight && any_null)
    throw std::runtime_error(path + ": edges mix weighted and null entries");

  GraphFile gf;
  gf.graph = from_edge_list(n, pairs);
  if (any_weight) {
    for (std::size_t e = 0; e < weights.size(); ++e)
      if (weights[e] < -1.0 || weights[e] > 1.0)
        throw std::runtime_error(path + ": edge weight " + std::to_string(e) +
                                 " outside [-1, 1]");
    gf.weights = WeightAssignment{std::move(weights)};
  }
  return gf;
}

void write_graph_file(const std::string& path, const GraphTopology& g,
                      const WeightAssignment* weights) {
  if (weights && static_cast<EdgeId>(weights->values.size()) != g.edge_count())
    throw std::invalid_argument("write_graph_file: weight count mismatch");
  ordered_json j;
  j["n"] = g.n;
  auto& edges = j["edges"] = ordered_json::array();
  for (EdgeId e = 0; e < g.edge_count(); ++e) {
    const auto [u, v] = g.edges[static_cast<std::size_t>(e)];
    ordered_json row = {u, v};
    if (weights)
      row.push_back(weights->values[static_cast<std::size_t>(e)]);
    else
      row.push_back(nullptr);
    edges.push_back(std::move(row));
  }
  write_text_file(path, j.dump() + "\n");
}

void write_leveling_file(const std::string& path, const Leveling& lv) {
  ordered_json j;
  j["levels"] = lv.level;
  std::vector<std::size_t> rdeg;
  rdeg.reserve(lv.restricted.size());
  for (const auto& rs : lv.restricted) rdeg.push_back(rs.size());
  j["restricted_degree"] = rdeg;
  write_text_file(path, j.dump() + "\n");
}

Cut read_cut_file(const std::string& path) {
  json j;
  try {
    j = json::parse(read_text_file(path));
  } catch (const json::parse_error& e) {
    throw std::runtime_error(path + ": not valid JSON: " + e.what());
  }
  if (!j.is_object() || !j.contains("side"))
    throw std::runtime_error(path + ": expected {\"side\": [0, 1, ...]}");
  Cut c;
  for (const auto& b : j.at("side")) {
    const int bit = b.get<int>();
    if (bit != 0 && bit != 1) throw std::runtime_error(path + ": side bits must be 0 or 1");
    c.side.push_back(static_cast<std::uint8_t>(bit));
  }
  return c;
}

void write_cut_file(const std::string& path, const Cut& c) {
  ordered_json j;
  j["side"] = ordered_json::array();
  for (const auto b : c.side) j["side"].push_back(static_cast<int>(b));
  write_text_file(path, j.dump() + "\n");
}

void write_trace_csv(const std::string& path, const FlipTrace& trace,
                     const TraceAnnotations* ann) {
  if (ann && static_cast<std::int64_t>(ann->good.size()) != trace.length())
    throw std::invalid_argument("write_trace_csv: annotation length mismatch");
  std::ostringstream out;
  out << "step,node,level,gain,cut_weight,good_move,potential_after\n";
  for (std::int64_t t = 1; t <= trace.length(); ++t) {
    const FlipStep& s = trace.steps[static_cast<std::size_t>(t - 1)];
    out << t << ',' << s.node << ',';
    if (ann) out << ann->level[static_cast<std::size_t>(t - 1)];
    out << ',' << format_double(s.gain) << ',' << format_double(s.weight_after) << ',';
    if (ann) out << static_cast<int>(ann->good[static_cast<std::size_t>(t - 1)]);
    out << ',';
    if (ann) out << ann->potential_after[static_cast<std::size_t>(t - 1)];
    out << '\n';
  }
  write_text_file(path, out.str());
}

}  // namespace sparseflip
