#ifndef CONGEST_GRAPH_IO_HPP
#define CONGEST_GRAPH_IO_HPP

#include <charconv>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "congest/generators.hpp"
#include "congest/graph.hpp"

namespace congest {

// Edge-list text format, version 1:
//
//   congest-graph v1 n=<n>
//   node <idx> id=<id> ports=<nbr1>,<nbr2>,...
//   tag <u> <v> <label>
//
// Node indices are 0-based; the i-th entry of `ports=` is the neighbor
// behind port i. One node line per node, in any order. Lines are LF-terminated.

inline void write_edge_list(const Graph& g, std::ostream& out) {
  out << "congest-graph v1 n=" << g.node_count() << '\n';
  for (NodeIndex v = 0; v < g.node_count(); ++v) {
    out << "node " << v << " id=" << g.id(v) << " ports=";
    const auto nbrs = g.neighbors(v);
    for (std::size_t i = 0; i < nbrs.size(); ++i) {
      if (i) out << ',';
      out << nbrs[i];
    }
    out << '\n';
  }
  for (const auto& [u, v, t] : g.tagged_edges()) out << "tag " << u << ' ' << v << ' ' << g.tag_name(t) << '\n';
}

namespace detail {

inline std::vector<std::string_view> split_ws(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && line[i] == ' ') ++i;
    const std::size_t start = i;
    while (i < line.size() && line[i] != ' ') ++i;
    if (i > start) out.push_back(line.substr(start, i - start));
  }
  return out;
}

template <class T>
T parse_number(std::string_view text, std::size_t line, const char* what) {
  T value{};
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc{} || ptr != text.data() + text.size() || text.empty()) {
    throw GraphError(std::string("malformed ") + what + " '" + std::string(text) + "'", line);
  }
  return value;
}

inline std::string_view expect_key(std::string_view token, std::string_view key, std::size_t line) {
  if (token.substr(0, key.size()) != key) {
    throw GraphError("expected '" + std::string(key) + "', got '" + std::string(token) + "'", line);
  }
  return token.substr(key.size());
}

}  // namespace detail

inline Graph read_edge_list(std::istream& in) {
  std::string line;
  std::size_t line_no = 0;
  if (!std::getline(in, line)) throw GraphError("empty input", 1);
  ++line_no;
  if (!line.empty() && line.back() == '\r') throw GraphError("CRLF line endings are not accepted", line_no);
  const auto header = detail::split_ws(line);
  if (header.size() != 3 || header[0] != "congest-graph" || header[1] != "v1") {
    throw GraphError("bad header, expected 'congest-graph v1 n=<n>'", line_no);
  }
  const auto n = detail::parse_number<std::size_t>(detail::expect_key(header[2], "n=", line_no), line_no, "node count");

  GraphBuilder b(n);
  std::vector<std::size_t> node_line(n, 0);
  std::vector<std::pair<std::pair<NodeIndex, NodeIndex>, std::pair<std::string, std::size_t>>> tags;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    if (line.back() == '\r') throw GraphError("CRLF line endings are not accepted", line_no);
    const auto tok = detail::split_ws(line);
    if (tok.empty()) continue;
    if (tok[0] == "node") {
      if (tok.size() != 4) throw GraphError("node line needs 'node <idx> id=<id> ports=<list>'", line_no);
      const auto v = detail::parse_number<NodeIndex>(tok[1], line_no, "node index");
      if (v >= n) throw GraphError("node index " + std::to_string(v) + " out of range", line_no);
      if (node_line[v]) {
        throw GraphError("node " + std::to_string(v) + " already defined on line " + std::to_string(node_line[v]),
                         line_no);
      }
      node_line[v] = line_no;
      b.set_id(v, detail::parse_number<NodeId>(detail::expect_key(tok[2], "id=", line_no), line_no, "id"));
      const auto list = detail::expect_key(tok[3], "ports=", line_no);
      std::vector<NodeIndex> ports;
      std::size_t start = 0;
      while (start < list.size()) {
        std::size_t end = list.find(',', start);
        if (end == std::string_view::npos) end = list.size();
        const auto u = detail::parse_number<NodeIndex>(list.substr(start, end - start), line_no, "neighbor");
        if (u >= n) {
          throw GraphError("port " + std::to_string(ports.size() + 1) + " of node " + std::to_string(v) +
                               " names missing node " + std::to_string(u),
                           line_no);
        }
        if (u == v) throw GraphError("self-loop at node " + std::to_string(v), line_no);
        if (std::find(ports.begin(), ports.end(), u) != ports.end()) {
          throw GraphError("duplicate edge " + std::to_string(v) + "-" + std::to_string(u), line_no);
        }
        ports.push_back(u);
        start = end + 1;
        if (end + 1 == list.size()) throw GraphError("trailing comma in port list", line_no);
      }
      b.set_ports(v, std::move(ports));
    } else if (tok[0] == "tag") {
      if (tok.size() != 4) throw GraphError("tag line needs 'tag <u> <v> <label>'", line_no);
      const auto u = detail::parse_number<NodeIndex>(tok[1], line_no, "node index");
      const auto v = detail::parse_number<NodeIndex>(tok[2], line_no, "node index");
      tags.push_back({{u, v}, {std::string(tok[3]), line_no}});
    } else {
      throw GraphError("unknown record '" + std::string(tok[0]) + "'", line_no);
    }
  }
  for (std::size_t v = 0; v < n; ++v) {
    if (!node_line[v]) throw GraphError("node " + std::to_string(v) + " is never defined", line_no);
  }
  // Symmetry is checked here so the error can name the offending line.
  for (NodeIndex v = 0; v < n; ++v) {
    for (const NodeIndex u : b.ports(v)) {
      const auto& back = b.ports(u);
      if (std::find(back.begin(), back.end(), v) == back.end()) {
        throw GraphError("edge " + std::to_string(v) + "-" + std::to_string(u) + " is missing on node " +
                             std::to_string(u),
                         node_line[v]);
      }
    }
  }
  for (const auto& [edge, label] : tags) {
    const auto [u, v] = edge;
    if (u >= n || v >= n) throw GraphError("tag on missing node", label.second);
    const auto& list = b.ports(u);
    if (std::find(list.begin(), list.end(), v) == list.end()) {
      throw GraphError("tag on missing edge " + std::to_string(u) + "-" + std::to_string(v), label.second);
    }
    if (b.edge_tagged(u, v)) throw GraphError("edge tagged twice", label.second);
    b.tag_edge(u, v, label.first);
  }
  try {
    return b.build();
  } catch (const GraphError& e) {
    if (e.line()) throw;
    throw GraphError(e.what(), line_no);
  }
}

inline Graph load_edge_list(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw GraphError("cannot open '" + path + "'");
  return read_edge_list(in);
}

inline void save_edge_list(const Graph& g, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw GraphError("cannot write '" + path + "'");
  write_edge_list(g, out);
  if (!out) throw GraphError("write failed for '" + path + "'");
}

/// Builds the graph a family spec describes.
inline Graph make_graph(const GraphFamilySpec& spec) {
  using detail::param_real;
  using detail::param_size;
  switch (spec.family) {
    case GraphFamily::kCycle: return gen_cycle(param_size(spec, "n"), spec.seed, spec.ids);
    case GraphFamily::kPath: return gen_path(param_size(spec, "n"), spec.seed, spec.ids);
    case GraphFamily::kStar: return gen_star(param_size(spec, "leaves"), spec.seed, spec.ids);
    case GraphFamily::kEmpty: return gen_empty(param_size(spec, "n"), spec.seed, spec.ids);
    case GraphFamily::kComplete: return gen_complete(param_size(spec, "n"), spec.seed, spec.ids);
    case GraphFamily::kCompleteBipartite:
      return gen_complete_bipartite(param_size(spec, "a"), param_size(spec, "b"), spec.seed, spec.ids);
    case GraphFamily::kGnp: return gen_gnp(param_size(spec, "n"), param_real(spec, "p"), spec.seed, spec.ids);
    case GraphFamily::kBridge: return gen_bridge_graph(param_size(spec, "n"), spec.seed, spec.ids);
    case GraphFamily::kDisconnectedD: return gen_disconnected_d(param_size(spec, "n"), spec.seed, spec.ids);
    case GraphFamily::kTightExample:
      return gen_tight_example(param_size(spec, "n"), param_real(spec, "eps"), param_real(spec, "epsp"), spec.seed,
                               spec.ids);
    case GraphFamily::kFromFile: return load_edge_list(detail::require(spec, "path"));
  }
  throw InvalidParameter("unknown graph family");
}

/// Parses `family:key=value,key=value` (or `family key=value ...` tokens
/// already split by the caller). `seed=` and `ids=sequential` are recognized
/// for every family. A string without ':' that names no family is a path.
inline GraphFamilySpec parse_graph_spec(const std::string& text, std::uint64_t default_seed) {
  GraphFamilySpec spec;
  spec.seed = default_seed;
  const auto colon = text.find(':');
  const std::string head = text.substr(0, colon);
  const auto& names = family_names();
  const auto it = names.find(head);
  if (it == names.end()) {
    if (colon == std::string::npos) {
      spec.family = GraphFamily::kFromFile;
      spec.params["path"] = text;
      return spec;
    }
    throw InvalidParameter("unknown graph family '" + head + "'");
  }
  spec.family = it->second;
  if (colon == std::string::npos) return spec;
  std::stringstream rest(text.substr(colon + 1));
  std::string item;
  while (std::getline(rest, item, ',')) {
    if (item.empty()) continue;
    const auto eq = item.find('=');
    if (eq == std::string::npos) throw InvalidParameter("expected key=value, got '" + item + "'");
    const std::string key = item.substr(0, eq);
    const std::string value = item.substr(eq + 1);
    if (key == "seed") {
      try {
        spec.seed = std::stoull(value);
      } catch (const std::exception&) {
        throw InvalidParameter("bad seed '" + value + "'");
      }
    } else if (key == "ids") {
      if (value == "sequential") spec.ids.mode = IdMode::kSequential;
      else if (value == "random") spec.ids.mode = IdMode::kRandom;
      else throw InvalidParameter("ids must be 'random' or 'sequential'");
    } else {
      spec.params[key] = value;
    }
  }
  return spec;
}

inline std::string format_graph_spec(const GraphFamilySpec& spec) {
  std::string out = family_name(spec.family) + ":";
  bool first = true;
  for (const auto& [k, v] : spec.params) {
    out += (first ? "" : ",") + k + "=" + v;
    first = false;
  }
  out += (first ? "" : ",") + std::string("seed=") + std::to_string(spec.seed);
  if (spec.ids.mode == IdMode::kSequential) out += ",ids=sequential";
  return out;
}

}  // namespace congest

#endif  // CONGEST_GRAPH_IO_HPP
