#include <algorithm>
#include <charconv>
#include <fstream>
#include <sstream>
#include <unordered_map>

#include "mcns/graph.hpp"

namespace mcns {
namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::vector<std::string_view> split_fields(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t' || line[i] == '\r')) ++i;
    std::size_t j = i;
    while (j < line.size() && line[j] != ' ' && line[j] != '\t' && line[j] != '\r') ++j;
    if (j > i) out.push_back(line.substr(i, j - i));
    i = j;
  }
  return out;
}

bool parses_as_number(std::string_view s) {
  double d = 0;
  auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), d);
  return ec == std::errc() && p == s.data() + s.size();
}

// Iterates non-comment, non-blank lines with their 1-based numbers.
template <typename Fn>
void for_each_data_line(const std::string& text, Fn&& fn) {
  std::size_t lineno = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string::npos) end = text.size();
    ++lineno;
    std::string_view line(text.data() + pos, end - pos);
    auto fields = split_fields(line);
    if (!fields.empty() && fields[0].front() != '#') fn(lineno, line, fields);
    if (end == text.size()) break;
    pos = end + 1;
  }
}

}  // namespace

Graph parse_edge_list(const std::string& text, bool directed,
                      const std::optional<std::string>& partition_text, const std::string& source) {
  std::unordered_map<std::string, NodeId> ids;
  std::vector<std::string> names;
  std::vector<Edge> edges;
  LoadStats stats;

  auto intern = [&](std::string_view s) {
    auto [it, inserted] = ids.try_emplace(std::string(s), static_cast<NodeId>(names.size()));
    if (inserted) names.emplace_back(s);
    return it->second;
  };

  for_each_data_line(text, [&](std::size_t lineno, std::string_view line,
                               const std::vector<std::string_view>& f) {
    ++stats.lines;
    if ((f.size() != 2 && f.size() != 3) || (f.size() == 3 && !parses_as_number(f[2]))) {
      throw ParseError(source + ":" + std::to_string(lineno) + ": expected 'src dst [weight]', got '" +
                           std::string(line) + "'",
                       lineno);
    }
    NodeId a = intern(f[0]);
    NodeId b = intern(f[1]);
    edges.emplace_back(a, b);
  });

  std::optional<std::vector<Side>> partition;
  if (partition_text) {
    std::vector<Side> parts(names.size(), Side::U);
    std::vector<char> tagged(names.size(), 0);
    for_each_data_line(*partition_text, [&](std::size_t lineno, std::string_view line,
                                            const std::vector<std::string_view>& f) {
      if (f.size() != 2 || (f[1] != "U" && f[1] != "I")) {
        throw ParseError("partition:" + std::to_string(lineno) + ": expected 'node U|I', got '" +
                             std::string(line) + "'",
                         lineno);
      }
      auto it = ids.find(std::string(f[0]));
      if (it == ids.end()) {
        throw DataError("partition:" + std::to_string(lineno) + ": unknown node '" +
                        std::string(f[0]) + "'");
      }
      parts[it->second] = f[1] == "U" ? Side::U : Side::I;
      tagged[it->second] = 1;
    });
    for (NodeId v = 0; v < names.size(); ++v) {
      if (!tagged[v]) throw DataError("partition: node '" + names[v] + "' has no side tag");
    }
    partition = std::move(parts);
  }

  Graph g = Graph::from_edges(names.size(), edges, directed, std::move(partition));
  g.set_names(std::move(names));
  LoadStats merged = g.load_stats();
  merged.lines = stats.lines;
  g.set_load_stats(merged);
  return g;
}

Graph load_edge_list(const std::string& path, bool directed,
                     const std::optional<std::string>& partition_path) {
  std::optional<std::string> parts;
  if (partition_path) parts = read_file(*partition_path);
  return parse_edge_list(read_file(path), directed, parts, path);
}

LabelSet parse_labels(const std::string& text, const Graph& g) {
  std::unordered_map<std::string, NodeId> ids;
  for (NodeId v = 0; v < g.num_nodes(); ++v) ids.emplace(g.name(v), v);

  LabelSet out;
  out.node_labels.resize(g.num_nodes());
  std::unordered_map<std::string, std::size_t> label_ids;

  for_each_data_line(text, [&](std::size_t lineno, std::string_view line,
                               const std::vector<std::string_view>& f) {
    if (f.size() != 2) {
      throw ParseError("labels:" + std::to_string(lineno) + ": expected 'node l1,l2,...', got '" +
                           std::string(line) + "'",
                       lineno);
    }
    auto it = ids.find(std::string(f[0]));
    if (it == ids.end()) {
      throw DataError("labels:" + std::to_string(lineno) + ": unknown node '" + std::string(f[0]) + "'");
    }
    auto& dst = out.node_labels[it->second];
    std::string_view rest = f[1];
    while (!rest.empty()) {
      std::size_t comma = rest.find(',');
      std::string_view tok = rest.substr(0, comma);
      if (!tok.empty()) {
        auto [lit, inserted] = label_ids.try_emplace(std::string(tok), out.label_names.size());
        if (inserted) out.label_names.emplace_back(tok);
        if (std::find(dst.begin(), dst.end(), lit->second) == dst.end()) dst.push_back(lit->second);
      }
      if (comma == std::string_view::npos) break;
      rest.remove_prefix(comma + 1);
    }
  });
  return out;
}

LabelSet load_labels(const std::string& path, const Graph& g) { return parse_labels(read_file(path), g); }

void write_edge_list(const Graph& g, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw DataError("cannot write " + path);
  if (g.directed_source()) {
    for (const auto& [a, b] : g.arcs()) out << g.name(a) << '\t' << g.name(b) << '\n';
  } else {
    for (const auto& [a, b] : g.edge_list()) out << g.name(a) << '\t' << g.name(b) << '\n';
  }
}

}  // namespace mcns
