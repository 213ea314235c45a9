#include "wocd/graphio.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <optional>
#include <sstream>
#include <string_view>
#include <unordered_map>

#include "wocd/error.hpp"

namespace wocd {
namespace {

std::string_view trim(std::string_view s) {
  const auto ws = " \t\r\n";
  auto b = s.find_first_not_of(ws);
  if (b == std::string_view::npos) return {};
  auto e = s.find_last_not_of(ws);
  return s.substr(b, e - b + 1);
}

std::vector<std::string_view> split_ws(std::string_view s) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < s.size()) {
    while (i < s.size() && (s[i] == ' ' || s[i] == '\t')) ++i;
    std::size_t j = i;
    while (j < s.size() && s[j] != ' ' && s[j] != '\t') ++j;
    if (j > i) out.push_back(s.substr(i, j - i));
    i = j;
  }
  return out;
}

[[noreturn]] void fail(std::size_t line_no, const std::string& what) {
  throw ParseError("line " + std::to_string(line_no) + ": " + what);
}

std::int64_t parse_id(std::string_view token, std::size_t line_no) {
  std::int64_t value = 0;
  auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
  if (ec != std::errc() || ptr != token.data() + token.size()) {
    fail(line_no, "expected an integer id, got '" + std::string(token) + "'");
  }
  if (value < 0) fail(line_no, "negative id " + std::to_string(value));
  if (value > std::numeric_limits<std::int32_t>::max()) fail(line_no, "id too large");
  return value;
}

// Parses "#key=value" headers; returns nullopt for plain comments.
std::optional<std::int64_t> header_value(std::string_view line, std::string_view key,
                                         std::size_t line_no) {
  std::string prefix = "#" + std::string(key) + "=";
  if (line.substr(0, prefix.size()) != prefix) return std::nullopt;
  return parse_id(trim(line.substr(prefix.size())), line_no);
}

template <typename F>
void for_each_line(const std::string& text, F&& f) {
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    auto end = text.find('\n', pos);
    if (end == std::string::npos) end = text.size();
    ++line_no;
    f(trim(std::string_view(text).substr(pos, end - pos)), line_no);
    pos = end + 1;
  }
}

std::string format_double(double x) {
  char buf[32];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), x);
  return std::string(buf, ptr);
}

}  // namespace

std::string read_text_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_text_file(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot write " + path.string());
  out << text;
  if (!out) throw IoError("write failed for " + path.string());
}

Graph parse_edge_list(const std::string& text) {
  std::optional<std::int64_t> declared;
  std::vector<std::pair<NodeId, NodeId>> edges;
  std::vector<std::size_t> edge_lines;
  std::int64_t max_id = -1;
  for_each_line(text, [&](std::string_view line, std::size_t line_no) {
    if (line.empty()) return;
    if (line.front() == '#') {
      if (auto n = header_value(line, "nodes", line_no)) declared = *n;
      return;
    }
    auto tokens = split_ws(line);
    if (tokens.size() != 2) fail(line_no, "expected 'u<TAB>v'");
    auto u = parse_id(tokens[0], line_no);
    auto v = parse_id(tokens[1], line_no);
    max_id = std::max({max_id, u, v});
    edges.emplace_back(static_cast<NodeId>(u), static_cast<NodeId>(v));
    edge_lines.push_back(line_no);
  });
  if (declared) {
    for (std::size_t i = 0; i < edges.size(); ++i) {
      if (std::max(edges[i].first, edges[i].second) >= *declared) {
        fail(edge_lines[i], "id exceeds declared node count " + std::to_string(*declared));
      }
    }
  }
  auto n = static_cast<NodeId>(declared ? *declared : max_id + 1);
  return Graph::from_edges(n, edges);
}

Graph load_edge_list(const std::filesystem::path& path) {
  try {
    return parse_edge_list(read_text_file(path));
  } catch (const ParseError& e) {
    throw ParseError(path.string() + ": " + e.what());
  }
}

std::string format_edge_list(const Graph& graph) {
  std::string out = "#nodes=" + std::to_string(graph.n_nodes()) + "\n";
  for (const auto& [u, v] : graph.edges()) {
    out += std::to_string(u);
    out += '\t';
    out += std::to_string(v);
    out += '\n';
  }
  return out;
}

void write_edge_list(const Graph& graph, const std::filesystem::path& path) {
  write_text_file(path, format_edge_list(graph));
}

LabeledGraph load_labeled_edge_list(const std::filesystem::path& path) {
  LabeledGraph result;
  std::unordered_map<std::string, NodeId> ids;
  std::vector<std::pair<NodeId, NodeId>> edges;
  auto intern = [&](std::string_view label) {
    auto [it, inserted] = ids.try_emplace(std::string(label), static_cast<NodeId>(ids.size()));
    if (inserted) result.labels.emplace_back(label);
    return it->second;
  };
  const std::string text = read_text_file(path);
  for_each_line(text, [&](std::string_view line, std::size_t line_no) {
    if (line.empty() || line.front() == '#') return;
    auto tokens = split_ws(line);
    if (tokens.size() != 2) fail(line_no, "expected 'u<TAB>v'");
    NodeId u = intern(tokens[0]);
    NodeId v = intern(tokens[1]);
    edges.emplace_back(u, v);
  });
  result.graph = Graph::from_edges(static_cast<NodeId>(result.labels.size()), edges);
  return result;
}

void write_id_map(const std::vector<std::string>& labels, const std::filesystem::path& path) {
  std::string out;
  for (std::size_t i = 0; i < labels.size(); ++i) {
    out += std::to_string(i) + "\t" + labels[i] + "\n";
  }
  write_text_file(path, out);
}

std::vector<std::string> load_id_map(const std::filesystem::path& path) {
  std::vector<std::string> labels;
  for_each_line(read_text_file(path), [&](std::string_view line, std::size_t line_no) {
    if (line.empty() || line.front() == '#') return;
    auto tab = line.find('\t');
    if (tab == std::string_view::npos) fail(line_no, "expected 'id<TAB>label'");
    auto id = parse_id(line.substr(0, tab), line_no);
    if (id != static_cast<std::int64_t>(labels.size())) fail(line_no, "ids must be dense and ordered");
    labels.emplace_back(line.substr(tab + 1));
  });
  return labels;
}

Cover parse_cover(const std::string& text) {
  std::optional<std::int64_t> declared_n, declared_k;
  std::unordered_map<NodeId, std::vector<CommunityId>> rows;
  std::int64_t max_node = -1, max_comm = -1;
  for_each_line(text, [&](std::string_view line, std::size_t line_no) {
    if (line.empty()) return;
    if (line.front() == '#') {
      if (auto n = header_value(line, "nodes", line_no)) declared_n = *n;
      if (auto k = header_value(line, "communities", line_no)) declared_k = *k;
      return;
    }
    auto colon = line.find(':');
    if (colon == std::string_view::npos) fail(line_no, "expected 'node_id: c1 c2 ...'");
    auto node = parse_id(trim(line.substr(0, colon)), line_no);
    std::vector<CommunityId> row;
    for (auto tok : split_ws(line.substr(colon + 1))) {
      auto c = parse_id(tok, line_no);
      if (declared_k && c >= *declared_k) {
        fail(line_no, "community id " + std::to_string(c) + " >= declared K=" +
                          std::to_string(*declared_k));
      }
      max_comm = std::max(max_comm, c);
      row.push_back(static_cast<CommunityId>(c));
    }
    if (declared_n && node >= *declared_n) fail(line_no, "node id exceeds declared node count");
    if (!rows.try_emplace(static_cast<NodeId>(node), std::move(row)).second) {
      fail(line_no, "duplicate line for node " + std::to_string(node));
    }
    max_node = std::max(max_node, node);
  });
  if (declared_k && max_comm >= *declared_k) throw ParseError("community id exceeds declared K");
  if (declared_n && max_node >= *declared_n) throw ParseError("node id exceeds declared node count");
  auto n = static_cast<NodeId>(declared_n ? *declared_n : max_node + 1);
  auto k = static_cast<CommunityId>(declared_k ? *declared_k : max_comm + 1);
  std::vector<std::vector<CommunityId>> dense(static_cast<std::size_t>(n));
  for (auto& [v, row] : rows) dense[v] = std::move(row);
  return Cover::from_rows(k, std::move(dense));
}

Cover load_cover(const std::filesystem::path& path) {
  try {
    return parse_cover(read_text_file(path));
  } catch (const ParseError& e) {
    throw ParseError(path.string() + ": " + e.what());
  }
}

std::string format_cover(const Cover& cover) {
  std::string out = "#nodes=" + std::to_string(cover.n_nodes()) + "\n#communities=" +
                    std::to_string(cover.n_communities()) + "\n";
  for (NodeId v = 0; v < cover.n_nodes(); ++v) {
    out += std::to_string(v);
    out += ':';
    for (CommunityId c : cover.row(v)) {
      out += ' ';
      out += std::to_string(c);
    }
    out += '\n';
  }
  return out;
}

void write_cover(const Cover& cover, const std::filesystem::path& path) {
  write_text_file(path, format_cover(cover));
}

FeatureMatrix parse_features(const std::string& text, bool has_header) {
  std::vector<std::vector<double>> rows;
  bool header_pending = has_header;
  for_each_line(text, [&](std::string_view line, std::size_t line_no) {
    if (line.empty()) return;
    if (header_pending) {
      header_pending = false;
      return;
    }
    std::vector<double> row;
    std::size_t pos = 0;
    while (true) {
      auto comma = line.find(',', pos);
      auto cell = trim(line.substr(pos, comma == std::string_view::npos ? std::string_view::npos
                                                                        : comma - pos));
      double value = 0.0;
      auto [ptr, ec] = std::from_chars(cell.data(), cell.data() + cell.size(), value);
      if (cell.empty() || ec != std::errc() || ptr != cell.data() + cell.size()) {
        fail(line_no, "bad feature value '" + std::string(cell) + "'");
      }
      if (!std::isfinite(value)) fail(line_no, "non-finite feature value");
      row.push_back(value);
      if (comma == std::string_view::npos) break;
      pos = comma + 1;
    }
    if (!rows.empty() && row.size() != rows.front().size()) {
      fail(line_no, "expected " + std::to_string(rows.front().size()) + " columns, got " +
                        std::to_string(row.size()));
    }
    rows.push_back(std::move(row));
  });
  const Eigen::Index n = static_cast<Eigen::Index>(rows.size());
  const Eigen::Index d = rows.empty() ? 0 : static_cast<Eigen::Index>(rows.front().size());
  FeatureMatrix x(n, d);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < d; ++j) x(i, j) = rows[i][j];
  }
  return x;
}

FeatureMatrix load_features(const std::filesystem::path& path, bool has_header) {
  try {
    return parse_features(read_text_file(path), has_header);
  } catch (const ParseError& e) {
    throw ParseError(path.string() + ": " + e.what());
  }
}

std::string format_features(const FeatureMatrix& features) {
  std::string out;
  for (Eigen::Index i = 0; i < features.rows(); ++i) {
    for (Eigen::Index j = 0; j < features.cols(); ++j) {
      if (j > 0) out += ',';
      out += format_double(features(i, j));
    }
    out += '\n';
  }
  return out;
}

void write_features(const FeatureMatrix& features, const std::filesystem::path& path) {
  write_text_file(path, format_features(features));
}

}  // namespace wocd
