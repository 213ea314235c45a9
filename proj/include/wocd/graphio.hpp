#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "wocd/cover.hpp"
#include "wocd/graph.hpp"
#include "wocd/matrix.hpp"

namespace wocd {

// Edge list: one "u<TAB>v" pair per line (any whitespace accepted on input),
// '#' comments, optional "#nodes=N" header fixing the node count.
Graph load_edge_list(const std::filesystem::path& path);
Graph parse_edge_list(const std::string& text);
void write_edge_list(const Graph& graph, const std::filesystem::path& path);
std::string format_edge_list(const Graph& graph);

/// External node labels mapped to dense ids in order of first appearance.
struct LabeledGraph {
  Graph graph;
  std::vector<std::string> labels;  // labels[id] = external label
};
LabeledGraph load_labeled_edge_list(const std::filesystem::path& path);
// id map file: one "id<TAB>label" line per node
void write_id_map(const std::vector<std::string>& labels, const std::filesystem::path& path);
std::vector<std::string> load_id_map(const std::filesystem::path& path);

// Cover: "node_id: c1 c2 ..." lines with optional "#nodes=N" and
// "#communities=K" headers. Without headers N and K are inferred from the
// largest ids seen.
Cover load_cover(const std::filesystem::path& path);
Cover parse_cover(const std::string& text);
void write_cover(const Cover& cover, const std::filesystem::path& path);
std::string format_cover(const Cover& cover);

// Features: CSV, one row per node. With has_header the first line is skipped.
FeatureMatrix load_features(const std::filesystem::path& path, bool has_header = false);
FeatureMatrix parse_features(const std::string& text, bool has_header = false);
void write_features(const FeatureMatrix& features, const std::filesystem::path& path);
std::string format_features(const FeatureMatrix& features);

std::string read_text_file(const std::filesystem::path& path);
void write_text_file(const std::filesystem::path& path, const std::string& text);

}  // namespace wocd
