#pragma once

#include <cstddef>
#include <filesystem>
#include <functional>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "forman/curvature.hpp"
#include "forman/dynamics.hpp"
#include "forman/network.hpp"

namespace forman {

// Whitespace-separated `src dst [weight]` lines. A line holding a single
// label declares a (possibly isolated) node. Lines whose first non-blank
// character is `comment_prefix` are skipped.
struct EdgeListFormat {
  char comment_prefix = '#';
  bool directed = false;
  // When false the weight column is ignored and every edge gets weight 1.
  bool read_weights = true;
};

struct LoadedNetwork {
  WeightedNetwork network;
  std::vector<std::string> warnings;
  bool had_weight_column = false;
};

// Nodes are indexed by first appearance. Duplicate undirected edges keep the
// first occurrence and add a warning; duplicate directed edges, self-loops,
// malformed or non-positive weights raise ParseError with the line number.
LoadedNetwork parse_edge_list(std::istream& input, const EdgeListFormat& format = {});
LoadedNetwork load_edge_list(const std::filesystem::path& path, const EdgeListFormat& format = {});

// Shortest decimal text that parses back to the same double; integral values
// get a trailing ".0".
std::string format_real(double value);

// Writes to a temporary sibling and renames it over `path`.
void write_file_atomically(const std::filesystem::path& path,
                           const std::function<void(std::ostream&)>& writer);

// Inverse of parse_edge_list; `comments` become leading '#' lines.
void write_edge_list(std::ostream& out, const WeightedNetwork& g,
                     std::span<const std::string> comments = {});
void write_edge_list(const std::filesystem::path& path, const WeightedNetwork& g,
                     std::span<const std::string> comments = {});

struct HistogramRow {
  double lo = 0.0;
  double hi = 0.0;
  std::size_t count = 0;
  double density = 0.0;  // count / (total * width)
};

// Equal-width bins over [min, max] (widened to [v - 0.5, v + 0.5] for a
// constant sample); the last bin is closed. Throws EmptyInput.
std::vector<HistogramRow> histogram(std::span<const double> values, std::size_t bins);

// CSV `bin_lo,bin_hi,count,density`.
void emit_histogram(const CurvatureField& field, std::size_t bins,
                    const std::filesystem::path& path);

// n x n CSV without header, absent cells empty; plus `<path>.labels.csv`
// mapping index to label when `g` is given.
void emit_curvature_map(const CurvatureMap& map, const std::filesystem::path& path);
void emit_curvature_map(const CurvatureMap& map, const WeightedNetwork& g,
                        const std::filesystem::path& path);
void write_label_table(const WeightedNetwork& g, const std::filesystem::path& path);

// CSV `edge,source,target,weight,curvature` (+ `head,tail` when directed).
void write_curvature_csv(const WeightedNetwork& g, const CurvatureField& field,
                         const std::filesystem::path& path);
// CSV `node,label,curvature` (+ `in,out,net` when directed).
void write_node_curvature_csv(const WeightedNetwork& g, const CurvatureField& field,
                              const std::filesystem::path& path);

// CSV `source,target,status,curvature_a,curvature_b,weight_a,weight_b,deviation,flagged`.
void write_change_report(const SnapshotPair& pair, const ChangeReport& report,
                         const std::filesystem::path& path);

}  // namespace forman
