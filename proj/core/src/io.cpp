#include "forman/io.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <string_view>
#include <unordered_map>
#include <unordered_set>

#include <unistd.h>

#include "forman/error.hpp"

namespace forman {

namespace {

std::vector<std::string_view> split_whitespace(std::string_view line) {
  std::vector<std::string_view> tokens;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && std::isspace(static_cast<unsigned char>(line[i]))) ++i;
    const std::size_t start = i;
    while (i < line.size() && !std::isspace(static_cast<unsigned char>(line[i]))) ++i;
    if (i > start) tokens.push_back(line.substr(start, i - start));
  }
  return tokens;
}

std::uint64_t pair_key(NodeId u, NodeId v, bool directed) {
  if (!directed && v < u) std::swap(u, v);
  return (static_cast<std::uint64_t>(u) << 32) | v;
}

void write_cell(std::ostream& out, double value) { out << format_real(value); }

}  // namespace

std::string format_real(double value) {
  char buffer[64];
  auto [end, ec] = std::to_chars(buffer, buffer + sizeof(buffer), value);
  std::string text(buffer, end);
  if (std::isfinite(value) && text.find_first_of(".eE") == std::string::npos) text += ".0";
  return text;
}

LoadedNetwork parse_edge_list(std::istream& input, const EdgeListFormat& format) {
  std::unordered_map<std::string, NodeId> ids;
  std::vector<std::string> labels;
  std::vector<Edge> edges;
  std::vector<double> weights;
  std::unordered_set<std::uint64_t> seen;
  LoadedNetwork loaded;

  auto node_of = [&](std::string_view label) {
    auto [it, inserted] = ids.try_emplace(std::string(label), static_cast<NodeId>(labels.size()));
    if (inserted) labels.emplace_back(label);
    return it->second;
  };

  std::string line;
  std::size_t line_no = 0;
  while (std::getline(input, line)) {
    ++line_no;
    const auto tokens = split_whitespace(line);
    if (tokens.empty() || tokens.front().front() == format.comment_prefix) continue;
    if (tokens.size() > 3) {
      throw ParseError(ErrorCode::kParseError, line_no, 4, "unexpected extra column");
    }
    if (tokens.size() == 1) {
      node_of(tokens[0]);
      continue;
    }
    double weight = 1.0;
    if (tokens.size() == 3) {
      loaded.had_weight_column = true;
      const std::string_view text = tokens[2];
      auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), weight);
      if (ec != std::errc() || ptr != text.data() + text.size()) {
        throw ParseError(ErrorCode::kParseError, line_no, 3,
                         "weight '" + std::string(text) + "' is not a number");
      }
      if (!(weight > 0.0) || !std::isfinite(weight)) {
        throw ParseError(ErrorCode::kParseError, line_no, 3, "weight must be positive and finite");
      }
      if (!format.read_weights) weight = 1.0;
    }
    const NodeId u = node_of(tokens[0]);
    const NodeId v = node_of(tokens[1]);
    if (u == v) {
      throw ParseError(ErrorCode::kParseError, line_no, 0,
                       "self-loop at '" + std::string(tokens[0]) + "'");
    }
    if (!seen.insert(pair_key(u, v, format.directed)).second) {
      if (format.directed) {
        throw ParseError(ErrorCode::kDuplicateDirectedEdge, line_no, 0,
                         "duplicate directed edge " + std::string(tokens[0]) + " -> " +
                             std::string(tokens[1]));
      }
      loaded.warnings.push_back("line " + std::to_string(line_no) +
                                ": duplicate undirected edge " + std::string(tokens[0]) + " " +
                                std::string(tokens[1]) + " ignored");
      continue;
    }
    edges.push_back({u, v});
    weights.push_back(weight);
  }
  if (input.bad()) throw Error(ErrorCode::kIoError, "read failed");

  const std::size_t n = labels.size();
  loaded.network = WeightedNetwork(n, std::move(edges), format.directed,
                                   std::vector<double>(n, 1.0), std::move(weights),
                                   std::move(labels));
  return loaded;
}

LoadedNetwork load_edge_list(const std::filesystem::path& path, const EdgeListFormat& format) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::kIoError, "cannot open " + path.string());
  return parse_edge_list(in, format);
}

void write_file_atomically(const std::filesystem::path& path,
                           const std::function<void(std::ostream&)>& writer) {
  std::filesystem::path tmp = path;
  tmp += ".tmp." + std::to_string(::getpid());
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error(ErrorCode::kIoError, "cannot write " + tmp.string());
    writer(out);
    out.flush();
    if (!out) {
      std::error_code ignored;
      std::filesystem::remove(tmp, ignored);
      throw Error(ErrorCode::kIoError, "write failed for " + path.string());
    }
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) {
    std::filesystem::remove(tmp, ec);
    throw Error(ErrorCode::kIoError, "cannot move output into place at " + path.string());
  }
}

void write_edge_list(std::ostream& out, const WeightedNetwork& g,
                     std::span<const std::string> comments) {
  for (const std::string& c : comments) out << "# " << c << '\n';
  for (NodeId v = 0; v < g.node_count(); ++v) {
    if (g.degree(v) == 0) out << g.label(v) << '\n';
  }
  for (EdgeId e = 0; e < g.edge_count(); ++e) {
    const Edge& edge = g.edge(e);
    out << g.label(edge.source) << ' ' << g.label(edge.target) << ' '
        << format_real(g.edge_weight(e)) << '\n';
  }
}

void write_edge_list(const std::filesystem::path& path, const WeightedNetwork& g,
                     std::span<const std::string> comments) {
  write_file_atomically(path, [&](std::ostream& out) { write_edge_list(out, g, comments); });
}

std::vector<HistogramRow> histogram(std::span<const double> values, std::size_t bins) {
  if (values.empty()) throw Error(ErrorCode::kEmptyInput, "histogram of an empty curvature field");
  if (bins < 1) throw Error(ErrorCode::kInvalidArgument, "need at least one bin");
  auto [min_it, max_it] = std::minmax_element(values.begin(), values.end());
  double lo = *min_it;
  double hi = *max_it;
  if (!(lo < hi)) {
    lo -= 0.5;
    hi += 0.5;
  }
  const double width = (hi - lo) / static_cast<double>(bins);
  std::vector<HistogramRow> rows(bins);
  for (std::size_t i = 0; i < bins; ++i) {
    rows[i].lo = lo + width * static_cast<double>(i);
    rows[i].hi = i + 1 == bins ? hi : lo + width * static_cast<double>(i + 1);
  }
  for (double x : values) {
    auto index = static_cast<std::size_t>(std::floor((x - lo) / width));
    ++rows[std::min(index, bins - 1)].count;
  }
  const auto total = static_cast<double>(values.size());
  for (auto& row : rows) row.density = static_cast<double>(row.count) / (total * width);
  return rows;
}

void emit_histogram(const CurvatureField& field, std::size_t bins,
                    const std::filesystem::path& path) {
  const auto rows = histogram(field.edge_curvature, bins);
  write_file_atomically(path, [&](std::ostream& out) {
    out << "bin_lo,bin_hi,count,density\n";
    for (const auto& row : rows) {
      out << format_real(row.lo) << ',' << format_real(row.hi) << ',' << row.count << ','
          << format_real(row.density) << '\n';
    }
  });
}

void emit_curvature_map(const CurvatureMap& map, const std::filesystem::path& path) {
  write_file_atomically(path, [&](std::ostream& out) {
    std::string row;
    for (std::size_t i = 0; i < map.size(); ++i) {
      row.clear();
      for (std::size_t j = 0; j < map.size(); ++j) {
        if (j > 0) row += ',';
        if (auto value = map.at(i, j)) row += format_real(*value);
      }
      row += '\n';
      out << row;
    }
  });
}

void emit_curvature_map(const CurvatureMap& map, const WeightedNetwork& g,
                        const std::filesystem::path& path) {
  emit_curvature_map(map, path);
  std::filesystem::path labels = path;
  labels += ".labels.csv";
  write_label_table(g, labels);
}

void write_label_table(const WeightedNetwork& g, const std::filesystem::path& path) {
  write_file_atomically(path, [&](std::ostream& out) {
    out << "index,label\n";
    for (NodeId v = 0; v < g.node_count(); ++v) out << v << ',' << g.label(v) << '\n';
  });
}

void write_curvature_csv(const WeightedNetwork& g, const CurvatureField& field,
                         const std::filesystem::path& path) {
  const bool directed = !field.directed_parts.empty();
  write_file_atomically(path, [&](std::ostream& out) {
    out << "edge,source,target,weight,curvature" << (directed ? ",head,tail" : "") << '\n';
    for (EdgeId e = 0; e < g.edge_count(); ++e) {
      const Edge& edge = g.edge(e);
      out << e << ',' << g.label(edge.source) << ',' << g.label(edge.target) << ',';
      write_cell(out, g.edge_weight(e));
      out << ',';
      write_cell(out, field.edge_curvature[e]);
      if (directed) {
        out << ',' << format_real(field.directed_parts[e].head) << ','
            << format_real(field.directed_parts[e].tail);
      }
      out << '\n';
    }
  });
}

void write_node_curvature_csv(const WeightedNetwork& g, const CurvatureField& field,
                              const std::filesystem::path& path) {
  if (field.node_curvature.size() != g.node_count()) {
    throw Error(ErrorCode::kInvalidArgument, "curvature field lacks node curvature");
  }
  write_file_atomically(path, [&](std::ostream& out) {
    out << "node,label,curvature" << (g.directed() ? ",in,out,net" : "") << '\n';
    for (NodeId v = 0; v < g.node_count(); ++v) {
      out << v << ',' << g.label(v) << ',' << format_real(field.node_curvature[v]);
      if (g.directed()) {
        const auto flow = node_in_out_curvature(g, v);
        out << ',' << format_real(flow.in) << ',' << format_real(flow.out) << ','
            << format_real(flow.net);
      }
      out << '\n';
    }
  });
}

void write_change_report(const SnapshotPair& pair, const ChangeReport& report,
                         const std::filesystem::path& path) {
  std::vector<char> flagged(report.shared.size(), 0);
  for (std::size_t i : report.flagged) flagged[i] = 1;
  write_file_atomically(path, [&](std::ostream& out) {
    out << "source,target,status,curvature_a,curvature_b,weight_a,weight_b,deviation,flagged\n";
    for (std::size_t i = 0; i < report.shared.size(); ++i) {
      const EdgeChange& c = report.shared[i];
      const Edge& edge = pair.a.edge(c.edge_a);
      out << pair.a.label(edge.source) << ',' << pair.a.label(edge.target) << ",shared,"
          << format_real(c.curvature_a) << ',' << format_real(c.curvature_b) << ','
          << format_real(c.weight_a) << ',' << format_real(c.weight_b) << ','
          << format_real(c.deviation) << ',' << (flagged[i] ? 1 : 0) << '\n';
    }
    for (EdgeId e : report.removed) {
      const Edge& edge = pair.a.edge(e);
      out << pair.a.label(edge.source) << ',' << pair.a.label(edge.target) << ",removed,,,"
          << format_real(pair.a.edge_weight(e)) << ",,,\n";
    }
    for (EdgeId e : report.added) {
      const Edge& edge = pair.b.edge(e);
      out << pair.b.label(edge.source) << ',' << pair.b.label(edge.target) << ",added,,,,"
          << format_real(pair.b.edge_weight(e)) << ",,\n";
    }
  });
}

}  // namespace forman
