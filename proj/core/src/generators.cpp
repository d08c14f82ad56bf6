#include "forman/generators.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <numeric>
#include <sstream>
#include <unordered_set>

#include "forman/error.hpp"
#include "forman/random.hpp"

namespace forman {

namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

std::uint64_t undirected_key(NodeId u, NodeId v) {
  if (v < u) std::swap(u, v);
  return (static_cast<std::uint64_t>(u) << 32) | v;
}

void invalid(const std::string& what) { throw Error(ErrorCode::kInvalidSpec, what); }

// Geometric skipping over the lower triangle (Batagelj & Brandes).
std::vector<Edge> erdos_renyi(const ErdosRenyi& model, Rng& rng) {
  std::vector<Edge> edges;
  const auto n = static_cast<std::int64_t>(model.n);
  if (model.p <= 0.0) return edges;
  if (model.p >= 1.0) {
    for (std::int64_t v = 1; v < n; ++v) {
      for (std::int64_t w = 0; w < v; ++w) {
        edges.push_back({static_cast<NodeId>(w), static_cast<NodeId>(v)});
      }
    }
    return edges;
  }
  const double log_q = std::log1p(-model.p);
  std::int64_t v = 1;
  std::int64_t w = -1;
  while (v < n) {
    const double r = rng.uniform();
    w += 1 + static_cast<std::int64_t>(std::floor(std::log1p(-r) / log_q));
    while (w >= v && v < n) {
      w -= v;
      ++v;
    }
    if (v < n) edges.push_back({static_cast<NodeId>(w), static_cast<NodeId>(v)});
  }
  return edges;
}

std::vector<Edge> watts_strogatz(const WattsStrogatz& model, Rng& rng) {
  const std::size_t n = model.n;
  const std::size_t half = model.k_ring / 2;
  std::vector<Edge> edges;
  std::unordered_set<std::uint64_t> present;
  std::vector<std::size_t> degree(n, 0);
  for (std::size_t j = 1; j <= half; ++j) {
    for (std::size_t u = 0; u < n; ++u) {
      const auto a = static_cast<NodeId>(u);
      const auto b = static_cast<NodeId>((u + j) % n);
      edges.push_back({a, b});
      present.insert(undirected_key(a, b));
      ++degree[a];
      ++degree[b];
    }
  }
  if (model.beta <= 0.0) return edges;
  // Rewire (u, u+j) to (u, w) with probability beta, w uniform among
  // non-neighbours of u.
  for (std::size_t j = 1; j <= half; ++j) {
    for (std::size_t u = 0; u < n; ++u) {
      const std::size_t slot = (j - 1) * n + u;
      if (!rng.bernoulli(model.beta)) continue;
      const NodeId a = edges[slot].source;
      const NodeId b = edges[slot].target;
      if (degree[a] >= n - 1) continue;
      NodeId w = 0;
      do {
        w = static_cast<NodeId>(rng.below(n));
      } while (w == a || present.count(undirected_key(a, w)));
      present.erase(undirected_key(a, b));
      present.insert(undirected_key(a, w));
      --degree[b];
      ++degree[w];
      edges[slot] = {a, w};
    }
  }
  return edges;
}

std::vector<Edge> albert_barabasi(const AlbertBarabasi& model, Rng& rng) {
  const std::size_t m = model.m_attach;
  std::vector<Edge> edges;
  edges.reserve((model.n - m) * m);
  std::vector<NodeId> targets(m);
  std::iota(targets.begin(), targets.end(), NodeId{0});
  std::vector<NodeId> repeated;
  repeated.reserve(2 * (model.n - m) * m);
  std::vector<char> chosen(model.n, 0);
  for (std::size_t source = m; source < model.n; ++source) {
    for (NodeId t : targets) edges.push_back({static_cast<NodeId>(source), t});
    repeated.insert(repeated.end(), targets.begin(), targets.end());
    repeated.insert(repeated.end(), m, static_cast<NodeId>(source));
    // m distinct targets drawn proportionally to degree.
    targets.clear();
    while (targets.size() < m) {
      const NodeId pick = repeated[rng.below(repeated.size())];
      if (!chosen[pick]) {
        chosen[pick] = 1;
        targets.push_back(pick);
      }
    }
    for (NodeId t : targets) chosen[t] = 0;
  }
  return edges;
}

std::size_t node_count(const GeneratorSpec& spec) {
  return std::visit([](const auto& model) { return model.n; }, spec.model);
}

}  // namespace

void GeneratorSpec::validate() const {
  std::visit(Overloaded{
                 [](const ErdosRenyi& m) {
                   if (m.n < 2) invalid("ER needs n >= 2");
                   if (!(m.p >= 0.0 && m.p <= 1.0)) invalid("ER needs 0 <= p <= 1");
                 },
                 [](const WattsStrogatz& m) {
                   if (m.n < 2) invalid("WS needs n >= 2");
                   if (m.k_ring % 2 != 0) invalid("WS needs an even k_ring");
                   if (m.k_ring >= m.n) invalid("WS needs k_ring < n");
                   if (!(m.beta >= 0.0 && m.beta <= 1.0)) invalid("WS needs 0 <= beta <= 1");
                 },
                 [](const AlbertBarabasi& m) {
                   if (m.n < 2) invalid("AB needs n >= 2");
                   if (m.m_attach < 1 || m.m_attach >= m.n) invalid("AB needs 1 <= m_attach < n");
                 },
             },
             model);
}

std::string GeneratorSpec::describe() const {
  std::ostringstream out;
  std::visit(Overloaded{
                 [&](const ErdosRenyi& m) { out << "model=er n=" << m.n << " p=" << m.p; },
                 [&](const WattsStrogatz& m) {
                   out << "model=ws n=" << m.n << " k_ring=" << m.k_ring << " beta=" << m.beta;
                 },
                 [&](const AlbertBarabasi& m) {
                   out << "model=ab n=" << m.n << " m_attach=" << m.m_attach;
                 },
             },
             model);
  out << " rng=" << Rng::kAlgorithm << " seed=" << seed;
  return out.str();
}

WeightedNetwork generate(const GeneratorSpec& spec) {
  spec.validate();
  Rng rng(spec.seed);
  std::vector<Edge> edges = std::visit(
      Overloaded{
          [&](const ErdosRenyi& m) { return erdos_renyi(m, rng); },
          [&](const WattsStrogatz& m) { return watts_strogatz(m, rng); },
          [&](const AlbertBarabasi& m) { return albert_barabasi(m, rng); },
      },
      spec.model);
  return WeightedNetwork(node_count(spec), std::move(edges), false);
}

WeightedNetwork sample_subgraph(const WeightedNetwork& g, std::size_t n_target,
                                std::uint64_t seed) {
  const std::size_t n = g.node_count();
  if (n_target > n) {
    throw Error(ErrorCode::kTargetTooLarge, "sample of " + std::to_string(n_target) +
                                                " nodes requested from " + std::to_string(n));
  }
  Rng rng(seed);
  std::vector<char> taken(n, 0);
  std::vector<NodeId> unvisited(n);
  std::iota(unvisited.begin(), unvisited.end(), NodeId{0});
  std::size_t count = 0;
  std::deque<NodeId> frontier;
  auto take = [&](NodeId v) {
    taken[v] = 1;
    ++count;
    frontier.push_back(v);
  };
  while (count < n_target) {
    if (frontier.empty()) {
      // Fresh root uniformly among nodes not yet taken.
      unvisited.erase(std::remove_if(unvisited.begin(), unvisited.end(),
                                     [&](NodeId v) { return taken[v] != 0; }),
                      unvisited.end());
      take(unvisited[rng.below(unvisited.size())]);
      continue;
    }
    const NodeId v = frontier.front();
    frontier.pop_front();
    for (EdgeId e : g.incident_edges(v)) {
      if (count >= n_target) break;
      const NodeId u = g.opposite(e, v);
      if (!taken[u]) take(u);
    }
  }

  std::vector<NodeId> remap(n, 0);
  std::vector<std::string> labels;
  std::vector<double> node_weights;
  NodeId next = 0;
  for (NodeId v = 0; v < n; ++v) {
    if (!taken[v]) continue;
    remap[v] = next++;
    labels.push_back(g.label(v));
    node_weights.push_back(g.node_weight(v));
  }
  std::vector<Edge> edges;
  std::vector<double> edge_weights;
  std::vector<Orientation> orientation;
  for (EdgeId e = 0; e < g.edge_count(); ++e) {
    const Edge& edge = g.edge(e);
    if (!taken[edge.source] || !taken[edge.target]) continue;
    edges.push_back({remap[edge.source], remap[edge.target]});
    edge_weights.push_back(g.edge_weight(e));
    if (g.has_orientation()) orientation.push_back(g.orientation(e));
  }
  WeightedNetwork sub(next, std::move(edges), g.directed(), std::move(node_weights),
                      std::move(edge_weights), std::move(labels));
  if (!orientation.empty()) {
    sub = sub.with_edge_weights({sub.edge_weights().begin(), sub.edge_weights().end()},
                                std::move(orientation));
  }
  return sub;
}

}  // namespace forman
