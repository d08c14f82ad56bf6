#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <variant>

#include "forman/network.hpp"

namespace forman {

struct ErdosRenyi {
  std::size_t n = 0;
  double p = 0.0;
};

struct WattsStrogatz {
  std::size_t n = 0;
  std::size_t k_ring = 0;  // even; each node links to k_ring/2 neighbours per side
  double beta = 0.0;
};

struct AlbertBarabasi {
  std::size_t n = 0;
  std::size_t m_attach = 1;
};

struct GeneratorSpec {
  std::variant<ErdosRenyi, WattsStrogatz, AlbertBarabasi> model;
  std::uint64_t seed = 0;

  // Throws InvalidSpec.
  void validate() const;
  // One-line description including the RNG algorithm and seed.
  std::string describe() const;
};

// Simple undirected graph with unit weights; byte-identical for equal specs.
WeightedNetwork generate(const GeneratorSpec& spec);

// Snowball sample: breadth-first from a seeded random root (restarting from a
// fresh random root when a component is exhausted) until n_target nodes are
// reached. Returns the induced subgraph with nodes kept in their original
// relative order and labels, weights and orientation carried over.
WeightedNetwork sample_subgraph(const WeightedNetwork& g, std::size_t n_target,
                                std::uint64_t seed);

}  // namespace forman
