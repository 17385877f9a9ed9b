#pragma once

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "sfc/degree_model.hpp"

namespace sfc {

using Vertex = std::uint32_t;
using Count = std::uint64_t;

struct Edge {
  Vertex u;
  Vertex v;
};

struct WeightedEdge {
  Vertex u;
  Vertex v;
  Count multiplicity;
};

/// Immutable simple graph in compressed sparse row form. Neighbor lists are
/// sorted ascending; no loops or duplicate edges.
class SimpleGraph {
 public:
  SimpleGraph() = default;

  /// Throws LoopRejected on a loop and ParseError on a duplicate edge or an
  /// endpoint >= n.
  static SimpleGraph from_edges(std::size_t n, std::span<const Edge> edges);

  std::size_t num_vertices() const noexcept { return offsets_.empty() ? 0 : offsets_.size() - 1; }
  std::size_t num_edges() const noexcept { return neighbors_.size() / 2; }

  std::span<const Vertex> neighbors(Vertex v) const noexcept {
    return {neighbors_.data() + offsets_[v], neighbors_.data() + offsets_[v + 1]};
  }
  std::size_t degree(Vertex v) const noexcept { return offsets_[v + 1] - offsets_[v]; }

  /// O(log d) membership test on the sorted neighbor list.
  bool adjacent(Vertex u, Vertex v) const noexcept;

  /// Each edge once with u < v, sorted lexicographically.
  std::vector<Edge> edges() const;

  friend bool operator==(const SimpleGraph&, const SimpleGraph&) = default;

 private:
  std::vector<std::size_t> offsets_;
  std::vector<Vertex> neighbors_;
};

/// Immutable loop-free multigraph; each vertex lists (neighbor, multiplicity)
/// pairs sorted by neighbor, multiplicities >= 1 and symmetric.
class MultiGraph {
 public:
  MultiGraph() = default;

  /// Parallel entries for the same pair accumulate.
  static MultiGraph from_edges(std::size_t n, std::span<const WeightedEdge> edges);
  static MultiGraph from_simple(const SimpleGraph& g);

  std::size_t num_vertices() const noexcept { return offsets_.empty() ? 0 : offsets_.size() - 1; }
  /// Distinct adjacent pairs.
  std::size_t num_pairs() const noexcept { return neighbors_.size() / 2; }
  /// Edges counted with multiplicity.
  Count num_edges() const noexcept;

  std::span<const Vertex> neighbors(Vertex v) const noexcept {
    return {neighbors_.data() + offsets_[v], neighbors_.data() + offsets_[v + 1]};
  }
  std::span<const Count> multiplicities(Vertex v) const noexcept {
    return {weights_.data() + offsets_[v], weights_.data() + offsets_[v + 1]};
  }
  /// 0 when u and v are not adjacent.
  Count multiplicity(Vertex u, Vertex v) const noexcept;

  /// The simple graph on the same adjacent pairs.
  SimpleGraph support() const;

  std::vector<WeightedEdge> edges() const;

  friend bool operator==(const MultiGraph&, const MultiGraph&) = default;

 private:
  std::vector<std::size_t> offsets_;
  std::vector<Vertex> neighbors_;
  std::vector<Count> weights_;
};

DegreeSequence degree_sequence_of(const SimpleGraph& g);
DegreeSequence degree_sequence_of(const MultiGraph& g);

}  // namespace sfc
