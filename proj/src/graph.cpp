#include "sfc/graph.hpp"

#include <algorithm>
#include <string>

#include "sfc/error.hpp"

namespace sfc {

namespace {

void check_endpoints(std::size_t n, Vertex u, Vertex v) {
  if (u >= n || v >= n) {
    throw Error(ErrorCode::ParseError, "edge (" + std::to_string(u) + ", " +
                                           std::to_string(v) + ") exceeds n = " +
                                           std::to_string(n));
  }
  if (u == v) {
    throw Error(ErrorCode::LoopRejected, "loop at vertex " + std::to_string(u));
  }
}

}  // namespace

SimpleGraph SimpleGraph::from_edges(std::size_t n, std::span<const Edge> edges) {
  SimpleGraph g;
  g.offsets_.assign(n + 1, 0);
  for (const auto& [u, v] : edges) {
    check_endpoints(n, u, v);
    ++g.offsets_[u + 1];
    ++g.offsets_[v + 1];
  }
  for (std::size_t i = 0; i < n; ++i) g.offsets_[i + 1] += g.offsets_[i];
  g.neighbors_.resize(g.offsets_[n]);
  std::vector<std::size_t> cursor(g.offsets_.begin(), g.offsets_.end() - 1);
  for (const auto& [u, v] : edges) {
    g.neighbors_[cursor[u]++] = v;
    g.neighbors_[cursor[v]++] = u;
  }
  for (std::size_t v = 0; v < n; ++v) {
    auto first = g.neighbors_.begin() + static_cast<std::ptrdiff_t>(g.offsets_[v]);
    auto last = g.neighbors_.begin() + static_cast<std::ptrdiff_t>(g.offsets_[v + 1]);
    std::sort(first, last);
    if (auto dup = std::adjacent_find(first, last); dup != last) {
      throw Error(ErrorCode::ParseError, "duplicate edge (" + std::to_string(v) +
                                             ", " + std::to_string(*dup) + ")");
    }
  }
  return g;
}

bool SimpleGraph::adjacent(Vertex u, Vertex v) const noexcept {
  const auto nb = neighbors(u);
  return std::binary_search(nb.begin(), nb.end(), v);
}

std::vector<Edge> SimpleGraph::edges() const {
  std::vector<Edge> out;
  out.reserve(num_edges());
  for (Vertex u = 0; u < num_vertices(); ++u) {
    for (const Vertex v : neighbors(u)) {
      if (u < v) out.push_back({u, v});
    }
  }
  return out;
}

MultiGraph MultiGraph::from_edges(std::size_t n, std::span<const WeightedEdge> edges) {
  std::vector<WeightedEdge> canon;
  canon.reserve(edges.size());
  for (const auto& e : edges) {
    check_endpoints(n, e.u, e.v);
    if (e.multiplicity == 0) continue;
    canon.push_back(e.u < e.v ? e : WeightedEdge{e.v, e.u, e.multiplicity});
  }
  std::sort(canon.begin(), canon.end(), [](const WeightedEdge& a, const WeightedEdge& b) {
    return std::pair(a.u, a.v) < std::pair(b.u, b.v);
  });
  std::vector<WeightedEdge> merged;
  for (const auto& e : canon) {
    if (!merged.empty() && merged.back().u == e.u && merged.back().v == e.v) {
      merged.back().multiplicity += e.multiplicity;
    } else {
      merged.push_back(e);
    }
  }

  MultiGraph g;
  g.offsets_.assign(n + 1, 0);
  for (const auto& e : merged) {
    ++g.offsets_[e.u + 1];
    ++g.offsets_[e.v + 1];
  }
  for (std::size_t i = 0; i < n; ++i) g.offsets_[i + 1] += g.offsets_[i];
  g.neighbors_.resize(g.offsets_[n]);
  g.weights_.resize(g.offsets_[n]);
  std::vector<std::size_t> cursor(g.offsets_.begin(), g.offsets_.end() - 1);
  // merged is sorted by (u, v), so appending in this order leaves every list
  // sorted: entries with neighbor u < v arrive before those with neighbor v > u.
  for (const auto& e : merged) {
    g.neighbors_[cursor[e.v]] = e.u;
    g.weights_[cursor[e.v]++] = e.multiplicity;
  }
  for (const auto& e : merged) {
    g.neighbors_[cursor[e.u]] = e.v;
    g.weights_[cursor[e.u]++] = e.multiplicity;
  }
  return g;
}

MultiGraph MultiGraph::from_simple(const SimpleGraph& g) {
  std::vector<WeightedEdge> edges;
  edges.reserve(g.num_edges());
  for (const auto& [u, v] : g.edges()) edges.push_back({u, v, 1});
  return from_edges(g.num_vertices(), edges);
}

Count MultiGraph::num_edges() const noexcept {
  Count total = 0;
  for (const Count w : weights_) total += w;
  return total / 2;
}

Count MultiGraph::multiplicity(Vertex u, Vertex v) const noexcept {
  const auto nb = neighbors(u);
  const auto it = std::lower_bound(nb.begin(), nb.end(), v);
  if (it == nb.end() || *it != v) return 0;
  return multiplicities(u)[static_cast<std::size_t>(it - nb.begin())];
}

SimpleGraph MultiGraph::support() const {
  std::vector<Edge> out;
  out.reserve(num_pairs());
  for (Vertex u = 0; u < num_vertices(); ++u) {
    for (const Vertex v : neighbors(u)) {
      if (u < v) out.push_back({u, v});
    }
  }
  return SimpleGraph::from_edges(num_vertices(), out);
}

std::vector<WeightedEdge> MultiGraph::edges() const {
  std::vector<WeightedEdge> out;
  out.reserve(num_pairs());
  for (Vertex u = 0; u < num_vertices(); ++u) {
    const auto nb = neighbors(u);
    const auto w = multiplicities(u);
    for (std::size_t i = 0; i < nb.size(); ++i) {
      if (u < nb[i]) out.push_back({u, nb[i], w[i]});
    }
  }
  return out;
}

DegreeSequence degree_sequence_of(const SimpleGraph& g) {
  DegreeSequence seq;
  seq.degrees.resize(g.num_vertices());
  for (Vertex v = 0; v < g.num_vertices(); ++v) {
    seq.degrees[v] = static_cast<Degree>(g.degree(v));
  }
  return seq;
}

DegreeSequence degree_sequence_of(const MultiGraph& g) {
  DegreeSequence seq;
  seq.degrees.resize(g.num_vertices());
  for (Vertex v = 0; v < g.num_vertices(); ++v) {
    Degree d = 0;
    for (const Count w : g.multiplicities(v)) d += static_cast<Degree>(w);
    seq.degrees[v] = d;
  }
  return seq;
}

}  // namespace sfc
