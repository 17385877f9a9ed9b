#include "sfc/clustering.hpp"

#include <algorithm>
#include <cmath>

namespace sfc {

std::string_view to_string(TripletValueDef def) noexcept {
  switch (def) {
    case TripletValueDef::Arithmetic: return "arithmetic";
    case TripletValueDef::Geometric: return "geometric";
    case TripletValueDef::Minimum: return "minimum";
    case TripletValueDef::Maximum: return "maximum";
    case TripletValueDef::Product: return "product";
  }
  return "?";
}

std::optional<TripletValueDef> parse_triplet_def(std::string_view text) noexcept {
  if (text == "arithmetic" || text == "arith") return TripletValueDef::Arithmetic;
  if (text == "geometric" || text == "geom") return TripletValueDef::Geometric;
  if (text == "minimum" || text == "min") return TripletValueDef::Minimum;
  if (text == "maximum" || text == "max") return TripletValueDef::Maximum;
  if (text == "product" || text == "prod") return TripletValueDef::Product;
  return std::nullopt;
}

double triplet_value(TripletValueDef def, Count a, Count b) noexcept {
  const double x = static_cast<double>(a);
  const double y = static_cast<double>(b);
  switch (def) {
    case TripletValueDef::Arithmetic: return (x + y) / 2.0;
    case TripletValueDef::Geometric: return std::sqrt(x * y);
    case TripletValueDef::Minimum: return std::min(x, y);
    case TripletValueDef::Maximum: return std::max(x, y);
    case TripletValueDef::Product: return x * y;
  }
  return 0.0;
}

namespace detail {

std::vector<std::vector<Vertex>> forward_adjacency(const SimpleGraph& g) {
  const std::size_t n = g.num_vertices();
  // Orient each edge from lower to higher (degree, id) rank; every vertex
  // then has at most O(sqrt m) out-neighbors.
  auto lower = [&](Vertex u, Vertex v) {
    const auto du = g.degree(u);
    const auto dv = g.degree(v);
    return du < dv || (du == dv && u < v);
  };
  std::vector<std::vector<Vertex>> out(n);
  for (Vertex u = 0; u < n; ++u) {
    for (const Vertex v : g.neighbors(u)) {
      if (lower(u, v)) out[u].push_back(v);
    }
  }
  return out;
}

}  // namespace detail

Count triangle_count(const SimpleGraph& g) {
  Count total = 0;
  for_each_triangle(g, [&](Vertex, Vertex, Vertex) { ++total; });
  return total;
}

Count wedge_count(const SimpleGraph& g) {
  Count total = 0;
  for (Vertex v = 0; v < g.num_vertices(); ++v) {
    const Count d = g.degree(v);
    total += d * (d - (d > 0 ? 1 : 0)) / 2;
  }
  return total;
}

std::vector<Count> local_triangle_counts(const SimpleGraph& g) {
  std::vector<Count> local(g.num_vertices(), 0);
  for_each_triangle(g, [&](Vertex a, Vertex b, Vertex c) {
    ++local[a];
    ++local[b];
    ++local[c];
  });
  return local;
}

double global_clustering(const SimpleGraph& g) {
  const Count wedges = wedge_count(g);
  if (wedges == 0) return 0.0;
  return 3.0 * static_cast<double>(triangle_count(g)) / static_cast<double>(wedges);
}

double average_local_clustering(const SimpleGraph& g) {
  const std::size_t n = g.num_vertices();
  if (n == 0) return 0.0;
  const auto local = local_triangle_counts(g);
  double sum = 0.0;
  for (Vertex v = 0; v < n; ++v) {
    const double d = static_cast<double>(g.degree(v));
    if (d < 2) continue;
    sum += static_cast<double>(local[v]) / (d * (d - 1) / 2);
  }
  return sum / static_cast<double>(n);
}

ClusteringReport clustering_report(const SimpleGraph& g) {
  ClusteringReport r;
  r.n = g.num_vertices();
  r.m = g.num_edges();
  const auto local = local_triangle_counts(g);
  Count triple = 0;
  double local_sum = 0.0;
  for (Vertex v = 0; v < r.n; ++v) {
    triple += local[v];
    const double d = static_cast<double>(g.degree(v));
    if (d >= 2) local_sum += static_cast<double>(local[v]) / (d * (d - 1) / 2);
  }
  r.triangles = triple / 3;
  r.wedges = wedge_count(g);
  r.global = r.wedges == 0 ? 0.0
                           : 3.0 * static_cast<double>(r.triangles) /
                                 static_cast<double>(r.wedges);
  r.average_local = r.n == 0 ? 0.0 : local_sum / static_cast<double>(r.n);
  return r;
}

namespace {

// Per-vertex accumulators. Rational definitions keep twice the value as an
// integer (the arithmetic mean halves a sum of two integers).
struct Accumulator {
  std::vector<Count> closed2;
  std::vector<Count> total2;
  std::vector<double> closed_real;
  std::vector<double> total_real;
};

Count doubled_value(TripletValueDef def, Count a, Count b) noexcept {
  switch (def) {
    case TripletValueDef::Arithmetic: return a + b;
    case TripletValueDef::Minimum: return 2 * std::min(a, b);
    case TripletValueDef::Maximum: return 2 * std::max(a, b);
    case TripletValueDef::Product: return 2 * a * b;
    case TripletValueDef::Geometric: break;
  }
  return 0;
}

Accumulator accumulate(const MultiGraph& g, TripletValueDef def) {
  const std::size_t n = g.num_vertices();
  const bool real = def == TripletValueDef::Geometric;
  Accumulator acc;
  if (real) {
    acc.closed_real.assign(n, 0.0);
    acc.total_real.assign(n, 0.0);
  } else {
    acc.closed2.assign(n, 0);
    acc.total2.assign(n, 0);
  }

  // All triplets at a center, in closed form over its multiplicity list.
  std::vector<Count> m;
  for (Vertex v = 0; v < n; ++v) {
    const auto w = g.multiplicities(v);
    const Count k = w.size();
    if (k < 2) continue;
    switch (def) {
      case TripletValueDef::Product: {
        Count s = 0, q = 0;
        for (const Count x : w) {
          s += x;
          q += x * x;
        }
        acc.total2[v] = s * s - q;
        break;
      }
      case TripletValueDef::Arithmetic: {
        Count s = 0;
        for (const Count x : w) s += x;
        acc.total2[v] = (k - 1) * s;
        break;
      }
      case TripletValueDef::Minimum:
      case TripletValueDef::Maximum: {
        m.assign(w.begin(), w.end());
        std::sort(m.begin(), m.end());
        Count t = 0;
        for (Count i = 0; i < k; ++i) {
          // In ascending order m[i] is the minimum of the pairs it forms with
          // the k-1-i larger entries and the maximum of the i pairs below it.
          t += m[i] * (def == TripletValueDef::Minimum ? k - 1 - i : i);
        }
        acc.total2[v] = 2 * t;
        break;
      }
      case TripletValueDef::Geometric: {
        double s = 0.0, q = 0.0;
        for (const Count x : w) {
          s += std::sqrt(static_cast<double>(x));
          q += static_cast<double>(x);
        }
        acc.total_real[v] = (s * s - q) / 2.0;
        break;
      }
    }
  }

  // Closed triplets: three per triangle, one at each corner.
  const SimpleGraph support = g.support();
  for_each_triangle(support, [&](Vertex a, Vertex b, Vertex c) {
    const Count ab = g.multiplicity(a, b);
    const Count ac = g.multiplicity(a, c);
    const Count bc = g.multiplicity(b, c);
    if (real) {
      acc.closed_real[a] += std::sqrt(static_cast<double>(ab * ac));
      acc.closed_real[b] += std::sqrt(static_cast<double>(ab * bc));
      acc.closed_real[c] += std::sqrt(static_cast<double>(ac * bc));
    } else {
      acc.closed2[a] += doubled_value(def, ab, ac);
      acc.closed2[b] += doubled_value(def, ab, bc);
      acc.closed2[c] += doubled_value(def, ac, bc);
    }
  });
  return acc;
}

}  // namespace

TripletTotals weighted_triplet_totals(const MultiGraph& g, TripletValueDef def) {
  const auto acc = accumulate(g, def);
  TripletTotals t;
  if (def == TripletValueDef::Geometric) {
    for (std::size_t v = 0; v < g.num_vertices(); ++v) {
      t.closed += acc.closed_real[v];
      t.total += acc.total_real[v];
    }
  } else {
    Count closed2 = 0, total2 = 0;
    for (std::size_t v = 0; v < g.num_vertices(); ++v) {
      closed2 += acc.closed2[v];
      total2 += acc.total2[v];
    }
    t.closed = static_cast<double>(closed2) / 2.0;
    t.total = static_cast<double>(total2) / 2.0;
  }
  return t;
}

double weighted_global_clustering(const MultiGraph& g, TripletValueDef def) {
  return weighted_triplet_totals(g, def).ratio();
}

std::vector<TripletTotals> local_triplet_totals(const MultiGraph& g,
                                                TripletValueDef def) {
  const auto acc = accumulate(g, def);
  std::vector<TripletTotals> out(g.num_vertices());
  for (std::size_t v = 0; v < out.size(); ++v) {
    if (def == TripletValueDef::Geometric) {
      out[v] = {acc.closed_real[v], acc.total_real[v]};
    } else {
      out[v] = {static_cast<double>(acc.closed2[v]) / 2.0,
                static_cast<double>(acc.total2[v]) / 2.0};
    }
  }
  return out;
}

}  // namespace sfc
