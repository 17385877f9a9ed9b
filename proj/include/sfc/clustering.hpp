#pragma once

#include <array>
#include <optional>
#include <string_view>
#include <vector>

#include "sfc/graph.hpp"

namespace sfc {

/// How a triplet's value is derived from the multiplicities of its two
/// center ties.
enum class TripletValueDef { Arithmetic, Geometric, Minimum, Maximum, Product };

inline constexpr std::array<TripletValueDef, 5> kAllTripletDefs = {
    TripletValueDef::Arithmetic, TripletValueDef::Geometric,
    TripletValueDef::Minimum, TripletValueDef::Maximum, TripletValueDef::Product};

std::string_view to_string(TripletValueDef def) noexcept;
/// Accepts arithmetic|arith, geometric|geom, minimum|min, maximum|max, product|prod.
std::optional<TripletValueDef> parse_triplet_def(std::string_view text) noexcept;

double triplet_value(TripletValueDef def, Count a, Count b) noexcept;

Count triangle_count(const SimpleGraph& g);
Count wedge_count(const SimpleGraph& g);

/// Number of triangles through each vertex (edges among its neighbors).
std::vector<Count> local_triangle_counts(const SimpleGraph& g);

/// Visits every triangle once as (a, b, c). Degree-ordered forward
/// enumeration with merge intersections, O(m^1.5).
template <class Fn>
void for_each_triangle(const SimpleGraph& g, Fn&& fn);

/// 3T / P2, or 0 when there are no wedges.
double global_clustering(const SimpleGraph& g);

/// Mean of T_i / C(d_i, 2) over all vertices; degree < 2 contributes 0.
double average_local_clustering(const SimpleGraph& g);

struct ClusteringReport {
  std::size_t n = 0;
  std::size_t m = 0;
  Count triangles = 0;
  Count wedges = 0;
  double global = 0.0;
  double average_local = 0.0;
};

ClusteringReport clustering_report(const SimpleGraph& g);

/// Totals of triplet values over all (center, unordered distinct neighbor
/// pair) triplets. For the rational definitions the totals are accumulated
/// in integers and are exact whenever they fit a double mantissa.
struct TripletTotals {
  double closed = 0.0;
  double total = 0.0;

  double ratio() const noexcept { return total > 0.0 ? closed / total : 0.0; }
};

TripletTotals weighted_triplet_totals(const MultiGraph& g, TripletValueDef def);

/// Total value of closed triplets over total value of triplets; 0 when
/// there are no triplets.
double weighted_global_clustering(const MultiGraph& g, TripletValueDef def);

/// Per-center totals of triplet values (closed and all), indexed by vertex.
std::vector<TripletTotals> local_triplet_totals(const MultiGraph& g,
                                                TripletValueDef def);

// ---------------------------------------------------------------------------

namespace detail {
std::vector<std::vector<Vertex>> forward_adjacency(const SimpleGraph& g);
}

template <class Fn>
void for_each_triangle(const SimpleGraph& g, Fn&& fn) {
  const auto out = detail::forward_adjacency(g);
  for (Vertex a = 0; a < out.size(); ++a) {
    const auto& na = out[a];
    for (const Vertex b : na) {
      const auto& nb = out[b];
      auto i = na.begin();
      auto j = nb.begin();
      while (i != na.end() && j != nb.end()) {
        if (*i < *j) {
          ++i;
        } else if (*j < *i) {
          ++j;
        } else {
          fn(a, b, *i);
          ++i;
          ++j;
        }
      }
    }
  }
}

}  // namespace sfc
