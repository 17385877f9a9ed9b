#pragma once

#include <cstdint>
#include <vector>

#include "sfc/graph.hpp"

namespace sfc::detail {

struct ResidualRealization {
  std::vector<Edge> edges;
  std::size_t repairs = 0;
};

// Completes `fixed` (pairwise-disjoint edges among `in_clique` vertices) to a
// simple graph in which vertex v gains residual[v] more edges. Greedy
// highest-residual-first with lowest id among ties; vertices whose stubs
// cannot be placed are repaired afterwards with degree-preserving edge
// swaps, drawing at most `swap_budget` random edges.
// Throws RealizationFailed when the budget runs out.
ResidualRealization realize_residual(std::vector<Degree> residual,
                                     const std::vector<bool>& in_clique,
                                     std::vector<Edge> fixed,
                                     std::uint64_t seed,
                                     std::size_t swap_budget_factor = 10);

}  // namespace sfc::detail
