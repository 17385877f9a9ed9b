#pragma once

#include <optional>
#include <span>

#include "sfc/degree_model.hpp"
#include "sfc/graph.hpp"

namespace sfc {

struct RealizabilityVerdict {
  bool graphical = false;
  /// Smallest prefix length at which the inequality fails. Absent when every
  /// inequality holds (the verdict can then still be negative on parity).
  std::optional<std::size_t> violated_k;
};

/// Erdos-Gallai test in O(n) on a non-increasing sequence. Throws NotSorted.
RealizabilityVerdict erdos_gallai(std::span<const Degree> degrees);

/// Stable sort into non-increasing order.
std::vector<Degree> sorted_non_increasing(std::span<const Degree> degrees);

/// Realizes the sequence on the original vertex ids: repeatedly connects
/// the highest-residual vertex to the next-highest ones, lowest id first
/// among ties. Throws NotGraphical.
SimpleGraph havel_hakimi(std::span<const Degree> degrees);

/// Can a simple graph with these degrees contain a clique on the top
/// `clique_size` vertices? The clique is collapsed into one vertex of degree
///   deg(A) = sum of the top degrees - clique_size (clique_size - 1)
/// and the collapsed sequence is tested with Erdos-Gallai. When deg(A) is at
/// least the next degree this is exactly the inequality family
///   deg(A) + sum_{i=|A|+1}^{k} d_i
///     <= (k-|A|)(k-|A|+1) + sum_{i>k} min(d_i, k-|A|+1),   k >= |A|.
/// A positive verdict is sufficient for existence; the collapse forbids two
/// clique members sharing an outside neighbor, so it is not necessary.
/// Any longer admissible prefix that passes also counts, which keeps the
/// verdict monotone in the clique size.
/// violated_k is reported on the k >= |A| scale above.
/// Throws NotSorted, CliqueTooLarge.
RealizabilityVerdict clique_collapsed_feasibility(std::span<const Degree> degrees,
                                                  std::size_t clique_size);

}  // namespace sfc
