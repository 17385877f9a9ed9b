#include "sfc/realizability.hpp"

#include <algorithm>
#include <functional>

#include "residual_realizer.hpp"
#include "sfc/error.hpp"

namespace sfc {

namespace {

void require_sorted(std::span<const Degree> d) {
  if (!std::is_sorted(d.begin(), d.end(), std::greater<>())) {
    throw Error(ErrorCode::NotSorted, "degree sequence must be non-increasing");
  }
  if (!d.empty() && d.back() < 0) {
    throw Error(ErrorCode::NotSorted, "degrees must be non-negative");
  }
}

// Smallest failing k (1-based), assuming d is non-increasing and non-negative.
std::optional<std::size_t> first_violation(std::span<const Degree> d) {
  const std::size_t n = d.size();
  std::vector<Degree> suffix(n + 1, 0);
  for (std::size_t i = n; i-- > 0;) suffix[i] = suffix[i + 1] + d[i];

  Degree prefix = 0;
  // p = number of entries >= k; non-increasing as k grows.
  std::size_t p = n;
  for (std::size_t k = 1; k <= n; ++k) {
    prefix += d[k - 1];
    const auto kk = static_cast<Degree>(k);
    while (p > 0 && d[p - 1] < kk) --p;
    // Entries at positions k..n-1 contribute min(d_i, k).
    const std::size_t split = std::max(p, k);
    const Degree rhs = kk * (kk - 1) + kk * static_cast<Degree>(split - k) + suffix[split];
    if (prefix > rhs) return k;
  }
  return std::nullopt;
}

}  // namespace

std::vector<Degree> sorted_non_increasing(std::span<const Degree> degrees) {
  std::vector<Degree> out(degrees.begin(), degrees.end());
  std::stable_sort(out.begin(), out.end(), std::greater<>());
  return out;
}

RealizabilityVerdict erdos_gallai(std::span<const Degree> degrees) {
  require_sorted(degrees);
  RealizabilityVerdict verdict;
  Degree total = 0;
  for (const Degree d : degrees) total += d;
  verdict.violated_k = first_violation(degrees);
  verdict.graphical = total % 2 == 0 && !verdict.violated_k;
  return verdict;
}

SimpleGraph havel_hakimi(std::span<const Degree> degrees) {
  const auto sorted = sorted_non_increasing(degrees);
  if (!erdos_gallai(sorted).graphical) {
    throw Error(ErrorCode::NotGraphical, "degree sequence is not graphical");
  }
  std::vector<Degree> residual(degrees.begin(), degrees.end());
  const std::vector<bool> no_clique(degrees.size(), false);
  // Plain Havel-Hakimi never dead-ends on a graphical sequence.
  auto realized = detail::realize_residual(std::move(residual), no_clique, {}, 0, 0);
  return SimpleGraph::from_edges(degrees.size(), realized.edges);
}

namespace {

// Erdos-Gallai on the sequence with the top s entries merged into one vertex
// of degree (sum of top s) - s(s-1). Requires degrees[s-1] >= s-1.
RealizabilityVerdict collapsed_check(std::span<const Degree> degrees, std::size_t s_size) {
  const auto s = static_cast<Degree>(s_size);
  Degree top = 0;
  for (std::size_t i = 0; i < s_size; ++i) top += degrees[i];
  const Degree collapsed_degree = top - s * (s - 1);

  std::vector<Degree> collapsed;
  collapsed.reserve(degrees.size() - s_size + 1);
  const auto rest = degrees.subspan(s_size);
  const auto pos = std::upper_bound(rest.begin(), rest.end(), collapsed_degree, std::greater<>());
  collapsed.insert(collapsed.end(), rest.begin(), pos);
  collapsed.push_back(collapsed_degree);
  collapsed.insert(collapsed.end(), pos, rest.end());

  auto verdict = erdos_gallai(collapsed);
  if (verdict.violated_k) *verdict.violated_k += s_size - 1;
  return verdict;
}

}  // namespace

RealizabilityVerdict clique_collapsed_feasibility(std::span<const Degree> degrees,
                                                  std::size_t clique_size) {
  require_sorted(degrees);
  const std::size_t n = degrees.size();
  if (clique_size == 0 || clique_size > n) {
    throw Error(ErrorCode::CliqueTooLarge,
                "clique size " + std::to_string(clique_size) + " outside [1, n]");
  }
  if (degrees[clique_size - 1] < static_cast<Degree>(clique_size) - 1) {
    throw Error(ErrorCode::CliqueTooLarge,
                "vertex of degree " + std::to_string(degrees[clique_size - 1]) +
                    " cannot join a clique of size " + std::to_string(clique_size));
  }
  const auto verdict = collapsed_check(degrees, clique_size);
  if (verdict.graphical) return verdict;
  // A clique on a longer prefix contains this one.
  for (std::size_t s = clique_size + 1;
       s <= n && degrees[s - 1] >= static_cast<Degree>(s) - 1; ++s) {
    if (collapsed_check(degrees, s).graphical) return {true, std::nullopt};
  }
  return verdict;
}

}  // namespace sfc
