#include "residual_realizer.hpp"

#include <algorithm>
#include <optional>
#include <random>
#include <set>
#include <unordered_set>

#include "sfc/error.hpp"

namespace sfc::detail {

namespace {

std::uint64_t key(Vertex u, Vertex v) {
  if (u > v) std::swap(u, v);
  return (static_cast<std::uint64_t>(u) << 32) | v;
}

class SwapRepair {
 public:
  SwapRepair(std::vector<Edge>& edges, const std::vector<bool>& in_clique,
             std::uint64_t seed)
      : edges_(edges), in_clique_(in_clique), rng_(seed) {
    present_.reserve(edges.size() * 2);
    for (const auto& [u, v] : edges) present_.insert(key(u, v));
  }

  bool adjacent(Vertex u, Vertex v) const { return present_.count(key(u, v)) != 0; }

  void add(Vertex u, Vertex v) {
    edges_.push_back({u, v});
    present_.insert(key(u, v));
  }

  // Draws a random removable edge, oriented randomly.
  std::optional<std::pair<std::size_t, Edge>> draw() {
    if (edges_.empty()) return std::nullopt;
    std::uniform_int_distribution<std::size_t> pick(0, edges_.size() - 1);
    const std::size_t i = pick(rng_);
    Edge e = edges_[i];
    if (in_clique_[e.u] && in_clique_[e.v]) return std::nullopt;
    if (rng_() & 1) std::swap(e.u, e.v);
    return std::pair{i, e};
  }

  void remove(std::size_t i) {
    present_.erase(key(edges_[i].u, edges_[i].v));
    edges_[i] = edges_.back();
    edges_.pop_back();
  }

 private:
  std::vector<Edge>& edges_;
  const std::vector<bool>& in_clique_;
  std::unordered_set<std::uint64_t> present_;
  std::mt19937_64 rng_;
};

}  // namespace

ResidualRealization realize_residual(std::vector<Degree> residual,
                                     const std::vector<bool>& in_clique,
                                     std::vector<Edge> fixed, std::uint64_t seed,
                                     std::size_t swap_budget_factor) {
  const std::size_t n = residual.size();
  ResidualRealization result;
  result.edges = std::move(fixed);

  // Ordered by (-residual, id): begin() is the highest residual, lowest id.
  using Entry = std::pair<Degree, Vertex>;
  std::set<Entry> queue;
  for (Vertex v = 0; v < n; ++v) {
    if (residual[v] > 0) queue.insert({-residual[v], v});
  }

  std::vector<Vertex> deficient;
  std::vector<Vertex> targets;
  while (!queue.empty()) {
    const Vertex v = queue.begin()->second;
    queue.erase(queue.begin());
    targets.clear();
    for (auto it = queue.begin();
         it != queue.end() && static_cast<Degree>(targets.size()) < residual[v]; ++it) {
      const Vertex t = it->second;
      if (in_clique[v] && in_clique[t]) continue;
      targets.push_back(t);
    }
    for (const Vertex t : targets) {
      queue.erase({-residual[t], t});
      if (--residual[t] > 0) queue.insert({-residual[t], t});
      result.edges.push_back({v, t});
    }
    residual[v] -= static_cast<Degree>(targets.size());
    if (residual[v] > 0) deficient.push_back(v);
  }
  if (deficient.empty()) return result;

  SwapRepair repair(result.edges, in_clique, seed);
  const std::size_t budget = swap_budget_factor * std::max<std::size_t>(result.edges.size(), 1);
  std::size_t attempts = 0;
  auto spend = [&] {
    if (++attempts > budget) {
      throw Error(ErrorCode::RealizationFailed,
                  "edge-swap repair exhausted its budget of " + std::to_string(budget));
    }
  };

  std::size_t head = 0;
  while (head < deficient.size()) {
    const Vertex v = deficient[head];
    if (residual[v] == 0) {
      ++head;
      continue;
    }
    if (residual[v] >= 2) {
      // Replace a-b by v-a, v-b.
      spend();
      const auto drawn = repair.draw();
      if (!drawn) continue;
      const auto [i, e] = *drawn;
      if (e.u == v || e.v == v || repair.adjacent(v, e.u) || repair.adjacent(v, e.v)) continue;
      repair.remove(i);
      repair.add(v, e.u);
      repair.add(v, e.v);
      residual[v] -= 2;
      ++result.repairs;
      continue;
    }
    // One stub left at v: pair it with another deficient vertex w.
    Vertex w = v;
    for (std::size_t j = head + 1; j < deficient.size(); ++j) {
      if (residual[deficient[j]] > 0) {
        w = deficient[j];
        break;
      }
    }
    if (w == v) {
      throw Error(ErrorCode::RealizationFailed, "odd stub left over at one vertex");
    }
    if (!repair.adjacent(v, w)) {
      repair.add(v, w);
      --residual[v];
      --residual[w];
      continue;
    }
    // Replace a-b by v-a, w-b.
    spend();
    const auto drawn = repair.draw();
    if (!drawn) continue;
    const auto [i, e] = *drawn;
    const Vertex a = e.u, b = e.v;
    if (a == v || a == w || b == v || b == w) continue;
    if (repair.adjacent(v, a) || repair.adjacent(w, b)) continue;
    repair.remove(i);
    repair.add(v, a);
    repair.add(w, b);
    --residual[v];
    --residual[w];
    ++result.repairs;
  }
  return result;
}

}  // namespace sfc::detail
