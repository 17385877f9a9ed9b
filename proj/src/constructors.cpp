#include "sfc/constructors.hpp"

#include <algorithm>
#include <cmath>
#include <queue>
#include <random>

#include "residual_realizer.hpp"
#include "sfc/error.hpp"
#include "sfc/realizability.hpp"

namespace sfc {

namespace {

void check_construction_gamma(double gamma) {
  if (!(gamma > 1.0 && gamma < 2.0)) {
    throw Error(ErrorCode::InvalidGamma,
                "constructions need 1 < gamma < 2, got " + std::to_string(gamma));
  }
}

// Pairs stubs of distinct vertices, always joining the two largest residuals
// (lowest id first among ties). Pairs are emitted in batches: the top two
// keep matching until the smaller of them would fall below the third.
// Returns false if a lone vertex is left holding stubs.
bool pair_max_stub_first(std::span<const Vertex> ids, std::vector<Degree> residual,
                         std::vector<WeightedEdge>& out) {
  using Entry = std::pair<Degree, std::int64_t>;  // (residual, -id)
  std::priority_queue<Entry> heap;
  for (std::size_t i = 0; i < ids.size(); ++i) {
    if (residual[i] > 0) heap.push({residual[i], -static_cast<std::int64_t>(ids[i])});
  }
  while (!heap.empty()) {
    const auto [rv, nv] = heap.top();
    heap.pop();
    if (heap.empty()) return false;
    const auto [rw, nw] = heap.top();
    heap.pop();
    const Degree third = heap.empty() ? 0 : heap.top().first;
    const Degree t = std::max<Degree>(1, std::min(rw, rw - third));
    out.push_back({static_cast<Vertex>(-nv), static_cast<Vertex>(-nw), static_cast<Count>(t)});
    if (rv - t > 0) heap.push({rv - t, nv});
    if (rw - t > 0) heap.push({rw - t, nw});
  }
  return true;
}

bool saturable(std::span<const Degree> residual) {
  Degree total = 0, largest = 0;
  for (const Degree r : residual) {
    total += r;
    largest = std::max(largest, r);
  }
  return total % 2 == 0 && largest <= total - largest;
}

// Uniform stub matching that redraws partners closing a loop. When only one
// vertex still holds stubs, pairs of them are spliced into random existing
// edges a-b -> v-a, v-b.
std::vector<WeightedEdge> match_without_loops(std::span<const Vertex> ids,
                                              std::span<const Degree> residual,
                                              std::mt19937_64& rng,
                                              std::size_t& redraws) {
  constexpr int kRedraws = 64;
  std::vector<Vertex> stubs;
  for (std::size_t i = 0; i < ids.size(); ++i) {
    stubs.insert(stubs.end(), static_cast<std::size_t>(residual[i]), ids[i]);
  }
  std::vector<WeightedEdge> edges;
  edges.reserve(stubs.size() / 2);
  while (!stubs.empty()) {
    const Vertex s = stubs.back();
    stubs.pop_back();
    if (stubs.empty()) {
      throw Error(ErrorCode::RetriesExhausted, "odd number of stubs");
    }
    std::uniform_int_distribution<std::size_t> pick(0, stubs.size() - 1);
    std::size_t j = pick(rng);
    for (int attempt = 0; attempt < kRedraws && stubs[j] == s; ++attempt) {
      ++redraws;
      j = pick(rng);
    }
    if (stubs[j] == s) {
      const auto other = std::find_if(stubs.begin(), stubs.end(),
                                      [s](Vertex x) { return x != s; });
      if (other == stubs.end()) {
        // Only s remains: splice its stubs into existing edges.
        stubs.push_back(s);
        std::size_t splices = 0;
        const std::size_t budget = 10 * std::max<std::size_t>(edges.size(), 1);
        while (stubs.size() >= 2) {
          if (edges.empty() || ++splices > budget) {
            throw Error(ErrorCode::RetriesExhausted,
                        "cannot place remaining stubs of vertex " + std::to_string(s));
          }
          std::uniform_int_distribution<std::size_t> pick_edge(0, edges.size() - 1);
          const std::size_t e = pick_edge(rng);
          if (edges[e].u == s || edges[e].v == s) continue;
          const WeightedEdge old = edges[e];
          edges[e] = {s, old.u, 1};
          edges.push_back({s, old.v, 1});
          stubs.resize(stubs.size() - 2);
          ++redraws;
        }
        if (!stubs.empty()) {
          throw Error(ErrorCode::RetriesExhausted, "odd number of stubs");
        }
        break;
      }
      j = static_cast<std::size_t>(other - stubs.begin());
    }
    edges.push_back({s, stubs[j], 1});
    stubs[j] = stubs.back();
    stubs.pop_back();
  }
  return edges;
}

}  // namespace

CliqueConstructionPlan plan_clique_construction(const DegreeSequence& seq,
                                                double gamma, double delta) {
  check_construction_gamma(gamma);
  if (!(delta > 0.0)) {
    throw Error(ErrorCode::ConfigError, "delta must be positive");
  }
  CliqueConstructionPlan plan;
  plan.delta = delta;
  const double n = static_cast<double>(seq.size());
  plan.threshold = std::pow(n, 1.0 / (gamma + 1.0) + delta);

  Degree min_in_clique = 0;
  for (Vertex v = 0; v < seq.size(); ++v) {
    if (static_cast<double>(seq.degrees[v]) > plan.threshold) {
      min_in_clique = plan.clique_vertices.empty()
                          ? seq.degrees[v]
                          : std::min(min_in_clique, seq.degrees[v]);
      plan.clique_vertices.push_back(v);
    }
  }
  const auto size = static_cast<Degree>(plan.clique_vertices.size());
  if (size > 0 && size > 1 + min_in_clique) {
    throw Error(ErrorCode::CliqueInfeasible,
                std::to_string(size) + " vertices above the threshold but the smallest has degree " +
                    std::to_string(min_in_clique));
  }

  const auto sorted = sorted_non_increasing(seq.degrees);
  const auto verdict = size == 0 ? erdos_gallai(sorted)
                                 : clique_collapsed_feasibility(sorted, plan.clique_vertices.size());
  if (!verdict.graphical) {
    throw Error(ErrorCode::ResidualNotGraphical,
                verdict.violated_k ? "collapsed sequence fails at k = " + std::to_string(*verdict.violated_k)
                                   : std::string("odd degree sum"));
  }
  return plan;
}

SimpleConstruction build_max_clustering_simple(const DegreeSequence& seq,
                                               const CliqueConstructionPlan& plan) {
  const std::size_t n = seq.size();
  const auto& clique = plan.clique_vertices;
  std::vector<bool> in_clique(n, false);
  std::vector<Degree> residual = seq.degrees;
  std::vector<Edge> fixed;
  fixed.reserve(clique.size() * (clique.size() - (clique.empty() ? 0 : 1)) / 2);
  const auto reach = static_cast<Degree>(clique.empty() ? 0 : clique.size() - 1);
  for (const Vertex v : clique) {
    if (v >= n || seq.degrees[v] < reach) {
      throw Error(ErrorCode::CliqueInfeasible, "plan does not match the degree sequence");
    }
    in_clique[v] = true;
    residual[v] -= reach;
  }
  for (std::size_t i = 0; i < clique.size(); ++i) {
    for (std::size_t j = i + 1; j < clique.size(); ++j) fixed.push_back({clique[i], clique[j]});
  }

  const std::uint64_t repair_seed = seq.seed ^ 0x9e3779b97f4a7c15ull;
  auto realized = detail::realize_residual(std::move(residual), in_clique, std::move(fixed),
                                           repair_seed);
  return {SimpleGraph::from_edges(n, realized.edges), realized.repairs};
}

X0Certificate find_x0(const DegreeDistribution& dist, std::size_t n, double eps) {
  if (!(eps > 0.0)) throw Error(ErrorCode::ConfigError, "eps must be positive");
  if (n == 0) throw Error(ErrorCode::WindowMissed, "n must be positive");
  const double nn = static_cast<double>(n);
  const double upper_target = 1.0 / ((1.0 + eps) * nn);
  auto f = [&](Degree x) {
    const double xd = static_cast<double>(x);
    return dist.tail(xd) / xd;
  };

  // Smallest x >= 1 with f(x) <= upper_target.
  Degree lo = 0;  // f(lo) > target, with f(0) read as +infinity
  Degree hi = 1;
  while (f(hi) > upper_target) {
    if (hi > (Degree{1} << 60)) throw Error(ErrorCode::WindowMissed, "no crossing found");
    lo = hi;
    hi *= 2;
  }
  while (hi - lo > 1) {
    const Degree mid = lo + (hi - lo) / 2;
    if (f(mid) <= upper_target) {
      hi = mid;
    } else {
      lo = mid;
    }
  }

  X0Certificate cert;
  cert.x0 = hi;
  cert.eps = eps;
  const double t = dist.tail(static_cast<double>(hi));
  const double x0 = static_cast<double>(hi);
  cert.lower_ok = (1.0 + eps) * nn * t <= x0;
  cert.upper_ok = x0 <= (1.0 + 2.0 * eps) * nn * t;
  if (!cert.lower_ok || !cert.upper_ok) {
    throw Error(ErrorCode::WindowMissed,
                "integer x0 = " + std::to_string(hi) + " skips the window for n = " +
                    std::to_string(n) + ", eps = " + std::to_string(eps));
  }
  return cert;
}

MultigraphConstruction build_constant_clustering_multigraph(const DegreeSequence& seq,
                                                            const DegreeDistribution& dist,
                                                            const MultigraphOptions& options) {
  const auto certificate = find_x0(dist, seq.size(), options.eps);
  const auto heavy = std::count_if(seq.degrees.begin(), seq.degrees.end(),
                                   [&](Degree d) { return d > certificate.x0; });
  if (heavy > certificate.x0) {
    throw Error(ErrorCode::CliqueOversized,
                std::to_string(heavy) + " vertices above x0 = " + std::to_string(certificate.x0));
  }
  auto result = build_multigraph_above(seq, certificate.x0, options);
  result.certificate = certificate;
  return result;
}

MultigraphConstruction build_multigraph_above(const DegreeSequence& seq, Degree x0,
                                              const MultigraphOptions& options) {
  const std::size_t n = seq.size();
  MultigraphConstruction result;
  result.certificate.x0 = x0;
  result.certificate.eps = options.eps;

  std::vector<Vertex> outside;
  for (Vertex v = 0; v < n; ++v) {
    (seq.degrees[v] > x0 ? result.clique_vertices : outside).push_back(v);
  }
  const auto& clique = result.clique_vertices;
  for (const Vertex v : clique) {
    if (seq.degrees[v] + 1 < static_cast<Degree>(clique.size())) {
      throw Error(ErrorCode::CliqueInfeasible,
                  std::to_string(clique.size()) + " vertices above x0 = " + std::to_string(x0) +
                      " cannot form a clique");
    }
  }

  std::vector<WeightedEdge> edges;
  std::vector<Degree> outer_residual(outside.size());
  for (std::size_t i = 0; i < outside.size(); ++i) outer_residual[i] = seq.degrees[outside[i]];

  if (!clique.empty()) {
    const auto reach = static_cast<Degree>(clique.size() - 1);
    std::vector<Degree> inner(clique.size());
    Degree total = 0;
    for (std::size_t i = 0; i < clique.size(); ++i) {
      inner[i] = seq.degrees[clique[i]] - reach;
      total += seq.degrees[clique[i]];
      for (std::size_t j = i + 1; j < clique.size(); ++j) {
        edges.push_back({clique[i], clique[j], 1});
      }
    }
    if (total % 2 != 0) {
      // One stub of the lowest-degree member escapes to the heaviest outsider.
      std::size_t low = 0;
      for (std::size_t i = 1; i < clique.size(); ++i) {
        if (seq.degrees[clique[i]] < seq.degrees[clique[low]]) low = i;
      }
      std::size_t target = outside.size();
      for (std::size_t i = 0; i < outside.size(); ++i) {
        if (outer_residual[i] > 0 &&
            (target == outside.size() || outer_residual[i] > outer_residual[target])) {
          target = i;
        }
      }
      if (target == outside.size()) {
        throw Error(ErrorCode::OuterInfeasible, "no outside vertex can take the escape edge");
      }
      --inner[low];
      --outer_residual[target];
      edges.push_back({clique[low], outside[target], 1});
      result.escape_edges = 1;
    }
    if (!saturable(inner) || !pair_max_stub_first(clique, inner, edges)) {
      throw Error(ErrorCode::SaturationInfeasible,
                  "largest internal residual exceeds the rest of the clique");
    }
  }

  if (!saturable(outer_residual)) {
    throw Error(ErrorCode::OuterInfeasible,
                "largest outside degree exceeds the sum of the others");
  }
  if (options.randomize_remainder) {
    std::mt19937_64 rng(options.seed);
    std::size_t redraws = 0;
    try {
      auto matched = match_without_loops(outside, outer_residual, rng, redraws);
      edges.insert(edges.end(), matched.begin(), matched.end());
    } catch (const Error& e) {
      throw Error(ErrorCode::OuterInfeasible, e.what());
    }
  } else if (!pair_max_stub_first(outside, outer_residual, edges)) {
    throw Error(ErrorCode::OuterInfeasible, "outside pairing left a lone vertex");
  }

  result.graph = MultiGraph::from_edges(n, edges);
  return result;
}

BaselineConstruction build_stub_matching_baseline(const DegreeSequence& seq,
                                                  std::uint64_t seed, BaselineMode mode) {
  if (seq.sum() % 2 != 0) {
    throw Error(ErrorCode::NotGraphical, "stub matching needs an even degree sum");
  }
  const std::size_t n = seq.size();
  std::mt19937_64 rng(seed);
  BaselineConstruction result;

  if (mode == BaselineMode::MultigraphNoLoops) {
    std::vector<Vertex> ids(n);
    for (Vertex v = 0; v < n; ++v) ids[v] = v;
    auto edges = match_without_loops(ids, seq.degrees, rng, result.redraws);
    result.graph = MultiGraph::from_edges(n, edges);
    return result;
  }

  std::vector<Vertex> stubs;
  stubs.reserve(static_cast<std::size_t>(seq.sum()));
  for (Vertex v = 0; v < n; ++v) {
    stubs.insert(stubs.end(), static_cast<std::size_t>(seq.degrees[v]), v);
  }
  std::shuffle(stubs.begin(), stubs.end(), rng);
  std::vector<WeightedEdge> pairs;
  pairs.reserve(stubs.size() / 2);
  for (std::size_t i = 0; i + 1 < stubs.size(); i += 2) {
    Vertex u = stubs[i], v = stubs[i + 1];
    if (u == v) {
      ++result.erased_loops;
      continue;
    }
    if (u > v) std::swap(u, v);
    pairs.push_back({u, v, 1});
  }
  std::sort(pairs.begin(), pairs.end(), [](const WeightedEdge& a, const WeightedEdge& b) {
    return std::pair(a.u, a.v) < std::pair(b.u, b.v);
  });
  std::vector<WeightedEdge> unique;
  unique.reserve(pairs.size());
  for (const auto& e : pairs) {
    if (!unique.empty() && unique.back().u == e.u && unique.back().v == e.v) {
      ++result.erased_multi;
    } else {
      unique.push_back(e);
    }
  }
  result.graph = MultiGraph::from_edges(n, unique);
  return result;
}

}  // namespace sfc
