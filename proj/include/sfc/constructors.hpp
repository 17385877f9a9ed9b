#pragma once

#include <cstdint>
#include <vector>

#include "sfc/degree_model.hpp"
#include "sfc/graph.hpp"

namespace sfc {

inline constexpr double kDefaultEps = 0.05;
inline constexpr double kDefaultDelta = 0.05;

// --- clique construction for simple graphs --------------------------------

struct CliqueConstructionPlan {
  double threshold = 0.0;               ///< n^(1/(gamma+1) + delta)
  double delta = 0.0;
  std::vector<Vertex> clique_vertices;  ///< ids with degree > threshold, ascending
};

/// Selects the vertices above n^(1/(gamma+1)+delta) and checks that a clique
/// on them is degree-feasible (CliqueInfeasible) and that the collapsed
/// residual passes clique_collapsed_feasibility (ResidualNotGraphical).
/// With an empty clique the residual check is plain Erdos-Gallai.
CliqueConstructionPlan plan_clique_construction(const DegreeSequence& seq,
                                                double gamma, double delta);

struct SimpleConstruction {
  SimpleGraph graph;
  std::size_t repairs = 0;  ///< edge swaps spent on dead ends
};

/// Complete clique on the planned set, remaining stubs by highest-residual
/// greedy, dead ends repaired by degree-preserving edge swaps (at most 10 m
/// random draws). Degrees match seq exactly. Throws RealizationFailed.
SimpleConstruction build_max_clustering_simple(const DegreeSequence& seq,
                                               const CliqueConstructionPlan& plan);

// --- multigraph with constant clustering ---------------------------------

struct X0Certificate {
  Degree x0 = 0;
  bool lower_ok = false;  ///< (1+eps) n tail(x0) <= x0
  bool upper_ok = false;  ///< x0 <= (1+2 eps) n tail(x0)
  double eps = 0.0;
};

/// Smallest integer x0 with tail(x0)/x0 in [1/((1+2eps) n), 1/((1+eps) n)].
/// tail(x)/x is non-increasing so a bisection suffices. Throws WindowMissed
/// when integer steps jump over the window.
X0Certificate find_x0(const DegreeDistribution& dist, std::size_t n, double eps);

struct MultigraphConstruction {
  MultiGraph graph;
  X0Certificate certificate;
  std::vector<Vertex> clique_vertices;  ///< A_x0: degree > x0, ascending id
  std::size_t escape_edges = 0;         ///< 0 or 1
};

struct MultigraphOptions {
  double eps = kDefaultEps;
  /// Pair the outside vertices by seeded random stub matching instead of
  /// the deterministic max-stub-first rule.
  bool randomize_remainder = false;
  std::uint64_t seed = 0;
};

/// Multi-clique on A_x0 that keeps all of its stubs inside except one escape
/// edge (from the lowest-degree member) when their sum is odd; the other
/// vertices form a loop-free multigraph on their own. Degrees match seq.
/// Throws WindowMissed, CliqueOversized (|A_x0| > x0; retry with a new seed),
/// SaturationInfeasible, OuterInfeasible.
MultigraphConstruction build_constant_clustering_multigraph(
    const DegreeSequence& seq, const DegreeDistribution& dist,
    const MultigraphOptions& options = {});

// --- configuration-model baseline -----------------------------------------

/// The same construction with the threshold given directly: the clique is
/// every vertex of degree > x0. Certificate flags are left false.
/// Throws CliqueInfeasible when a member cannot reach the rest of A.
MultigraphConstruction build_multigraph_above(const DegreeSequence& seq, Degree x0,
                                              const MultigraphOptions& options = {});

enum class BaselineMode { MultigraphNoLoops, ErasedSimple };

struct BaselineConstruction {
  MultiGraph graph;          ///< support() is the simple graph in ErasedSimple mode
  std::size_t redraws = 0;   ///< loop rejections (MultigraphNoLoops)
  std::size_t erased_loops = 0;
  std::size_t erased_multi = 0;
};

/// Uniform random stub pairing. MultigraphNoLoops redraws any partner that
/// would close a loop; ErasedSimple pairs freely, then deletes loops and
/// collapses parallel edges (degrees then only approximate the input).
/// Throws RetriesExhausted.
BaselineConstruction build_stub_matching_baseline(const DegreeSequence& seq,
                                                  std::uint64_t seed, BaselineMode mode);

}  // namespace sfc
