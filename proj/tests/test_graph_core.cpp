#include <doctest.h>

#include <algorithm>
#include <chrono>
#include <random>
#include <sstream>

#include "oracles.hpp"
#include "sfc/clustering.hpp"
#include "sfc/constructors.hpp"
#include "sfc/degree_model.hpp"
#include "sfc/error.hpp"
#include "sfc/graph_io.hpp"

using namespace sfc;

namespace {

SimpleGraph complete(std::size_t n) {
  std::vector<Edge> e;
  for (Vertex i = 0; i < n; ++i)
    for (Vertex j = i + 1; j < n; ++j) e.push_back({i, j});
  return SimpleGraph::from_edges(n, e);
}

SimpleGraph star(std::size_t leaves) {
  std::vector<Edge> e;
  for (Vertex i = 1; i <= leaves; ++i) e.push_back({0, i});
  return SimpleGraph::from_edges(leaves + 1, e);
}

SimpleGraph path(std::size_t n) {
  std::vector<Edge> e;
  for (Vertex i = 0; i + 1 < n; ++i) e.push_back({i, i + 1});
  return SimpleGraph::from_edges(n, e);
}

// Triangle a,b,c = 0,1,2 plus pendant d = 3 on c.
SimpleGraph paw() {
  const std::vector<Edge> e = {{0, 1}, {1, 2}, {0, 2}, {2, 3}};
  return SimpleGraph::from_edges(4, e);
}

oracle::Def oracle_def(TripletValueDef d) {
  switch (d) {
    case TripletValueDef::Arithmetic: return oracle::Def::Arithmetic;
    case TripletValueDef::Geometric: return oracle::Def::Geometric;
    case TripletValueDef::Minimum: return oracle::Def::Minimum;
    case TripletValueDef::Maximum: return oracle::Def::Maximum;
    case TripletValueDef::Product: return oracle::Def::Product;
  }
  return oracle::Def::Product;
}

void check_against_oracle(const MultiGraph& g) {
  const auto a = oracle::adjacency(g);
  for (const auto def : kAllTripletDefs) {
    const auto got = weighted_triplet_totals(g, def);
    const auto want = oracle::weighted_totals(a, oracle_def(def));
    if (def == TripletValueDef::Geometric) {
      CHECK(got.closed == doctest::Approx(static_cast<double>(want.closed_geom)).epsilon(1e-12));
      CHECK(got.total == doctest::Approx(static_cast<double>(want.total_geom)).epsilon(1e-12));
      continue;
    }
    // Exact: doubled values are integers well inside the double mantissa.
    CHECK(got.closed * 2 == static_cast<double>(want.closed2));
    CHECK(got.total * 2 == static_cast<double>(want.total2));
    const double ratio = want.total2 == 0 ? 0.0
                                          : static_cast<double>(want.closed2) /
                                                static_cast<double>(want.total2);
    CHECK(weighted_global_clustering(g, def) == ratio);
  }
}

}  // namespace

TEST_CASE("triangle and wedge counts on named graphs") {
  CHECK(triangle_count(complete(4)) == 4);
  CHECK(wedge_count(complete(4)) == 12);
  CHECK(triangle_count(path(4)) == 0);
  CHECK(wedge_count(star(5)) == 10);
  CHECK(triangle_count(paw()) == 1);
  CHECK(wedge_count(paw()) == 5);
  CHECK(triangle_count(paw()) == oracle::triangles(oracle::adjacency(paw())));
  CHECK(wedge_count(paw()) == oracle::wedges(oracle::adjacency(paw())));
}

TEST_CASE("clustering coefficients on named graphs") {
  for (std::size_t n = 3; n <= 10; ++n) {
    CHECK(global_clustering(complete(n)) == 1.0);
    CHECK(average_local_clustering(complete(n)) == 1.0);
  }
  CHECK(global_clustering(star(5)) == 0.0);
  CHECK(average_local_clustering(path(3)) == 0.0);
  CHECK(global_clustering(paw()) == doctest::Approx(0.6));
  CHECK(average_local_clustering(paw()) == doctest::Approx(7.0 / 12.0));
  CHECK(average_local_clustering(paw()) ==
        doctest::Approx(oracle::average_local(oracle::adjacency(paw()))));
  CHECK(global_clustering(SimpleGraph::from_edges(2, std::vector<Edge>{{0, 1}})) == 0.0);

  const auto r = clustering_report(paw());
  CHECK(r.n == 4);
  CHECK(r.m == 4);
  CHECK(r.triangles == 1);
  CHECK(r.wedges == 5);
  const auto local = local_triangle_counts(paw());
  CHECK(local == std::vector<Count>{1, 1, 1, 0});
}

TEST_CASE("counts and coefficients match brute force on 500 random graphs") {
  std::mt19937_64 rng(17);
  std::uniform_real_distribution<double> density(0.0, 1.0);
  for (int i = 0; i < 500; ++i) {
    const std::size_t n = 1 + i % 8;
    const auto g = oracle::random_simple(rng, n, density(rng));
    const auto a = oracle::adjacency(g);
    const auto t = oracle::triangles(a);
    const auto w = oracle::wedges(a);
    REQUIRE(triangle_count(g) == t);
    REQUIRE(wedge_count(g) == w);
    CHECK(3 * triangle_count(g) <= wedge_count(g));
    CHECK(global_clustering(g) == (w == 0 ? 0.0 : 3.0 * static_cast<double>(t) /
                                                      static_cast<double>(w)));
    CHECK(average_local_clustering(g) == doctest::Approx(oracle::average_local(a)).epsilon(1e-12));
    Count via_callback = 0;
    for_each_triangle(g, [&](Vertex x, Vertex y, Vertex z) {
      CHECK((g.adjacent(x, y) && g.adjacent(y, z) && g.adjacent(x, z)));
      ++via_callback;
    });
    CHECK(via_callback == t);
  }
}

TEST_CASE("weighted clustering matches the triplet oracle on 200 random multigraphs") {
  std::mt19937_64 rng(23);
  std::uniform_real_distribution<double> density(0.1, 1.0);
  for (int i = 0; i < 200; ++i) {
    const std::size_t n = 1 + i % 8;
    check_against_oracle(oracle::random_multi(rng, n, density(rng), 5));
  }
}

TEST_CASE("weighted clustering collapses to C1 at unit multiplicity") {
  std::mt19937_64 rng(29);
  std::uniform_real_distribution<double> density(0.0, 1.0);
  for (int i = 0; i < 1000; ++i) {
    const auto g = oracle::random_simple(rng, 2 + i % 12, density(rng));
    const auto m = MultiGraph::from_simple(g);
    for (const auto def : kAllTripletDefs) {
      CHECK(std::abs(weighted_global_clustering(m, def) - global_clustering(g)) <= 1e-12);
    }
  }
  const auto tri = MultiGraph::from_simple(complete(3));
  for (const auto def : kAllTripletDefs) CHECK(weighted_global_clustering(tri, def) == 1.0);
}

TEST_CASE("triangle plus weighted pendant") {
  const std::vector<WeightedEdge> e = {{0, 1, 1}, {1, 2, 1}, {0, 2, 1}, {2, 3, 2}};
  const auto g = MultiGraph::from_edges(4, e);
  CHECK(weighted_global_clustering(g, TripletValueDef::Product) == doctest::Approx(3.0 / 7.0));
  CHECK(weighted_global_clustering(g, TripletValueDef::Arithmetic) == doctest::Approx(0.5));
  check_against_oracle(g);
}

TEST_CASE("product triplet value at a vertex equals (d^2 - q) / 2") {
  std::mt19937_64 rng(31);
  for (int i = 0; i < 200; ++i) {
    const auto g = oracle::random_multi(rng, 2 + i % 9, 0.6, 6);
    const auto local = local_triplet_totals(g, TripletValueDef::Product);
    REQUIRE(local.size() == g.num_vertices());
    for (Vertex v = 0; v < g.num_vertices(); ++v) {
      Count d = 0, q = 0;
      for (const Count m : g.multiplicities(v)) {
        d += m;
        q += m * m;
      }
      CHECK(local[v].total * 2 == static_cast<double>(d * d - q));
    }
  }
}

TEST_CASE("triplet value definitions") {
  CHECK(triplet_value(TripletValueDef::Arithmetic, 1, 2) == 1.5);
  CHECK(triplet_value(TripletValueDef::Geometric, 2, 8) == 4.0);
  CHECK(triplet_value(TripletValueDef::Minimum, 3, 5) == 3.0);
  CHECK(triplet_value(TripletValueDef::Maximum, 3, 5) == 5.0);
  CHECK(triplet_value(TripletValueDef::Product, 3, 5) == 15.0);
  for (const auto def : kAllTripletDefs) CHECK(parse_triplet_def(to_string(def)) == def);
  CHECK(parse_triplet_def("arith") == TripletValueDef::Arithmetic);
  CHECK(parse_triplet_def("prod") == TripletValueDef::Product);
  CHECK_FALSE(parse_triplet_def("median").has_value());
}

TEST_CASE("graph construction rejects loops and duplicates") {
  try {
    SimpleGraph::from_edges(2, std::vector<Edge>{{1, 1}});
    FAIL("loop accepted");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::LoopRejected);
  }
  CHECK_THROWS_AS(SimpleGraph::from_edges(2, std::vector<Edge>{{0, 1}, {1, 0}}), Error);
  CHECK_THROWS_AS(SimpleGraph::from_edges(2, std::vector<Edge>{{0, 2}}), Error);

  const auto m = MultiGraph::from_edges(2, std::vector<WeightedEdge>{{0, 1, 2}, {1, 0, 1}});
  CHECK(m.multiplicity(0, 1) == 3);
  CHECK(m.num_pairs() == 1);
  CHECK(m.num_edges() == 3);
  CHECK(m.support().num_edges() == 1);
}

TEST_CASE("degree sequences of graphs") {
  CHECK(degree_sequence_of(complete(4)).degrees == std::vector<Degree>{3, 3, 3, 3});
  const auto triple = MultiGraph::from_edges(2, std::vector<WeightedEdge>{{0, 1, 3}});
  CHECK(degree_sequence_of(triple).degrees == std::vector<Degree>{3, 3});
  auto d = degree_sequence_of(paw()).degrees;
  std::sort(d.begin(), d.end(), std::greater<>());
  CHECK(d == std::vector<Degree>{3, 2, 2, 1});
}

TEST_CASE("edge-list files") {
  std::istringstream tri("0 1\n1 2\n0 2\n");
  const auto g = read_graph(tri);
  REQUIRE(std::holds_alternative<SimpleGraph>(g));
  CHECK(triangle_count(std::get<SimpleGraph>(g)) == 1);

  std::istringstream loop("0 0\n");
  try {
    read_graph(loop);
    FAIL("loop accepted");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::LoopRejected);
  }

  std::istringstream bad("0 1\nfoo bar\n");
  CHECK_THROWS_AS(read_graph(bad), Error);

  std::istringstream weighted("0 1 2\n1 2\n");
  const auto w = read_graph(weighted);
  REQUIRE(std::holds_alternative<MultiGraph>(w));
  CHECK(std::get<MultiGraph>(w).multiplicity(0, 1) == 2);
  CHECK(std::get<MultiGraph>(w).multiplicity(1, 2) == 1);

  // Header fixes n even when high ids are isolated.
  std::istringstream header("# n=6 multigraph=0\n0 1\n");
  CHECK(std::get<SimpleGraph>(read_graph(header)).num_vertices() == 6);
}

TEST_CASE("write then read reproduces the graph") {
  std::mt19937_64 rng(37);
  for (int i = 0; i < 50; ++i) {
    const auto g = oracle::random_simple(rng, 3 + i % 20, 0.3);
    std::stringstream buf;
    write_graph(buf, g);
    CHECK(std::get<SimpleGraph>(read_graph(buf)) == g);

    const auto m = oracle::random_multi(rng, 3 + i % 20, 0.3, 4);
    std::stringstream mbuf;
    write_graph(mbuf, m);
    CHECK(std::get<MultiGraph>(read_graph(mbuf)) == m);
  }
}

TEST_CASE("triangle counting on a large clique construction is fast") {
  const auto dist = make_distribution(1.5);
  const auto seq = sample_degrees(dist, 1'000'000, 3);
  const auto plan = plan_clique_construction(seq, 1.5, kDefaultDelta);
  const auto built = build_max_clustering_simple(seq, plan);
  const auto start = std::chrono::steady_clock::now();
  const auto t = triangle_count(built.graph);
  const double seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  MESSAGE("triangles=" << t << " in " << seconds << " s");
  CHECK(seconds < 60.0);
}
