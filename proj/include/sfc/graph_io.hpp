#pragma once

#include <filesystem>
#include <iosfwd>
#include <variant>

#include "sfc/clustering.hpp"
#include "sfc/graph.hpp"

namespace sfc {

using AnyGraph = std::variant<SimpleGraph, MultiGraph>;

// Edge-list format:
//   # n=<N> multigraph=<0|1>      optional header
//   u v                           simple body line
//   u v m                         multigraph body line, m >= 1
// Vertices are 0-indexed. Without a header, n is one past the largest id
// and the file is a multigraph iff some line carries a multiplicity.

AnyGraph read_graph(std::istream& in, const std::string& source = "<stream>");
AnyGraph load_graph(const std::filesystem::path& path);

/// Writes the header and each edge once with u < v, sorted.
void write_graph(std::ostream& out, const SimpleGraph& g);
void write_graph(std::ostream& out, const MultiGraph& g);
void save_graph(const SimpleGraph& g, const std::filesystem::path& path);
void save_graph(const MultiGraph& g, const std::filesystem::path& path);

/// `n,m,triangles,wedges,c1,c2`
void write_clustering_csv_header(std::ostream& out);
void write_clustering_csv_row(std::ostream& out, const ClusteringReport& r);

}  // namespace sfc
