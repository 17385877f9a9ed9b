#include "sfc/graph_io.hpp"

#include <algorithm>
#include <charconv>
#include <iterator>
#include <fmt/format.h>
#include <fmt/ostream.h>

#include <fstream>
#include <istream>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "sfc/error.hpp"

namespace sfc {

namespace {

struct RawLine {
  std::uint64_t u, v, m;
  std::size_t lineno;
  bool weighted;
};

[[noreturn]] void parse_fail(const std::string& source, std::size_t lineno,
                             const std::string& msg) {
  throw Error(ErrorCode::ParseError, source + ":" + std::to_string(lineno) + ": " + msg);
}

// Splits on blanks and parses unsigned integers; returns false on garbage.
bool parse_fields(std::string_view line, std::vector<std::uint64_t>& out) {
  out.clear();
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t' || line[i] == '\r')) ++i;
    if (i == line.size()) break;
    std::uint64_t value = 0;
    const auto [ptr, ec] = std::from_chars(line.data() + i, line.data() + line.size(), value);
    if (ec != std::errc{}) return false;
    const auto next = static_cast<std::size_t>(ptr - line.data());
    if (next < line.size() && line[next] != ' ' && line[next] != '\t' && line[next] != '\r') {
      return false;
    }
    out.push_back(value);
    i = next;
  }
  return true;
}

// Parses `# n=<N> multigraph=<0|1>`; anything else starting with '#' is a comment.
bool parse_header(std::string_view line, std::optional<std::size_t>& n,
                  std::optional<bool>& multigraph) {
  const auto npos = line.find("n=");
  const auto mpos = line.find("multigraph=");
  if (npos == std::string_view::npos || mpos == std::string_view::npos) return false;
  std::size_t nv = 0;
  int mv = 0;
  auto r1 = std::from_chars(line.data() + npos + 2, line.data() + line.size(), nv);
  auto r2 = std::from_chars(line.data() + mpos + 11, line.data() + line.size(), mv);
  if (r1.ec != std::errc{} || r2.ec != std::errc{} || (mv != 0 && mv != 1)) return false;
  n = nv;
  multigraph = mv == 1;
  return true;
}

}  // namespace

AnyGraph read_graph(std::istream& in, const std::string& source) {
  std::optional<std::size_t> n;
  std::optional<bool> multigraph;
  std::vector<RawLine> lines;
  std::vector<std::uint64_t> fields;
  std::string line;
  std::size_t lineno = 0;
  bool any_weighted = false;
  std::uint64_t max_id = 0;
  bool any_edge = false;

  while (std::getline(in, line)) {
    ++lineno;
    std::string_view view(line);
    const auto first = view.find_first_not_of(" \t\r");
    if (first == std::string_view::npos) continue;
    view.remove_prefix(first);
    if (view.front() == '#') {
      if (!n && lines.empty() && parse_header(view, n, multigraph)) continue;
      continue;
    }
    if (!parse_fields(view, fields) || fields.size() < 2 || fields.size() > 3) {
      parse_fail(source, lineno, "expected 'u v' or 'u v m'");
    }
    RawLine raw{fields[0], fields[1], fields.size() == 3 ? fields[2] : 1, lineno,
                fields.size() == 3};
    if (raw.u == raw.v) {
      throw Error(ErrorCode::LoopRejected, source + ":" + std::to_string(lineno) +
                                               ": loop at vertex " + std::to_string(raw.u));
    }
    if (raw.m == 0) parse_fail(source, lineno, "multiplicity must be >= 1");
    if (raw.u > 0xFFFFFFFEull || raw.v > 0xFFFFFFFEull) {
      parse_fail(source, lineno, "vertex id out of range");
    }
    if (n && (raw.u >= *n || raw.v >= *n)) {
      parse_fail(source, lineno, "vertex id exceeds header n");
    }
    any_weighted |= raw.weighted;
    max_id = std::max({max_id, raw.u, raw.v});
    any_edge = true;
    lines.push_back(raw);
  }

  const std::size_t nv = n ? *n : (any_edge ? static_cast<std::size_t>(max_id) + 1 : 0);
  const bool multi = multigraph ? *multigraph : any_weighted;

  if (multi) {
    std::vector<WeightedEdge> edges;
    edges.reserve(lines.size());
    for (const auto& l : lines) {
      edges.push_back({static_cast<Vertex>(l.u), static_cast<Vertex>(l.v), l.m});
    }
    return MultiGraph::from_edges(nv, edges);
  }

  std::vector<Edge> edges;
  edges.reserve(lines.size());
  for (const auto& l : lines) {
    if (l.weighted && l.m != 1) {
      parse_fail(source, l.lineno, "multiplicity in a simple graph file");
    }
    edges.push_back({static_cast<Vertex>(l.u), static_cast<Vertex>(l.v)});
  }
  try {
    return SimpleGraph::from_edges(nv, edges);
  } catch (const Error& e) {
    throw Error(e.code(), source + ": " + e.what());
  }
}

AnyGraph load_graph(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::IoError, "cannot open " + path.string());
  return read_graph(in, path.string());
}

void write_graph(std::ostream& out, const SimpleGraph& g) {
  fmt::print(out, "# n={} multigraph=0\n", g.num_vertices());
  std::string buf;
  for (const auto& [u, v] : g.edges()) {
    buf.clear();
    fmt::format_to(std::back_inserter(buf), "{} {}\n", u, v);
    out << buf;
  }
}

void write_graph(std::ostream& out, const MultiGraph& g) {
  fmt::print(out, "# n={} multigraph=1\n", g.num_vertices());
  std::string buf;
  for (const auto& e : g.edges()) {
    buf.clear();
    fmt::format_to(std::back_inserter(buf), "{} {} {}\n", e.u, e.v, e.multiplicity);
    out << buf;
  }
}

namespace {
template <class G>
void save_any(const G& g, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw Error(ErrorCode::IoError, "cannot write " + path.string());
  write_graph(out, g);
  if (!out) throw Error(ErrorCode::IoError, "write failed for " + path.string());
}
}  // namespace

void save_graph(const SimpleGraph& g, const std::filesystem::path& path) { save_any(g, path); }
void save_graph(const MultiGraph& g, const std::filesystem::path& path) { save_any(g, path); }

void write_clustering_csv_header(std::ostream& out) {
  out << "n,m,triangles,wedges,c1,c2\n";
}

void write_clustering_csv_row(std::ostream& out, const ClusteringReport& r) {
  fmt::print(out, "{},{},{},{},{:.10g},{:.10g}\n", r.n, r.m, r.triangles, r.wedges,
             r.global, r.average_local);
}

}  // namespace sfc
