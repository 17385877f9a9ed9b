#include <doctest.h>

#include <sys/wait.h>

#include <array>
#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "sfc/clustering.hpp"
#include "sfc/degree_model.hpp"
#include "sfc/graph_io.hpp"

namespace fs = std::filesystem;

namespace {

struct Outcome {
  int code = -1;
  std::string out;
};

Outcome run(const std::string& args) {
  const std::string cmd = std::string(SFC_BINARY) + " " + args + " 2>&1";
  Outcome r;
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  std::array<char, 4096> buf{};
  std::size_t got = 0;
  while ((got = fread(buf.data(), 1, buf.size(), pipe)) > 0) r.out.append(buf.data(), got);
  const int status = pclose(pipe);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  std::stringstream s;
  s << in.rdbuf();
  return s.str();
}

struct TempDir {
  fs::path path;
  TempDir() {
    path = fs::temp_directory_path() /
           ("sfc_cli_" + std::to_string(std::chrono::steady_clock::now().time_since_epoch().count()));
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
  std::string operator/(const std::string& name) const { return (path / name).string(); }
};

void write_file(const std::string& path, const std::string& text) {
  std::ofstream(path) << text;
}

}  // namespace

TEST_CASE("sample") {
  TempDir dir;
  const auto r = run("sample --gamma 1.5 --n 10 --seed 7 --out " + dir / "d.txt");
  CHECK(r.code == 0);
  const auto seq = sfc::load_degrees(dir / "d.txt");
  CHECK(seq.size() == 10);
  CHECK(seq.sum() % 2 == 0);

  run("sample --gamma 1.5 --n 10 --seed 7 --out " + dir / "e.txt");
  CHECK(slurp(dir / "d.txt") == slurp(dir / "e.txt"));

  const auto bad = run("sample --gamma 0.5 --n 10 --seed 7 --out " + dir / "f.txt");
  CHECK(bad.code == 1);
  CHECK(bad.out.find("InvalidGamma") != std::string::npos);

  CHECK(run("sample --n 10 --seed 7 --out " + dir / "g.txt").code == 2);
  CHECK(run("frobnicate").code == 2);
}

TEST_CASE("check") {
  TempDir dir;
  write_file(dir / "k4.txt", "3\n3\n3\n3\n");
  write_file(dir / "bad.txt", "3\n3\n1\n1\n");
  write_file(dir / "tri.txt", "2\n2\n2\n");
  CHECK(run("check --degrees " + dir / "k4.txt").out == "graphical\n");
  CHECK(run("check --degrees " + dir / "bad.txt").out == "not-graphical k=2\n");
  CHECK(run("check --degrees " + dir / "tri.txt" + " --clique-size 3").out == "graphical\n");
}

TEST_CASE("realize and construct") {
  TempDir dir;
  write_file(dir / "k4.txt", "3\n3\n3\n3\n");
  CHECK(run("realize --degrees " + dir / "k4.txt" + " --method havel-hakimi --out " + dir / "k4.el")
            .code == 0);
  const auto k4 = std::get<sfc::SimpleGraph>(sfc::load_graph(dir / "k4.el"));
  CHECK(k4.num_edges() == 6);

  write_file(dir / "tiny.txt", "2\n2\n2\n");
  const auto missed = run("construct --degrees " + dir / "tiny.txt" +
                          " --method multigraph --gamma 1.5 --out " + dir / "m.el");
  CHECK(missed.code == 1);
  CHECK(missed.out.find("WindowMissed") != std::string::npos);

  run("sample --gamma 1.5 --n 16384 --seed 3 --out " + dir / "big.txt");
  const auto built = run("construct --degrees " + dir / "big.txt" +
                         " --method clique --gamma 1.5 --out " + dir / "big.el");
  REQUIRE(built.code == 0);
  const auto g = std::get<sfc::SimpleGraph>(sfc::load_graph(dir / "big.el"));
  CHECK(sfc::degree_sequence_of(g).degrees == sfc::load_degrees(dir / "big.txt").degrees);

  // The clustering subcommand agrees with in-process measurement.
  const auto report = sfc::clustering_report(g);
  std::ostringstream expected;
  sfc::write_clustering_csv_header(expected);
  sfc::write_clustering_csv_row(expected, report);
  CHECK(run("clustering --graph " + dir / "big.el").out == expected.str());

  CHECK(run("construct --degrees " + dir / "big.txt" + " --method clique --out " + dir / "x.el")
            .code == 2);
  CHECK(run("construct --degrees " + dir / "big.txt" + " --method bogus --out " + dir / "x.el")
            .code == 2);
}

TEST_CASE("clustering") {
  TempDir dir;
  write_file(dir / "k4.el", "0 1\n0 2\n0 3\n1 2\n1 3\n2 3\n");
  CHECK(run("clustering --graph " + dir / "k4.el").out == "n,m,triangles,wedges,c1,c2\n4,6,4,12,1,1\n");
  write_file(dir / "paw.el", "0 1\n1 2\n0 2\n2 3\n");
  CHECK(run("clustering --graph " + dir / "paw.el").out.find(",0.6,") != std::string::npos);
  write_file(dir / "pend.el", "0 1 1\n1 2 1\n0 2 1\n2 3 2\n");
  const auto r = run("clustering --graph " + dir / "pend.el" + " --weighted product,arithmetic");
  CHECK(r.out.find("c1w_product,c1w_arithmetic") != std::string::npos);
  CHECK(r.out.find("0.4285714286,0.5") != std::string::npos);
  write_file(dir / "loop.el", "0 0\n");
  const auto loop = run("clustering --graph " + dir / "loop.el");
  CHECK(loop.code == 1);
  CHECK(loop.out.find("LoopRejected") != std::string::npos);
}

TEST_CASE("predict") {
  const auto r = run("predict --gamma 1.5");
  CHECK(r.code == 0);
  CHECK(r.out.find("c1_exponent=-0.133333") != std::string::npos);
  CHECK(r.out.find("multigraph_constant=0.142857") != std::string::npos);
  CHECK(run("predict --gamma 2.5").code == 1);
}

TEST_CASE("experiment smoke run") {
  TempDir dir;
  write_file(dir / "c.cfg", "gamma = 1.5\nn = 256,512\nseeds = 2\nconstruction = clique_simple\n");
  const auto start = std::chrono::steady_clock::now();
  const auto r = run("experiment --config " + dir / "c.cfg" + " --out " + dir / "r.csv");
  const double seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  CHECK(r.code == 0);
  CHECK(seconds < 5.0);
  std::istringstream csv(slurp(dir / "r.csv"));
  std::string line;
  int lines = 0;
  std::getline(csv, line);
  CHECK(line ==
        "gamma,n,seed,construction,triangles,wedges,c1,c2,c1w_arith,c1w_geom,c1w_min,c1w_max,"
        "c1w_prod,xi_max,retries,elapsed_ms,status");
  while (std::getline(csv, line)) ++lines;
  CHECK(lines == 4);
  CHECK(fs::exists(dir / "r.csv.report.csv"));

  run("experiment --config " + dir / "c.cfg" + " --out " + dir / "s.csv --threads 3");
  CHECK(slurp(dir / "r.csv") == slurp(dir / "s.csv"));

  write_file(dir / "bad.cfg", "gamma = 1.5\nn = 256\nflavour = mint\n");
  const auto bad = run("experiment --config " + dir / "bad.cfg" + " --out " + dir / "t.csv");
  CHECK(bad.code == 1);
  CHECK(bad.out.find("ConfigError") != std::string::npos);
}
