#include "sfc/experiments.hpp"

#include <fmt/format.h>
#include <fmt/ostream.h>

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <condition_variable>
#include <fstream>
#include <map>
#include <mutex>
#include <sstream>
#include <thread>

#include "sfc/error.hpp"

namespace sfc {

namespace {

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

std::vector<std::string> split(std::string_view s, char sep) {
  std::vector<std::string> parts;
  std::size_t start = 0;
  while (true) {
    const auto pos = s.find(sep, start);
    parts.push_back(trim(s.substr(start, pos == std::string_view::npos ? pos : pos - start)));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return parts;
}

[[noreturn]] void config_fail(std::size_t lineno, const std::string& msg) {
  throw Error(ErrorCode::ConfigError, "config line " + std::to_string(lineno) + ": " + msg);
}

template <class T>
T parse_number(const std::string& text, std::size_t lineno) {
  std::istringstream in(text);
  T value{};
  if (!(in >> value) || !(in >> std::ws).eof()) {
    config_fail(lineno, "bad number '" + text + "'");
  }
  return value;
}

std::vector<std::size_t> parse_n_grid(const std::string& text, std::size_t lineno) {
  std::vector<std::size_t> ns;
  if (text.find(':') != std::string::npos) {
    const auto parts = split(text, ':');
    if (parts.size() != 3 || parts[2].empty() || parts[2][0] != 'x') {
      config_fail(lineno, "expected n = lo:hi:xK");
    }
    const auto lo = parse_number<std::size_t>(parts[0], lineno);
    const auto hi = parse_number<std::size_t>(parts[1], lineno);
    const auto factor = parse_number<double>(parts[2].substr(1), lineno);
    if (lo == 0 || !(factor > 1.0)) config_fail(lineno, "grid needs lo >= 1 and factor > 1");
    for (double v = static_cast<double>(lo); v <= static_cast<double>(hi) * (1 + 1e-12); v *= factor) {
      const auto n = static_cast<std::size_t>(std::llround(v));
      if (ns.empty() || n > ns.back()) ns.push_back(n);
    }
  } else {
    for (const auto& p : split(text, ',')) ns.push_back(parse_number<std::size_t>(p, lineno));
  }
  return ns;
}

bool retryable(ErrorCode code) {
  switch (code) {
    case ErrorCode::CliqueInfeasible:
    case ErrorCode::ResidualNotGraphical:
    case ErrorCode::RealizationFailed:
    case ErrorCode::CliqueOversized:
    case ErrorCode::SaturationInfeasible:
    case ErrorCode::OuterInfeasible:
    case ErrorCode::RetriesExhausted:
      return true;
    default:
      return false;
  }
}

std::uint64_t splitmix64(std::uint64_t x) noexcept {
  x += 0x9e3779b97f4a7c15ull;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
  return x ^ (x >> 31);
}

void fill_weighted(ExperimentRow& row, const MultiGraph& g,
                   const std::vector<TripletValueDef>& defs) {
  for (std::size_t i = 0; i < kAllTripletDefs.size(); ++i) {
    if (std::find(defs.begin(), defs.end(), kAllTripletDefs[i]) != defs.end()) {
      row.weighted[i] = weighted_global_clustering(g, kAllTripletDefs[i]);
    }
  }
}

void fill_unweighted(ExperimentRow& row, const SimpleGraph& g) {
  const auto report = clustering_report(g);
  row.triangles = report.triangles;
  row.wedges = report.wedges;
  row.c1 = report.global;
  row.c2 = report.average_local;
}

void measure(ExperimentRow& row, const ExperimentConfig& config, const DegreeSequence& seq,
             const DegreeDistribution& dist) {
  switch (config.construction) {
    case Construction::CliqueSimple: {
      const auto plan = plan_clique_construction(seq, dist.gamma(), config.delta);
      const auto built = build_max_clustering_simple(seq, plan);
      fill_unweighted(row, built.graph);
      if (!config.weighted_defs.empty()) {
        fill_weighted(row, MultiGraph::from_simple(built.graph), config.weighted_defs);
      }
      break;
    }
    case Construction::Multigraph: {
      MultigraphOptions options;
      options.eps = config.eps;
      const auto built = build_constant_clustering_multigraph(seq, dist, options);
      fill_unweighted(row, built.graph.support());
      fill_weighted(row, built.graph, config.weighted_defs);
      break;
    }
    case Construction::BaselineErased:
    case Construction::BaselineMultigraph: {
      const auto mode = config.construction == Construction::BaselineErased
                            ? BaselineMode::ErasedSimple
                            : BaselineMode::MultigraphNoLoops;
      const auto built = build_stub_matching_baseline(seq, splitmix64(seq.seed), mode);
      fill_unweighted(row, built.graph.support());
      fill_weighted(row, built.graph, config.weighted_defs);
      break;
    }
  }
}

std::string format_optional(const std::optional<double>& v) {
  return v ? fmt::format("{:.10g}", *v) : std::string();
}

std::string_view short_name(TripletValueDef def) {
  switch (def) {
    case TripletValueDef::Arithmetic: return "arith";
    case TripletValueDef::Geometric: return "geom";
    case TripletValueDef::Minimum: return "min";
    case TripletValueDef::Maximum: return "max";
    case TripletValueDef::Product: return "prod";
  }
  return "?";
}

}  // namespace

std::string_view to_string(Construction c) noexcept {
  switch (c) {
    case Construction::CliqueSimple: return "clique_simple";
    case Construction::Multigraph: return "multigraph";
    case Construction::BaselineErased: return "baseline_erased";
    case Construction::BaselineMultigraph: return "baseline_multigraph";
  }
  return "?";
}

std::optional<Construction> parse_construction(std::string_view text) noexcept {
  for (const auto c : {Construction::CliqueSimple, Construction::Multigraph,
                       Construction::BaselineErased, Construction::BaselineMultigraph}) {
    if (text == to_string(c)) return c;
  }
  return std::nullopt;
}

ExperimentConfig parse_config(std::istream& in) {
  ExperimentConfig config;
  std::string line;
  std::size_t lineno = 0;
  bool have_gamma = false, have_n = false;
  while (std::getline(in, line)) {
    ++lineno;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    const std::string body = trim(line);
    if (body.empty()) continue;
    const auto eq = body.find('=');
    if (eq == std::string::npos) config_fail(lineno, "expected key = value");
    const std::string key = trim(std::string_view(body).substr(0, eq));
    const std::string value = trim(std::string_view(body).substr(eq + 1));

    if (key == "gamma") {
      config.gammas.clear();
      for (const auto& g : split(value, ',')) config.gammas.push_back(parse_number<double>(g, lineno));
      have_gamma = true;
    } else if (key == "n") {
      config.ns = parse_n_grid(value, lineno);
      have_n = true;
    } else if (key == "seeds") {
      config.seeds_per_point = parse_number<std::size_t>(value, lineno);
    } else if (key == "construction") {
      const auto c = parse_construction(value);
      if (!c) config_fail(lineno, "unknown construction '" + value + "'");
      config.construction = *c;
    } else if (key == "eps") {
      config.eps = parse_number<double>(value, lineno);
    } else if (key == "delta") {
      config.delta = parse_number<double>(value, lineno);
    } else if (key == "weighted") {
      config.weighted_defs.clear();
      for (const auto& d : split(value, ',')) {
        if (d.empty()) continue;
        const auto def = parse_triplet_def(d);
        if (!def) config_fail(lineno, "unknown triplet definition '" + d + "'");
        config.weighted_defs.push_back(*def);
      }
    } else if (key == "master_seed") {
      config.master_seed = parse_number<std::uint64_t>(value, lineno);
    } else if (key == "L") {
      try {
        config.L = parse_slowly_varying(value);
      } catch (const Error& e) {
        config_fail(lineno, e.what());
      }
    } else if (key == "min_degree") {
      config.min_degree = parse_number<Degree>(value, lineno);
    } else if (key == "threads") {
      config.threads = parse_number<std::size_t>(value, lineno);
    } else if (key == "max_retries") {
      config.max_retries = parse_number<std::size_t>(value, lineno);
    } else if (key == "record_timing") {
      if (value != "true" && value != "false") config_fail(lineno, "record_timing is true|false");
      config.record_timing = value == "true";
    } else {
      config_fail(lineno, "unknown key '" + key + "'");
    }
  }
  if (!have_gamma || config.gammas.empty()) config_fail(lineno, "missing gamma");
  if (!have_n || config.ns.empty()) config_fail(lineno, "missing n");
  for (std::size_t i = 0; i < config.ns.size(); ++i) {
    if (config.ns[i] == 0 || (i > 0 && config.ns[i] <= config.ns[i - 1])) {
      config_fail(lineno, "n values must be positive and strictly increasing");
    }
  }
  if (config.seeds_per_point == 0) config_fail(lineno, "seeds must be >= 1");
  if (config.threads == 0) config.threads = 1;
  return config;
}

ExperimentConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::IoError, "cannot open " + path);
  return parse_config(in);
}

std::uint64_t trial_seed(std::uint64_t master_seed, std::size_t gamma_index,
                         std::size_t n_index, std::size_t seed_index,
                         std::size_t attempt) noexcept {
  std::uint64_t h = splitmix64(master_seed);
  h = splitmix64(h ^ gamma_index);
  h = splitmix64(h ^ n_index);
  h = splitmix64(h ^ seed_index);
  return attempt == 0 ? h : splitmix64(h ^ attempt);
}

ExperimentRow run_trial(const ExperimentConfig& config, std::size_t gamma_index,
                        std::size_t n_index, std::size_t seed_index) {
  ExperimentRow row;
  row.gamma = config.gammas.at(gamma_index);
  row.n = config.ns.at(n_index);
  row.seed_index = seed_index;
  row.construction = config.construction;
  const auto start = std::chrono::steady_clock::now();

  try {
    const auto dist = make_distribution(row.gamma, config.L, config.min_degree);
    for (std::size_t attempt = 0;; ++attempt) {
      row.seed = trial_seed(config.master_seed, gamma_index, n_index, seed_index, attempt);
      const auto seq = sample_degrees(dist, row.n, row.seed);
      row.xi_max = max_degree(seq.degrees);
      try {
        measure(row, config, seq, dist);
        row.status = "ok";
        break;
      } catch (const Error& e) {
        row.status = std::string(e.name());
        if (!retryable(e.code()) || attempt >= config.max_retries) break;
        ++row.retries;
      }
    }
  } catch (const Error& e) {
    row.status = std::string(e.name());
  }

  if (config.record_timing) {
    row.elapsed_ms = static_cast<std::uint64_t>(
        std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - start)
            .count());
  }
  return row;
}

ExperimentResult run_experiment(const ExperimentConfig& config, const RowSink& sink) {
  struct Task {
    std::size_t g, n, s;
  };
  std::vector<Task> tasks;
  for (std::size_t g = 0; g < config.gammas.size(); ++g) {
    for (std::size_t n = 0; n < config.ns.size(); ++n) {
      for (std::size_t s = 0; s < config.seeds_per_point; ++s) tasks.push_back({g, n, s});
    }
  }

  std::vector<std::optional<ExperimentRow>> slots(tasks.size());
  std::atomic<std::size_t> next{0};
  std::mutex mutex;
  std::size_t emitted = 0;
  std::exception_ptr failure;

  auto worker = [&] {
    while (true) {
      const std::size_t i = next.fetch_add(1);
      if (i >= tasks.size()) return;
      try {
        auto row = run_trial(config, tasks[i].g, tasks[i].n, tasks[i].s);
        std::lock_guard lock(mutex);
        slots[i] = std::move(row);
        while (emitted < slots.size() && slots[emitted]) {
          if (sink) sink(*slots[emitted]);
          ++emitted;
        }
      } catch (...) {
        std::lock_guard lock(mutex);
        if (!failure) failure = std::current_exception();
        next = tasks.size();
        return;
      }
    }
  };

  const std::size_t workers = std::min(config.threads, std::max<std::size_t>(tasks.size(), 1));
  if (workers <= 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(workers);
    for (std::size_t t = 0; t < workers; ++t) pool.emplace_back(worker);
  }
  if (failure) std::rethrow_exception(failure);

  ExperimentResult result;
  result.rows.reserve(slots.size());
  for (auto& slot : slots) result.rows.push_back(std::move(*slot));
  return result;
}

void write_result_csv_header(std::ostream& out) {
  out << "gamma,n,seed,construction,triangles,wedges,c1,c2,c1w_arith,c1w_geom,c1w_min,"
         "c1w_max,c1w_prod,xi_max,retries,elapsed_ms,status\n";
}

void write_result_csv_row(std::ostream& out, const ExperimentRow& row) {
  std::string line = fmt::format("{},{},{},{},", row.gamma, row.n, row.seed, to_string(row.construction));
  if (row.ok()) {
    line += fmt::format("{},{},{:.10g},{:.10g}", row.triangles, row.wedges, row.c1, row.c2);
  } else {
    line += ",,,";
  }
  for (const auto& w : row.weighted) line += "," + format_optional(row.ok() ? w : std::nullopt);
  line += fmt::format(",{},{},{},{}\n", row.xi_max, row.retries, row.elapsed_ms, row.status);
  out << line;
}

std::string_view to_string(FitField f) noexcept {
  switch (f) {
    case FitField::C1: return "c1";
    case FitField::Triangles: return "triangles";
    case FitField::Wedges: return "wedges";
    case FitField::XiMax: return "xi_max";
  }
  return "?";
}

ExponentFit least_squares(const std::vector<double>& x, const std::vector<double>& y) {
  const std::size_t k = x.size();
  if (k < 2 || y.size() != k) throw Error(ErrorCode::InsufficientData, "need at least two points");
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < k; ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= static_cast<double>(k);
  my /= static_cast<double>(k);
  double sxx = 0.0, sxy = 0.0, syy = 0.0;
  for (std::size_t i = 0; i < k; ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
    syy += (y[i] - my) * (y[i] - my);
  }
  if (sxx == 0.0) throw Error(ErrorCode::InsufficientData, "all x values coincide");
  ExponentFit fit;
  fit.points = k;
  fit.slope = sxy / sxx;
  fit.intercept = my - fit.slope * mx;
  double sse = 0.0;
  for (std::size_t i = 0; i < k; ++i) {
    const double r = y[i] - (fit.intercept + fit.slope * x[i]);
    sse += r * r;
  }
  fit.stderr_slope = k > 2 ? std::sqrt(sse / static_cast<double>(k - 2) / sxx) : 0.0;
  fit.r_squared = syy > 0.0 ? 1.0 - sse / syy : 1.0;
  return fit;
}

ExponentFit fit_exponent(const ExperimentResult& result, double gamma, FitField field) {
  struct Point {
    std::size_t total = 0;
    std::size_t ok = 0;
    double sum = 0.0;
  };
  std::map<std::size_t, Point> by_n;
  for (const auto& row : result.rows) {
    if (row.gamma != gamma) continue;
    auto& p = by_n[row.n];
    ++p.total;
    if (!row.ok()) continue;
    ++p.ok;
    switch (field) {
      case FitField::C1: p.sum += row.c1; break;
      case FitField::Triangles: p.sum += static_cast<double>(row.triangles); break;
      case FitField::Wedges: p.sum += static_cast<double>(row.wedges); break;
      case FitField::XiMax: p.sum += static_cast<double>(row.xi_max); break;
    }
  }
  std::vector<double> x, y;
  for (const auto& [n, p] : by_n) {
    if (p.ok == 0 || 2 * (p.total - p.ok) > p.total) continue;
    const double mean = p.sum / static_cast<double>(p.ok);
    if (!(mean > 0.0)) {
      throw Error(ErrorCode::InsufficientData,
                  fmt::format("mean {} at n = {} is not positive", to_string(field), n));
    }
    x.push_back(std::log(static_cast<double>(n)));
    y.push_back(std::log(mean));
  }
  if (x.size() < 3) {
    throw Error(ErrorCode::InsufficientData,
                fmt::format("{} usable n values for gamma = {}, need 3", x.size(), gamma));
  }
  return least_squares(x, y);
}

PredictedValues predicted_values(double gamma) {
  if (!(gamma > 1.0 && gamma < 2.0)) {
    throw Error(ErrorCode::InvalidGamma, fmt::format("predictions need 1 < gamma < 2, got {}", gamma));
  }
  PredictedValues p;
  p.c1_exponent = -(2.0 - gamma) / (gamma * (gamma + 1.0));
  p.triangle_exponent = 3.0 / (gamma + 1.0);
  p.wedge_exponent = 2.0 / gamma;
  p.ximax_exponent = 1.0 / gamma;
  p.multigraph_constant = (2.0 - gamma) / (2.0 + gamma);
  return p;
}

void write_compare_report(std::ostream& out, const ExperimentResult& result,
                          const ExperimentConfig& config) {
  out << "# fit: OLS of ln(mean y) on ln n; y averaged over successful seeds before the log; "
         "n with more than half of its trials failed is dropped\n";
  out << "gamma,field,fitted_slope,stderr,predicted,deviation\n";
  for (const double gamma : config.gammas) {
    std::optional<PredictedValues> predicted;
    try {
      predicted = predicted_values(gamma);
    } catch (const Error&) {
    }
    for (const auto field : {FitField::C1, FitField::Triangles, FitField::Wedges, FitField::XiMax}) {
      std::optional<double> target;
      if (predicted) {
        switch (field) {
          case FitField::C1: target = predicted->c1_exponent; break;
          case FitField::Triangles: target = predicted->triangle_exponent; break;
          case FitField::Wedges: target = predicted->wedge_exponent; break;
          case FitField::XiMax: target = predicted->ximax_exponent; break;
        }
      }
      const std::string target_text = target ? fmt::format("{:.6g}", *target) : "n/a";
      try {
        const auto fit = fit_exponent(result, gamma, field);
        const std::string deviation = target ? fmt::format("{:.6g}", fit.slope - *target) : "n/a";
        fmt::print(out, "{},{},{:.6g},{:.6g},{},{}\n", gamma, to_string(field), fit.slope,
                   fit.stderr_slope, target_text, deviation);
      } catch (const Error&) {
        fmt::print(out, "{},{},no-data,no-data,{},no-data\n", gamma, to_string(field), target_text);
      }
    }

    if (config.construction != Construction::Multigraph) continue;
    for (std::size_t d = 0; d < kAllTripletDefs.size(); ++d) {
      const auto def = kAllTripletDefs[d];
      if (std::find(config.weighted_defs.begin(), config.weighted_defs.end(), def) ==
          config.weighted_defs.end()) {
        continue;
      }
      const std::string target_text =
          predicted ? fmt::format("{:.6g}", predicted->multigraph_constant - config.delta) : "n/a";
      for (const std::size_t n : config.ns) {
        std::vector<double> values;
        for (const auto& row : result.rows) {
          if (row.gamma == gamma && row.n == n && row.ok() && row.weighted[d]) {
            values.push_back(*row.weighted[d]);
          }
        }
        const std::string field = fmt::format("c1w_{}@n={}", short_name(def), n);
        if (values.empty()) {
          fmt::print(out, "{},{},no-data,no-data,{},no-data\n", gamma, field, target_text);
          continue;
        }
        double mean = 0.0;
        for (const double v : values) mean += v;
        mean /= static_cast<double>(values.size());
        double var = 0.0;
        for (const double v : values) var += (v - mean) * (v - mean);
        const double se = values.size() > 1
                              ? std::sqrt(var / static_cast<double>(values.size() - 1) /
                                          static_cast<double>(values.size()))
                              : 0.0;
        const std::string deviation =
            predicted ? fmt::format("{:.6g}", mean - (predicted->multigraph_constant - config.delta))
                      : "n/a";
        fmt::print(out, "{},{},{:.6g},{:.6g},{},{}\n", gamma, field, mean, se, target_text, deviation);
      }
    }
  }
}

}  // namespace sfc
