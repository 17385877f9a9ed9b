#pragma once

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "sfc/clustering.hpp"
#include "sfc/constructors.hpp"
#include "sfc/degree_model.hpp"

namespace sfc {

enum class Construction { CliqueSimple, Multigraph, BaselineErased, BaselineMultigraph };

std::string_view to_string(Construction c) noexcept;
std::optional<Construction> parse_construction(std::string_view text) noexcept;

struct ExperimentConfig {
  std::vector<double> gammas;
  std::vector<std::size_t> ns;  ///< strictly increasing
  std::size_t seeds_per_point = 1;
  Construction construction = Construction::CliqueSimple;
  double eps = kDefaultEps;
  double delta = kDefaultDelta;
  std::vector<TripletValueDef> weighted_defs;
  std::uint64_t master_seed = 0;
  /// Slowly varying part and minimum degree shared by every gamma.
  SlowlyVarying L = ConstantL{};
  Degree min_degree = 1;
  std::size_t threads = 1;
  /// Seed-dependent construction failures are retried with a fresh sample.
  std::size_t max_retries = 10;
  /// elapsed_ms is written as 0 unless enabled, so results stay byte-stable.
  bool record_timing = false;
};

/// Flat `key = value` text; `#` starts a comment. Keys: gamma, n, seeds,
/// construction, eps, delta, weighted, master_seed, L, min_degree, threads,
/// max_retries, record_timing. `n` is a comma list or `lo:hi:xK`.
/// Throws ConfigError.
ExperimentConfig parse_config(std::istream& in);
ExperimentConfig load_config(const std::string& path);

struct ExperimentRow {
  double gamma = 0.0;
  std::size_t n = 0;
  std::size_t seed_index = 0;
  std::uint64_t seed = 0;  ///< sample seed actually used (after retries)
  Construction construction = Construction::CliqueSimple;
  Count triangles = 0;
  Count wedges = 0;
  double c1 = 0.0;
  double c2 = 0.0;
  /// Indexed like kAllTripletDefs; empty when not requested.
  std::array<std::optional<double>, 5> weighted{};
  Degree xi_max = 0;
  std::size_t retries = 0;
  std::uint64_t elapsed_ms = 0;
  std::string status = "ok";

  bool ok() const noexcept { return status == "ok"; }
};

struct ExperimentResult {
  std::vector<ExperimentRow> rows;
};

using RowSink = std::function<void(const ExperimentRow&)>;

/// Runs every (gamma, n, seed) trial. Trial seeds are a hash of
/// (master_seed, gamma index, n index, seed index), so the result does not
/// depend on `threads`. `sink` sees rows in grid order as soon as the
/// prefix up to them is complete.
ExperimentResult run_experiment(const ExperimentConfig& config, const RowSink& sink = {});

/// Measures one trial; exposed for tests. Failures land in row.status.
ExperimentRow run_trial(const ExperimentConfig& config, std::size_t gamma_index,
                        std::size_t n_index, std::size_t seed_index);

std::uint64_t trial_seed(std::uint64_t master_seed, std::size_t gamma_index,
                         std::size_t n_index, std::size_t seed_index,
                         std::size_t attempt = 0) noexcept;

void write_result_csv_header(std::ostream& out);
void write_result_csv_row(std::ostream& out, const ExperimentRow& row);

enum class FitField { C1, Triangles, Wedges, XiMax };

std::string_view to_string(FitField f) noexcept;

struct ExponentFit {
  double slope = 0.0;
  double intercept = 0.0;
  double stderr_slope = 0.0;
  double r_squared = 0.0;
  std::size_t points = 0;
};

/// OLS of ln(mean y) on ln n, means taken over successful rows per n.
/// An n with more than half of its trials failed is dropped. Throws
/// InsufficientData with fewer than 3 usable n or a non-positive mean.
ExponentFit fit_exponent(const ExperimentResult& result, double gamma, FitField field);

/// Plain OLS of y on x; needs >= 2 distinct x.
ExponentFit least_squares(const std::vector<double>& x, const std::vector<double>& y);

struct PredictedValues {
  double c1_exponent = 0.0;        ///< -(2-gamma)/(gamma(gamma+1))
  double triangle_exponent = 0.0;  ///< 3/(gamma+1)
  double wedge_exponent = 0.0;     ///< 2/gamma
  double ximax_exponent = 0.0;     ///< 1/gamma
  double multigraph_constant = 0.0;  ///< (2-gamma)/(2+gamma)
};

/// Throws InvalidGamma outside (1, 2).
PredictedValues predicted_values(double gamma);

/// CSV `gamma,field,fitted_slope,stderr,predicted,deviation`, preceded by a
/// `#` line describing the fitting convention. Multigraph runs add one row
/// per (def, n) with the mean weighted C1 in the slope column against
/// multigraph_constant - delta.
void write_compare_report(std::ostream& out, const ExperimentResult& result,
                          const ExperimentConfig& config);

}  // namespace sfc
