#pragma once

#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <variant>
#include <vector>

namespace sfc {

using Degree = std::int64_t;

/// L(x) = c.
struct ConstantL {
  double c = 1.0;
};

/// L(x) = c * (shift + ln x)^p.
struct LogL {
  double c = 1.0;
  double p = 1.0;
  double shift = 1.0;
};

/// Piecewise-linear interpolation through (x, L) knots, held constant
/// outside the knot range. Knots must be strictly increasing in x.
struct TabulatedL {
  std::vector<double> x;
  std::vector<double> value;
};

using SlowlyVarying = std::variant<ConstantL, LogL, TabulatedL>;

double evaluate(const SlowlyVarying& L, double x);

/// Parses `const:<c>`, `log:<c>,<p>[,<shift>]` or `table:<path>` (whitespace separated
/// `x L` pairs, one per line).
SlowlyVarying parse_slowly_varying(const std::string& text);

/// Regularly varying law over the positive integers, defined through its
/// tail P(xi > k) = min(1, L(k) k^-gamma) for k >= min_degree.
class DegreeDistribution {
 public:
  double gamma() const noexcept { return gamma_; }
  const SlowlyVarying& slowly_varying() const noexcept { return L_; }
  Degree min_degree() const noexcept { return min_degree_; }

  /// True when the constructions are meant to operate (gamma < 2).
  bool in_construction_range() const noexcept { return gamma_ < 2.0; }

  double tail(double x) const;

 private:
  friend DegreeDistribution make_distribution(double, SlowlyVarying, Degree);
  DegreeDistribution(double gamma, SlowlyVarying L, Degree min_degree)
      : gamma_(gamma), L_(std::move(L)), min_degree_(min_degree) {}

  double gamma_;
  SlowlyVarying L_;
  Degree min_degree_;
};

/// Validates gamma > 1 and checks that the tail is non-increasing on
/// integers along a geometric grid up to 1e9 (plus every integer in the
/// first hundred). The grid is a heuristic guard, not a proof.
DegreeDistribution make_distribution(double gamma, SlowlyVarying L = ConstantL{},
                                     Degree min_degree = 1);

inline double tail_probability(const DegreeDistribution& dist, double x) {
  return dist.tail(x);
}

struct DegreeSequence {
  std::vector<Degree> degrees;
  std::uint64_t seed = 0;

  std::size_t size() const noexcept { return degrees.size(); }
  Degree sum() const noexcept;
};

/// n i.i.d. draws by inversion; if the sum is odd the last entry is
/// incremented. Deterministic in (dist, n, seed).
DegreeSequence sample_degrees(const DegreeDistribution& dist, std::size_t n,
                              std::uint64_t seed);

/// Smallest k >= min_degree with tail(k) < u.
Degree invert_tail(const DegreeDistribution& dist, double u);

enum class TailSide { Above, AtOrBelow };

/// Sum of xi^c over xi > x (Above) or xi <= x (AtOrBelow).
double tail_sum(std::span<const Degree> degrees, double c, double x,
                TailSide side);

/// Leading-order expectation of tail_sum:
///   Above,     0 <= c < gamma:  gamma/(gamma-c) n x^(c-gamma) L(x)
///   AtOrBelow, c > gamma:       gamma/(c-gamma) n x^(c-gamma) L(x)
/// Throws RegimeMismatch outside those regimes.
double predicted_tail_sum(const DegreeDistribution& dist, std::size_t n,
                          double c, double x, TailSide side);

struct TailSumReport {
  double empirical = 0.0;
  double predicted = 0.0;
  double relative_deviation = 0.0;
};

TailSumReport compare_tail_sum(const DegreeDistribution& dist,
                               std::span<const Degree> degrees, double c,
                               double x, TailSide side);

Degree max_degree(std::span<const Degree> degrees);

DegreeSequence load_degrees(const std::filesystem::path& path);
void save_degrees(const DegreeSequence& seq, const std::filesystem::path& path);

}  // namespace sfc
