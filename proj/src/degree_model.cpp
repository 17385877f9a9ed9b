#include "sfc/degree_model.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <limits>
#include <random>
#include <sstream>

#include "sfc/error.hpp"

namespace sfc {

namespace {

constexpr Degree kDegreeCap = Degree{1} << 62;

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};

double parse_double(std::string_view text, const std::string& context) {
  std::string s(text);
  std::size_t used = 0;
  double value = 0.0;
  try {
    value = std::stod(s, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used == 0 || used != s.size()) {
    throw Error(ErrorCode::ParseError, "bad number '" + s + "' in " + context);
  }
  return value;
}

TabulatedL load_table(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::IoError, "cannot open " + path.string());
  TabulatedL table;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty() || line.front() == '#') continue;
    std::istringstream fields(line);
    double x = 0.0, value = 0.0;
    if (!(fields >> x >> value)) {
      throw Error(ErrorCode::ParseError,
                  path.string() + ":" + std::to_string(lineno) + ": expected 'x L'");
    }
    if (!table.x.empty() && x <= table.x.back()) {
      throw Error(ErrorCode::ParseError,
                  path.string() + ":" + std::to_string(lineno) +
                      ": knots must be strictly increasing");
    }
    table.x.push_back(x);
    table.value.push_back(value);
  }
  if (table.x.empty()) {
    throw Error(ErrorCode::ParseError, path.string() + ": empty table");
  }
  return table;
}

// Integer grid used to validate monotonicity of the tail.
std::vector<Degree> validation_grid(Degree min_degree) {
  constexpr double kUpper = 1e9;
  constexpr int kGeometricPoints = 10000;
  std::vector<Degree> grid;
  grid.reserve(kGeometricPoints + 100);
  for (Degree k = min_degree; k < min_degree + 100; ++k) grid.push_back(k);
  const double lo = static_cast<double>(min_degree);
  if (lo < kUpper) {
    const double ratio = std::log(kUpper / lo) / (kGeometricPoints - 1);
    for (int i = 0; i < kGeometricPoints; ++i) {
      grid.push_back(static_cast<Degree>(std::floor(lo * std::exp(ratio * i))));
    }
  }
  std::sort(grid.begin(), grid.end());
  grid.erase(std::unique(grid.begin(), grid.end()), grid.end());
  return grid;
}

}  // namespace

double evaluate(const SlowlyVarying& L, double x) {
  return std::visit(
      Overloaded{
          [](const ConstantL& l) { return l.c; },
          [x](const LogL& l) { return l.c * std::pow(l.shift + std::log(x), l.p); },
          [x](const TabulatedL& t) {
            if (x <= t.x.front()) return t.value.front();
            if (x >= t.x.back()) return t.value.back();
            const auto hi = std::upper_bound(t.x.begin(), t.x.end(), x);
            const auto i = static_cast<std::size_t>(hi - t.x.begin());
            const double w = (x - t.x[i - 1]) / (t.x[i] - t.x[i - 1]);
            return t.value[i - 1] + w * (t.value[i] - t.value[i - 1]);
          },
      },
      L);
}

SlowlyVarying parse_slowly_varying(const std::string& text) {
  const auto colon = text.find(':');
  if (colon == std::string::npos) {
    throw Error(ErrorCode::ParseError, "slowly varying spec needs 'kind:args': " + text);
  }
  const std::string kind = text.substr(0, colon);
  const std::string args = text.substr(colon + 1);
  if (kind == "const") {
    return ConstantL{parse_double(args, "const:<c>")};
  }
  if (kind == "log") {
    const auto comma = args.find(',');
    if (comma == std::string::npos) {
      throw Error(ErrorCode::ParseError, "expected log:<c>,<p>[,<shift>]: " + text);
    }
    const auto comma2 = args.find(',', comma + 1);
    LogL l;
    l.c = parse_double(args.substr(0, comma), "log:<c>,<p>");
    l.p = parse_double(args.substr(comma + 1, comma2 == std::string::npos
                                                  ? std::string::npos
                                                  : comma2 - comma - 1),
                       "log:<c>,<p>");
    if (comma2 != std::string::npos) l.shift = parse_double(args.substr(comma2 + 1), "log shift");
    return l;
  }
  if (kind == "table") {
    return load_table(args);
  }
  throw Error(ErrorCode::ParseError, "unknown slowly varying kind '" + kind + "'");
}

double DegreeDistribution::tail(double x) const {
  if (x < static_cast<double>(min_degree_)) return 1.0;
  return std::min(1.0, evaluate(L_, x) * std::pow(x, -gamma_));
}

DegreeDistribution make_distribution(double gamma, SlowlyVarying L,
                                     Degree min_degree) {
  if (!(gamma > 1.0) || !std::isfinite(gamma)) {
    throw Error(ErrorCode::InvalidGamma,
                "gamma must exceed 1, got " + std::to_string(gamma));
  }
  if (min_degree < 1) {
    throw Error(ErrorCode::NonMonotoneCdf, "min_degree must be positive");
  }
  DegreeDistribution dist(gamma, std::move(L), min_degree);

  double previous = 1.0;
  for (const Degree k : validation_grid(min_degree)) {
    const double t = dist.tail(static_cast<double>(k));
    if (!(t >= 0.0) || t > previous * (1.0 + 1e-12)) {
      throw Error(ErrorCode::NonMonotoneCdf,
                  "1 - L(x) x^-gamma decreases near x = " + std::to_string(k));
    }
    previous = t;
  }
  if (previous > 1e-3) {
    throw Error(ErrorCode::NonMonotoneCdf,
                "tail does not vanish: P(xi > 1e9) = " + std::to_string(previous));
  }
  return dist;
}

Degree DegreeSequence::sum() const noexcept {
  Degree total = 0;
  for (const Degree d : degrees) total += d;
  return total;
}

Degree invert_tail(const DegreeDistribution& dist, double u) {
  const Degree lo_bound = dist.min_degree();
  auto tail = [&](Degree k) { return dist.tail(static_cast<double>(k)); };
  if (tail(lo_bound) < u) return lo_bound;

  if (const auto* constant = std::get_if<ConstantL>(&dist.slowly_varying())) {
    // Closed-form guess, then walk to the exact boundary.
    const double guess = std::pow(constant->c / u, 1.0 / dist.gamma());
    Degree k = guess >= static_cast<double>(kDegreeCap)
                   ? kDegreeCap
                   : std::max(lo_bound, static_cast<Degree>(std::floor(guess)));
    while (k > lo_bound && tail(k - 1) < u) --k;
    while (k < kDegreeCap && tail(k) >= u) ++k;
    return k;
  }

  // Exponential search for a bracket (lo, hi] with tail(lo) >= u > tail(hi).
  Degree lo = lo_bound;
  Degree hi = std::max<Degree>(2 * lo_bound, lo_bound + 1);
  while (tail(hi) >= u) {
    if (hi >= kDegreeCap / 2) return kDegreeCap;
    lo = hi;
    hi *= 2;
  }
  while (hi - lo > 1) {
    const Degree mid = lo + (hi - lo) / 2;
    if (tail(mid) < u) {
      hi = mid;
    } else {
      lo = mid;
    }
  }
  return hi;
}

DegreeSequence sample_degrees(const DegreeDistribution& dist, std::size_t n,
                              std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  DegreeSequence seq;
  seq.seed = seed;
  seq.degrees.resize(n);
  for (auto& d : seq.degrees) {
    // Uniform on the open interval (0, 1) from the top 53 bits.
    const double u = (static_cast<double>(rng() >> 11) + 0.5) * 0x1p-53;
    d = invert_tail(dist, u);
  }
  if (!seq.degrees.empty() && seq.sum() % 2 != 0) ++seq.degrees.back();
  return seq;
}

double tail_sum(std::span<const Degree> degrees, double c, double x,
                TailSide side) {
  double total = 0.0;
  for (const Degree d : degrees) {
    const double v = static_cast<double>(d);
    const bool take = side == TailSide::Above ? v > x : v <= x;
    if (!take) continue;
    total += c == 0.0 ? 1.0 : c == 1.0 ? v : c == 2.0 ? v * v : std::pow(v, c);
  }
  return total;
}

double predicted_tail_sum(const DegreeDistribution& dist, std::size_t n,
                          double c, double x, TailSide side) {
  const double gamma = dist.gamma();
  double factor = 0.0;
  if (side == TailSide::Above) {
    if (!(c >= 0.0 && c < gamma)) {
      throw Error(ErrorCode::RegimeMismatch,
                  "upper tail sum needs 0 <= c < gamma");
    }
    factor = gamma / (gamma - c);
  } else {
    if (!(c > gamma)) {
      throw Error(ErrorCode::RegimeMismatch, "truncated sum needs c > gamma");
    }
    factor = gamma / (c - gamma);
  }
  if (!(x > 0.0) || !std::isfinite(x)) {
    throw Error(ErrorCode::RegimeMismatch, "prediction needs finite x > 0");
  }
  return factor * static_cast<double>(n) * std::pow(x, c - gamma) *
         evaluate(dist.slowly_varying(), x);
}

TailSumReport compare_tail_sum(const DegreeDistribution& dist,
                               std::span<const Degree> degrees, double c,
                               double x, TailSide side) {
  TailSumReport report;
  report.empirical = tail_sum(degrees, c, x, side);
  report.predicted = predicted_tail_sum(dist, degrees.size(), c, x, side);
  report.relative_deviation =
      std::abs(report.empirical - report.predicted) / report.predicted;
  return report;
}

Degree max_degree(std::span<const Degree> degrees) {
  if (degrees.empty()) {
    throw std::invalid_argument("max_degree of an empty sequence");
  }
  return *std::max_element(degrees.begin(), degrees.end());
}

DegreeSequence load_degrees(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::IoError, "cannot open " + path.string());
  DegreeSequence seq;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    while (!line.empty() && (line.back() == '\r' || line.back() == ' ')) line.pop_back();
    if (line.empty()) continue;
    Degree d = 0;
    const auto [ptr, ec] = std::from_chars(line.data(), line.data() + line.size(), d);
    if (ec != std::errc{} || ptr != line.data() + line.size() || d < 0) {
      throw Error(ErrorCode::ParseError,
                  path.string() + ":" + std::to_string(lineno) +
                      ": expected a non-negative integer");
    }
    seq.degrees.push_back(d);
  }
  return seq;
}

void save_degrees(const DegreeSequence& seq, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw Error(ErrorCode::IoError, "cannot write " + path.string());
  for (const Degree d : seq.degrees) out << d << '\n';
  if (!out) throw Error(ErrorCode::IoError, "write failed for " + path.string());
}

}  // namespace sfc
