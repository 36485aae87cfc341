#pragma once

// Random transposition walk: the discrete-time chain that picks a pair
// i < j uniformly and swaps the two entries (a self-loop when they agree).
// Its one-step operator is T = I - L / C(N,2).

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <optional>
#include <ostream>
#include <random>
#include <span>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include <boost/math/distributions/chi_squared.hpp>
#include <nlohmann/json.hpp>

#include "multislice/core/composition.hpp"
#include "multislice/core/vertex.hpp"
#include "multislice/operators/functions.hpp"
#include "multislice/operators/laplacian.hpp"
#include "multislice/spectral/gap.hpp"

namespace multislice {

/// Generator and bounded-draw scheme used by the walk. Draws in [0, M) reject
/// raw outputs below 2^64 mod M and reduce the rest modulo M.
inline constexpr const char* kWalkRngAlgorithm = "mt19937_64/mod-rejection";

inline std::uint64_t uniform_below(std::mt19937_64& rng, std::uint64_t m) {
  const std::uint64_t threshold = (0 - m) % m;
  while (true) {
    std::uint64_t r = rng();
    if (r >= threshold) return r % m;
  }
}

/// All pairs i < j in the order (0,1), (0,2), ..., (N-2,N-1).
inline std::vector<std::pair<std::size_t, std::size_t>> position_pairs(
    std::size_t n) {
  std::vector<std::pair<std::size_t, std::size_t>> out;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) out.emplace_back(i, j);
  return out;
}

/// One move of the chain, in place.
inline void step_in_place(std::span<Level> x, std::mt19937_64& rng,
                          const std::vector<std::pair<std::size_t, std::size_t>>& pairs) {
  auto [i, j] = pairs[uniform_below(rng, pairs.size())];
  std::swap(x[i], x[j]);
}

inline Vertex step(const Vertex& x, std::mt19937_64& rng) {
  require(x.size() >= 2, ErrorCode::Precondition, "the walk needs N >= 2");
  std::vector<Level> buf(x.levels().begin(), x.levels().end());
  step_in_place(buf, rng, position_pairs(x.size()));
  return Vertex(std::move(buf));
}

/// E[f(X_1) | X_0 = x] = (T f)(x) with T = I - L / C(N,2).
template <Scalar S>
VertexFunction<S> apply_one_step(const VertexSet& vs, const VertexFunction<S>& f) {
  const std::size_t n = vs.particles();
  require(n >= 2, ErrorCode::Precondition, "the walk needs N >= 2");
  auto lf = apply_laplacian(vs, f);
  lf *= S(1) / S(static_cast<unsigned long>(n * (n - 1) / 2));
  return f - lf;
}

/// Observable f_{m,l}(x) = g_m(x_l) from the gap eigenbasis.
struct GapObservable {
  std::size_t generator = 0;
  std::size_t position = 0;
};

/// Observable given by its values on vertex ranks.
using VectorObservable = std::vector<double>;

struct WalkConfig {
  Composition composition{1};
  std::uint64_t steps = 1'000'000;
  std::uint64_t seed = 0;
  std::uint64_t burn_in = 1'000;
  std::variant<GapObservable, VectorObservable> observable = GapObservable{};
  std::size_t max_lag = 20;
  std::size_t batches = 20;
  /// Occupation samples for the goodness-of-fit test are taken every
  /// thin steps so that consecutive samples are nearly independent.
  std::size_t thin = 10;
  /// Slices larger than this track the observable only.
  std::uint64_t occupation_budget = 1'000'000;

  void validate() const {
    require(steps > burn_in, ErrorCode::InvalidArgument,
            "walk needs step_count > burn_in");
    require(max_lag >= 1 && batches >= 2 && thin >= 1, ErrorCode::InvalidArgument,
            "walk needs max_lag >= 1, batches >= 2 and thin >= 1");
    require((steps - burn_in) / batches > 2 * max_lag, ErrorCode::InvalidArgument,
            "walk batches are too short for the requested lags");
  }
};

struct WalkStats {
  std::string rng_algorithm = kWalkRngAlgorithm;
  std::uint64_t seed = 0;
  std::uint64_t steps = 0;
  std::uint64_t burn_in = 0;
  std::size_t particles = 0;
  std::vector<std::uint64_t> occupation;       // per rank, every recorded step
  std::vector<std::uint64_t> thinned;          // per rank, every thin-th step
  std::vector<double> distribution;            // occupation / total
  double mean = 0;
  double variance = 0;
  std::vector<double> autocorrelation;         // lags 0..max_lag, whole chain
  std::vector<double> autocorrelation_stderr;  // batch-means standard errors
  std::vector<std::vector<double>> batch_autocorrelation;
  std::vector<double> trajectory;              // observable after burn-in

  bool tracks_occupation() const { return !occupation.empty(); }
};

namespace detail {

inline std::vector<double> autocorrelation(const double* y, std::size_t n,
                                           std::size_t max_lag, double* mean_out,
                                           double* var_out) {
  double mean = 0;
  for (std::size_t i = 0; i < n; ++i) mean += y[i];
  mean /= static_cast<double>(n);
  std::vector<double> c(max_lag + 1, 0.0);
  for (std::size_t t = 0; t <= max_lag && t < n; ++t) {
    double s = 0;
    for (std::size_t i = 0; i + t < n; ++i) s += (y[i] - mean) * (y[i + t] - mean);
    c[t] = s / static_cast<double>(n);
  }
  if (mean_out) *mean_out = mean;
  if (var_out) *var_out = c[0];
  std::vector<double> rho(max_lag + 1, 0.0);
  if (c[0] > 0)
    for (std::size_t t = 0; t <= max_lag; ++t) rho[t] = c[t] / c[0];
  return rho;
}

inline double standard_error(const std::vector<double>& xs) {
  const double n = static_cast<double>(xs.size());
  if (xs.size() < 2) return std::numeric_limits<double>::infinity();
  double m = 0;
  for (double x : xs) m += x;
  m /= n;
  double v = 0;
  for (double x : xs) v += (x - m) * (x - m);
  return std::sqrt(v / (n - 1) / n);
}

}  // namespace detail

/// Runs the chain from the rank-0 vertex. Identical configurations give
/// bit-identical statistics.
inline WalkStats simulate(const WalkConfig& cfg) {
  cfg.validate();
  const Composition& k = cfg.composition;
  const std::size_t n = k.total();
  require(n >= 2, ErrorCode::Precondition, "the walk needs N >= 2");
  require_nontrivial(k);

  WalkStats st;
  st.seed = cfg.seed;
  st.steps = cfg.steps;
  st.burn_in = cfg.burn_in;
  st.particles = n;

  const Ranker ranker(k);
  const bool track = ranker.size() <= cfg.occupation_budget;

  // Observable lookup: either g(x_l) or a vector indexed by rank.
  std::vector<double> level_values;
  std::size_t position = 0;
  const VectorObservable* by_rank = nullptr;
  if (const auto* gap = std::get_if<GapObservable>(&cfg.observable)) {
    auto basis = kspace_basis(k);
    require(gap->generator < basis.size() && gap->position < n,
            ErrorCode::InvalidArgument, "gap observable index out of range");
    for (const auto& v : basis[gap->generator].values) level_values.push_back(v.get_d());
    position = gap->position;
  } else {
    by_rank = &std::get<VectorObservable>(cfg.observable);
    require(by_rank->size() == ranker.size(), ErrorCode::DimensionMismatch,
            "observable vector length must equal |V|");
    require(track, ErrorCode::BudgetExceeded,
            "vector observables need rank tracking within the occupation budget");
  }

  std::mt19937_64 rng(cfg.seed);
  const auto pairs = position_pairs(n);
  std::vector<Level> x(n);
  ranker.unrank_into(0, x);
  if (track) {
    st.occupation.assign(ranker.size(), 0);
    st.thinned.assign(ranker.size(), 0);
  }
  st.trajectory.reserve(cfg.steps - cfg.burn_in);
  for (std::uint64_t t = 0; t < cfg.steps; ++t) {
    step_in_place(x, rng, pairs);
    if (t < cfg.burn_in) continue;
    std::uint64_t r = 0;
    if (track) {
      r = ranker.rank(x);
      ++st.occupation[r];
      if ((t - cfg.burn_in) % cfg.thin == 0) ++st.thinned[r];
    }
    st.trajectory.push_back(by_rank ? (*by_rank)[r] : level_values[x[position]]);
  }

  if (track) {
    const double total = static_cast<double>(cfg.steps - cfg.burn_in);
    st.distribution.resize(st.occupation.size());
    for (std::size_t i = 0; i < st.occupation.size(); ++i)
      st.distribution[i] = static_cast<double>(st.occupation[i]) / total;
  }

  const std::size_t len = st.trajectory.size();
  st.autocorrelation = detail::autocorrelation(st.trajectory.data(), len,
                                               cfg.max_lag, &st.mean, &st.variance);
  const std::size_t blen = len / cfg.batches;
  for (std::size_t b = 0; b < cfg.batches; ++b)
    st.batch_autocorrelation.push_back(detail::autocorrelation(
        st.trajectory.data() + b * blen, blen, cfg.max_lag, nullptr, nullptr));
  st.autocorrelation_stderr.assign(cfg.max_lag + 1, 0.0);
  for (std::size_t t = 1; t <= cfg.max_lag; ++t) {
    std::vector<double> xs;
    for (const auto& ba : st.batch_autocorrelation) xs.push_back(ba[t]);
    st.autocorrelation_stderr[t] = detail::standard_error(xs);
  }
  return st;
}

struct RelaxationEstimate {
  double ratio = 0;
  double standard_error = 0;
  /// "lag1" when the lag-1 autocorrelation is at or below the fitting
  /// threshold (reported directly), otherwise "log_fit".
  std::string method;
  std::size_t lags_used = 0;
};

/// Autocorrelations at or below this value are not used in the log fit.
inline constexpr double kFitThreshold = 0.05;

namespace detail {

/// Slope of the least-squares line through (t, log rho_t), t = 1..lags.
inline std::optional<double> log_slope(const std::vector<double>& rho,
                                       std::size_t lags) {
  double st = 0, sy = 0, stt = 0, sty = 0;
  for (std::size_t t = 1; t <= lags; ++t) {
    if (!(rho[t] > 0)) return std::nullopt;
    const double y = std::log(rho[t]), tt = static_cast<double>(t);
    st += tt;
    sy += y;
    stt += tt * tt;
    sty += tt * y;
  }
  const double n = static_cast<double>(lags);
  return (n * sty - st * sy) / (n * stt - st * st);
}

}  // namespace detail

/// Geometric decay ratio of the observable's autocorrelation with a
/// batch-means standard error.
inline RelaxationEstimate relaxation_estimate(const WalkStats& st) {
  require(st.variance > 0, ErrorCode::Precondition,
          "degenerate (constant) observable has no autocorrelation");
  RelaxationEstimate est;
  const auto& rho = st.autocorrelation;
  if (rho[1] <= kFitThreshold) {
    est.method = "lag1";
    est.ratio = rho[1];
    est.standard_error = st.autocorrelation_stderr[1];
    est.lags_used = 1;
    return est;
  }
  std::size_t lags = 1;
  while (lags + 1 < rho.size() && rho[lags + 1] > kFitThreshold) ++lags;
  est.lags_used = lags;
  if (lags == 1) {
    est.method = "lag1";
    est.ratio = rho[1];
    est.standard_error = st.autocorrelation_stderr[1];
    return est;
  }
  est.method = "log_fit";
  est.ratio = std::exp(*detail::log_slope(rho, lags));
  std::vector<double> batch;
  for (const auto& ba : st.batch_autocorrelation)
    if (auto s = detail::log_slope(ba, lags)) batch.push_back(std::exp(*s));
  est.standard_error = detail::standard_error(batch);
  return est;
}

struct ChiSquareResult {
  double statistic = 0;
  std::size_t degrees_of_freedom = 0;
  double critical = 0;  // 99% quantile
  double p_value = 0;
  std::uint64_t samples = 0;
  bool passed = false;
};

/// Goodness of fit of the thinned occupation counts to the uniform measure.
inline ChiSquareResult stationarity_test(const WalkStats& st, double level = 0.99) {
  require(st.tracks_occupation(), ErrorCode::Precondition,
          "stationarity test needs occupation counts");
  require(st.thinned.size() >= 2, ErrorCode::Precondition,
          "stationarity test needs at least two vertices");
  ChiSquareResult res;
  for (auto c : st.thinned) res.samples += c;
  const double expected =
      static_cast<double>(res.samples) / static_cast<double>(st.thinned.size());
  for (auto c : st.thinned) {
    const double d = static_cast<double>(c) - expected;
    res.statistic += d * d / expected;
  }
  res.degrees_of_freedom = st.thinned.size() - 1;
  boost::math::chi_squared dist(static_cast<double>(res.degrees_of_freedom));
  res.critical = boost::math::quantile(dist, level);
  res.p_value = boost::math::cdf(boost::math::complement(dist, res.statistic));
  res.passed = res.statistic <= res.critical;
  return res;
}

/// "lag,autocorrelation,stderr" rows for lags 0..max_lag.
inline void write_autocorrelation_csv(std::ostream& os, const WalkStats& st) {
  os << "lag,autocorrelation,stderr\n";
  for (std::size_t t = 0; t < st.autocorrelation.size(); ++t)
    os << t << ',' << st.autocorrelation[t] << ',' << st.autocorrelation_stderr[t]
       << '\n';
}

/// Raw observable trajectory, one value per line, refused above max_rows.
inline void write_trajectory(std::ostream& os, const WalkStats& st,
                             std::size_t max_rows) {
  require(st.trajectory.size() <= max_rows, ErrorCode::BudgetExceeded,
          "trajectory has " + std::to_string(st.trajectory.size()) +
              " rows, above the dump limit " + std::to_string(max_rows));
  for (double y : st.trajectory) os << y << '\n';
}

}  // namespace multislice
