#pragma once

#include <algorithm>
#include <cstddef>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "multislice/core/composition.hpp"
#include "multislice/core/vertex.hpp"
#include "multislice/operators/functions.hpp"
#include "multislice/operators/laplacian.hpp"
#include "multislice/spectral/gap.hpp"
#include "multislice/spectral/spectrum.hpp"

namespace multislice {

/// A surjection phi from s source levels onto r target levels.
class CoarseningMap {
 public:
  explicit CoarseningMap(std::vector<int> table) {
    require(!table.empty(), ErrorCode::InvalidArgument,
            "coarsening table must be non-empty");
    int r = 0;
    for (int t : table) {
      require(t >= 0 && t < 255, ErrorCode::InvalidArgument,
              "coarsening target out of range");
      r = std::max(r, t + 1);
    }
    std::vector<char> hit(static_cast<std::size_t>(r), 0);
    for (int t : table) hit[static_cast<std::size_t>(t)] = 1;
    require(std::all_of(hit.begin(), hit.end(), [](char h) { return h; }),
            ErrorCode::InvalidArgument, "coarsening map must be surjective");
    table_.assign(table.begin(), table.end());
    targets_ = static_cast<std::size_t>(r);
  }

  static CoarseningMap identity(std::size_t s) {
    std::vector<int> t(s);
    for (std::size_t i = 0; i < s; ++i) t[i] = static_cast<int>(i);
    return CoarseningMap(std::move(t));
  }

  std::size_t source_levels() const noexcept { return table_.size(); }
  std::size_t target_levels() const noexcept { return targets_; }
  const std::vector<Level>& table() const noexcept { return table_; }
  Level operator()(Level m) const {
    require(m < table_.size(), ErrorCode::InvalidArgument,
            "level out of range for the coarsening map");
    return table_[m];
  }

  /// s > r >= 2.
  bool is_strict() const noexcept {
    return source_levels() > target_levels() && target_levels() >= 2;
  }

  std::string to_string() const {
    std::string out;
    for (std::size_t i = 0; i < table_.size(); ++i) {
      if (i) out += ',';
      out += std::to_string(i) + "->" + std::to_string(table_[i]);
    }
    return out;
  }

  friend bool operator==(const CoarseningMap&, const CoarseningMap&) = default;

 private:
  std::vector<Level> table_;
  std::size_t targets_ = 0;
};

/// (outer after inner)(m) = outer(inner(m)).
inline CoarseningMap compose(const CoarseningMap& outer,
                             const CoarseningMap& inner) {
  require(inner.target_levels() == outer.source_levels(),
          ErrorCode::DimensionMismatch, "coarsening maps do not compose");
  std::vector<int> t(inner.source_levels());
  for (std::size_t m = 0; m < t.size(); ++m)
    t[m] = outer(inner(static_cast<Level>(m)));
  return CoarseningMap(std::move(t));
}

inline nlohmann::json to_json(const CoarseningMap& phi) {
  std::vector<int> t(phi.table().begin(), phi.table().end());
  return {{"s", phi.source_levels()}, {"r", phi.target_levels()}, {"table", t}};
}

inline CoarseningMap coarsening_from_json(const nlohmann::json& j) {
  require(j.is_object() && j.contains("table"), ErrorCode::Parse,
          "coarsening map must be an object with a table");
  CoarseningMap phi(j.at("table").get<std::vector<int>>());
  if (j.contains("s"))
    require(j.at("s").get<std::size_t>() == phi.source_levels(), ErrorCode::Parse,
            "coarsening map s does not match its table");
  if (j.contains("r"))
    require(j.at("r").get<std::size_t>() == phi.target_levels(), ErrorCode::Parse,
            "coarsening map r does not match its table");
  return phi;
}

/// phi(k)_m = sum over n with phi(n) = m of k_n.
inline Composition coarsen_composition(const CoarseningMap& phi,
                                       const Composition& k) {
  require(k.levels() == phi.source_levels(), ErrorCode::DimensionMismatch,
          "composition has " + std::to_string(k.levels()) +
              " levels but the map expects " +
              std::to_string(phi.source_levels()));
  std::vector<int> out(phi.target_levels(), 0);
  for (std::size_t n = 0; n < k.levels(); ++n)
    out[phi(static_cast<Level>(n))] += static_cast<int>(k.count(n));
  return Composition(std::move(out));
}

/// (phi x)_l = phi(x_l).
inline Vertex coarsen_vertex(const CoarseningMap& phi, const Vertex& x) {
  std::vector<Level> out(x.size());
  for (std::size_t l = 0; l < x.size(); ++l) out[l] = phi(x[l]);
  return Vertex(std::move(out));
}

/// f o phi, evaluated entrywise.
template <Scalar S>
VertexFunction<S> pull_back(const CoarseningMap& phi, const VertexSet& fine,
                            const VertexSet& coarse, const VertexFunction<S>& f) {
  require_matches(coarse, f);
  require(coarse.composition() == coarsen_composition(phi, fine.composition()),
          ErrorCode::DimensionMismatch,
          "coarse slice is not the image of the fine slice");
  std::vector<S> out(fine.size());
  std::vector<Level> buf(fine.particles());
  for (std::size_t v = 0; v < fine.size(); ++v) {
    auto x = fine[v];
    for (std::size_t l = 0; l < buf.size(); ++l) buf[l] = phi(x[l]);
    out[v] = f[coarse.index_of(buf)];
  }
  return VertexFunction<S>(fine.composition(), std::move(out));
}

/// (L_{k'} f) o phi = L_k (f o phi).
template <Scalar S>
bool intertwine_check(const CoarseningMap& phi, const VertexSet& fine,
                      const VertexSet& coarse, const VertexFunction<S>& f) {
  auto lhs = pull_back(phi, fine, coarse, apply_laplacian(coarse, f));
  auto rhs = apply_laplacian(fine, pull_back(phi, fine, coarse, f));
  if constexpr (std::is_same_v<S, mpq_class>) {
    return lhs == rhs;
  } else {
    for (std::size_t i = 0; i < lhs.size(); ++i)
      if (std::fabs(lhs[i] - rhs[i]) > 1e-9 * std::max(1.0, std::fabs(rhs[i])))
        return false;
    return true;
  }
}

/// Image of V_{N,k} under phi equals V_{N,phi(k)}.
inline bool coarsening_surjective(const CoarseningMap& phi, const VertexSet& fine,
                                  const VertexSet& coarse) {
  std::vector<char> hit(coarse.size(), 0);
  std::vector<Level> buf(fine.particles());
  for (std::size_t v = 0; v < fine.size(); ++v) {
    auto x = fine[v];
    for (std::size_t l = 0; l < buf.size(); ++l) buf[l] = phi(x[l]);
    require(realizes(buf, coarse.composition()), ErrorCode::DimensionMismatch,
            "coarsened vertex does not realize the coarse composition");
    hit[coarse.index_of(buf)] = 1;
  }
  return std::all_of(hit.begin(), hit.end(), [](char h) { return h; });
}

struct ContainmentReport {
  Composition fine{1};
  Composition coarse{1};
  Spectrum fine_spectrum;
  Spectrum coarse_spectrum;
  bool contained = false;             // every coarse eigenvalue occurs finely
  bool multiplicities_dominated = false;
  std::optional<double> fine_gap;
  std::optional<double> coarse_gap;
  bool gap_monotone = false;          // Gamma_{k'} >= Gamma_k
};

/// Both spectra by eigensolve; containment and gap monotonicity within the
/// limits' tolerance.
inline ContainmentReport spectrum_containment(const CoarseningMap& phi,
                                              const Composition& k,
                                              const Limits& limits = {}) {
  ContainmentReport rep;
  rep.fine = k;
  rep.coarse = coarsen_composition(phi, k);
  rep.fine_spectrum = laplacian_spectrum(k, limits);
  rep.coarse_spectrum = laplacian_spectrum(rep.coarse, limits);
  rep.contained = true;
  rep.multiplicities_dominated = true;
  for (const auto& e : rep.coarse_spectrum.eigenvalues) {
    std::size_t fm = rep.fine_spectrum.multiplicity_of(e.value);
    if (fm == 0) rep.contained = false;
    if (fm < e.multiplicity) rep.multiplicities_dominated = false;
  }
  if (!k.trivial()) rep.fine_gap = least_nonzero(rep.fine_spectrum);
  if (!rep.coarse.trivial()) rep.coarse_gap = least_nonzero(rep.coarse_spectrum);
  // A trivial coarse slice has no gap; the inequality is vacuous.
  rep.gap_monotone =
      !rep.coarse_gap || !rep.fine_gap ||
      *rep.coarse_gap >= *rep.fine_gap - limits.tolerance * *rep.fine_gap;
  return rep;
}

/// Surjections of s levels onto exactly r levels in restricted-growth form:
/// target labels appear in order of first use, so each set partition of the
/// source levels occurs once.
inline std::vector<CoarseningMap> set_partitions(std::size_t s, std::size_t r) {
  std::vector<CoarseningMap> out;
  std::vector<int> t(s, 0);
  std::function<void(std::size_t, int)> rec = [&](std::size_t i, int top) {
    if (i == s) {
      if (static_cast<std::size_t>(top + 1) == r) out.emplace_back(t);
      return;
    }
    for (int v = 0; v <= top + 1 && v < static_cast<int>(r); ++v) {
      t[i] = v;
      rec(i + 1, std::max(top, v));
    }
  };
  if (s == 0 || r == 0 || r > s) return out;
  t[0] = 0;
  rec(1, 0);
  return out;
}

/// Largest source level count accepted by is_coarser.
inline constexpr std::size_t kCoarseningSearchCap = 8;

/// Exhaustive search over all r^s tables for a surjection phi with
/// phi(k) = k'. Returns the first witness in lexicographic table order.
inline std::optional<CoarseningMap> is_coarser(const Composition& coarse,
                                               const Composition& fine) {
  require(coarse.total() == fine.total(), ErrorCode::InvalidArgument,
          "coarsening compares slices with the same N");
  const std::size_t s = fine.levels(), r = coarse.levels();
  require(s <= kCoarseningSearchCap, ErrorCode::BudgetExceeded,
          "coarsening search is capped at 8 source levels");
  if (r > s) return std::nullopt;
  std::vector<int> t(s, 0);
  while (true) {
    std::vector<int> sums(r, 0);
    std::vector<char> hit(r, 0);
    for (std::size_t n = 0; n < s; ++n) {
      sums[t[n]] += static_cast<int>(fine.count(n));
      hit[t[n]] = 1;
    }
    bool ok = std::all_of(hit.begin(), hit.end(), [](char h) { return h; });
    for (std::size_t m = 0; ok && m < r; ++m)
      ok = sums[m] == static_cast<int>(coarse.count(m));
    if (ok) return CoarseningMap(t);
    std::size_t i = s;
    while (i > 0 && t[i - 1] == static_cast<int>(r) - 1) t[--i] = 0;
    if (i == 0) return std::nullopt;
    ++t[i - 1];
  }
}

}  // namespace multislice
