#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <gmpxx.h>

#include "multislice/certificate.hpp"
#include "multislice/core/composition.hpp"
#include "multislice/core/vertex.hpp"
#include "multislice/linalg/exact.hpp"
#include "multislice/operators/functions.hpp"
#include "multislice/operators/laplacian.hpp"
#include "multislice/spectral/spectrum.hpp"
#include "multislice/spectral/symmetry.hpp"

namespace multislice {

enum class SpectrumMethod { Dense, Blocks };

inline std::string_view to_string(SpectrumMethod m) {
  return m == SpectrumMethod::Dense ? "dense" : "symmetry_blocks";
}

/// Floating Laplacian spectrum. The dense path eigensolves L itself; the
/// block path eigensolves the character blocks (see symmetry.hpp) and
/// reaches slices above the dense cap.
inline Spectrum laplacian_spectrum(const VertexSet& vs, const Limits& limits,
                                   SpectrumMethod method = SpectrumMethod::Blocks) {
  if (method == SpectrumMethod::Dense) {
    LaplacianMatrix lap(vs, limits);
    return full_spectrum(lap.to_dense(limits.dense_cap), limits,
                         OperatorKind::Laplacian);
  }
  return block_spectrum(laplacian_blocks(vs), limits);
}

inline Spectrum laplacian_spectrum(const Composition& k,
                                   const Limits& limits = {},
                                   SpectrumMethod method = SpectrumMethod::Blocks) {
  return laplacian_spectrum(VertexSet(k, limits), limits, method);
}

/// Exact Laplacian spectrum. Candidates are the floating eigenvalues rounded
/// to integers; each candidate's multiplicity is the exact nullity of
/// L - lambda I summed over the symmetry blocks. When the multiplicities
/// add up to |V| the list is complete, and then even modular upper bounds
/// are exact. Check dimension() against |V| before trusting the result.
inline Spectrum exact_laplacian_spectrum(const VertexSet& vs,
                                         const Limits& limits = {}) {
  const auto blocks = laplacian_blocks(vs);
  const Spectrum approx = block_spectrum(blocks, limits);
  Spectrum out;
  out.source = OperatorKind::Laplacian;
  out.exact = true;
  for (const auto& e : approx.eigenvalues) {
    const long candidate = std::lround(e.value);
    if (!out.eigenvalues.empty() && *out.eigenvalues.back().exact == candidate)
      continue;
    const mpq_class lambda(candidate);
    Nullity nl = block_nullity(blocks, lambda, limits);
    if (nl.value > 0)
      out.eigenvalues.push_back({static_cast<double>(candidate), nl.value, lambda});
  }
  return out;
}

/// Least eigenvalue above the tolerance.
inline double least_nonzero(const Spectrum& s) {
  for (const auto& e : s.eigenvalues)
    if (e.value > s.tolerance) return e.value;
  fail(ErrorCode::Precondition, "spectrum has no nonzero eigenvalue");
}

inline void require_nontrivial(const Composition& k) {
  require(!k.trivial(), ErrorCode::Precondition,
          "composition " + k.to_string() +
              " is trivial (single vertex); the gap is undefined");
}

/// Gamma_{N,k}: least nonzero Laplacian eigenvalue, by eigensolve.
inline double spectral_gap(const Composition& k, const Limits& limits = {}) {
  require_nontrivial(k);
  return least_nonzero(laplacian_spectrum(k, limits));
}

/// Delta_{N,k} = (2/(N-1)) Gamma_{N,k}.
inline double scaled_gap(const Composition& k, const Limits& limits = {}) {
  require_nontrivial(k);
  return 2.0 / static_cast<double>(k.total() - 1) * spectral_gap(k, limits);
}

/// g_m = 1[level m] - k_m/N for each active level m after the first one.
inline std::vector<LevelFunction<mpq_class>> kspace_basis(const Composition& k) {
  require(k.active_levels() >= 2, ErrorCode::Precondition,
          "K-space basis needs at least two active levels");
  const auto n = static_cast<unsigned long>(k.total());
  std::vector<LevelFunction<mpq_class>> out;
  bool first = true;
  for (std::size_t m = 0; m < k.levels(); ++m) {
    if (k.count(m) == 0) continue;
    if (first) {
      first = false;
      continue;
    }
    mpq_class shift(static_cast<unsigned long>(k.count(m)), n);
    shift.canonicalize();
    LevelFunction<mpq_class> g;
    g.values.assign(k.levels(), -shift);
    g.values[m] += 1;
    out.push_back(std::move(g));
  }
  return out;
}

/// f_{m,l}(x) = g_m(x_l) for every K-space generator g_m and 0 <= l < N-1.
struct GapEigenbasis {
  Composition composition{1};
  std::vector<LevelFunction<mpq_class>> generators;
  std::vector<VertexFunction<mpq_class>> functions;
  std::vector<std::pair<std::size_t, std::size_t>> labels;  // (m, l)

  std::size_t size() const noexcept { return functions.size(); }
};

inline GapEigenbasis gap_eigenbasis(const VertexSet& vs) {
  const auto& k = vs.composition();
  require_nontrivial(k);
  GapEigenbasis out{k, kspace_basis(k), {}, {}};
  for (std::size_t m = 0; m < out.generators.size(); ++m)
    for (std::size_t l = 0; l + 1 < k.total(); ++l) {
      out.functions.push_back(lift_at(vs, out.generators[m], l));
      out.labels.emplace_back(m, l);
    }
  return out;
}

/// Exact rank of a family of rational vertex functions. Rank over a prime
/// field never exceeds the rational rank, so a full modular rank settles
/// the question; otherwise fall back to fraction-free elimination.
inline std::size_t family_rank(const std::vector<VertexFunction<mpq_class>>& fs) {
  if (fs.empty()) return 0;
  const std::size_t cols = fs.front().size();
  RationalMatrix m(fs.size(), cols);
  for (std::size_t i = 0; i < fs.size(); ++i) {
    fs[i].check_same(fs.front());
    for (std::size_t j = 0; j < cols; ++j) m(i, j) = fs[i][j];
  }
  auto ints = detail::integer_rows(m);
  if (modular_rank(ints, fs.size(), cols, kPrimeA) == fs.size())
    return fs.size();
  return bareiss_rank(std::move(ints), fs.size(), cols);
}

/// Checks L f = lambda f: exactly for rational f, and in floating mode as
/// |Lf - lambda f|_inf <= tol |f|_inf.
template <Scalar S>
Certificate verify_eigenpair(const VertexSet& vs, const VertexFunction<S>& f,
                             const S& lambda, double tol = Limits{}.tolerance) {
  require_matches(vs, f);
  require(!f.is_zero(), ErrorCode::InvalidArgument,
          "eigenpair check needs a nonzero function");
  auto lf = apply_laplacian(vs, f);
  Certificate c;
  c.name = "eigenpair";
  if constexpr (std::is_same_v<S, mpq_class>) {
    c.method = "exact";
    lf -= lambda * f;
    c.passed = lf.is_zero();
    c.detail = c.passed ? "zero residual" : "nonzero rational residual";
  } else {
    c.method = "float";
    double res = 0, scale = 0;
    for (std::size_t i = 0; i < f.size(); ++i) {
      res = std::max(res, std::fabs(lf[i] - lambda * f[i]));
      scale = std::max(scale, std::fabs(f[i]));
    }
    c.passed = res <= tol * scale;
    c.detail = "residual " + std::to_string(res) + " vs bound " +
               std::to_string(tol * scale);
  }
  return c;
}

/// sum_l g_l(x_l) vanishes identically on V_{N,k}. Each g_l must lie in the
/// K-space.
inline bool nulllm_check(const VertexSet& vs,
                         const std::vector<LevelFunction<mpq_class>>& gs) {
  const auto& k = vs.composition();
  require(gs.size() == k.total(), ErrorCode::InvalidArgument,
          "nulllm_check needs exactly N level functions");
  for (const auto& g : gs)
    require(g.size() == k.levels() && g.in_kspace(k), ErrorCode::Precondition,
            "every level function must lie in the K-space");
  mpq_class s;
  for (std::size_t v = 0; v < vs.size(); ++v) {
    auto x = vs[v];
    s = 0;
    for (std::size_t l = 0; l < gs.size(); ++l) s += gs[l].values[x[l]];
    if (sgn(s) != 0) return false;
  }
  return true;
}

/// Everything known about the gap of one composition.
struct GapCertificate {
  Composition composition{1};
  Composition reduced{1};
  std::size_t cardinality = 0;
  std::uint64_t degree = 0;
  bool trivial = false;
  double gap = 0;                 // least nonzero eigenvalue (floating)
  std::size_t gap_multiplicity_float = 0;
  std::size_t zero_multiplicity = 0;
  bool window_clear = false;      // nothing in (tol, N - tol)
  Nullity nullity;                // of L - N I, from the blocks
  std::size_t basis_rank = 0;     // rank of the explicit eigenbasis
  bool basis_exact = false;       // every member satisfies L f = N f
  std::optional<bool> lower_bound;  // L >= N off the constants, exact
  std::size_t expected_multiplicity = 0;  // (N-1)(r_eff-1)
  std::vector<Certificate> certificates;

  bool passed() const { return all_passed(certificates); }
  mpq_class gap_exact() const {
    return mpq_class(static_cast<unsigned long>(composition.total()));
  }
  mpq_class delta_exact() const {
    mpq_class d(2 * static_cast<unsigned long>(composition.total()),
                static_cast<unsigned long>(composition.total() - 1));
    d.canonicalize();
    return d;
  }
  /// Exact multiplicity when the upper bound from elimination meets the
  /// lower bound from the explicit basis.
  std::optional<std::size_t> certified_multiplicity() const {
    if (nullity.exact() || nullity.value == basis_rank) return nullity.value;
    return std::nullopt;
  }
};

struct GapOptions {
  /// Also run the exact positive semi-definite lower-bound certificate.
  bool lower_bound = false;
};

inline GapCertificate certify_gap(const Composition& k, const Limits& limits = {},
                                  GapOptions options = {}) {
  GapCertificate gc;
  gc.composition = k;
  gc.reduced = reduce(k).reduced;
  gc.degree = degree(k);
  gc.trivial = k.trivial();
  gc.cardinality = checked_cardinality(k, limits.enumeration_budget);
  if (gc.trivial) return gc;

  // The block decomposition needs level swaps between equal counts, which
  // are only meaningful on the reduced slice; the graphs are isomorphic.
  const VertexSet vs(gc.reduced, limits);
  const std::size_t n = k.total();
  const mpq_class big_n(static_cast<unsigned long>(n));
  const double tol = limits.tolerance;
  gc.expected_multiplicity = (n - 1) * (k.active_levels() - 1);

  const auto blocks = laplacian_blocks(vs);
  const Spectrum spec = block_spectrum(blocks, limits);
  gc.gap = least_nonzero(spec);
  gc.gap_multiplicity_float = spec.multiplicity_of(gc.gap);
  gc.zero_multiplicity = spec.multiplicity_of(0.0);
  gc.window_clear = !spec.any_in_open_interval(tol, static_cast<double>(n) - tol) &&
                    gc.zero_multiplicity == 1;

  gc.nullity = block_nullity(blocks, big_n, limits);

  const GapEigenbasis basis = gap_eigenbasis(vs);
  gc.basis_exact = true;
  for (const auto& f : basis.functions)
    if (!verify_eigenpair(vs, f, big_n).passed) gc.basis_exact = false;
  gc.basis_rank = family_rank(basis.functions);

  if (options.lower_bound)
    gc.lower_bound = block_lower_bound(blocks, big_n, vs.size());

  auto& cs = gc.certificates;
  cs.push_back({"float_window", gc.window_clear, "float",
                "least nonzero eigenvalue " + std::to_string(gc.gap) +
                    "; zero multiplicity " + std::to_string(gc.zero_multiplicity)});
  cs.push_back({"gap_eigenspace_nonempty", gc.nullity.value > 0,
                std::string(to_string(gc.nullity.method)),
                "nullity(L - N I) = " + std::to_string(gc.nullity.value)});
  const auto cert = gc.certified_multiplicity();
  cs.push_back({"gap_multiplicity",
                cert.has_value() && *cert == gc.expected_multiplicity,
                gc.nullity.exact() ? "bareiss" : "modular_upper_bound+basis_rank",
                "nullity " + std::to_string(gc.nullity.value) + ", basis rank " +
                    std::to_string(gc.basis_rank) + ", expected " +
                    std::to_string(gc.expected_multiplicity)});
  cs.push_back({"eigenbasis_exact",
                gc.basis_exact && gc.basis_rank == basis.size() &&
                    basis.size() == gc.expected_multiplicity,
                "exact",
                std::to_string(basis.size()) + " functions, rank " +
                    std::to_string(gc.basis_rank)});
  if (gc.lower_bound)
    cs.push_back({"gap_lower_bound", *gc.lower_bound, "exact_psd",
                  "L - N (I - J/|V|) positive semi-definite"});
  return gc;
}

}  // namespace multislice
