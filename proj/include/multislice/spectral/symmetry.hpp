#pragma once

// Block decomposition of the Laplacian under an abelian group of commuting
// involutions. The generators are disjoint position swaps (0 1), (2 3), ...
// and disjoint swaps of level labels that carry equal counts. Every such
// map permutes V_{N,k} and commutes with L, so L preserves each character
// subspace W_s = {f : f(g x) = chi_s(g) f(x)}, chi_s(g) = (-1)^{|s & g|}.
//
// A function in W_s is fixed by its values at one representative per orbit,
// and it vanishes on orbits whose stabilizer meets chi_s non-trivially. In
// these coordinates L acts by
//   B_s[a][b] = delta [a = b] - sum over neighbors y of rep(a) lying in orbit
//               b of chi_s(g_y),
// where g_y maps rep(b) to y. D B_s is symmetric for D = diag(orbit sizes),
// and the union of the block spectra is the spectrum of L.

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include <Eigen/Dense>
#include <gmpxx.h>

#include "multislice/core/composition.hpp"
#include "multislice/core/vertex.hpp"
#include "multislice/error.hpp"
#include "multislice/limits.hpp"
#include "multislice/linalg/exact.hpp"
#include "multislice/spectral/spectrum.hpp"

namespace multislice {

/// The involution group acting on V_{N,k}: bit i < position_swaps swaps
/// positions 2i and 2i+1; the remaining bits swap the level pairs listed in
/// level_pairs.
struct InvolutionGroup {
  std::size_t position_swaps = 0;
  std::vector<std::pair<Level, Level>> level_pairs;

  std::size_t generators() const {
    return position_swaps + level_pairs.size();
  }
  std::uint32_t order() const { return 1u << generators(); }

  void apply(std::uint32_t g, std::span<const Level> x,
             std::span<Level> out) const {
    std::copy(x.begin(), x.end(), out.begin());
    for (std::size_t i = 0; i < position_swaps; ++i)
      if (g >> i & 1u) std::swap(out[2 * i], out[2 * i + 1]);
    for (std::size_t q = 0; q < level_pairs.size(); ++q) {
      if (!(g >> (position_swaps + q) & 1u)) continue;
      auto [a, b] = level_pairs[q];
      for (auto& v : out) {
        if (v == a)
          v = b;
        else if (v == b)
          v = a;
      }
    }
  }
};

inline InvolutionGroup involution_group(const Composition& k) {
  InvolutionGroup grp;
  grp.position_swaps = k.total() / 2;
  std::vector<char> used(k.levels(), 0);
  for (std::size_t a = 0; a < k.levels(); ++a) {
    if (used[a] || k.count(a) == 0) continue;
    for (std::size_t b = a + 1; b < k.levels(); ++b) {
      if (used[b] || k.count(b) != k.count(a)) continue;
      grp.level_pairs.emplace_back(static_cast<Level>(a), static_cast<Level>(b));
      used[a] = used[b] = 1;
      break;
    }
  }
  // 2^t characters each cost one pass over the orbits; cap t so the group
  // stays small compared with the vertex set.
  while (grp.generators() > 12) {
    if (!grp.level_pairs.empty())
      grp.level_pairs.pop_back();
    else
      --grp.position_swaps;
  }
  return grp;
}

/// Orbits of the involution group on V_{N,k}.
struct OrbitTable {
  InvolutionGroup group;
  std::vector<std::size_t> representative;   // rank of each orbit's rep
  std::vector<std::vector<std::uint32_t>> stabilizers;
  std::vector<std::uint32_t> orbit_of;       // per vertex
  std::vector<std::uint32_t> element_of;     // g with g . rep = vertex

  std::size_t orbits() const { return representative.size(); }
  std::size_t orbit_size(std::size_t o) const {
    return group.order() / stabilizers[o].size();
  }
};

inline OrbitTable orbit_table(const VertexSet& vs) {
  OrbitTable t;
  t.group = involution_group(vs.composition());
  const std::size_t n = vs.size();
  const std::uint32_t order = t.group.order();
  constexpr std::uint32_t unset = ~0u;
  t.orbit_of.assign(n, unset);
  t.element_of.assign(n, 0);
  std::vector<Level> buf(vs.particles());
  for (std::size_t v = 0; v < n; ++v) {
    if (t.orbit_of[v] != unset) continue;
    const auto o = static_cast<std::uint32_t>(t.representative.size());
    t.representative.push_back(v);
    std::vector<std::uint32_t> stab;
    for (std::uint32_t g = 0; g < order; ++g) {
      t.group.apply(g, vs[v], buf);
      std::size_t w = vs.index_of(buf);
      if (w == v) stab.push_back(g);
      if (t.orbit_of[w] == unset) {
        t.orbit_of[w] = o;
        t.element_of[w] = g;
      }
    }
    t.stabilizers.push_back(std::move(stab));
  }
  return t;
}

inline bool character_trivial_on(std::uint32_t s,
                                 const std::vector<std::uint32_t>& stab) {
  for (std::uint32_t g : stab)
    if (std::popcount(s & g) & 1) return false;
  return true;
}

/// One character block of L.
struct SymmetryBlock {
  std::uint32_t character = 0;
  std::vector<std::size_t> orbits;     // admissible orbit ids
  std::vector<std::size_t> sizes;      // their orbit sizes
  RationalMatrix matrix;               // B_s, integer entries

  std::size_t dimension() const { return orbits.size(); }

  /// D^{1/2} B D^{-1/2}, symmetric.
  Eigen::MatrixXd symmetrized() const {
    const std::size_t d = dimension();
    Eigen::MatrixXd out(d, d);
    for (std::size_t a = 0; a < d; ++a)
      for (std::size_t b = 0; b < d; ++b)
        out(a, b) = matrix(a, b).get_d() *
                    std::sqrt(static_cast<double>(sizes[a]) /
                              static_cast<double>(sizes[b]));
    return out;
  }

  /// D B, symmetric with integer entries.
  RationalMatrix weighted() const {
    RationalMatrix out = matrix;
    for (std::size_t a = 0; a < dimension(); ++a)
      for (std::size_t b = 0; b < dimension(); ++b)
        out(a, b) *= static_cast<unsigned long>(sizes[a]);
    return out;
  }
};

inline std::vector<SymmetryBlock> laplacian_blocks(const VertexSet& vs) {
  const OrbitTable t = orbit_table(vs);
  const auto delta = static_cast<long>(degree(vs.composition()));
  std::vector<SymmetryBlock> blocks;
  std::vector<long> slot(t.orbits());
  for (std::uint32_t s = 0; s < t.group.order(); ++s) {
    SymmetryBlock blk;
    blk.character = s;
    std::fill(slot.begin(), slot.end(), -1);
    for (std::size_t o = 0; o < t.orbits(); ++o) {
      if (!character_trivial_on(s, t.stabilizers[o])) continue;
      slot[o] = static_cast<long>(blk.orbits.size());
      blk.orbits.push_back(o);
      blk.sizes.push_back(t.orbit_size(o));
    }
    if (blk.orbits.empty()) continue;
    const std::size_t d = blk.orbits.size();
    std::vector<long> row(d);
    blk.matrix = RationalMatrix(d, d);
    for (std::size_t a = 0; a < d; ++a) {
      std::fill(row.begin(), row.end(), 0);
      row[a] = delta;
      vs.for_each_neighbor(t.representative[blk.orbits[a]],
                           [&](std::size_t, std::size_t, std::size_t y) {
                             long b = slot[t.orbit_of[y]];
                             if (b < 0) return;
                             row[b] -= (std::popcount(s & t.element_of[y]) & 1)
                                           ? -1
                                           : 1;
                           });
      for (std::size_t b = 0; b < d; ++b) blk.matrix(a, b) = row[b];
    }
    blocks.push_back(std::move(blk));
  }
  return blocks;
}

/// Floating Laplacian spectrum assembled from the block spectra.
inline Spectrum block_spectrum(const std::vector<SymmetryBlock>& blocks,
                               const Limits& limits) {
  std::vector<double> values;
  for (const auto& b : blocks) {
    require(b.dimension() <= limits.dense_cap, ErrorCode::BudgetExceeded,
            "symmetry block of dimension " + std::to_string(b.dimension()) +
                " exceeds the dense cap");
    auto ev = symmetric_eigenvalues(b.symmetrized());
    values.insert(values.end(), ev.begin(), ev.end());
  }
  return cluster(std::move(values), limits.tolerance, OperatorKind::Laplacian);
}

/// Exact nullity of L - lambda I as the sum of block nullities. The value is
/// exact when every block fits the fraction-free path; otherwise it is an
/// upper bound (see Nullity).
inline Nullity block_nullity(const std::vector<SymmetryBlock>& blocks,
                             const mpq_class& lambda, const Limits& limits) {
  Nullity total;
  for (const auto& b : blocks) {
    Nullity nl = nullity_at(b.matrix, lambda, limits);
    total.value += nl.value;
    if (!nl.exact()) total.method = NullityMethod::Modular;
  }
  return total;
}

/// Exact certificate that every eigenvalue of L on the orthogonal complement
/// of the constants is at least lambda: each block of L - lambda (I - J/|V|)
/// is positive semi-definite in its orbit-weighted form. Only the trivial
/// character contains the constants.
inline bool block_lower_bound(const std::vector<SymmetryBlock>& blocks,
                              const mpq_class& lambda, std::size_t vertices) {
  for (const auto& b : blocks) {
    RationalMatrix w = b.weighted();
    for (std::size_t a = 0; a < b.dimension(); ++a)
      w(a, a) -= lambda * static_cast<unsigned long>(b.sizes[a]);
    if (b.character == 0) {
      const mpq_class scale = lambda / static_cast<unsigned long>(vertices);
      for (std::size_t a = 0; a < b.dimension(); ++a)
        for (std::size_t c = 0; c < b.dimension(); ++c)
          w(a, c) += scale * static_cast<unsigned long>(b.sizes[a]) *
                     static_cast<unsigned long>(b.sizes[c]);
    }
    if (!is_positive_semidefinite(std::move(w))) return false;
  }
  return true;
}

}  // namespace multislice
