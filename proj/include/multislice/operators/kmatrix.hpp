#pragma once

#include <cstddef>

#include <gmpxx.h>

#include "multislice/core/composition.hpp"
#include "multislice/core/vertex.hpp"
#include "multislice/linalg/exact.hpp"
#include "multislice/operators/functions.hpp"

namespace multislice {

/// K on the levels: (N-1) K_{m,n} = k_n - [m = n].
inline RationalMatrix k_matrix(const Composition& k) {
  const std::size_t n = k.total();
  require(n >= 2, ErrorCode::Precondition, "K needs N >= 2");
  const std::size_t r = k.levels();
  RationalMatrix out(r, r);
  const mpq_class scale(1, static_cast<unsigned long>(n - 1));
  for (std::size_t a = 0; a < r; ++a)
    for (std::size_t b = 0; b < r; ++b) {
      long num = static_cast<long>(k.count(b)) - (a == b ? 1 : 0);
      out(a, b) = scale * num;
    }
  return out;
}

/// The nu-weighted form Q[a][b] = <e_a, K e_b>_nu = nu_a K_{a,b}.
inline RationalMatrix k_form(const Composition& k) {
  RationalMatrix kk = k_matrix(k);
  const Measures ms = measures(k);
  for (std::size_t a = 0; a < kk.rows(); ++a)
    for (std::size_t b = 0; b < kk.cols(); ++b) kk(a, b) *= ms.nu[a];
  return kk;
}

/// The same form summed over the vertex set:
/// Q[a][b] = sum_x [x_1 = a][x_N = b] mu(x).
inline RationalMatrix k_form_by_enumeration(const VertexSet& vs) {
  const auto& k = vs.composition();
  const std::size_t r = k.levels();
  const std::size_t last = vs.particles() - 1;
  std::vector<unsigned long> counts(r * r, 0);
  for (std::size_t v = 0; v < vs.size(); ++v) {
    auto x = vs[v];
    ++counts[x[0] * r + x[last]];
  }
  RationalMatrix out(r, r);
  const mpq_class mu = mpq_class(1) / mpq_class(cardinality(k));
  for (std::size_t a = 0; a < r; ++a)
    for (std::size_t b = 0; b < r; ++b) out(a, b) = mu * counts[a * r + b];
  return out;
}

/// M: the N x N matrix with zero diagonal and ones elsewhere.
inline RationalMatrix m_matrix(std::size_t n) {
  RationalMatrix out(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) out(i, j) = i == j ? 0 : 1;
  return out;
}

}  // namespace multislice
