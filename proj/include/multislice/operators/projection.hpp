#pragma once

#include <cstddef>
#include <utility>
#include <vector>

#include <Eigen/Dense>
#include <gmpxx.h>

#include "multislice/core/composition.hpp"
#include "multislice/core/vertex.hpp"
#include "multislice/linalg/exact.hpp"
#include "multislice/operators/functions.hpp"

namespace multislice {

/// T_l: inserts level m at position l of a vertex of k^{(m)}, giving a vertex
/// of k whose l-th entry is m.
inline Vertex insert_at(const Vertex& x, std::size_t position, Level m,
                        const Composition& k) {
  require(m < k.levels(), ErrorCode::InvalidArgument, "level out of range");
  require(k.count(m) >= 1, ErrorCode::Precondition,
          "insert_at needs k_m >= 1 in the target composition");
  require(position < k.total(), ErrorCode::InvalidArgument,
          "insert position out of range");
  const Composition child = k.decremented(m);
  require(realizes(x.levels(), child), ErrorCode::DimensionMismatch,
          "vertex does not realize " + child.to_string());
  std::vector<Level> out(x.levels().begin(), x.levels().end());
  out.insert(out.begin() + static_cast<std::ptrdiff_t>(position), m);
  return Vertex(std::move(out));
}

/// Inverse of insert_at: removes position l and reports the removed level.
inline std::pair<Vertex, Level> delete_at(const Vertex& x,
                                          std::size_t position) {
  require(position < x.size(), ErrorCode::InvalidArgument,
          "delete position out of range");
  std::vector<Level> out(x.levels().begin(), x.levels().end());
  Level m = out[position];
  out.erase(out.begin() + static_cast<std::ptrdiff_t>(position));
  return {Vertex(std::move(out)), m};
}

/// mu_{N,k} = sum_m (k_m/N) mu_{N-1,k^{(m)}} pointwise on the pieces
/// {x : x_l = m}: 1/|V_k| = (k_m/N) / |V_{k^{(m)}}| for every m with k_m >= 1,
/// and the weights k_m/N sum to one.
inline bool measure_decomposition_check(const Composition& k) {
  require(k.total() >= 2, ErrorCode::Precondition,
          "measure decomposition needs N >= 2");
  const mpq_class mu = mpq_class(1) / mpq_class(cardinality(k));
  const auto n = static_cast<unsigned long>(k.total());
  mpq_class weights = 0;
  for (std::size_t m = 0; m < k.levels(); ++m) {
    if (k.count(m) == 0) continue;
    mpq_class w(static_cast<unsigned long>(k.count(m)), n);
    w.canonicalize();
    weights += w;
    const mpq_class child = mpq_class(1) / mpq_class(cardinality(k.decremented(m)));
    if (mu != w * child) return false;
  }
  return weights == 1;
}

/// P_l f: on {x : x_l = m}, the average of f over that set.
template <Scalar S>
VertexFunction<S> project_onto_coordinate(const VertexSet& vs,
                                          const VertexFunction<S>& f,
                                          std::size_t position) {
  require_matches(vs, f);
  const auto& k = vs.composition();
  require(position < k.total(), ErrorCode::InvalidArgument,
          "position out of range");
  std::vector<S> sums(k.levels(), S(0));
  std::vector<unsigned long> counts(k.levels(), 0);
  for (std::size_t v = 0; v < vs.size(); ++v) {
    Level m = vs[v][position];
    sums[m] += f[v];
    ++counts[m];
  }
  for (std::size_t m = 0; m < k.levels(); ++m)
    if (counts[m]) sums[m] /= S(counts[m]);
  std::vector<S> out(vs.size());
  for (std::size_t v = 0; v < vs.size(); ++v) out[v] = sums[vs[v][position]];
  return VertexFunction<S>(k, std::move(out));
}

/// P f = (1/N) sum_l P_l f.
template <Scalar S>
VertexFunction<S> p_operator(const VertexSet& vs, const VertexFunction<S>& f) {
  require_matches(vs, f);
  const std::size_t n = vs.particles();
  auto out = VertexFunction<S>::zeros(vs);
  for (std::size_t l = 0; l < n; ++l) out += project_onto_coordinate(vs, f, l);
  out *= S(1) / S(static_cast<unsigned long>(n));
  return out;
}

/// Matrix of P in the vertex basis:
/// P[x][y] = (1/N) sum_l [x_l = y_l] / |{z : z_l = x_l}|. Symmetric.
inline Eigen::MatrixXd p_matrix(const VertexSet& vs, std::size_t cap) {
  const std::size_t n = vs.size();
  require(n <= cap, ErrorCode::BudgetExceeded,
          "P matrix of dimension " + std::to_string(n) +
              " exceeds the dense cap " + std::to_string(cap));
  const auto& k = vs.composition();
  const std::size_t N = k.total();
  std::vector<double> piece(k.levels(), 0.0);
  for (std::size_t m = 0; m < k.levels(); ++m)
    if (k.count(m) > 0) piece[m] = cardinality(k.decremented(m)).get_d();
  Eigen::MatrixXd p = Eigen::MatrixXd::Zero(n, n);
  for (std::size_t x = 0; x < n; ++x) {
    auto vx = vs[x];
    for (std::size_t y = x; y < n; ++y) {
      auto vy = vs[y];
      double s = 0;
      for (std::size_t l = 0; l < N; ++l)
        if (vx[l] == vy[l]) s += 1.0 / piece[vx[l]];
      p(x, y) = p(y, x) = s / static_cast<double>(N);
    }
  }
  return p;
}

/// The same matrix over the rationals, for exact eigenvalue certificates.
inline RationalMatrix p_matrix_exact(const VertexSet& vs, std::size_t cap) {
  const std::size_t n = vs.size();
  require(n <= cap, ErrorCode::BudgetExceeded,
          "P matrix of dimension " + std::to_string(n) +
              " exceeds the exact cap " + std::to_string(cap));
  const auto& k = vs.composition();
  const std::size_t N = k.total();
  std::vector<mpq_class> inv(k.levels(), mpq_class(0));
  for (std::size_t m = 0; m < k.levels(); ++m)
    if (k.count(m) > 0)
      inv[m] = mpq_class(1) / mpq_class(cardinality(k.decremented(m)) *
                                        static_cast<unsigned long>(N));
  RationalMatrix p(n, n);
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = 0; y < n; ++y)
      for (std::size_t l = 0; l < N; ++l)
        if (vs[x][l] == vs[y][l]) p(x, y) += inv[vs[x][l]];
  return p;
}

}  // namespace multislice
