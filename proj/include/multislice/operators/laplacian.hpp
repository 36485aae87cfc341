#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <ostream>
#include <vector>

#include <Eigen/Dense>

#include "multislice/core/composition.hpp"
#include "multislice/core/vertex.hpp"
#include "multislice/operators/functions.hpp"

namespace multislice {

enum class Representation { Dense, Sparse };

/// Graph Laplacian of G_{N,k}: degree on the diagonal, -1 for each pair of
/// adjacent vertices. Adjacency is always kept in compressed rows; a dense
/// integer copy is materialized below Limits::dense_threshold vertices.
class LaplacianMatrix {
 public:
  LaplacianMatrix(const VertexSet& vs, const Limits& limits = {})
      : k_(vs.composition()), degree_(multislice::degree(vs.composition())) {
    const std::size_t n = vs.size();
    offsets_.reserve(n + 1);
    offsets_.push_back(0);
    columns_.reserve(n * degree_);
    std::vector<std::uint32_t> row;
    for (std::size_t v = 0; v < n; ++v) {
      row.clear();
      vs.for_each_neighbor(v, [&](std::size_t, std::size_t, std::size_t w) {
        row.push_back(static_cast<std::uint32_t>(w));
      });
      std::sort(row.begin(), row.end());
      columns_.insert(columns_.end(), row.begin(), row.end());
      offsets_.push_back(columns_.size());
    }
    if (n < limits.dense_threshold) {
      Eigen::MatrixXi d = Eigen::MatrixXi::Zero(n, n);
      for (std::size_t v = 0; v < n; ++v) {
        d(v, v) = static_cast<int>(degree_);
        for (std::uint32_t w : neighbors(v)) d(v, w) = -1;
      }
      dense_ = std::move(d);
    }
  }

  const Composition& composition() const noexcept { return k_; }
  std::size_t dimension() const noexcept { return offsets_.size() - 1; }
  std::uint64_t degree() const noexcept { return degree_; }
  Representation representation() const noexcept {
    return dense_ ? Representation::Dense : Representation::Sparse;
  }

  std::span<const std::uint32_t> neighbors(std::size_t v) const {
    return {columns_.data() + offsets_[v], offsets_[v + 1] - offsets_[v]};
  }

  int entry(std::size_t i, std::size_t j) const {
    if (dense_) return (*dense_)(i, j);
    if (i == j) return static_cast<int>(degree_);
    auto nb = neighbors(i);
    return std::binary_search(nb.begin(), nb.end(),
                              static_cast<std::uint32_t>(j))
               ? -1
               : 0;
  }

  const std::optional<Eigen::MatrixXi>& dense() const noexcept {
    return dense_;
  }

  /// Dense floating copy; throws above the dense cap.
  Eigen::MatrixXd to_dense(std::size_t cap) const {
    const std::size_t n = dimension();
    require(n <= cap, ErrorCode::BudgetExceeded,
            "Laplacian of dimension " + std::to_string(n) +
                " exceeds the dense cap " + std::to_string(cap));
    Eigen::MatrixXd d = Eigen::MatrixXd::Zero(n, n);
    for (std::size_t v = 0; v < n; ++v) {
      d(v, v) = static_cast<double>(degree_);
      for (std::uint32_t w : neighbors(v)) d(v, w) = -1.0;
    }
    return d;
  }

  /// Lf for a function given by rank.
  template <Scalar S>
  VertexFunction<S> apply(const VertexFunction<S>& f) const {
    require(f.composition == k_ && f.size() == dimension(),
            ErrorCode::DimensionMismatch,
            "function does not live on " + k_.to_string());
    std::vector<S> out(f.size());
    for (std::size_t v = 0; v < f.size(); ++v) {
      S acc(0);
      for (std::uint32_t w : neighbors(v)) acc += f[v] - f[w];
      out[v] = acc;
    }
    return VertexFunction<S>(k_, std::move(out));
  }

  /// Coordinate text, one "row col value" line per non-zero.
  void write_coordinate(std::ostream& os) const {
    for (std::size_t v = 0; v < dimension(); ++v) {
      std::vector<std::pair<std::size_t, int>> row;
      row.emplace_back(v, static_cast<int>(degree_));
      for (std::uint32_t w : neighbors(v)) row.emplace_back(w, -1);
      std::sort(row.begin(), row.end());
      for (auto [c, val] : row) os << v << ' ' << c << ' ' << val << '\n';
    }
  }

 private:
  Composition k_;
  std::uint64_t degree_;
  std::vector<std::size_t> offsets_;
  std::vector<std::uint32_t> columns_;
  std::optional<Eigen::MatrixXi> dense_;
};

inline LaplacianMatrix laplacian(const Composition& k,
                                 const Limits& limits = {}) {
  return LaplacianMatrix(VertexSet(k, limits), limits);
}

/// Matrix-free (Lf)(x) = sum over adjacent y of (f(x) - f(y)), computing
/// neighbors by transposition on the fly.
template <Scalar S>
VertexFunction<S> apply_laplacian(const VertexSet& vs,
                                  const VertexFunction<S>& f) {
  require_matches(vs, f);
  std::vector<S> out(f.size());
  for (std::size_t v = 0; v < vs.size(); ++v) {
    S acc(0);
    vs.for_each_neighbor(v, [&](std::size_t, std::size_t, std::size_t w) {
      acc += f[v] - f[w];
    });
    out[v] = acc;
  }
  return VertexFunction<S>(vs.composition(), std::move(out));
}

template <Scalar S>
VertexFunction<S> apply_laplacian(const Composition& k,
                                  const VertexFunction<S>& f,
                                  const Limits& limits = {}) {
  return apply_laplacian(VertexSet(k, limits), f);
}

}  // namespace multislice
