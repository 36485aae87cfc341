#pragma once

#include <cstddef>
#include <vector>

#include <gmpxx.h>

#include "multislice/core/composition.hpp"
#include "multislice/core/vertex.hpp"
#include "multislice/operators/functions.hpp"
#include "multislice/operators/projection.hpp"

namespace multislice {

namespace detail {

template <Scalar S>
S uniform_weight(const Composition& k) {
  return from_rational<S>(mpq_class(1) / mpq_class(cardinality(k)));
}

template <Scalar S>
S sum_squared_differences(const VertexSet& vs, const VertexFunction<S>& f) {
  S sum(0);
  for (std::size_t v = 0; v < vs.size(); ++v)
    vs.for_each_neighbor(v, [&](std::size_t, std::size_t, std::size_t w) {
      S d = f[w] - f[v];
      sum += d * d;
    });
  return sum;
}

}  // namespace detail

/// (1/2) sum_x sum_{i<j} (f(x) - f(pi_ij x))^2 mu, which equals <f, L f>_mu.
template <Scalar S>
S dirichlet_graph(const VertexSet& vs, const VertexFunction<S>& f) {
  require_matches(vs, f);
  return detail::sum_squared_differences(vs, f) *
         detail::uniform_weight<S>(vs.composition()) / S(2);
}

/// (1/(N-1)) sum_x sum_{i<j} (f(pi_ij x) - f(x))^2 mu(x).
template <Scalar S>
S dirichlet_scaled(const VertexSet& vs, const VertexFunction<S>& f) {
  require_matches(vs, f);
  const std::size_t n = vs.particles();
  require(n >= 2, ErrorCode::Precondition, "scaled Dirichlet form needs N >= 2");
  return detail::sum_squared_differences(vs, f) *
         detail::uniform_weight<S>(vs.composition()) /
         S(static_cast<unsigned long>(n - 1));
}

/// D^{l,m}: (1/(N-2)) sum over {x : x_l = m} of sum_{i<j, i,j != l}
/// (f(pi_ij x) - f(x))^2, weighted by mu_{N-1,k^{(m)}}.
template <Scalar S>
S dirichlet_restricted(const VertexSet& vs, const VertexFunction<S>& f,
                       std::size_t position, std::size_t m) {
  require_matches(vs, f);
  const auto& k = vs.composition();
  const std::size_t n = k.total();
  require(n >= 3, ErrorCode::Precondition,
          "restricted Dirichlet form needs N >= 3");
  require(position < n, ErrorCode::InvalidArgument, "position out of range");
  require(m < k.levels() && k.count(m) >= 1, ErrorCode::Precondition,
          "restricted Dirichlet form needs k_m >= 1");
  S sum(0);
  for (std::size_t v = 0; v < vs.size(); ++v) {
    if (vs[v][position] != m) continue;
    vs.for_each_neighbor(v, [&](std::size_t i, std::size_t j, std::size_t w) {
      if (i == position || j == position) return;
      S d = f[w] - f[v];
      sum += d * d;
    });
  }
  return sum * detail::uniform_weight<S>(k.decremented(m)) /
         S(static_cast<unsigned long>(n - 2));
}

/// Largest absolute residual over vertices of the per-vertex averaging
/// identity
///   C(N,2)^{-1} sum_{i<j} d_ij^2
///     = (1/N) sum_l C(N-1,2)^{-1} sum_{i<j, i,j != l} d_ij^2,
/// with d_ij = f(pi_ij x) - f(x). Needs N >= 3.
template <Scalar S>
S averaging_residual(const VertexSet& vs, const VertexFunction<S>& f) {
  require_matches(vs, f);
  const std::size_t n = vs.particles();
  require(n >= 3, ErrorCode::Precondition, "averaging identity needs N >= 3");
  const S pairs(static_cast<unsigned long>(n * (n - 1) / 2));
  const S pairs_minus(static_cast<unsigned long>((n - 1) * (n - 2) / 2));
  std::vector<S> d2(n * n);
  S worst(0);
  for (std::size_t v = 0; v < vs.size(); ++v) {
    std::fill(d2.begin(), d2.end(), S(0));
    S total(0);
    vs.for_each_neighbor(v, [&](std::size_t i, std::size_t j, std::size_t w) {
      S d = f[w] - f[v];
      d2[i * n + j] = d * d;
      total += d2[i * n + j];
    });
    S rhs(0);
    for (std::size_t l = 0; l < n; ++l) {
      S part(0);
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
          if (i != l && j != l) part += d2[i * n + j];
      rhs += part / pairs_minus;
    }
    rhs /= S(static_cast<unsigned long>(n));
    S r = abs_value(S(total / pairs - rhs));
    if (r > worst) worst = r;
  }
  return worst;
}

/// D^{l,m}(f,f) - D^{l,m}(f - P_l f, f - P_l f).
template <Scalar S>
S shift_residual(const VertexSet& vs, const VertexFunction<S>& f,
                 std::size_t position, std::size_t m) {
  auto centered = f - project_onto_coordinate(vs, f, position);
  return dirichlet_restricted(vs, f, position, m) -
         dirichlet_restricted(vs, centered, position, m);
}

/// D(f,f) - (1/N) sum_l (N/(N-1)) sum_m D^{l,m}(f - P_l f, f - P_l f) k_m/N.
template <Scalar S>
S decomposition_residual(const VertexSet& vs, const VertexFunction<S>& f) {
  const auto& k = vs.composition();
  const std::size_t n = k.total();
  const S big_n(static_cast<unsigned long>(n));
  S rhs(0);
  for (std::size_t l = 0; l < n; ++l) {
    auto centered = f - project_onto_coordinate(vs, f, l);
    S inner_sum(0);
    for (std::size_t m = 0; m < k.levels(); ++m) {
      if (k.count(m) == 0) continue;
      inner_sum += dirichlet_restricted(vs, centered, l, m) *
                   S(static_cast<unsigned long>(k.count(m))) / big_n;
    }
    rhs += big_n / S(static_cast<unsigned long>(n - 1)) * inner_sum;
  }
  rhs /= big_n;
  return dirichlet_scaled(vs, f) - rhs;
}

}  // namespace multislice
