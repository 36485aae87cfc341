#pragma once

#include <cstddef>
#include <random>
#include <vector>

#include <gmpxx.h>

#include "multislice/core/composition.hpp"
#include "multislice/core/vertex.hpp"
#include "multislice/scalar.hpp"

namespace multislice {

/// A function on V_{N,k}, stored by vertex rank. The scalar type doubles as
/// the exact/floating tag.
template <Scalar S>
struct VertexFunction {
  static constexpr ScalarKind kind = scalar_kind<S>;

  Composition composition;
  std::vector<S> values;

  VertexFunction(Composition k, std::vector<S> v)
      : composition(std::move(k)), values(std::move(v)) {
    require(mpz_class(static_cast<unsigned long>(values.size())) ==
                cardinality(composition),
            ErrorCode::DimensionMismatch,
            "vertex function length does not match |V| for " +
                composition.to_string());
  }

  static VertexFunction zeros(const VertexSet& vs) {
    return VertexFunction(vs.composition(), std::vector<S>(vs.size(), S(0)));
  }
  static VertexFunction constant(const VertexSet& vs, const S& c) {
    return VertexFunction(vs.composition(), std::vector<S>(vs.size(), c));
  }

  std::size_t size() const noexcept { return values.size(); }
  S& operator[](std::size_t i) { return values[i]; }
  const S& operator[](std::size_t i) const { return values[i]; }

  bool is_zero() const {
    for (const auto& v : values)
      if (!multislice::is_zero(v)) return false;
    return true;
  }

  bool is_constant() const {
    for (const auto& v : values)
      if (v != values.front()) return false;
    return true;
  }

  VertexFunction& operator-=(const VertexFunction& o) {
    check_same(o);
    for (std::size_t i = 0; i < values.size(); ++i) values[i] -= o.values[i];
    return *this;
  }
  VertexFunction& operator+=(const VertexFunction& o) {
    check_same(o);
    for (std::size_t i = 0; i < values.size(); ++i) values[i] += o.values[i];
    return *this;
  }
  VertexFunction& operator*=(const S& c) {
    for (auto& v : values) v *= c;
    return *this;
  }
  friend VertexFunction operator-(VertexFunction a, const VertexFunction& b) {
    return a -= b;
  }
  friend VertexFunction operator+(VertexFunction a, const VertexFunction& b) {
    return a += b;
  }
  friend VertexFunction operator*(const S& c, VertexFunction a) {
    return a *= c;
  }
  friend bool operator==(const VertexFunction&,
                         const VertexFunction&) = default;

  void check_same(const VertexFunction& o) const {
    require(composition == o.composition && values.size() == o.values.size(),
            ErrorCode::DimensionMismatch,
            "vertex functions live on different multislices");
  }
};

template <Scalar S>
void require_matches(const VertexSet& vs, const VertexFunction<S>& f) {
  require(f.composition == vs.composition() && f.size() == vs.size(),
          ErrorCode::DimensionMismatch,
          "function on " + f.composition.to_string() +
              " applied on multislice " + vs.composition().to_string());
}

/// A function on the r levels, g(e_0), ..., g(e_{r-1}).
template <Scalar S>
struct LevelFunction {
  std::vector<S> values;

  std::size_t size() const noexcept { return values.size(); }
  const S& operator()(std::size_t m) const { return values.at(m); }

  /// sum_m k_m g(e_m); zero exactly when g lies in the K-space of k.
  S weighted_sum(const Composition& k) const {
    require(values.size() == k.levels(), ErrorCode::DimensionMismatch,
            "level function length must equal the number of levels");
    S sum(0);
    for (std::size_t m = 0; m < values.size(); ++m)
      sum += values[m] * S(static_cast<unsigned long>(k.count(m)));
    return sum;
  }

  bool in_kspace(const Composition& k) const {
    return multislice::is_zero(weighted_sum(k));
  }

  friend bool operator==(const LevelFunction&, const LevelFunction&) = default;
};

/// f(x) = g(x_l).
template <Scalar S>
VertexFunction<S> lift_at(const VertexSet& vs, const LevelFunction<S>& g,
                          std::size_t position) {
  const auto& k = vs.composition();
  require(g.size() == k.levels(), ErrorCode::DimensionMismatch,
          "level function length must equal the number of levels");
  require(position < k.total(), ErrorCode::InvalidArgument,
          "position out of range");
  std::vector<S> values(vs.size());
  for (std::size_t v = 0; v < vs.size(); ++v) values[v] = g.values[vs[v][position]];
  return VertexFunction<S>(k, std::move(values));
}

/// Uniform measure mu_{N,k} and level marginal nu_{N,k}(m) = k_m / N.
struct Measures {
  mpq_class mu;
  std::vector<mpq_class> nu;
};

inline Measures measures(const Composition& k) {
  Measures out;
  out.mu = mpq_class(1) / mpq_class(cardinality(k));
  for (std::size_t m = 0; m < k.levels(); ++m) {
    out.nu.emplace_back(static_cast<unsigned long>(k.count(m)),
                        static_cast<unsigned long>(k.total()));
    out.nu.back().canonicalize();
  }
  return out;
}

/// <f, g> in L^2(mu_{N,k}).
template <Scalar S>
S inner(const VertexFunction<S>& f, const VertexFunction<S>& g) {
  f.check_same(g);
  S sum(0);
  for (std::size_t i = 0; i < f.size(); ++i) sum += f[i] * g[i];
  return sum / S(static_cast<unsigned long>(f.size()));
}

template <Scalar S>
S norm_squared(const VertexFunction<S>& f) {
  return inner(f, f);
}

/// Random rational function on V_{N,k}, values n/d with small n and d.
inline VertexFunction<mpq_class> random_function(const VertexSet& vs,
                                                 std::mt19937_64& rng) {
  std::vector<mpq_class> values(vs.size());
  for (auto& v : values) v = random_rational(rng);
  return VertexFunction<mpq_class>(vs.composition(), std::move(values));
}

inline VertexFunction<double> to_double(const VertexFunction<mpq_class>& f) {
  std::vector<double> values(f.size());
  for (std::size_t i = 0; i < f.size(); ++i) values[i] = f[i].get_d();
  return VertexFunction<double>(f.composition, std::move(values));
}

}  // namespace multislice
