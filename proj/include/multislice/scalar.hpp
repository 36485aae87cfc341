#pragma once

#include <cmath>
#include <cstdint>
#include <random>
#include <string_view>
#include <type_traits>

#include <gmpxx.h>

namespace multislice {

/// Arithmetic carried by a function or operator evaluation.
enum class ScalarKind { Exact, Floating };

inline std::string_view to_string(ScalarKind kind) {
  return kind == ScalarKind::Exact ? "exact" : "float";
}

template <typename S>
concept Scalar = std::is_same_v<S, mpq_class> || std::is_same_v<S, double>;

template <Scalar S>
inline constexpr ScalarKind scalar_kind =
    std::is_same_v<S, mpq_class> ? ScalarKind::Exact : ScalarKind::Floating;

inline double to_double(const mpq_class& q) { return q.get_d(); }
inline double to_double(double x) { return x; }

inline bool is_zero(const mpq_class& q) { return sgn(q) == 0; }
inline bool is_zero(double x) { return x == 0.0; }

inline mpq_class abs_value(const mpq_class& q) { return abs(q); }
inline double abs_value(double x) { return std::fabs(x); }

/// Converts an exact rational into the requested scalar type.
template <Scalar S>
S from_rational(const mpq_class& q) {
  if constexpr (std::is_same_v<S, mpq_class>) {
    return q;
  } else {
    return q.get_d();
  }
}

/// Small random rationals n/d with |n| <= 9 and 1 <= d <= 7, for identity
/// checks in exact arithmetic.
inline mpq_class random_rational(std::mt19937_64& rng) {
  std::uniform_int_distribution<long> num(-9, 9);
  std::uniform_int_distribution<long> den(1, 7);
  const long a = num(rng);
  const long b = den(rng);
  mpq_class q(a, b);
  q.canonicalize();
  return q;
}

}  // namespace multislice
