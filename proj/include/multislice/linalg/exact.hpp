#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <gmpxx.h>

#include "multislice/error.hpp"
#include "multislice/limits.hpp"

namespace multislice {

/// Dense row-major matrix over the rationals. Small operators (K, M, M (x) K,
/// symmetry blocks) are stored this way for exact work.
class RationalMatrix {
 public:
  RationalMatrix() = default;
  RationalMatrix(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), data_(rows * cols, mpq_class(0)) {}

  static RationalMatrix identity(std::size_t n) {
    RationalMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
    return m;
  }

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  mpq_class& operator()(std::size_t i, std::size_t j) {
    return data_[i * cols_ + j];
  }
  const mpq_class& operator()(std::size_t i, std::size_t j) const {
    return data_[i * cols_ + j];
  }

  bool is_square() const noexcept { return rows_ == cols_; }

  bool is_symmetric() const {
    if (!is_square()) return false;
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = i + 1; j < cols_; ++j)
        if ((*this)(i, j) != (*this)(j, i)) return false;
    return true;
  }

  /// this - lambda I.
  RationalMatrix shifted(const mpq_class& lambda) const {
    require(is_square(), ErrorCode::DimensionMismatch,
            "shift needs a square matrix");
    RationalMatrix out = *this;
    for (std::size_t i = 0; i < rows_; ++i) out(i, i) -= lambda;
    return out;
  }

  RationalMatrix operator*(const RationalMatrix& o) const {
    require(cols_ == o.rows_, ErrorCode::DimensionMismatch,
            "matrix product dimension mismatch");
    RationalMatrix out(rows_, o.cols_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t l = 0; l < cols_; ++l) {
        const mpq_class& a = (*this)(i, l);
        if (sgn(a) == 0) continue;
        for (std::size_t j = 0; j < o.cols_; ++j) out(i, j) += a * o(l, j);
      }
    return out;
  }

  std::vector<mpq_class> operator*(const std::vector<mpq_class>& v) const {
    require(cols_ == v.size(), ErrorCode::DimensionMismatch,
            "matrix-vector dimension mismatch");
    std::vector<mpq_class> out(rows_, mpq_class(0));
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) out[i] += (*this)(i, j) * v[j];
    return out;
  }

  friend bool operator==(const RationalMatrix&,
                         const RationalMatrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<mpq_class> data_;
};

inline RationalMatrix kronecker(const RationalMatrix& a,
                                const RationalMatrix& b) {
  RationalMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j)
      for (std::size_t p = 0; p < b.rows(); ++p)
        for (std::size_t q = 0; q < b.cols(); ++q)
          out(i * b.rows() + p, j * b.cols() + q) = a(i, j) * b(p, q);
  return out;
}

namespace detail {

/// Rows scaled by the lcm of their denominators; the row space is unchanged.
inline std::vector<mpz_class> integer_rows(const RationalMatrix& a) {
  std::vector<mpz_class> out(a.rows() * a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    mpz_class l = 1;
    for (std::size_t j = 0; j < a.cols(); ++j)
      mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), a(i, j).get_den_mpz_t());
    for (std::size_t j = 0; j < a.cols(); ++j)
      out[i * a.cols() + j] = a(i, j).get_num() * (l / a(i, j).get_den());
  }
  return out;
}

}  // namespace detail

/// Rank by fraction-free (Bareiss) elimination over the integers. Every
/// division is exact, so intermediate entries stay integral minors.
inline std::size_t bareiss_rank(std::vector<mpz_class> a, std::size_t rows,
                                std::size_t cols) {
  mpz_class prev = 1;
  std::size_t rank = 0;
  mpz_class t;
  for (std::size_t c = 0; c < cols && rank < rows; ++c) {
    std::size_t piv = rows;
    for (std::size_t i = rank; i < rows; ++i)
      if (sgn(a[i * cols + c]) != 0) {
        piv = i;
        break;
      }
    if (piv == rows) continue;
    if (piv != rank)
      for (std::size_t j = 0; j < cols; ++j)
        std::swap(a[piv * cols + j], a[rank * cols + j]);
    const mpz_class& p = a[rank * cols + c];
    for (std::size_t i = rank + 1; i < rows; ++i) {
      mpz_class lead = a[i * cols + c];
      for (std::size_t j = c + 1; j < cols; ++j) {
        mpz_class& e = a[i * cols + j];
        e *= p;
        t = lead * a[rank * cols + j];
        e -= t;
        mpz_divexact(e.get_mpz_t(), e.get_mpz_t(), prev.get_mpz_t());
      }
      a[i * cols + c] = 0;
    }
    prev = p;
    ++rank;
  }
  return rank;
}

inline std::size_t bareiss_rank(const RationalMatrix& a) {
  return bareiss_rank(detail::integer_rows(a), a.rows(), a.cols());
}

/// Rank over the prime field F_p. For an integer matrix this never exceeds
/// the rank over Q, so it yields a rigorous upper bound on the nullity.
inline std::size_t modular_rank(const std::vector<mpz_class>& a,
                                std::size_t rows, std::size_t cols,
                                std::uint64_t p) {
  std::vector<std::uint64_t> m(rows * cols);
  mpz_class mp(static_cast<unsigned long>(p));
  mpz_class r;
  for (std::size_t i = 0; i < a.size(); ++i) {
    mpz_fdiv_r(r.get_mpz_t(), a[i].get_mpz_t(), mp.get_mpz_t());
    m[i] = r.get_ui();
  }
  auto mulmod = [p](std::uint64_t x, std::uint64_t y) {
    return static_cast<std::uint64_t>((unsigned __int128)x * y % p);
  };
  auto inverse = [&](std::uint64_t x) {
    std::uint64_t result = 1, e = p - 2;
    while (e) {
      if (e & 1) result = mulmod(result, x);
      x = mulmod(x, x);
      e >>= 1;
    }
    return result;
  };
  std::size_t rank = 0;
  for (std::size_t c = 0; c < cols && rank < rows; ++c) {
    std::size_t piv = rows;
    for (std::size_t i = rank; i < rows; ++i)
      if (m[i * cols + c]) {
        piv = i;
        break;
      }
    if (piv == rows) continue;
    if (piv != rank)
      for (std::size_t j = 0; j < cols; ++j)
        std::swap(m[piv * cols + j], m[rank * cols + j]);
    const std::uint64_t inv = inverse(m[rank * cols + c]);
    const std::uint64_t* prow = &m[rank * cols];
    for (std::size_t i = rank + 1; i < rows; ++i) {
      std::uint64_t* row = &m[i * cols];
      if (!row[c]) continue;
      const std::uint64_t f = mulmod(p - row[c], inv);
      for (std::size_t j = c; j < cols; ++j)
        row[j] = (row[j] + mulmod(f, prow[j])) % p;
    }
    ++rank;
  }
  return rank;
}

enum class NullityMethod { Bareiss, Modular };

inline std::string_view to_string(NullityMethod m) {
  return m == NullityMethod::Bareiss ? "bareiss" : "modular_upper_bound";
}

/// Nullity of a square rational matrix. With Bareiss the value is exact;
/// with the modular route it is an upper bound (exact unless both primes
/// divide the same non-zero minor).
struct Nullity {
  std::size_t value = 0;
  NullityMethod method = NullityMethod::Bareiss;
  bool exact() const noexcept { return method == NullityMethod::Bareiss; }
};

inline constexpr std::uint64_t kPrimeA = 2147483647ull;  // 2^31 - 1
inline constexpr std::uint64_t kPrimeB = 1000000007ull;

inline Nullity nullity(const RationalMatrix& a, const Limits& limits = {}) {
  require(a.is_square(), ErrorCode::DimensionMismatch,
          "nullity needs a square matrix");
  const std::size_t n = a.rows();
  require(n <= limits.exact_cap, ErrorCode::BudgetExceeded,
          "matrix of dimension " + std::to_string(n) +
              " exceeds the exact elimination cap " +
              std::to_string(limits.exact_cap));
  auto ints = detail::integer_rows(a);
  if (n <= limits.bareiss_limit)
    return {n - bareiss_rank(std::move(ints), n, n), NullityMethod::Bareiss};
  std::size_t r = std::max(modular_rank(ints, n, n, kPrimeA),
                           modular_rank(ints, n, n, kPrimeB));
  return {n - r, NullityMethod::Modular};
}

/// Nullity of a - lambda I.
inline Nullity nullity_at(const RationalMatrix& a, const mpq_class& lambda,
                          const Limits& limits = {}) {
  return nullity(a.shifted(lambda), limits);
}

/// Exact positive semi-definiteness of a symmetric rational matrix by
/// symmetric elimination on positive diagonal pivots.
inline bool is_positive_semidefinite(RationalMatrix a) {
  require(a.is_symmetric(), ErrorCode::InvalidArgument,
          "positive semi-definiteness test needs a symmetric matrix");
  const std::size_t n = a.rows();
  std::vector<char> active(n, 1);
  for (std::size_t step = 0; step < n; ++step) {
    std::size_t piv = n;
    for (std::size_t i = 0; i < n; ++i) {
      if (!active[i]) continue;
      int s = sgn(a(i, i));
      if (s < 0) return false;
      if (s == 0) {
        for (std::size_t j = 0; j < n; ++j)
          if (active[j] && sgn(a(i, j)) != 0) return false;
        continue;
      }
      if (piv == n) piv = i;
    }
    if (piv == n) return true;
    active[piv] = 0;
    const mpq_class d = a(piv, piv);
    for (std::size_t i = 0; i < n; ++i) {
      if (!active[i] || sgn(a(i, piv)) == 0) continue;
      const mpq_class f = a(i, piv) / d;
      for (std::size_t j = 0; j < n; ++j)
        if (active[j]) a(i, j) -= f * a(piv, j);
    }
  }
  return true;
}

}  // namespace multislice
