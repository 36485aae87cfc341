#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Dense>
#include <gmpxx.h>

#include "multislice/error.hpp"
#include "multislice/linalg/exact.hpp"
#include "multislice/limits.hpp"

namespace multislice {

enum class OperatorKind { Laplacian, Dirichlet, P, K, MK, Other };

inline std::string_view to_string(OperatorKind op) {
  switch (op) {
    case OperatorKind::Laplacian: return "laplacian";
    case OperatorKind::Dirichlet: return "dirichlet";
    case OperatorKind::P: return "P";
    case OperatorKind::K: return "K";
    case OperatorKind::MK: return "M_kron_K";
    case OperatorKind::Other: return "other";
  }
  return "other";
}

struct Eigenvalue {
  double value = 0;
  std::size_t multiplicity = 0;
  /// Set when the eigenvalue and its multiplicity were certified exactly.
  std::optional<mpq_class> exact;
};

/// Eigenvalues grouped with multiplicities, ascending.
struct Spectrum {
  std::vector<Eigenvalue> eigenvalues;
  OperatorKind source = OperatorKind::Other;
  bool exact = false;
  double tolerance = 0;

  std::size_t dimension() const {
    std::size_t d = 0;
    for (const auto& e : eigenvalues) d += e.multiplicity;
    return d;
  }

  /// Multiplicity of the cluster within tolerance of value (0 if absent).
  std::size_t multiplicity_of(double value) const {
    for (const auto& e : eigenvalues)
      if (close(e.value, value)) return e.multiplicity;
    return 0;
  }

  bool contains(double value) const { return multiplicity_of(value) > 0; }

  /// True when some eigenvalue lies strictly inside (lo, hi).
  bool any_in_open_interval(double lo, double hi) const {
    for (const auto& e : eigenvalues)
      if (e.value > lo && e.value < hi) return true;
    return false;
  }

  bool close(double a, double b) const {
    const double tol = std::max(tolerance, 1e-12);
    return std::fabs(a - b) <= tol * std::max(1.0, std::fabs(b));
  }

  double min() const { return eigenvalues.front().value; }
  double max() const { return eigenvalues.back().value; }
};

/// Groups sorted eigenvalues into clusters whose consecutive members differ by
/// at most tol * max(1, |value|), then snaps clusters lying within that
/// tolerance of an integer onto the integer.
inline Spectrum cluster(std::vector<double> values, double tol,
                        OperatorKind source) {
  std::sort(values.begin(), values.end());
  Spectrum s;
  s.source = source;
  s.tolerance = tol;
  std::size_t i = 0;
  while (i < values.size()) {
    std::size_t j = i + 1;
    double sum = values[i];
    while (j < values.size() &&
           values[j] - values[j - 1] <=
               tol * std::max(1.0, std::fabs(values[j]))) {
      sum += values[j];
      ++j;
    }
    double mean = sum / static_cast<double>(j - i);
    double nearest = std::round(mean);
    if (std::fabs(mean - nearest) <= tol * std::max(1.0, std::fabs(nearest)))
      mean = nearest;
    if (mean == 0.0) mean = 0.0;  // no negative zero in reports
    s.eigenvalues.push_back({mean, j - i, std::nullopt});
    i = j;
  }
  return s;
}

/// Eigenvalues of a real symmetric matrix.
inline std::vector<double> symmetric_eigenvalues(const Eigen::MatrixXd& a) {
  if (a.rows() == 0) return {};
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(a, Eigen::EigenvaluesOnly);
  require(es.info() == Eigen::Success, ErrorCode::Precondition,
          "symmetric eigensolver did not converge");
  return std::vector<double>(es.eigenvalues().data(),
                             es.eigenvalues().data() + es.eigenvalues().size());
}

inline void require_symmetric(const Eigen::MatrixXd& a) {
  require(a.rows() == a.cols(), ErrorCode::InvalidArgument,
          "spectrum needs a square matrix");
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = i + 1; j < a.cols(); ++j)
      require(a(i, j) == a(j, i), ErrorCode::InvalidArgument,
              "spectrum needs a symmetric matrix");
}

/// Floating spectrum of a symmetric matrix, clustered at the limits'
/// tolerance.
inline Spectrum full_spectrum(const Eigen::MatrixXd& a, const Limits& limits,
                              OperatorKind source = OperatorKind::Other) {
  require(static_cast<std::size_t>(a.rows()) <= limits.dense_cap,
          ErrorCode::BudgetExceeded,
          "matrix of dimension " + std::to_string(a.rows()) +
              " exceeds the dense cap " + std::to_string(limits.dense_cap));
  require_symmetric(a);
  return cluster(symmetric_eigenvalues(a), limits.tolerance, source);
}

/// Exact spectrum from candidate eigenvalues: for each candidate the nullity
/// of (a - lambda I) is computed by exact elimination. Candidates with zero
/// nullity are dropped. The result is complete when the multiplicities sum
/// to the dimension, which the caller can check with dimension().
inline Spectrum exact_spectrum(const RationalMatrix& a,
                               std::vector<mpq_class> candidates,
                               const Limits& limits,
                               OperatorKind source = OperatorKind::Other) {
  require(a.is_square(), ErrorCode::InvalidArgument,
          "spectrum needs a square matrix");
  std::sort(candidates.begin(), candidates.end());
  candidates.erase(std::unique(candidates.begin(), candidates.end()),
                   candidates.end());
  Spectrum s;
  s.source = source;
  s.exact = true;
  for (const auto& lambda : candidates) {
    Nullity nl = nullity_at(a, lambda, limits);
    require(nl.exact(), ErrorCode::BudgetExceeded,
            "exact spectrum needs dimension <= bareiss limit");
    if (nl.value > 0) s.eigenvalues.push_back({lambda.get_d(), nl.value, lambda});
  }
  return s;
}

}  // namespace multislice
