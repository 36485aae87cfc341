#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <optional>
#include <vector>

#include <Eigen/Dense>
#include <gmpxx.h>

#include "multislice/core/composition.hpp"
#include "multislice/core/vertex.hpp"
#include "multislice/linalg/exact.hpp"
#include "multislice/operators/kmatrix.hpp"
#include "multislice/operators/projection.hpp"
#include "multislice/spectral/gap.hpp"
#include "multislice/spectral/spectrum.hpp"

namespace multislice {

inline mpq_class inverse_of(std::size_t n) {
  return mpq_class(1, static_cast<unsigned long>(n));
}

/// Spectrum of P with its eigenvectors (columns, orthonormal in the plain
/// inner product, which is mu-orthonormal up to the factor |V|).
struct PEigen {
  Spectrum spectrum;
  Eigen::VectorXd values;
  Eigen::MatrixXd vectors;
};

inline PEigen p_eigen(const VertexSet& vs, const Limits& limits = {}) {
  require(vs.particles() >= 3, ErrorCode::Precondition,
          "the spectrum of P is characterized for N >= 3");
  Eigen::MatrixXd p = p_matrix(vs, limits.dense_cap);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(p);
  require(es.info() == Eigen::Success, ErrorCode::Precondition,
          "symmetric eigensolver did not converge");
  PEigen out;
  out.values = es.eigenvalues();
  out.vectors = es.eigenvectors();
  out.spectrum = cluster(std::vector<double>(out.values.data(),
                                             out.values.data() + out.values.size()),
                         limits.tolerance, OperatorKind::P);
  return out;
}

inline Spectrum p_spectrum(const Composition& k, const Limits& limits = {}) {
  return p_eigen(VertexSet(k, limits), limits).spectrum;
}

/// Second largest eigenvalue of P, lambda_{N,k}.
inline double second_largest(const Spectrum& s) {
  require(s.eigenvalues.size() >= 2, ErrorCode::Precondition,
          "spectrum has a single eigenvalue");
  return s.eigenvalues[s.eigenvalues.size() - 2].value;
}

/// Exact spectrum of K on the reduced levels, from the candidate set
/// {1, -1/(N-1)}. Complete when the multiplicities sum to r_eff.
inline Spectrum k_spectrum(const Composition& k, const Limits& limits = {}) {
  const Composition red = reduce(k).reduced;
  const std::size_t n = red.total();
  require(n >= 2, ErrorCode::Precondition, "K needs N >= 2");
  return exact_spectrum(k_matrix(red), {mpq_class(1), -inverse_of(n - 1)},
                        limits, OperatorKind::K);
}

/// K 1 = 1 and K g = -g/(N-1) for every K-space basis function g.
inline bool k_eigenvectors_check(const Composition& k) {
  const Composition red = reduce(k).reduced;
  const std::size_t n = red.total();
  const RationalMatrix kk = k_matrix(red);
  std::vector<mpq_class> ones(red.levels(), mpq_class(1));
  if (kk * ones != ones) return false;
  if (red.active_levels() < 2) return true;
  const mpq_class lambda = -inverse_of(n - 1);
  for (const auto& g : kspace_basis(red)) {
    auto kg = kk * g.values;
    for (std::size_t m = 0; m < kg.size(); ++m)
      if (kg[m] != lambda * g.values[m]) return false;
  }
  return true;
}

/// nu_a K_{a,b} = nu_b K_{b,a}.
inline bool k_self_adjoint(const Composition& k) {
  const RationalMatrix q = k_form(k);
  return q.is_symmetric();
}

/// Exact spectrum of M (N x N), candidates {-1, N-1}.
inline Spectrum m_spectrum(std::size_t n, const Limits& limits = {}) {
  require(n >= 2, ErrorCode::Precondition, "M needs N >= 2");
  return exact_spectrum(m_matrix(n),
                        {mpq_class(-1), mpq_class(static_cast<unsigned long>(n - 1))},
                        limits, OperatorKind::Other);
}

/// Exact spectrum of M (x) K on the reduced levels, candidates
/// {-1, 1/(N-1), N-1}.
inline Spectrum mk_tensor_spectrum(const Composition& k,
                                   const Limits& limits = {}) {
  const Composition red = reduce(k).reduced;
  const std::size_t n = red.total();
  require(n >= 3, ErrorCode::Precondition, "M (x) K is used for N >= 3");
  return exact_spectrum(kronecker(m_matrix(n), k_matrix(red)),
                        {mpq_class(-1), inverse_of(n - 1),
                         mpq_class(static_cast<unsigned long>(n - 1))},
                        limits, OperatorKind::MK);
}

/// Two sides of the induction bound for one composition.
struct InductionAudit {
  Composition composition{1};
  double delta = 0;                          // Delta_{N,k}
  std::vector<Composition> children;
  std::vector<std::optional<double>> child_delta;  // nullopt: trivial child
  double min_child = 0;
  double factor = 0;                         // N(N-2)/(N-1)^2
  double indlong_rhs = 0;
  double lambda = 0;                         // second largest P eigenvalue
  double pinduct_rhs = 0;                    // min * N/(N-1) * (1 - lambda)
  bool indlong_holds = false;
  bool pinduct_holds = false;
  bool equality = false;
};

/// Eigensolves Delta_{N,k} and every Delta_{N-1,k^{(m)}} and checks
///   Delta_{N,k} >= N(N-2)/(N-1)^2 min_m Delta_{N-1,k^{(m)}}
/// and the same bound written with lambda_{N,k} from the P spectrum.
/// Trivial children (single vertex, no gap) are left out of the minimum.
inline InductionAudit induction_audit(const Composition& k,
                                      const Limits& limits = {}) {
  require(k.is_reduced(), ErrorCode::Precondition,
          "induction audit needs every k_m >= 1");
  const std::size_t n = k.total();
  require(n >= 3, ErrorCode::Precondition, "induction audit needs N >= 3");
  require_nontrivial(k);
  InductionAudit a;
  a.composition = k;
  a.delta = scaled_gap(k, limits);
  a.min_child = std::numeric_limits<double>::infinity();
  for (std::size_t m = 0; m < k.levels(); ++m) {
    Composition child = k.decremented(m);
    a.children.push_back(child);
    if (child.trivial()) {
      a.child_delta.push_back(std::nullopt);
      continue;
    }
    double d = scaled_gap(reduce(child).reduced, limits);
    a.child_delta.push_back(d);
    a.min_child = std::min(a.min_child, d);
  }
  const double nn = static_cast<double>(n);
  a.factor = nn * (nn - 2) / ((nn - 1) * (nn - 1));
  a.indlong_rhs = a.factor * a.min_child;
  a.lambda = second_largest(p_spectrum(k, limits));
  a.pinduct_rhs = a.min_child * nn / (nn - 1) * (1 - a.lambda);
  const double tol = limits.tolerance * std::max(1.0, a.delta);
  a.indlong_holds = a.delta >= a.indlong_rhs - tol;
  a.pinduct_holds = a.delta >= a.pinduct_rhs - tol;
  a.equality = std::fabs(a.delta - a.indlong_rhs) <= tol;
  return a;
}

}  // namespace multislice
