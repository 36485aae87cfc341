#pragma once

// Brute-force reference implementations. They share nothing with the
// library beyond plain std and Eigen types: vertices come from
// std::next_permutation and adjacency from a direct transposition test.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <map>
#include <vector>

#include <Eigen/Dense>

namespace oracle {

using Tuple = std::vector<int>;

/// Every arrangement of the multiset with the given counts, in
/// lexicographic order.
inline std::vector<Tuple> arrangements(const std::vector<int>& counts) {
  Tuple x;
  for (int m = 0; m < static_cast<int>(counts.size()); ++m)
    x.insert(x.end(), counts[m], m);
  std::vector<Tuple> out;
  do out.push_back(x);
  while (std::next_permutation(x.begin(), x.end()));
  return out;
}

/// x and y differ by swapping two unequal entries.
inline bool adjacent(const Tuple& x, const Tuple& y) {
  std::vector<std::size_t> diff;
  for (std::size_t i = 0; i < x.size(); ++i)
    if (x[i] != y[i]) diff.push_back(i);
  return diff.size() == 2 && x[diff[0]] == y[diff[1]] && x[diff[1]] == y[diff[0]];
}

inline Eigen::MatrixXd laplacian(const std::vector<int>& counts) {
  auto vs = arrangements(counts);
  const auto n = static_cast<Eigen::Index>(vs.size());
  Eigen::MatrixXd l = Eigen::MatrixXd::Zero(n, n);
  for (Eigen::Index a = 0; a < n; ++a)
    for (Eigen::Index b = a + 1; b < n; ++b)
      if (adjacent(vs[a], vs[b])) {
        l(a, b) = l(b, a) = -1;
        l(a, a) += 1;
        l(b, b) += 1;
      }
  return l;
}

/// Sorted eigenvalues rounded to integers, keyed with multiplicities.
inline std::map<long, std::size_t> integer_spectrum(const Eigen::MatrixXd& a) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(a);
  std::map<long, std::size_t> out;
  for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i)
    ++out[std::lround(es.eigenvalues()(i))];
  return out;
}

/// Largest deviation of the eigenvalues from the nearest integer.
inline double integrality_defect(const Eigen::MatrixXd& a) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(a);
  double worst = 0;
  for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i) {
    const double v = es.eigenvalues()(i);
    worst = std::max(worst, std::fabs(v - std::round(v)));
  }
  return worst;
}

/// P = (1/N) sum_l P_l built from conditional averages.
inline Eigen::MatrixXd p_matrix(const std::vector<int>& counts) {
  auto vs = arrangements(counts);
  const auto n = static_cast<Eigen::Index>(vs.size());
  const std::size_t N = vs.front().size();
  Eigen::MatrixXd p = Eigen::MatrixXd::Zero(n, n);
  for (std::size_t l = 0; l < N; ++l)
    for (Eigen::Index a = 0; a < n; ++a) {
      double same = 0;
      for (Eigen::Index b = 0; b < n; ++b) same += vs[b][l] == vs[a][l];
      for (Eigen::Index b = 0; b < n; ++b)
        if (vs[b][l] == vs[a][l]) p(a, b) += 1.0 / same / static_cast<double>(N);
    }
  return p;
}

/// Smallest nonzero eigenvalue of the Laplacian.
inline double gap(const std::vector<int>& counts) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(laplacian(counts));
  for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i)
    if (es.eigenvalues()(i) > 1e-8) return es.eigenvalues()(i);
  return 0;
}

}  // namespace oracle
