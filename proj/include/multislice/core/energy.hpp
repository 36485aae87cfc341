#pragma once

#include <cstddef>
#include <vector>

#include <gmpxx.h>

#include "multislice/core/composition.hpp"
#include "multislice/core/vertex.hpp"

namespace multislice {

/// Rational energies e_0, ..., e_{r-1} attached to the levels.
class EnergyTable {
 public:
  explicit EnergyTable(std::vector<mpq_class> values)
      : values_(std::move(values)) {
    require(!values_.empty(), ErrorCode::InvalidArgument,
            "energy table must not be empty");
    for (auto& v : values_) v.canonicalize();
  }

  EnergyTable(std::initializer_list<long> values) {
    for (long v : values) values_.emplace_back(v);
    require(!values_.empty(), ErrorCode::InvalidArgument,
            "energy table must not be empty");
  }

  std::size_t size() const noexcept { return values_.size(); }
  const mpq_class& operator[](std::size_t m) const { return values_.at(m); }
  const std::vector<mpq_class>& values() const noexcept { return values_; }

  /// e_a + e_b = e_c + e_d only when {a,b} = {c,d}. Exhaustive, O(r^4).
  bool non_degenerate() const {
    const std::size_t r = values_.size();
    for (std::size_t a = 0; a < r; ++a)
      for (std::size_t b = a; b < r; ++b)
        for (std::size_t c = 0; c < r; ++c)
          for (std::size_t d = c; d < r; ++d) {
            if (a == c && b == d) continue;
            if (values_[a] + values_[b] == values_[c] + values_[d])
              return false;
          }
    return true;
  }

 private:
  std::vector<mpq_class> values_;
};

/// E(x) = sum over positions of e_{x_l}.
inline mpq_class energy(const Vertex& x, const EnergyTable& e) {
  mpq_class sum = 0;
  for (Level v : x.levels()) {
    require(v < e.size(), ErrorCode::DimensionMismatch,
            "vertex level exceeds the energy table");
    sum += e[v];
  }
  return sum;
}

/// Energy shared by every vertex of the slice: sum_m k_m e_m.
inline mpq_class energy(const Composition& k, const EnergyTable& e) {
  require(k.levels() == e.size(), ErrorCode::DimensionMismatch,
          "energy table length must equal the number of levels");
  mpq_class sum = 0;
  for (std::size_t m = 0; m < k.levels(); ++m) sum += e[m] * k.count(m);
  return sum;
}

/// Every composition of n over the table's levels with total energy E,
/// found by exhaustive search and returned in lexicographic order.
inline std::vector<Composition> level_sets(std::size_t n, const EnergyTable& e,
                                           const mpq_class& E) {
  std::vector<Composition> out;
  for (auto& k : weak_compositions(n, e.size())) {
    if (energy(k, e) == E) out.push_back(k);
  }
  return out;
}

}  // namespace multislice
