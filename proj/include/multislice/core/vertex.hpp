#pragma once

// Vertices of V_{N,k} are N-tuples of level indices. Positions are 0-based
// throughout the library: a transposition pi_{i,j} takes 0 <= i < j < N.

#include <algorithm>
#include <array>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <iterator>
#include <span>
#include <string>
#include <vector>

#include "multislice/core/composition.hpp"

namespace multislice {

using Level = std::uint8_t;

class Vertex {
 public:
  Vertex() = default;
  explicit Vertex(std::vector<Level> levels) : levels_(std::move(levels)) {}
  Vertex(std::initializer_list<int> levels) {
    levels_.reserve(levels.size());
    for (int v : levels) {
      require(v >= 0 && v < 256, ErrorCode::InvalidArgument,
              "level index out of range");
      levels_.push_back(static_cast<Level>(v));
    }
  }
  explicit Vertex(std::span<const Level> levels)
      : levels_(levels.begin(), levels.end()) {}

  std::size_t size() const noexcept { return levels_.size(); }
  Level operator[](std::size_t pos) const { return levels_[pos]; }
  std::span<const Level> levels() const noexcept { return levels_; }

  std::string to_string() const {
    std::string out;
    for (std::size_t i = 0; i < levels_.size(); ++i) {
      if (i) out += ',';
      out += std::to_string(levels_[i]);
    }
    return out;
  }

  friend bool operator==(const Vertex&, const Vertex&) = default;
  friend auto operator<=>(const Vertex& a, const Vertex& b) {
    return a.levels_ <=> b.levels_;
  }

 private:
  std::vector<Level> levels_;
};

/// Position of a vertex in the canonical (lexicographic) order of V_{N,k}.
struct VertexIndex {
  std::uint64_t value = 0;
  friend auto operator<=>(const VertexIndex&, const VertexIndex&) = default;
};

/// True when x has exactly k_m entries equal to m for every level m.
inline bool realizes(std::span<const Level> x, const Composition& k) {
  if (x.size() != k.total()) return false;
  std::array<std::uint32_t, 256> seen{};
  for (Level v : x) {
    if (v >= k.levels()) return false;
    ++seen[v];
  }
  for (std::size_t m = 0; m < k.levels(); ++m) {
    if (seen[m] != k.count(m)) return false;
  }
  return true;
}

/// Ranks and unranks vertices of one multislice by multinomial counting.
/// Cheap to copy; holds no mutable state.
class Ranker {
 public:
  explicit Ranker(const Composition& k) : k_(k) {
    mpz_class c = cardinality(k);
    require(c < mpz_class(1ul << 62), ErrorCode::BudgetExceeded,
            "multislice " + k.to_string() + " is too large to index");
    size_ = c.get_ui();
  }

  const Composition& composition() const noexcept { return k_; }
  std::uint64_t size() const noexcept { return size_; }

  std::uint64_t rank(std::span<const Level> x) const {
    using u128 = unsigned __int128;
    std::array<std::uint32_t, 256> rem{};
    for (std::size_t m = 0; m < k_.levels(); ++m) rem[m] = k_.count(m);
    std::uint64_t block = size_;
    std::uint64_t n = k_.total();
    std::uint64_t r = 0;
    for (Level v : x) {
      for (std::size_t u = 0; u < v; ++u) {
        if (rem[u]) r += static_cast<std::uint64_t>(u128(block) * rem[u] / n);
      }
      block = static_cast<std::uint64_t>(u128(block) * rem[v] / n);
      --rem[v];
      --n;
    }
    return r;
  }

  void unrank_into(std::uint64_t index, std::span<Level> out) const {
    using u128 = unsigned __int128;
    std::array<std::uint32_t, 256> rem{};
    for (std::size_t m = 0; m < k_.levels(); ++m) rem[m] = k_.count(m);
    std::uint64_t block = size_;
    std::uint64_t n = k_.total();
    for (std::size_t p = 0; p < out.size(); ++p) {
      for (std::size_t u = 0; u < k_.levels(); ++u) {
        if (!rem[u]) continue;
        auto sub = static_cast<std::uint64_t>(u128(block) * rem[u] / n);
        if (index < sub) {
          out[p] = static_cast<Level>(u);
          block = sub;
          --rem[u];
          break;
        }
        index -= sub;
      }
      --n;
    }
  }

 private:
  Composition k_;
  std::uint64_t size_ = 0;
};

inline VertexIndex rank(const Vertex& x, const Composition& k) {
  require(realizes(x.levels(), k), ErrorCode::InvalidArgument,
          "vertex " + x.to_string() + " does not realize composition " +
              k.to_string());
  return {Ranker(k).rank(x.levels())};
}

inline Vertex unrank(VertexIndex i, const Composition& k) {
  Ranker ranker(k);
  require(i.value < ranker.size(), ErrorCode::InvalidArgument,
          "vertex index " + std::to_string(i.value) + " out of range for " +
              k.to_string());
  std::vector<Level> out(k.total());
  ranker.unrank_into(i.value, out);
  return Vertex(std::move(out));
}

/// pi_{i,j} x: entries i and j swapped.
inline Vertex transpose(const Vertex& x, std::size_t i, std::size_t j) {
  require(i < j && j < x.size(), ErrorCode::InvalidArgument,
          "transposition positions (" + std::to_string(i) + "," +
              std::to_string(j) + ") invalid for N=" +
              std::to_string(x.size()));
  std::vector<Level> out(x.levels().begin(), x.levels().end());
  std::swap(out[i], out[j]);
  return Vertex(std::move(out));
}

/// All vertices adjacent to x: pi_{i,j} x for the pairs with x_i != x_j,
/// ordered by (i, j).
inline std::vector<Vertex> neighbors(const Vertex& x) {
  std::vector<Vertex> out;
  for (std::size_t i = 0; i < x.size(); ++i) {
    for (std::size_t j = i + 1; j < x.size(); ++j) {
      if (x[i] != x[j]) out.push_back(transpose(x, i, j));
    }
  }
  return out;
}

/// Lexicographic enumeration of V_{N,k}, consistent with rank/unrank.
class VertexRange {
 public:
  class iterator {
   public:
    using iterator_category = std::input_iterator_tag;
    using value_type = Vertex;
    using difference_type = std::ptrdiff_t;

    iterator() = default;
    explicit iterator(std::vector<Level> start)
        : cur_(std::move(start)), done_(false) {}

    Vertex operator*() const { return Vertex(cur_); }
    iterator& operator++() {
      done_ = !std::next_permutation(cur_.begin(), cur_.end());
      return *this;
    }
    void operator++(int) { ++*this; }
    friend bool operator==(const iterator& a, const iterator& b) {
      return a.done_ == b.done_ && (a.done_ || a.cur_ == b.cur_);
    }

   private:
    std::vector<Level> cur_;
    bool done_ = true;
  };

  VertexRange(const Composition& k, std::uint64_t budget) : k_(k) {
    size_ = checked_cardinality(k, budget);
  }

  iterator begin() const {
    std::vector<Level> first;
    first.reserve(k_.total());
    for (std::size_t m = 0; m < k_.levels(); ++m) {
      first.insert(first.end(), k_.count(m), static_cast<Level>(m));
    }
    return iterator(std::move(first));
  }
  iterator end() const { return iterator(); }
  std::uint64_t size() const noexcept { return size_; }

 private:
  Composition k_;
  std::uint64_t size_ = 0;
};

inline VertexRange enumerate(const Composition& k,
                             std::uint64_t budget = Limits{}.enumeration_budget) {
  return VertexRange(k, budget);
}

/// Materialized vertex set: all vertices stored contiguously in canonical
/// order, so vertex(i) is the vertex of rank i.
class VertexSet {
 public:
  VertexSet(const Composition& k, std::uint64_t budget) : ranker_(k) {
    size_ = checked_cardinality(k, budget);
    const std::size_t n = k.total();
    data_.reserve(size_ * n);
    std::vector<Level> cur;
    cur.reserve(n);
    for (std::size_t m = 0; m < k.levels(); ++m) {
      cur.insert(cur.end(), k.count(m), static_cast<Level>(m));
    }
    do {
      data_.insert(data_.end(), cur.begin(), cur.end());
    } while (std::next_permutation(cur.begin(), cur.end()));
  }

  explicit VertexSet(const Composition& k, const Limits& limits = {})
      : VertexSet(k, limits.enumeration_budget) {}

  const Composition& composition() const noexcept {
    return ranker_.composition();
  }
  const Ranker& ranker() const noexcept { return ranker_; }
  std::size_t size() const noexcept { return static_cast<std::size_t>(size_); }
  std::size_t particles() const noexcept { return composition().total(); }

  std::span<const Level> operator[](std::size_t i) const {
    const std::size_t n = particles();
    return {data_.data() + i * n, n};
  }
  Vertex vertex(std::size_t i) const { return Vertex((*this)[i]); }

  std::size_t index_of(std::span<const Level> x) const {
    return static_cast<std::size_t>(ranker_.rank(x));
  }

  /// Calls fn(i, j, neighbor_rank) for every pair i<j with x_i != x_j.
  template <typename Fn>
  void for_each_neighbor(std::size_t v, Fn&& fn) const {
    const std::size_t n = particles();
    std::array<Level, 256> buf{};
    auto x = (*this)[v];
    std::copy(x.begin(), x.end(), buf.begin());
    std::span<const Level> view(buf.data(), n);
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = i + 1; j < n; ++j) {
        if (buf[i] == buf[j]) continue;
        std::swap(buf[i], buf[j]);
        fn(i, j, index_of(view));
        std::swap(buf[i], buf[j]);
      }
    }
  }

 private:
  Ranker ranker_;
  std::uint64_t size_ = 0;
  std::vector<Level> data_;
};

}  // namespace multislice
