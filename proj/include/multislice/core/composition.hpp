#pragma once

#include <algorithm>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <numeric>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <gmpxx.h>

#include "multislice/error.hpp"
#include "multislice/limits.hpp"

namespace multislice {

/// Level counts k = (k_0, ..., k_{r-1}) of a multislice. The total N is the
/// number of particles and r the number of levels.
class Composition {
 public:
  explicit Composition(std::vector<int> counts) {
    require(!counts.empty(), ErrorCode::InvalidArgument,
            "composition needs at least one level");
    require(counts.size() <= 255, ErrorCode::InvalidArgument,
            "at most 255 levels are supported");
    counts_.reserve(counts.size());
    std::uint64_t total = 0;
    for (int c : counts) {
      require(c >= 0, ErrorCode::InvalidArgument,
              "composition counts must be non-negative");
      counts_.push_back(static_cast<std::uint32_t>(c));
      total += static_cast<std::uint64_t>(c);
    }
    require(total >= 1, ErrorCode::InvalidArgument,
            "composition must have N >= 1 particles");
    require(total <= 255, ErrorCode::InvalidArgument,
            "at most 255 particles are supported");
    total_ = static_cast<std::size_t>(total);
  }

  Composition(std::initializer_list<int> counts)
      : Composition(std::vector<int>(counts)) {}

  /// Parses the comma separated form "2,1,1".
  static Composition parse(std::string_view text) {
    std::vector<int> counts;
    std::string token;
    auto flush = [&] {
      require(!token.empty(), ErrorCode::Parse,
              "malformed composition '" + std::string(text) + "'");
      for (char c : token) {
        require(c >= '0' && c <= '9', ErrorCode::Parse,
                "malformed composition '" + std::string(text) + "'");
      }
      require(token.size() <= 4, ErrorCode::Parse,
              "composition count too large in '" + std::string(text) + "'");
      counts.push_back(std::stoi(token));
      token.clear();
    };
    for (char c : text) {
      if (c == ' ') continue;
      if (c == ',') {
        flush();
      } else {
        token.push_back(c);
      }
    }
    flush();
    return Composition(std::move(counts));
  }

  std::size_t total() const noexcept { return total_; }
  std::size_t levels() const noexcept { return counts_.size(); }
  std::size_t count(std::size_t m) const { return counts_.at(m); }
  std::span<const std::uint32_t> counts() const noexcept { return counts_; }

  std::size_t max_count() const noexcept {
    return *std::max_element(counts_.begin(), counts_.end());
  }

  /// Single-vertex slice: every particle sits on the same level.
  bool trivial() const noexcept { return max_count() == total_; }

  /// Number of levels with a non-zero count (r_eff).
  std::size_t active_levels() const noexcept {
    return static_cast<std::size_t>(
        std::count_if(counts_.begin(), counts_.end(),
                      [](std::uint32_t c) { return c > 0; }));
  }

  bool is_reduced() const noexcept { return active_levels() == levels(); }

  /// k^{(m)}: the composition with k_m decreased by one.
  Composition decremented(std::size_t m) const {
    require(m < levels(), ErrorCode::InvalidArgument, "level out of range");
    require(counts_[m] >= 1, ErrorCode::Precondition,
            "cannot decrement level " + std::to_string(m) + " with count 0");
    require(total_ >= 2, ErrorCode::Precondition,
            "cannot remove the last particle");
    std::vector<int> next(counts_.begin(), counts_.end());
    --next[m];
    return Composition(std::move(next));
  }

  /// k with one more particle on level m.
  Composition incremented(std::size_t m) const {
    require(m < levels(), ErrorCode::InvalidArgument, "level out of range");
    std::vector<int> next(counts_.begin(), counts_.end());
    ++next[m];
    return Composition(std::move(next));
  }

  std::vector<int> to_vector() const {
    return std::vector<int>(counts_.begin(), counts_.end());
  }

  std::string to_string() const {
    std::string out;
    for (std::size_t m = 0; m < counts_.size(); ++m) {
      if (m) out += ',';
      out += std::to_string(counts_[m]);
    }
    return out;
  }

  friend bool operator==(const Composition&, const Composition&) = default;
  friend auto operator<=>(const Composition& a, const Composition& b) {
    return a.counts_ <=> b.counts_;
  }

 private:
  std::vector<std::uint32_t> counts_;
  std::size_t total_ = 0;
};

/// Result of dropping empty levels. level_map[old] is the new index, or -1
/// when the level was removed.
struct Reduction {
  Composition reduced;
  std::vector<int> level_map;
};

inline Reduction reduce(const Composition& k) {
  std::vector<int> counts;
  std::vector<int> map(k.levels(), -1);
  for (std::size_t m = 0; m < k.levels(); ++m) {
    if (k.count(m) > 0) {
      map[m] = static_cast<int>(counts.size());
      counts.push_back(static_cast<int>(k.count(m)));
    }
  }
  return {Composition(std::move(counts)), std::move(map)};
}

/// |V_{N,k}| = N! / (k_0! ... k_{r-1}!).
inline mpz_class cardinality(const Composition& k) {
  mpz_class num;
  mpz_fac_ui(num.get_mpz_t(), k.total());
  for (std::uint32_t c : k.counts()) {
    mpz_class f;
    mpz_fac_ui(f.get_mpz_t(), c);
    num /= f;
  }
  return num;
}

/// Cardinality as a machine integer; throws when it exceeds the budget.
inline std::uint64_t checked_cardinality(const Composition& k,
                                         std::uint64_t budget) {
  mpz_class c = cardinality(k);
  require(c <= mpz_class(static_cast<unsigned long>(budget)),
          ErrorCode::BudgetExceeded,
          "multislice " + k.to_string() + " has " + c.get_str() +
              " vertices, over the enumeration budget of " +
              std::to_string(budget));
  return c.get_ui();
}

/// delta_{N,k} = sum_{m<n} k_m k_n; the common vertex degree.
inline std::uint64_t degree(const Composition& k) {
  std::uint64_t sum = 0;
  std::uint64_t sq = 0;
  for (std::uint32_t c : k.counts()) {
    sum += c;
    sq += std::uint64_t{c} * c;
  }
  return (sum * sum - sq) / 2;
}

/// All compositions of n into exactly r non-negative parts, in
/// lexicographic order of the count vectors.
inline std::vector<Composition> weak_compositions(std::size_t n,
                                                  std::size_t r) {
  std::vector<Composition> out;
  if (r == 0) return out;
  std::vector<int> cur(r, 0);
  std::function<void(std::size_t, int)> rec = [&](std::size_t pos, int left) {
    if (pos + 1 == r) {
      cur[pos] = left;
      out.emplace_back(cur);
      return;
    }
    for (int c = 0; c <= left; ++c) {
      cur[pos] = c;
      rec(pos + 1, left - c);
    }
  };
  rec(0, static_cast<int>(n));
  return out;
}

/// All compositions of n with every part >= 1 (2^{n-1} of them), sorted.
inline std::vector<Composition> reduced_compositions(std::size_t n) {
  std::vector<Composition> out;
  std::vector<int> cur;
  std::function<void(int)> rec = [&](int left) {
    if (left == 0) {
      out.emplace_back(cur);
      return;
    }
    for (int c = 1; c <= left; ++c) {
      cur.push_back(c);
      rec(left - c);
      cur.pop_back();
    }
  };
  rec(static_cast<int>(n));
  std::sort(out.begin(), out.end());
  return out;
}

/// Integer partitions of n as non-increasing compositions, sorted.
inline std::vector<Composition> partitions(std::size_t n) {
  std::vector<Composition> out;
  std::vector<int> cur;
  std::function<void(int, int)> rec = [&](int left, int cap) {
    if (left == 0) {
      out.emplace_back(cur);
      return;
    }
    for (int c = std::min(left, cap); c >= 1; --c) {
      cur.push_back(c);
      rec(left - c, c);
      cur.pop_back();
    }
  };
  rec(static_cast<int>(n), static_cast<int>(n));
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace multislice
