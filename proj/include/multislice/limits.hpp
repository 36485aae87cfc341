#pragma once

#include <cstddef>
#include <cstdint>

namespace multislice {

/// Caps guarding every dense or exhaustive computation. All values must be
/// positive; the defaults are sized for a desktop machine.
struct Limits {
  /// Maximum number of vertices any enumeration may materialize.
  std::uint64_t enumeration_budget = 1'000'000;
  /// Laplacians below this many vertices are stored densely.
  std::size_t dense_threshold = 2'000;
  /// Largest matrix handed to the dense floating eigensolver.
  std::size_t dense_cap = 3'000;
  /// Largest matrix handed to exact elimination.
  std::size_t exact_cap = 5'000;
  /// Above this size exact elimination switches from fraction-free integer
  /// arithmetic to rank over a prime field (a rigorous rank lower bound).
  std::size_t bareiss_limit = 200;
  /// Relative clustering tolerance for floating spectra.
  double tolerance = 1e-8;
};

}  // namespace multislice
