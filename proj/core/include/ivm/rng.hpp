#pragma once

#include <cstdint>

namespace ivm {

/// Counter-based random stream. Every draw is a pure function of
/// (seed, stream, counter), so any cell can be computed without generating
/// its predecessors and parallel workers need no coordination.
struct RngStream {
  std::uint64_t seed = 0;
  std::uint64_t stream = 0;
  std::uint64_t counter = 0;

  /// Uniform on [0,1) with 53 random bits; advances counter by one.
  double uniform();

  /// Standard normal by Box-Muller (cosine branch); consumes two counters.
  double gaussian();

  /// Raw 64-bit output of the current cell; advances counter by one.
  std::uint64_t next_u64();

  bool operator==(const RngStream&) const = default;
};

/// SplitMix64 finalizer.
std::uint64_t mix64(std::uint64_t z);

/// Pure cell evaluation, no state change.
std::uint64_t rng_cell(std::uint64_t seed, std::uint64_t stream, std::uint64_t counter);

/// Stream purposes, so unrelated consumers of one seed never share cells.
enum class StreamPurpose : std::uint64_t {
  subspace = 1,
  points = 2,
  lemma = 3,
  validation = 4,
  fibers = 5,
  user = 6,
  certificate = 7,
};

/// Stream for the `index`-th consumer of a given purpose.
RngStream derive_stream(std::uint64_t seed, StreamPurpose purpose, std::uint64_t index);

}  // namespace ivm
