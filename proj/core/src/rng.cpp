#include "ivm/rng.hpp"

#include <cmath>
#include <numbers>

namespace ivm {

std::uint64_t mix64(std::uint64_t z) {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

std::uint64_t rng_cell(std::uint64_t seed, std::uint64_t stream, std::uint64_t counter) {
  // Key the (seed, stream) pair first, then walk the Weyl sequence by counter.
  const std::uint64_t key = mix64(mix64(seed) ^ mix64(stream ^ 0xd1b54a32d192ed03ULL));
  return mix64(key + counter * 0x9e3779b97f4a7c15ULL);
}

std::uint64_t RngStream::next_u64() { return rng_cell(seed, stream, counter++); }

double RngStream::uniform() {
  return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

double RngStream::gaussian() {
  // 1 - U lies in (0,1], so the logarithm is finite.
  const double u1 = 1.0 - uniform();
  const double u2 = uniform();
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

RngStream derive_stream(std::uint64_t seed, StreamPurpose purpose, std::uint64_t index) {
  return RngStream{seed, (static_cast<std::uint64_t>(purpose) << 48) ^ index, 0};
}

}  // namespace ivm
