#pragma once

#include <cstdint>
#include <random>

namespace ppwave {

using Engine = std::mt19937_64;

/// A (master seed, stream) pair. The engine state is a pure function of it.
struct RngSeed {
  std::uint64_t master_seed = 0;
  std::uint64_t stream_id = 0;

  /// Child stream: a seed for sub-task `i` of this stream.
  RngSeed child(std::uint64_t i) const noexcept {
    return {master_seed, mix(stream_id, i)};
  }

  Engine engine() const {
    std::seed_seq seq{static_cast<std::uint32_t>(master_seed),
                      static_cast<std::uint32_t>(master_seed >> 32),
                      static_cast<std::uint32_t>(stream_id),
                      static_cast<std::uint32_t>(stream_id >> 32)};
    return Engine(seq);
  }

  static std::uint64_t splitmix64(std::uint64_t x) noexcept {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
  }

  static std::uint64_t mix(std::uint64_t a, std::uint64_t b) noexcept {
    return splitmix64(splitmix64(a) ^ (b + 0x632be59bd9b4e019ULL));
  }

  friend bool operator==(const RngSeed&, const RngSeed&) = default;
};

}  // namespace ppwave
