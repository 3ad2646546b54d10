#pragma once

#include <cstdint>
#include <random>

namespace assoc {

using Engine = std::mt19937_64;

// SplitMix64 finalizer. Bijective on 64-bit words.
constexpr std::uint64_t splitmix64(std::uint64_t x) noexcept {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

// Seed of replicate `replicate` under `master`:
//   splitmix64(splitmix64(master) ^ splitmix64(replicate + 0x632be59bd9b4e019)).
// Fixed forever; changing it changes every published number.
constexpr std::uint64_t stream_seed(std::uint64_t master, std::uint64_t replicate) noexcept {
  return splitmix64(splitmix64(master) ^ splitmix64(replicate + 0x632be59bd9b4e019ULL));
}

// Independent master seed for a named sub-experiment (e.g. the coupling sample).
constexpr std::uint64_t derive_seed(std::uint64_t master, std::uint64_t tag) noexcept {
  return splitmix64(master ^ splitmix64(~tag));
}

inline Engine replicate_engine(std::uint64_t master, std::uint64_t replicate) {
  return Engine{stream_seed(master, replicate)};
}

}  // namespace assoc
