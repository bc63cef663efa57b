#pragma once

#include <cstdint>
#include <numbers>

namespace dseries {

constexpr std::uint64_t splitmix64(std::uint64_t x)
{
  x += 0x9E3779B97F4A7C15ull;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
  return x ^ (x >> 31);
}

/// Counter-based hash of (seed, counter): same inputs, same output, in any order.
constexpr std::uint64_t hash_pair(std::uint64_t seed, std::uint64_t counter)
{
  return splitmix64(splitmix64(seed) ^ splitmix64(counter + 0x632BE59BD9B4E019ull));
}

/// Top 53 bits mapped to [0, 1).
constexpr double to_unit_interval(std::uint64_t h) { return static_cast<double>(h >> 11) * 0x1.0p-53; }

} // namespace dseries
