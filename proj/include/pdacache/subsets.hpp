#pragma once

#include <cstdint>
#include <vector>

namespace pdacache {

// A subset of [0, 64) stored as a bitmask; bit i set <=> i is a member.
using Subset = std::uint64_t;

inline constexpr unsigned kMaxGroundSet = 64;

// C(n, k), with C(n, k) = 0 for k < 0 or k > n. Throws std::overflow_error if
// the value does not fit in 64 bits.
std::uint64_t binomial(std::int64_t n, std::int64_t k);

std::uint64_t checked_mul(std::uint64_t a, std::uint64_t b);
std::uint64_t checked_add(std::uint64_t a, std::uint64_t b);

// All t-subsets of [0, H) in colexicographic order, which for bitmasks is
// plain increasing numeric order. Requires H <= 64 and t <= H.
std::vector<Subset> enumerate_subsets(unsigned H, unsigned t);

// Position of `s` within enumerate_subsets(H, popcount(s)); independent of H.
std::uint64_t colex_rank(Subset s);

inline unsigned subset_size(Subset s) {
  return static_cast<unsigned>(__builtin_popcountll(s));
}

}  // namespace pdacache
