#include "pdacache/subsets.hpp"

#include <stdexcept>
#include <string>

namespace pdacache {

std::uint64_t checked_mul(std::uint64_t a, std::uint64_t b) {
  std::uint64_t out = 0;
  if (__builtin_mul_overflow(a, b, &out)) {
    throw std::overflow_error("64-bit overflow in product " +
                              std::to_string(a) + " * " + std::to_string(b));
  }
  return out;
}

std::uint64_t checked_add(std::uint64_t a, std::uint64_t b) {
  std::uint64_t out = 0;
  if (__builtin_add_overflow(a, b, &out)) {
    throw std::overflow_error("64-bit overflow in sum " + std::to_string(a) +
                              " + " + std::to_string(b));
  }
  return out;
}

std::uint64_t binomial(std::int64_t n, std::int64_t k) {
  if (n < 0 || k < 0 || k > n) return 0;
  if (k > n - k) k = n - k;
  // result * (n - i) is always divisible by (i + 1); the 128-bit intermediate
  // keeps the exact product before division.
  unsigned __int128 result = 1;
  for (std::int64_t i = 0; i < k; ++i) {
    result = result * static_cast<unsigned __int128>(n - i) /
             static_cast<unsigned __int128>(i + 1);
    if (result > UINT64_MAX) {
      throw std::overflow_error("binomial C(" + std::to_string(n) + "," +
                                std::to_string(k) + ") exceeds 64 bits");
    }
  }
  return static_cast<std::uint64_t>(result);
}

std::vector<Subset> enumerate_subsets(unsigned H, unsigned t) {
  if (H > kMaxGroundSet) {
    throw std::invalid_argument("ground set larger than 64 elements");
  }
  if (t > H) {
    throw std::invalid_argument("subset size exceeds ground set size");
  }
  const std::uint64_t count = binomial(H, t);
  std::vector<Subset> out;
  out.reserve(count);
  if (t == 0) {
    out.push_back(0);
    return out;
  }
  Subset v = (t == 64) ? ~Subset{0} : ((Subset{1} << t) - 1);
  out.push_back(v);
  // Gosper's hack: next larger integer with the same popcount. The final
  // step may overflow past bit 63, so iteration is bounded by the count.
  for (std::uint64_t i = 1; i < count; ++i) {
    const Subset c = v & (~v + 1);
    const Subset r = v + c;
    v = (((r ^ v) >> 2) / c) | r;
    out.push_back(v);
  }
  return out;
}

std::uint64_t colex_rank(Subset s) {
  std::uint64_t rank = 0;
  std::int64_t i = 1;
  while (s != 0) {
    const int element = __builtin_ctzll(s);
    rank += binomial(element, i);
    ++i;
    s &= s - 1;
  }
  return rank;
}

}  // namespace pdacache
