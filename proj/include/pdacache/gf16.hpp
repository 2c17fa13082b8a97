#pragma once

#include <cstdint>
#include <span>

// Arithmetic in GF(2^16) with the primitive polynomial
// x^16 + x^12 + x^3 + x + 1, using log/antilog tables.
namespace pdacache::gf16 {

using Elem = std::uint16_t;

inline constexpr std::uint32_t kPolynomial = 0x1100B;
inline constexpr std::uint32_t kOrder = 1u << 16;
inline constexpr std::uint32_t kMultiplicativeOrder = kOrder - 1;

constexpr Elem add(Elem a, Elem b) { return a ^ b; }

Elem mul(Elem a, Elem b);
Elem inv(Elem a);  // a != 0
Elem div(Elem a, Elem b);  // b != 0
Elem pow(Elem a, std::uint64_t e);

// Generator of the multiplicative group raised to i.
Elem exp(std::uint32_t i);
// Discrete log of a != 0 with respect to exp(1).
std::uint32_t log(Elem a);

// dst ^= c * src, reading both byte spans as little-endian 16-bit symbols.
// Spans must have equal, even length.
void mul_add_region(Elem c, std::span<const std::uint8_t> src,
                    std::span<std::uint8_t> dst);

}  // namespace pdacache::gf16
