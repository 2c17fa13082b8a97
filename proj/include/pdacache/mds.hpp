#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "pdacache/gf16.hpp"

namespace pdacache {

using Payload = std::vector<std::uint8_t>;

struct Packet {
  std::uint32_t index = 0;
  Payload payload;
  friend bool operator==(const Packet&, const Packet&) = default;
};

// Systematic (n, k) MDS erasure code over GF(2^16): coded packets 0..k-1 are
// the sources verbatim and any k distinct coded packets recover the sources.
//
// The generator is V * inverse(top k rows of V) for the n x k Vandermonde
// matrix V[i][j] = i^j, so every k x k row-submatrix stays invertible. With a
// single parity packet the parity is the plain XOR of the sources instead.
//
// Payloads are processed as little-endian 16-bit symbols and must have even
// length, except when n - k <= 1 where all coefficients are 0 or 1 and any
// length works.
class MdsCodec {
 public:
  MdsCodec(std::uint32_t n, std::uint32_t k);

  std::uint32_t n() const { return n_; }
  std::uint32_t k() const { return k_; }

  // Coefficients of coded packet i over the k sources.
  std::vector<gf16::Elem> generator_row(std::uint32_t i) const;

  std::vector<Packet> encode(std::span<const Payload> source) const;

  // Needs at least k packets with distinct indices in [0, n) and equal
  // lengths; extra packets beyond the first usable k are ignored.
  std::vector<Payload> decode(std::span<const Packet> packets) const;

 private:
  void check_length(std::size_t len) const;

  std::uint32_t n_;
  std::uint32_t k_;
  bool binary_;
  std::vector<gf16::Elem> parity_;  // (n - k) x k, row-major
};

}  // namespace pdacache
