#include "pdacache/gf16.hpp"

#include <array>
#include <stdexcept>
#include <vector>

namespace pdacache::gf16 {

namespace {

struct Tables {
  // exp is doubled so that exp[log a + log b] needs no reduction.
  std::vector<Elem> exp = std::vector<Elem>(2 * kMultiplicativeOrder);
  std::vector<std::uint32_t> log = std::vector<std::uint32_t>(kOrder, 0);

  Tables() {
    std::uint32_t x = 1;
    for (std::uint32_t i = 0; i < kMultiplicativeOrder; ++i) {
      exp[i] = static_cast<Elem>(x);
      exp[i + kMultiplicativeOrder] = static_cast<Elem>(x);
      log[x] = i;
      x <<= 1;
      if (x & kOrder) x ^= kPolynomial;
    }
  }
};

const Tables& tables() {
  static const Tables t;
  return t;
}

}  // namespace

Elem mul(Elem a, Elem b) {
  if (a == 0 || b == 0) return 0;
  const Tables& t = tables();
  return t.exp[t.log[a] + t.log[b]];
}

Elem inv(Elem a) {
  if (a == 0) throw std::domain_error("zero has no inverse in GF(2^16)");
  const Tables& t = tables();
  return t.exp[(kMultiplicativeOrder - t.log[a]) % kMultiplicativeOrder];
}

Elem div(Elem a, Elem b) { return mul(a, inv(b)); }

Elem pow(Elem a, std::uint64_t e) {
  if (e == 0) return 1;
  if (a == 0) return 0;
  const Tables& t = tables();
  return t.exp[(t.log[a] * (e % kMultiplicativeOrder)) % kMultiplicativeOrder];
}

Elem exp(std::uint32_t i) { return tables().exp[i % kMultiplicativeOrder]; }

std::uint32_t log(Elem a) {
  if (a == 0) throw std::domain_error("log of zero in GF(2^16)");
  return tables().log[a];
}

void mul_add_region(Elem c, std::span<const std::uint8_t> src,
                    std::span<std::uint8_t> dst) {
  if (src.size() != dst.size() || src.size() % 2 != 0) {
    throw std::invalid_argument("regions must have equal even length");
  }
  if (c == 0) return;
  if (c == 1) {
    for (std::size_t i = 0; i < src.size(); ++i) dst[i] ^= src[i];
    return;
  }
  const Tables& t = tables();
  const std::uint32_t lc = t.log[c];
  for (std::size_t i = 0; i < src.size(); i += 2) {
    const Elem s = static_cast<Elem>(src[i] | (src[i + 1] << 8));
    if (s == 0) continue;
    const Elem prod = t.exp[lc + t.log[s]];
    dst[i] ^= static_cast<std::uint8_t>(prod & 0xFF);
    dst[i + 1] ^= static_cast<std::uint8_t>(prod >> 8);
  }
}

}  // namespace pdacache::gf16
