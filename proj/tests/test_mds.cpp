#include <doctest.h>

#include <random>

#include "oracles.hpp"
#include "pdacache/gf16.hpp"
#include "pdacache/mds.hpp"
#include "pdacache/subsets.hpp"

using namespace pdacache;

namespace {

std::vector<Payload> random_payloads(std::size_t count, std::size_t len,
                                     std::mt19937_64& rng) {
  std::uniform_int_distribution<int> byte(0, 255);
  std::vector<Payload> out(count, Payload(len));
  for (auto& p : out) {
    for (auto& b : p) b = static_cast<std::uint8_t>(byte(rng));
  }
  return out;
}

std::vector<Packet> pick(const std::vector<Packet>& coded, Subset mask) {
  std::vector<Packet> out;
  for (const Packet& p : coded) {
    if (mask & (Subset{1} << p.index)) out.push_back(p);
  }
  return out;
}

}  // namespace

TEST_CASE("gf16: table multiply agrees with carry-less multiply") {
  std::mt19937_64 rng(1);
  std::uniform_int_distribution<unsigned> e(0, 0xFFFF);
  for (int i = 0; i < 200000; ++i) {
    const auto a = static_cast<gf16::Elem>(e(rng));
    const auto b = static_cast<gf16::Elem>(e(rng));
    REQUIRE(gf16::mul(a, b) == oracle::gf_mul_slow(a, b));
  }
  for (unsigned a = 0; a < 256; ++a) {
    for (unsigned b = 0; b < 256; ++b) {
      REQUIRE(gf16::mul(a, b) == oracle::gf_mul_slow(a, b));
    }
  }
}

TEST_CASE("gf16: the polynomial is primitive and inverses work") {
  std::vector<bool> seen(1u << 16, false);
  for (std::uint32_t i = 0; i < gf16::kMultiplicativeOrder; ++i) {
    const gf16::Elem x = gf16::exp(i);
    REQUIRE(x != 0);
    REQUIRE_FALSE(seen[x]);
    seen[x] = true;
  }
  for (std::uint32_t a = 1; a < (1u << 16); a += 7) {
    const auto x = static_cast<gf16::Elem>(a);
    REQUIRE(gf16::mul(x, gf16::inv(x)) == 1);
    REQUIRE(gf16::log(x) < gf16::kMultiplicativeOrder);
  }
  CHECK(gf16::pow(0, 0) == 1);
  CHECK(gf16::pow(3, 2) == gf16::mul(3, 3));
  CHECK_THROWS(gf16::inv(0));
}

TEST_CASE("mds: k == n is the identity") {
  std::mt19937_64 rng(2);
  const auto src = random_payloads(4, 10, rng);
  const MdsCodec codec(4, 4);
  const auto coded = codec.encode(src);
  REQUIRE(coded.size() == 4);
  for (std::uint32_t i = 0; i < 4; ++i) CHECK(coded[i].payload == src[i]);
}

TEST_CASE("mds: one parity packet is the XOR of the sources") {
  std::mt19937_64 rng(3);
  const auto src = random_payloads(5, 13, rng);  // odd length works here
  const MdsCodec codec(6, 5);
  const auto coded = codec.encode(src);
  Payload x(13, 0);
  for (const auto& s : src) {
    for (std::size_t i = 0; i < x.size(); ++i) x[i] ^= s[i];
  }
  CHECK(coded[5].payload == x);

  // Lose packet 0, the way a user caching only packet 0 is missing it.
  const std::vector<Packet> rest(coded.begin() + 1, coded.end());
  Payload recovered = coded[5].payload;
  for (std::uint32_t j = 1; j <= 4; ++j) {
    for (std::size_t i = 0; i < recovered.size(); ++i) recovered[i] ^= coded[j].payload[i];
  }
  const auto decoded = codec.decode(rest);
  CHECK(decoded[0] == recovered);
  CHECK(decoded == src);
}

TEST_CASE("mds: (6,4) decodes from every 4-subset") {
  std::mt19937_64 rng(4);
  const auto src = random_payloads(4, 32, rng);
  const MdsCodec codec(6, 4);
  const auto coded = codec.encode(src);
  int subsets = 0;
  for (Subset m : enumerate_subsets(6, 4)) {
    REQUIRE(codec.decode(pick(coded, m)) == src);
    ++subsets;
  }
  CHECK(subsets == 15);
}

TEST_CASE("mds: random (10,7) subsets with 64-byte payloads") {
  std::mt19937_64 rng(5);
  const MdsCodec codec(10, 7);
  for (int trial = 0; trial < 50; ++trial) {
    const auto src = random_payloads(7, 64, rng);
    auto coded = codec.encode(src);
    std::shuffle(coded.begin(), coded.end(), rng);
    coded.resize(7);
    REQUIRE(codec.decode(coded) == src);
  }
}

TEST_CASE("mds: systematic prefix and linearity") {
  std::mt19937_64 rng(6);
  for (std::uint32_t n = 1; n <= 12; ++n) {
    for (std::uint32_t k = 1; k <= n; ++k) {
      const MdsCodec codec(n, k);
      const auto a = random_payloads(k, 8, rng);
      const auto b = random_payloads(k, 8, rng);
      std::vector<Payload> sum = a;
      for (std::uint32_t j = 0; j < k; ++j) {
        for (std::size_t i = 0; i < 8; ++i) sum[j][i] ^= b[j][i];
      }
      const auto ca = codec.encode(a);
      const auto cb = codec.encode(b);
      const auto cs = codec.encode(sum);
      for (std::uint32_t i = 0; i < k; ++i) REQUIRE(ca[i].payload == a[i]);
      for (std::uint32_t i = 0; i < n; ++i) {
        Payload x = ca[i].payload;
        for (std::size_t t = 0; t < 8; ++t) x[t] ^= cb[i].payload[t];
        REQUIRE(cs[i].payload == x);
      }
    }
  }
}

TEST_CASE("mds: decode errors") {
  std::mt19937_64 rng(7);
  const MdsCodec codec(6, 4);
  const auto coded = codec.encode(random_payloads(4, 8, rng));
  CHECK_THROWS_AS(codec.decode(std::vector<Packet>(coded.begin(), coded.begin() + 3)),
                  CodecError);
  std::vector<Packet> dup{coded[0], coded[1], coded[2], coded[2]};
  CHECK_THROWS_AS(codec.decode(dup), CodecError);
  std::vector<Packet> ragged{coded[0], coded[1], coded[2], coded[3]};
  ragged[3].payload.pop_back();
  CHECK_THROWS_AS(codec.decode(ragged), CodecError);
  std::vector<Packet> bad_index{coded[0], coded[1], coded[2], {9, coded[3].payload}};
  CHECK_THROWS_AS(codec.decode(bad_index), CodecError);
  CHECK_THROWS_AS(codec.encode(random_payloads(4, 7, rng)), CodecError);  // odd
  CHECK_THROWS_AS(codec.encode(random_payloads(3, 8, rng)), CodecError);
  CHECK_THROWS_AS(MdsCodec(3, 4), CodecError);
  CHECK_THROWS_AS(MdsCodec(3, 0), CodecError);
}
