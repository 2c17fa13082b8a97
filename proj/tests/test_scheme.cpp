#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <numeric>
#include <random>

#include "oracles.hpp"
#include "pdacache/construction.hpp"
#include "pdacache/scheme.hpp"

using namespace pdacache;

namespace {

std::set<PacketKey> keys(const UserCache& c) {
  std::set<PacketKey> out;
  for (const auto& [k, v] : c.packets) out.insert(k);
  return out;
}

std::map<std::uint32_t, std::size_t> contributor_counts(const DeliveryTranscript& t) {
  std::map<std::uint32_t, std::size_t> out;
  for (const Signal& s : t.signals) out[s.slot] = s.contributors.size();
  return out;
}

Request random_distinct(std::uint32_t K, std::uint32_t N, std::mt19937_64& rng) {
  std::vector<std::uint32_t> files(N);
  std::iota(files.begin(), files.end(), 0u);
  std::shuffle(files.begin(), files.end(), rng);
  return Request(files.begin(), files.begin() + K);
}

}  // namespace

TEST_CASE("place: uncoded worked example") {
  const Library lib = Library::random(6, 60, 1);
  const PlacementState st = place(oracle::example1(), lib, PlacementMode::kUncoded);
  CHECK(st.memory_ratio == Rational(1, 3));
  CHECK(st.source_packets == 6);
  const std::pair<std::uint32_t, std::pair<std::uint32_t, std::uint32_t>> expected[] = {
      {0, {0, 5}}, {5, {0, 5}}, {1, {1, 4}}, {4, {1, 4}}, {2, {2, 3}}, {3, {2, 3}}};
  for (const auto& [user, rows] : expected) {
    std::set<PacketKey> want;
    for (std::uint32_t n = 0; n < 6; ++n) {
      want.insert({n, rows.first});
      want.insert({n, rows.second});
    }
    CHECK(keys(st.caches[user]) == want);
  }
}

TEST_CASE("place: coded reduced worked example") {
  const Library lib = Library::random(6, 60, 1);
  const PlacementState st =
      place(oracle::example1_reduced(), lib, PlacementMode::kCoded);
  CHECK(st.memory_ratio == Rational(1, 5));
  CHECK(st.zprime == 1);
  CHECK(st.source_packets == 5);
  std::set<PacketKey> want;
  for (std::uint32_t n = 0; n < 6; ++n) want.insert({n, 0});
  CHECK(keys(st.caches[0]) == want);
}

TEST_CASE("place: single user") {
  const Library lib = Library::random(2, 9, 4);
  const PlacementState st = place(parse_pda("2 1\n*\n0\n"), lib, PlacementMode::kUncoded);
  CHECK(st.memory_ratio == Rational(1, 2));
  CHECK(keys(st.caches[0]) == std::set<PacketKey>{{0, 0}, {1, 0}});
}

TEST_CASE("place: errors") {
  const Library lib = Library::random(6, 60, 1);
  CHECK_THROWS_AS(place(oracle::example1_reduced(), lib, PlacementMode::kUncoded),
                  ValidationError);
  Pda useful_blanked = oracle::example1();
  for (std::uint32_t j = 0; j < 6; ++j) useful_blanked.set(j, j, Entry::blank());
  CHECK_THROWS_AS(place(useful_blanked, lib, PlacementMode::kCoded),
                  UnsupportedArrayError);
  Pda uneven = oracle::example1();
  uneven.set(0, 5, Entry::blank());
  CHECK_THROWS_AS(place(uneven, lib, PlacementMode::kCoded), UnsupportedArrayError);
  CHECK_THROWS_AS(Library::random(0, 10, 1), SimulationError);
}

TEST_CASE("deliver: worked example table") {
  const Library lib = Library::random(6, 60, 2);
  const PlacementState st = place(oracle::example1(), lib, PlacementMode::kUncoded);
  const Request d{0, 1, 2, 3, 4, 5};
  const DeliveryTranscript t = deliver(st, d);

  // Slot s sends W_{a,x} + W_{c,y}, listed as (a, x, c, y).
  const std::array<std::array<std::uint32_t, 4>, 12> table{{
      {0, 1, 1, 0}, {0, 2, 2, 0}, {0, 3, 3, 0}, {0, 4, 4, 0},
      {1, 2, 2, 1}, {1, 3, 3, 1}, {1, 5, 5, 1}, {2, 4, 4, 2},
      {2, 5, 5, 2}, {3, 4, 4, 3}, {3, 5, 5, 3}, {4, 5, 5, 4},
  }};
  REQUIRE(t.signals.size() == 12);
  for (std::uint32_t s = 0; s < 12; ++s) {
    const Signal& sig = t.signals[s];
    CHECK(sig.slot == s);
    // With d the identity, file index == user index, packet index == row.
    const std::set<Position> want{{table[s][1], table[s][0]}, {table[s][3], table[s][2]}};
    CHECK(std::set<Position>(sig.contributors.begin(), sig.contributors.end()) == want);
    Payload x(st.packet_len, 0);
    for (const Position& p : sig.contributors) {
      for (std::size_t i = 0; i < x.size(); ++i) x[i] ^= st.server_packets[d[p.col]][p.row][i];
    }
    CHECK(sig.payload == x);
  }
  CHECK(t.signals[0].contributors == std::vector<Position>{{0, 1}, {1, 0}});
  CHECK(t.signals[11].contributors == std::vector<Position>{{4, 5}, {5, 4}});
}

TEST_CASE("deliver: a single-occurrence integer sends an uncoded packet") {
  const Library lib = Library::random(2, 8, 3);
  const PlacementState st = place(parse_pda("2 1\n*\n0\n"), lib, PlacementMode::kUncoded);
  const DeliveryTranscript t = deliver(st, {1});
  REQUIRE(t.signals.size() == 1);
  CHECK(t.signals[0].payload == st.server_packets[1][1]);
}

TEST_CASE("decode_user: worked example, both placements") {
  const Library lib = Library::random(6, 61, 9);
  const Request d{0, 1, 2, 3, 4, 5};
  for (const auto& [pda, mode] :
       {std::pair{oracle::example1(), PlacementMode::kUncoded},
        std::pair{oracle::example1_reduced(), PlacementMode::kCoded}}) {
    const PlacementState st = place(pda, lib, mode);
    const DeliveryTranscript t = deliver(st, d);
    std::vector<std::uint32_t> slots_for_user0;
    for (const Signal& s : t.signals) {
      for (const Position& p : s.contributors) {
        if (p.col == 0) slots_for_user0.push_back(s.slot);
      }
    }
    CHECK(slots_for_user0 == std::vector<std::uint32_t>{0, 1, 2, 3});
    for (std::uint32_t k = 0; k < 6; ++k) CHECK(decode_user(st, t, d, k) == lib.files[d[k]]);
  }
}

TEST_CASE("run_and_verify: rates") {
  const Library lib = Library::random(6, 100, 5);
  const RunReport a = run_and_verify(oracle::example1(), lib, {0, 1, 2, 3, 4, 5},
                                     PlacementMode::kUncoded);
  CHECK(a.ok);
  CHECK(a.rate == Rational(2));
  CHECK(a.memory_ratio == Rational(1, 3));
  CHECK(a.bytes_sent == 12 * a.packet_len);

  const RunReport b = run_and_verify(oracle::example1_reduced(), lib,
                                     {0, 1, 2, 3, 4, 5}, PlacementMode::kCoded);
  CHECK(b.ok);
  CHECK(b.rate == Rational(12, 5));
  CHECK(b.memory_ratio == Rational(1, 5));

  const Library lib4 = Library::random(4, 30, 6);
  const RunReport c = run_and_verify(mn_pda(4, 2), lib4, {3, 1, 0, 2},
                                     PlacementMode::kUncoded);
  CHECK(c.ok);
  CHECK(c.rate == Rational(2, 3));
}

TEST_CASE("run_and_verify: one file requested by everyone") {
  const Library lib = Library::random(1, 33, 8);
  const Request d(6, 0);
  CHECK(run_and_verify(oracle::example1(), lib, d, PlacementMode::kUncoded).ok);
  const RunReport r =
      run_and_verify(oracle::example1_reduced(), lib, d, PlacementMode::kCoded);
  CHECK(r.ok);
  CHECK_FALSE(r.distinct_request);
  CHECK_THROWS_AS(identity_request(6, 1), SimulationError);
}

TEST_CASE("run_and_verify: request errors") {
  const Library lib = Library::random(6, 12, 8);
  CHECK_THROWS_AS(run_and_verify(oracle::example1(), lib, {0, 1, 2},
                                 PlacementMode::kUncoded),
                  SimulationError);
  CHECK_THROWS_AS(run_and_verify(oracle::example1(), lib, {0, 1, 2, 3, 4, 6},
                                 PlacementMode::kUncoded),
                  SimulationError);
}

TEST_CASE("property: every generated PDA with H <= 6 delivers bit-exactly") {
  std::mt19937_64 rng(2024);
  int runs = 0;
  for (unsigned H = 3; H <= 6; ++H) {
    for (unsigned r = 1; r < H; ++r) {
      for (unsigned b = 1; b < H; ++b) {
        for (unsigned l = 1; l < std::min(r, b); ++l) {
          if (r + b > H + l) continue;
          for (Rule rule : {Rule::kI, Rule::kII}) {
            const Pda pda = construct({H, r, b, l, rule});
            const Pda reduced = reduce(pda).reduced;
            const auto K = static_cast<std::uint32_t>(pda.cols());
            const Library lib = Library::random(K, 37, rng());
            for (int i = 0; i < 20; ++i) {
              const Request d = random_distinct(K, K, rng);
              const RunReport u = run_and_verify(pda, lib, d, PlacementMode::kUncoded);
              const RunReport c = run_and_verify(reduced, lib, d, PlacementMode::kCoded);
              REQUIRE(u.ok);
              REQUIRE(c.ok);
              // Rate identity and memory accounting, exactly.
              REQUIRE(Rational(u.bytes_sent, u.padded_file_len) == u.rate);
              REQUIRE(Rational(c.bytes_sent, c.padded_file_len) == c.rate);
              REQUIRE(Rational(u.cached_bytes_per_user, K * u.padded_file_len) ==
                      u.memory_ratio);
              REQUIRE(Rational(c.cached_bytes_per_user, K * c.padded_file_len) ==
                      c.memory_ratio);
              ++runs;
            }
          }
        }
      }
    }
  }
  CHECK(runs > 200);
}

TEST_CASE("property: reduction keeps every slot's coded gain") {
  std::mt19937_64 rng(77);
  for (const ConstructionParams p :
       {ConstructionParams{5, 2, 2, 1, Rule::kI}, ConstructionParams{5, 3, 2, 1, Rule::kII},
        ConstructionParams{6, 3, 3, 1, Rule::kI}, ConstructionParams{6, 3, 3, 2, Rule::kII}}) {
    const Pda pda = construct(p);
    const Pda reduced = reduce(pda).reduced;
    const auto K = static_cast<std::uint32_t>(pda.cols());
    const Library lib = Library::random(K, 16, 3);
    const PlacementState su = place(pda, lib, PlacementMode::kUncoded);
    const PlacementState sc = place(reduced, lib, PlacementMode::kCoded);
    for (int i = 0; i < 5; ++i) {
      const Request d = random_distinct(K, K, rng);
      REQUIRE(contributor_counts(deliver(su, d)) == contributor_counts(deliver(sc, d)));
    }
  }
}

TEST_CASE("property: permuting users permutes decoded outputs") {
  std::mt19937_64 rng(12);
  const Pda base = construct({5, 2, 2, 1, Rule::kI});
  const auto K = static_cast<std::uint32_t>(base.cols());
  const Library lib = Library::random(K, 21, 4);
  for (int trial = 0; trial < 5; ++trial) {
    std::vector<std::uint32_t> perm(K);
    std::iota(perm.begin(), perm.end(), 0u);
    std::shuffle(perm.begin(), perm.end(), rng);
    const Request d = random_distinct(K, K, rng);
    Pda moved(base.rows(), base.cols());
    Request d2(K);
    for (std::uint32_t k = 0; k < K; ++k) {
      for (std::size_t j = 0; j < base.rows(); ++j) moved.set(j, perm[k], base.at(j, k));
      d2[perm[k]] = d[k];
    }
    const PlacementState s1 = place(base, lib, PlacementMode::kUncoded);
    const PlacementState s2 = place(moved, lib, PlacementMode::kUncoded);
    const auto t1 = deliver(s1, d);
    const auto t2 = deliver(s2, d2);
    for (std::uint32_t k = 0; k < K; ++k) {
      REQUIRE(decode_user(s2, t2, d2, perm[k]) == decode_user(s1, t1, d, k));
    }
  }
}

TEST_CASE("Library::from_directory") {
  const auto dir = std::filesystem::temp_directory_path() / "pdacache_lib_test";
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir);
  for (int i = 0; i < 3; ++i) {
    std::ofstream(dir / ("f" + std::to_string(i))) << "abcdefg" << i;
  }
  const Library lib = Library::from_directory(dir);
  CHECK(lib.N() == 3);
  CHECK(lib.file_len == 8);
  CHECK(lib.files[2].back() == '2');
  std::ofstream(dir / "f9") << "short";
  CHECK_THROWS_AS(Library::from_directory(dir), SimulationError);
  std::filesystem::remove_all(dir);
}
