#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "pdacache/mds.hpp"
#include "pdacache/pda.hpp"
#include "pdacache/rational.hpp"

namespace pdacache {

enum class PlacementMode { kUncoded, kCoded };

std::string to_string(PlacementMode mode);

// N equal-length files held by the server.
struct Library {
  std::size_t file_len = 0;
  std::vector<Payload> files;

  std::uint32_t N() const { return static_cast<std::uint32_t>(files.size()); }

  // Files filled from a mt19937_64 stream seeded with `seed`.
  static Library random(std::uint32_t N, std::size_t file_len,
                        std::uint64_t seed);
  // Every regular file in `dir`, sorted by name; all must share one length.
  static Library from_directory(const std::filesystem::path& dir);
};

// d[k] is the file requested by user k.
using Request = std::vector<std::uint32_t>;

// (file, coded packet index)
using PacketKey = std::pair<std::uint32_t, std::uint32_t>;

struct UserCache {
  std::map<PacketKey, Payload> packets;
  std::uint64_t bytes() const;
};

struct PlacementState {
  PlacementMode mode = PlacementMode::kUncoded;
  Pda pda;
  std::uint64_t F = 0;
  std::uint64_t Z = 0;       // stars per column before any deletion
  std::uint64_t zprime = 0;  // blanks per column (0 when uncoded)
  std::uint64_t S = 0;
  std::uint32_t source_packets = 0;  // F uncoded, F - Z' coded
  std::size_t packet_len = 0;
  std::size_t file_len = 0;  // before padding
  Rational memory_ratio;
  // Server side: packet j of file n (coded packets in coded mode).
  std::vector<std::vector<Payload>> server_packets;
  std::vector<UserCache> caches;
  // Positions of each integer s, row-major.
  std::vector<std::vector<Position>> slots;
  // (F, F - Z') codec, coded mode only.
  std::optional<MdsCodec> codec;

  std::size_t padded_file_len() const { return source_packets * packet_len; }
};

struct Signal {
  std::uint32_t slot = 0;
  Payload payload;
  std::vector<Position> contributors;  // (row j, user k)
};

struct DeliveryTranscript {
  std::vector<Signal> signals;
  std::size_t packet_len = 0;
};

// Uncoded mode needs a blank-free PDA. Coded mode takes a reduced array: its
// blanks, read back as stars, must give a valid PDA in which every blank was
// a useless star, and every column must hold the same number of blanks.
PlacementState place(const Pda& pda, const Library& library,
                     PlacementMode mode);

DeliveryTranscript deliver(const PlacementState& state, const Request& d);

Payload decode_user(const PlacementState& state,
                    const DeliveryTranscript& transcript, const Request& d,
                    std::uint32_t user);

struct RunReport {
  bool ok = false;
  PlacementMode mode = PlacementMode::kUncoded;
  std::uint64_t K = 0;
  std::uint64_t N = 0;
  std::uint64_t S = 0;
  std::uint64_t subpacketization = 0;
  std::uint64_t zprime = 0;
  Rational rate;
  Rational memory_ratio;
  std::uint64_t bytes_sent = 0;
  std::size_t packet_len = 0;
  std::size_t padded_file_len = 0;
  std::uint64_t cached_bytes_per_user = 0;
  bool distinct_request = false;
  std::vector<bool> user_ok;
};

RunReport run_and_verify(const Pda& pda, const Library& library,
                         const Request& d, PlacementMode mode);

// 0, 1, ..., K-1; needs N >= K.
Request identity_request(std::uint32_t K, std::uint32_t N);

}  // namespace pdacache
