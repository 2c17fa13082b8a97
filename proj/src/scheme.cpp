#include "pdacache/scheme.hpp"

#include <algorithm>
#include <fstream>
#include <random>
#include <set>

namespace pdacache {

std::string to_string(PlacementMode mode) {
  return mode == PlacementMode::kUncoded ? "uncoded" : "coded";
}

Library Library::random(std::uint32_t N, std::size_t file_len,
                        std::uint64_t seed) {
  if (N == 0) throw SimulationError("library needs at least one file");
  std::mt19937_64 rng(seed);
  Library lib;
  lib.file_len = file_len;
  lib.files.assign(N, Payload(file_len));
  for (Payload& f : lib.files) {
    for (std::size_t i = 0; i < file_len; i += 8) {
      std::uint64_t word = rng();
      for (std::size_t b = i; b < std::min(file_len, i + 8); ++b) {
        f[b] = static_cast<std::uint8_t>(word & 0xFF);
        word >>= 8;
      }
    }
  }
  return lib;
}

Library Library::from_directory(const std::filesystem::path& dir) {
  std::vector<std::filesystem::path> paths;
  for (const auto& entry : std::filesystem::directory_iterator(dir)) {
    if (entry.is_regular_file()) paths.push_back(entry.path());
  }
  std::sort(paths.begin(), paths.end());
  if (paths.empty()) throw SimulationError("no files in " + dir.string());

  Library lib;
  for (const auto& p : paths) {
    std::ifstream in(p, std::ios::binary);
    if (!in) throw SimulationError("cannot read " + p.string());
    Payload data((std::istreambuf_iterator<char>(in)),
                 std::istreambuf_iterator<char>());
    if (!lib.files.empty() && data.size() != lib.file_len) {
      throw SimulationError("file " + p.string() + " has length " +
                            std::to_string(data.size()) + ", expected " +
                            std::to_string(lib.file_len));
    }
    lib.file_len = data.size();
    lib.files.push_back(std::move(data));
  }
  return lib;
}

std::uint64_t UserCache::bytes() const {
  std::uint64_t total = 0;
  for (const auto& [key, payload] : packets) total += payload.size();
  return total;
}

namespace {

std::size_t ceil_div(std::size_t a, std::size_t b) { return (a + b - 1) / b; }

std::vector<Payload> split(const Payload& file, std::size_t packets,
                           std::size_t packet_len) {
  std::vector<Payload> out(packets, Payload(packet_len, 0));
  for (std::size_t i = 0; i < file.size(); ++i) {
    out[i / packet_len][i % packet_len] = file[i];
  }
  return out;
}

void check_request(const PlacementState& state, const Request& d) {
  if (d.size() != state.pda.cols()) {
    throw SimulationError("request has " + std::to_string(d.size()) +
                          " entries for " + std::to_string(state.pda.cols()) +
                          " users");
  }
  const auto N = state.server_packets.size();
  for (std::size_t k = 0; k < d.size(); ++k) {
    if (d[k] >= N) {
      throw SimulationError("user " + std::to_string(k) + " requests file " +
                            std::to_string(d[k]) + " but N = " +
                            std::to_string(N));
    }
  }
}

}  // namespace

PlacementState place(const Pda& pda, const Library& library,
                     PlacementMode mode) {
  if (library.files.empty()) throw SimulationError("empty library");
  if (library.file_len == 0) throw SimulationError("files must be non-empty");

  PlacementState st;
  st.mode = mode;
  st.pda = pda;
  st.file_len = library.file_len;
  const std::size_t N = library.files.size();
  const std::size_t F = pda.rows();
  const std::size_t K = pda.cols();

  if (mode == PlacementMode::kUncoded) {
    const PdaParams params = validate(pda);
    st.F = params.F;
    st.Z = params.Z;
    st.S = params.S;
    st.source_packets = static_cast<std::uint32_t>(F);
    st.packet_len = ceil_div(library.file_len, F);
    st.memory_ratio = make_rational(params.Z, params.F);
    st.server_packets.reserve(N);
    for (const Payload& f : library.files) {
      st.server_packets.push_back(split(f, F, st.packet_len));
    }
  } else {
    const Pda restored = restore_blanks(pda);
    const PdaParams params = validate(restored);
    std::vector<std::uint64_t> blanks(K, 0);
    for (std::size_t j = 0; j < F; ++j) {
      for (std::size_t k = 0; k < K; ++k) {
        if (pda.at(j, k).is_blank()) ++blanks[k];
      }
    }
    if (std::adjacent_find(blanks.begin(), blanks.end(),
                           std::not_equal_to<>()) != blanks.end()) {
      throw UnsupportedArrayError(
          "coded placement needs the same number of blanks in every column");
    }
    const StarClassification cls = classify_stars(restored);
    const std::set<Position> useless(cls.useless.begin(), cls.useless.end());
    for (std::size_t j = 0; j < F; ++j) {
      for (std::size_t k = 0; k < K; ++k) {
        const Position p{static_cast<std::uint32_t>(j),
                         static_cast<std::uint32_t>(k)};
        if (pda.at(j, k).is_blank() && !useless.count(p)) {
          throw UnsupportedArrayError("blank at " + to_string(p) +
                                      " replaces a useful star");
        }
      }
    }

    st.F = params.F;
    st.Z = params.Z;
    st.S = params.S;
    st.zprime = blanks.front();
    const auto k_src = static_cast<std::uint32_t>(F - st.zprime);
    st.source_packets = k_src;
    st.packet_len = ceil_div(library.file_len, k_src);
    st.packet_len += st.packet_len % 2;  // whole 16-bit symbols
    st.memory_ratio = make_rational(st.Z - st.zprime, st.F - st.zprime);

    st.codec.emplace(static_cast<std::uint32_t>(F), k_src);
    st.server_packets.reserve(N);
    for (const Payload& f : library.files) {
      std::vector<Packet> coded = st.codec->encode(split(f, k_src, st.packet_len));
      std::vector<Payload> payloads;
      payloads.reserve(F);
      for (Packet& p : coded) payloads.push_back(std::move(p.payload));
      st.server_packets.push_back(std::move(payloads));
    }
  }

  st.caches.resize(K);
  for (std::size_t k = 0; k < K; ++k) {
    for (std::size_t j = 0; j < F; ++j) {
      if (!pda.at(j, k).is_star()) continue;
      for (std::size_t n = 0; n < N; ++n) {
        st.caches[k].packets.emplace(
            PacketKey{static_cast<std::uint32_t>(n), static_cast<std::uint32_t>(j)},
            st.server_packets[n][j]);
      }
    }
  }
  st.slots = slot_positions(pda);
  return st;
}

DeliveryTranscript deliver(const PlacementState& state, const Request& d) {
  check_request(state, d);
  DeliveryTranscript t;
  t.packet_len = state.packet_len;
  t.signals.reserve(state.slots.size());
  for (std::size_t s = 0; s < state.slots.size(); ++s) {
    Signal sig;
    sig.slot = static_cast<std::uint32_t>(s);
    sig.payload.assign(state.packet_len, 0);
    sig.contributors = state.slots[s];
    for (const Position& p : sig.contributors) {
      const Payload& packet = state.server_packets[d[p.col]][p.row];
      for (std::size_t i = 0; i < packet.size(); ++i) sig.payload[i] ^= packet[i];
    }
    t.signals.push_back(std::move(sig));
  }
  return t;
}

Payload decode_user(const PlacementState& state,
                    const DeliveryTranscript& transcript, const Request& d,
                    std::uint32_t user) {
  check_request(state, d);
  if (user >= state.pda.cols()) throw SimulationError("user out of range");
  const std::uint32_t want = d[user];
  const UserCache& cache = state.caches[user];

  // Packets of the requested file, by coded index.
  std::map<std::uint32_t, Payload> have;
  for (const auto& [key, payload] : cache.packets) {
    if (key.first == want) have.emplace(key.second, payload);
  }
  for (const Signal& sig : transcript.signals) {
    const auto mine = std::find_if(
        sig.contributors.begin(), sig.contributors.end(),
        [user](const Position& p) { return p.col == user; });
    if (mine == sig.contributors.end()) continue;
    Payload packet = sig.payload;
    for (const Position& p : sig.contributors) {
      if (p.col == user) continue;
      const auto it = cache.packets.find(PacketKey{d[p.col], p.row});
      if (it == cache.packets.end()) {
        throw SimulationError("user " + std::to_string(user) +
                              " lacks side packet (" + std::to_string(d[p.col]) +
                              "," + std::to_string(p.row) + ") for slot " +
                              std::to_string(sig.slot));
      }
      for (std::size_t i = 0; i < packet.size(); ++i) packet[i] ^= it->second[i];
    }
    have.emplace(mine->row, std::move(packet));
  }

  std::vector<Payload> source;
  if (state.mode == PlacementMode::kUncoded) {
    if (have.size() != state.F) {
      throw SimulationError("user " + std::to_string(user) + " holds " +
                            std::to_string(have.size()) + " of " +
                            std::to_string(state.F) + " packets");
    }
    for (auto& [j, payload] : have) source.push_back(std::move(payload));
  } else {
    if (have.size() < state.source_packets) {
      throw SimulationError("user " + std::to_string(user) + " holds " +
                            std::to_string(have.size()) + " coded packets, needs " +
                            std::to_string(state.source_packets));
    }
    std::vector<Packet> packets;
    packets.reserve(have.size());
    for (auto& [j, payload] : have) packets.push_back({j, std::move(payload)});
    source = state.codec->decode(packets);
  }

  Payload file;
  file.reserve(state.padded_file_len());
  for (const Payload& p : source) file.insert(file.end(), p.begin(), p.end());
  file.resize(state.file_len);
  return file;
}

RunReport run_and_verify(const Pda& pda, const Library& library,
                         const Request& d, PlacementMode mode) {
  const PlacementState st = place(pda, library, mode);
  const DeliveryTranscript t = deliver(st, d);

  RunReport r;
  r.mode = mode;
  r.K = pda.cols();
  r.N = library.N();
  r.S = st.S;
  r.subpacketization = st.source_packets;
  r.zprime = st.zprime;
  r.rate = make_rational(st.S, st.source_packets);
  r.memory_ratio = st.memory_ratio;
  r.bytes_sent = st.S * st.packet_len;
  r.packet_len = st.packet_len;
  r.padded_file_len = st.padded_file_len();
  r.cached_bytes_per_user = st.caches.empty() ? 0 : st.caches.front().bytes();
  r.distinct_request = std::set<std::uint32_t>(d.begin(), d.end()).size() == d.size();
  r.user_ok.resize(r.K);
  for (std::uint32_t k = 0; k < r.K; ++k) {
    r.user_ok[k] = decode_user(st, t, d, k) == library.files[d[k]];
  }
  r.ok = std::all_of(r.user_ok.begin(), r.user_ok.end(), [](bool b) { return b; });
  return r;
}

Request identity_request(std::uint32_t K, std::uint32_t N) {
  if (N < K) {
    throw SimulationError("distinct-request (worst-case) mode needs N >= K; N=" +
                          std::to_string(N) + " K=" + std::to_string(K));
  }
  Request d(K);
  for (std::uint32_t k = 0; k < K; ++k) d[k] = k;
  return d;
}

}  // namespace pdacache
