#include "pdacache/mds.hpp"

#include <algorithm>
#include <string>

#include "pdacache/error.hpp"

namespace pdacache {

namespace {

using gf16::Elem;

// Gauss-Jordan inverse of a size x size row-major matrix. Throws CodecError
// if the matrix is singular.
std::vector<Elem> invert(std::vector<Elem> m, std::size_t size) {
  std::vector<Elem> out(size * size, 0);
  for (std::size_t i = 0; i < size; ++i) out[i * size + i] = 1;

  for (std::size_t col = 0; col < size; ++col) {
    std::size_t pivot = col;
    while (pivot < size && m[pivot * size + col] == 0) ++pivot;
    if (pivot == size) throw CodecError("singular decoding matrix");
    if (pivot != col) {
      std::swap_ranges(m.begin() + pivot * size, m.begin() + (pivot + 1) * size,
                       m.begin() + col * size);
      std::swap_ranges(out.begin() + pivot * size,
                       out.begin() + (pivot + 1) * size,
                       out.begin() + col * size);
    }
    const Elem scale = gf16::inv(m[col * size + col]);
    for (std::size_t c = 0; c < size; ++c) {
      m[col * size + c] = gf16::mul(m[col * size + c], scale);
      out[col * size + c] = gf16::mul(out[col * size + c], scale);
    }
    for (std::size_t r = 0; r < size; ++r) {
      if (r == col) continue;
      const Elem f = m[r * size + col];
      if (f == 0) continue;
      for (std::size_t c = 0; c < size; ++c) {
        m[r * size + c] ^= gf16::mul(f, m[col * size + c]);
        out[r * size + c] ^= gf16::mul(f, out[col * size + c]);
      }
    }
  }
  return out;
}

}  // namespace

MdsCodec::MdsCodec(std::uint32_t n, std::uint32_t k)
    : n_(n), k_(k), binary_(n - k <= 1) {
  if (k == 0 || k > n) {
    throw CodecError("need 1 <= k <= n, got n=" + std::to_string(n) +
                     " k=" + std::to_string(k));
  }
  if (n > gf16::kMultiplicativeOrder) {
    throw CodecError("n exceeds the 65535 packets GF(2^16) supports");
  }
  const std::uint32_t m = n - k;
  if (m == 0) return;
  if (m == 1) {
    parity_.assign(k, 1);
    return;
  }

  // top = V[0..k) restricted to the systematic rows; parity rows are
  // V[i] * inverse(top).
  std::vector<Elem> top(std::size_t{k} * k);
  for (std::uint32_t i = 0; i < k; ++i) {
    for (std::uint32_t j = 0; j < k; ++j) {
      top[std::size_t{i} * k + j] = gf16::pow(static_cast<Elem>(i), j);
    }
  }
  const std::vector<Elem> top_inv = invert(std::move(top), k);

  parity_.assign(std::size_t{m} * k, 0);
  std::vector<Elem> vrow(k);
  for (std::uint32_t p = 0; p < m; ++p) {
    const Elem x = static_cast<Elem>(k + p);
    for (std::uint32_t j = 0; j < k; ++j) vrow[j] = gf16::pow(x, j);
    for (std::uint32_t c = 0; c < k; ++c) {
      Elem acc = 0;
      for (std::uint32_t j = 0; j < k; ++j) {
        acc ^= gf16::mul(vrow[j], top_inv[std::size_t{j} * k + c]);
      }
      parity_[std::size_t{p} * k + c] = acc;
    }
  }
}

std::vector<Elem> MdsCodec::generator_row(std::uint32_t i) const {
  if (i >= n_) throw CodecError("packet index out of range");
  if (i < k_) {
    std::vector<Elem> row(k_, 0);
    row[i] = 1;
    return row;
  }
  const auto first = parity_.begin() + std::size_t{i - k_} * k_;
  return {first, first + k_};
}

void MdsCodec::check_length(std::size_t len) const {
  if (!binary_ && len % 2 != 0) {
    throw CodecError("payload length " + std::to_string(len) +
                     " is odd; GF(2^16) symbols need even lengths");
  }
}

namespace {

// dst ^= c * src, bytewise when the coefficient is 0 or 1.
void accumulate(Elem c, const Payload& src, Payload& dst) {
  if (c == 0) return;
  if (c == 1) {
    for (std::size_t i = 0; i < src.size(); ++i) dst[i] ^= src[i];
    return;
  }
  gf16::mul_add_region(c, src, dst);
}

}  // namespace

std::vector<Packet> MdsCodec::encode(std::span<const Payload> source) const {
  if (source.size() != k_) {
    throw CodecError("expected " + std::to_string(k_) + " source payloads, got " +
                     std::to_string(source.size()));
  }
  const std::size_t len = source.front().size();
  for (const Payload& p : source) {
    if (p.size() != len) throw CodecError("source payloads differ in length");
  }
  check_length(len);

  std::vector<Packet> out;
  out.reserve(n_);
  for (std::uint32_t i = 0; i < k_; ++i) out.push_back({i, source[i]});
  for (std::uint32_t p = 0; p < n_ - k_; ++p) {
    Payload parity(len, 0);
    for (std::uint32_t j = 0; j < k_; ++j) {
      accumulate(parity_[std::size_t{p} * k_ + j], source[j], parity);
    }
    out.push_back({k_ + p, std::move(parity)});
  }
  return out;
}

std::vector<Payload> MdsCodec::decode(std::span<const Packet> packets) const {
  if (packets.size() < k_) {
    throw CodecError("need " + std::to_string(k_) + " packets, got " +
                     std::to_string(packets.size()));
  }
  const std::size_t len = packets.front().payload.size();
  std::vector<bool> seen(n_, false);
  for (const Packet& p : packets) {
    if (p.index >= n_) {
      throw CodecError("packet index " + std::to_string(p.index) +
                       " outside [0," + std::to_string(n_) + ")");
    }
    if (seen[p.index]) {
      throw CodecError("duplicate packet index " + std::to_string(p.index));
    }
    seen[p.index] = true;
    if (p.payload.size() != len) throw CodecError("packet lengths differ");
  }
  check_length(len);

  // Systematic packets first so that as few sources as possible need solving.
  std::vector<const Packet*> chosen;
  chosen.reserve(k_);
  for (const Packet& p : packets) {
    if (p.index < k_ && chosen.size() < k_) chosen.push_back(&p);
  }
  for (const Packet& p : packets) {
    if (p.index >= k_ && chosen.size() < k_) chosen.push_back(&p);
  }

  std::vector<Payload> out(k_);
  std::vector<bool> missing(k_, true);
  for (const Packet* p : chosen) {
    if (p->index < k_) {
      out[p->index] = p->payload;
      missing[p->index] = false;
    }
  }
  if (std::none_of(missing.begin(), missing.end(), [](bool m) { return m; })) {
    return out;
  }

  std::vector<Elem> m(std::size_t{k_} * k_);
  for (std::uint32_t r = 0; r < k_; ++r) {
    const auto row = generator_row(chosen[r]->index);
    std::copy(row.begin(), row.end(), m.begin() + std::size_t{r} * k_);
  }
  const std::vector<Elem> m_inv = invert(std::move(m), k_);
  for (std::uint32_t j = 0; j < k_; ++j) {
    if (!missing[j]) continue;
    Payload src(len, 0);
    for (std::uint32_t r = 0; r < k_; ++r) {
      accumulate(m_inv[std::size_t{j} * k_ + r], chosen[r]->payload, src);
    }
    out[j] = std::move(src);
  }
  return out;
}

}  // namespace pdacache
