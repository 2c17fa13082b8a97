#include "pdacache/construction.hpp"

#include <algorithm>
#include <numeric>

namespace pdacache {

namespace {

// Arrays beyond this many cells are not desk-scale and are refused.
constexpr std::uint64_t kMaxCells = std::uint64_t{1} << 28;

std::string join(const std::vector<std::string>& parts) {
  std::string out;
  for (const auto& p : parts) {
    if (!out.empty()) out += "; ";
    out += p;
  }
  return out;
}

}  // namespace

std::string to_string(Rule rule) { return rule == Rule::kI ? "I" : "II"; }

std::vector<std::string> construction_violations(const ConstructionParams& p) {
  std::vector<std::string> v;
  if (p.H > kMaxGroundSet) v.push_back("H must be at most 64");
  if (p.r == 0 || p.r >= p.H) v.push_back("r must satisfy 0 < r < H");
  if (p.b == 0 || p.b >= p.H) v.push_back("b must satisfy 0 < b < H");
  if (p.lambda == 0) v.push_back("lambda must be positive");
  if (p.lambda >= std::min(p.r, p.b)) v.push_back("lambda must be < min(r, b)");
  if (p.r + p.b > p.H + p.lambda) v.push_back("r + b must be <= H + lambda");
  return v;
}

bool in_table_gap(const ConstructionParams& p) {
  return construction_violations(p).empty() && p.r + p.b - p.lambda >= p.H;
}

Pda construct(const ConstructionParams& p) {
  if (auto v = construction_violations(p); !v.empty()) throw ParamError(join(v));

  const std::vector<Subset> rows = enumerate_subsets(p.H, p.b);
  const std::vector<Subset> cols = enumerate_subsets(p.H, p.r);
  if (checked_mul(rows.size(), cols.size()) > kMaxCells) {
    throw ParamError("array of " + std::to_string(rows.size()) + " x " +
                     std::to_string(cols.size()) + " cells is too large");
  }

  std::vector<CellLabel> labels(rows.size() * cols.size());
  std::vector<bool> labeled(labels.size(), false);
  std::vector<CellLabel> distinct;
  for (std::size_t j = 0; j < rows.size(); ++j) {
    const Subset B = rows[j];
    for (std::size_t k = 0; k < cols.size(); ++k) {
      const Subset A = cols[k];
      const Subset I = A & B;
      if (subset_size(I) != p.lambda) continue;
      const CellLabel label{(A | B) & ~I, p.rule == Rule::kI ? I : (A & ~B)};
      labels[j * cols.size() + k] = label;
      labeled[j * cols.size() + k] = true;
      distinct.push_back(label);
    }
  }
  std::sort(distinct.begin(), distinct.end());
  distinct.erase(std::unique(distinct.begin(), distinct.end()), distinct.end());

  std::vector<Entry> cells(labels.size(), Entry::star());
  for (std::size_t i = 0; i < cells.size(); ++i) {
    if (!labeled[i]) continue;
    const auto it = std::lower_bound(distinct.begin(), distinct.end(), labels[i]);
    cells[i] = Entry::integer(static_cast<std::uint32_t>(it - distinct.begin()));
  }
  return Pda(rows.size(), cols.size(), std::move(cells));
}

PdaParams predicted_params(const ConstructionParams& p) {
  if (auto v = construction_violations(p); !v.empty()) throw ParamError(join(v));
  const std::int64_t H = p.H, r = p.r, b = p.b, lam = p.lambda;
  const std::int64_t c = r + b - 2 * lam;  // |(A u B) - I|

  PdaParams out;
  out.K = binomial(H, r);
  out.F = binomial(H, b);
  out.Z = out.F - checked_mul(binomial(r, lam), binomial(H - r, b - lam));

  // Each label (C, second) occurs once per way of rebuilding (A, B) from it.
  std::uint64_t per_label = 0;
  if (p.rule == Rule::kI) {
    out.S = checked_mul(binomial(H, c), binomial(H - c, lam));
    per_label = binomial(c, r - lam);
  } else {
    out.S = checked_mul(binomial(H, c), binomial(c, r - lam));
    per_label = binomial(H - c, lam);
  }
  out.gain_profile[per_label] = out.S;
  return out;
}

Pda mn_pda(unsigned K, unsigned t) {
  if (K > kMaxGroundSet) throw ParamError("K must be at most 64");
  if (t == 0 || t >= K) throw ParamError("t must satisfy 0 < t < K");
  const std::vector<Subset> rows = enumerate_subsets(K, t);
  if (checked_mul(rows.size(), K) > kMaxCells) {
    throw ParamError("MN array is too large");
  }
  Pda out(rows.size(), K);
  for (std::size_t j = 0; j < rows.size(); ++j) {
    for (unsigned k = 0; k < K; ++k) {
      const Subset bit = Subset{1} << k;
      if (rows[j] & bit) continue;
      out.set(j, k,
              Entry::integer(static_cast<std::uint32_t>(colex_rank(rows[j] | bit))));
    }
  }
  return out;
}

}  // namespace pdacache
