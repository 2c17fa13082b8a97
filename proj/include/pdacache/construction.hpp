#pragma once

#include <string>
#include <vector>

#include "pdacache/pda.hpp"
#include "pdacache/subsets.hpp"

namespace pdacache {

// Integer-labeling rule for the subset construction. Rows are b-subsets B of
// [0, H), columns r-subsets A, and a cell is labeled iff |A n B| = lambda:
//   rule I : ((A u B) - I, I)       with I = A n B
//   rule II: ((A u B) - I, A - B)
enum class Rule { kI, kII };

std::string to_string(Rule rule);

struct ConstructionParams {
  unsigned H = 0;
  unsigned r = 0;
  unsigned b = 0;
  unsigned lambda = 0;
  Rule rule = Rule::kI;
  friend bool operator==(const ConstructionParams&,
                         const ConstructionParams&) = default;
};

// Human-readable list of constraint violations, empty when the parameters
// satisfy 0 < r, b < H, 1 <= lambda < min(r, b), r + b <= H + lambda and
// H <= 64.
std::vector<std::string> construction_violations(const ConstructionParams& p);

// True for parameters the construction accepts but the stricter
// r + b - lambda < H condition of the original scheme's table excludes.
bool in_table_gap(const ConstructionParams& p);

// The labeled pair a cell would carry, before integer renaming. `second` is
// I for rule I and A - B for rule II.
struct CellLabel {
  Subset union_minus_intersection = 0;
  Subset second = 0;
  friend auto operator<=>(const CellLabel&, const CellLabel&) = default;
};

// Rows over enumerate_subsets(H, b), columns over enumerate_subsets(H, r),
// integers assigned in increasing (C, second) order of the labels present.
Pda construct(const ConstructionParams& p);

// Closed-form (K, F, Z, S, gain profile) of construct(p).
PdaParams predicted_params(const ConstructionParams& p);

// Maddah-Ali-Niesen array: rows are t-subsets T of [0, K); entry (T, k) is a
// star iff k is in T, otherwise the colex rank of T u {k}.
Pda mn_pda(unsigned K, unsigned t);

}  // namespace pdacache
