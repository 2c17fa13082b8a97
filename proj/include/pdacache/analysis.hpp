#pragma once

#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "pdacache/construction.hpp"
#include "pdacache/pda.hpp"
#include "pdacache/rational.hpp"

namespace pdacache {

// (H, r, b, lambda) without a labeling rule.
struct DesignPoint {
  unsigned H = 0;
  unsigned r = 0;
  unsigned b = 0;
  unsigned lambda = 0;

  ConstructionParams with_rule(Rule rule) const { return {H, r, b, lambda, rule}; }
  friend bool operator==(const DesignPoint&, const DesignPoint&) = default;
};

// original: uncoded placement on the better of the two labelings.
// new_I / new_II: coded placement after deleting useless stars from the
// rule I / rule II array. new: per design point, whichever of new_I and
// new_II has the smaller rate. *_envelope: lower-left frontier of a curve.
enum class SchemeKind {
  kOriginal,
  kNewI,
  kNewII,
  kNew,
  kOriginalEnvelope,
  kNewEnvelope,
};

std::string to_string(SchemeKind kind);
SchemeKind scheme_kind_from_string(std::string_view name);

// Parameter conditions under which each closed form is stated.
enum class Gate {
  kOriginal,  // 0 < r, b < H, 1 <= lambda < min(r, b), r + b - lambda < H
  kRuleI,     // same, but r + b <= H
  kRuleII,    // same, but r + b <= H + lambda
};

std::vector<std::string> gate_violations(const DesignPoint& p, Gate gate);

inline constexpr std::string_view kTableGapFlag = "table_gap";

struct SchemeRecord {
  SchemeKind scheme = SchemeKind::kOriginal;
  DesignPoint params;
  std::uint64_t K = 0;
  Rational memory_ratio;
  Rational rate;
  std::uint64_t subpacketization = 0;
  std::uint64_t zprime = 0;
  // kTableGapFlag when the point lies outside the original scheme's
  // condition but inside the construction's.
  std::string flag;
  friend bool operator==(const SchemeRecord&, const SchemeRecord&) = default;
};

// Closed-form number of useless stars per column of construct(p).
std::uint64_t closed_form_useless(const ConstructionParams& p);

SchemeRecord original_params(const DesignPoint& p);
SchemeRecord new_params_I(const DesignPoint& p);
SchemeRecord new_params_II(const DesignPoint& p);

// Scheme numbers read off an actual array after deleting its useless stars.
struct MeasuredScheme {
  PdaParams params;
  std::uint64_t zprime = 0;
  std::uint64_t subpacketization = 0;
  Rational memory_ratio;
  Rational rate;
};

MeasuredScheme measure(const Pda& pda);

struct CrosscheckReport {
  bool pass = true;
  std::vector<std::uint64_t> per_column_useless;
  std::uint64_t expected_zprime = 0;
  std::optional<MeasuredScheme> measured;
  std::optional<SchemeRecord> formula;  // absent when the closed form's gate fails
  std::vector<std::string> mismatches;
};

// Builds construct(p) and compares it against predicted_params, the closed
// form useless count in every column, and (when the matching closed form's
// condition holds) the new scheme's F, M/N and R.
CrosscheckReport crosscheck(const ConstructionParams& p);

// Validates `pda` and checks that every column has exactly `expected_zprime`
// useless stars.
CrosscheckReport crosscheck_array(const Pda& pda, std::uint64_t expected_zprime);

const std::set<SchemeKind>& all_scheme_kinds();

// Records for every admissible (b, lambda) at fixed (H, r), sorted by memory
// ratio, restricted to `schemes`.
std::vector<SchemeRecord> sweep(unsigned H, unsigned r,
                                const std::set<SchemeKind>& schemes = all_scheme_kinds());

// Points of `records` that are not dominated: sorted by memory ratio, each
// kept point has a strictly smaller rate than every earlier kept point.
std::vector<SchemeRecord> lower_envelope(std::vector<SchemeRecord> records,
                                         SchemeKind as);

std::string to_csv(const std::vector<SchemeRecord>& records);
std::vector<SchemeRecord> parse_csv(std::string_view text);

// Rate vs memory ratio chart, one polyline per scheme present.
std::string to_svg(const std::vector<SchemeRecord>& records);

}  // namespace pdacache
