#pragma once

#include <compare>
#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "pdacache/error.hpp"

namespace pdacache {

enum class EntryTag : std::uint8_t { kStar, kInt, kBlank };

// One cell of a placement delivery array. Blank marks a deleted (useless)
// star and only appears in reduced arrays.
class Entry {
 public:
  constexpr Entry() = default;
  static constexpr Entry star() { return Entry(EntryTag::kStar, 0); }
  static constexpr Entry blank() { return Entry(EntryTag::kBlank, 0); }
  static constexpr Entry integer(std::uint32_t v) {
    return Entry(EntryTag::kInt, v);
  }

  constexpr EntryTag tag() const { return tag_; }
  constexpr bool is_star() const { return tag_ == EntryTag::kStar; }
  constexpr bool is_int() const { return tag_ == EntryTag::kInt; }
  constexpr bool is_blank() const { return tag_ == EntryTag::kBlank; }
  // Only meaningful when is_int().
  constexpr std::uint32_t value() const { return value_; }

  friend constexpr bool operator==(const Entry&, const Entry&) = default;

 private:
  constexpr Entry(EntryTag t, std::uint32_t v) : tag_(t), value_(v) {}
  EntryTag tag_ = EntryTag::kStar;
  std::uint32_t value_ = 0;
};

struct Position {
  std::uint32_t row = 0;
  std::uint32_t col = 0;
  friend constexpr auto operator<=>(const Position&, const Position&) = default;
};

std::string to_string(const Position& p);

// F x K grid stored row-major. Rows index packets, columns index users.
class Pda {
 public:
  Pda() = default;
  // All-star grid.
  Pda(std::size_t rows, std::size_t cols);
  Pda(std::size_t rows, std::size_t cols, std::vector<Entry> cells);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  const Entry& at(std::size_t row, std::size_t col) const {
    return cells_[row * cols_ + col];
  }
  void set(std::size_t row, std::size_t col, Entry e) {
    cells_[row * cols_ + col] = e;
  }
  std::span<const Entry> row(std::size_t r) const {
    return {cells_.data() + r * cols_, cols_};
  }
  std::span<const Entry> cells() const { return cells_; }

  bool has_blanks() const;

  friend bool operator==(const Pda&, const Pda&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Entry> cells_;
};

// Maps a coded gain r_s to the number of slots s having that gain.
using GainProfile = std::map<std::uint64_t, std::uint64_t>;

struct PdaParams {
  std::uint64_t K = 0;
  std::uint64_t F = 0;
  std::uint64_t Z = 0;
  std::uint64_t S = 0;
  GainProfile gain_profile;
  friend bool operator==(const PdaParams&, const PdaParams&) = default;
};

// The four ways a pair of equal integer entries can break condition C3.
enum class C3Failure { kSameRow, kSameColumn, kFirstCrossNotStar, kSecondCrossNotStar };

std::string to_string(C3Failure f);

class C3Violation : public ValidationError {
 public:
  C3Violation(Position first, Position second, std::uint32_t value,
              C3Failure failure);
  Position first() const { return first_; }
  Position second() const { return second_; }
  std::uint32_t value() const { return value_; }
  C3Failure failure() const { return failure_; }

 private:
  Position first_;
  Position second_;
  std::uint32_t value_;
  C3Failure failure_;
};

// 1 + the largest integer in the grid, or 0 if it holds no integers.
std::uint32_t slot_count(const Pda& pda);

// For each s in [0, slot_count), the positions holding s in row-major order.
std::vector<std::vector<Position>> slot_positions(const Pda& pda);

GainProfile gain_profile(const std::vector<std::vector<Position>>& slots);

// Checks conditions C1-C3 and returns (K, F, Z, S, gain profile). Throws
// ValidationError (C3Violation for C3) naming the first failure found.
PdaParams validate(const Pda& pda);

std::vector<Position> integer_positions(const Pda& pda, std::uint32_t s);

struct StarClassification {
  std::vector<Position> useful;   // row-major
  std::vector<Position> useless;  // row-major
  std::vector<std::uint64_t> per_column_useless;
};

// A star (j, k) is useful iff some integer occurs both in row j and in
// column k. Blanks are ignored.
StarClassification classify_stars(const Pda& pda);

struct Reduction {
  Pda reduced;
  std::uint64_t zprime = 0;
};

// Replaces every useless star by a blank. Throws UnsupportedArrayError when
// the per-column useless count is not the same for all columns.
Reduction reduce(const Pda& pda);

// Copy of `pda` with blanks turned back into stars.
Pda restore_blanks(const Pda& pda);

// Text format: header "F K", then F rows of K whitespace separated tokens
// ('*' star, '-' blank, decimal integer). Lines starting with '#' are
// comments.
Pda parse_pda(std::string_view text);
std::string serialize_pda(const Pda& pda);

}  // namespace pdacache
