#include "pdacache/pda.hpp"

#include <algorithm>
#include <boost/dynamic_bitset.hpp>
#include <cctype>
#include <charconv>
#include <limits>
#include <optional>
#include <sstream>

namespace pdacache {

std::string to_string(const Position& p) {
  return "(" + std::to_string(p.row) + "," + std::to_string(p.col) + ")";
}

Pda::Pda(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), cells_(rows * cols, Entry::star()) {}

Pda::Pda(std::size_t rows, std::size_t cols, std::vector<Entry> cells)
    : rows_(rows), cols_(cols), cells_(std::move(cells)) {
  if (cells_.size() != rows_ * cols_) {
    throw std::invalid_argument("cell count does not match rows * cols");
  }
}

bool Pda::has_blanks() const {
  return std::any_of(cells_.begin(), cells_.end(),
                     [](const Entry& e) { return e.is_blank(); });
}

std::string to_string(C3Failure f) {
  switch (f) {
    case C3Failure::kSameRow:
      return "same_row";
    case C3Failure::kSameColumn:
      return "same_column";
    case C3Failure::kFirstCrossNotStar:
      return "cross_entry_1_not_star";
    case C3Failure::kSecondCrossNotStar:
      return "cross_entry_2_not_star";
  }
  return "unknown";
}

namespace {

std::string c3_message(Position a, Position b, std::uint32_t s, C3Failure f) {
  std::string msg = "C3 violated: entries " + to_string(a) + " and " +
                    to_string(b) + " both equal " + std::to_string(s) + " (" +
                    to_string(f);
  if (f == C3Failure::kFirstCrossNotStar) {
    msg += ": entry " + to_string(Position{a.row, b.col}) + " is not a star";
  } else if (f == C3Failure::kSecondCrossNotStar) {
    msg += ": entry " + to_string(Position{b.row, a.col}) + " is not a star";
  }
  return msg + ")";
}

}  // namespace

C3Violation::C3Violation(Position first, Position second, std::uint32_t value,
                         C3Failure failure)
    : ValidationError(Condition::kC3, c3_message(first, second, value, failure)),
      first_(first),
      second_(second),
      value_(value),
      failure_(failure) {}

std::uint32_t slot_count(const Pda& pda) {
  std::uint64_t s = 0;
  for (const Entry& e : pda.cells()) {
    if (e.is_int()) s = std::max<std::uint64_t>(s, std::uint64_t{e.value()} + 1);
  }
  if (s > std::numeric_limits<std::uint32_t>::max()) {
    throw ValidationError(Condition::kC2, "integer range too large");
  }
  return static_cast<std::uint32_t>(s);
}

std::vector<std::vector<Position>> slot_positions(const Pda& pda) {
  std::vector<std::vector<Position>> slots(slot_count(pda));
  for (std::size_t j = 0; j < pda.rows(); ++j) {
    for (std::size_t k = 0; k < pda.cols(); ++k) {
      const Entry& e = pda.at(j, k);
      if (e.is_int()) {
        slots[e.value()].push_back(
            {static_cast<std::uint32_t>(j), static_cast<std::uint32_t>(k)});
      }
    }
  }
  return slots;
}

GainProfile gain_profile(const std::vector<std::vector<Position>>& slots) {
  GainProfile profile;
  for (const auto& positions : slots) ++profile[positions.size()];
  return profile;
}

PdaParams validate(const Pda& pda) {
  if (pda.rows() == 0 || pda.cols() == 0) {
    throw ValidationError(Condition::kC1, "array must have at least one row and one column");
  }
  for (std::size_t j = 0; j < pda.rows(); ++j) {
    for (std::size_t k = 0; k < pda.cols(); ++k) {
      if (pda.at(j, k).is_blank()) {
        throw ValidationError(
            Condition::kBlank,
            "blank entry at " +
                to_string(Position{static_cast<std::uint32_t>(j),
                                   static_cast<std::uint32_t>(k)}) +
                "; blanks are only allowed in reduced arrays");
      }
    }
  }

  // C1
  std::vector<std::uint64_t> stars(pda.cols(), 0);
  for (std::size_t j = 0; j < pda.rows(); ++j) {
    for (std::size_t k = 0; k < pda.cols(); ++k) {
      if (pda.at(j, k).is_star()) ++stars[k];
    }
  }
  for (std::size_t k = 1; k < pda.cols(); ++k) {
    if (stars[k] != stars[0]) {
      throw ValidationError(
          Condition::kC1, "C1 violated: column 0 has " +
                              std::to_string(stars[0]) + " stars but column " +
                              std::to_string(k) + " has " +
                              std::to_string(stars[k]));
    }
  }

  // C2
  const auto slots = slot_positions(pda);
  if (slots.empty()) {
    throw ValidationError(Condition::kC2,
                          "C2 violated: the array contains no integer");
  }
  for (std::size_t s = 0; s < slots.size(); ++s) {
    if (slots[s].empty()) {
      throw ValidationError(
          Condition::kC2, "C2 violated: integer " + std::to_string(s) +
                              " does not occur (S inferred as " +
                              std::to_string(slots.size()) + ")");
    }
  }

  // C3: pairs in row-major order of the first entry, then of the second.
  for (std::size_t j = 0; j < pda.rows(); ++j) {
    for (std::size_t k = 0; k < pda.cols(); ++k) {
      const Entry& e = pda.at(j, k);
      if (!e.is_int()) continue;
      const Position a{static_cast<std::uint32_t>(j),
                       static_cast<std::uint32_t>(k)};
      const auto& same = slots[e.value()];
      auto it = std::upper_bound(same.begin(), same.end(), a);
      for (; it != same.end(); ++it) {
        const Position b = *it;
        std::optional<C3Failure> failure;
        if (a.row == b.row) {
          failure = C3Failure::kSameRow;
        } else if (a.col == b.col) {
          failure = C3Failure::kSameColumn;
        } else if (!pda.at(a.row, b.col).is_star()) {
          failure = C3Failure::kFirstCrossNotStar;
        } else if (!pda.at(b.row, a.col).is_star()) {
          failure = C3Failure::kSecondCrossNotStar;
        }
        if (failure) throw C3Violation(a, b, e.value(), *failure);
      }
    }
  }

  return PdaParams{pda.cols(), pda.rows(), stars[0], slots.size(),
                   gain_profile(slots)};
}

std::vector<Position> integer_positions(const Pda& pda, std::uint32_t s) {
  const std::uint32_t count = slot_count(pda);
  if (s >= count) {
    throw std::out_of_range("integer " + std::to_string(s) +
                            " outside [0," + std::to_string(count) + ")");
  }
  std::vector<Position> out;
  for (std::size_t j = 0; j < pda.rows(); ++j) {
    for (std::size_t k = 0; k < pda.cols(); ++k) {
      const Entry& e = pda.at(j, k);
      if (e.is_int() && e.value() == s) {
        out.push_back({static_cast<std::uint32_t>(j),
                       static_cast<std::uint32_t>(k)});
      }
    }
  }
  return out;
}

StarClassification classify_stars(const Pda& pda) {
  const std::size_t S = slot_count(pda);
  std::vector<boost::dynamic_bitset<>> in_row(pda.rows(),
                                              boost::dynamic_bitset<>(S));
  std::vector<boost::dynamic_bitset<>> in_col(pda.cols(),
                                              boost::dynamic_bitset<>(S));
  for (std::size_t j = 0; j < pda.rows(); ++j) {
    for (std::size_t k = 0; k < pda.cols(); ++k) {
      const Entry& e = pda.at(j, k);
      if (e.is_int()) {
        in_row[j].set(e.value());
        in_col[k].set(e.value());
      }
    }
  }

  StarClassification out;
  out.per_column_useless.assign(pda.cols(), 0);
  for (std::size_t j = 0; j < pda.rows(); ++j) {
    for (std::size_t k = 0; k < pda.cols(); ++k) {
      if (!pda.at(j, k).is_star()) continue;
      const Position p{static_cast<std::uint32_t>(j),
                       static_cast<std::uint32_t>(k)};
      if (in_row[j].intersects(in_col[k])) {
        out.useful.push_back(p);
      } else {
        out.useless.push_back(p);
        ++out.per_column_useless[k];
      }
    }
  }
  return out;
}

Reduction reduce(const Pda& pda) {
  const StarClassification cls = classify_stars(pda);
  const auto& counts = cls.per_column_useless;
  if (counts.empty()) return {pda, 0};
  const auto [lo, hi] = std::minmax_element(counts.begin(), counts.end());
  if (*lo != *hi) {
    throw UnsupportedArrayError(
        "useless-star counts differ across columns: column " +
        std::to_string(lo - counts.begin()) + " has " + std::to_string(*lo) +
        ", column " + std::to_string(hi - counts.begin()) + " has " +
        std::to_string(*hi));
  }
  Pda reduced = pda;
  for (const Position& p : cls.useless) reduced.set(p.row, p.col, Entry::blank());
  return {std::move(reduced), counts.front()};
}

Pda restore_blanks(const Pda& pda) {
  Pda out = pda;
  for (std::size_t j = 0; j < out.rows(); ++j) {
    for (std::size_t k = 0; k < out.cols(); ++k) {
      if (out.at(j, k).is_blank()) out.set(j, k, Entry::star());
    }
  }
  return out;
}

namespace {

struct Token {
  std::string_view text;
  std::size_t column;  // 1-based
};

std::vector<Token> tokenize(std::string_view line) {
  std::vector<Token> tokens;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && std::isspace(static_cast<unsigned char>(line[i]))) ++i;
    if (i >= line.size()) break;
    const std::size_t start = i;
    while (i < line.size() && !std::isspace(static_cast<unsigned char>(line[i]))) ++i;
    tokens.push_back({line.substr(start, i - start), start + 1});
  }
  return tokens;
}

bool all_digits(std::string_view s) {
  return !s.empty() && std::all_of(s.begin(), s.end(), [](char c) {
    return c >= '0' && c <= '9';
  });
}

std::uint64_t parse_count(const Token& t, std::size_t line) {
  std::uint64_t v = 0;
  auto [ptr, ec] = std::from_chars(t.text.data(), t.text.data() + t.text.size(), v);
  if (!all_digits(t.text) || ec != std::errc() ||
      ptr != t.text.data() + t.text.size()) {
    throw ParseError(line, t.column, "expected a decimal count, got '" +
                                         std::string(t.text) + "'");
  }
  return v;
}

Entry parse_entry(const Token& t, std::size_t line) {
  if (t.text == "*") return Entry::star();
  if (t.text == "-") return Entry::blank();
  if (t.text.front() == '-' && all_digits(t.text.substr(1))) {
    throw ParseError(line, t.column,
                     "negative integer '" + std::string(t.text) + "'");
  }
  if (!all_digits(t.text)) {
    throw ParseError(line, t.column,
                     "invalid token '" + std::string(t.text) + "'");
  }
  std::uint32_t v = 0;
  auto [ptr, ec] = std::from_chars(t.text.data(), t.text.data() + t.text.size(), v);
  if (ec != std::errc() || ptr != t.text.data() + t.text.size()) {
    throw ParseError(line, t.column,
                     "integer out of range '" + std::string(t.text) + "'");
  }
  return Entry::integer(v);
}

}  // namespace

Pda parse_pda(std::string_view text) {
  std::size_t F = 0;
  std::size_t K = 0;
  bool have_header = false;
  std::vector<Entry> cells;
  std::size_t line_no = 0;
  std::size_t rows_read = 0;

  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(pos, end - pos);
    pos = end + 1;
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);

    const auto tokens = tokenize(line);
    if (tokens.empty() || tokens.front().text.front() == '#') {
      if (end == text.size()) break;
      continue;
    }

    if (!have_header) {
      if (tokens.size() != 2) {
        throw ParseError(line_no, tokens.front().column,
                         "header must be 'F K', got " +
                             std::to_string(tokens.size()) + " tokens");
      }
      F = parse_count(tokens[0], line_no);
      K = parse_count(tokens[1], line_no);
      if (F == 0 || K == 0) {
        throw ParseError(line_no, 1, "F and K must both be positive");
      }
      if (F * K > (std::size_t{1} << 32)) {
        throw ParseError(line_no, 1, "array too large");
      }
      cells.reserve(F * K);
      have_header = true;
    } else {
      if (rows_read == F) {
        throw ParseError(line_no, tokens.front().column,
                         "unexpected row beyond the declared " +
                             std::to_string(F) + " rows");
      }
      if (tokens.size() != K) {
        const std::size_t col =
            tokens.size() > K ? tokens[K].column : line.size() + 1;
        throw ParseError(line_no, col,
                         "row has " + std::to_string(tokens.size()) +
                             " entries, expected " + std::to_string(K));
      }
      for (const Token& t : tokens) cells.push_back(parse_entry(t, line_no));
      ++rows_read;
    }
    if (end == text.size()) break;
  }

  if (!have_header) throw ParseError(line_no, 1, "missing 'F K' header");
  if (rows_read != F) {
    throw ParseError(line_no, 1,
                     "expected " + std::to_string(F) + " rows, found " +
                         std::to_string(rows_read));
  }
  return Pda(F, K, std::move(cells));
}

std::string serialize_pda(const Pda& pda) {
  std::ostringstream os;
  os << pda.rows() << ' ' << pda.cols() << '\n';
  for (std::size_t j = 0; j < pda.rows(); ++j) {
    for (std::size_t k = 0; k < pda.cols(); ++k) {
      if (k) os << ' ';
      const Entry& e = pda.at(j, k);
      if (e.is_star()) {
        os << '*';
      } else if (e.is_blank()) {
        os << '-';
      } else {
        os << e.value();
      }
    }
    os << '\n';
  }
  return os.str();
}

}  // namespace pdacache
