#pragma once

#include <boost/rational.hpp>
#include <cstdint>
#include <string>

namespace pdacache {

using Rational = boost::rational<std::int64_t>;

inline std::string to_string(const Rational& q) {
  return std::to_string(q.numerator()) + "/" + std::to_string(q.denominator());
}

inline Rational make_rational(std::uint64_t num, std::uint64_t den) {
  return Rational(static_cast<std::int64_t>(num), static_cast<std::int64_t>(den));
}

}  // namespace pdacache
