#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <optional>
#include <string>
#include <string_view>

namespace hypermon {

/// Mathematical (unbounded) integer used for all program values.
using Integer = boost::multiprecision::cpp_int;

/// Truncating division (rounds toward zero). Caller guarantees rhs != 0.
inline Integer truncDiv(const Integer& lhs, const Integer& rhs) {
  // cpp_int division already truncates toward zero.
  return lhs / rhs;
}

/// Remainder matching truncDiv: lhs == truncDiv(lhs, rhs) * rhs + truncMod(lhs, rhs).
inline Integer truncMod(const Integer& lhs, const Integer& rhs) {
  return lhs % rhs;
}

inline std::string toString(const Integer& value) { return value.str(); }

/// Parses an optionally signed base-10 integer; surrounding whitespace is not allowed.
std::optional<Integer> parseInteger(std::string_view text);

}  // namespace hypermon
