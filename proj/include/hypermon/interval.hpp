#pragma once

#include "hypermon/integer.hpp"

#include <optional>
#include <string>
#include <vector>

namespace hypermon {

/// Inclusive integer range; a missing bound means unbounded in that direction.
struct Interval {
  std::optional<Integer> lo;
  std::optional<Integer> hi;

  static Interval closed(Integer lo, Integer hi) { return {std::move(lo), std::move(hi)}; }
  static Interval unbounded() { return {}; }

  bool finite() const { return lo.has_value() && hi.has_value(); }
  bool empty() const { return finite() && *lo > *hi; }
  bool contains(const Integer& v) const {
    return (!lo || *lo <= v) && (!hi || v <= *hi);
  }
  /// Number of elements; only meaningful when finite().
  Integer size() const { return empty() ? Integer(0) : Integer(*hi - *lo + 1); }

  Interval intersect(const Interval& other) const {
    Interval out = *this;
    if (other.lo && (!out.lo || *other.lo > *out.lo)) out.lo = other.lo;
    if (other.hi && (!out.hi || *other.hi < *out.hi)) out.hi = other.hi;
    return out;
  }

  std::string str() const {
    return "[" + (lo ? lo->str() : std::string("-inf")) + ", " +
           (hi ? hi->str() : std::string("+inf")) + "]";
  }

  friend bool operator==(const Interval&, const Interval&) = default;
};

using Domains = std::vector<Interval>;

inline bool allFinite(const Domains& domains) {
  for (const auto& d : domains)
    if (!d.finite()) return false;
  return true;
}

/// Product of the domain sizes, skipping position `skip` (pass -1 to skip none).
inline Integer productSize(const Domains& domains, int skip = -1) {
  Integer total = 1;
  for (int k = 0; k < static_cast<int>(domains.size()); ++k)
    if (k != skip) total *= domains[k].size();
  return total;
}

}  // namespace hypermon
