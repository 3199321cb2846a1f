#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <string>

namespace tameline {

// Exact rational arithmetic. Denominators grow like 2^stage during
// realization, so fixed-width integers are not an option.
using Int = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

inline Rat mid(const Rat& a, const Rat& b) { return (a + b) / 2; }

inline std::string int_str(const Int& v) { return v.str(); }

inline std::string rat_str(const Rat& v) {
  if (denominator(v) == 1) return numerator(v).str();
  return numerator(v).str() + "/" + denominator(v).str();
}

}  // namespace tameline
