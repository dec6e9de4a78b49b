#ifndef FOLDA_RATIONAL_HPP
#define FOLDA_RATIONAL_HPP

#include <cstdint>
#include <string>
#include <utility>

#include <boost/multiprecision/cpp_int.hpp>

namespace folda {

using BigInt = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

// Move costs are exact multiples of 1/10000: synchronous 0, log/model 1,
// silent model 1/10000. Summed costs therefore fit in an integer count of
// these units, which keeps the hot search paths in plain int64 arithmetic.
using CostUnits = std::int64_t;
inline constexpr CostUnits kCostScale = 10000;

inline Rat units_to_rat(CostUnits u) { return Rat(BigInt(u), BigInt(kCostScale)); }

// Canonical "num/den" with den >= 1, lowest terms (cpp_rational normalizes).
inline std::pair<BigInt, BigInt> rat_num_den(const Rat& r) {
  return {boost::multiprecision::numerator(r), boost::multiprecision::denominator(r)};
}

inline std::string rat_to_string(const Rat& r) {
  auto [n, d] = rat_num_den(r);
  if (d == 1) return n.str();
  return n.str() + "/" + d.str();
}

}  // namespace folda

#endif
