// Exact arithmetic base types for the whole library.
//
// Everything that touches interval endpoints, cocycle matrices or tower
// heights is computed over arbitrary-precision integers and rationals;
// floating point only appears in the Monte Carlo estimators.

#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace itmlab {

using BigInt = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

inline BigInt num(const Rat& r) { return boost::multiprecision::numerator(r); }
inline BigInt den(const Rat& r) { return boost::multiprecision::denominator(r); }

inline std::string to_string(const BigInt& x) { return x.str(); }

// Rationals are interchanged as "p/q" (or "p" when q == 1).
inline std::string to_string(const Rat& r) {
  if (den(r) == 1) return num(r).str();
  return num(r).str() + "/" + den(r).str();
}

inline Rat parse_rat(const std::string& s) {
  auto slash = s.find('/');
  try {
    if (slash == std::string::npos) return Rat(BigInt(s));
    BigInt p(s.substr(0, slash));
    BigInt q(s.substr(slash + 1));
    if (q == 0) throw std::invalid_argument("zero denominator");
    return Rat(p, q);
  } catch (const std::exception&) {
    throw std::invalid_argument("malformed rational: \"" + s + "\"");
  }
}

inline BigInt floor_rat(const Rat& r) {
  BigInt q = num(r) / den(r);
  if (num(r) < 0 && q * den(r) != num(r)) --q;
  return q;
}

inline double to_double(const Rat& r) { return r.convert_to<double>(); }
inline double to_double(const BigInt& x) { return x.convert_to<double>(); }

// Itinerary of accelerated induction steps.  Entries can exceed 64 bits in
// the cutting-and-stacking constructions, hence big integers.
using KSequence = std::vector<BigInt>;

inline KSequence make_ks(std::initializer_list<long long> v) {
  KSequence ks;
  for (auto x : v) ks.emplace_back(x);
  return ks;
}

}  // namespace itmlab
