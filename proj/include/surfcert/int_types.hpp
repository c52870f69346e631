#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <sstream>
#include <stdexcept>
#include <string>

namespace surfcert {

using Int = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

using boost::multiprecision::abs;
using boost::multiprecision::gcd;
using boost::multiprecision::lcm;

inline std::string to_string(const Int& v) { return v.str(); }

// Rationals print as "n" when integral, "n/d" otherwise.
inline std::string to_string(const Rat& v) {
  Int n = numerator(v), d = denominator(v);
  if (d == 1) return n.str();
  return n.str() + "/" + d.str();
}

inline Int int_from_string(const std::string& s) {
  try {
    return Int(s);
  } catch (const std::exception&) {
    throw std::invalid_argument("not an integer literal: '" + s + "'");
  }
}

inline bool is_even(const Int& v) { return (v & 1) == 0; }

// Quotient rounded to nearest (ties toward zero); used to keep
// elimination pivots small.
inline Int div_round_nearest(const Int& a, const Int& b) {
  if (b == 0) throw std::domain_error("division by zero");
  Int q = a / b;
  Int r = a - q * b;
  if (2 * abs(r) > abs(b)) q += (r < 0) == (b < 0) ? 1 : -1;
  return q;
}

inline Int floor_div(const Int& a, const Int& b) {
  if (b == 0) throw std::domain_error("division by zero");
  Int q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

inline Rat rat(const Int& n, const Int& d) {
  if (d == 0) throw std::domain_error("zero denominator");
  return Rat(n, d);
}

inline Int floor_rat(const Rat& v) { return floor_div(numerator(v), denominator(v)); }

}  // namespace surfcert
