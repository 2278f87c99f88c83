#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cmath>
#include <string>

namespace tpflow {

/// Exact rational scalar backend. Closed under +,-,*,/ and used wherever the
/// identities being checked are polynomial. Everything transcendental runs on
/// double with explicit tolerances.
using Rat = boost::multiprecision::cpp_rational;

inline double to_double(const Rat& x) { return x.convert_to<double>(); }
inline double to_double(double x) { return x; }

/// Parses "p/q", "p", or a decimal-free signed integer string. Throws
/// std::invalid_argument on malformed input, naming the offending token.
Rat rat_from_string(const std::string& s);

/// Canonical "p/q" (or "p" when the denominator is 1).
std::string rat_to_string(const Rat& x);

template <typename T>
struct scalar_traits;

template <>
struct scalar_traits<double> {
  static constexpr bool is_exact = false;
  static double from_long(long v) { return static_cast<double>(v); }
  static double abs(double x) { return std::fabs(x); }
  static std::string to_string(double x);
  static double from_string(const std::string& s);
};

template <>
struct scalar_traits<Rat> {
  static constexpr bool is_exact = true;
  static Rat from_long(long v) { return Rat(v); }
  static Rat abs(const Rat& x) { return x < 0 ? Rat(-x) : x; }
  static std::string to_string(const Rat& x) { return rat_to_string(x); }
  static Rat from_string(const std::string& s) { return rat_from_string(s); }
};

}  // namespace tpflow
