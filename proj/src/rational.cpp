#include "tpflow/rational.hpp"

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdio>
#include <stdexcept>

namespace tpflow {

using boost::multiprecision::cpp_int;

Rat rat_from_string(const std::string& s) {
  if (s.empty()) throw std::invalid_argument("empty rational literal");
  const auto slash = s.find('/');
  try {
    if (slash == std::string::npos) {
      return Rat(cpp_int(s));
    }
    const std::string num = s.substr(0, slash);
    const std::string den = s.substr(slash + 1);
    if (num.empty() || den.empty()) {
      throw std::invalid_argument("malformed rational literal: \"" + s + "\"");
    }
    cpp_int q(den);
    if (q == 0) throw std::invalid_argument("zero denominator in \"" + s + "\"");
    return Rat(cpp_int(num), q);
  } catch (const std::runtime_error&) {
    throw std::invalid_argument("malformed rational literal: \"" + s + "\"");
  }
}

std::string rat_to_string(const Rat& x) {
  const cpp_int num = numerator(x);
  const cpp_int den = denominator(x);
  if (den == 1) return num.str();
  return num.str() + "/" + den.str();
}

std::string scalar_traits<double>::to_string(double x) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return buf;
}

double scalar_traits<double>::from_string(const std::string& s) {
  // Accept rational literals in float inputs too; they show up when a JSON
  // matrix written by the exact backend is re-read as float.
  const auto slash = s.find('/');
  if (slash != std::string::npos) return to_double(rat_from_string(s));
  size_t pos = 0;
  double v = 0;
  try {
    v = std::stod(s, &pos);
  } catch (const std::exception&) {
    throw std::invalid_argument("malformed number literal: \"" + s + "\"");
  }
  if (pos != s.size()) {
    throw std::invalid_argument("malformed number literal: \"" + s + "\"");
  }
  return v;
}

}  // namespace tpflow
