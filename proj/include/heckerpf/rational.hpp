#pragma once

// Exact integer/rational scalars and small helpers shared by every module.

#include <boost/multiprecision/cpp_int.hpp>

#include <stdexcept>
#include <string>
#include <vector>

namespace heckerpf {

using Int = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

inline bool is_zero_elem(const Rat& x) { return x.is_zero(); }

inline Rat zero_like(const Rat&) { return Rat(0); }
inline Rat one_like(const Rat&) { return Rat(1); }
inline Rat inv_elem(const Rat& x) {
  if (x.is_zero()) throw std::domain_error("rational division by zero");
  return Rat(1) / x;
}

// "num/den" in lowest terms; bare "num" for integers.
inline std::string rat_to_string(const Rat& x) {
  std::string s = numerator(x).str();
  if (denominator(x) != 1) s += "/" + denominator(x).str();
  return s;
}

inline Rat rat_from_string(const std::string& s) {
  auto slash = s.find('/');
  if (slash == std::string::npos) return Rat(Int(s));
  Int num(s.substr(0, slash));
  Int den(s.substr(slash + 1));
  if (den == 0) throw std::invalid_argument("rational with zero denominator: " + s);
  return Rat(num, den);
}

inline Int binomial(unsigned n, unsigned k) {
  if (k > n) return 0;
  Int r = 1;
  for (unsigned i = 1; i <= k; ++i) {
    r *= n - k + i;
    r /= i;
  }
  return r;
}

inline Rat rat_abs(const Rat& x) { return x < 0 ? Rat(-x) : x; }

// gcd of rationals: gcd of numerators over lcm of denominators (positive).
inline Rat rat_content(const std::vector<Rat>& xs) {
  Int num_gcd = 0, den_lcm = 1;
  for (const auto& x : xs) {
    if (x.is_zero()) continue;
    num_gcd = gcd(num_gcd, numerator(x));
    den_lcm = lcm(den_lcm, denominator(x));
  }
  if (num_gcd == 0) return Rat(0);
  return Rat(abs(num_gcd), den_lcm);
}

}  // namespace heckerpf
