#pragma once

// Rational interval arithmetic: the certified numeric layer behind sign
// decisions and the independent numeric cross-checks.  Endpoints are exact
// rationals, so every enclosure is rigorous by construction.

#include "heckerpf/rational.hpp"

#include <algorithm>
#include <stdexcept>

namespace heckerpf {

// Sign of a rational from its numerator (denominators are kept positive).
inline int rat_sign(const Rat& x) {
  const Int& n = numerator(x);
  return n.is_zero() ? 0 : (n < 0 ? -1 : 1);
}

// a < b by cross-multiplication.  The rational type's own operator< uses a
// division-based continued-fraction walk that is far slower on the long
// dyadic endpoints interval arithmetic produces.
inline bool rat_lt(const Rat& a, const Rat& b) {
  return Int(numerator(a)) * Int(denominator(b)) < Int(numerator(b)) * Int(denominator(a));
}

inline const Rat& rat_min(const Rat& a, const Rat& b) { return rat_lt(b, a) ? b : a; }
inline const Rat& rat_max(const Rat& a, const Rat& b) { return rat_lt(a, b) ? b : a; }

struct RatInterval {
  Rat lo, hi;

  RatInterval() : lo(0), hi(0) {}
  RatInterval(Rat point) : lo(point), hi(point) {}
  RatInterval(Rat l, Rat h) : lo(std::move(l)), hi(std::move(h)) {
    if (rat_lt(hi, lo)) throw std::logic_error("inverted interval");
  }

  Rat width() const { return hi - lo; }
  bool contains_zero() const { return rat_sign(lo) <= 0 && rat_sign(hi) >= 0; }

  // +1, -1, or 0 when the interval straddles (or touches) zero.
  int sign() const {
    if (rat_sign(lo) > 0) return 1;
    if (rat_sign(hi) < 0) return -1;
    return 0;
  }

  Rat mag() const { return rat_max(rat_abs(lo), rat_abs(hi)); }
};

// Outward rounding to dyadic endpoints (denominator 2^bits).  Rounding only
// widens an interval, so every enclosure stays rigorous; it caps the bit
// growth of endpoint rationals, which otherwise makes long interval
// computations quadratically slow in gcd normalization.
inline Int floor_div_int(const Int& a, const Int& b) {
  Int q = a / b;
  if (a % b != 0 && (a < 0) != (b < 0)) --q;
  return q;
}

inline Rat dyadic_below(const Rat& v, unsigned bits) {
  return Rat(floor_div_int(Int(numerator(v)) << bits, Int(denominator(v))), Int(1) << bits);
}

inline Rat dyadic_above(const Rat& v, unsigned bits) {
  return Rat(-floor_div_int(Int(-numerator(v)) << bits, Int(denominator(v))), Int(1) << bits);
}

inline RatInterval round_outward(const RatInterval& x, unsigned bits) {
  return {dyadic_below(x.lo, bits), dyadic_above(x.hi, bits)};
}

inline RatInterval operator+(const RatInterval& a, const RatInterval& b) {
  return {a.lo + b.lo, a.hi + b.hi};
}
inline RatInterval operator-(const RatInterval& a, const RatInterval& b) {
  return {a.lo - b.hi, a.hi - b.lo};
}
inline RatInterval operator-(const RatInterval& a) { return {-a.hi, -a.lo}; }
inline RatInterval operator*(const RatInterval& a, const RatInterval& b) {
  Rat p1 = a.lo * b.lo, p2 = a.lo * b.hi, p3 = a.hi * b.lo, p4 = a.hi * b.hi;
  return {rat_min(rat_min(p1, p2), rat_min(p3, p4)),
          rat_max(rat_max(p1, p2), rat_max(p3, p4))};
}

inline RatInterval interval_inverse(const RatInterval& a) {
  if (a.contains_zero()) throw std::domain_error("interval inverse across zero");
  return {Rat(1) / a.hi, Rat(1) / a.lo};
}

inline RatInterval operator/(const RatInterval& a, const RatInterval& b) {
  return a * interval_inverse(b);
}

// Enclosure of sqrt(x) for nonnegative intervals, to roughly 2^-bits width.
inline RatInterval sqrt_interval(const RatInterval& x, unsigned bits) {
  if (x.lo < 0) throw std::domain_error("sqrt of interval below zero");
  auto bound = [&](const Rat& v, bool upper) -> Rat {
    if (v.is_zero()) return Rat(0);
    // floor(sqrt(v * 2^(2s))) / 2^s brackets sqrt(v) from below.
    unsigned s = bits + 4;
    Int scaled = (numerator(v) << (2 * s)) / denominator(v);
    Int r = sqrt(scaled);
    Int denom = Int(1) << s;
    return upper ? Rat(r + 1, denom) : Rat(r, denom);
  };
  return {bound(x.lo, false), bound(x.hi, true)};
}

// Axis-aligned complex rectangle.
struct BoxInterval {
  RatInterval re, im;

  BoxInterval() = default;
  BoxInterval(RatInterval r, RatInterval i) : re(std::move(r)), im(std::move(i)) {}

  // Rational upper bound on |z| over the box.
  Rat mag_sup(unsigned bits = 64) const {
    RatInterval n2 = re * re + im * im;
    return sqrt_interval(RatInterval(n2.hi), bits).hi;
  }
};

inline BoxInterval round_outward(const BoxInterval& b, unsigned bits) {
  return {round_outward(b.re, bits), round_outward(b.im, bits)};
}

inline BoxInterval operator+(const BoxInterval& a, const BoxInterval& b) {
  return {a.re + b.re, a.im + b.im};
}
inline BoxInterval operator-(const BoxInterval& a, const BoxInterval& b) {
  return {a.re - b.re, a.im - b.im};
}
inline BoxInterval operator*(const BoxInterval& a, const BoxInterval& b) {
  return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
}

inline BoxInterval operator/(const BoxInterval& a, const BoxInterval& b) {
  RatInterval n2 = b.re * b.re + b.im * b.im;
  if (n2.lo <= 0) throw std::domain_error("complex interval division: denominator box touches zero");
  RatInterval inv = interval_inverse(n2);
  BoxInterval conj{b.re, -b.im};
  BoxInterval prod = a * conj;
  return {prod.re * inv, prod.im * inv};
}

}  // namespace heckerpf
