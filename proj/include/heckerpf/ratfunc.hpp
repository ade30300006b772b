#pragma once

// Rational functions in z over Q(lambda_p) or a quadratic extension, the
// weight-2k slash operator, Laurent principal parts, the canonical q_{k,alpha},
// and certified numeric evaluation.

#include "heckerpf/heckealg.hpp"
#include "heckerpf/poly.hpp"

#include <stdexcept>
#include <utility>
#include <vector>

namespace heckerpf {

template <class F>
struct RatFunc {
  Poly<F> num, den;

  RatFunc() = default;
  RatFunc(Poly<F> n, Poly<F> d) : num(std::move(n)), den(std::move(d)) {
    if (den.is_zero()) throw std::domain_error("RatFunc with zero denominator");
  }

  static RatFunc zero(const F& proto) {
    return RatFunc(Poly<F>{}, Poly<F>::constant(one_like(proto)));
  }
  static RatFunc constant(const F& v) {
    return RatFunc(Poly<F>::constant(v), Poly<F>::constant(one_like(v)));
  }

  bool is_zero() const { return num.is_zero(); }

  // gcd-reduced with monic denominator; idempotent
  RatFunc normalized() const {
    if (num.is_zero()) return RatFunc(Poly<F>{}, Poly<F>::constant(one_like(den.lead())));
    Poly<F> g = poly_gcd(num, den);
    Poly<F> n = poly_divmod(num, g).first;
    Poly<F> d = poly_divmod(den, g).first;
    F scale = one_like(d.lead()) / d.lead();
    return RatFunc(n * scale, d * scale);
  }

  // exact equality as functions (cross-multiplication, no gcd needed)
  bool equals(const RatFunc& o) const { return num * o.den == o.num * den; }
};

template <class F>
RatFunc<F> operator+(const RatFunc<F>& a, const RatFunc<F>& b) {
  return RatFunc<F>(a.num * b.den + b.num * a.den, a.den * b.den);
}
template <class F>
RatFunc<F> operator-(const RatFunc<F>& a) {
  return RatFunc<F>(-a.num, a.den);
}
template <class F>
RatFunc<F> operator-(const RatFunc<F>& a, const RatFunc<F>& b) {
  return a + (-b);
}
template <class F>
RatFunc<F> operator*(const RatFunc<F>& a, const RatFunc<F>& b) {
  return RatFunc<F>(a.num * b.num, a.den * b.den);
}
template <class F>
RatFunc<F> operator*(const RatFunc<F>& a, const F& s) {
  return RatFunc<F>(a.num * s, a.den);
}

// Weight-2k slash operator (f | M)(z) = (cz + d)^{-2k} f(Mz), computed by
// homogenization: substitute z -> (az+b)/(cz+d) and clear powers of (cz+d).
template <class F>
RatFunc<F> slash(const RatFunc<F>& f, const F& a, const F& b, const F& c, const F& d,
                 unsigned k) {
  Poly<F> top({b, a});   // az + b
  Poly<F> bot({d, c});   // cz + d
  const int n = std::max(f.num.degree(), f.den.degree());
  if (n < 0) return f;  // zero function
  auto substitute = [&](const Poly<F>& p) {
    Poly<F> acc;
    for (int i = 0; i <= n; ++i) {
      if (i < static_cast<int>(p.c.size()) && !is_zero_elem(p.c[i]))
        acc = acc + poly_pow(top, static_cast<unsigned>(i)) *
                        poly_pow(bot, static_cast<unsigned>(n - i)) * p.c[i];
    }
    return acc;
  };
  Poly<F> num_s = substitute(f.num);
  Poly<F> den_s = substitute(f.den);
  return RatFunc<F>(std::move(num_s), den_s * poly_pow(bot, 2 * k));
}

// slash by a group matrix; F must embed the base field (lift provided per F)
inline RatFunc<NFElem> slash(const RatFunc<NFElem>& f, const Mat2& m, unsigned k) {
  return slash(f, m.a, m.b, m.c, m.d, k);
}

inline QElem lift_to_ext(const NFElem& x, const NFElem& D) { return QElem::from_base(x, D); }

template <class F>
Poly<F> lift_poly(const Poly<NFElem>& p, const NFElem& D);

template <>
inline Poly<QElem> lift_poly<QElem>(const Poly<NFElem>& p, const NFElem& D) {
  Poly<QElem> out;
  out.c.reserve(p.c.size());
  for (const auto& coeff : p.c) out.c.push_back(QElem::from_base(coeff, D));
  return out;
}

inline RatFunc<QElem> lift_ratfunc(const RatFunc<NFElem>& f, const NFElem& D) {
  return RatFunc<QElem>(lift_poly<QElem>(f.num, D), lift_poly<QElem>(f.den, D));
}

// Attempt the reverse: succeeds iff every coefficient has zero sqrt(D) part.
inline bool lower_ratfunc(const RatFunc<QElem>& f, RatFunc<NFElem>& out) {
  Poly<NFElem> n, d;
  for (const auto& coeff : f.num.c) {
    if (!coeff.is_base()) return false;
    n.c.push_back(coeff.u());
  }
  for (const auto& coeff : f.den.c) {
    if (!coeff.is_base()) return false;
    d.c.push_back(coeff.u());
  }
  n.trim();
  d.trim();
  out = RatFunc<NFElem>(std::move(n), std::move(d));
  return true;
}

// Laurent principal part at a finite point.
template <class F>
struct PrincipalPart {
  F pole;
  std::vector<F> coeffs;  // c_m, ..., c_1 (coefficient of (z-pole)^{-m} first)

  int order() const { return static_cast<int>(coeffs.size()); }
  bool empty() const { return coeffs.empty(); }

  RatFunc<F> to_ratfunc() const {
    if (coeffs.empty()) return RatFunc<F>::zero(pole);
    // sum_j c_j (z-pole)^{-j} = [sum_i c_{m-i} (z-pole)^i] / (z-pole)^m,
    // and coeffs[i] is exactly c_{m-i}
    const int m = order();
    Poly<F> lin = Poly<F>::linear_minus(pole);
    Poly<F> numerator;
    Poly<F> power = Poly<F>::constant(one_like(pole));
    for (int i = 0; i < m; ++i) {
      numerator = numerator + power * coeffs[static_cast<size_t>(i)];
      power = power * lin;
    }
    return RatFunc<F>(std::move(numerator), power);  // power == (z-pole)^m
  }
};

// Exact principal part of f at alpha by Taylor shift and truncated series
// division.  The empty part is returned when f is regular at alpha.
template <class F>
PrincipalPart<F> principal_part(const RatFunc<F>& f, const F& alpha) {
  RatFunc<F> g = f.normalized();
  PrincipalPart<F> out;
  out.pole = alpha;
  if (g.is_zero()) return out;

  // multiplicity of (z - alpha) in the denominator
  std::vector<F> den_t = taylor_shift(g.den, alpha);
  size_t m = 0;
  while (m < den_t.size() && is_zero_elem(den_t[m])) ++m;
  if (m == 0) return out;

  std::vector<F> num_t = taylor_shift(g.num, alpha);
  num_t.resize(std::max(num_t.size(), m), zero_like(alpha));
  // series h = num_t / (den_t >> m) modulo t^m
  std::vector<F> h(m, zero_like(alpha));
  const F g0_inv = one_like(alpha) / den_t[m];
  for (size_t j = 0; j < m; ++j) {
    F acc = j < num_t.size() ? num_t[j] : zero_like(alpha);
    for (size_t i = 0; i < j; ++i) {
      size_t idx = m + j - i;
      if (idx < den_t.size()) acc = acc - h[i] * den_t[idx];
    }
    h[j] = acc * g0_inv;
  }
  // h[j] is the coefficient of (z - alpha)^{-(m - j)}
  out.coeffs = std::move(h);
  return out;
}

// The canonical normalized principal part q_{k,alpha}: the principal part at
// the chosen root of D^{k/2} / Q(z,1)^k, with leading coefficient exactly 1.
// Closed form: coefficient of (z-alpha)^{-(k-j)} is (-1)^j C(k+j-1, j) delta^{-j},
// delta = alpha - alpha'.
enum class RootChoice { alpha, alpha_conj };

inline PrincipalPart<QElem> q_k_alpha(const BQF& q, unsigned k, RootChoice at) {
  if (k < 1) throw std::invalid_argument("q_k_alpha: k must be >= 1");
  QElem a = alpha_of(q);
  QElem pole = at == RootChoice::alpha ? a : a.conj();
  QElem other = at == RootChoice::alpha ? a.conj() : a;
  QElem delta_inv = (pole - other).inverse();
  PrincipalPart<QElem> out;
  out.pole = pole;
  out.coeffs.reserve(k);
  QElem pw = one_like(pole);
  for (unsigned j = 0; j < k; ++j) {
    Rat sign = (j % 2 == 0) ? Rat(1) : Rat(-1);
    Rat coef = sign * Rat(binomial(k + j - 1, j));
    out.coeffs.push_back(pw * QElem::from_base(NFElem(q.ctx(), coef), q.D));
    pw = pw * delta_inv;
  }
  return out;
}

inline NFElem nf_pow(const NFElem& x, unsigned e) {
  NFElem r = one_like(x);
  for (unsigned i = 0; i < e; ++i) r = r * x;
  return r;
}

// The literal rational function D^{k/2} / Q(z,1)^k over the extension field;
// the independent route against which q_k_alpha is checked.
inline RatFunc<QElem> canonical_pole_function(const BQF& q, unsigned k) {
  NFElem D = q.D;
  Poly<QElem> quad(
      {QElem::from_base(q.C, D), QElem::from_base(q.B, D), QElem::from_base(q.A, D)});
  // D^{k/2} = D^{(k-1)/2} sqrt(D) for odd k, stays formal in the extension
  NFElem zero(q.ctx());
  QElem dk = (k % 2 == 0) ? QElem::from_base(nf_pow(D, k / 2), D)
                          : QElem(zero, nf_pow(D, (k - 1) / 2), D);
  return RatFunc<QElem>(Poly<QElem>::constant(dk), poly_pow(quad, k));
}

// ---- certified numeric evaluation -------------------------------------

inline RatInterval coeff_interval(const Rat& x, unsigned) { return RatInterval(x); }
inline RatInterval coeff_interval(const NFElem& x, unsigned bits) { return x.interval(bits); }
inline RatInterval coeff_interval(const QElem& x, unsigned bits) { return x.interval(bits); }

template <class F>
BoxInterval eval_poly_box(const Poly<F>& p, const BoxInterval& z, unsigned bits) {
  // outward rounding after each step caps endpoint bit growth; the enclosure
  // only widens, so the result stays rigorous
  BoxInterval acc;
  for (auto it = p.c.rbegin(); it != p.c.rend(); ++it)
    acc = round_outward(acc * z + BoxInterval(coeff_interval(*it, bits), RatInterval(Rat(0))),
                        bits + 32);
  return acc;
}

// Certified rectangle enclosing f(z0).  Throws on pole proximity (the image
// of the denominator box touches zero).
template <class F>
BoxInterval eval_numeric(const RatFunc<F>& f, const BoxInterval& z0, unsigned bits) {
  BoxInterval den = eval_poly_box(f.den, z0, bits);
  RatInterval n2 = den.re * den.re + den.im * den.im;
  if (n2.lo <= 0)
    throw std::domain_error("eval_numeric: evaluation point too close to a pole");
  return eval_poly_box(f.num, z0, bits) / den;
}

}  // namespace heckerpf
