#pragma once

// Dense univariate polynomials over an arbitrary exact field F.
// F must provide +, -, *, / and the free functions is_zero_elem, zero_like,
// one_like.  The zero polynomial is the empty coefficient vector.

#include "heckerpf/rational.hpp"

#include <stdexcept>
#include <utility>
#include <vector>

namespace heckerpf {

template <class F>
struct Poly {
  std::vector<F> c;  // ascending powers

  Poly() = default;
  explicit Poly(std::vector<F> coeffs) : c(std::move(coeffs)) { trim(); }

  void trim() {
    while (!c.empty() && is_zero_elem(c.back())) c.pop_back();
  }

  bool is_zero() const { return c.empty(); }
  int degree() const { return static_cast<int>(c.size()) - 1; }

  const F& lead() const {
    if (c.empty()) throw std::logic_error("lead of zero polynomial");
    return c.back();
  }

  bool operator==(const Poly& o) const {
    if (c.size() != o.c.size()) return false;
    for (size_t i = 0; i < c.size(); ++i)
      if (!(c[i] == o.c[i])) return false;
    return true;
  }
  bool operator!=(const Poly& o) const { return !(*this == o); }

  static Poly constant(F v) {
    Poly p;
    p.c.push_back(std::move(v));
    p.trim();
    return p;
  }

  // z - root
  static Poly linear_minus(const F& root) {
    Poly p;
    p.c.push_back(zero_like(root) - root);
    p.c.push_back(one_like(root));
    return p;
  }

  // z^n
  static Poly monomial(unsigned n, const F& proto) {
    Poly p;
    p.c.assign(n + 1, zero_like(proto));
    p.c[n] = one_like(proto);
    return p;
  }
};

template <class F>
Poly<F> operator+(const Poly<F>& a, const Poly<F>& b) {
  Poly<F> r;
  const size_t n = std::max(a.c.size(), b.c.size());
  r.c.reserve(n);
  for (size_t i = 0; i < n; ++i) {
    if (i < a.c.size() && i < b.c.size())
      r.c.push_back(a.c[i] + b.c[i]);
    else if (i < a.c.size())
      r.c.push_back(a.c[i]);
    else
      r.c.push_back(b.c[i]);
  }
  r.trim();
  return r;
}

template <class F>
Poly<F> operator-(const Poly<F>& a) {
  Poly<F> r = a;
  for (auto& x : r.c) x = zero_like(x) - x;
  return r;
}

template <class F>
Poly<F> operator-(const Poly<F>& a, const Poly<F>& b) {
  return a + (-b);
}

template <class F>
Poly<F> operator*(const Poly<F>& a, const Poly<F>& b) {
  if (a.is_zero() || b.is_zero()) return {};
  Poly<F> r;
  r.c.assign(a.c.size() + b.c.size() - 1, zero_like(a.c[0]));
  for (size_t i = 0; i < a.c.size(); ++i)
    for (size_t j = 0; j < b.c.size(); ++j) r.c[i + j] = r.c[i + j] + a.c[i] * b.c[j];
  r.trim();
  return r;
}

template <class F>
Poly<F> operator*(const Poly<F>& a, const F& s) {
  Poly<F> r = a;
  for (auto& x : r.c) x = x * s;
  r.trim();
  return r;
}

template <class F>
Poly<F> poly_pow(Poly<F> base, unsigned e) {
  if (e == 0) {
    if (base.is_zero()) throw std::logic_error("0^0 polynomial");
    return Poly<F>::constant(one_like(base.c[0]));
  }
  Poly<F> r = base;
  for (unsigned i = 1; i < e; ++i) r = r * base;
  return r;
}

// Quotient/remainder; divisor lead coefficient must be invertible.
template <class F>
std::pair<Poly<F>, Poly<F>> poly_divmod(const Poly<F>& a, const Poly<F>& b) {
  if (b.is_zero()) throw std::domain_error("polynomial division by zero");
  Poly<F> q, r = a;
  if (r.degree() < b.degree()) return {q, r};
  const F lead_inv = one_like(b.lead()) / b.lead();
  q.c.assign(r.c.size() - b.c.size() + 1, zero_like(b.lead()));
  while (!r.is_zero() && r.degree() >= b.degree()) {
    const int shift = r.degree() - b.degree();
    F factor = r.lead() * lead_inv;
    q.c[shift] = factor;
    for (size_t i = 0; i < b.c.size(); ++i)
      r.c[shift + i] = r.c[shift + i] - factor * b.c[i];
    r.trim();
  }
  q.trim();
  return {q, r};
}

template <class F>
Poly<F> make_monic(const Poly<F>& a) {
  if (a.is_zero()) return a;
  return a * (one_like(a.lead()) / a.lead());
}

// Monic gcd by the Euclidean algorithm with per-step monic normalization.
template <class F>
Poly<F> poly_gcd(Poly<F> a, Poly<F> b) {
  a = make_monic(a);
  b = make_monic(b);
  while (!b.is_zero()) {
    Poly<F> r = poly_divmod(a, b).second;
    a = std::move(b);
    b = make_monic(r);
  }
  return a;
}

template <class F, class X>
X poly_eval(const Poly<F>& p, const X& z, const X& zero) {
  X acc = zero;
  for (auto it = p.c.rbegin(); it != p.c.rend(); ++it) acc = acc * z + X(*it);
  return acc;
}

template <class F>
F poly_eval(const Poly<F>& p, const F& z) {
  return poly_eval<F, F>(p, z, zero_like(z));
}

// Coefficients of p(alpha + t) as a polynomial in t (Taylor shift via
// repeated synthetic division).
template <class F>
std::vector<F> taylor_shift(const Poly<F>& p, const F& alpha) {
  std::vector<F> work = p.c;
  std::vector<F> out;
  out.reserve(work.size());
  while (!work.empty()) {
    if (work.size() == 1) {
      out.push_back(work[0]);
      break;
    }
    // divide by (z - alpha): quotient coefficients by Horner, remainder last
    std::vector<F> q(work.size() - 1, zero_like(alpha));
    q.back() = work.back();
    for (size_t i = work.size() - 2; i >= 1; --i) q[i - 1] = work[i] + alpha * q[i];
    out.push_back(work[0] + alpha * q[0]);
    work = std::move(q);
  }
  return out;
}

}  // namespace heckerpf
