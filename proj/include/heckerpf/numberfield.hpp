#pragma once

// Exact arithmetic in Q(lambda_p), lambda_p = 2cos(pi/p), and in its real
// quadratic extensions Q(lambda_p)(sqrt(D)).  Elements are rational
// coefficient vectors reduced modulo the minimal polynomial of lambda_p;
// signs under the real embedding are decided by adaptive-precision interval
// bisection against that minimal polynomial.

#include "heckerpf/interval.hpp"
#include "heckerpf/poly.hpp"
#include "heckerpf/rational.hpp"

#include <cmath>
#include <memory>
#include <numeric>
#include <stdexcept>
#include <utility>
#include <vector>

namespace heckerpf {

inline unsigned euler_totient(unsigned n) {
  unsigned result = n;
  for (unsigned q = 2; q * q <= n; ++q) {
    if (n % q == 0) {
      while (n % q == 0) n /= q;
      result -= result / q;
    }
  }
  if (n > 1) result -= result / n;
  return result;
}

// n-th cyclotomic polynomial, ascending integer coefficients.
// Phi_n = (x^n - 1) / prod_{d | n, d < n} Phi_d, by exact division.
inline std::vector<Int> cyclotomic(unsigned n) {
  // long division by a monic divisor (all cyclotomic polynomials are monic)
  auto divide_exact = [](std::vector<Int> a, const std::vector<Int>& b) {
    std::vector<Int> q(a.size() - b.size() + 1, 0);
    for (size_t shift = q.size(); shift-- > 0;) {
      Int f = a[shift + b.size() - 1];
      if (f != 0) {
        q[shift] = f;
        for (size_t j = 0; j < b.size(); ++j) a[shift + j] -= f * b[j];
      }
    }
    return q;
  };
  std::vector<Int> num(n + 1, 0);
  num[0] = -1;
  num[n] = 1;
  for (unsigned d = 1; d < n; ++d) {
    if (n % d != 0) continue;
    num = divide_exact(std::move(num), cyclotomic(d));
  }
  return num;
}

inline Rat eval_int_poly(const std::vector<Int>& c, const Rat& x) {
  Rat acc = 0;
  for (auto it = c.rbegin(); it != c.rend(); ++it) acc = acc * x + Rat(*it);
  return acc;
}

class NFContext {
 public:
  int p = 0;
  int degree = 0;
  std::vector<Int> minpoly;  // ascending, monic, irreducible over Q

  static std::shared_ptr<const NFContext> make(int p);

  // Certified enclosure of 2cos(pi/p) with width <= 2^-bits.
  RatInterval enclosure(unsigned bits) const {
    if (exact_) return base_;
    RatInterval iv = fine_;
    refine_to(iv, bits);
    return iv;
  }

  bool embedding_exact() const { return exact_; }

 private:
  RatInterval base_;  // isolating interval, m(lo) < 0 < m(hi)
  RatInterval fine_;  // pre-refined checkpoint
  bool exact_ = false;

  void refine_to(RatInterval& iv, unsigned bits) const {
    const Rat target = Rat(1, Int(1) << bits);
    while (rat_lt(target, iv.width())) {
      Rat mid = (iv.lo + iv.hi) / 2;
      Rat v = eval_int_poly(minpoly, mid);
      // minpoly is irreducible of degree >= 2 here, so v != 0 at rationals
      if (rat_sign(v) > 0)
        iv.hi = mid;
      else
        iv.lo = mid;
    }
  }

  friend std::shared_ptr<const NFContext> detail_make_context(int p);
};

inline std::shared_ptr<const NFContext> detail_make_context(int p) {
  if (p < 3) throw std::invalid_argument("Hecke group index p must be >= 3");
  const unsigned n = 2 * static_cast<unsigned>(p);
  std::vector<Int> phi = cyclotomic(n);
  const size_t d = phi.size() - 1;  // even for n >= 3
  const size_t half = d / 2;

  // Phi_{2p}(x) = x^{d/2} Psi(x + 1/x); recover Psi with V_j(y) = x^j + x^-j,
  // V_0 = 2, V_1 = y, V_j = y V_{j-1} - V_{j-2}.
  std::vector<std::vector<Int>> V(half + 1);
  V[0] = {2};
  if (half >= 1) V[1] = {0, 1};
  for (size_t j = 2; j <= half; ++j) {
    V[j].assign(j + 1, 0);
    for (size_t i = 0; i < V[j - 1].size(); ++i) V[j][i + 1] += V[j - 1][i];
    for (size_t i = 0; i < V[j - 2].size(); ++i) V[j][i] -= V[j - 2][i];
  }
  std::vector<Int> psi(half + 1, 0);
  psi[0] = phi[half];
  for (size_t j = 1; j <= half; ++j)
    for (size_t i = 0; i < V[j].size(); ++i) psi[i] += phi[half + j] * V[j][i];

  auto ctx = std::make_shared<NFContext>();
  ctx->p = p;
  ctx->minpoly = std::move(psi);
  ctx->degree = static_cast<int>(half);
  if (ctx->degree != static_cast<int>(euler_totient(n) / 2))
    throw std::logic_error("minimal polynomial degree mismatch");

  if (ctx->degree == 1) {
    // rational root (p = 3 only: lambda = 1)
    Rat root = Rat(-ctx->minpoly[0], ctx->minpoly[1]);
    ctx->base_ = RatInterval(root);
    ctx->fine_ = ctx->base_;
    ctx->exact_ = true;
    return ctx;
  }

  // Isolate the largest root 2cos(pi/p): pick a rational cut between it and
  // the next-largest root 2cos(k pi/p), k the next integer coprime to 2p.
  unsigned k = 2;
  while (std::gcd(k, n) != 1) ++k;
  double r1 = 2.0 * std::cos(M_PI / p);
  double rk = 2.0 * std::cos(k * M_PI / p);
  double cut = (r1 + rk) / 2.0;
  Rat a(Int(static_cast<long long>(std::floor(cut * (1LL << 40)))), Int(1) << 40);
  Rat b(2);
  if (!(eval_int_poly(ctx->minpoly, a) < 0 && eval_int_poly(ctx->minpoly, b) > 0))
    throw std::logic_error("failed to isolate the embedding of lambda_p");
  ctx->base_ = RatInterval(a, b);
  ctx->fine_ = ctx->base_;
  ctx->refine_to(ctx->fine_, 256);
  return ctx;
}

inline std::shared_ptr<const NFContext> NFContext::make(int p) {
  return detail_make_context(p);
}

inline std::shared_ptr<const NFContext> make_context(int p) { return NFContext::make(p); }

class NFElem {
 public:
  NFElem() = default;
  explicit NFElem(std::shared_ptr<const NFContext> ctx)
      : ctx_(std::move(ctx)), c_(static_cast<size_t>(ctx_->degree), Rat(0)) {}
  NFElem(std::shared_ptr<const NFContext> ctx, std::vector<Rat> coeffs)
      : ctx_(std::move(ctx)), c_(std::move(coeffs)) {
    reduce();
  }
  NFElem(std::shared_ptr<const NFContext> ctx, const Rat& value) : NFElem(std::move(ctx)) {
    c_[0] = value;
  }

  static NFElem lambda(const std::shared_ptr<const NFContext>& ctx) {
    std::vector<Rat> v(2, Rat(0));
    v[1] = 1;
    return NFElem(ctx, std::move(v));
  }

  const std::shared_ptr<const NFContext>& ctx() const { return ctx_; }
  const std::vector<Rat>& coeffs() const { return c_; }

  bool is_zero() const {
    for (const auto& x : c_)
      if (!x.is_zero()) return false;
    return true;
  }

  bool is_rational() const {
    for (size_t i = 1; i < c_.size(); ++i)
      if (!c_[i].is_zero()) return false;
    return true;
  }

  // Exactly representable rational value; throws otherwise.
  Rat as_rational() const {
    if (!is_rational()) throw std::domain_error("NFElem is not rational");
    return c_[0];
  }

  bool is_integral() const {
    for (const auto& x : c_)
      if (denominator(x) != 1) return false;
    return true;
  }

  bool operator==(const NFElem& o) const {
    check_ctx(o);
    return c_ == o.c_;
  }
  bool operator!=(const NFElem& o) const { return !(*this == o); }

  NFElem operator+(const NFElem& o) const {
    check_ctx(o);
    NFElem r = *this;
    for (size_t i = 0; i < c_.size(); ++i) r.c_[i] += o.c_[i];
    return r;
  }
  NFElem operator-(const NFElem& o) const {
    check_ctx(o);
    NFElem r = *this;
    for (size_t i = 0; i < c_.size(); ++i) r.c_[i] -= o.c_[i];
    return r;
  }
  NFElem operator-() const {
    NFElem r = *this;
    for (auto& x : r.c_) x = -x;
    return r;
  }
  NFElem operator*(const NFElem& o) const {
    check_ctx(o);
    std::vector<Rat> prod(2 * c_.size(), Rat(0));
    for (size_t i = 0; i < c_.size(); ++i) {
      if (c_[i].is_zero()) continue;
      for (size_t j = 0; j < o.c_.size(); ++j) prod[i + j] += c_[i] * o.c_[j];
    }
    return NFElem(ctx_, std::move(prod));
  }
  NFElem operator*(const Rat& s) const {
    NFElem r = *this;
    for (auto& x : r.c_) x *= s;
    return r;
  }
  NFElem operator/(const NFElem& o) const { return *this * o.inverse(); }

  NFElem inverse() const {
    if (is_zero()) throw std::domain_error("NFElem division by zero");
    // extended Euclid:  t * this == gcd (mod minpoly), gcd a nonzero constant
    Poly<Rat> r0(std::vector<Rat>(ctx_->minpoly.begin(), ctx_->minpoly.end()));
    Poly<Rat> r1(c_);
    Poly<Rat> t0, t1 = Poly<Rat>::constant(Rat(1));
    while (!r1.is_zero()) {
      auto [q, rem] = poly_divmod(r0, r1);
      r0 = std::move(r1);
      r1 = std::move(rem);
      Poly<Rat> t2 = t0 - q * t1;
      t0 = std::move(t1);
      t1 = std::move(t2);
    }
    if (r0.degree() != 0)
      throw std::logic_error("reducible minimal polynomial in NFElem::inverse");
    return NFElem(ctx_, (t0 * inv_elem(r0.c[0])).c);
  }

  // Certified interval enclosure of the real image, computed at the given
  // working precision of the lambda enclosure.
  RatInterval interval(unsigned bits) const {
    // Horner with outward rounding after every step: |lambda| < 2 and the
    // degree is tiny, so the extra width is < degree * 2^{degree} * 2^-g,
    // well inside the 2^-bits budget for g = bits + 32.
    const unsigned g = bits + 32;
    RatInterval lam = round_outward(ctx_->enclosure(bits), g);
    RatInterval acc(Rat(0));
    for (auto it = c_.rbegin(); it != c_.rend(); ++it)
      acc = round_outward(acc * lam + RatInterval(*it), g);
    return acc;
  }

 private:
  std::shared_ptr<const NFContext> ctx_;
  std::vector<Rat> c_;

  void check_ctx(const NFElem& o) const {
    if (!ctx_ || !o.ctx_ || ctx_->p != o.ctx_->p)
      throw std::invalid_argument("NFElem context mismatch");
  }

  void reduce() {
    const size_t d = static_cast<size_t>(ctx_->degree);
    for (size_t i = c_.size(); i-- > d;) {
      Rat t = c_[i];
      if (!t.is_zero()) {
        for (size_t j = 0; j <= d; ++j) c_[i - d + j] -= t * Rat(ctx_->minpoly[j]);
      }
    }
    c_.resize(d, Rat(0));
  }
};

inline bool is_zero_elem(const NFElem& x) { return x.is_zero(); }
inline NFElem zero_like(const NFElem& x) { return NFElem(x.ctx()); }
inline NFElem one_like(const NFElem& x) { return NFElem(x.ctx(), Rat(1)); }
inline NFElem inv_elem(const NFElem& x) { return x.inverse(); }

constexpr unsigned kSignPrecisionCap = 1u << 16;

// Sign under the embedding lambda_p -> 2cos(pi/p).  Exact zero test first,
// then interval evaluation with doubling precision.  Total for all inputs.
inline int nf_sign(const NFElem& a) {
  if (a.is_zero()) return 0;
  for (unsigned bits = 64;; bits *= 2) {
    if (bits > kSignPrecisionCap)
      throw std::runtime_error("nf_sign: precision cap exceeded on a nonzero element");
    int s = a.interval(bits).sign();
    if (s != 0) return s;
  }
}

// Element of Q(lambda_p)(sqrt(D)), value u + v*sqrt(D), with D > 0 certified.
class QElem {
 public:
  QElem() = default;
  QElem(NFElem u, NFElem v, NFElem D)
      : u_(std::move(u)), v_(std::move(v)), D_(std::move(D)) {
    if (nf_sign(D_) <= 0) throw std::invalid_argument("QElem requires D > 0");
  }

  // D is taken on trust here: callers pass the D of an already-validated
  // element, and re-certifying D > 0 on every lift is the dominant cost of
  // Moebius-action-heavy loops.
  static QElem from_base(const NFElem& x, const NFElem& D) {
    return raw(x, zero_like(x), D);
  }

  const NFElem& u() const { return u_; }
  const NFElem& v() const { return v_; }
  const NFElem& D() const { return D_; }
  const std::shared_ptr<const NFContext>& ctx() const { return u_.ctx(); }

  bool is_zero() const { return u_.is_zero() && v_.is_zero(); }
  bool is_base() const { return v_.is_zero(); }

  bool operator==(const QElem& o) const {
    check_compat(o);
    return u_ == o.u_ && v_ == o.v_;
  }
  bool operator!=(const QElem& o) const { return !(*this == o); }

  QElem operator+(const QElem& o) const {
    check_compat(o);
    return raw(u_ + o.u_, v_ + o.v_, D_);
  }
  QElem operator-(const QElem& o) const {
    check_compat(o);
    return raw(u_ - o.u_, v_ - o.v_, D_);
  }
  QElem operator-() const { return raw(-u_, -v_, D_); }
  QElem operator*(const QElem& o) const {
    check_compat(o);
    return raw(u_ * o.u_ + v_ * o.v_ * D_, u_ * o.v_ + v_ * o.u_, D_);
  }
  QElem operator/(const QElem& o) const { return *this * o.inverse(); }

  QElem conj() const { return raw(u_, -v_, D_); }

  NFElem norm() const { return u_ * u_ - v_ * v_ * D_; }

  QElem inverse() const {
    if (is_zero()) throw std::domain_error("QElem division by zero");
    NFElem n = norm();
    if (n.is_zero())
      throw std::domain_error("QElem is a zero divisor: D is a square in the base field");
    NFElem ninv = n.inverse();
    return raw(u_ * ninv, -(v_ * ninv), D_);
  }

  // Certified enclosure of the real value u + v*sqrt(D).
  RatInterval interval(unsigned bits) const {
    RatInterval div = D_.interval(bits);
    for (unsigned b = bits; div.lo <= 0; b *= 2) {
      if (b > kSignPrecisionCap) throw std::runtime_error("QElem::interval: D enclosure stuck at 0");
      div = D_.interval(b);
    }
    return u_.interval(bits) + v_.interval(bits) * sqrt_interval(div, bits);
  }

 private:
  NFElem u_, v_, D_;

  // trusted constructor bypassing the D sign re-check
  static QElem raw(NFElem u, NFElem v, NFElem D) {
    QElem q;
    q.u_ = std::move(u);
    q.v_ = std::move(v);
    q.D_ = std::move(D);
    return q;
  }

  void check_compat(const QElem& o) const {
    if (u_.ctx()->p != o.u_.ctx()->p) throw std::invalid_argument("QElem context mismatch");
    if (D_ != o.D_) throw std::invalid_argument("QElem operands over different D");
  }

  friend QElem zero_like(const QElem&);
  friend QElem one_like(const QElem&);
};

inline bool is_zero_elem(const QElem& x) { return x.is_zero(); }
inline QElem zero_like(const QElem& x) {
  return QElem::raw(zero_like(x.u()), zero_like(x.u()), x.D());
}
inline QElem one_like(const QElem& x) {
  return QElem::raw(one_like(x.u()), zero_like(x.u()), x.D());
}
inline QElem inv_elem(const QElem& x) { return x.inverse(); }

inline QElem q_conj(const QElem& x) { return x.conj(); }

// Sign of the real value u + v*sqrt(D); total.
inline int q_sign(const QElem& x) {
  const int su = nf_sign(x.u());
  const int sv = nf_sign(x.v());
  if (sv == 0) return su;
  if (su == 0) return sv;
  if (su == sv) return su;
  // opposite signs: compare u^2 against v^2 D
  int s = nf_sign(x.u() * x.u() - x.v() * x.v() * x.D());
  if (s == 0) return 0;
  return su > 0 ? s : -s;
}

}  // namespace heckerpf
