#pragma once

// Matrices of the Hecke group G_p with generator-word bookkeeping,
// lambda_p-binary quadratic forms, the G_p action on forms, and the
// number <-> form correspondence.

#include "heckerpf/numberfield.hpp"

#include <optional>
#include <stdexcept>
#include <string>
#include <utility>

namespace heckerpf {

// Word alphabet: 'S' (z -> z + lambda), 's' = S^-1, 'T' (z -> -1/z),
// 'U' = ST, 'u' = U^-1.  Words are projective: they reproduce the matrix
// only up to sign.
struct Mat2 {
  NFElem a, b, c, d;
  std::string word;

  Mat2() = default;
  Mat2(NFElem a_, NFElem b_, NFElem c_, NFElem d_, std::string w = {})
      : a(std::move(a_)), b(std::move(b_)), c(std::move(c_)), d(std::move(d_)), word(std::move(w)) {}

  const std::shared_ptr<const NFContext>& ctx() const { return a.ctx(); }

  NFElem det() const { return a * d - b * c; }
  NFElem trace() const { return a + d; }

  bool operator==(const Mat2& o) const {
    return a == o.a && b == o.b && c == o.c && d == o.d;
  }
  bool same_projective(const Mat2& o) const {
    return (*this == o) || (a == -o.a && b == -o.b && c == -o.c && d == -o.d);
  }

  Mat2 inverse() const {
    std::string w;
    w.reserve(word.size());
    for (auto it = word.rbegin(); it != word.rend(); ++it) {
      switch (*it) {
        case 'S': w += 's'; break;
        case 's': w += 'S'; break;
        case 'U': w += 'u'; break;
        case 'u': w += 'U'; break;
        default: w += *it;  // T is projectively self-inverse
      }
    }
    return Mat2(d, -b, -c, a, std::move(w));
  }

  Mat2 operator-() const { return Mat2(-a, -b, -c, -d, word); }
};

inline Mat2 operator*(const Mat2& m, const Mat2& n) {
  return Mat2(m.a * n.a + m.b * n.c, m.a * n.b + m.b * n.d,
              m.c * n.a + m.d * n.c, m.c * n.b + m.d * n.d, m.word + n.word);
}

inline Mat2 identity_mat(const std::shared_ptr<const NFContext>& ctx) {
  NFElem one(ctx, Rat(1)), zero(ctx);
  return Mat2(one, zero, zero, one, "");
}

struct Generators {
  Mat2 S, T, U;
};

// S = [[1, lambda], [0, 1]], T = [[0, -1], [1, 0]], U = S T.
inline Generators generators(const std::shared_ptr<const NFContext>& ctx) {
  NFElem one(ctx, Rat(1)), zero(ctx), lam = NFElem::lambda(ctx);
  Mat2 S(one, lam, zero, one, "S");
  Mat2 T(zero, -one, one, zero, "T");
  Mat2 U = S * T;
  U.word = "U";
  return {S, T, U};
}

// U^n in closed form [[a_n, -a_{n-1}], [a_{n-1}, -a_{n-2}]] with
// a_n = lambda a_{n-1} - a_{n-2}, a_0 = 1, a_{-1} = 0.
inline Mat2 u_power(const std::shared_ptr<const NFContext>& ctx, int n) {
  if (n < 0 || n > ctx->p) throw std::out_of_range("u_power: n must be in 0..p");
  NFElem lam = NFElem::lambda(ctx);
  NFElem a_prev2(ctx, Rat(-1));  // a_{-2} = -1 makes the closed form valid at n = 0
  NFElem a_prev(ctx);            // a_{-1} = 0
  NFElem a_cur(ctx, Rat(1));     // a_0 = 1
  for (int i = 0; i < n; ++i) {
    NFElem a_next = lam * a_cur - a_prev;
    a_prev2 = std::move(a_prev);
    a_prev = a_cur;
    a_cur = std::move(a_next);
  }
  std::string w(static_cast<size_t>(n), 'U');
  return Mat2(a_cur, -a_prev, a_prev, -a_prev2, std::move(w));
}

// Multiply out a word projectively; true iff it reproduces the matrix up to sign.
inline bool word_consistent(const Mat2& m) {
  if (m.word.empty()) return true;
  auto [S, T, U] = generators(m.ctx());
  Mat2 acc = identity_mat(m.ctx());
  for (char ch : m.word) {
    switch (ch) {
      case 'S': acc = acc * S; break;
      case 's': acc = acc * S.inverse(); break;
      case 'T': acc = acc * T; break;
      case 'U': acc = acc * U; break;
      case 'u': acc = acc * U.inverse(); break;
      default: return false;
    }
  }
  return acc.same_projective(m);
}

enum class MatClass { hyperbolic, parabolic, elliptic };

inline MatClass classify(const Mat2& m) {
  NFElem t = m.trace();
  switch (nf_sign(t * t - NFElem(m.ctx(), Rat(4)))) {
    case 1: return MatClass::hyperbolic;
    case 0: return MatClass::parabolic;
    default: return MatClass::elliptic;
  }
}

// Moebius action of a matrix on a quadratic-extension point.
inline QElem moebius(const Mat2& m, const QElem& x) {
  QElem den = QElem::from_base(m.c, x.D()) * x + QElem::from_base(m.d, x.D());
  if (den.is_zero()) throw std::domain_error("moebius: image at infinity");
  QElem num = QElem::from_base(m.a, x.D()) * x + QElem::from_base(m.b, x.D());
  return num / den;
}

// Fixed points of a hyperbolic matrix: (a - d +- sqrt((a+d)^2 - 4)) / (2c).
// first = '+' branch, second = '-' branch.
inline std::pair<QElem, QElem> fixed_points(const Mat2& m) {
  if (classify(m) != MatClass::hyperbolic)
    throw std::invalid_argument("fixed_points: matrix is not hyperbolic");
  if (m.c.is_zero())
    throw std::domain_error("fixed_points: c = 0, fixed point at infinity");
  NFElem t = m.trace();
  NFElem D = t * t - NFElem(m.ctx(), Rat(4));
  NFElem inv2c = (m.c * Rat(2)).inverse();
  NFElem u = (m.a - m.d) * inv2c;
  return {QElem(u, inv2c, D), QElem(u, -inv2c, D)};
}

// lambda_p-binary quadratic form Q = [A, B, C], discriminant D = B^2 - 4AC.
struct BQF {
  NFElem A, B, C;
  NFElem D;

  BQF() = default;
  BQF(NFElem A_, NFElem B_, NFElem C_)
      : A(std::move(A_)), B(std::move(B_)), C(std::move(C_)) {
    D = B * B - A * C * Rat(4);
  }

  const std::shared_ptr<const NFContext>& ctx() const { return A.ctx(); }

  bool operator==(const BQF& o) const { return A == o.A && B == o.B && C == o.C; }
  bool operator!=(const BQF& o) const { return !(*this == o); }

  BQF operator-() const { return BQF(-A, -B, -C); }

  bool is_hyperbolic() const { return nf_sign(D) > 0; }
};

// (Q o M)(x, y) = Q(ax + by, cx + dy); preserves the discriminant.
inline BQF act(const BQF& q, const Mat2& m) {
  NFElem A2 = q.A * m.a * m.a + q.B * m.a * m.c + q.C * m.c * m.c;
  NFElem B2 = q.A * m.a * m.b * Rat(2) + q.B * (m.a * m.d + m.b * m.c) + q.C * m.c * m.d * Rat(2);
  NFElem C2 = q.A * m.b * m.b + q.B * m.b * m.d + q.C * m.d * m.d;
  return BQF(std::move(A2), std::move(B2), std::move(C2));
}

enum class Branch { plus, minus };

// +-(1/g) [c, d - a, -b] for a hyperbolic matrix.  g is the rational content
// gcd for p = 3 (entries are rational there); g = 1 otherwise.
inline BQF form_from_matrix(const Mat2& m, Branch branch) {
  if (classify(m) != MatClass::hyperbolic)
    throw std::invalid_argument("form_from_matrix: matrix is not hyperbolic");
  NFElem A = m.c, B = m.d - m.a, C = -m.b;
  if (m.ctx()->p == 3) {
    Rat g = rat_content({A.as_rational(), B.as_rational(), C.as_rational()});
    if (!g.is_zero()) {
      Rat ginv = 1 / g;
      A = A * ginv;
      B = B * ginv;
      C = C * ginv;
    }
  }
  if (branch == Branch::minus) return BQF(-A, -B, -C);
  return BQF(std::move(A), std::move(B), std::move(C));
}

// alpha_Q = (-B + sqrt(D)) / (2A)
inline QElem alpha_of(const BQF& q) {
  if (q.A.is_zero()) throw std::domain_error("alpha_of: A = 0, root at infinity");
  if (!q.is_hyperbolic()) throw std::invalid_argument("alpha_of: form is not hyperbolic");
  NFElem inv2A = (q.A * Rat(2)).inverse();
  return QElem(-q.B * inv2A, inv2A, q.D);
}

// Hecke conjugate: the number attached to -Q, i.e. u + v sqrt(D) -> u - v sqrt(D).
inline QElem hecke_conjugate(const QElem& x) { return x.conj(); }

// simple: A > 0 > C; equivalently alpha' < 0 < alpha.
inline bool is_simple(const BQF& q) {
  return nf_sign(q.A) > 0 && nf_sign(q.C) < 0;
}

}  // namespace heckerpf
