#include "heckerpf/heckealg.hpp"

#include <catch2/catch_amalgamated.hpp>

#include <boost/math/constants/constants.hpp>
#include <boost/multiprecision/cpp_bin_float.hpp>

#include <random>

using namespace heckerpf;
using Big = boost::multiprecision::cpp_bin_float_100;

namespace {

Big nf_to_big(const NFElem& x) {
  Big lam = 2 * cos(boost::math::constants::pi<Big>() / x.ctx()->p);
  Big acc = 0;
  const auto& c = x.coeffs();
  for (size_t i = c.size(); i-- > 0;)
    acc = acc * lam + Big(boost::multiprecision::numerator(c[i]).str()) /
                          Big(boost::multiprecision::denominator(c[i]).str());
  return acc;
}

// pseudo-random hyperbolic group element as a product of U^j T blocks
Mat2 random_hyperbolic(const std::shared_ptr<const NFContext>& ctx, std::mt19937_64& rng) {
  std::uniform_int_distribution<int> d(1, ctx->p - 1);
  auto T = generators(ctx).T;
  for (;;) {
    Mat2 m = identity_mat(ctx);
    for (int i = 0; i < 3; ++i) m = m * u_power(ctx, d(rng)) * T;
    if (classify(m) == MatClass::hyperbolic && !m.c.is_zero()) return m;
  }
}

}  // namespace

TEST_CASE("generators and group relations") {
  SECTION("p=3: U = [[1,-1],[1,0]]") {
    auto ctx = make_context(3);
    auto g = generators(ctx);
    NFElem one(ctx, Rat(1));
    CHECK(g.U.a == one);
    CHECK(g.U.b == -one);
    CHECK(g.U.c == one);
    CHECK(g.U.d == NFElem(ctx));
  }
  SECTION("T^2 = +-I, U^p = +-I, det = 1, for p in 3..12") {
    for (int p = 3; p <= 12; ++p) {
      auto ctx = make_context(p);
      auto g = generators(ctx);
      CHECK((g.T * g.T).same_projective(identity_mat(ctx)));
      Mat2 up = identity_mat(ctx);
      for (int i = 0; i < p; ++i) up = up * g.U;
      CHECK(up.same_projective(identity_mat(ctx)));
      CHECK(g.S.det() == NFElem(ctx, Rat(1)));
      CHECK(g.T.det() == NFElem(ctx, Rat(1)));
      CHECK(g.U.det() == NFElem(ctx, Rat(1)));
    }
  }
}

TEST_CASE("closed-form powers of U") {
  SECTION("n=0 identity; n=1 is [[lambda,-1],[1,0]]") {
    auto ctx = make_context(7);
    CHECK(u_power(ctx, 0).same_projective(identity_mat(ctx)));
    Mat2 u1 = u_power(ctx, 1);
    CHECK(u1.a == NFElem::lambda(ctx));
    CHECK(u1.b == -NFElem(ctx, Rat(1)));
  }
  SECTION("agrees with direct powers and the sine-ratio formula") {
    Big tol = pow(Big(10), -40);
    for (int p : {3, 4, 5, 7, 12}) {
      auto ctx = make_context(p);
      auto g = generators(ctx);
      Mat2 direct = identity_mat(ctx);
      for (int n = 0; n <= p; ++n) {
        Mat2 closed = u_power(ctx, n);
        CHECK(closed.a == direct.a);
        CHECK(closed.b == direct.b);
        CHECK(closed.c == direct.c);
        CHECK(closed.d == direct.d);
        // a_n = sin((n+1)pi/p)/sin(pi/p), numerically
        Big pi = boost::math::constants::pi<Big>();
        Big expect = sin((n + 1) * pi / p) / sin(pi / p);
        CHECK(abs(nf_to_big(closed.a) - expect) < tol);
        direct = direct * g.U;
      }
      CHECK_THROWS(u_power(ctx, p + 1));
      CHECK_THROWS(u_power(ctx, -1));
    }
  }
  SECTION("p=5: a_2 = lambda^2 - 1") {
    auto ctx = make_context(5);
    NFElem lam = NFElem::lambda(ctx);
    CHECK(u_power(ctx, 2).a == lam * lam - NFElem(ctx, Rat(1)));
  }
}

TEST_CASE("entries of U^n T are nonnegative with structural zeros") {
  for (int p = 3; p <= 12; ++p) {
    auto ctx = make_context(p);
    auto T = generators(ctx).T;
    for (int n = 1; n <= p - 1; ++n) {
      // projective statement: U^n T itself carries the opposite sign
      Mat2 m = -(u_power(ctx, n) * T);
      CHECK(nf_sign(m.a) >= 0);
      CHECK(nf_sign(m.b) >= 0);
      CHECK(nf_sign(m.c) >= 0);
      CHECK(nf_sign(m.d) >= 0);
      CHECK((nf_sign(m.c) == 0) == (n == 1));      // lower-left zero only at UT
      CHECK((nf_sign(m.b) == 0) == (n == p - 1));  // upper-right zero only at U^{p-1}T
    }
  }
}

TEST_CASE("trace classification") {
  auto ctx = make_context(3);
  auto g = generators(ctx);
  CHECK(classify(g.T) == MatClass::elliptic);
  CHECK(classify(g.S) == MatClass::parabolic);
  NFElem one(ctx, Rat(1)), two(ctx, Rat(2));
  Mat2 m{two, one, one, one, ""};
  CHECK(classify(m) == MatClass::hyperbolic);
}

TEST_CASE("fixed points of hyperbolic elements") {
  auto ctx = make_context(3);
  NFElem one(ctx, Rat(1)), two(ctx, Rat(2)), half(ctx, Rat(1, 2));
  Mat2 m{two, one, one, one, ""};
  auto [alpha, alpha_c] = fixed_points(m);
  NFElem five(ctx, Rat(5));
  CHECK(alpha == QElem(half, half, five));
  CHECK(alpha_c == QElem(half, -half, five));
  CHECK(moebius(m, alpha) == alpha);
  CHECK(moebius(m, alpha_c) == alpha_c);
  CHECK(alpha != alpha_c);

  SECTION("word-product element at p=4") {
    auto c4 = make_context(4);
    NFElem lam = NFElem::lambda(c4), one4(c4, Rat(1));
    Mat2 w{one4 + lam * lam, lam, lam, one4, ""};
    auto [a, ac] = fixed_points(w);
    CHECK(moebius(w, a) == a);
    CHECK(moebius(w, ac) == ac);
  }
  SECTION("c = 0 and non-hyperbolic are rejected") {
    CHECK_THROWS(fixed_points(generators(ctx).S));
    CHECK_THROWS(fixed_points(generators(ctx).T));
  }
}

TEST_CASE("forms, the group action, and the number correspondence") {
  auto ctx = make_context(3);
  NFElem one(ctx, Rat(1)), zero(ctx), two(ctx, Rat(2));
  auto g = generators(ctx);

  SECTION("action examples at p=3") {
    BQF q(one, zero, -one);
    BQF qt = act(q, g.T);
    CHECK(qt.A == -one);
    CHECK(qt.B == zero);
    CHECK(qt.C == one);
    CHECK(qt.D == q.D);

    BQF golden(one, -one, -one);
    BQF gs = act(golden, g.S);
    CHECK(gs.A == one);
    CHECK(gs.B == one);
    CHECK(gs.C == -one);
    CHECK(gs.D == NFElem(ctx, Rat(5)));
  }
  SECTION("right action and discriminant preservation on random samples") {
    std::mt19937_64 rng(23);
    for (int p : {3, 5}) {
      auto c = make_context(p);
      NFElem o(c, Rat(1));
      BQF q(o + o, o, -o);
      for (int rep = 0; rep < 5; ++rep) {
        Mat2 m = random_hyperbolic(c, rng), n = random_hyperbolic(c, rng);
        BQF lhs = act(act(q, m), n), rhs = act(q, m * n);
        CHECK(lhs.A == rhs.A);
        CHECK(lhs.B == rhs.B);
        CHECK(lhs.C == rhs.C);
        CHECK(act(q, m).D == q.D);
      }
    }
  }
  SECTION("form_from_matrix at p=3") {
    Mat2 m{two, one, one, one, ""};
    BQF plus = form_from_matrix(m, Branch::plus);
    CHECK(plus.A == one);
    CHECK(plus.B == -one);
    CHECK(plus.C == -one);
    BQF minus = form_from_matrix(m, Branch::minus);
    CHECK(minus.A == -one);
    CHECK(minus.B == one);
    CHECK(minus.C == one);

    // content division: M^2 has entries [3,-3,-3] -> same primitive form
    Mat2 m2 = m * m;
    BQF again = form_from_matrix(m2, Branch::plus);
    CHECK(again.A == one);
    CHECK(again.B == -one);
    CHECK(again.C == -one);
    // alpha lives over D = 5 while fixed_points(m2) is expressed over
    // trace^2 - 4 = 45, so compare through the fixed-point property
    QElem a = alpha_of(again);
    CHECK(moebius(m2, a) == a);
    QElem fp = fixed_points(m2).first;
    CHECK(moebius(m2, fp) == fp);
    CHECK(q_sign(a) == q_sign(fp));
  }
  SECTION("alpha_of and Hecke conjugation") {
    BQF golden(one, -one, -one);
    NFElem half(ctx, Rat(1, 2)), five(ctx, Rat(5));
    CHECK(alpha_of(golden) == QElem(half, half, five));
    CHECK(hecke_conjugate(alpha_of(golden)) == QElem(half, -half, five));
    CHECK(alpha_of(-golden) == hecke_conjugate(alpha_of(golden)));
    CHECK_THROWS(alpha_of(BQF(zero, one, -one)));
  }
  SECTION("conjugation equivariance under random group elements") {
    std::mt19937_64 rng(29);
    BQF golden(one, -one, -one);
    QElem a = alpha_of(golden);
    for (int rep = 0; rep < 6; ++rep) {
      Mat2 v = random_hyperbolic(ctx, rng);
      CHECK(hecke_conjugate(moebius(v, a)) == moebius(v, hecke_conjugate(a)));
    }
  }
  SECTION("form/number correspondence Q2 = Q1 o V <=> alpha2 = V^{-1} alpha1") {
    std::mt19937_64 rng(31);
    BQF q1(one, -one, -one);
    for (int rep = 0; rep < 6; ++rep) {
      Mat2 v = random_hyperbolic(ctx, rng);
      BQF q2 = act(q1, v);
      if (q2.A.is_zero()) continue;
      CHECK(alpha_of(q2) == moebius(v.inverse(), alpha_of(q1)));
    }
  }
  SECTION("simplicity criterion") {
    CHECK(is_simple(BQF(one, -one, -one)));
    CHECK_FALSE(is_simple(BQF(-one, one, one)));
    // is_simple <=> alpha' < 0 < alpha on samples
    std::mt19937_64 rng(37);
    for (int rep = 0; rep < 8; ++rep) {
      Mat2 v = random_hyperbolic(ctx, rng);
      BQF q = form_from_matrix(v, rep % 2 ? Branch::plus : Branch::minus);
      if (q.A.is_zero()) continue;
      bool by_roots = q_sign(hecke_conjugate(alpha_of(q))) < 0 && q_sign(alpha_of(q)) > 0;
      CHECK(is_simple(q) == by_roots);
    }
  }
}

TEST_CASE("word bookkeeping") {
  auto ctx = make_context(5);
  auto g = generators(ctx);
  Mat2 m = g.U * g.T * g.U;
  CHECK(word_consistent(m));
  CHECK(word_consistent(m.inverse()));
  CHECK(m.det() == NFElem(ctx, Rat(1)));
}
