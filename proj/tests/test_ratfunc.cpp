#include "heckerpf/ratfunc.hpp"

#include <catch2/catch_amalgamated.hpp>

using namespace heckerpf;

namespace {

RatFunc<NFElem> one_over_z(const std::shared_ptr<const NFContext>& ctx) {
  return RatFunc<NFElem>(Poly<NFElem>::constant(NFElem(ctx, Rat(1))),
                         Poly<NFElem>::monomial(1, NFElem(ctx)));
}

}  // namespace

TEST_CASE("slash operator") {
  auto ctx = make_context(3);
  auto g = generators(ctx);
  NFElem one(ctx, Rat(1)), zero(ctx);

  SECTION("identity acts trivially") {
    RatFunc<NFElem> f(Poly<NFElem>({one, one + one}), Poly<NFElem>({-one, zero, one}));
    CHECK(slash(f, identity_mat(ctx), 3).equals(f));
  }
  SECTION("(1/z)|T = -1/z at weight 2") {
    CHECK(slash(one_over_z(ctx), g.T, 1).equals(one_over_z(ctx) * -one));
  }
  SECTION("right action law (f|M)|N = f|(MN)") {
    RatFunc<NFElem> f(Poly<NFElem>({one, zero, one + one + one}),
                      Poly<NFElem>({-one, one, one}));
    for (unsigned k : {1u, 2u}) {
      CHECK(slash(slash(f, g.U, k), g.T, k).equals(slash(f, g.U * g.T, k)));
      CHECK(slash(slash(f, g.T, k), g.S, k).equals(slash(f, g.T * g.S, k)));
    }
  }
  SECTION("linearity") {
    RatFunc<NFElem> f = one_over_z(ctx);
    RatFunc<NFElem> h(Poly<NFElem>::constant(one), Poly<NFElem>({-one, -one, one}));
    auto lhs = slash(f + h, g.U, 2);
    auto rhs = slash(f, g.U, 2) + slash(h, g.U, 2);
    CHECK(lhs.equals(rhs));
  }
}

TEST_CASE("principal parts") {
  auto ctx = make_context(3);
  NFElem one(ctx, Rat(1)), zero(ctx), five(ctx, Rat(5)), half(ctx, Rat(1, 2));

  SECTION("1/z^2 at 0: order 2, coefficients (1, 0)") {
    RatFunc<QElem> f = lift_ratfunc(
        RatFunc<NFElem>(Poly<NFElem>::constant(one), Poly<NFElem>::monomial(2, zero)), five);
    auto pp = principal_part(f, QElem::from_base(zero, five));
    REQUIRE(pp.order() == 2);
    CHECK(pp.coeffs[0] == QElem::from_base(one, five));
    CHECK(pp.coeffs[1].is_zero());
  }
  SECTION("residue of 1/(z^2-z-1) at the golden ratio is 1/sqrt5") {
    BQF golden(one, -one, -one);
    RatFunc<QElem> f =
        lift_ratfunc(RatFunc<NFElem>(Poly<NFElem>::constant(one),
                                     Poly<NFElem>({-one, -one, one})),
                     five);
    auto pp = principal_part(f, alpha_of(golden));
    REQUIRE(pp.order() == 1);
    CHECK(pp.coeffs[0] == QElem(zero, zero_like(zero), five) + QElem(zero, one, five).inverse());
  }
  SECTION("regular point gives an empty part") {
    RatFunc<QElem> f = lift_ratfunc(one_over_z(ctx), five);
    auto pp = principal_part(f, QElem::from_base(one, five));
    CHECK(pp.empty());
  }
  SECTION("f minus its principal part is regular at the pole") {
    BQF golden(one, -one, -one);
    RatFunc<QElem> f = lift_ratfunc(
        RatFunc<NFElem>(Poly<NFElem>({one, one}), poly_pow(Poly<NFElem>({-one, -one, one}), 2)),
        five);
    QElem a = alpha_of(golden);
    auto pp = principal_part(f, a);
    REQUIRE(pp.order() == 2);
    RatFunc<QElem> rest = (f - pp.to_ratfunc()).normalized();
    // denominator no longer divisible by (z - alpha)
    auto [quot, rem] = poly_divmod(rest.den, Poly<QElem>::linear_minus(a));
    CHECK_FALSE(rem.is_zero());
  }
}

TEST_CASE("canonical principal part q_{k,alpha}") {
  auto ctx = make_context(3);
  NFElem one(ctx, Rat(1));
  BQF golden(one, -one, -one);

  SECTION("k=1: single coefficient 1") {
    auto pp = q_k_alpha(golden, 1, RootChoice::alpha);
    REQUIRE(pp.order() == 1);
    CHECK(pp.coeffs[0] == one_like(alpha_of(golden)));
  }
  SECTION("two independent routes agree: closed form vs literal D^{k/2}/Q^k") {
    for (unsigned k : {1u, 2u, 3u, 4u}) {
      auto closed = q_k_alpha(golden, k, RootChoice::alpha);
      auto literal = principal_part(canonical_pole_function(golden, k), alpha_of(golden));
      REQUIRE(closed.order() == static_cast<int>(k));
      REQUIRE(literal.order() == static_cast<int>(k));
      for (size_t i = 0; i < k; ++i) CHECK(closed.coeffs[i] == literal.coeffs[i]);
      CHECK(closed.coeffs[0] == one_like(alpha_of(golden)));  // leading coeff exactly 1
    }
  }
  SECTION("expansion at alpha' is the Hecke conjugate, with (-1)^k on the literal route") {
    for (unsigned k : {1u, 2u, 3u}) {
      auto at_a = q_k_alpha(golden, k, RootChoice::alpha);
      auto at_ac = q_k_alpha(golden, k, RootChoice::alpha_conj);
      CHECK(at_ac.pole == at_a.pole.conj());
      // normalized closed form: coefficients conjugate exactly
      for (size_t i = 0; i < k; ++i) CHECK(at_ac.coeffs[i] == at_a.coeffs[i].conj());
      // principal part of the same literal function at alpha' differs by (-1)^k
      auto literal = principal_part(canonical_pole_function(golden, k),
                                    alpha_of(golden).conj());
      REQUIRE(literal.order() == static_cast<int>(k));
      for (size_t i = 0; i < k; ++i) {
        QElem expect = at_a.coeffs[i].conj();
        if (k % 2 == 1) expect = -expect;
        CHECK(literal.coeffs[i] == expect);
      }
    }
  }
  SECTION("works at p=5 with a lambda-coefficient form") {
    auto c5 = make_context(5);
    NFElem o(c5, Rat(1));
    BQF seed(o, -NFElem::lambda(c5), -o);
    for (unsigned k : {1u, 3u}) {
      auto closed = q_k_alpha(seed, k, RootChoice::alpha);
      auto literal = principal_part(canonical_pole_function(seed, k), alpha_of(seed));
      REQUIRE(closed.order() == literal.order());
      for (size_t i = 0; i < k; ++i) CHECK(closed.coeffs[i] == literal.coeffs[i]);
    }
  }
}

TEST_CASE("numeric interval evaluation") {
  auto ctx = make_context(3);
  NFElem one(ctx, Rat(1)), zero(ctx);

  SECTION("constants and exact rational points") {
    RatFunc<NFElem> c1(Poly<NFElem>::constant(one), Poly<NFElem>::constant(one));
    BoxInterval z{RatInterval(Rat(7)), RatInterval(Rat(0))};
    BoxInterval v = eval_numeric(c1, z, 128);
    CHECK(v.re.lo == 1);
    CHECK(v.re.hi == 1);

    // 1/(z^2-z-1) at z=3 is exactly 1/5
    RatFunc<NFElem> f(Poly<NFElem>::constant(one), Poly<NFElem>({-one, -one, one}));
    BoxInterval z3{RatInterval(Rat(3)), RatInterval(Rat(0))};
    BoxInterval v3 = eval_numeric(f, z3, 128);
    CHECK(v3.re.lo == Rat(1, 5));
    CHECK(v3.re.hi == Rat(1, 5));
  }
  SECTION("pole proximity is an error") {
    RatFunc<NFElem> f = RatFunc<NFElem>(Poly<NFElem>::constant(one),
                                        Poly<NFElem>::monomial(1, zero));
    BoxInterval z0{RatInterval(Rat(0)), RatInterval(Rat(0))};
    CHECK_THROWS(eval_numeric(f, z0, 128));
  }
}

TEST_CASE("rational function equality and normalization") {
  auto ctx = make_context(4);
  NFElem one(ctx, Rat(1)), zero(ctx), lam = NFElem::lambda(ctx);

  RatFunc<NFElem> a(Poly<NFElem>({zero, lam}), Poly<NFElem>({zero, zero, lam}));  // lam z / lam z^2
  RatFunc<NFElem> b(Poly<NFElem>::constant(one), Poly<NFElem>::monomial(1, zero));  // 1/z
  CHECK(a.equals(b));
  RatFunc<NFElem> an = a.normalized();
  CHECK(an.num.degree() == 0);
  CHECK(an.den.degree() == 1);
  CHECK(an.den.lead() == one);
  CHECK(an.normalized().equals(an));
  CHECK_THROWS(RatFunc<NFElem>(Poly<NFElem>::constant(one), Poly<NFElem>{}));
}
