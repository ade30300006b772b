#include "heckerpf/json_io.hpp"
#include "heckerpf/numberfield.hpp"

#include <catch2/catch_amalgamated.hpp>

#include <boost/math/constants/constants.hpp>
#include <boost/multiprecision/cpp_bin_float.hpp>

#include <random>

using namespace heckerpf;
using Big = boost::multiprecision::cpp_bin_float_100;

namespace {

Big two_cos_pi_over(int p) {
  return 2 * cos(boost::math::constants::pi<Big>() / p);
}

Big rat_to_big(const Rat& x) {
  return Big(boost::multiprecision::numerator(x).str()) /
         Big(boost::multiprecision::denominator(x).str());
}

Big eval_minpoly_numeric(const std::shared_ptr<const NFContext>& ctx, const Big& x) {
  Big acc = 0;
  for (size_t i = ctx->minpoly.size(); i-- > 0;) acc = acc * x + Big(ctx->minpoly[i].str());
  return acc;
}

NFElem random_elem(const std::shared_ptr<const NFContext>& ctx, std::mt19937_64& rng) {
  std::uniform_int_distribution<int> d(-9, 9);
  std::vector<Rat> c;
  for (int i = 0; i < ctx->degree; ++i) c.emplace_back(d(rng), 1 + std::abs(d(rng)));
  return NFElem(ctx, std::move(c));
}

}  // namespace

TEST_CASE("minimal polynomials of 2cos(pi/p)") {
  auto c3 = make_context(3);
  CHECK(c3->minpoly == std::vector<Int>{-1, 1});  // x - 1
  auto c4 = make_context(4);
  CHECK(c4->minpoly == std::vector<Int>{-2, 0, 1});  // x^2 - 2
  auto c5 = make_context(5);
  CHECK(c5->minpoly == std::vector<Int>{-1, -1, 1});  // x^2 - x - 1
  auto c7 = make_context(7);
  CHECK(c7->minpoly == std::vector<Int>{1, -2, -1, 1});  // x^3 - x^2 - 2x + 1

  SECTION("degree = phi(2p)/2 and 40-digit numeric root, p in 3..20") {
    Big tol = pow(Big(10), -40);
    for (int p = 3; p <= 20; ++p) {
      auto ctx = make_context(p);
      CHECK(ctx->degree == static_cast<int>(euler_totient(2 * p) / 2));
      CHECK(abs(eval_minpoly_numeric(ctx, two_cos_pi_over(p))) < tol);
    }
  }

  SECTION("p < 3 rejected") {
    CHECK_THROWS(make_context(2));
    CHECK_THROWS(make_context(0));
  }

  SECTION("embedding enclosure straddles the root at every refinement") {
    // the float root carries ~1e-100 error of its own, so containment is
    // checked with that slack (the 512-bit enclosure is tighter than the float)
    const Big slack = Big("1e-90");
    for (int p : {4, 5, 7, 12}) {
      auto ctx = make_context(p);
      Big root = two_cos_pi_over(p);
      for (unsigned bits : {64u, 128u, 512u}) {
        RatInterval iv = ctx->enclosure(bits);
        CHECK(rat_to_big(iv.lo) <= root + slack);
        CHECK(root <= rat_to_big(iv.hi) + slack);
        CHECK(rat_to_big(iv.width()) <= Big(1) / pow(Big(2), bits));
      }
    }
  }
}

TEST_CASE("field arithmetic in Q(lambda_p)") {
  SECTION("p=4: lambda^2 = 2") {
    auto ctx = make_context(4);
    NFElem lam = NFElem::lambda(ctx);
    CHECK(lam * lam == NFElem(ctx, Rat(2)));
  }
  SECTION("p=5: lambda^2 = lambda + 1") {
    auto ctx = make_context(5);
    NFElem lam = NFElem::lambda(ctx);
    CHECK(lam * lam == lam + NFElem(ctx, Rat(1)));
  }
  SECTION("ring axioms and division on random elements") {
    std::mt19937_64 rng(7);
    for (int p : {3, 5, 7, 12}) {
      auto ctx = make_context(p);
      for (int rep = 0; rep < 8; ++rep) {
        NFElem a = random_elem(ctx, rng), b = random_elem(ctx, rng), c = random_elem(ctx, rng);
        CHECK((a + b) + c == a + (b + c));
        CHECK((a * b) * c == a * (b * c));
        CHECK(a * (b + c) == a * b + a * c);
        if (!a.is_zero()) CHECK(a / a == NFElem(ctx, Rat(1)));
      }
    }
  }
  SECTION("division by zero is a distinct error") {
    auto ctx = make_context(5);
    CHECK_THROWS_AS(NFElem(ctx, Rat(1)) / NFElem(ctx), std::domain_error);
  }
}

TEST_CASE("certified sign oracle") {
  SECTION("exact zero") {
    auto ctx = make_context(7);
    CHECK(nf_sign(NFElem(ctx)) == 0);
  }
  SECTION("p=5: lambda - 1 > 0; p=4: lambda - 2 < 0") {
    auto c5 = make_context(5);
    CHECK(nf_sign(NFElem::lambda(c5) - NFElem(c5, Rat(1))) == +1);
    auto c4 = make_context(4);
    CHECK(nf_sign(NFElem::lambda(c4) - NFElem(c4, Rat(2))) == -1);
  }
  SECTION("multiplicativity on random nonzero elements") {
    std::mt19937_64 rng(11);
    for (int p : {4, 5, 7}) {
      auto ctx = make_context(p);
      for (int rep = 0; rep < 10; ++rep) {
        NFElem a = random_elem(ctx, rng), b = random_elem(ctx, rng);
        if (a.is_zero() || b.is_zero()) continue;
        CHECK(nf_sign(a) * nf_sign(b) == nf_sign(a * b));
      }
    }
  }
  SECTION("tiny but nonzero elements get a verdict") {
    auto ctx = make_context(7);
    NFElem tiny(ctx, Rat(1, Int("1000000000000000000000000000000")));
    CHECK(nf_sign(tiny) == +1);
  }
}

TEST_CASE("quadratic extension elements") {
  auto ctx = make_context(3);
  NFElem one(ctx, Rat(1)), five(ctx, Rat(5)), half(ctx, Rat(1, 2));
  QElem phi(half, half, five);        // (1+sqrt5)/2
  QElem phi_c(half, -half, five);     // (1-sqrt5)/2

  SECTION("sign and product of golden conjugates") {
    CHECK(q_sign(phi) == +1);
    CHECK(q_sign(phi_c) == -1);
    CHECK(phi * phi_c == QElem::from_base(-one, five));  // (1-5)/4 = -1
  }
  SECTION("conjugation is an involutive automorphism") {
    CHECK(phi.conj() == phi_c);
    CHECK(phi.conj().conj() == phi);
    std::mt19937_64 rng(13);
    for (int rep = 0; rep < 8; ++rep) {
      QElem x(random_elem(ctx, rng), random_elem(ctx, rng), five);
      QElem y(random_elem(ctx, rng), random_elem(ctx, rng), five);
      CHECK((x * y).conj() == x.conj() * y.conj());
      CHECK((x + y).conj() == x.conj() + y.conj());
    }
  }
  SECTION("conj of a base element is itself") {
    QElem b = QElem::from_base(one, five);
    CHECK(b.conj() == b);
  }
  SECTION("inverse and zero-divisor error") {
    CHECK(phi * phi.inverse() == QElem::from_base(one, five));
    CHECK_THROWS_AS(QElem::from_base(NFElem(ctx), five).inverse(), std::domain_error);
  }
  SECTION("nonpositive D rejected") {
    CHECK_THROWS(QElem(one, one, -five));
    CHECK_THROWS(QElem(one, one, NFElem(ctx)));
  }
}

TEST_CASE("JSON serialization round-trips") {
  auto ctx = make_context(7);
  std::mt19937_64 rng(17);
  for (int rep = 0; rep < 6; ++rep) {
    NFElem a = random_elem(ctx, rng);
    CHECK(nf_from_json(ctx, nf_to_json(a)) == a);
  }
  json cj = context_to_json(ctx);
  CHECK(cj["p"] == 7);
  CHECK(cj["minpoly"] == json({1, -1, -2, 1}));
}
