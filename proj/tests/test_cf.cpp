#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "littlewood/cf.hpp"

using namespace lw;

TEST_CASE("golden ratio expansion") {
  auto t = cf_expand_surd(QuadraticSurd::metallic(BigInt(1)), 6);
  REQUIRE(t.size() == 6);
  for (size_t k = 0; k < 6; ++k) CHECK(t.quotients[k] == 1);
  REQUIRE(t.period.has_value());
  CHECK(t.period->first == 0);
  CHECK(t.period->second == 1);
  // Fibonacci convergents
  CHECK(t.q(0) == 1);
  CHECK(t.q(1) == 1);
  CHECK(t.q(2) == 2);
  CHECK(t.q(3) == 3);
  CHECK(t.q(4) == 5);
}

TEST_CASE("sqrt2 expansion") {
  auto t = cf_expand_surd(QuadraticSurd::sqrt_of(BigInt(2)), 5);
  CHECK(t.quotients[0] == 1);
  for (size_t k = 1; k < 5; ++k) CHECK(t.quotients[k] == 2);
  REQUIRE(t.period.has_value());
  CHECK(t.period->first == 1);
  CHECK(t.period->second == 1);
}

TEST_CASE("metallic surds have constant quotient") {
  for (int b = 1; b <= 50; ++b) {
    auto t = cf_expand_surd(QuadraticSurd::metallic(BigInt(b)), 10);
    for (size_t k = 0; k < t.size(); ++k) CHECK(t.quotients[k] == b);
    REQUIRE(t.period.has_value());
    CHECK(t.period->first == 0);
    CHECK(t.period->second == 1);
  }
}

TEST_CASE("determinant identity") {
  auto t = cf_expand_surd(QuadraticSurd{BigInt(3), BigInt(19), BigInt(5)}.canonical(), 20);
  for (size_t k = 1; k < t.size(); ++k) {
    BigInt det = t.p(k) * t.q(k - 1) - t.p(k - 1) * t.q(k);
    CHECK(det == ((k - 1) % 2 == 0 ? 1 : -1));
  }
}

TEST_CASE("literal expansions") {
  auto half = cf_expand_literal(RealSpec::rational(make_rat(1, 2)), 10);
  REQUIRE(half.size() == 2);
  CHECK(half.quotients[0] == 0);
  CHECK(half.quotients[1] == 2);
  CHECK(half.complete);

  auto one = cf_expand_literal(RealSpec::rational(make_rat(1)), 10);
  REQUIRE(one.size() == 1);
  CHECK(one.quotients[0] == 1);

  // independent long-division oracle for the first four quotients of pi
  auto pi = cf_expand_literal(RealSpec::literal("3.14159265358979"), 6);
  REQUIRE(pi.size() >= 4);
  CHECK(pi.quotients[0] == 3);
  CHECK(pi.quotients[1] == 7);
  CHECK(pi.quotients[2] == 15);
  CHECK(pi.quotients[3] == 1);
}

TEST_CASE("metallic_q recurrence vs closed form") {
  // Fibonacci
  BigInt fib[] = {1, 1, 2, 3, 5, 8};
  for (int n = 0; n < 6; ++n) CHECK(metallic_q(BigInt(1), n) == fib[n]);
  CHECK(metallic_q(BigInt(2), 3) == 12);   // Pell
  CHECK(metallic_q(BigInt(7), 2) == 50);   // b^2 + 1
  CHECK(metallic_q_closed(BigInt(2), 2) == 5);
  CHECK(metallic_q_closed(BigInt(1), 5) == 8);
  CHECK(metallic_q_closed(BigInt(9), 0) == 1);
  for (int b = 1; b <= 10; ++b)
    for (int n = 0; n <= 50; ++n)
      CHECK(metallic_q(BigInt(b), n) == metallic_q_closed(BigInt(b), n));
}

TEST_CASE("metallic_q matches surd convergents") {
  for (int b = 1; b <= 8; ++b) {
    auto t = cf_expand_surd(QuadraticSurd::metallic(BigInt(b)), 12);
    for (int n = 0; n < 12; ++n) CHECK(t.q(n) == metallic_q(BigInt(b), n));
  }
}

TEST_CASE("error records") {
  RealSpec phi = RealSpec::surd(QuadraticSurd::metallic(BigInt(1)));
  auto tphi = cf_expand_surd(phi.surd_value(), 8);
  auto r0 = error_record(phi, tphi, 0);
  CHECK(r0.verified);
  CHECK(r0.lower == make_rat(1, 2));
  CHECK(r0.upper == make_rat(1));
  // e_0 = phi - 1 ~ 0.618
  CHECK(r0.e.lo > make_rat(618, 1000));
  CHECK(r0.e.hi < make_rat(619, 1000));

  RealSpec r2 = RealSpec::surd(QuadraticSurd::sqrt_of(BigInt(2)));
  auto t2 = cf_expand_surd(r2.surd_value(), 8);
  CHECK(t2.q(2) == 5);
  CHECK(t2.q(3) == 12);
  auto rec2 = error_record(r2, t2, 2);
  CHECK(rec2.verified);
  CHECK(rec2.lower == make_rat(1, 288));
  CHECK(rec2.upper == make_rat(1, 25));

  CHECK_THROWS_AS(error_record(RealSpec::rational(make_rat(1, 2)), t2, 0),
                  std::invalid_argument);
}

TEST_CASE("q growth bound by max quotient") {
  auto t = cf_expand_surd(QuadraticSurd{BigInt(1), BigInt(23), BigInt(2)}.canonical(), 30);
  BigInt maxq = 0;
  for (auto& a : t.quotients) maxq = std::max(maxq, a);
  for (size_t n = 0; 2 * n + 1 < t.size(); ++n)
    CHECK(t.q(2 * n + 1) <= (maxq + 1) * t.q(2 * n));
}

TEST_CASE("bad approx estimate") {
  RealSpec phi = RealSpec::surd(QuadraticSurd::metallic(BigInt(1)));
  BigRat c = bad_approx_estimate(phi, 100);
  // min over q <= 100 is at q = 1: ||phi|| = 2 - phi = (3 - sqrt5)/2 ~ 0.381966
  CHECK(c > make_rat(38196, 100000));
  CHECK(c < make_rat(38197, 100000));

  CHECK(bad_approx_estimate(RealSpec::rational(make_rat(1, 2)), 2) == 0);

  // sqrt2: minimum over q <= 10 at the Pell denominator q = 2,
  // value 2|2 sqrt2 - 3| = 6 - 4 sqrt2 ~ 0.343146
  RealSpec r2 = RealSpec::surd(QuadraticSurd::sqrt_of(BigInt(2)));
  BigRat c2 = bad_approx_estimate(r2, 10);
  BigRat w = pow2_rat(-60);
  BigRat best(-1);
  long best_q = 0;
  for (long q = 1; q <= 10; ++q) {
    auto d = nearest_int_distance(r2.refine(w) * make_rat(q));
    BigRat cand = make_rat(q) * d.lo;
    if (best < 0 || cand < best) {
      best = cand;
      best_q = q;
    }
  }
  CHECK(best_q == 2);
  BigRat diff = c2 - best;
  CHECK(abs(diff) < pow2_rat(-20));
}
