#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "littlewood/exact.hpp"

using namespace lw;

namespace {

// independent digit-by-digit square root oracle: first `digits` decimal
// digits of sqrt(d), as the truncated rational
BigRat sqrt_decimal_oracle(const BigInt& d, int digits) {
  BigInt scale;
  mpz_ui_pow_ui(scale.get_mpz_t(), 10, static_cast<unsigned long>(2 * digits));
  BigInt t = isqrt_floor(d * scale);
  BigInt den;
  mpz_ui_pow_ui(den.get_mpz_t(), 10, static_cast<unsigned long>(digits));
  BigRat r(t, den);
  r.canonicalize();
  return r;
}

}  // namespace

TEST_CASE("sqrt_enclosure basics") {
  auto e4 = sqrt_enclosure(BigInt(4), make_rat(1, 1000));
  CHECK(e4.lo == 2);
  CHECK(e4.hi == 2);

  auto e0 = sqrt_enclosure(BigInt(0), make_rat(1));
  CHECK(e0.lo == 0);
  CHECK(e0.hi == 0);

  BigRat w = make_rat(1, 1000000000);
  auto e2 = sqrt_enclosure(BigInt(2), w);
  CHECK(e2.width() <= w);
  BigRat oracle = sqrt_decimal_oracle(BigInt(2), 12);
  CHECK(e2.lo <= oracle + make_rat(1, 1000000000));
  CHECK(e2.hi >= oracle);
  // the enclosed value really is sqrt(2): lo^2 <= 2 <= hi^2
  CHECK(e2.lo * e2.lo <= 2);
  CHECK(e2.hi * e2.hi >= 2);
}

TEST_CASE("sqrt monotone refinement") {
  auto wide = sqrt_enclosure(BigInt(7), make_rat(1, 16));
  auto tight = sqrt_enclosure(BigInt(7), make_rat(1, 1 << 20));
  CHECK(tight.lo >= wide.lo);
  CHECK(tight.hi <= wide.hi);
}

TEST_CASE("nearest_int_distance") {
  auto half = nearest_int_distance(Enclosure::point(make_rat(5, 2)));
  CHECK(half.lo == make_rat(1, 2));
  CHECK(half.hi == make_rat(1, 2));

  auto zero = nearest_int_distance(Enclosure::point(make_rat(3)));
  CHECK(zero.lo == 0);
  CHECK(zero.hi == 0);

  // 3*sqrt(2) = 4.2426...: distance 0.2426...
  auto s = sqrt_enclosure(BigInt(2), make_rat(1, 1000000)) * make_rat(3);
  auto d = nearest_int_distance(s);
  CHECK(d.lo > make_rat(2426, 10001));
  CHECK(d.hi < make_rat(2427, 10000));

  CHECK_THROWS_AS(nearest_int_distance(Enclosure(make_rat(0), make_rat(1, 2))),
                  AmbiguousEnclosure);
}

TEST_CASE("enclosure arithmetic is outward: random rationals") {
  std::mt19937 rng(12345);
  std::uniform_int_distribution<int> num(-1000, 1000), den(1, 97), slack(0, 20);
  for (int i = 0; i < 500; ++i) {
    BigRat a = make_rat(num(rng), den(rng));
    BigRat b = make_rat(num(rng), den(rng));
    Enclosure ea(a - make_rat(slack(rng), 977), a + make_rat(slack(rng), 977));
    Enclosure eb(b - make_rat(slack(rng), 977), b + make_rat(slack(rng), 977));
    CHECK((ea + eb).contains(a + b));
    CHECK((ea - eb).contains(a - b));
    CHECK((ea * eb).contains(a * b));
    if (!eb.contains_zero()) CHECK((ea / eb).contains(a / b));
  }
}

TEST_CASE("eval_form") {
  RealSpec r2 = RealSpec::surd(QuadraticSurd::sqrt_of(BigInt(2)));
  RealSpec r3 = RealSpec::surd(QuadraticSurd::sqrt_of(BigInt(3)));

  auto zero = eval_form(BigInt(0), BigInt(1), BigInt(1), r2, r3, make_rat(1, 100));
  CHECK(zero.lo == 0);
  CHECK(zero.hi == 0);

  RealSpec one = RealSpec::rational(make_rat(1));
  auto z2 = eval_form(BigInt(1), BigInt(1), BigInt(1), one, one, make_rat(1));
  CHECK(z2.lo == 0);
  CHECK(z2.hi == 0);

  // 3(3 sqrt2 - 4)(3 sqrt3 - 5) ~ 0.142800: oracle by scaled integer sqrt
  BigRat w = make_rat(1, 1000000000);
  auto v = eval_form(BigInt(3), BigInt(4), BigInt(5), r2, r3, w);
  CHECK(v.width() <= w);
  BigRat s2 = sqrt_decimal_oracle(BigInt(2), 15);
  BigRat s3 = sqrt_decimal_oracle(BigInt(3), 15);
  BigRat approx = 3 * (3 * s2 - 4) * (3 * s3 - 5);
  CHECK(v.lo <= approx + make_rat(1, 1000000));
  CHECK(v.hi >= approx - make_rat(1, 1000000));
  CHECK(v.lo > make_rat(1427, 10000));
  CHECK(v.hi < make_rat(1429, 10000));
}

TEST_CASE("eval_form monotone refinement stays consistent") {
  RealSpec r2 = RealSpec::surd(QuadraticSurd::sqrt_of(BigInt(2)));
  RealSpec r3 = RealSpec::surd(QuadraticSurd::sqrt_of(BigInt(3)));
  auto wide = eval_form(BigInt(3), BigInt(4), BigInt(5), r2, r3, make_rat(1, 10));
  auto tight = eval_form(BigInt(3), BigInt(4), BigInt(5), r2, r3, pow2_rat(-80));
  CHECK(tight.lo >= wide.lo);
  CHECK(tight.hi <= wide.hi);
}

TEST_CASE("literal specs refine only to declared width") {
  RealSpec lit = RealSpec::literal("3.14");
  auto e = lit.refine(make_rat(1, 100));
  CHECK(e.lo == make_rat(314, 100));
  CHECK(e.hi == make_rat(315, 100));
  CHECK_THROWS_AS(lit.refine(make_rat(1, 1000)), PrecisionExhausted);
}

TEST_CASE("surd refine brackets the value") {
  QuadraticSurd phi = QuadraticSurd::metallic(BigInt(1));  // (1+sqrt5)/2
  auto e = phi.refine(pow2_rat(-64));
  CHECK(e.width() <= pow2_rat(-64));
  // phi satisfies x^2 = x + 1
  CHECK(e.lo * e.lo <= e.hi + 1);
  CHECK(e.hi * e.hi >= e.lo + 1);
}

TEST_CASE("parse helpers") {
  CHECK(parse_rational("3/4") == make_rat(3, 4));
  CHECK(parse_rational("-0.25") == make_rat(-1, 4));
  CHECK(parse_decimal("3.14159").second == 5);
  CHECK_THROWS(parse_rational("abc"));
}
