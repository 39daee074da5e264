#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "littlewood/cubic.hpp"

using namespace lw;

namespace {

// independent evaluation straight from the factored form
BigRat p_factored(const BigRat& t, const BigRat& r1, const BigRat& r2, const BigRat& r3) {
  return (t - r1) * (t - r2) * (t - r3);
}

BigRat rel_err(const BigRat& a, const BigRat& b) {
  BigRat scale = abs(BigRat(b));
  if (scale < 1) scale = 1;
  return abs(BigRat(a - b)) / scale;
}

}  // namespace

TEST_CASE("build_line basics") {
  RealSpec a = RealSpec::surd(QuadraticSurd::sqrt_of(BigInt(2)));
  RealSpec b = RealSpec::surd(QuadraticSurd::sqrt_of(BigInt(3)));
  auto ta = cf_expand(a, 8);
  auto tb = cf_expand(b, 8);
  auto pt = find_dirichlet_point(a, b, BigInt(10));
  auto line = build_line(pt, ta, tb, 1);
  CHECK(line.qa == ta.q(2));
  CHECK(line.qb == tb.q(2));
  // t = 0 is the base point
  CHECK(line.x_at(BigRat(0)) == BigRat(pt.x));
  CHECK(line.y_at(BigRat(0)) == BigRat(pt.y));
  CHECK(line.z_at(BigRat(0)) == BigRat(pt.z));
  // t = qa*qb clears both denominators
  BigRat t(line.qa * line.qb);
  CHECK(line.y_at(t).get_den() == 1);
  CHECK(line.z_at(t).get_den() == 1);
  // integer t keeps y rational with denominator dividing qa
  BigRat y1 = line.y_at(BigRat(5));
  BigInt rem;
  mpz_mod(rem.get_mpz_t(), line.qa.get_mpz_t(), y1.get_den().get_mpz_t());
  CHECK(rem == 0);
}

TEST_CASE("build_cubic on sqrt2/sqrt3") {
  RealSpec a = RealSpec::surd(QuadraticSurd::sqrt_of(BigInt(2)));
  RealSpec b = RealSpec::surd(QuadraticSurd::sqrt_of(BigInt(3)));
  auto ta = cf_expand(a, 8);
  auto tb = cf_expand(b, 8);
  auto pt = find_dirichlet_point(a, b, BigInt(10));
  auto line = build_line(pt, ta, tb, 1);
  auto m = build_cubic(line, a, b, pow2_rat(-100));
  CHECK(m.x == pt.x);
  CHECK(m.A.surely_positive());
  // sigma identities against a recomputation
  Enclosure xp = Enclosure::point(BigRat(m.x));
  Enclosure s1 = xp + m.t_alpha + m.t_beta;
  CHECK(certainly_le((m.sigma1 - s1).abs(), pow2_rat(-95)));
  // the integer root: F(x_n) contains 0
  CHECK(m.eval(BigRat(m.x)).contains_zero());
  // F(0) = A*sigma3
  Enclosure f0 = m.eval(BigRat(0));
  Enclosure as3 = m.A * m.sigma3;
  Enclosure::meet(f0, as3);  // would throw if disjoint
}

TEST_CASE("reduce_cubic hand values") {
  // roots (1,2,4): sigma = (7,14,8), P = 14 - 49/3 = -7/3, Q(0) = 20/27
  auto m = CubicModel::from_roots(BigRat(1), BigInt(1), BigRat(2), BigRat(4));
  CHECK(m.sigma1.lo == 7);
  CHECK(m.sigma2.lo == 14);
  CHECK(m.sigma3.lo == 8);
  auto r = reduce_cubic(m, make_rat(1, 10));
  CHECK(r.P.lo == make_rat(-7, 3));
  CHECK(r.P.hi == make_rat(-7, 3));
  CHECK(r.Qplus.lo == make_rat(20, 27) + make_rat(1, 10));
  CHECK(r.Qminus.lo == make_rat(20, 27) - make_rat(1, 10));
  CHECK(r.branch_plus == Branch::Cos);
  CHECK(r.branch_minus == Branch::Cos);

  // symmetric roots (-1,0,1): sigma1 = 0, P = sigma2 = -1, Q(+-eps) = +-eps
  auto s = CubicModel::from_roots(BigRat(1), BigInt(0), BigRat(-1), BigRat(1));
  auto rs = reduce_cubic(s, make_rat(1, 10));
  CHECK(rs.P.lo == -1);
  CHECK(rs.Qplus.lo == make_rat(1, 10));
  CHECK(rs.Qminus.lo == make_rat(-1, 10));
}

TEST_CASE("solve_levelset roots (1,2,4) eps=0.1") {
  auto m = CubicModel::from_roots(BigRat(1), BigInt(1), BigRat(2), BigRat(4));
  auto ls = solve_levelset(m, make_rat(1, 10));
  REQUIRE(ls.intervals.size() == 3);
  CHECK(ls.scenario == 4);
  BigRat roots[3] = {BigRat(1), BigRat(2), BigRat(4)};
  for (int i = 0; i < 3; ++i) {
    CHECK(ls.intervals[i].lo.hi < roots[i]);
    CHECK(ls.intervals[i].hi.lo > roots[i]);
  }
  // each endpoint satisfies |p(t)| = eps to tight relative tolerance,
  // checked on the factored form (independent of the solver's sigma path)
  BigRat tol = pow2_rat(-60);
  for (auto& iv : ls.intervals) {
    for (const Enclosure* e : {&iv.lo, &iv.hi}) {
      BigRat v = abs(BigRat(p_factored(e->mid(), BigRat(1), BigRat(2), BigRat(4))));
      CHECK(abs(BigRat(v - make_rat(1, 10))) < tol);
    }
  }
  // trig seeds agree with the certified endpoints
  REQUIRE(ls.trig_endpoints.size() == 6);
  size_t k = 0;
  for (auto& iv : ls.intervals) {
    CHECK(rel_err(ls.trig_endpoints[k++], iv.lo.mid()) < pow2_rat(-40));
    CHECK(rel_err(ls.trig_endpoints[k++], iv.hi.mid()) < pow2_rat(-40));
  }
}

TEST_CASE("solve_levelset eps=0 recovers the roots") {
  auto m = CubicModel::from_roots(BigRat(1), BigInt(1), BigRat(2), BigRat(4));
  auto ls = solve_levelset(m, BigRat(0));
  REQUIRE(ls.intervals.size() == 3);
  BigRat roots[3] = {BigRat(1), BigRat(2), BigRat(4)};
  for (int i = 0; i < 3; ++i) {
    CHECK(ls.intervals[i].lo.contains(roots[i]));
    CHECK(ls.intervals[i].lo.width() < pow2_rat(-70));
  }
  CHECK(ls.total_length.hi == 0);
}

TEST_CASE("clustered roots give a single interval") {
  auto m = CubicModel::from_roots(BigRat(1), BigInt(1), make_rat(11, 10), make_rat(6, 5));
  auto ls = solve_levelset(m, BigRat(1));
  REQUIRE(ls.intervals.size() == 1);
  CHECK(ls.scenario == 1);
  CHECK(ls.intervals[0].lo.hi < 1);
  CHECK(ls.intervals[0].hi.lo > make_rat(6, 5));
  auto r = reduce_cubic(m, BigRat(1));
  CHECK(r.branch_plus == Branch::Cosh);
  CHECK(r.branch_minus == Branch::Cosh);
}

TEST_CASE("two-interval scenarios") {
  // roots (0,1,5): local max of p ~ 1.13, local min ~ -13.1
  auto m = CubicModel::from_roots(BigRat(1), BigInt(0), BigRat(1), BigRat(5));
  auto ls = solve_levelset(m, BigRat(5));
  CHECK(ls.intervals.size() == 2);
  CHECK(ls.scenario == 3);
  auto cp = critical_points(m, BigRat(5));
  CHECK(cp.scenario == 3);
  // mirrored roots flip to the other two-interval scenario
  auto mm = CubicModel::from_roots(BigRat(1), BigInt(0), BigRat(-1), BigRat(-5));
  auto lsm = solve_levelset(mm, BigRat(5));
  CHECK(lsm.intervals.size() == 2);
  CHECK(lsm.scenario == 2);
}

TEST_CASE("critical points roots (0,1,2)") {
  auto m = CubicModel::from_roots(BigRat(1), BigInt(0), BigRat(1), BigRat(2));
  auto cp = critical_points(m, make_rat(1, 10));
  // tau-+ = 1 -+ 1/sqrt3 ~ 0.42265, 1.57735
  CHECK(cp.tau_minus.lo > make_rat(4226, 10000));
  CHECK(cp.tau_minus.hi < make_rat(4227, 10000));
  CHECK(cp.tau_plus.lo > make_rat(15773, 10000));
  CHECK(cp.tau_plus.hi < make_rat(15774, 10000));
  CHECK(cp.scenario == 4);
  // middle third of the bracketing root pairs
  CHECK(cp.tau_minus.lo > make_rat(1, 3));
  CHECK(cp.tau_minus.hi < make_rat(2, 3));
  CHECK(cp.tau_plus.lo > make_rat(4, 3));
  CHECK(cp.tau_plus.hi < make_rat(5, 3));
  // F'(tau) ~ 0
  CHECK(certainly_le(m.eval_deriv(cp.tau_minus.mid()).abs(), pow2_rat(-60)));
  CHECK(certainly_le(m.eval_deriv(cp.tau_plus.mid()).abs(), pow2_rat(-60)));

  // symmetric roots: values equal magnitude, opposite sign
  auto s = CubicModel::from_roots(BigRat(1), BigInt(0), BigRat(-1), BigRat(1));
  auto cs = critical_points(s, make_rat(1, 10));
  Enclosure sum = cs.value_minus + cs.value_plus;
  CHECK(certainly_le(sum.abs(), pow2_rat(-60)));
}

TEST_CASE("cartan bound") {
  // p = t^3, eps = 1: level set [-1,1], measure 2 <= 6e
  auto m = CubicModel::from_roots(BigRat(1), BigInt(0), BigRat(0), BigRat(0));
  auto c = cartan_bound(m, BigRat(1));
  CHECK(c.ok);
  CHECK(c.measured.lo > make_rat(19, 10));
  CHECK(c.measured.hi < make_rat(21, 10));
  CHECK(c.bound.lo > make_rat(163, 10));
  CHECK(c.bound.hi < make_rat(164, 10));

  auto m2 = CubicModel::from_roots(BigRat(1), BigInt(1), BigRat(2), BigRat(4));
  auto c2 = cartan_bound(m2, make_rat(1, 10));
  CHECK(c2.ok);
}

TEST_CASE("random cubics: scenario/interval consistency") {
  std::mt19937 rng(20240817);
  std::uniform_int_distribution<long> root_d(-50, 50);
  std::uniform_int_distribution<long> den_d(1, 9);
  int done = 0;
  while (done < 40) {
    long x = root_d(rng);
    BigRat ta = make_rat(root_d(rng) * den_d(rng), den_d(rng));
    BigRat tb = make_rat(root_d(rng) * den_d(rng), den_d(rng));
    if (ta == BigRat(x) || tb == BigRat(x) || ta == tb) continue;
    auto m = CubicModel::from_roots(BigRat(1), BigInt(x), ta, tb);
    for (int ei = 0; ei < 2; ++ei) {
      BigRat eps = ei == 0 ? make_rat(1, 10) : BigRat(1);
      SublevelSet ls;
      try {
        ls = solve_levelset(m, eps);
      } catch (const BranchUndecidable&) {
        continue;  // exact-tangency configurations are refused by design
      }
      size_t expected = ls.scenario == 4 ? 3 : (ls.scenario == 1 ? 1 : 2);
      CHECK(ls.intervals.size() == expected);
      auto c = cartan_bound(m, eps);
      CHECK(c.ok);
      // sorted and disjoint
      for (size_t i = 0; i + 1 < ls.intervals.size(); ++i)
        CHECK(ls.intervals[i].hi.hi < ls.intervals[i + 1].lo.lo);
    }
    ++done;
  }
}

TEST_CASE("invalid models") {
  CHECK_THROWS_AS(CubicModel::from_roots(BigRat(-1), BigInt(0), BigRat(1), BigRat(2)),
                  std::invalid_argument);
  auto m = CubicModel::from_roots(BigRat(1), BigInt(0), BigRat(1), BigRat(2));
  CHECK_THROWS_AS(solve_levelset(m, BigRat(-1)), std::invalid_argument);
  CHECK_THROWS_AS(reduce_cubic(m, BigRat(0)), std::invalid_argument);
  // monotone cubic has no critical points
  auto t3 = CubicModel::from_roots(BigRat(1), BigInt(0), BigRat(0), BigRat(0));
  CHECK_THROWS_AS(critical_points(t3, BigRat(1)), BranchUndecidable);
}
