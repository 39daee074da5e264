#pragma once

#include <vector>

#include "littlewood/dirichlet.hpp"
#include "littlewood/exact.hpp"

namespace lw {

/// Rational line through a Dirichlet point with direction
/// (1, p_a/q_a, p_b/q_b), the even-index convergents of the two targets.
struct ApproxLine {
  DirichletPoint base;
  BigInt pa, qa, pb, qb;
  int n = 0;

  // v(t) = base - t*(1, pa/qa, pb/qb)
  BigRat x_at(const BigRat& t) const;
  BigRat y_at(const BigRat& t) const;
  BigRat z_at(const BigRat& t) const;
};

/// f restricted to an approximating line is -A(t - x)(t - t_alpha)(t - t_beta)
/// with A = e_a*e_b the product of the convergent errors and
/// t_alpha = res_alpha/e_a, t_beta = res_beta/e_b.
struct CubicModel {
  Enclosure A;
  BigInt x;                    // the integer root (the line parameter of base)
  Enclosure t_alpha, t_beta;
  Enclosure sigma1, sigma2, sigma3;
  int n = 0;

  /// Synthetic model -A(t-x)(t-ta)(t-tb) for tests and scans.
  static CubicModel from_roots(const BigRat& A, const BigInt& x, const BigRat& ta,
                               const BigRat& tb);

  Enclosure eval(const BigRat& t) const;        // F(t)
  Enclosure eval_deriv(const BigRat& t) const;  // F'(t) = -A(3t^2 - 2s1 t + s2)
  /// -1, 0, +1 for F(t) vs level, certified; throws Undecidable on straddle.
  int cmp_level(const BigRat& t, const BigRat& level) const;
};

ApproxLine build_line(const DirichletPoint& pt, const ConvergentTable& tbl_alpha,
                      const ConvergentTable& tbl_beta, int n);

/// Model with enclosures of width about `width`; the sigma identities and a
/// three-point agreement with direct evaluation of f on the line are verified.
CubicModel build_cubic(const ApproxLine& line, const RealSpec& alpha,
                       const RealSpec& beta, const BigRat& width);

enum class Branch { Cos, Cosh };

/// Depressed form of the two level equations F(t) = -eps and F(t) = +eps:
/// s^3 + P s - Q(+-eps) = 0 after t = s + sigma1/3, with
/// C(+-eps) = (Q/2)(3/|P|)^{3/2} selecting the cos (three roots) or cosh
/// (one root) solution formula.
struct ReducedCubic {
  Enclosure P;
  Enclosure Qplus, Qminus;
  Enclosure Cplus, Cminus;
  Branch branch_plus, branch_minus;
};

ReducedCubic reduce_cubic(const CubicModel& model, const BigRat& epsilon);

struct LevelInterval {
  Enclosure lo, hi;
};

struct SublevelSet {
  std::vector<LevelInterval> intervals;  // sorted, pairwise disjoint
  BigRat epsilon;
  Enclosure total_length;
  int scenario = 0;
  /// raw trigonometric endpoint approximations (same order as the interval
  /// endpoints: lo0, hi0, lo1, ...), before the bisection polish
  std::vector<BigRat> trig_endpoints;
};

/// {t : |F(t)| <= eps} as 1-3 certified intervals.  Endpoints are seeded by
/// high-precision trigonometric formulas and certified by exact-rational
/// bisection; eps = 0 returns enclosures of the three roots.
SublevelSet solve_levelset(const CubicModel& model, const BigRat& epsilon);

struct CriticalPoints {
  Enclosure tau_minus, tau_plus;  // roots of F', tau_minus < tau_plus
  Enclosure value_minus, value_plus;  // F at them
  int scenario = 0;  // 1: one interval, 2/3: two, 4: three
};

/// Requires three distinct real roots (positive discriminant of F').
CriticalPoints critical_points(const CubicModel& model, const BigRat& epsilon);

/// Cartan: measure{t : 0 < |F(t)| <= eps} <= 6e(eps/|A|)^{1/3} (monic
/// normalization).  Returns (bound, measured) and whether measured <= bound
/// is certified.
struct CartanCheck {
  Enclosure bound;
  Enclosure measured;
  bool ok = false;
};

CartanCheck cartan_bound(const CubicModel& model, const BigRat& epsilon);

}  // namespace lw
