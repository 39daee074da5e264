#include "littlewood/witness.hpp"

#include <mpfr.h>

#include <algorithm>

namespace lw {

namespace {

BigRat rat_of_mpfr(const mpfr_t v) {
  if (!mpfr_number_p(v)) throw std::runtime_error("non-finite mpfr value");
  BigInt m;
  mpfr_exp_t e = mpfr_get_z_2exp(m.get_mpz_t(), v);
  return BigRat(m) * pow2_rat(static_cast<long>(e));
}

struct MpfrV {
  mpfr_t v;
  explicit MpfrV(long prec) { mpfr_init2(v, prec); }
  ~MpfrV() { mpfr_clear(v); }
  MpfrV(const MpfrV&) = delete;
};

// exact power comparison: b^e <= m for positive integers, rational e >= 0
bool pow_le(const BigInt& b, const BigRat& e, const BigInt& m) {
  unsigned long u = static_cast<unsigned long>(e.get_num().get_ui());
  unsigned long v = static_cast<unsigned long>(e.get_den().get_ui());
  BigInt lhs, rhs;
  mpz_pow_ui(lhs.get_mpz_t(), b.get_mpz_t(), u);
  mpz_pow_ui(rhs.get_mpz_t(), m.get_mpz_t(), v);
  return lhs <= rhs;
}

}  // namespace

Enclosure log_ratio_enclosure(const BigInt& a, const BigInt& b, long prec_bits) {
  if (a < 1 || b < 2) throw std::invalid_argument("log_ratio needs a >= 1, b >= 2");
  return log_rat_ratio_enclosure(BigRat(a), BigRat(b), prec_bits);
}

Enclosure log_rat_ratio_enclosure(const BigRat& a, const BigRat& b, long prec_bits) {
  if (a <= 0 || b <= 1) throw std::invalid_argument("log ratio needs a > 0, b > 1");
  MpfrV la_d(prec_bits), la_u(prec_bits), lb_d(prec_bits), lb_u(prec_bits);
  MpfrV t(prec_bits);
  // directed conversions first: the inputs may not fit the working precision
  mpfr_set_q(t.v, a.get_mpq_t(), MPFR_RNDD);
  mpfr_log(la_d.v, t.v, MPFR_RNDD);
  mpfr_set_q(t.v, a.get_mpq_t(), MPFR_RNDU);
  mpfr_log(la_u.v, t.v, MPFR_RNDU);
  mpfr_set_q(t.v, b.get_mpq_t(), MPFR_RNDD);
  mpfr_log(lb_d.v, t.v, MPFR_RNDD);
  mpfr_set_q(t.v, b.get_mpq_t(), MPFR_RNDU);
  mpfr_log(lb_u.v, t.v, MPFR_RNDU);
  MpfrV lo(prec_bits), hi(prec_bits);
  // numerator may be negative (a < 1): pick the denominator bound by sign
  mpfr_div(lo.v, la_d.v, mpfr_sgn(la_d.v) >= 0 ? lb_u.v : lb_d.v, MPFR_RNDD);
  mpfr_div(hi.v, la_u.v, mpfr_sgn(la_u.v) >= 0 ? lb_d.v : lb_u.v, MPFR_RNDU);
  return Enclosure(rat_of_mpfr(lo.v), rat_of_mpfr(hi.v));
}

namespace {

Enclosure pow_enclosure_bounds(const BigInt& b, const BigRat& e_lo, const BigRat& e_hi,
                               long prec_bits) {
  if (b < 2) throw std::invalid_argument("pow_enclosure needs b >= 2");
  MpfrV lb_d(prec_bits), lb_u(prec_bits), t(prec_bits), lo(prec_bits), hi(prec_bits);
  mpfr_set_z(t.v, b.get_mpz_t(), MPFR_RNDN);
  mpfr_log(lb_d.v, t.v, MPFR_RNDD);
  mpfr_log(lb_u.v, t.v, MPFR_RNDU);
  // b >= 2: log positive, b^e monotone increasing in e
  MpfrV ex(prec_bits);
  mpfr_set_q(ex.v, e_lo.get_mpq_t(), MPFR_RNDD);
  mpfr_mul(lo.v, ex.v, mpfr_sgn(ex.v) >= 0 ? lb_d.v : lb_u.v, MPFR_RNDD);
  mpfr_exp(lo.v, lo.v, MPFR_RNDD);
  mpfr_set_q(ex.v, e_hi.get_mpq_t(), MPFR_RNDU);
  mpfr_mul(hi.v, ex.v, mpfr_sgn(ex.v) >= 0 ? lb_u.v : lb_d.v, MPFR_RNDU);
  mpfr_exp(hi.v, hi.v, MPFR_RNDU);
  return Enclosure(rat_of_mpfr(lo.v), rat_of_mpfr(hi.v));
}

}  // namespace

Enclosure pow_enclosure(const BigInt& b, const BigRat& e, long prec_bits) {
  return pow_enclosure_bounds(b, e, e, prec_bits);
}

BigInt floor_pow(const BigInt& b, const BigRat& e) {
  if (b < 1 || e < 0) throw std::invalid_argument("floor_pow needs b >= 1, e >= 0");
  unsigned long u = static_cast<unsigned long>(e.get_num().get_ui());
  unsigned long v = static_cast<unsigned long>(e.get_den().get_ui());
  BigInt p, r;
  mpz_pow_ui(p.get_mpz_t(), b.get_mpz_t(), u);
  mpz_root(r.get_mpz_t(), p.get_mpz_t(), v);
  return r;
}

HypothesisReport check_hypotheses(const ConvergentTable& tbl_alpha,
                                  const ConvergentTable& tbl_beta, int n,
                                  const BigRat& eta) {
  if (eta < 0 || eta >= make_rat(1, 3))
    throw std::invalid_argument("eta must lie in [0, 1/3)");
  size_t k = 2 * static_cast<size_t>(n);
  if (tbl_alpha.size() <= k || tbl_beta.size() <= k)
    throw std::invalid_argument("convergent tables too short for 2n");
  HypothesisReport rep;
  rep.n = n;
  rep.eta = eta;
  rep.q_a = tbl_alpha.q(k);
  rep.q_b = tbl_beta.q(k);
  mpz_lcm(rep.l.get_mpz_t(), rep.q_a.get_mpz_t(), rep.q_b.get_mpz_t());
  rep.gamma = log_ratio_enclosure(rep.q_a, rep.q_b, 192);
  Enclosure ll = log_ratio_enclosure(rep.l, rep.q_b, 192);
  rep.eta_min = ll - BigRat(1);
  BigRat mu = make_rat(11, 12) + eta / 4;
  mu.canonicalize();
  rep.cond1 = pow_le(rep.q_b, mu, rep.q_a) && rep.q_a <= rep.q_b;
  BigRat one_eta = 1 + eta;
  one_eta.canonicalize();
  // l <= q_b^{1+eta}  <=>  l^v <= q_b^u with 1+eta = u/v
  {
    unsigned long u = static_cast<unsigned long>(one_eta.get_num().get_ui());
    unsigned long v = static_cast<unsigned long>(one_eta.get_den().get_ui());
    BigInt lhs, rhs;
    mpz_pow_ui(lhs.get_mpz_t(), rep.l.get_mpz_t(), v);
    mpz_pow_ui(rhs.get_mpz_t(), rep.q_b.get_mpz_t(), u);
    rep.cond2 = lhs <= rhs;
  }
  return rep;
}

DeltaWindow delta_window(const Enclosure& gamma, const BigRat& eta) {
  BigRat bound = make_rat(11, 12) + eta / 4;
  if (!(gamma.lo > bound))
    throw EmptyWindow("delta window empty: gamma <= 11/12 + eta/4");
  DeltaWindow w;
  w.lo = make_rat(4, 3);
  w.hi = (gamma * BigRat(4) + BigRat(3) - BigRat(eta)) / BigRat(5);
  // Pick a window point with a small denominator: the exponent later feeds
  // integer power/root extraction, so a 2^192-denominator midpoint would be
  // unusable.  Walk dyadic refinements of thirds until one lands strictly
  // inside (4/3, hi].
  BigRat mid = (w.lo + w.hi.lo) / 2;
  for (int j = 0; j < 256; ++j) {
    BigInt d(3);
    d <<= j;
    BigRat scaled(mid * d);
    BigRat c(rat_floor(scaled), d);
    c.canonicalize();
    if (c > w.lo && c <= w.hi.lo) {
      w.chosen = c;
      return w;
    }
  }
  throw PrecisionExhausted("could not place a simple rational in the delta window");
}

WitnessCertificate verify_witness(const BigInt& x, const BigInt& y, const BigInt& z,
                                  const RealSpec& alpha, const RealSpec& beta,
                                  const BigRat& epsilon) {
  if (epsilon <= 0) throw std::invalid_argument("epsilon must be positive");
  if (x == 0) throw ZeroFirstCoordinate("witness needs x != 0");
  BigRat w = epsilon / 16;
  for (int iter = 0; iter < precision_cap(); ++iter) {
    Enclosure f = eval_form(x, y, z, alpha, beta, w);
    Enclosure af = f.abs();
    if (af.lo == 0 && af.hi == 0) throw NotAWitness("f(u) = 0 exactly");
    if (certainly_gt(af, epsilon)) throw NotAWitness("|f(u)| > epsilon certified");
    if (af.lo > 0 && certainly_le(af, epsilon)) {
      WitnessCertificate c;
      c.x = x;
      c.y = y;
      c.z = z;
      c.f_value = f;
      c.epsilon = epsilon;
      return c;
    }
    w = w / 65536;
  }
  throw Undecidable("witness verification hit the precision cap");
}

SigmaDiagnostics sigma_diagnostics(const CubicModel& model, const BigRat& delta,
                                   const Enclosure& gamma, const SublevelSet& levelset,
                                   const BigInt& l_n, const BigInt& q_b) {
  SigmaDiagnostics d;
  Enclosure qd = pow_enclosure(q_b, delta);
  d.sigma1_ratio = model.sigma1 / qd;
  Enclosure two_1g = (gamma + BigRat(1)) * BigRat(2);
  Enclosure e2 = pow_enclosure_bounds(q_b, (two_1g - delta).lo, (two_1g - delta).hi, 192);
  Enclosure e2b = pow_enclosure(q_b, 2 + delta / 2);
  d.sigma2_ratio = model.sigma2 / (e2 + e2b);
  Enclosure e3 = pow_enclosure_bounds(q_b, two_1g.lo, two_1g.hi, 192);
  d.sigma3_ratio = model.sigma3 / e3;
  Enclosure P = (model.sigma2 * BigRat(3) - model.sigma1.square()) / BigRat(3);
  d.negP_ratio = (-P) / pow_enclosure(q_b, 2 * delta);
  if (!levelset.intervals.empty()) {
    Enclosure len = levelset.intervals.front().hi - levelset.intervals.front().lo;
    if (len.lo < 0) len.lo = 0;
    d.length_ratio = len / BigRat(l_n);
  }
  if (levelset.epsilon > 0) {
    try {
      ReducedCubic r = reduce_cubic(model, levelset.epsilon);
      if (r.branch_plus == Branch::Cos && r.branch_minus == Branch::Cos) {
        d.cos_branch = true;
        Enclosure cdiff = r.Cplus - r.Cminus;
        Enclosure negP = -r.P;
        BigRat w = pow2_rat(-96);
        Enclosure sp = sqrt_enclosure(negP, w);
        Enclosure s3 = sqrt_enclosure(BigInt(3), w);
        // C(eps) - C(-eps) = 3 sqrt3 eps / ((-P)^{3/2} A)
        Enclosure rhs = (s3 * BigRat(3) * levelset.epsilon) / (negP * sp * model.A);
        try {
          Enclosure::meet(cdiff, rhs);
          d.c_identity_ok = true;
        } catch (const Undecidable&) {
          d.c_identity_ok = false;
        }
        // lambda(I1) >= sqrt(-P) |C(eps)-C(-eps)|^2 / (36 sqrt 3)
        if (!levelset.intervals.empty()) {
          Enclosure len = levelset.intervals.front().hi - levelset.intervals.front().lo;
          Enclosure lower = sp * cdiff.square() * s3 / BigRat(108);
          d.length_bound_ok = len.lo >= lower.hi;
        }
      }
    } catch (const BranchUndecidable&) {
      d.cos_branch = false;
    }
  }
  return d;
}

StageReport run_stage(const RealSpec& alpha, const RealSpec& beta,
                      const ConvergentTable& tbl_alpha, const ConvergentTable& tbl_beta,
                      int n, const BigRat& eta, const BigRat& epsilon) {
  StageReport rep;
  rep.n = n;
  rep.hypotheses = check_hypotheses(tbl_alpha, tbl_beta, n, eta);
  if (!rep.hypotheses.cond1)
    throw EmptyWindow("hypothesis 1 (q_b^{11/12+eta/4} <= q_a <= q_b) fails");
  DeltaWindow dw = delta_window(rep.hypotheses.gamma, eta);
  rep.delta = dw.chosen;
  rep.N = floor_pow(rep.hypotheses.q_b, rep.delta);
  if (rep.N < 1) throw std::invalid_argument("N computed below 1");
  rep.point = find_dirichlet_point(alpha, beta, rep.N);

  PointClassification cls = classify_point(rep.point, epsilon, alpha, beta);
  if (cls.cls == PointClass::ImmediateWitness) {
    rep.witness = verify_witness(rep.point.x, rep.point.y, rep.point.z, alpha, beta,
                                 epsilon);
    rep.witness->n = n;
    rep.immediate = true;
    return rep;
  }

  ApproxLine line = build_line(rep.point, tbl_alpha, tbl_beta, n);
  rep.model = build_cubic(line, alpha, beta, pow2_rat(-256));
  rep.levelset = solve_levelset(*rep.model, epsilon);

  BigRat xr(rep.point.x);
  int sel = -1;
  for (size_t j = 0; j < rep.levelset->intervals.size(); ++j) {
    const auto& iv = rep.levelset->intervals[j];
    bool outside = iv.hi.hi < xr || iv.lo.lo > xr;
    if (outside) {
      sel = static_cast<int>(j);
      break;
    }
  }
  if (sel < 0) throw NoMultipleInInterval("every level-set interval may contain x_n");
  rep.selected_interval = sel;

  const auto& iv = rep.levelset->intervals[static_cast<size_t>(sel)];
  const BigInt& l = rep.hypotheses.l;
  BigInt kmin = rat_ceil(iv.lo.lo / BigRat(l));
  BigInt kmax = rat_floor(iv.hi.hi / BigRat(l));
  const long kCap = 1000000;
  if (kmax - kmin > kCap) kmax = kmin + kCap;
  for (BigInt k = kmin; k <= kmax; ++k) rep.multiples_found.push_back(k * l);
  if (rep.multiples_found.empty())
    throw NoMultipleInInterval("selected interval shorter than l_n spacing");

  for (const BigInt& t : rep.multiples_found) {
    BigInt xu = rep.point.x - t;
    if (xu == 0) continue;
    // y - t*pa/qa and z - t*pb/qb are integral because qa | l and qb | l
    BigInt ta = t / line.qa, tb = t / line.qb;
    if (ta * line.qa != t || tb * line.qb != t)
      throw std::logic_error("multiple not clearing convergent denominators");
    BigInt yu = rep.point.y - ta * line.pa;
    BigInt zu = rep.point.z - tb * line.pb;
    try {
      WitnessCertificate c = verify_witness(xu, yu, zu, alpha, beta, epsilon);
      c.n = n;
      c.t = t;
      c.l = l;
      c.k = t / l;
      rep.witness = c;
      break;
    } catch (const NotAWitness&) {
    } catch (const Undecidable&) {
    }
  }

  rep.diagnostics = sigma_diagnostics(*rep.model, rep.delta, rep.hypotheses.gamma,
                                      *rep.levelset, l, rep.hypotheses.q_b);
  return rep;
}

std::vector<LittlewoodTerm> littlewood_min(const RealSpec& alpha, const RealSpec& beta,
                                           long Q) {
  if (Q < 1) throw std::invalid_argument("Q must be >= 1");
  std::vector<LittlewoodTerm> out;
  out.reserve(static_cast<size_t>(Q));
  BigRat w = pow2_rat(-96);
  BigRat wa = std::max(w, alpha.best_width());
  BigRat wb = std::max(w, beta.best_width());
  BigRat prefix(-1);
  for (long n = 1; n <= Q; ++n) {
    Enclosure an = alpha.refine(wa) * BigRat(n);
    Enclosure bn = beta.refine(wb) * BigRat(n);
    Enclosure da = nearest_int_distance(an);
    Enclosure db = nearest_int_distance(bn);
    Enclosure term = da * db * BigRat(n);
    if (prefix < 0 || term.hi < prefix) prefix = term.hi;
    out.push_back({n, term, prefix});
  }
  return out;
}

}  // namespace lw
