#include "littlewood/cubic.hpp"

#include <mpfr.h>

#include <algorithm>
#include <stdexcept>

namespace lw {

namespace {

constexpr mpfr_prec_t kSeedPrec = 256;  // seed arithmetic, never trusted

BigRat mpfr_to_rat(const mpfr_t v) {
  if (!mpfr_number_p(v)) throw std::runtime_error("non-finite trig seed");
  BigInt m;
  mpfr_exp_t e = mpfr_get_z_2exp(m.get_mpz_t(), v);
  BigRat r(m);
  return r * pow2_rat(static_cast<long>(e));
}

class Mpfr {
 public:
  Mpfr() { mpfr_init2(v_, kSeedPrec); }
  explicit Mpfr(const BigRat& x) : Mpfr() { mpfr_set_q(v_, x.get_mpq_t(), MPFR_RNDN); }
  ~Mpfr() { mpfr_clear(v_); }
  Mpfr(const Mpfr&) = delete;
  mpfr_t& get() { return v_; }

 private:
  mpfr_t v_;
};

// depressed coefficients for p(t) = c: s^3 + P s = Q after t = s + sigma1/3
struct Depressed {
  Enclosure P, Q;
};

Depressed depressed_for(const CubicModel& m, const Enclosure& c) {
  Depressed d;
  d.P = (m.sigma2 * BigRat(3) - m.sigma1.square()) / BigRat(3);
  Enclosure s1cubed = m.sigma1.square() * m.sigma1;
  d.Q = (s1cubed * BigRat(2) - m.sigma1 * m.sigma2 * BigRat(9)) / BigRat(27) +
        m.sigma3 + c;
  return d;
}

// C = (Q/2)(3/(-P))^{3/2}; requires P < 0 certified
Enclosure c_value(const Enclosure& P, const Enclosure& Q, const BigRat& w) {
  Enclosure r = Enclosure::point(BigRat(3)) / (-P);
  Enclosure s = sqrt_enclosure(r, w);
  return Q * r * s / BigRat(2);
}

Branch classify_branch(const Enclosure& C) {
  if (certainly_lt(C.abs(), BigRat(1))) return Branch::Cos;
  if (certainly_ge(C.abs(), BigRat(1))) return Branch::Cosh;
  throw BranchUndecidable("C(eps) enclosure straddles 1");
}

// seed roots of s^3 + P s = Q in 256-bit float arithmetic, shifted by s1/3;
// ascending; used only to center the certified bisection brackets
std::vector<BigRat> seed_roots(const BigRat& P, const BigRat& Q, const BigRat& s1) {
  std::vector<BigRat> out;
  Mpfr p(P), q(Q), shift(BigRat(s1 / 3));
  Mpfr disc;  // (Q/2)^2 + (P/3)^3
  {
    Mpfr t1, t2;
    mpfr_div_ui(t1.get(), q.get(), 2, MPFR_RNDN);
    mpfr_sqr(t1.get(), t1.get(), MPFR_RNDN);
    mpfr_div_ui(t2.get(), p.get(), 3, MPFR_RNDN);
    mpfr_pow_ui(t2.get(), t2.get(), 3, MPFR_RNDN);
    mpfr_add(disc.get(), t1.get(), t2.get(), MPFR_RNDN);
  }
  if (mpfr_sgn(disc.get()) < 0) {
    // three real roots: s_k = 2 sqrt(-P/3) cos(acos(C)/3 + 2k pi/3)
    Mpfr m, C, phi, pi;
    mpfr_div_si(m.get(), p.get(), -3, MPFR_RNDN);
    mpfr_sqrt(m.get(), m.get(), MPFR_RNDN);
    mpfr_mul_ui(m.get(), m.get(), 2, MPFR_RNDN);
    // C = 4Q/m^3
    mpfr_pow_ui(C.get(), m.get(), 3, MPFR_RNDN);
    mpfr_ui_div(C.get(), 1, C.get(), MPFR_RNDN);
    mpfr_mul(C.get(), C.get(), q.get(), MPFR_RNDN);
    mpfr_mul_ui(C.get(), C.get(), 4, MPFR_RNDN);
    if (mpfr_cmp_si(C.get(), 1) > 0) mpfr_set_si(C.get(), 1, MPFR_RNDN);
    if (mpfr_cmp_si(C.get(), -1) < 0) mpfr_set_si(C.get(), -1, MPFR_RNDN);
    mpfr_acos(phi.get(), C.get(), MPFR_RNDN);
    mpfr_div_ui(phi.get(), phi.get(), 3, MPFR_RNDN);
    mpfr_const_pi(pi.get(), MPFR_RNDN);
    for (int k = 0; k < 3; ++k) {
      Mpfr ang, s;
      mpfr_mul_ui(ang.get(), pi.get(), 2 * static_cast<unsigned>(k), MPFR_RNDN);
      mpfr_div_ui(ang.get(), ang.get(), 3, MPFR_RNDN);
      mpfr_add(ang.get(), ang.get(), phi.get(), MPFR_RNDN);
      mpfr_cos(s.get(), ang.get(), MPFR_RNDN);
      mpfr_mul(s.get(), s.get(), m.get(), MPFR_RNDN);
      mpfr_add(s.get(), s.get(), shift.get(), MPFR_RNDN);
      out.push_back(mpfr_to_rat(s.get()));
    }
    std::sort(out.begin(), out.end());
  } else {
    // one real root (Cardano): cbrt(Q/2 + sqrt(D)) + cbrt(Q/2 - sqrt(D))
    Mpfr sd, h, t1, t2;
    mpfr_sqrt(sd.get(), disc.get(), MPFR_RNDN);
    mpfr_div_ui(h.get(), q.get(), 2, MPFR_RNDN);
    mpfr_add(t1.get(), h.get(), sd.get(), MPFR_RNDN);
    mpfr_cbrt(t1.get(), t1.get(), MPFR_RNDN);
    mpfr_sub(t2.get(), h.get(), sd.get(), MPFR_RNDN);
    mpfr_cbrt(t2.get(), t2.get(), MPFR_RNDN);
    mpfr_add(t1.get(), t1.get(), t2.get(), MPFR_RNDN);
    mpfr_add(t1.get(), t1.get(), shift.get(), MPFR_RNDN);
    out.push_back(mpfr_to_rat(t1.get()));
  }
  return out;
}

// bisect F(t) = L inside [a,b] with certified opposite signs sa, sb
Enclosure bisect_root(const CubicModel& m, const BigRat& L, BigRat a, BigRat b,
                      int sa) {
  BigRat tol = (abs(BigRat(a)) + abs(BigRat(b)) + 1) * pow2_rat(-80);
  while (b - a > tol) {
    BigRat mid = (a + b) / 2;
    int sm;
    try {
      sm = m.cmp_level(mid, L);
    } catch (const Undecidable&) {
      break;  // model enclosures limit the resolution; bracket is still valid
    }
    if (sm == 0) return Enclosure(mid, mid);
    if (sm == sa)
      a = mid;
    else
      b = mid;
  }
  return Enclosure(a, b);
}

// widen from `from` away in direction dir until F-L has certified sign `want`
BigRat expand_until(const CubicModel& m, const BigRat& L, const BigRat& from,
                    int want, int dir) {
  BigRat step = 1;
  for (int i = 0; i < 300; ++i) {
    BigRat cand = from + BigRat(dir) * step;
    int s = m.cmp_level(cand, L);
    if (s == want || s == 0) return cand;
    step *= 2;
  }
  throw std::logic_error("expand_until failed to bracket a cubic root");
}

struct TaggedRoot {
  Enclosure root;
  BigRat seed;
  int level_sign;  // +1 for F=+eps, -1 for F=-eps, 0 for eps=0
};

}  // namespace

BigRat ApproxLine::x_at(const BigRat& t) const { return BigRat(base.x) - t; }
BigRat ApproxLine::y_at(const BigRat& t) const {
  BigRat c(pa, qa);
  c.canonicalize();
  return BigRat(base.y) - t * c;
}
BigRat ApproxLine::z_at(const BigRat& t) const {
  BigRat c(pb, qb);
  c.canonicalize();
  return BigRat(base.z) - t * c;
}

ApproxLine build_line(const DirichletPoint& pt, const ConvergentTable& tbl_alpha,
                      const ConvergentTable& tbl_beta, int n) {
  if (n < 0) throw std::invalid_argument("negative index");
  size_t k = 2 * static_cast<size_t>(n);
  if (tbl_alpha.size() <= k || tbl_beta.size() <= k)
    throw std::invalid_argument("convergent tables too short for 2n");
  return ApproxLine{pt, tbl_alpha.p(k), tbl_alpha.q(k), tbl_beta.p(k),
                    tbl_beta.q(k), n};
}

CubicModel CubicModel::from_roots(const BigRat& A, const BigInt& x, const BigRat& ta,
                                  const BigRat& tb) {
  if (A <= 0) throw std::invalid_argument("leading factor A must be positive");
  CubicModel m;
  m.A = Enclosure::point(A);
  m.x = x;
  m.t_alpha = Enclosure::point(ta);
  m.t_beta = Enclosure::point(tb);
  BigRat xr(x);
  m.sigma1 = Enclosure::point(xr + ta + tb);
  m.sigma2 = Enclosure::point(xr * ta + xr * tb + ta * tb);
  m.sigma3 = Enclosure::point(xr * ta * tb);
  return m;
}

Enclosure CubicModel::eval(const BigRat& t) const {
  Enclosure tp = Enclosure::point(t);
  Enclosure p = ((tp - sigma1) * tp + sigma2) * tp - sigma3;
  return -(A * p);
}

Enclosure CubicModel::eval_deriv(const BigRat& t) const {
  Enclosure tp = Enclosure::point(t);
  Enclosure d = tp.square() * BigRat(3) - sigma1 * tp * BigRat(2) + sigma2;
  return -(A * d);
}

int CubicModel::cmp_level(const BigRat& t, const BigRat& level) const {
  Enclosure d = eval(t) - level;
  if (d.surely_positive()) return 1;
  if (d.surely_negative()) return -1;
  if (d.lo == 0 && d.hi == 0) return 0;
  throw Undecidable("cubic level comparison straddles");
}

CubicModel build_cubic(const ApproxLine& line, const RealSpec& alpha,
                       const RealSpec& beta, const BigRat& width) {
  BigRat ca(line.pa, line.qa), cb(line.pb, line.qb);
  ca.canonicalize();
  cb.canonicalize();
  BigRat xr(line.base.x), yr(line.base.y), zr(line.base.z);
  BigRat w = width;
  for (int iter = 0; iter < precision_cap(); ++iter) {
    BigRat wa = std::max(w, alpha.best_width());
    BigRat wb = std::max(w, beta.best_width());
    Enclosure a = alpha.refine(wa);
    Enclosure b = beta.refine(wb);
    Enclosure ea = a - ca;
    Enclosure eb = b - cb;
    if (ea.contains_zero() || eb.contains_zero()) {
      if (wa > w && wb > w) throw PrecisionExhausted("convergent error sign unresolved");
      w = w / 65536;
      continue;
    }
    Enclosure ra = a * xr - yr;
    Enclosure rb = b * xr - zr;
    CubicModel m;
    m.A = ea * eb;
    m.x = line.base.x;
    m.t_alpha = ra / ea;
    m.t_beta = rb / eb;
    m.n = line.n;
    if (m.t_alpha.width() > width || m.t_beta.width() > width) {
      if (wa > w && wb > w) throw PrecisionExhausted("line roots wider than requested");
      w = w / 65536;
      continue;
    }
    Enclosure xp = Enclosure::point(xr);
    m.sigma1 = xp + m.t_alpha + m.t_beta;
    m.sigma2 = xp * (m.t_alpha + m.t_beta) + m.t_alpha * m.t_beta;
    m.sigma3 = xp * m.t_alpha * m.t_beta;
    // the model must agree with direct evaluation of f along the line
    for (int t = -1; t <= 1; ++t) {
      BigRat tr(t);
      Enclosure direct = eval_form_rat(line.x_at(tr), line.y_at(tr), line.z_at(tr),
                                       alpha, beta, w);
      Enclosure::meet(m.eval(tr), direct);  // throws if disjoint
    }
    return m;
  }
  throw PrecisionExhausted("build_cubic did not reach requested width");
}

ReducedCubic reduce_cubic(const CubicModel& model, const BigRat& epsilon) {
  if (epsilon <= 0) throw std::invalid_argument("epsilon must be positive");
  if (!model.A.surely_positive())
    throw std::invalid_argument("model leading factor not certified positive");
  Enclosure em = Enclosure::point(epsilon) / model.A;
  ReducedCubic r;
  Depressed dp = depressed_for(model, em);    // p(t) = +eps/A, i.e. F = -eps
  Depressed dm = depressed_for(model, -em);   // p(t) = -eps/A, i.e. F = +eps
  r.P = dp.P;
  if (!r.P.surely_negative())
    throw BranchUndecidable("P not certified negative (no three-real-root regime)");
  r.Qplus = dp.Q;
  r.Qminus = dm.Q;
  BigRat w = pow2_rat(-96);
  r.Cplus = c_value(r.P, r.Qplus, w);
  r.Cminus = c_value(r.P, r.Qminus, w);
  r.branch_plus = classify_branch(r.Cplus);
  r.branch_minus = classify_branch(r.Cminus);
  return r;
}

namespace {

// critical points and values without the scenario classification
CriticalPoints critical_core(const CubicModel& model) {
  if (!model.A.surely_positive())
    throw std::invalid_argument("model leading factor not certified positive");
  Enclosure disc = model.sigma1.square() - model.sigma2 * BigRat(3);
  if (!disc.surely_positive())
    throw BranchUndecidable("discriminant of F' not certified positive");
  BigRat quarter = disc.width() / 4;
  BigRat w = std::max(quarter, BigRat(pow2_rat(-96)));
  Enclosure sq = sqrt_enclosure(disc, w);
  CriticalPoints cp;
  cp.tau_minus = (model.sigma1 - sq) / BigRat(3);
  cp.tau_plus = (model.sigma1 + sq) / BigRat(3);
  auto evalE = [&](const Enclosure& t) {
    Enclosure p = ((t - model.sigma1) * t + model.sigma2) * t - model.sigma3;
    return -(model.A * p);
  };
  cp.value_minus = evalE(cp.tau_minus);
  cp.value_plus = evalE(cp.tau_plus);
  return cp;
}

}  // namespace

CriticalPoints critical_points(const CubicModel& model, const BigRat& epsilon) {
  CriticalPoints cp = critical_core(model);
  BigRat e = epsilon;
  bool m_deep = certainly_lt(cp.value_minus, -e);   // F(tau-) < -eps
  bool m_shallow = certainly_gt(cp.value_minus, -e);
  bool p_deep = certainly_gt(cp.value_plus, e);     // F(tau+) > eps
  bool p_shallow = certainly_lt(cp.value_plus, e);
  if (m_shallow && p_shallow)
    cp.scenario = 1;
  else if (m_deep && p_shallow)
    cp.scenario = 2;
  else if (m_shallow && p_deep)
    cp.scenario = 3;
  else if (m_deep && p_deep)
    cp.scenario = 4;
  else
    throw Undecidable("critical value enclosure straddles epsilon");
  return cp;
}

SublevelSet solve_levelset(const CubicModel& model, const BigRat& epsilon) {
  if (epsilon < 0) throw std::invalid_argument("epsilon must be nonnegative");
  if (!model.A.surely_positive())
    throw std::invalid_argument("model leading factor not certified positive");
  Enclosure disc = model.sigma1.square() - model.sigma2 * BigRat(3);
  bool monotone = !disc.surely_positive();
  if (monotone && !certainly_le(disc, BigRat(0)))
    throw BranchUndecidable("critical-point discriminant straddles zero");

  std::optional<CriticalPoints> cp;
  BigRat taum, taup;
  if (!monotone) {
    cp = critical_core(model);
    taum = cp->tau_minus.mid();
    taup = cp->tau_plus.mid();
  }

  std::vector<BigRat> levels;
  if (epsilon == 0)
    levels.push_back(BigRat(0));
  else {
    levels.push_back(epsilon);
    levels.push_back(-epsilon);
  }

  std::vector<TaggedRoot> roots;
  for (const BigRat& L : levels) {
    int tag = L > 0 ? 1 : (L < 0 ? -1 : 0);
    Enclosure c = Enclosure::point(-L) / model.A;  // p level: F = L <=> p = -L/A
    Depressed d = depressed_for(model, c);
    std::vector<BigRat> seeds = seed_roots(d.P.mid(), d.Q.mid(), model.sigma1.mid());
    bool three;
    if (monotone) {
      three = false;
    } else {
      // F = L has three roots iff F(tau-) < L < F(tau+)
      bool below = certainly_lt(cp->value_minus, L);
      bool above = certainly_gt(cp->value_plus, L);
      bool out_lo = certainly_gt(cp->value_minus, L);
      bool out_hi = certainly_lt(cp->value_plus, L);
      if (below && above)
        three = true;
      else if (out_lo || out_hi)
        three = false;
      else
        throw BranchUndecidable("level equals a critical value");
    }
    if (three) {
      if (seeds.size() != 3) {
        // seed discriminant disagreed (borderline); synthesize fallbacks
        seeds = {taum - 1, (taum + taup) / 2, taup + 1};
      }
      std::sort(seeds.begin(), seeds.end());
      // segments (-inf,tau-], [tau-,tau+], [tau+,inf); F-L signs at the
      // barriers are -1 and +1 respectively
      BigRat left = expand_until(model, L, std::min(seeds[0], taum) - 1, 1, -1);
      roots.push_back({bisect_root(model, L, left, taum, 1), seeds[0], tag});
      roots.push_back({bisect_root(model, L, taum, taup, -1), seeds[1], tag});
      BigRat right = expand_until(model, L, std::max(seeds[2], taup) + 1, -1, 1);
      roots.push_back({bisect_root(model, L, taup, right, 1), seeds[2], tag});
    } else {
      BigRat seed = seeds.front();
      if (monotone) {
        BigRat left = expand_until(model, L, seed - 1, 1, -1);
        BigRat right = expand_until(model, L, seed + 1, -1, 1);
        roots.push_back({bisect_root(model, L, left, right, 1), seed, tag});
      } else if (certainly_lt(cp->value_plus, L)) {
        // level above the local max: single root left of tau-
        BigRat left = expand_until(model, L, std::min(seed, taum) - 1, 1, -1);
        roots.push_back({bisect_root(model, L, left, taum, 1), seed, tag});
      } else if (certainly_gt(cp->value_minus, L)) {
        // level below the local min: single root right of tau+
        BigRat right = expand_until(model, L, std::max(seed, taup) + 1, -1, 1);
        roots.push_back({bisect_root(model, L, taup, right, 1), seed, tag});
      } else {
        throw BranchUndecidable("level vs critical values undecidable");
      }
    }
  }

  std::sort(roots.begin(), roots.end(), [](const TaggedRoot& a, const TaggedRoot& b) {
    return a.root.lo < b.root.lo;
  });
  for (size_t i = 0; i + 1 < roots.size(); ++i)
    if (!(roots[i].root.hi < roots[i + 1].root.lo))
      throw BranchUndecidable("level-set boundary enclosures overlap");

  SublevelSet out;
  out.epsilon = epsilon;
  if (epsilon == 0) {
    for (auto& r : roots) {
      out.intervals.push_back({r.root, r.root});
      out.trig_endpoints.push_back(r.seed);
      out.trig_endpoints.push_back(r.seed);
    }
    out.total_length = Enclosure(BigRat(0), BigRat(0));
    out.scenario = roots.size() == 3 ? 4 : 1;
    return out;
  }

  // membership of each gap between consecutive boundary roots
  size_t open = 0;
  bool in_run = false;
  Enclosure total = Enclosure::point(BigRat(0));
  for (size_t i = 0; i + 1 < roots.size(); ++i) {
    BigRat m = (roots[i].root.hi + roots[i + 1].root.lo) / 2;
    int s_hi = model.cmp_level(m, epsilon);
    int s_lo = model.cmp_level(m, -epsilon);
    bool inside = s_hi <= 0 && s_lo >= 0;
    if (inside && !in_run) {
      open = i;
      in_run = true;
    } else if (!inside && in_run) {
      out.intervals.push_back({roots[open].root, roots[i].root});
      out.trig_endpoints.push_back(roots[open].seed);
      out.trig_endpoints.push_back(roots[i].seed);
      in_run = false;
    }
  }
  if (in_run) {
    // closed by the last boundary (|F| > eps beyond the extreme roots)
    out.intervals.push_back({roots[open].root, roots.back().root});
    out.trig_endpoints.push_back(roots[open].seed);
    out.trig_endpoints.push_back(roots.back().seed);
  }
  for (auto& iv : out.intervals) {
    Enclosure len = iv.hi - iv.lo;
    if (len.lo < 0) len.lo = 0;
    total = total + len;
  }
  out.total_length = total;
  int n_plus = 0, n_minus = 0;
  for (auto& r : roots) (r.level_sign > 0 ? n_plus : n_minus) += 1;
  if (n_plus == 1 && n_minus == 1)
    out.scenario = 1;
  else if (n_plus == 1 && n_minus == 3)
    out.scenario = 2;
  else if (n_plus == 3 && n_minus == 1)
    out.scenario = 3;
  else
    out.scenario = 4;
  return out;
}

CartanCheck cartan_bound(const CubicModel& model, const BigRat& epsilon) {
  SublevelSet ls = solve_levelset(model, epsilon);
  // e = 2.71828...: hardcoded 38-digit rational bracket
  static const BigRat kELo("27182818284590452353602874713526624977/"
                           "10000000000000000000000000000000000000");
  static const BigRat kEHi("27182818284590452353602874713526624978/"
                           "10000000000000000000000000000000000000");
  Enclosure e_const(kELo, kEHi);
  Enclosure em = Enclosure::point(epsilon) / model.A.abs();
  Enclosure root = cbrt_enclosure(em, pow2_rat(-64));
  CartanCheck c;
  c.bound = e_const * root * BigRat(6);
  c.measured = ls.total_length;
  c.ok = certainly_le(c.measured, c.bound.lo);
  return c;
}

}  // namespace lw
