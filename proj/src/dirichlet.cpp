#include "littlewood/dirichlet.hpp"

#include <algorithm>

namespace lw {

namespace {

constexpr unsigned long kFracBits = 192;  // fixed-point scale for the scan
const long kDirectScanLimit = 100000;

// centered representative of v mod 2^F, in [-2^(F-1), 2^(F-1))
BigInt centered_mod(const BigInt& v) {
  BigInt m = 1;
  mpz_mul_2exp(m.get_mpz_t(), m.get_mpz_t(), kFracBits);
  BigInt r;
  mpz_fdiv_r(r.get_mpz_t(), v.get_mpz_t(), m.get_mpz_t());
  if (2 * r >= m) r -= m;
  return r;
}

// (value * 2^F) rounded down, from an enclosure: error at most
// 1 ulp plus the enclosure width
BigInt fixed_point(const Enclosure& e) {
  BigRat scaled = e.lo * pow2_rat(static_cast<long>(kFracBits));
  return rat_floor(scaled);
}

struct Residuals {
  Enclosure res_alpha, res_beta;
  BigInt y, z;
};

// Certify |alpha x - y|^2 N <= 1 and likewise for beta, with y, z the
// nearest integers.  Returns false when the point certifiably fails.
bool certify_point(const RealSpec& alpha, const RealSpec& beta, const BigInt& x,
                   const BigInt& N, Residuals& out) {
  BigRat w = pow2_rat(-64) / BigRat(x);
  for (int iter = 0; iter < precision_cap(); ++iter) {
    BigRat wa = std::max(w, alpha.best_width());
    BigRat wb = std::max(w, beta.best_width());
    Enclosure ax = alpha.refine(wa) * BigRat(x);
    Enclosure bx = beta.refine(wb) * BigRat(x);
    BigInt y = nearest_int(ax.mid());
    BigInt z = nearest_int(bx.mid());
    Enclosure ra = ax - BigRat(y);
    Enclosure rb = bx - BigRat(z);
    Enclosure ta = ra.square() * BigRat(N);
    Enclosure tb = rb.square() * BigRat(N);
    BigRat one(1);
    if (certainly_le(ta, one) && certainly_le(tb, one)) {
      out = Residuals{ra, rb, y, z};
      return true;
    }
    if (certainly_gt(ta, one) || certainly_gt(tb, one)) return false;
    w = w / 65536;
  }
  throw PrecisionExhausted("could not certify Dirichlet constraints");
}

DirichletPoint direct_scan(const RealSpec& alpha, const RealSpec& beta, const BigInt& N) {
  for (BigInt x = 1; x <= N; ++x) {
    Residuals r;
    if (certify_point(alpha, beta, x, N, r))
      return DirichletPoint{N, x, r.y, r.z, r.res_alpha, r.res_beta};
  }
  throw Undecidable("no Dirichlet point found in direct scan");
}

// Branch-and-bound over the Ostrowski digit expansion of x relative to the
// continued fraction of alpha.  Digits are chosen low-to-high; the chosen
// prefix pins the residual of x*alpha up to the (geometrically shrinking)
// contribution of the remaining high digits, so subtrees whose achievable
// residual cannot come close to an integer are cut.
struct OstrowskiScan {
  const BigInt& N;
  std::vector<BigInt> q;       // q_0..q_m
  std::vector<BigInt> amax;    // digit cap at level k: a_{k+1} (a_1 - 1 at k=0)
  std::vector<BigInt> theta;   // fixed-point q_k*alpha - p_k
  std::vector<BigInt> tail;    // tail[k] = sum_{j>=k} amax_j*|theta_j| + slack
  BigInt thr_alpha, thr_beta;  // fixed-point acceptance thresholds (outer)
  BigInt beta_fp;              // fixed-point beta
  std::vector<BigInt> found;

  void dfs(size_t k, const BigInt& x, const BigInt& r, bool prev_full_zero) {
    if (k == q.size()) {
      if (x < 1 || x > N) return;
      BigInt rr = centered_mod(r);
      if (::abs(rr) > thr_alpha) return;
      BigInt rb = centered_mod(x * beta_fp);
      if (::abs(rb) > thr_beta + x) return;  // x units of beta rounding error
      found.push_back(x);
      return;
    }
    // prune: residual of the completed sum lies within tail[k] of r
    BigInt rr = centered_mod(r);
    BigInt m = 1;
    mpz_mul_2exp(m.get_mpz_t(), m.get_mpz_t(), kFracBits);
    BigInt arr(::abs(rr));
    BigInt dist = std::min(arr, BigInt(m - arr));
    if (dist > thr_alpha + tail[k]) return;
    BigInt cmax = amax[k];
    BigInt room = (N - x) / q[k];
    if (room < cmax) cmax = room;
    for (BigInt c = 0; c <= cmax; ++c) {
      // canonical digits: c_k may reach its cap only when c_{k-1} = 0
      if (k > 0 && c == amax[k] && !prev_full_zero) continue;
      dfs(k + 1, x + c * q[k], r + c * theta[k], c == 0);
    }
  }
};

DirichletPoint ostrowski_scan(const RealSpec& alpha, const RealSpec& beta, const BigInt& N) {
  // expand the CF of alpha until q_m <= N < q_{m+1}
  int count = 32;
  ConvergentTable t;
  for (;;) {
    t = cf_expand(alpha, count);
    if (t.q(t.size() - 1) > N) break;
    if (!t.complete || t.size() < static_cast<size_t>(count)) {
      throw PrecisionExhausted("spec precision too low for Ostrowski scan");
    }
    count *= 2;
  }
  size_t m1 = 0;  // index with q_{m1} > N
  while (t.q(m1) <= N) ++m1;
  size_t m = m1 - 1;

  OstrowskiScan scan{N};
  BigRat w = pow2_rat(-(static_cast<long>(kFracBits) + 64)) / BigRat(N);
  Enclosure ea = alpha.refine(std::max(w, alpha.best_width()));
  Enclosure eb = beta.refine(std::max(w, beta.best_width()));
  scan.beta_fp = fixed_point(eb);
  for (size_t k = 0; k <= m; ++k) {
    scan.q.push_back(t.q(k));
    BigInt cap = t.quotients.at(k + 1);
    if (k == 0) cap -= 1;
    scan.amax.push_back(cap);
    scan.theta.push_back(fixed_point(ea * BigRat(t.q(k)) - BigRat(t.p(k))));
  }
  scan.tail.assign(m + 2, BigInt(0));
  for (size_t k = m + 1; k-- > 0;)
    scan.tail[k] = scan.tail[k + 1] + scan.amax[k] * (::abs(scan.theta[k]) + 2);
  BigInt slack = 1;
  mpz_mul_2exp(slack.get_mpz_t(), slack.get_mpz_t(), 32);
  BigInt scale = 1;
  mpz_mul_2exp(scale.get_mpz_t(), scale.get_mpz_t(), kFracBits);
  BigInt thr = scale / isqrt_floor(N) + slack;
  scan.thr_alpha = thr;
  scan.thr_beta = thr;
  scan.dfs(0, BigInt(0), BigInt(0), true);

  std::sort(scan.found.begin(), scan.found.end());
  scan.found.erase(std::unique(scan.found.begin(), scan.found.end()), scan.found.end());
  for (const BigInt& x : scan.found) {
    Residuals r;
    if (certify_point(alpha, beta, x, N, r))
      return DirichletPoint{N, x, r.y, r.z, r.res_alpha, r.res_beta};
  }
  throw Undecidable("Ostrowski scan found no certifiable Dirichlet point");
}

}  // namespace

DirichletPoint find_dirichlet_point(const RealSpec& alpha, const RealSpec& beta,
                                    const BigInt& N) {
  if (N < 1) throw std::invalid_argument("N must be >= 1");
  if (N <= kDirectScanLimit) return direct_scan(alpha, beta, N);
  return ostrowski_scan(alpha, beta, N);
}

PointClassification classify_point(const DirichletPoint& pt, const BigRat& eps,
                                   const RealSpec& alpha, const RealSpec& beta) {
  Enclosure f = Enclosure::point(BigRat(pt.x)) * pt.res_alpha * pt.res_beta;
  BigRat w = f.width();
  for (int iter = 0; iter < precision_cap(); ++iter) {
    Enclosure af = f.abs();
    if (certainly_le(af, eps)) {
      PointClassification c{PointClass::ImmediateWitness, f, true};
      return c;
    }
    if (certainly_gt(af, eps)) {
      PointClassification c{PointClass::Outside, f, false};
      c.bound_ok = (eps * BigRat(pt.N) <= BigRat(pt.x)) && pt.x <= pt.N;
      return c;
    }
    w = w / 65536;
    BigRat wr = std::max(w, std::max(alpha.best_width(), beta.best_width()));
    Enclosure ra = alpha.refine(wr) * BigRat(pt.x) - BigRat(pt.y);
    Enclosure rb = beta.refine(wr) * BigRat(pt.x) - BigRat(pt.z);
    f = Enclosure::point(BigRat(pt.x)) * ra * rb;
    if (f.width() >= w && wr > w) break;  // literal precision exhausted
  }
  throw Undecidable("f(M) enclosure straddles epsilon");
}

bool badness_check(const DirichletPoint& pt, const BigRat& C) {
  if (C < 0) throw std::invalid_argument("C must be >= 0");
  if (C == 0) return true;
  BigRat bound = C / BigRat(pt.x);
  Enclosure aa = pt.res_alpha.abs();
  Enclosure ab = pt.res_beta.abs();
  if (certainly_gt(aa, bound) && certainly_gt(ab, bound)) return true;
  if (certainly_le(aa, bound) || certainly_le(ab, bound)) return false;
  throw Undecidable("badness_check: residual enclosure straddles C/x");
}

}  // namespace lw
