#include "littlewood/pairs.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

#include "littlewood/witness.hpp"

namespace lw {

namespace {

// mu = 11/12 + eta/4 as a reduced fraction u/v with machine-word exponents.
void window_exponents(const BigRat& eta, unsigned long* u, unsigned long* v) {
  BigRat mu = make_rat(11, 12) + eta / 4;
  mu.canonicalize();
  if (!mu.get_num().fits_ulong_p() || !mu.get_den().fits_ulong_p())
    throw std::invalid_argument("eta denominator too large for exact power checks");
  *u = mu.get_num().get_ui();
  *v = mu.get_den().get_ui();
}

BigRat rat_pow(const BigRat& x, unsigned long e) {
  BigRat r;
  mpz_pow_ui(r.get_num_mpz_t(), x.get_num().get_mpz_t(), e);
  mpz_pow_ui(r.get_den_mpz_t(), x.get_den().get_mpz_t(), e);
  r.canonicalize();
  return r;
}

BigInt int_pow(const BigInt& x, unsigned long e) {
  BigInt r;
  mpz_pow_ui(r.get_mpz_t(), x.get_mpz_t(), e);
  return r;
}

// psi(x) > mu, decided exactly: ln(x-1)/ln(x) > u/v  <=>  (x-1)^v > x^u
// for x > 1 (both logs positive once x > 2; for x in (1,2] psi <= 0 < mu).
bool psi_above(const BigRat& x, unsigned long u, unsigned long v) {
  if (x <= 2) return false;
  BigRat lhs = rat_pow(BigRat(x - 1), v);
  BigRat rhs = rat_pow(x, u);
  return lhs > rhs;
}

// Pollard-Brent rho with a fixed iteration budget; returns a nontrivial
// factor or 0 on failure.  n must be odd, composite, > 1.
BigInt pollard_brent(const BigInt& n, unsigned long seed, long budget) {
  gmp_randclass rng(gmp_randinit_default);
  rng.seed(seed);
  BigInt y(rng.get_z_range(n - 3) + 1);
  BigInt c(rng.get_z_range(n - 1) + 1);
  BigInt x, q(1), g(1), ys;
  long r = 1;
  auto step = [&](BigInt& v) {
    v = (v * v + c) % n;
  };
  long spent = 0;
  const long m = 128;
  while (g == 1 && spent < budget) {
    x = y;
    for (long i = 0; i < r && spent < budget; ++i, ++spent) step(y);
    long k = 0;
    while (k < r && g == 1 && spent < budget) {
      ys = y;
      long lim = std::min(m, r - k);
      for (long i = 0; i < lim; ++i, ++spent) {
        step(y);
        BigInt d(x - y);
        q = (q * abs(d)) % n;
      }
      mpz_gcd(g.get_mpz_t(), q.get_mpz_t(), n.get_mpz_t());
      k += lim;
    }
    r *= 2;
  }
  if (g == n) {
    // backtrack one step at a time
    long guard = 0;
    do {
      step(ys);
      BigInt d(abs(BigInt(x - ys)));
      mpz_gcd(g.get_mpz_t(), d.get_mpz_t(), n.get_mpz_t());
    } while (g == 1 && ++guard < budget);
  }
  if (g == 1 || g == n) return BigInt(0);
  return g;
}

}  // namespace

MetallicPair MetallicPair::make(const BigInt& a, const BigInt& b) {
  if (a < 1 || b <= a) throw std::invalid_argument("need 1 <= a < b");
  MetallicPair p;
  p.a = a;
  p.b = b;
  p.alpha = QuadraticSurd::metallic(a);
  p.beta = QuadraticSurd::metallic(b);
  p.independent = (b % a != 0);
  return p;
}

Enclosure psi(const BigRat& x, const BigRat& width) {
  if (x <= 1) throw std::invalid_argument("psi needs x > 1");
  if (x == 2) return Enclosure::point(BigRat(0));
  // psi(x) = ln(x-1)/ln x; reuse the directed log-ratio machinery by
  // clearing denominators: ln(p/q) = ln p - ln q handled inside.
  long prec = 64;
  BigRat xm1(x - 1);
  for (int iter = 0; iter < precision_cap(); ++iter) {
    Enclosure e = log_rat_ratio_enclosure(xm1, x, prec);
    if (e.width() <= width) return e;
    prec *= 2;
  }
  throw PrecisionExhausted("psi enclosure did not converge");
}

Enclosure critical_b(const BigRat& eta, const BigRat& tol) {
  if (eta < 0 || eta >= make_rat(1, 3))
    throw std::invalid_argument("eta must lie in [0, 1/3)");
  if (tol <= 0) throw std::invalid_argument("tol must be positive");
  unsigned long u, v;
  window_exponents(eta, &u, &v);
  BigRat lo(2), hi(4);
  while (!psi_above(hi, u, v)) hi = hi * 2;
  while (BigRat(hi - lo) > tol) {
    BigRat mid((lo + hi) / 2);
    if (psi_above(mid, u, v))
      hi = mid;
    else
      lo = mid;
  }
  return Enclosure{lo, hi};
}

bool window_has_integer(const BigInt& b, const BigRat& eta) {
  if (b < 2) throw std::invalid_argument("b must be >= 2");
  unsigned long u, v;
  window_exponents(eta, &u, &v);
  // smallest integer m with m >= b^{u/v}: m = floor(b^{u/v}) bumped unless
  // the power is exact.
  BigRat mu = make_rat(11, 12) + eta / 4;
  BigInt m = floor_pow(b, mu);
  if (int_pow(m, v) != int_pow(b, u)) m = m + 1;
  return m <= b;
}

std::vector<MetallicPair> enumerate_pairs(const BigRat& eta, const BigInt& b_max) {
  if (eta < 0 || eta >= make_rat(1, 3))
    throw std::invalid_argument("eta must lie in [0, 1/3)");
  unsigned long u, v;
  window_exponents(eta, &u, &v);
  std::vector<MetallicPair> out;
  for (BigInt b(3); b <= b_max; ++b) {
    if (!psi_above(BigRat(b), u, v)) continue;  // b <= b_c(eta)
    BigInt bu = int_pow(b, u);
    for (BigInt a(b - 1); a >= 1; --a) {
      if (int_pow(a, v) <= bu) break;  // a <= b^{u/v}
      out.push_back(MetallicPair::make(a, b));
    }
  }
  std::sort(out.begin(), out.end(), [](const MetallicPair& l, const MetallicPair& r) {
    return l.b < r.b || (l.b == r.b && l.a < r.a);
  });
  return out;
}

std::vector<RatioVerdict> ratio_check(const MetallicPair& pair, const BigRat& eta,
                                      int n_lo, int n_hi) {
  if (n_lo < 1 || n_hi < n_lo) throw std::invalid_argument("bad n range");
  unsigned long u, v;
  window_exponents(eta, &u, &v);
  std::vector<RatioVerdict> out;
  for (int n = n_lo; n <= n_hi; ++n) {
    RatioVerdict r;
    r.n = n;
    r.q_a = metallic_q(pair.a, 2 * n);
    r.q_b = metallic_q(pair.b, 2 * n);
    r.lower_ok = int_pow(r.q_b, u) <= int_pow(r.q_a, v);
    r.upper_ok = r.q_a <= r.q_b;
    out.push_back(r);
  }
  return out;
}

std::vector<PrimePower> factorize(const BigInt& n, bool* complete, BigInt* cofactor) {
  *complete = true;
  *cofactor = 1;
  std::map<BigInt, unsigned long> fac;
  BigInt m = n;
  if (m < 1) throw std::invalid_argument("factorize needs n >= 1");
  for (BigInt p(2); p * p <= m && p < 1000000; p += (p == 2 ? 1 : 2)) {
    while (m % p == 0) {
      fac[p] += 1;
      m /= p;
    }
  }
  // Remaining cofactors: primality test, else rho with a bounded budget.
  std::vector<BigInt> stack;
  if (m > 1) stack.push_back(m);
  int rounds = 0;
  while (!stack.empty()) {
    BigInt c = stack.back();
    stack.pop_back();
    if (mpz_probab_prime_p(c.get_mpz_t(), 40)) {
      fac[c] += 1;
      continue;
    }
    BigInt d(0);
    for (unsigned long seed = 1; seed <= 8 && d == 0; ++seed)
      d = pollard_brent(c, seed * 0x9e3779b9ul, 400000);
    if (d == 0 || ++rounds > 64) {
      *complete = false;
      *cofactor *= c;
      continue;
    }
    stack.push_back(d);
    stack.push_back(BigInt(c / d));
  }
  std::vector<PrimePower> out;
  for (auto& [p, e] : fac) out.push_back({p, e});
  return out;
}

FactorizationReport lcm_condition(const MetallicPair& pair, int n, const BigRat& eta) {
  if (n < 1) throw std::invalid_argument("n must be >= 1");
  if (eta < 0 || eta >= make_rat(1, 3))
    throw std::invalid_argument("eta must lie in [0, 1/3)");
  FactorizationReport rep;
  rep.n = n;
  rep.q_a = metallic_q(pair.a, 2 * n);
  rep.q_b = metallic_q(pair.b, 2 * n);
  mpz_lcm(rep.l.get_mpz_t(), rep.q_a.get_mpz_t(), rep.q_b.get_mpz_t());
  rep.eta_min = log_ratio_enclosure(rep.l, rep.q_b, 192) - BigRat(1);

  // Exact lcm verdict: l <= q_b^{1+eta}  <=>  l^v <= q_b^u for 1+eta = u/v.
  BigRat oe = 1 + eta;
  oe.canonicalize();
  if (oe.get_num().fits_ulong_p() && oe.get_den().fits_ulong_p())
    rep.lcm_ok = int_pow(rep.l, oe.get_den().get_ui()) <=
                 int_pow(rep.q_b, oe.get_num().get_ui());

  BigInt cof_a, cof_b;
  rep.factors_a = factorize(rep.q_a, &rep.complete_a, &cof_a);
  rep.factors_b = factorize(rep.q_b, &rep.complete_b, &cof_b);
  if (!rep.factors_a.empty() && rep.complete_a) rep.gpf_a = rep.factors_a.back().p;
  if (!rep.factors_b.empty() && rep.complete_b) rep.gpf_b = rep.factors_b.back().p;

  // Merged prime list of l and the exponent comparison index set.
  std::map<BigInt, std::pair<unsigned long, unsigned long>> merged;
  for (auto& f : rep.factors_a) merged[f.p].first = f.e;
  for (auto& f : rep.factors_b) merged[f.p].second = f.e;
  for (auto& [p, e] : merged) rep.primes.push_back(p);
  rep.r_n = rep.primes.size();
  size_t idx = 0;
  unsigned long maxdiff = 0, minbeta = 0;
  bool have_beta = false;
  for (auto& [p, e] : merged) {
    if (e.first > e.second) {
      rep.I_n.push_back(idx);
      maxdiff = std::max(maxdiff, e.first - e.second);
    }
    if (e.second > 0) {
      minbeta = have_beta ? std::min(minbeta, e.second) : e.second;
      have_beta = true;
    }
    ++idx;
  }

  // Sufficient condition |I_n| max(a_i - b_i) ln p_r <= eta r_n ln p_1 min b_i,
  // compared through the certified ratio ln p_1 / ln p_r.  Only meaningful
  // with complete factorizations.
  if (rep.complete_a && rep.complete_b && have_beta && !rep.primes.empty()) {
    if (rep.I_n.empty()) {
      rep.sufficient_ok = true;
    } else {
      BigRat lhs = BigRat(BigInt(rep.I_n.size())) * BigRat(BigInt(maxdiff));
      BigRat scale = eta * BigRat(BigInt(rep.r_n)) * BigRat(BigInt(minbeta));
      const BigInt& p1 = rep.primes.front();
      const BigInt& pr = rep.primes.back();
      Enclosure rhs = p1 == pr ? Enclosure::point(scale)
                               : Enclosure::point(scale) *
                                     log_ratio_enclosure(p1, pr, 192);
      if (certainly_ge(rhs, lhs))
        rep.sufficient_ok = true;
      else if (certainly_lt(rhs, lhs))
        rep.sufficient_ok = false;
    }
  }
  return rep;
}

}  // namespace lw
