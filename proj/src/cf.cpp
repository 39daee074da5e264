#include "littlewood/cf.hpp"

#include <map>

namespace lw {

namespace {

void push_convergent(ConvergentTable& t, const BigInt& a) {
  size_t k = t.quotients.size();
  t.quotients.push_back(a);
  if (k == 0) {
    t.convergents.emplace_back(a, BigInt(1));
  } else if (k == 1) {
    t.convergents.emplace_back(a * t.p(0) + 1, a);
  } else {
    t.convergents.emplace_back(a * t.p(k - 1) + t.p(k - 2),
                               a * t.q(k - 1) + t.q(k - 2));
  }
}

// floor((p + sqrt(d)) / q) for irrational sqrt(d)
BigInt surd_floor(const BigInt& p, const BigInt& d, const BigInt& q) {
  BigInt s = isqrt_floor(d);
  BigInt num = p + s;
  if (q < 0) num += 1;  // sqrt(d) in (s, s+1): shift for negative denominator
  BigInt r;
  mpz_fdiv_q(r.get_mpz_t(), num.get_mpz_t(), q.get_mpz_t());
  return r;
}

}  // namespace

ConvergentTable cf_expand_surd(const QuadraticSurd& surd, int count) {
  if (!surd.valid()) throw std::invalid_argument("invalid quadratic surd");
  if (count < 1) throw std::invalid_argument("count must be >= 1");
  QuadraticSurd s = surd.canonical();
  ConvergentTable table;
  std::map<std::pair<BigInt, BigInt>, int> seen;
  BigInt p = s.p, q = s.q;
  const BigInt& d = s.d;
  for (int k = 0; k < count; ++k) {
    if (!table.period) {
      auto it = seen.find({p, q});
      if (it != seen.end()) {
        table.period = std::make_pair(it->second, k - it->second);
      } else {
        seen.emplace(std::make_pair(p, q), k);
      }
    }
    BigInt a = surd_floor(p, d, q);
    push_convergent(table, a);
    BigInt p2 = a * q - p;
    BigInt q2 = (d - p2 * p2) / q;
    p = p2;
    q = q2;
  }
  // keep scanning for the period if it was not hit within count quotients
  if (!table.period) {
    BigInt pp = p, qq = q;
    for (int k = count; k < count + 4 * count + 64; ++k) {
      auto it = seen.find({pp, qq});
      if (it != seen.end()) {
        table.period = std::make_pair(it->second, k - it->second);
        break;
      }
      seen.emplace(std::make_pair(pp, qq), k);
      BigInt a = surd_floor(pp, d, qq);
      BigInt p2 = a * qq - pp;
      BigInt q2 = (d - p2 * p2) / qq;
      pp = p2;
      qq = q2;
    }
  }
  return table;
}

ConvergentTable cf_expand_literal(const RealSpec& x, int count) {
  if (count < 1) throw std::invalid_argument("count must be >= 1");
  Enclosure cur = x.refine(std::max(x.best_width(), pow2_rat(-128)));
  ConvergentTable table;
  for (int k = 0; k < count; ++k) {
    BigInt fl = rat_floor(cur.lo);
    if (rat_floor(cur.hi) != fl) {
      if (k == 0) throw AmbiguousEnclosure("cannot certify the first quotient");
      table.complete = false;
      return table;
    }
    push_convergent(table, fl);
    Enclosure frac = cur - BigRat(fl);
    if (frac.hi == 0) return table;  // exact integer tail: finite expansion
    if (frac.lo <= 0) {
      // cannot certify the next inversion
      table.complete = false;
      return table;
    }
    cur = Enclosure::point(BigRat(1)) / frac;
  }
  return table;
}

ConvergentTable cf_expand(const RealSpec& x, int count) {
  if (x.kind() == RealSpec::Kind::Surd) return cf_expand_surd(x.surd_value(), count);
  return cf_expand_literal(x, count);
}

BigInt metallic_q(const BigInt& b, int n) {
  if (b < 1 || n < 0) throw std::invalid_argument("metallic_q requires b>=1, n>=0");
  BigInt prev = 1, cur = b;  // q_0, q_1
  if (n == 0) return prev;
  for (int k = 1; k < n; ++k) {
    BigInt next = b * cur + prev;
    prev = cur;
    cur = next;
  }
  return cur;
}

BigInt metallic_q_closed(const BigInt& b, int n) {
  if (b < 1 || n < 0) throw std::invalid_argument("metallic_q_closed requires b>=1, n>=0");
  BigInt sum = 0;
  for (int k = 0; 2 * k <= n; ++k) {
    BigInt binom;
    mpz_bin_uiui(binom.get_mpz_t(), static_cast<unsigned long>(n - k),
                 static_cast<unsigned long>(k));
    BigInt bp;
    mpz_pow_ui(bp.get_mpz_t(), b.get_mpz_t(), static_cast<unsigned long>(n - 2 * k));
    sum += binom * bp;
  }
  return sum;
}

ErrorRecord error_record(const RealSpec& alpha, const ConvergentTable& table, int n) {
  if (n < 0 || n % 2 != 0) throw std::invalid_argument("error_record needs even n");
  if (table.size() < static_cast<size_t>(n) + 2)
    throw std::invalid_argument("table too short for error_record");
  if (alpha.is_exact_rational())
    throw std::invalid_argument("error_record requires an irrational spec");
  ErrorRecord rec;
  rec.n = n;
  const BigInt& qn = table.q(n);
  const BigInt& qn1 = table.q(n + 1);
  rec.lower = BigRat(1, 2 * qn1 * qn1);
  rec.lower.canonicalize();
  rec.upper = BigRat(1, qn * qn);
  rec.upper.canonicalize();
  BigRat c(table.p(n), qn);
  c.canonicalize();
  BigRat w = std::min(BigRat(rec.lower / 4), BigRat(rec.upper * pow2_rat(-24)));
  for (int iter = 0; iter < precision_cap(); ++iter) {
    rec.e = alpha.refine(std::max(w, alpha.best_width())) - Enclosure::point(c);
    if (certainly_ge(rec.e, rec.lower) && certainly_le(rec.e, rec.upper) &&
        rec.e.surely_positive()) {
      rec.verified = true;
      return rec;
    }
    if (rec.e.width() < w) break;  // as tight as the spec allows
    w = w / 16;
  }
  // enclosure is tight but the bound genuinely fails (or spec precision ran out)
  if (rec.e.width() > rec.lower)
    throw PrecisionExhausted("error_record: enclosure of e_n too wide");
  rec.verified = false;
  return rec;
}

BigRat bad_approx_estimate(const RealSpec& alpha, long Q) {
  if (Q < 1) throw std::invalid_argument("Q must be >= 1");
  if (alpha.is_exact_rational()) {
    const BigRat& v = alpha.rational_value();
    if (v.get_den() <= Q) return BigRat(0);  // q = den hits ||q alpha|| = 0
  }
  // result is within Q*w of min_q q*||q alpha||; keep that below 2^-32
  BigRat coarse(BigInt(1), BigInt(8) * Q * Q);
  coarse.canonicalize();
  BigRat fine = pow2_rat(-32) / Q;
  BigRat w = std::min(coarse, fine);
  w = std::max(w, alpha.best_width());
  BigRat best(-1);
  for (long q = 1; q <= Q; ++q) {
    Enclosure qa = alpha.refine(std::max(w, alpha.best_width())) * BigRat(q);
    Enclosure dist;
    for (int iter = 0;; ++iter) {
      try {
        dist = nearest_int_distance(qa);
        break;
      } catch (const AmbiguousEnclosure&) {
        if (iter >= precision_cap()) throw PrecisionExhausted("bad_approx_estimate");
        w = w / 16;
        qa = alpha.refine(std::max(w, alpha.best_width())) * BigRat(q);
      }
    }
    BigRat cand = BigRat(q) * dist.lo;
    if (best < 0 || cand < best) best = cand;
    if (best == 0) break;
  }
  return best;
}

}  // namespace lw
