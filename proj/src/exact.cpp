#include "littlewood/exact.hpp"

#include <algorithm>
#include <cstdlib>
#include <sstream>

namespace lw {

int precision_cap() {
  static const int cap = [] {
    if (const char* env = std::getenv("LF_PRECISION_CAP")) {
      int v = std::atoi(env);
      if (v > 0) return v;
    }
    return 64;
  }();
  return cap;
}

BigInt isqrt_floor(const BigInt& n) {
  BigInt r;
  mpz_sqrt(r.get_mpz_t(), n.get_mpz_t());
  return r;
}

bool is_perfect_square(const BigInt& n) {
  if (n < 0) return false;
  return mpz_perfect_square_p(n.get_mpz_t()) != 0;
}

BigInt rat_floor(const BigRat& x) {
  BigInt r;
  mpz_fdiv_q(r.get_mpz_t(), x.get_num().get_mpz_t(), x.get_den().get_mpz_t());
  return r;
}

BigInt rat_ceil(const BigRat& x) {
  BigInt r;
  mpz_cdiv_q(r.get_mpz_t(), x.get_num().get_mpz_t(), x.get_den().get_mpz_t());
  return r;
}

BigInt nearest_int(const BigRat& x) {
  BigInt fl = rat_floor(x);
  BigRat frac = x - BigRat(fl);
  if (frac < BigRat(1, 2)) return fl;
  if (frac > BigRat(1, 2)) return fl + 1;
  // tie: round to even
  return mpz_even_p(fl.get_mpz_t()) ? fl : fl + 1;
}

BigRat make_rat(long num, long den) {
  BigRat r(num, den);
  r.canonicalize();
  return r;
}

BigRat pow2_rat(long e) {
  BigInt p = 1;
  mpz_mul_2exp(p.get_mpz_t(), p.get_mpz_t(), static_cast<unsigned long>(e < 0 ? -e : e));
  BigRat r;
  if (e >= 0)
    r = BigRat(p);
  else {
    r = BigRat(1, p);
    r.canonicalize();
  }
  return r;
}

std::pair<BigRat, int> parse_decimal(const std::string& s) {
  std::string t = s;
  bool neg = false;
  size_t i = 0;
  if (i < t.size() && (t[i] == '+' || t[i] == '-')) {
    neg = t[i] == '-';
    ++i;
  }
  std::string digits;
  int frac = 0;
  bool seen_dot = false, seen_digit = false;
  for (; i < t.size(); ++i) {
    char c = t[i];
    if (c == '.') {
      if (seen_dot) throw std::invalid_argument("bad decimal: " + s);
      seen_dot = true;
    } else if (c >= '0' && c <= '9') {
      digits += c;
      seen_digit = true;
      if (seen_dot) ++frac;
    } else {
      throw std::invalid_argument("bad decimal: " + s);
    }
  }
  if (!seen_digit) throw std::invalid_argument("bad decimal: " + s);
  BigInt num;
  // explicit base 10: the auto-detecting constructor reads "025" as octal
  if (mpz_set_str(num.get_mpz_t(), digits.empty() ? "0" : digits.c_str(), 10) != 0)
    throw std::invalid_argument("bad decimal: " + s);
  BigInt den = 1;
  mpz_ui_pow_ui(den.get_mpz_t(), 10, static_cast<unsigned long>(frac));
  BigRat v(num, den);
  v.canonicalize();
  if (neg) v = -v;
  return {v, frac};
}

BigRat parse_rational(const std::string& s) {
  auto slash = s.find('/');
  if (slash != std::string::npos) {
    BigInt num, den;
    if (mpz_set_str(num.get_mpz_t(), s.substr(0, slash).c_str(), 10) != 0 ||
        mpz_set_str(den.get_mpz_t(), s.substr(slash + 1).c_str(), 10) != 0)
      throw std::invalid_argument("bad rational: " + s);
    if (den == 0) throw std::invalid_argument("zero denominator: " + s);
    BigRat r(num, den);
    r.canonicalize();
    return r;
  }
  return parse_decimal(s).first;
}

Enclosure::Enclosure(BigRat l, BigRat h) : lo(std::move(l)), hi(std::move(h)) {
  if (lo > hi) throw std::invalid_argument("enclosure with lo > hi");
}

Enclosure Enclosure::point(const BigRat& v) { return Enclosure(v, v); }

bool Enclosure::contains_zero() const { return lo <= 0 && hi >= 0; }

Enclosure Enclosure::operator+(const Enclosure& o) const {
  return Enclosure(lo + o.lo, hi + o.hi);
}

Enclosure Enclosure::operator-(const Enclosure& o) const {
  return Enclosure(lo - o.hi, hi - o.lo);
}

Enclosure Enclosure::operator*(const Enclosure& o) const {
  BigRat a = lo * o.lo, b = lo * o.hi, c = hi * o.lo, d = hi * o.hi;
  return Enclosure(std::min(std::min(a, b), std::min(c, d)),
                   std::max(std::max(a, b), std::max(c, d)));
}

Enclosure Enclosure::operator*(const BigRat& r) const {
  if (r >= 0) return Enclosure(lo * r, hi * r);
  return Enclosure(hi * r, lo * r);
}

Enclosure Enclosure::operator/(const Enclosure& o) const {
  if (o.contains_zero()) throw Undecidable("division by enclosure containing zero");
  BigRat il = 1 / o.hi, ih = 1 / o.lo;
  return *this * Enclosure(il, ih);
}

Enclosure Enclosure::operator/(const BigRat& r) const {
  if (r == 0) throw Undecidable("division by zero");
  return *this * (1 / r);
}

Enclosure Enclosure::abs() const {
  if (lo >= 0) return *this;
  if (hi <= 0) return -*this;
  BigRat n = -lo;
  return Enclosure(BigRat(0), std::max(n, hi));
}

Enclosure Enclosure::square() const {
  Enclosure a = abs();
  return Enclosure(a.lo * a.lo, a.hi * a.hi);
}

Enclosure Enclosure::hull(const Enclosure& a, const Enclosure& b) {
  return Enclosure(std::min(a.lo, b.lo), std::max(a.hi, b.hi));
}

Enclosure Enclosure::meet(const Enclosure& a, const Enclosure& b) {
  BigRat l = std::max(a.lo, b.lo), h = std::min(a.hi, b.hi);
  if (l > h) throw Undecidable("disjoint enclosures in meet");
  return Enclosure(l, h);
}

Enclosure sqrt_enclosure(const BigInt& d, const BigRat& width) {
  if (d < 0) throw std::invalid_argument("sqrt of negative integer");
  if (width <= 0) throw std::invalid_argument("nonpositive width");
  if (is_perfect_square(d)) {
    BigRat v(isqrt_floor(d));
    return Enclosure::point(v);
  }
  // s/2^k <= sqrt(d) < (s+1)/2^k with s = floor(sqrt(d * 4^k))
  unsigned long k = 1;
  while (pow2_rat(-static_cast<long>(k)) > width) ++k;
  BigInt scaled = d;
  mpz_mul_2exp(scaled.get_mpz_t(), scaled.get_mpz_t(), 2 * k);
  BigInt s = isqrt_floor(scaled);
  BigInt den = 1;
  mpz_mul_2exp(den.get_mpz_t(), den.get_mpz_t(), k);
  BigRat lo(s, den), hi(s + 1, den);
  lo.canonicalize();
  hi.canonicalize();
  return Enclosure(lo, hi);
}

Enclosure sqrt_rat_enclosure(const BigRat& x, const BigRat& width) {
  if (x < 0) throw std::invalid_argument("sqrt of negative rational");
  if (x == 0) return Enclosure::point(BigRat(0));
  // sqrt(n/d) = sqrt(n*d)/d
  const BigInt& n = x.get_num();
  const BigInt& d = x.get_den();
  Enclosure s = sqrt_enclosure(n * d, width * d);
  return s / BigRat(d);
}

Enclosure sqrt_enclosure(const Enclosure& x, const BigRat& width) {
  if (x.lo < 0) throw std::invalid_argument("sqrt of possibly-negative enclosure");
  Enclosure a = sqrt_rat_enclosure(x.lo, width);
  Enclosure b = sqrt_rat_enclosure(x.hi, width);
  return Enclosure(a.lo, b.hi);
}

namespace {

// floor of the cube root of a nonnegative integer
BigInt icbrt_floor(const BigInt& n) {
  BigInt r;
  mpz_root(r.get_mpz_t(), n.get_mpz_t(), 3);
  return r;
}

Enclosure cbrt_rat_enclosure(const BigRat& x, const BigRat& width) {
  if (x < 0) throw std::invalid_argument("cbrt of negative rational");
  if (x == 0) return Enclosure::point(BigRat(0));
  // cbrt(n/d) = cbrt(n*d^2)/d; scale by 8^k for precision
  const BigInt& n = x.get_num();
  const BigInt& d = x.get_den();
  BigInt m = n * d * d;
  unsigned long k = 1;
  while (pow2_rat(-static_cast<long>(k)) > width * d) ++k;
  BigInt scaled = m;
  mpz_mul_2exp(scaled.get_mpz_t(), scaled.get_mpz_t(), 3 * k);
  BigInt s = icbrt_floor(scaled);
  BigInt den = d;
  mpz_mul_2exp(den.get_mpz_t(), den.get_mpz_t(), k);
  BigRat lo(s, den), hi(s + 1, den);
  lo.canonicalize();
  hi.canonicalize();
  return Enclosure(lo, hi);
}

}  // namespace

Enclosure cbrt_enclosure(const Enclosure& x, const BigRat& width) {
  if (x.lo < 0) throw std::invalid_argument("cbrt of possibly-negative enclosure");
  Enclosure a = cbrt_rat_enclosure(x.lo, width);
  Enclosure b = cbrt_rat_enclosure(x.hi, width);
  return Enclosure(a.lo, b.hi);
}

namespace {

BigRat dist_to_int(const BigRat& r) {
  BigInt fl = rat_floor(r);
  BigRat a = r - BigRat(fl);
  BigRat b = 1 - a;
  return std::min(a, b);
}

bool contains_integer(const BigRat& lo, const BigRat& hi) {
  return rat_floor(hi) >= rat_ceil(lo);
}

}  // namespace

Enclosure nearest_int_distance(const Enclosure& x) {
  if (x.width() >= BigRat(1, 4))
    throw AmbiguousEnclosure("enclosure too wide to localize nearest integer");
  BigRat dlo = dist_to_int(x.lo), dhi = dist_to_int(x.hi);
  BigRat mn = std::min(dlo, dhi), mx = std::max(dlo, dhi);
  if (contains_integer(x.lo, x.hi)) mn = 0;
  // half-integer inside: 2x straddles an odd integer
  BigRat two_lo = 2 * x.lo, two_hi = 2 * x.hi;
  if (contains_integer(two_lo, two_hi) && !contains_integer(x.lo, x.hi)) mx = BigRat(1, 2);
  return Enclosure(mn, mx);
}

bool QuadraticSurd::valid() const {
  return d > 0 && !is_perfect_square(d) && q != 0;
}

QuadraticSurd QuadraticSurd::canonical() const {
  BigInt rem = (d - p * p) % q;
  if (rem == 0) return *this;
  BigInt aq = ::abs(q);
  return QuadraticSurd{p * aq, d * aq * aq, q * aq};
}

Enclosure QuadraticSurd::refine(const BigRat& width) const {
  if (!valid()) throw std::invalid_argument("invalid quadratic surd");
  BigRat w = width * ::abs(q);
  Enclosure s = sqrt_enclosure(d, w);
  return (s + BigRat(p)) / BigRat(q);
}

QuadraticSurd QuadraticSurd::sqrt_of(const BigInt& dd) {
  return QuadraticSurd{BigInt(0), dd, BigInt(1)};
}

QuadraticSurd QuadraticSurd::metallic(const BigInt& b) {
  return QuadraticSurd{b, b * b + 4, BigInt(2)};
}

RealSpec RealSpec::surd(const QuadraticSurd& s) {
  if (!s.valid()) throw std::invalid_argument("invalid quadratic surd");
  RealSpec r;
  r.kind_ = Kind::Surd;
  r.surd_ = s;
  return r;
}

RealSpec RealSpec::rational(const BigRat& v) {
  RealSpec r;
  r.kind_ = Kind::Rational;
  r.value_ = v;
  return r;
}

RealSpec RealSpec::literal(const std::string& decimal) {
  auto [v, digits] = parse_decimal(decimal);
  RealSpec r;
  r.kind_ = Kind::Literal;
  r.value_ = v;
  BigInt den = 1;
  mpz_ui_pow_ui(den.get_mpz_t(), 10, static_cast<unsigned long>(digits));
  r.literal_width_ = BigRat(1, den);
  r.literal_width_.canonicalize();
  r.text_ = decimal;
  return r;
}

Enclosure RealSpec::refine(const BigRat& width) const {
  if (width <= 0) throw std::invalid_argument("nonpositive width");
  switch (kind_) {
    case Kind::Rational:
      return Enclosure::point(value_);
    case Kind::Surd:
      if (!cache_ || cache_->width() > width)
        cache_ = std::make_shared<Enclosure>(surd_.refine(width));
      return *cache_;
    case Kind::Literal:
      if (width < literal_width_)
        throw PrecisionExhausted("literal declared only " + text_);
      return Enclosure(value_, value_ + literal_width_);
  }
  throw std::logic_error("unreachable");
}

BigRat RealSpec::best_width() const {
  return kind_ == Kind::Literal ? literal_width_ : BigRat(0);
}

std::string RealSpec::describe() const {
  std::ostringstream os;
  switch (kind_) {
    case Kind::Rational:
      os << value_.get_str();
      break;
    case Kind::Surd:
      os << "(" << surd_.p.get_str() << "+sqrt(" << surd_.d.get_str() << "))/"
         << surd_.q.get_str();
      break;
    case Kind::Literal:
      os << "literal:" << text_;
      break;
  }
  return os.str();
}

Enclosure eval_form_rat(const BigRat& x, const BigRat& y, const BigRat& z,
                        const RealSpec& alpha, const RealSpec& beta,
                        const BigRat& width) {
  if (x == 0) return Enclosure::point(BigRat(0));
  if (alpha.is_exact_rational() && beta.is_exact_rational()) {
    BigRat v = x * (alpha.rational_value() * x - y) * (beta.rational_value() * x - z);
    return Enclosure::point(v);
  }
  BigRat floor_w = std::max(alpha.best_width(), beta.best_width());
  BigRat w = pow2_rat(-32);
  Enclosure result;
  for (int iter = 0; iter < precision_cap(); ++iter) {
    BigRat wr = std::max(w, floor_w);
    Enclosure ea = alpha.refine(std::max(wr, alpha.best_width()));
    Enclosure eb = beta.refine(std::max(wr, beta.best_width()));
    Enclosure ra = ea * x - Enclosure::point(y);
    Enclosure rb = eb * x - Enclosure::point(z);
    result = Enclosure::point(x) * ra * rb;
    if (result.width() <= width) return result;
    if (wr == floor_w && w < floor_w)
      throw PrecisionExhausted("literal precision insufficient for requested width");
    // scale by the observed amplification (result width per unit of input
    // enclosure width) so the next request lands below the target
    BigRat win = std::max(ea.width(), eb.width());
    if (win > 0 && result.width() > 0) {
      BigRat scaled = width * win / result.width() / 4;
      w = std::min(BigRat(w / 2), scaled);
    } else {
      w = w / 2;
    }
  }
  throw PrecisionExhausted("eval_form could not reach requested width");
}

Enclosure eval_form(const BigInt& x, const BigInt& y, const BigInt& z,
                    const RealSpec& alpha, const RealSpec& beta,
                    const BigRat& width) {
  return eval_form_rat(BigRat(x), BigRat(y), BigRat(z), alpha, beta, width);
}

}  // namespace lw
