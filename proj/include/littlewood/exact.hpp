#pragma once

#include <gmpxx.h>

#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>

namespace lw {

using BigInt = mpz_class;
using BigRat = mpq_class;

// Error channels shared across the library.
struct AmbiguousEnclosure : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct PrecisionExhausted : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct Undecidable : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct BranchUndecidable : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct EmptyWindow : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct NotAWitness : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct ZeroFirstCoordinate : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct NoMultipleInInterval : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct FactorizationTimeout : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Maximum number of precision doublings in adaptive refinement loops.
/// Overridable through the LF_PRECISION_CAP environment variable.
int precision_cap();

BigInt isqrt_floor(const BigInt& n);
bool is_perfect_square(const BigInt& n);

/// Nearest integer to a rational; ties round to even.
BigInt nearest_int(const BigRat& x);

/// Floor / ceil of a rational as integers.
BigInt rat_floor(const BigRat& x);
BigInt rat_ceil(const BigRat& x);

BigRat make_rat(long num, long den = 1);
BigRat pow2_rat(long e);  // 2^e as a rational, e may be negative

/// Parse "p/q", a plain integer, or a decimal string ("3.14", "-0.5").
BigRat parse_rational(const std::string& s);

/// Decimal string -> (value, fractional digit count).
std::pair<BigRat, int> parse_decimal(const std::string& s);

/// A real number known to lie in [lo, hi].  All arithmetic contains the
/// exact result; over rationals the interval operations are themselves exact.
struct Enclosure {
  BigRat lo;
  BigRat hi;

  Enclosure() = default;
  Enclosure(BigRat l, BigRat h);
  static Enclosure point(const BigRat& v);

  BigRat width() const { return hi - lo; }
  BigRat mid() const { return (lo + hi) / 2; }

  bool contains(const BigRat& v) const { return lo <= v && v <= hi; }
  bool contains_zero() const;
  bool surely_positive() const { return lo > 0; }
  bool surely_negative() const { return hi < 0; }

  Enclosure operator-() const { return Enclosure(-hi, -lo); }
  Enclosure operator+(const Enclosure& o) const;
  Enclosure operator-(const Enclosure& o) const;
  Enclosure operator*(const Enclosure& o) const;
  /// Division; throws Undecidable when o contains zero.
  Enclosure operator/(const Enclosure& o) const;

  Enclosure operator+(const BigRat& r) const { return *this + point(r); }
  Enclosure operator-(const BigRat& r) const { return *this - point(r); }
  Enclosure operator*(const BigRat& r) const;
  Enclosure operator/(const BigRat& r) const;

  Enclosure abs() const;
  Enclosure square() const;

  /// Smallest interval containing both.
  static Enclosure hull(const Enclosure& a, const Enclosure& b);
  /// Intersection; throws Undecidable when disjoint.
  static Enclosure meet(const Enclosure& a, const Enclosure& b);
};

inline Enclosure operator*(const BigRat& r, const Enclosure& e) { return e * r; }
inline Enclosure operator+(const BigRat& r, const Enclosure& e) { return e + r; }

/// Certified comparisons.  "certainly" means for every pair of represented values.
inline bool certainly_le(const Enclosure& a, const Enclosure& b) { return a.hi <= b.lo; }
inline bool certainly_lt(const Enclosure& a, const Enclosure& b) { return a.hi < b.lo; }
inline bool certainly_le(const Enclosure& a, const BigRat& b) { return a.hi <= b; }
inline bool certainly_lt(const Enclosure& a, const BigRat& b) { return a.hi < b; }
inline bool certainly_ge(const Enclosure& a, const BigRat& b) { return a.lo >= b; }
inline bool certainly_gt(const Enclosure& a, const BigRat& b) { return a.lo > b; }

/// Enclosure of sqrt(d) for a nonnegative integer, of width <= width.
Enclosure sqrt_enclosure(const BigInt& d, const BigRat& width);

/// Enclosure of sqrt(x) for a nonnegative rational, of width <= width.
Enclosure sqrt_rat_enclosure(const BigRat& x, const BigRat& width);

/// Outward sqrt of an enclosure (requires x.lo >= 0).
Enclosure sqrt_enclosure(const Enclosure& x, const BigRat& width);

/// Outward cube root of a nonnegative enclosure.
Enclosure cbrt_enclosure(const Enclosure& x, const BigRat& width);

/// Distance to the nearest integer, as an enclosure of values in [0, 1/2].
/// Requires x.width() < 1/4, otherwise AmbiguousEnclosure.
Enclosure nearest_int_distance(const Enclosure& x);

/// (P + sqrt(D)) / Q with D > 0 not a perfect square and Q != 0.
struct QuadraticSurd {
  BigInt p;
  BigInt d;
  BigInt q;

  bool valid() const;
  /// Scale so that q | d - p^2, as required by the surd CF algorithm.
  QuadraticSurd canonical() const;
  Enclosure refine(const BigRat& width) const;

  static QuadraticSurd sqrt_of(const BigInt& d);
  /// (b + sqrt(b^2+4)) / 2, the surd with constant partial quotient b.
  static QuadraticSurd metallic(const BigInt& b);
};

/// A real input: an exact quadratic surd, an exact rational, or a decimal
/// literal carried with its declared precision.
class RealSpec {
 public:
  enum class Kind { Surd, Rational, Literal };

  static RealSpec surd(const QuadraticSurd& s);
  static RealSpec rational(const BigRat& v);
  /// Truncated decimal literal: the value lies in [v, v + 10^-digits].
  static RealSpec literal(const std::string& decimal);

  Kind kind() const { return kind_; }
  bool is_exact_rational() const { return kind_ == Kind::Rational; }
  const BigRat& rational_value() const { return value_; }
  const QuadraticSurd& surd_value() const { return surd_; }

  /// Enclosure of the represented real with width <= width when possible.
  /// A literal refines only down to its declared width (PrecisionExhausted
  /// beyond that); surds and rationals refine arbitrarily.
  Enclosure refine(const BigRat& width) const;

  /// Smallest width this spec can be refined to (0 for surds and rationals).
  BigRat best_width() const;

  std::string describe() const;

 private:
  Kind kind_ = Kind::Rational;
  BigRat value_;            // rational / literal value
  BigRat literal_width_;    // declared width for literals
  QuadraticSurd surd_{};
  std::string text_;
  // tightest surd enclosure computed so far, reused for wider requests
  mutable std::shared_ptr<Enclosure> cache_;
};

/// Certified enclosure of the Littlewood form f(x,y,z) = x(ax-y)(bx-z),
/// of width <= width (exact zero-width for all-rational inputs).
Enclosure eval_form(const BigInt& x, const BigInt& y, const BigInt& z,
                    const RealSpec& alpha, const RealSpec& beta,
                    const BigRat& width);

/// Same form evaluated at a rational point (internal cross-checks).
Enclosure eval_form_rat(const BigRat& x, const BigRat& y, const BigRat& z,
                        const RealSpec& alpha, const RealSpec& beta,
                        const BigRat& width);

}  // namespace lw
