#pragma once

#include <optional>
#include <vector>

#include "littlewood/cf.hpp"

namespace lw {

/// A candidate pair alpha = (a+sqrt(a^2+4))/2, beta = (b+sqrt(b^2+4))/2.
struct MetallicPair {
  BigInt a, b;  // 1 <= a < b
  QuadraticSurd alpha, beta;
  bool independent = false;  // a does not divide b

  static MetallicPair make(const BigInt& a, const BigInt& b);
};

/// Enclosure of psi(x) = ln(x-1)/ln(x) for rational x > 1; increasing on
/// [2, oo) with limit 1.
Enclosure psi(const BigRat& x, const BigRat& width);

/// The unique b > 2 with psi(b) = 11/12 + eta/4, by bisection; width <= tol.
Enclosure critical_b(const BigRat& eta, const BigRat& tol);

/// True iff [b^{11/12 + eta/4}, b] contains an integer; exact integer-power
/// comparisons only.
bool window_has_integer(const BigInt& b, const BigRat& eta);

/// All pairs with critical_b(eta) < b <= b_max and b^{11/12+eta/4} < a < b.
std::vector<MetallicPair> enumerate_pairs(const BigRat& eta, const BigInt& b_max);

/// Exact verification of q_{2n}(beta)^{11/12+eta/4} <= q_{2n}(alpha) <= q_{2n}(beta)
/// for each n in [n_lo, n_hi].
struct RatioVerdict {
  int n = 0;
  BigInt q_a, q_b;
  bool lower_ok = false;  // q_b^{11/12+eta/4} <= q_a
  bool upper_ok = false;  // q_a <= q_b
};

std::vector<RatioVerdict> ratio_check(const MetallicPair& pair, const BigRat& eta,
                                      int n_lo, int n_hi);

struct PrimePower {
  BigInt p;
  unsigned long e = 0;
};

struct FactorizationReport {
  int n = 0;
  BigInt q_a, q_b, l;
  std::vector<PrimePower> factors_a, factors_b;
  bool complete_a = true, complete_b = true;  // false: unfactored cofactor left
  std::vector<size_t> I_n;  // indices (into merged prime list) with e_a > e_b
  std::vector<BigInt> primes;  // merged sorted prime list of l
  size_t r_n = 0;           // number of distinct primes of l
  BigInt gpf_a, gpf_b;      // greatest prime factors (0 when unknown)
  Enclosure eta_min;        // ln l / ln q_b - 1
  std::optional<bool> lcm_ok;        // l <= q_b^{1+eta}, exact
  std::optional<bool> sufficient_ok; // the prime-exponent sufficient condition
};

/// Factor both q_{2n}, assemble the index set and both verdicts.  Cofactors
/// that resist the factoring budget leave the affected verdict unset.
FactorizationReport lcm_condition(const MetallicPair& pair, int n, const BigRat& eta);

/// Best-effort factorization used by lcm_condition; exposed for testing.
/// Returns prime powers in increasing prime order.  When a composite
/// cofactor survives the budget it is omitted from the list, *complete is
/// set to false and *cofactor receives it.
std::vector<PrimePower> factorize(const BigInt& n, bool* complete, BigInt* cofactor);

}  // namespace lw
