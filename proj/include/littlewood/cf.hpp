#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "littlewood/exact.hpp"

namespace lw {

/// Partial quotients a_0, a_1, ... together with the convergents p_k/q_k.
struct ConvergentTable {
  std::vector<BigInt> quotients;
  std::vector<std::pair<BigInt, BigInt>> convergents;  // (p_k, q_k)
  /// (preperiod length, period length) when the expansion is periodic.
  std::optional<std::pair<int, int>> period;
  /// False when a literal expansion stopped early because the enclosure
  /// could no longer certify a quotient; quotients.size() then reports how
  /// many were certified.
  bool complete = true;

  const BigInt& p(size_t k) const { return convergents.at(k).first; }
  const BigInt& q(size_t k) const { return convergents.at(k).second; }
  size_t size() const { return quotients.size(); }
};

/// Exact expansion of a quadratic surd; period detected by state repetition.
ConvergentTable cf_expand_surd(const QuadraticSurd& s, int count);

/// Enclosure-driven expansion of a rational or decimal-literal spec.  Each
/// emitted quotient is certified; stops early (complete=false) when the
/// enclosure straddles an integer.  Throws AmbiguousEnclosure if not even
/// the first quotient can be certified.
ConvergentTable cf_expand_literal(const RealSpec& x, int count);

/// Dispatch on the spec kind.
ConvergentTable cf_expand(const RealSpec& x, int count);

/// q_n of (b + sqrt(b^2+4))/2 via the recurrence q_{n+1} = b q_n + q_{n-1},
/// q_0 = 1, q_1 = b.
BigInt metallic_q(const BigInt& b, int n);

/// Same value through the binomial closed form sum_k C(n-k,k) b^{n-2k}.
BigInt metallic_q_closed(const BigInt& b, int n);

/// e_n = alpha - p_n/q_n with its two-sided bound for even n.
struct ErrorRecord {
  int n = 0;
  Enclosure e;
  BigRat lower;  // 1 / (2 q_{n+1}^2)
  BigRat upper;  // 1 / q_n^2
  bool verified = false;  // lower <= e <= upper and e > 0, certified
};

ErrorRecord error_record(const RealSpec& alpha, const ConvergentTable& table, int n);

/// Certified lower bound of min_{1<=q<=Q} q * ||q alpha|| (an empirical
/// under-approximation of the bad-approximation constant).
BigRat bad_approx_estimate(const RealSpec& alpha, long Q);

}  // namespace lw
