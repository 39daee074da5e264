#pragma once

#include <optional>
#include <vector>

#include "littlewood/cubic.hpp"

namespace lw {

/// Enclosure of ln(a)/ln(b) for integers a >= 1, b >= 2.
Enclosure log_ratio_enclosure(const BigInt& a, const BigInt& b, long prec_bits = 128);

/// Enclosure of ln(a)/ln(b) for rationals a > 0, b > 1.
Enclosure log_rat_ratio_enclosure(const BigRat& a, const BigRat& b, long prec_bits = 128);

/// Enclosure of b^e for integer b >= 2 and rational e.
Enclosure pow_enclosure(const BigInt& b, const BigRat& e, long prec_bits = 128);

/// floor(b^(u/v)) computed exactly by integer root extraction.
BigInt floor_pow(const BigInt& b, const BigRat& e);

struct HypothesisReport {
  int n = 0;
  BigInt q_a, q_b;
  Enclosure gamma;    // ln q_a / ln q_b
  BigInt l;           // lcm(q_a, q_b)
  Enclosure eta_min;  // ln l / ln q_b - 1
  bool cond1 = false; // q_b^{11/12 + eta/4} <= q_a <= q_b, exact
  bool cond2 = false; // l <= q_b^{1 + eta}, exact
  BigRat eta;
};

HypothesisReport check_hypotheses(const ConvergentTable& tbl_alpha,
                                  const ConvergentTable& tbl_beta, int n,
                                  const BigRat& eta);

struct DeltaWindow {
  BigRat lo;       // always 4/3 (open endpoint)
  Enclosure hi;    // (3 + 4 gamma - eta)/5
  BigRat chosen;   // rational midpoint, certified inside the window
};

/// Throws EmptyWindow unless gamma > 11/12 + eta/4 is certified.
DeltaWindow delta_window(const Enclosure& gamma, const BigRat& eta);

struct WitnessCertificate {
  BigInt x, y, z;
  Enclosure f_value;
  BigRat epsilon;
  BigInt t;         // line parameter, = k * l
  int n = 0;
  BigInt l, k;      // provenance: t = k * l
};

/// Certifies 0 < |f(u)| <= epsilon; throws NotAWitness, ZeroFirstCoordinate,
/// or Undecidable.
WitnessCertificate verify_witness(const BigInt& x, const BigInt& y, const BigInt& z,
                                  const RealSpec& alpha, const RealSpec& beta,
                                  const BigRat& epsilon);

struct SigmaDiagnostics {
  // reported ratios; the exponents are part of the field meaning:
  // sigma1 / q_b^delta, sigma2 / (q_b^{2(1+gamma)-delta} + q_b^{2+delta/2}),
  // sigma3 / q_b^{2(1+gamma)}, -P / q_b^{2 delta}, lambda(I_1)/l
  Enclosure sigma1_ratio, sigma2_ratio, sigma3_ratio, negP_ratio, length_ratio;
  bool cos_branch = false;
  // on the cos branch: C(eps)-C(-eps) identity and the interval-length
  // lower bound lambda(I_1) >= sqrt(-P)|C(eps)-C(-eps)|^2 / (36 sqrt 3)
  bool c_identity_ok = false;
  bool length_bound_ok = false;
};

SigmaDiagnostics sigma_diagnostics(const CubicModel& model, const BigRat& delta,
                                   const Enclosure& gamma, const SublevelSet& levelset,
                                   const BigInt& l_n, const BigInt& q_b);

struct StageReport {
  int n = 0;
  BigRat delta;
  BigInt N;
  DirichletPoint point;
  HypothesisReport hypotheses;
  std::optional<CubicModel> model;
  std::optional<SublevelSet> levelset;
  int selected_interval = -1;
  std::vector<BigInt> multiples_found;  // the t = k*l values in the interval
  std::optional<WitnessCertificate> witness;
  std::optional<SigmaDiagnostics> diagnostics;
  bool immediate = false;  // witness found at the Dirichlet point itself
};

/// One full stage at index n: Dirichlet point, cubic model, level set,
/// multiple search, certification.  Cond1 is required (EmptyWindow otherwise);
/// cond2 is recorded but not required.  Throws NoMultipleInInterval when the
/// selected interval holds no multiple of l.
StageReport run_stage(const RealSpec& alpha, const RealSpec& beta,
                      const ConvergentTable& tbl_alpha, const ConvergentTable& tbl_beta,
                      int n, const BigRat& eta, const BigRat& epsilon);

struct LittlewoodTerm {
  long n;
  Enclosure value;     // n * ||n alpha|| * ||n beta||
  BigRat prefix_min;   // smallest certified upper bound so far
};

std::vector<LittlewoodTerm> littlewood_min(const RealSpec& alpha, const RealSpec& beta,
                                           long Q);

}  // namespace lw
