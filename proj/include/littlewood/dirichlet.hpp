#pragma once

#include <vector>

#include "littlewood/cf.hpp"
#include "littlewood/exact.hpp"

namespace lw {

/// Lattice point (x, y, z), 1 <= x <= N, with |alpha x - y| and |beta x - z|
/// both at most N^{-1/2}.  The comparisons are certified as res^2 * N <= 1
/// in exact rational arithmetic.
struct DirichletPoint {
  BigInt N;
  BigInt x, y, z;
  Enclosure res_alpha;  // alpha*x - y
  Enclosure res_beta;   // beta*x - z
};

/// Smallest x in [1, N] satisfying both constraints.  Small N uses a direct
/// scan; large N enumerates candidates from the Ostrowski digit expansion of
/// x against the continued fraction of alpha (conservative fixed-point
/// pruning), then certifies exactly.
DirichletPoint find_dirichlet_point(const RealSpec& alpha, const RealSpec& beta,
                                    const BigInt& N);

enum class PointClass { ImmediateWitness, Outside };

struct PointClassification {
  PointClass cls;
  Enclosure f_value;   // f(M) = x * res_alpha * res_beta
  bool bound_ok = false;  // when Outside: eps*N <= x <= N verified
};

/// Decide |f(M)| <= eps (ImmediateWitness) or > eps (Outside, with the
/// eps*N <= x <= N bound reported).  Throws Undecidable when the enclosure
/// straddles eps after the refinement cap.
PointClassification classify_point(const DirichletPoint& pt, const BigRat& eps,
                                   const RealSpec& alpha, const RealSpec& beta);

/// True iff C/x < |res_alpha| and C/x < |res_beta|, certified.
bool badness_check(const DirichletPoint& pt, const BigRat& C);

}  // namespace lw
