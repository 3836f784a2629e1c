#pragma once

#include <optional>
#include <string>

#include "sdof/linalg.hpp"

namespace sdof {

/// Ranks of the two legitimate channels and of their stack, plus the derived
/// common-subspace dimension s = r1 + r2 − r0 and private dimensions.
struct RankProfile {
  int r1 = 0;
  int r2 = 0;
  int r0 = 0;
  int s = 0;
  int rt1 = 0;  // r1 − s
  int rt2 = 0;  // r2 − s

  /// Builds a profile from (r1, r2, s); throws ErrorKind::input unless
  /// 0 <= s <= min(r1, r2).
  static RankProfile from_ranks(int r1, int r2, int s);

  /// Builds a profile from measured (r1, r2, r0); throws ErrorKind::numerical
  /// when the triple cannot come from a pair of matrices.
  static RankProfile from_measured(int r1, int r2, int r0);

  friend bool operator==(const RankProfile&, const RankProfile&) = default;
};

std::string to_string(const RankProfile& p);

struct GsvdOptions {
  /// Absolute singular-value threshold applied to H1, H2 and the stack.
  /// Unset: max(rows, cols)·ε·σ_max of each matrix.
  std::optional<double> rank_tol;
};

/// Factors of U1ᴴ·H1·Q = Σ1·[Wᴴ·R, 0] and Vᴴ·H2·Q = Σ2·[Wᴴ·R, 0].
///
/// The r0 columns of Σ1/Σ2 are ordered [private to 1 | common | private to 2].
/// Σ1 = [I_rt1, 0, 0; 0, S1, 0; 0, 0, 0] (top-aligned rows) and
/// Σ2 = [0, 0, 0; 0, S2, 0; 0, 0, I_rt2] (bottom-aligned rows), with
/// S1² + S2² = I and diag(S1) descending.
struct GsvdFactors {
  ComplexMatrix u;      // N_R1 x N_R1
  ComplexMatrix v;      // N_R2 x N_R2
  ComplexMatrix w;      // r0 x r0
  ComplexMatrix q;      // N_T x N_T
  ComplexMatrix r_tri;  // r0 x r0, upper triangular, nonsingular
  ComplexMatrix sigma1; // N_R1 x r0
  ComplexMatrix sigma2; // N_R2 x r0
  RealVector cosines;   // r0 entries: 1 on private-1, S1 on common, 0 on private-2
  RealVector sines;     // r0 entries: complement of the above
  RankProfile profile;

  /// Some singular value of H1, H2 or the stack sat within 10x of the rank
  /// threshold, so the profile depends on the tolerance choice.
  bool rank_ambiguous = false;
  double rank_tol_h1 = 0.0;
  double rank_tol_h2 = 0.0;
  double rank_tol_stack = 0.0;

  /// ‖Uᴴ H1 Q − Σ1[WᴴR, 0]‖_F / ‖H1‖_F and the same for H2.
  double residual1 = 0.0;
  double residual2 = 0.0;

  /// P = Wᴴ·R, the r0 x r0 input transform of the reduced channel.
  ComplexMatrix p() const { return w.adjoint() * r_tri; }
};

/// Generalized singular value decomposition of a pair sharing N_T columns.
/// Throws ErrorKind::dimension_mismatch on column disagreement and
/// ErrorKind::degenerate when either matrix is zero.
GsvdFactors gsvd(const ComplexMatrix& h1, const ComplexMatrix& h2, const GsvdOptions& options = {});

/// Relative reconstruction residuals of an existing factorization.
double gsvd_residual(const ComplexMatrix& h, const ComplexMatrix& left, const ComplexMatrix& sigma,
                     const GsvdFactors& f);

}  // namespace sdof
