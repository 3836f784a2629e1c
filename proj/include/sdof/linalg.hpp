#pragma once

// Dense complex linear algebra used by the channel reduction: Householder QR,
// one-sided Jacobi SVD, numerical rank and the CS decomposition of a
// partitioned matrix with orthonormal columns.

#include <complex>
#include <cstddef>
#include <optional>

#include <Eigen/Dense>

namespace sdof {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;

/// Default tolerances shared by the decompositions and their checks.
inline constexpr double kUnitaryTol = 1e-10;
inline constexpr double kReconstructionTol = 1e-10;

bool all_finite(const ComplexMatrix& a);

/// ‖MᴴM − I‖_F
double unitarity_defect(const ComplexMatrix& m);

/// Vertical concatenation [top; bottom]. Column counts must agree.
ComplexMatrix vstack(const ComplexMatrix& top, const ComplexMatrix& bottom);

struct QrFactors {
  ComplexMatrix q;  // m x m unitary
  ComplexMatrix r;  // m x n upper trapezoidal, real nonnegative diagonal
};

/// Householder QR with a full unitary factor. The diagonal of R is made real
/// and nonnegative, so the identity factors as I·I.
QrFactors qr_decompose(const ComplexMatrix& a);

struct SvdOptions {
  int max_sweeps = 60;
};

struct SvdFactors {
  ComplexMatrix u;             // m x m unitary
  RealVector singular_values;  // min(m, n), descending
  ComplexMatrix v;             // n x n unitary
  int sweeps = 0;
};

/// A = U·diag(σ)·Vᴴ via one-sided (Hestenes) Jacobi rotations.
/// Throws ErrorKind::numerical when the sweep cap is reached before all
/// column pairs are orthogonal to working precision.
SvdFactors svd(const ComplexMatrix& a, const SvdOptions& options = {});

/// max(rows, cols) · ε · σ_max
double default_rank_tolerance(const ComplexMatrix& a, const RealVector& singular_values);

/// Number of singular values strictly above `tol` (default tolerance when
/// omitted). Empty matrices have rank 0.
std::size_t numerical_rank(const ComplexMatrix& a, std::optional<double> tol = std::nullopt);

/// True when some singular value lies within a factor 10 of `tol`.
bool near_rank_boundary(const RealVector& singular_values, double tol);

struct CsFactors {
  ComplexMatrix u1;  // m1 x m1 unitary
  ComplexMatrix u2;  // m2 x m2 unitary
  ComplexMatrix v1;  // k x k unitary
  RealVector c;      // k cosines, descending, in [0, 1]
  RealVector s;      // k sines, ascending, in [0, 1]
};

/// CS decomposition of a stacked matrix [Q1; Q2] with orthonormal columns:
///   Q1 = U1·C·V1ᴴ,  Q2 = U2·S·V1ᴴ,  C² + S² = I.
/// C is laid out top-aligned (cosine_block), S bottom-aligned (sine_block),
/// which is the GSVD block layout for Σ1 and Σ2.
CsFactors cs_decompose(const ComplexMatrix& q1, const ComplexMatrix& q2);

/// m x k matrix with c(j) at (j, j).
ComplexMatrix cosine_block(const RealVector& c, Eigen::Index rows);

/// m x k matrix with s(j) at (j + m − k, j) for the rows that exist.
ComplexMatrix sine_block(const RealVector& s, Eigen::Index rows);

}  // namespace sdof
