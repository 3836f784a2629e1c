#include "sdof/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <sstream>
#include <vector>

#include "sdof/error.hpp"

namespace sdof {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();

void require_usable(const ComplexMatrix& a, const char* op) {
  if (a.rows() == 0 || a.cols() == 0) {
    throw Error(ErrorKind::dimension_mismatch, std::string(op) + ": empty matrix");
  }
  if (!all_finite(a)) {
    throw Error(ErrorKind::input, std::string(op) + ": non-finite entry");
  }
}

// Largest normalized off-diagonal entry of WᴴW; the Jacobi stopping measure.
double max_column_coupling(const ComplexMatrix& w) {
  double worst = 0.0;
  for (Eigen::Index p = 0; p < w.cols(); ++p) {
    for (Eigen::Index q = p + 1; q < w.cols(); ++q) {
      const double a = w.col(p).norm();
      const double b = w.col(q).norm();
      if (a == 0.0 || b == 0.0) continue;
      worst = std::max(worst, std::abs(w.col(p).dot(w.col(q))) / (a * b));
    }
  }
  return worst;
}

// Tall (rows >= cols) case. Returns U (m x m), σ (n), V (n x n).
SvdFactors jacobi_svd_tall(const ComplexMatrix& a, const SvdOptions& options) {
  const Eigen::Index m = a.rows();
  const Eigen::Index n = a.cols();
  ComplexMatrix w = a;
  ComplexMatrix v = ComplexMatrix::Identity(n, n);
  // Columns below this norm are rounding noise. Rotating them against each
  // other never settles, so they are left alone and reported as such.
  const double negligible = kEps * a.norm();
  const double negligible_sq = negligible * negligible;

  bool converged = n < 2;
  int sweep = 0;
  while (!converged && sweep < options.max_sweeps) {
    ++sweep;
    converged = true;
    for (Eigen::Index p = 0; p + 1 < n; ++p) {
      for (Eigen::Index q = p + 1; q < n; ++q) {
        const double alpha = w.col(p).squaredNorm();
        const double beta = w.col(q).squaredNorm();
        const Complex gamma = w.col(p).dot(w.col(q));  // w_pᴴ w_q
        const double g = std::abs(gamma);
        if (alpha <= negligible_sq || beta <= negligible_sq) continue;
        if (g == 0.0 || g <= kEps * std::sqrt(alpha) * std::sqrt(beta)) continue;
        converged = false;

        // Rotate w_q by the phase of γ so the 2x2 problem is real symmetric.
        const Complex phase = gamma / g;
        const double zeta = (beta - alpha) / (2.0 * g);
        const double t = (zeta >= 0.0 ? 1.0 : -1.0) / (std::abs(zeta) + std::sqrt(1.0 + zeta * zeta));
        const double c = 1.0 / std::sqrt(1.0 + t * t);
        const double s = c * t;

        const ComplexVector wp = w.col(p);
        const ComplexVector wq = std::conj(phase) * w.col(q);
        w.col(p) = c * wp - s * wq;
        w.col(q) = phase * (s * wp + c * wq);

        const ComplexVector vp = v.col(p);
        const ComplexVector vq = std::conj(phase) * v.col(q);
        v.col(p) = c * vp - s * vq;
        v.col(q) = phase * (s * vp + c * vq);
      }
    }
  }
  if (!converged) {
    std::ostringstream msg;
    msg << "svd: no convergence after " << options.max_sweeps
        << " sweeps (max normalized column coupling " << max_column_coupling(w) << ")";
    throw Error(ErrorKind::numerical, msg.str());
  }

  std::vector<Eigen::Index> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), Eigen::Index{0});
  RealVector norms(n);
  for (Eigen::Index j = 0; j < n; ++j) norms(j) = w.col(j).norm();
  std::stable_sort(order.begin(), order.end(),
                   [&](Eigen::Index x, Eigen::Index y) { return norms(x) > norms(y); });

  SvdFactors out;
  out.sweeps = sweep;
  out.singular_values.resize(n);
  out.v.resize(n, n);
  for (Eigen::Index j = 0; j < n; ++j) {
    out.singular_values(j) = norms(order[static_cast<std::size_t>(j)]);
    out.v.col(j) = v.col(order[static_cast<std::size_t>(j)]);
  }

  // Left vectors: normalized columns for the non-negligible singular values,
  // then a Householder completion to a full unitary.
  Eigen::Index kept = 0;
  while (kept < n && out.singular_values(kept) > negligible &&
         out.singular_values(kept) > std::numeric_limits<double>::min()) {
    ++kept;
  }
  ComplexMatrix basis(m, kept);
  for (Eigen::Index j = 0; j < kept; ++j) {
    basis.col(j) = w.col(order[static_cast<std::size_t>(j)]) / out.singular_values(j);
  }
  out.u.resize(m, m);
  out.u.leftCols(kept) = basis;
  if (kept < m) {
    const ComplexMatrix full = kept > 0 ? qr_decompose(basis).q : ComplexMatrix::Identity(m, m);
    out.u.rightCols(m - kept) = full.rightCols(m - kept);
  }
  return out;
}

}  // namespace

bool all_finite(const ComplexMatrix& a) {
  for (Eigen::Index j = 0; j < a.cols(); ++j) {
    for (Eigen::Index i = 0; i < a.rows(); ++i) {
      if (!std::isfinite(a(i, j).real()) || !std::isfinite(a(i, j).imag())) return false;
    }
  }
  return true;
}

double unitarity_defect(const ComplexMatrix& m) {
  if (m.cols() == 0) return 0.0;
  return (m.adjoint() * m - ComplexMatrix::Identity(m.cols(), m.cols())).norm();
}

ComplexMatrix vstack(const ComplexMatrix& top, const ComplexMatrix& bottom) {
  if (top.cols() != bottom.cols()) {
    throw Error(ErrorKind::dimension_mismatch, "vstack: column counts differ");
  }
  ComplexMatrix out(top.rows() + bottom.rows(), top.cols());
  out.topRows(top.rows()) = top;
  out.bottomRows(bottom.rows()) = bottom;
  return out;
}

QrFactors qr_decompose(const ComplexMatrix& a) {
  require_usable(a, "qr_decompose");
  const Eigen::Index m = a.rows();
  const Eigen::Index n = a.cols();
  ComplexMatrix r = a;
  ComplexMatrix q = ComplexMatrix::Identity(m, m);

  const Eigen::Index steps = std::min(m - 1, n);
  for (Eigen::Index k = 0; k < steps; ++k) {
    const ComplexVector x = r.block(k, k, m - k, 1);
    const double xnorm = x.norm();
    if (xnorm == 0.0) continue;
    const Complex phase = std::abs(x(0)) > 0.0 ? x(0) / std::abs(x(0)) : Complex{1.0, 0.0};
    const Complex alpha = -phase * xnorm;
    ComplexVector v = x;
    v(0) -= alpha;
    const double vnorm = v.norm();
    if (vnorm == 0.0) continue;
    v /= vnorm;

    auto trailing = r.bottomRightCorner(m - k, n - k);
    trailing -= 2.0 * v * (v.adjoint() * trailing);
    auto qcols = q.rightCols(m - k);
    qcols -= 2.0 * (qcols * v) * v.adjoint();

    r(k, k) = alpha;
    r.block(k + 1, k, m - k - 1, 1).setZero();
  }

  for (Eigen::Index k = 0; k < std::min(m, n); ++k) {
    const double mag = std::abs(r(k, k));
    if (mag == 0.0) continue;
    const Complex phase = r(k, k) / mag;
    r.row(k) *= std::conj(phase);
    q.col(k) *= phase;
    r(k, k) = mag;
  }
  return {std::move(q), std::move(r)};
}

SvdFactors svd(const ComplexMatrix& a, const SvdOptions& options) {
  require_usable(a, "svd");
  if (a.rows() >= a.cols()) return jacobi_svd_tall(a, options);

  // A = (Aᴴ)ᴴ = (U' Σ V'ᴴ)ᴴ = V' Σ U'ᴴ
  SvdFactors t = jacobi_svd_tall(a.adjoint(), options);
  SvdFactors out;
  out.u = std::move(t.v);
  out.v = std::move(t.u);
  out.singular_values = std::move(t.singular_values);
  out.sweeps = t.sweeps;
  return out;
}

double default_rank_tolerance(const ComplexMatrix& a, const RealVector& singular_values) {
  const double sigma_max = singular_values.size() > 0 ? singular_values(0) : 0.0;
  return static_cast<double>(std::max(a.rows(), a.cols())) * kEps * sigma_max;
}

std::size_t numerical_rank(const ComplexMatrix& a, std::optional<double> tol) {
  if (a.rows() == 0 || a.cols() == 0) return 0;
  if (tol && !(*tol >= 0.0)) {
    throw Error(ErrorKind::input, "numerical_rank: tolerance must be nonnegative");
  }
  const RealVector sv = svd(a).singular_values;
  const double threshold = tol.value_or(default_rank_tolerance(a, sv));
  std::size_t rank = 0;
  for (Eigen::Index i = 0; i < sv.size(); ++i) {
    if (sv(i) > threshold) ++rank;
  }
  return rank;
}

bool near_rank_boundary(const RealVector& singular_values, double tol) {
  if (tol <= 0.0) return false;
  for (Eigen::Index i = 0; i < singular_values.size(); ++i) {
    const double sv = singular_values(i);
    if (sv > tol / 10.0 && sv < tol * 10.0) return true;
  }
  return false;
}

CsFactors cs_decompose(const ComplexMatrix& q1, const ComplexMatrix& q2) {
  if (q1.cols() != q2.cols()) {
    throw Error(ErrorKind::dimension_mismatch, "cs_decompose: blocks have different column counts");
  }
  const Eigen::Index k = q1.cols();
  const Eigen::Index m1 = q1.rows();
  const Eigen::Index m2 = q2.rows();
  if (k == 0) throw Error(ErrorKind::dimension_mismatch, "cs_decompose: no columns");
  const ComplexMatrix stacked = vstack(q1, q2);
  if (!all_finite(stacked)) throw Error(ErrorKind::input, "cs_decompose: non-finite entry");
  const double defect = unitarity_defect(stacked);
  if (defect > kUnitaryTol) {
    std::ostringstream msg;
    msg << "cs_decompose: stacked blocks are not orthonormal (defect " << defect << ")";
    throw Error(ErrorKind::precondition, msg.str());
  }

  CsFactors out;
  out.c = RealVector::Zero(k);
  out.s = RealVector::Zero(k);

  if (m1 > 0) {
    SvdFactors f = svd(q1);
    out.u1 = std::move(f.u);
    out.v1 = std::move(f.v);
    for (Eigen::Index j = 0; j < f.singular_values.size(); ++j) {
      out.c(j) = std::min(f.singular_values(j), 1.0);
    }
  } else {
    out.u1.resize(0, 0);
    out.v1 = ComplexMatrix::Identity(k, k);
  }

  if (m2 > 0) {
    // Columns of Q2·V1 are mutually orthogonal with norms s_j. Factor them in
    // order of decreasing norm so the small ones never pollute the large.
    const ComplexMatrix t = q2 * out.v1;
    ComplexMatrix reversed(m2, k);
    for (Eigen::Index i = 0; i < k; ++i) reversed.col(i) = t.col(k - 1 - i);
    const QrFactors f = qr_decompose(reversed);
    out.u2.resize(m2, m2);
    for (Eigen::Index i = 0; i < m2; ++i) out.u2.col(m2 - 1 - i) = f.q.col(i);
    for (Eigen::Index i = 0; i < std::min(m2, k); ++i) {
      out.s(k - 1 - i) = std::min(f.r(i, i).real(), 1.0);
    }
  } else {
    out.u2.resize(0, 0);
  }
  return out;
}

ComplexMatrix cosine_block(const RealVector& c, Eigen::Index rows) {
  const Eigen::Index k = c.size();
  ComplexMatrix out = ComplexMatrix::Zero(rows, k);
  for (Eigen::Index j = 0; j < std::min(rows, k); ++j) out(j, j) = c(j);
  return out;
}

ComplexMatrix sine_block(const RealVector& s, Eigen::Index rows) {
  const Eigen::Index k = s.size();
  ComplexMatrix out = ComplexMatrix::Zero(rows, k);
  for (Eigen::Index j = std::max<Eigen::Index>(0, k - rows); j < k; ++j) out(j + rows - k, j) = s(j);
  return out;
}

}  // namespace sdof
