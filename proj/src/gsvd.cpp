#include "sdof/gsvd.hpp"

#include <algorithm>
#include <sstream>

#include "sdof/error.hpp"

namespace sdof {

RankProfile RankProfile::from_ranks(int r1, int r2, int s) {
  if (r1 < 0 || r2 < 0 || s < 0 || s > std::min(r1, r2)) {
    std::ostringstream msg;
    msg << "invalid rank profile (r1=" << r1 << ", r2=" << r2 << ", s=" << s << ")";
    throw Error(ErrorKind::input, msg.str());
  }
  return RankProfile{r1, r2, r1 + r2 - s, s, r1 - s, r2 - s};
}

RankProfile RankProfile::from_measured(int r1, int r2, int r0) {
  const int s = r1 + r2 - r0;
  if (r1 < 0 || r2 < 0 || s < 0 || s > std::min(r1, r2)) {
    std::ostringstream msg;
    msg << "inconsistent numerical ranks (r1=" << r1 << ", r2=" << r2 << ", r0=" << r0 << ")";
    throw Error(ErrorKind::numerical, msg.str());
  }
  return RankProfile{r1, r2, r0, s, r1 - s, r2 - s};
}

std::string to_string(const RankProfile& p) {
  std::ostringstream out;
  out << "(r1=" << p.r1 << ", r2=" << p.r2 << ", r0=" << p.r0 << ", s=" << p.s << ", rt1=" << p.rt1
      << ", rt2=" << p.rt2 << ")";
  return out.str();
}

namespace {

struct MeasuredRank {
  int rank = 0;
  double tol = 0.0;
  bool ambiguous = false;
};

MeasuredRank measure(const ComplexMatrix& a, const SvdFactors& f, const GsvdOptions& options) {
  MeasuredRank out;
  out.tol = options.rank_tol.value_or(default_rank_tolerance(a, f.singular_values));
  for (Eigen::Index i = 0; i < f.singular_values.size(); ++i) {
    if (f.singular_values(i) > out.tol) ++out.rank;
  }
  out.ambiguous = near_rank_boundary(f.singular_values, out.tol);
  return out;
}

ComplexMatrix padded_transform(const GsvdFactors& f, Eigen::Index n_t) {
  ComplexMatrix out = ComplexMatrix::Zero(f.r_tri.rows(), n_t);
  out.leftCols(f.r_tri.cols()) = f.w.adjoint() * f.r_tri;
  return out;
}

}  // namespace

double gsvd_residual(const ComplexMatrix& h, const ComplexMatrix& left, const ComplexMatrix& sigma,
                     const GsvdFactors& f) {
  const ComplexMatrix lhs = left.adjoint() * h * f.q;
  const ComplexMatrix rhs = sigma * padded_transform(f, h.cols());
  const double scale = h.norm();
  return scale > 0.0 ? (lhs - rhs).norm() / scale : (lhs - rhs).norm();
}

GsvdFactors gsvd(const ComplexMatrix& h1, const ComplexMatrix& h2, const GsvdOptions& options) {
  if (h1.cols() != h2.cols()) {
    throw Error(ErrorKind::dimension_mismatch, "gsvd: H1 and H2 must have the same number of columns");
  }
  if (h1.size() == 0 || h2.size() == 0 || h1.norm() == 0.0 || h2.norm() == 0.0) {
    throw Error(ErrorKind::degenerate, "gsvd: both channel matrices must be nonzero");
  }
  if (!all_finite(h1) || !all_finite(h2)) throw Error(ErrorKind::input, "gsvd: non-finite entry");
  if (options.rank_tol && !(*options.rank_tol >= 0.0)) {
    throw Error(ErrorKind::input, "gsvd: rank tolerance must be nonnegative");
  }

  const Eigen::Index m1 = h1.rows();
  const Eigen::Index m2 = h2.rows();
  const ComplexMatrix stack = vstack(h1, h2);

  const SvdFactors f1 = svd(h1);
  const SvdFactors f2 = svd(h2);
  const SvdFactors fs = svd(stack);
  const MeasuredRank k1 = measure(h1, f1, options);
  const MeasuredRank k2 = measure(h2, f2, options);
  const MeasuredRank k0 = measure(stack, fs, options);

  GsvdFactors out;
  out.profile = RankProfile::from_measured(k1.rank, k2.rank, k0.rank);
  out.rank_ambiguous = k1.ambiguous || k2.ambiguous || k0.ambiguous;
  out.rank_tol_h1 = k1.tol;
  out.rank_tol_h2 = k2.tol;
  out.rank_tol_stack = k0.tol;
  const int r0 = out.profile.r0;
  const int rt1 = out.profile.rt1;
  const int s = out.profile.s;

  // Stack·Q = [Qr·R, 0]: Q from the right singular vectors, then a QR of the
  // r0 significant columns gives the orthonormal basis and triangular factor.
  out.q = fs.v;
  const ComplexMatrix range = stack * fs.v.leftCols(r0);
  const QrFactors qr = qr_decompose(range);
  out.r_tri = qr.r.topRows(r0).triangularView<Eigen::Upper>();
  const ComplexMatrix basis = qr.q.leftCols(r0);

  CsFactors cs = cs_decompose(basis.topRows(m1), basis.bottomRows(m2));
  out.u = std::move(cs.u1);
  out.v = std::move(cs.u2);
  out.w = std::move(cs.v1);

  // Snap the private blocks to exact 1/0 gains; the ranks fix their sizes.
  out.cosines = cs.c;
  out.sines = cs.s;
  for (int j = 0; j < r0; ++j) {
    if (j < rt1) {
      out.cosines(j) = 1.0;
      out.sines(j) = 0.0;
    } else if (j >= rt1 + s) {
      out.cosines(j) = 0.0;
      out.sines(j) = 1.0;
    } else if (out.cosines(j) <= k0.tol || out.sines(j) <= k0.tol) {
      out.rank_ambiguous = true;
    }
  }
  out.sigma1 = cosine_block(out.cosines, m1);
  out.sigma2 = sine_block(out.sines, m2);

  out.residual1 = gsvd_residual(h1, out.u, out.sigma1, out);
  out.residual2 = gsvd_residual(h2, out.v, out.sigma2, out);
  return out;
}

}  // namespace sdof
