#include "sdof/channel.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "sdof/error.hpp"

namespace sdof {

namespace {

void require_dims(const ComplexMatrix& h, int rows, int cols, const char* name) {
  if (h.rows() != rows || h.cols() != cols) {
    std::ostringstream msg;
    msg << name << " is " << h.rows() << "x" << h.cols() << " but the antenna counts require " << rows
        << "x" << cols;
    throw Error(ErrorKind::dimension_mismatch, msg.str());
  }
}

double rank_threshold(const ComplexMatrix& a, const GsvdOptions& options) {
  if (options.rank_tol) return *options.rank_tol;
  return default_rank_tolerance(a, svd(a).singular_values);
}

int rank_at(const ComplexMatrix& a, double tol) {
  return static_cast<int>(numerical_rank(a, tol));
}

ComplexMatrix rows_of(const ComplexMatrix& a, const std::vector<int>& rows) {
  ComplexMatrix out(static_cast<Eigen::Index>(rows.size()), a.cols());
  for (std::size_t i = 0; i < rows.size(); ++i) out.row(static_cast<Eigen::Index>(i)) = a.row(rows[i]);
  return out;
}

std::vector<int> complement(int n, const std::vector<int>& taken) {
  std::vector<int> out;
  for (int i = 0; i < n; ++i)
    if (std::find(taken.begin(), taken.end(), i) == taken.end()) out.push_back(i);
  return out;
}

// A row set S leaves rank r − |S| behind iff every row of S is a coloop (a
// row outside the span of all others), and deleting a coloop keeps the
// remaining coloops, so taking coloops in index order is exact.
std::vector<int> select_rows(const ComplexMatrix& m, int n_e, int rank, double tol) {
  const int rows = static_cast<int>(m.rows());
  std::vector<int> chosen;
  if (n_e <= rank) {
    for (int i = 0; i < rows && static_cast<int>(chosen.size()) < n_e; ++i) {
      if (rank_at(rows_of(m, complement(rows, {i})), tol) == rank - 1) chosen.push_back(i);
    }
    if (static_cast<int>(chosen.size()) < n_e) chosen.clear();
    return chosen;
  }
  // More eavesdropper rows than rank: the residual must be numerically zero.
  std::vector<int> zero;
  for (int i = 0; i < rows; ++i) {
    (m.row(i).norm() > tol ? chosen : zero).push_back(i);
  }
  if (static_cast<int>(chosen.size()) > n_e) return {};
  for (int i : zero) {
    if (static_cast<int>(chosen.size()) == n_e) break;
    chosen.push_back(i);
  }
  std::sort(chosen.begin(), chosen.end());
  return chosen;
}

}  // namespace

std::string_view to_string(Cut cut) {
  switch (cut) {
    case Cut::user1: return "user1";
    case Cut::user2: return "user2";
    case Cut::sum: return "sum";
  }
  return "unknown";
}

std::vector<std::string> validate(const ChannelSpec& spec, const GsvdOptions& options) {
  if (spec.n_t < 1 || spec.n_r1 < 1 || spec.n_r2 < 1) {
    throw Error(ErrorKind::input, "antenna counts n_t, n_r1, n_r2 must be at least 1");
  }
  if (spec.n_e < 0) throw Error(ErrorKind::input, "n_e must be nonnegative");
  if (!(spec.p_bar > 0.0) || !std::isfinite(spec.p_bar)) {
    throw Error(ErrorKind::input, "p_bar must be a positive finite number");
  }
  require_dims(spec.h1, spec.n_r1, spec.n_t, "h1");
  require_dims(spec.h2, spec.n_r2, spec.n_t, "h2");
  if (!all_finite(spec.h1) || !all_finite(spec.h2)) {
    throw Error(ErrorKind::input, "channel matrices must have finite entries");
  }

  std::vector<std::string> warnings;
  if (spec.n_e >= spec.n_t) {
    warnings.push_back("n_e >= n_t: the eavesdropper observes every input dimension");
  }
  const int r1 = rank_at(spec.h1, rank_threshold(spec.h1, options));
  const int r2 = rank_at(spec.h2, rank_threshold(spec.h2, options));
  if (spec.n_e >= std::min(r1, r2)) {
    std::ostringstream msg;
    msg << "n_e >= min(rank H1, rank H2) = " << std::min(r1, r2)
        << ": region bounds clamp at zero for at least one receiver";
    warnings.push_back(msg.str());
  }
  return warnings;
}

RankProfile rank_profile(const ChannelSpec& spec, const GsvdOptions& options) {
  validate(spec, options);
  const ComplexMatrix stack = vstack(spec.h1, spec.h2);
  return RankProfile::from_measured(rank_at(spec.h1, rank_threshold(spec.h1, options)),
                                    rank_at(spec.h2, rank_threshold(spec.h2, options)),
                                    rank_at(stack, rank_threshold(stack, options)));
}

ParallelChannel reduce_to_parallel(const ChannelSpec& spec, const GsvdOptions& options) {
  validate(spec, options);
  ParallelChannel out;
  out.factors = gsvd(spec.h1, spec.h2, options);
  out.profile = out.factors.profile;
  if (out.profile.r1 == 0 || out.profile.r2 == 0) {
    throw Error(ErrorKind::degenerate, "reduce_to_parallel: a legitimate channel has numerical rank 0");
  }

  // σ(Wᴴ R) = σ(R) since W is unitary.
  out.s_p = svd(out.factors.r_tri).singular_values(0);
  out.effective_power = spec.p_bar / (out.s_p * out.s_p);

  const auto& p = out.profile;
  double s_min = 1.0;
  for (int j = 0; j < p.rt1 + p.s; ++j) s_min = std::min(s_min, out.factors.cosines(j));
  for (int j = p.rt1; j < p.r0; ++j) s_min = std::min(s_min, out.factors.sines(j));
  out.s_min = s_min;
  return out;
}

EveConstruction worst_case_eve(const ComplexMatrix& cut_matrix, int n_e, Cut cut, const GsvdOptions& options) {
  if (n_e < 0) throw Error(ErrorKind::input, "worst_case_eve: n_e must be nonnegative");
  const int rows = static_cast<int>(cut_matrix.rows());
  const Eigen::Index cols = cut_matrix.cols();
  const double tol = rank_threshold(cut_matrix, options);

  EveConstruction out;
  out.cut = cut;
  out.cut_rank = rank_at(cut_matrix, tol);

  if (n_e == 0) {
    out.h_tilde.resize(0, cols);
    out.residual = cut_matrix;
    out.residual_rank = out.cut_rank;
    return out;
  }
  if (n_e >= rows) {
    out.h_tilde = cut_matrix;
    out.residual.resize(0, cols);
    out.residual_rank = 0;
    for (int i = 0; i < rows; ++i) out.eve_rows.push_back(i);
    return out;
  }

  const int target = std::max(0, out.cut_rank - n_e);
  out.eve_rows = select_rows(cut_matrix, n_e, out.cut_rank, tol);
  if (!out.eve_rows.empty()) {
    out.h_tilde = rows_of(cut_matrix, out.eve_rows);
    out.residual = rows_of(cut_matrix, complement(rows, out.eve_rows));
    out.residual_rank = rank_at(out.residual, tol);
    if (out.residual_rank == target) return out;
  }

  // Rows of Uᴴ·M = Σ·Vᴴ are orthogonal and sorted by gain, so the first
  // n_e of them carry n_e rank and the rest carry exactly the remainder.
  const ComplexMatrix rotated = svd(cut_matrix).u.adjoint() * cut_matrix;
  out.rotated = true;
  out.eve_rows.clear();
  out.h_tilde = rotated.topRows(n_e);
  out.residual = rotated.bottomRows(rows - n_e);
  out.residual_rank = rank_at(out.residual, tol);
  return out;
}

EveConstruction worst_case_eve_single(const ChannelSpec& spec, Cut user, const GsvdOptions& options) {
  validate(spec, options);
  if (user == Cut::sum) throw Error(ErrorKind::input, "worst_case_eve_single: cut must be user1 or user2");
  return worst_case_eve(user == Cut::user1 ? spec.h1 : spec.h2, spec.n_e, user, options);
}

EveConstruction worst_case_eve_sum(const ChannelSpec& spec, const GsvdOptions& options) {
  validate(spec, options);
  return worst_case_eve(vstack(spec.h1, spec.h2), spec.n_e, Cut::sum, options);
}

}  // namespace sdof
