#pragma once

// Independent reference computations for the test suites. Nothing here calls
// into the library's own decompositions.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <random>
#include <set>
#include <vector>

#include <Eigen/Dense>

#include "sdof/linalg.hpp"

namespace oracle {

using sdof::Complex;
using sdof::ComplexMatrix;

inline ComplexMatrix gaussian(Eigen::Index rows, Eigen::Index cols, std::mt19937_64& rng) {
  std::normal_distribution<double> n(0.0, std::sqrt(0.5));
  ComplexMatrix out(rows, cols);
  for (Eigen::Index j = 0; j < cols; ++j)
    for (Eigen::Index i = 0; i < rows; ++i) out(i, j) = Complex(n(rng), n(rng));
  return out;
}

/// rows x cols with rank exactly min(rank, rows, cols) almost surely.
inline ComplexMatrix gaussian_of_rank(Eigen::Index rows, Eigen::Index cols, Eigen::Index rank,
                                      std::mt19937_64& rng) {
  if (rank <= 0) return ComplexMatrix::Zero(rows, cols);
  return gaussian(rows, rank, rng) * gaussian(rank, cols, rng);
}

/// Orthonormal columns from Eigen's Householder QR of a Gaussian matrix.
inline ComplexMatrix orthonormal_columns(Eigen::Index rows, Eigen::Index cols, std::mt19937_64& rng) {
  Eigen::HouseholderQR<ComplexMatrix> qr(gaussian(rows, cols, rng));
  return qr.householderQ() * ComplexMatrix::Identity(rows, cols);
}

/// Singular values from the eigenvalues of AᴴA (or AAᴴ, whichever is smaller).
inline Eigen::VectorXd singular_values_by_eigen(const ComplexMatrix& a) {
  const ComplexMatrix g = a.rows() >= a.cols() ? ComplexMatrix(a.adjoint() * a) : ComplexMatrix(a * a.adjoint());
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(g);
  Eigen::VectorXd ev = es.eigenvalues().cwiseMax(0.0).cwiseSqrt();
  std::sort(ev.data(), ev.data() + ev.size(), std::greater<>());
  return ev;
}

/// Rank with the library's documented default threshold, computed through
/// Eigen's two-sided Jacobi SVD.
inline int rank_by_eigen(const ComplexMatrix& a) {
  if (a.rows() == 0 || a.cols() == 0) return 0;
  Eigen::JacobiSVD<ComplexMatrix> svd(a);
  const auto& sv = svd.singularValues();
  const double tol = static_cast<double>(std::max(a.rows(), a.cols())) *
                     std::numeric_limits<double>::epsilon() * (sv.size() ? sv(0) : 0.0);
  int r = 0;
  for (Eigen::Index i = 0; i < sv.size(); ++i)
    if (sv(i) > tol) ++r;
  return r;
}

/// Singular values above an explicit absolute threshold, via Jacobi SVD.
inline int rank_above(const ComplexMatrix& a, double tol) {
  if (a.rows() == 0 || a.cols() == 0) return 0;
  Eigen::JacobiSVD<ComplexMatrix> svd(a);
  return static_cast<int>((svd.singularValues().array() > tol).count());
}

/// Random pair (H1, H2) with chosen private and common row-space dimensions.
/// Row spaces: H1 spans [C; P1], H2 spans [C; P2] with C of c rows.
struct Pair {
  ComplexMatrix h1;
  ComplexMatrix h2;
};

inline Pair structured_pair(int nt, int nr1, int nr2, std::mt19937_64& rng) {
  std::uniform_int_distribution<int> coin(0, 3);
  if (coin(rng) != 0) return {gaussian(nr1, nt, rng), gaussian(nr2, nt, rng)};
  std::uniform_int_distribution<int> pick_c(0, std::min({nr1, nr2, nt}));
  const int c = pick_c(rng);
  std::uniform_int_distribution<int> pick_p1(0, std::max(0, std::min(nr1, nt) - c));
  const int p1 = pick_p1(rng);
  std::uniform_int_distribution<int> pick_p2(0, std::max(0, std::min(nr2, nt) - c));
  const int p2 = pick_p2(rng);
  const ComplexMatrix common = gaussian(c, nt, rng);
  ComplexMatrix b1(c + p1, nt);
  b1 << common, gaussian(p1, nt, rng);
  ComplexMatrix b2(c + p2, nt);
  b2 << common, gaussian(p2, nt, rng);
  Pair out{gaussian(nr1, c + p1, rng) * b1, gaussian(nr2, c + p2, rng) * b2};
  if (out.h1.norm() == 0.0) out.h1 = gaussian(nr1, nt, rng);
  if (out.h2.norm() == 0.0) out.h2 = gaussian(nr2, nt, rng);
  return out;
}

/// Exhaustive search: is there a set of `k` rows whose removal leaves a
/// matrix of rank `target`?
inline bool some_removal_leaves_rank(const ComplexMatrix& a, int k, int target) {
  const int m = static_cast<int>(a.rows());
  if (k >= m) return target == 0;
  std::vector<int> mask(static_cast<std::size_t>(m), 0);
  std::fill(mask.begin(), mask.begin() + k, 1);
  std::sort(mask.begin(), mask.end());
  do {
    ComplexMatrix rest(m - k, a.cols());
    int r = 0;
    for (int i = 0; i < m; ++i)
      if (!mask[static_cast<std::size_t>(i)]) rest.row(r++) = a.row(i);
    if (rank_by_eigen(rest) == target) return true;
  } while (std::next_permutation(mask.begin(), mask.end()));
  return false;
}

using Triple = std::array<int, 3>;

/// Integer points of {x >= 0, A x <= b} inside [0, box]^3.
template <class Feasible>
std::vector<Triple> lattice_points(int box, Feasible feasible) {
  std::vector<Triple> pts;
  for (int a = 0; a <= box; ++a)
    for (int b = 0; b <= box; ++b)
      for (int c = 0; c <= box; ++c)
        if (feasible(Triple{a, b, c})) pts.push_back({a, b, c});
  return pts;
}

/// Extreme points of the hull of a lattice point set. A point is extreme iff it
/// is the unique maximizer of some linear functional; for 0/1 constraint
/// systems integer directions in {-3..3}^3 suffice.
inline std::set<Triple> hull_extremes(const std::vector<Triple>& pts) {
  std::set<Triple> ext;
  for (int x = -3; x <= 3; ++x)
    for (int y = -3; y <= 3; ++y)
      for (int z = -3; z <= 3; ++z) {
        if (x == 0 && y == 0 && z == 0) continue;
        long best = std::numeric_limits<long>::min();
        int count = 0;
        Triple arg{};
        for (const auto& p : pts) {
          const long v = static_cast<long>(x) * p[0] + static_cast<long>(y) * p[1] + static_cast<long>(z) * p[2];
          if (v > best) {
            best = v;
            count = 1;
            arg = p;
          } else if (v == best) {
            ++count;
          }
        }
        if (count == 1) ext.insert(arg);
      }
  if (pts.size() == 1) ext.insert(pts.front());
  return ext;
}

/// Extreme points of a planar lattice point set, same criterion in 2-D.
inline std::set<std::array<int, 2>> hull_extremes_2d(const std::vector<std::array<int, 2>>& pts) {
  std::set<std::array<int, 2>> ext;
  for (int x = -4; x <= 4; ++x)
    for (int y = -4; y <= 4; ++y) {
      if (x == 0 && y == 0) continue;
      long best = std::numeric_limits<long>::min();
      int count = 0;
      std::array<int, 2> arg{};
      for (const auto& p : pts) {
        const long v = static_cast<long>(x) * p[0] + static_cast<long>(y) * p[1];
        if (v > best) {
          best = v;
          count = 1;
          arg = p;
        } else if (v == best) {
          ++count;
        }
      }
      if (count == 1) ext.insert(arg);
    }
  if (pts.size() == 1) ext.insert(pts.front());
  return ext;
}

/// log2 det of a Hermitian positive definite matrix from its eigenvalues.
inline double log2_det_hpd(const ComplexMatrix& m) {
  if (m.rows() == 0) return 0.0;
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(m, Eigen::EigenvaluesOnly);
  double acc = 0.0;
  for (Eigen::Index i = 0; i < m.rows(); ++i) acc += std::log2(es.eigenvalues()(i));
  return acc;
}

}  // namespace oracle
