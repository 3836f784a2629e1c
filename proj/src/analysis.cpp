#include "sdof/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <sstream>

#include "kernels.hpp"
#include "sdof/error.hpp"

namespace sdof {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

// 2·Σ log2 R(i,i) for the QR of `a` (columns >= rows of the Gram matrix).
double log2_det_gram(const ComplexMatrix& a) {
  const QrFactors f = qr_decompose(a);
  double acc = 0.0;
  for (Eigen::Index i = 0; i < a.cols(); ++i) {
    const double d = f.r(i, i).real();
    if (!(d > 0.0)) throw Error(ErrorKind::numerical, "log-det of a singular Gram matrix");
    acc += 2.0 * std::log2(d);
  }
  return acc;
}

std::pair<std::vector<double>, std::vector<double>> finite_points(const std::vector<double>& x,
                                                                  const std::vector<double>& y) {
  std::pair<std::vector<double>, std::vector<double>> out;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (std::isfinite(y[i])) {
      out.first.push_back(x[i]);
      out.second.push_back(y[i]);
    }
  }
  return out;
}

std::string describe_check(double observed, double expected, double tol) {
  std::ostringstream out;
  out.precision(6);
  out << "observed " << observed << ", expected " << expected << " +/- " << tol;
  return out.str();
}

}  // namespace

namespace kernels {

double rate_point(double s_p, double s_min, int r0, double p_bar) {
  const double effective = p_bar / (s_p * s_p);
  if (!(effective > r0)) return kNaN;
  return per_channel_rate(effective - r0, r0, s_min);
}

void leakage_row(int n_e, int r0, double s_p, const std::vector<double>& p_bar, std::uint64_t seed,
                 std::uint64_t trial, double* row) {
  const ComplexMatrix h = sample_eavesdropper(n_e, r0, seed, trial);
  for (std::size_t i = 0; i < p_bar.size(); ++i) {
    const double effective = p_bar[i] / (s_p * s_p);
    row[i] = effective > r0 ? eve_leakage(effective - r0, r0, h).bits : kNaN;
  }
}

}  // namespace kernels

std::vector<double> SnrGrid::values() const {
  if (points < 4) throw Error(ErrorKind::input, "SNR grid needs at least 4 points");
  if (!(min > 0.0) || !(max > min) || !std::isfinite(max)) {
    throw Error(ErrorKind::input, "SNR grid needs 0 < min < max");
  }
  if (std::log10(max / min) < 4.0 - 1e-12) {
    throw Error(ErrorKind::input, "SNR grid must span at least four decades");
  }
  std::vector<double> out(static_cast<std::size_t>(points));
  const double lo = std::log10(min);
  const double step = (std::log10(max) - lo) / (points - 1);
  for (int i = 0; i < points; ++i) out[static_cast<std::size_t>(i)] = std::pow(10.0, lo + step * i);
  out.front() = min;
  out.back() = max;
  return out;
}

Leakage eve_leakage(double signal_power, int r0, const ComplexMatrix& h_tilde) {
  if (!(signal_power > 0.0) || !std::isfinite(signal_power)) {
    throw Error(ErrorKind::input, "eve_leakage: signal power must be positive");
  }
  Leakage out;
  if (h_tilde.rows() == 0) return out;
  if (h_tilde.cols() != r0) {
    throw Error(ErrorKind::dimension_mismatch, "eve_leakage: h_tilde must have r0 columns");
  }
  const SvdFactors f = svd(h_tilde);
  const double tol = default_rank_tolerance(h_tilde, f.singular_values);
  int k = 0;
  for (Eigen::Index i = 0; i < f.singular_values.size(); ++i)
    if (f.singular_values(i) > tol) ++k;
  out.effective_rank = k;
  out.rank_deficient = k < h_tilde.rows();
  if (k == 0) return out;

  // Rows of Uᴴ·H̃ beyond the rank are numerically zero and carry nothing.
  const ComplexMatrix g = out.rank_deficient ? ComplexMatrix((f.u.adjoint() * h_tilde).topRows(k)) : h_tilde;
  const double per_dim = signal_power / r0 + 1.0;
  const ComplexMatrix gh = g.adjoint();
  out.bits = log2_det_gram(std::sqrt(per_dim) * gh) - log2_det_gram(gh);
  return out;
}

ComplexMatrix sample_eavesdropper(int n_e, int r0, std::uint64_t seed, std::uint64_t trial) {
  if (n_e < 0 || r0 < 0) throw Error(ErrorKind::input, "sample_eavesdropper: negative dimension");
  const int k = std::min(n_e, r0);
  if (k == 0) return ComplexMatrix::Zero(n_e, r0);

  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(trial), static_cast<std::uint32_t>(trial >> 32)};
  std::mt19937_64 rng(seq);
  std::normal_distribution<double> normal(0.0, std::sqrt(0.5));
  const auto gaussian = [&](int rows, int cols) {
    ComplexMatrix m(rows, cols);
    for (int j = 0; j < cols; ++j)
      for (int i = 0; i < rows; ++i) m(i, j) = Complex(normal(rng), normal(rng));
    return m;
  };

  const ComplexMatrix unitary = qr_decompose(gaussian(r0, r0)).q;
  const ComplexMatrix rows = unitary.adjoint().topRows(k);
  ComplexMatrix mix = ComplexMatrix::Identity(n_e, k);
  if (trial != 0) mix = gaussian(n_e, k);
  return mix * rows;
}

std::vector<double> leakage_grid(int n_e, int r0, double s_p, const std::vector<double>& p_bar, int trials,
                                 std::uint64_t seed, Execution execution) {
  if (trials < 1) throw Error(ErrorKind::input, "at least one eavesdropper trial is required");
  if (!(s_p > 0.0)) throw Error(ErrorKind::input, "s_p must be positive");
  std::vector<double> out(static_cast<std::size_t>(trials) * p_bar.size());
  if (execution == Execution::parallel) {
    kernels::leakage_rows_parallel(n_e, r0, s_p, p_bar, trials, seed, out.data());
  } else {
    kernels::leakage_rows_serial(n_e, r0, s_p, p_bar, trials, seed, out.data());
  }
  return out;
}

RateCurves achievable_rate_curve(const Scheme& scheme, const ParallelChannel& pc, const std::vector<double>& p_bar,
                                 Execution execution) {
  if (scheme.parts.empty()) throw Error(ErrorKind::input, "achievable_rate_curve: empty scheme");
  const int r0 = pc.profile.r0;
  std::vector<double> r(p_bar.size());
  if (execution == Execution::parallel) {
    kernels::rate_points_parallel(pc.s_p, pc.s_min, r0, p_bar, r.data());
  } else {
    kernels::rate_points_serial(pc.s_p, pc.s_min, r0, p_bar, r.data());
  }

  RateCurves out;
  for (std::size_t i = 0; i < p_bar.size(); ++i) {
    if (!std::isfinite(r[i])) {
      std::ostringstream msg;
      msg << "p_bar = " << p_bar[i] << " leaves no signal power (needs > " << r0 * pc.s_p * pc.s_p
          << "); point dropped";
      out.warnings.push_back(msg.str());
      continue;
    }
    std::array<double, 4> rates{};
    for (const auto& part : scheme.parts) {
      const double coding = (1.0 - part.allocation.delta) * r[i];
      const auto& d = part.allocation.d_target;
      rates[0] += part.weight * d[0] * coding;
      rates[1] += part.weight * d[1] * coding;
      rates[2] += part.weight * d[2] * coding;
      rates[3] += part.weight * part.allocation.n_e() * coding;
    }
    out.p_bar.push_back(p_bar[i]);
    out.per_channel.push_back(r[i]);
    out.r0.push_back(rates[0]);
    out.r1.push_back(rates[1]);
    out.r2.push_back(rates[2]);
    out.re.push_back(rates[3]);
  }
  return out;
}

double fit_prelog(const std::vector<double>& p_bar, const std::vector<double>& bits) {
  if (p_bar.size() != bits.size()) throw Error(ErrorKind::input, "fit_prelog: length mismatch");
  const std::size_t n = p_bar.size();
  if (n < 4) throw Error(ErrorKind::input, "fit_prelog: at least 4 points are required");
  for (std::size_t i = 0; i < n; ++i) {
    if (!(p_bar[i] > 0.0) || !std::isfinite(bits[i]) || (i > 0 && !(p_bar[i] > p_bar[i - 1]))) {
      throw Error(ErrorKind::input, "fit_prelog: p_bar must be positive and strictly increasing, bits finite");
    }
  }
  const std::size_t first = n - (n + 1) / 2;
  const double m = static_cast<double>(n - first);
  double mx = 0.0, my = 0.0;
  for (std::size_t i = first; i < n; ++i) {
    mx += std::log2(p_bar[i]);
    my += bits[i];
  }
  mx /= m;
  my /= m;
  double sxy = 0.0, sxx = 0.0;
  for (std::size_t i = first; i < n; ++i) {
    const double dx = std::log2(p_bar[i]) - mx;
    sxy += dx * (bits[i] - my);
    sxx += dx * dx;
  }
  return sxy / sxx;
}

double log2_det_gain(const ComplexMatrix& m, double a) {
  if (m.rows() == 0 || m.cols() == 0) return 0.0;
  const RealVector sv = svd(m).singular_values;
  double acc = 0.0;
  for (Eigen::Index i = 0; i < sv.size(); ++i) acc += std::log2(1.0 + a * sv(i) * sv(i));
  return acc;
}

ConverseReport converse_prelog(const ChannelSpec& spec, const AnalysisOptions& options) {
  validate(spec, options.gsvd);
  ConverseReport report;
  report.p_bar = options.grid.values();
  report.cuts[0].construction = worst_case_eve_single(spec, Cut::user1, options.gsvd);
  report.cuts[1].construction = worst_case_eve_single(spec, Cut::user2, options.gsvd);
  report.cuts[2].construction = worst_case_eve_sum(spec, options.gsvd);
  for (auto& cut : report.cuts) {
    cut.bound = cut.construction.residual_rank;
    for (double p : report.p_bar) cut.bits.push_back(log2_det_gain(cut.construction.residual, p / spec.n_t));
    cut.slope = fit_prelog(report.p_bar, cut.bits);
  }
  return report;
}

AdversaryReport adversarial_eve_search(const ParallelChannel& pc, const SchemeAllocation& alloc,
                                       const AnalysisOptions& options) {
  const std::vector<double> grid = options.grid.values();
  const int r0 = pc.profile.r0;
  const std::vector<double> cells =
      leakage_grid(alloc.n_e(), r0, pc.s_p, grid, options.trials, options.seed, options.execution);

  AdversaryReport report;
  report.seed = options.seed;
  report.reference_p_bar = grid.back();
  report.worst_curve.assign(grid.size(), -std::numeric_limits<double>::infinity());
  double lo = std::numeric_limits<double>::infinity();
  double hi = -std::numeric_limits<double>::infinity();
  for (int t = 0; t < options.trials; ++t) {
    const std::vector<double> row(cells.begin() + static_cast<std::ptrdiff_t>(t * grid.size()),
                                  cells.begin() + static_cast<std::ptrdiff_t>((t + 1) * grid.size()));
    const auto [x, y] = finite_points(grid, row);
    AdversaryTrial trial;
    trial.trial = static_cast<std::uint64_t>(t);
    trial.prelog = fit_prelog(x, y);
    trial.reference_bits = row.back();
    lo = std::min(lo, trial.reference_bits);
    hi = std::max(hi, trial.reference_bits);
    if (t == 0 || trial.prelog > report.worst_prelog) {
      report.worst_prelog = trial.prelog;
      report.worst_trial = trial.trial;
    }
    for (std::size_t i = 0; i < grid.size(); ++i)
      report.worst_curve[i] = std::isfinite(row[i]) ? std::max(report.worst_curve[i], row[i]) : row[i];
    report.trials.push_back(trial);
  }
  report.invariance_spread = hi > 0.0 ? (hi - lo) / hi : 0.0;
  return report;
}

SweepReport sweep(const ChannelSpec& spec, const Point& target, PrivacyMode mode, const AnalysisOptions& options) {
  SweepReport report;
  report.spec = spec;
  report.target = target;
  report.mode = mode;
  report.options = options;
  report.warnings = validate(spec, options.gsvd);
  report.channel = reduce_to_parallel(spec, options.gsvd);
  report.scheme = synthesize(report.channel, spec.p_bar, spec.n_e, target, mode, options.scheme);
  report.target = report.scheme.target;

  const std::vector<double> grid = options.grid.values();
  report.curves = achievable_rate_curve(report.scheme, report.channel, grid, options.execution);
  for (const auto& w : report.curves.warnings) report.warnings.push_back(w);
  const auto& c = report.curves;
  report.fitted = {fit_prelog(c.p_bar, c.r0), fit_prelog(c.p_bar, c.r1), fit_prelog(c.p_bar, c.r2),
                   fit_prelog(c.p_bar, c.re)};
  report.adversary = adversarial_eve_search(report.channel, report.scheme.parts.front().allocation, options);
  report.leakage_prelog = report.adversary.worst_prelog;
  return report;
}

const Check* Certificate::failed_check() const {
  for (const auto& c : checks)
    if (!c.passed) return &c;
  return nullptr;
}

Certificate certify(const ChannelSpec& spec, const Point& target, PrivacyMode mode, const AnalysisOptions& options) {
  const RankProfile profile = rank_profile(spec, options.gsvd);
  const SdofRegion region = make_region(profile, spec.n_e, mode);
  const auto violated = violated_constraints(region, target);
  if (!violated.empty()) {
    std::string msg = "certify: target is outside the " + std::string(to_string(mode)) + " region; violated:";
    for (const auto& v : violated) msg += " [" + v + "]";
    throw Error(ErrorKind::infeasible_target, msg);
  }

  Certificate cert;
  cert.sweep = sweep(spec, target, mode, options);
  cert.converse = converse_prelog(spec, options);
  const auto& sw = cert.sweep;
  const auto& tol = options.tol;
  const double n_e = spec.n_e;
  auto add = [&](std::string name, bool passed, std::string detail) {
    cert.checks.push_back({std::move(name), passed, std::move(detail)});
  };

  add("region_membership", true, "target satisfies every facet of the " + std::string(to_string(mode)) + " region");

  bool decodable = true;
  for (const auto& part : sw.scheme.parts) decodable = decodable && check_decodability(part.allocation).ok;
  add("decodability", decodable,
      decodable ? "all required margins positive" : "some required decoding margin is not positive");

  const char* names[] = {"prelog_d0", "prelog_d1", "prelog_d2"};
  for (std::size_t i = 0; i < 3; ++i) {
    const double err = std::abs(sw.fitted[i] - sw.target[i]);
    add(names[i], err <= tol.prelog, describe_check(sw.fitted[i], sw.target[i], tol.prelog));
  }
  add("prelog_fictitious", std::abs(sw.fitted[3] - n_e) <= tol.fictitious,
      describe_check(sw.fitted[3], n_e, tol.fictitious));
  add("leakage_bound", sw.leakage_prelog <= n_e + tol.leakage,
      describe_check(sw.leakage_prelog, n_e, tol.leakage) + " (upper bound)");
  add("leakage_invariance", sw.adversary.invariance_spread <= tol.invariance,
      describe_check(sw.adversary.invariance_spread, 0.0, tol.invariance) + " (relative spread)");

  const auto plus = [](int x) { return std::max(0, x); };
  const std::array<int, 3> theorem{plus(profile.r1 - spec.n_e), plus(profile.r2 - spec.n_e),
                                   plus(profile.r0 - spec.n_e)};
  const auto bounds = cert.converse.bounds();
  std::ostringstream bound_detail;
  bound_detail << "cut ranks (" << bounds[0] << ", " << bounds[1] << ", " << bounds[2] << "), expected ("
               << theorem[0] << ", " << theorem[1] << ", " << theorem[2] << ")";
  add("converse_bounds", bounds == theorem, bound_detail.str());
  const auto slopes = cert.converse.slopes();
  double worst = 0.0;
  for (std::size_t i = 0; i < 3; ++i) worst = std::max(worst, std::abs(slopes[i] - bounds[i]));
  add("converse_slopes", worst <= tol.prelog, describe_check(worst, 0.0, tol.prelog) + " (largest slope error)");

  const double message_sum = sw.target[0] + sw.target[1] + sw.target[2];
  cert.total_entropy_slope = message_sum + n_e;
  cert.leakage_slope = n_e;
  cert.side_info_residual = 0.0;
  cert.secrecy_slope = cert.total_entropy_slope - cert.leakage_slope - cert.side_info_residual;
  const double fitted_secrecy = sw.fitted[0] + sw.fitted[1] + sw.fitted[2] + sw.fitted[3] - sw.leakage_prelog;
  add("secrecy_accounting",
      cert.secrecy_slope == message_sum && std::abs(fitted_secrecy - message_sum) <= tol.prelog,
      describe_check(fitted_secrecy, message_sum, tol.prelog) + " (fitted entropy minus leakage)");

  if (mode == PrivacyMode::mutual_privacy) {
    bool disjoint = true;
    for (const auto& part : sw.scheme.parts) disjoint = disjoint && privacy_overlap(part.allocation).disjoint();
    add("privacy_disjoint", disjoint,
        disjoint ? "C_A unseen by receiver 2 and C_C unseen by receiver 1" : "private codebooks overlap");
  }

  cert.passed = std::all_of(cert.checks.begin(), cert.checks.end(), [](const Check& c) { return c.passed; });
  return cert;
}

}  // namespace sdof
