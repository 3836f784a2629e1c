#pragma once

// Log-det rate and leakage evaluation over SNR sweeps, pre-log fitting,
// cut-set converse slopes and randomized eavesdropper search.

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "sdof/channel.hpp"
#include "sdof/scheme.hpp"

namespace sdof {

/// Log-spaced p_bar values from `min` to `max` inclusive.
struct SnrGrid {
  double min = 1e4;
  double max = 1e12;
  int points = 9;

  /// Throws ErrorKind::input unless points >= 4 and the grid spans at least
  /// four decades.
  std::vector<double> values() const;
};

enum class Execution { serial, parallel };

struct Tolerances {
  double prelog = 0.05;      // achievable and converse slope matches
  double fictitious = 0.02;  // RE pre-log against N_E
  double leakage = 0.02;     // leakage pre-log against N_E
  double invariance = 1e-9;  // relative spread of leakage over eavesdroppers
};

struct AnalysisOptions {
  SnrGrid grid;
  Tolerances tol;
  int trials = 100;
  std::uint64_t seed = 0;
  Execution execution = Execution::parallel;
  SchemeOptions scheme;
  GsvdOptions gsvd;
};

struct Leakage {
  double bits = 0.0;
  int effective_rank = 0;
  bool rank_deficient = false;  // effective_rank below the row count
};

/// I(X̄; H̃X̄ + H̃N) = log2 det(H̃((P/r0 + 1)I)H̃ᴴ) − log2 det(H̃H̃ᴴ) for a
/// signal of power P/r0 and unit artificial noise per dimension. A
/// rank-deficient H̃ is evaluated on its row space.
Leakage eve_leakage(double signal_power, int r0, const ComplexMatrix& h_tilde);

/// Eavesdropper matrix for one trial: n_e x r0, rank min(n_e, r0). Trial 0
/// uses orthonormal rows; later trials mix them by a random square matrix.
ComplexMatrix sample_eavesdropper(int n_e, int r0, std::uint64_t seed, std::uint64_t trial);

/// Leakage in bits for each (trial, p_bar) pair, row-major by trial.
/// Points where p_bar leaves no signal power hold NaN.
std::vector<double> leakage_grid(int n_e, int r0, double s_p, const std::vector<double>& p_bar, int trials,
                                 std::uint64_t seed, Execution execution);

struct RateCurves {
  std::vector<double> p_bar;
  std::vector<double> per_channel;  // R
  std::vector<double> r0, r1, r2, re;
  std::vector<std::string> warnings;  // dropped low-SNR points
};

/// Weighted message rates of the scheme at every feasible grid point.
RateCurves achievable_rate_curve(const Scheme& scheme, const ParallelChannel& pc, const std::vector<double>& p_bar,
                                 Execution execution = Execution::serial);

/// Least-squares slope of bits against log2(p_bar) over the top ceil(n/2)
/// points. Throws ErrorKind::input for fewer than four points or a grid
/// that is not strictly increasing.
double fit_prelog(const std::vector<double>& p_bar, const std::vector<double>& bits);

struct ConverseCut {
  EveConstruction construction;
  int bound = 0;        // residual rank, the pre-log bound of the cut
  double slope = 0.0;   // fitted slope of log2 det(I + (p_bar/N_T)·M·Mᴴ)
  std::vector<double> bits;
};

struct ConverseReport {
  std::vector<double> p_bar;
  std::array<ConverseCut, 3> cuts;  // user1, user2, sum

  std::array<int, 3> bounds() const { return {cuts[0].bound, cuts[1].bound, cuts[2].bound}; }
  std::array<double, 3> slopes() const { return {cuts[0].slope, cuts[1].slope, cuts[2].slope}; }
};

/// log2 det(I + a·M·Mᴴ), zero for an empty M.
double log2_det_gain(const ComplexMatrix& m, double a);

ConverseReport converse_prelog(const ChannelSpec& spec, const AnalysisOptions& options = {});

struct AdversaryTrial {
  std::uint64_t trial = 0;
  double prelog = 0.0;
  double reference_bits = 0.0;  // leakage at the largest grid power
};

struct AdversaryReport {
  std::uint64_t seed = 0;
  double reference_p_bar = 0.0;
  double worst_prelog = 0.0;
  std::uint64_t worst_trial = 0;
  double invariance_spread = 0.0;  // (max − min)/max of reference_bits
  std::vector<AdversaryTrial> trials;
  std::vector<double> worst_curve;  // max over trials at each grid point
};

AdversaryReport adversarial_eve_search(const ParallelChannel& pc, const SchemeAllocation& alloc,
                                       const AnalysisOptions& options);

struct SweepReport {
  ChannelSpec spec;
  Point target{};
  PrivacyMode mode = PrivacyMode::no_privacy;
  Scheme scheme;
  ParallelChannel channel;
  RateCurves curves;
  AdversaryReport adversary;
  std::array<double, 4> fitted{};  // d0, d1, d2, RE pre-logs
  double leakage_prelog = 0.0;
  AnalysisOptions options;
  std::vector<std::string> warnings;
};

SweepReport sweep(const ChannelSpec& spec, const Point& target, PrivacyMode mode, const AnalysisOptions& options);

struct Check {
  std::string name;
  bool passed = false;
  std::string detail;
};

struct Certificate {
  SweepReport sweep;
  ConverseReport converse;
  std::vector<Check> checks;
  // Pre-log accounting of the equivocation: total entropy of the codeword
  // (messages plus fictitious), minus leakage, minus the side-information
  // residual, leaves the secret message pre-log.
  double total_entropy_slope = 0.0;
  double leakage_slope = 0.0;
  double side_info_residual = 0.0;
  double secrecy_slope = 0.0;
  bool passed = false;

  const Check* failed_check() const;
};

/// Throws ErrorKind::infeasible_target when the target is outside the region.
Certificate certify(const ChannelSpec& spec, const Point& target, PrivacyMode mode, const AnalysisOptions& options);

}  // namespace sdof
