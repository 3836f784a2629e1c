#pragma once

// Signal-space dimension allocation and rate budgeting for the
// artificial-noise + fictitious-message transmission scheme.
//
// Coordinates index the r0 parallel channels in GSVD order: receiver 1
// observes [0, r1), receiver 2 observes [rt1, r0).

#include <array>
#include <string>
#include <vector>

#include "sdof/channel.hpp"
#include "sdof/region.hpp"

namespace sdof {

inline constexpr double kDefaultDelta = 1e-3;

enum class CaseId { case1, case2 };

std::string_view to_string(CaseId id);

/// Which user absorbs the surplus common dimensions in case 2. `balanced`
/// is the privacy-mode layout where the whole common block carries (W0, WE).
enum class Surplus { none, user1, user2, balanced };

std::string_view to_string(Surplus surplus);

/// Half-open coordinate range [begin, end).
struct Range {
  int begin = 0;
  int end = 0;

  int size() const { return end - begin; }
  int overlap(const Range& other) const;
  friend bool operator==(const Range&, const Range&) = default;
};

struct Block {
  std::string name;  // A, B1, B0, B2, C in case 1; A, B, C in case 2
  Range range;
};

struct DimensionPlan {
  CaseId case_id = CaseId::case1;
  Surplus surplus = Surplus::none;
  int n_e = 0;
  int n_e_prime = 0;  // N_E + d0, or s in privacy mode below the dichotomy
  Range a;
  Range b;
  Range c;
  std::vector<int> b_split;  // (b1, b0, b2) in case 1, (s1, s2) in case 2
  std::vector<Block> blocks;

  int dims_a() const { return a.size(); }
  int dims_b() const { return b.size(); }
  int dims_c() const { return c.size(); }
};

Range observed_by(const RankProfile& profile, int receiver);

/// Layout for a given d0. Case 1 when the effective budget reaches s.
/// `surplus` picks the case-2 orientation and is ignored otherwise.
DimensionPlan plan_dimensions(const RankProfile& profile, int n_e, int d0, PrivacyMode mode,
                              Surplus surplus = Surplus::user1);

/// R = log2(1 + s_min²·(P/r0)/(s_min² + 1)).
double per_channel_rate(double signal_power, int r0, double s_min);

struct PowerSplit {
  double signal_power = 0.0;  // P = p_bar / s_p² − r0
  double noise_total = 0.0;   // r0 units of artificial noise
};

/// Throws ErrorKind::input naming the smallest feasible p_bar (r0·s_p²)
/// when no power is left for the signal.
PowerSplit power_budget(double p_bar, double s_p, int r0);

struct SchemeAllocation {
  DimensionPlan plan;
  RankProfile profile;
  PrivacyMode mode = PrivacyMode::no_privacy;
  Point d_target{};
  double p_bar = 0.0;
  double s_p = 0.0;
  double s_min = 0.0;
  double delta = kDefaultDelta;
  double signal_power = 0.0;
  double noise_power_total = 0.0;
  double rate_per_channel = 0.0;  // R
  double coding_rate = 0.0;       // (1 − δ)·R, the rate booked per dimension
  std::array<double, 4> rates{};  // R0, R1, R2, RE

  int n_e() const { return plan.n_e; }
};

struct WeightedAllocation {
  double weight = 1.0;
  SchemeAllocation allocation;
};

struct Scheme {
  Point target{};
  PrivacyMode mode = PrivacyMode::no_privacy;
  std::vector<WeightedAllocation> parts;  // one part, or two when time-shared

  bool time_shared() const { return parts.size() > 1; }
  /// Weighted message rates (R0, R1, R2, RE).
  std::array<double, 4> rates() const;
};

struct SchemeOptions {
  double delta = kDefaultDelta;
};

/// Allocation for one dimension plan without any region check. The target
/// may exceed what the plan supports; check_decodability then reports it.
SchemeAllocation allocate(const ParallelChannel& pc, double p_bar, const DimensionPlan& plan, const Point& target,
                          PrivacyMode mode, const SchemeOptions& options = {});

/// Builds the scheme for a target in the region of `mode`. d0 must be an
/// integer; d1 and d2 may be any reals in the slice. Pentagon-slice targets
/// beyond both corner allocations are split over the two corners.
/// Throws ErrorKind::infeasible_target listing violated facets.
Scheme synthesize(const ParallelChannel& pc, double p_bar, int n_e, const Point& target, PrivacyMode mode,
                  const SchemeOptions& options = {});

struct Margin {
  std::string message;  // "(W0,WE)", "W1", "W2"
  int receiver = 1;
  int dimensions = 0;       // dimensions of the decoding block seen by the receiver
  double capacity = 0.0;    // dimensions · R
  double rate = 0.0;        // rate booked on that block
  double margin = 0.0;      // capacity − rate
  bool required = true;     // false when the receiver has nothing to decode
};

struct DecodabilityReport {
  std::vector<Margin> margins;
  bool ok = true;  // every required margin is strictly positive
};

DecodabilityReport check_decodability(const SchemeAllocation& alloc);

/// Coordinates used by C_A that receiver 2 observes, and coordinates of C_C
/// that receiver 1 observes. Both are empty for privacy-safe layouts.
struct PrivacyLeak {
  std::vector<int> a_seen_by_2;
  std::vector<int> c_seen_by_1;

  bool disjoint() const { return a_seen_by_2.empty() && c_seen_by_1.empty(); }
};

PrivacyLeak privacy_overlap(const SchemeAllocation& alloc);

}  // namespace sdof
