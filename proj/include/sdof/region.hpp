#pragma once

// Secrecy-degrees-of-freedom regions over (d0, d1, d2) with and without
// the mutual privacy constraint.

#include <array>
#include <map>
#include <string>
#include <vector>

#include "sdof/gsvd.hpp"

namespace sdof {

enum class PrivacyMode { no_privacy, mutual_privacy };

std::string_view to_string(PrivacyMode mode);

using IntTriple = std::array<int, 3>;
using Point = std::array<double, 3>;

/// coeffs · (d0, d1, d2) <= bound, where bound = {raw_bound}⁺.
struct Constraint {
  IntTriple coeffs{};
  int bound = 0;
  int raw_bound = 0;
  std::string label;

  bool clamped() const { return raw_bound < 0; }
};

/// Nonnegativity d_i >= 0 is implied and not listed among the constraints.
struct SdofRegion {
  PrivacyMode mode = PrivacyMode::no_privacy;
  RankProfile profile;
  int n_e = 0;
  std::vector<Constraint> constraints;

  /// Largest d0 with (d0, 0, 0) in the region.
  int max_d0() const;
};

SdofRegion region_no_privacy(const RankProfile& profile, int n_e);
SdofRegion region_with_privacy(const RankProfile& profile, int n_e);
SdofRegion make_region(const RankProfile& profile, int n_e, PrivacyMode mode);

enum class SliceShape { rectangle, pentagon };

std::string_view to_string(SliceShape shape);

/// Shape of the (d1, d2) slice at fixed d0: rectangle iff d0 + n_e >= s.
/// Throws ErrorKind::infeasible_target when d0 is outside the no-privacy
/// region's d0 range.
SliceShape classify_case(const RankProfile& profile, int n_e, int d0);

struct RegionVertexSet {
  std::vector<IntTriple> vertices;  // lexicographic order
  // Slice polygons keyed by integer d0, counter-clockwise from (0, 0).
  std::map<int, std::vector<std::array<int, 2>>> fixed_d0_polygons;
};

RegionVertexSet enumerate_vertices(const SdofRegion& region);

inline constexpr double kMembershipTol = 1e-12;

/// Closed-region membership, nonnegativity included.
bool contains(const SdofRegion& region, const Point& point, double tol = kMembershipTol);

/// Labels of every constraint (nonnegativity included) the point violates.
std::vector<std::string> violated_constraints(const SdofRegion& region, const Point& point,
                                              double tol = kMembershipTol);

enum class RegionRelation { equal, a_subset_b, b_subset_a, incomparable };

std::string_view to_string(RegionRelation relation);

/// Throws ErrorKind::input when the regions were built for different
/// profiles or eavesdropper budgets.
RegionRelation compare(const SdofRegion& a, const SdofRegion& b);

}  // namespace sdof
