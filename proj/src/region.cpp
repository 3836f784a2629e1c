#include "sdof/region.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "sdof/error.hpp"

namespace sdof {

namespace {

std::string describe(const IntTriple& coeffs) {
  std::string out;
  for (int i = 0; i < 3; ++i) {
    if (coeffs[static_cast<std::size_t>(i)] == 0) continue;
    if (!out.empty()) out += "+";
    out += "d" + std::to_string(i);
  }
  return out;
}

Constraint make_constraint(IntTriple coeffs, int raw) {
  Constraint c;
  c.coeffs = coeffs;
  c.raw_bound = raw;
  c.bound = std::max(0, raw);
  c.label = describe(coeffs) + " <= " + std::to_string(c.bound);
  return c;
}

long dot(const IntTriple& a, const IntTriple& x) {
  return static_cast<long>(a[0]) * x[0] + static_cast<long>(a[1]) * x[1] + static_cast<long>(a[2]) * x[2];
}

long det3(const IntTriple& a, const IntTriple& b, const IntTriple& c) {
  return static_cast<long>(a[0]) * (static_cast<long>(b[1]) * c[2] - static_cast<long>(b[2]) * c[1]) -
         static_cast<long>(a[1]) * (static_cast<long>(b[0]) * c[2] - static_cast<long>(b[2]) * c[0]) +
         static_cast<long>(a[2]) * (static_cast<long>(b[0]) * c[1] - static_cast<long>(b[1]) * c[0]);
}

bool spans_3d(const std::vector<IntTriple>& normals) {
  for (std::size_t i = 0; i < normals.size(); ++i)
    for (std::size_t j = i + 1; j < normals.size(); ++j)
      for (std::size_t k = j + 1; k < normals.size(); ++k)
        if (det3(normals[i], normals[j], normals[k]) != 0) return true;
  return false;
}

bool spans_2d(const std::vector<std::array<int, 2>>& normals) {
  for (std::size_t i = 0; i < normals.size(); ++i)
    for (std::size_t j = i + 1; j < normals.size(); ++j)
      if (normals[i][0] * normals[j][1] - normals[i][1] * normals[j][0] != 0) return true;
  return false;
}

bool feasible(const SdofRegion& region, const IntTriple& x) {
  if (x[0] < 0 || x[1] < 0 || x[2] < 0) return false;
  return std::all_of(region.constraints.begin(), region.constraints.end(),
                     [&](const Constraint& c) { return dot(c.coeffs, x) <= c.bound; });
}

int bounding_box(const SdofRegion& region) {
  int box = 0;
  for (const auto& c : region.constraints) box = std::max(box, c.bound);
  return box;
}

long cross(const std::array<int, 2>& o, const std::array<int, 2>& a, const std::array<int, 2>& b) {
  return static_cast<long>(a[0] - o[0]) * (b[1] - o[1]) - static_cast<long>(a[1] - o[1]) * (b[0] - o[0]);
}

// Andrew's monotone chain; the input points are already hull vertices.
std::vector<std::array<int, 2>> counter_clockwise(std::vector<std::array<int, 2>> pts) {
  std::sort(pts.begin(), pts.end());
  if (pts.size() < 3) return pts;
  std::vector<std::array<int, 2>> hull(2 * pts.size());
  std::size_t k = 0;
  for (const auto& p : pts) {
    while (k >= 2 && cross(hull[k - 2], hull[k - 1], p) <= 0) --k;
    hull[k++] = p;
  }
  for (std::size_t i = pts.size() - 1, lower = k + 1; i-- > 0;) {
    while (k >= lower && cross(hull[k - 2], hull[k - 1], pts[i]) <= 0) --k;
    hull[k++] = pts[i];
  }
  hull.resize(k - 1);
  return hull;
}

std::vector<std::array<int, 2>> slice_vertices(const SdofRegion& region, int d0, int box) {
  std::vector<std::array<int, 2>> out;
  for (int d1 = 0; d1 <= box; ++d1) {
    for (int d2 = 0; d2 <= box; ++d2) {
      const IntTriple x{d0, d1, d2};
      if (!feasible(region, x)) continue;
      std::vector<std::array<int, 2>> tight;
      if (d1 == 0) tight.push_back({-1, 0});
      if (d2 == 0) tight.push_back({0, -1});
      for (const auto& c : region.constraints) {
        if ((c.coeffs[1] != 0 || c.coeffs[2] != 0) && dot(c.coeffs, x) == c.bound)
          tight.push_back({c.coeffs[1], c.coeffs[2]});
      }
      if (spans_2d(tight)) out.push_back({d1, d2});
    }
  }
  return counter_clockwise(std::move(out));
}

}  // namespace

std::string_view to_string(PrivacyMode mode) {
  return mode == PrivacyMode::no_privacy ? "no_privacy" : "mutual_privacy";
}

std::string_view to_string(SliceShape shape) {
  return shape == SliceShape::rectangle ? "rectangle" : "pentagon";
}

std::string_view to_string(RegionRelation relation) {
  switch (relation) {
    case RegionRelation::equal: return "equal";
    case RegionRelation::a_subset_b: return "a_subset_b";
    case RegionRelation::b_subset_a: return "b_subset_a";
    case RegionRelation::incomparable: return "incomparable";
  }
  return "unknown";
}

int SdofRegion::max_d0() const {
  int best = std::numeric_limits<int>::max();
  for (const auto& c : constraints)
    if (c.coeffs[0] != 0) best = std::min(best, c.bound);
  return best == std::numeric_limits<int>::max() ? 0 : best;
}

SdofRegion region_no_privacy(const RankProfile& profile, int n_e) {
  if (n_e < 0) throw Error(ErrorKind::input, "n_e must be nonnegative");
  SdofRegion r;
  r.mode = PrivacyMode::no_privacy;
  r.profile = profile;
  r.n_e = n_e;
  r.constraints = {make_constraint({1, 1, 0}, profile.r1 - n_e), make_constraint({1, 0, 1}, profile.r2 - n_e),
                   make_constraint({1, 1, 1}, profile.r0 - n_e)};
  return r;
}

SdofRegion region_with_privacy(const RankProfile& profile, int n_e) {
  if (n_e < 0) throw Error(ErrorKind::input, "n_e must be nonnegative");
  SdofRegion r;
  r.mode = PrivacyMode::mutual_privacy;
  r.profile = profile;
  r.n_e = n_e;
  r.constraints = {make_constraint({1, 1, 0}, profile.r1 - n_e), make_constraint({1, 0, 1}, profile.r2 - n_e),
                   make_constraint({0, 1, 0}, profile.r1 - profile.s),
                   make_constraint({0, 0, 1}, profile.r2 - profile.s)};
  return r;
}

SdofRegion make_region(const RankProfile& profile, int n_e, PrivacyMode mode) {
  return mode == PrivacyMode::no_privacy ? region_no_privacy(profile, n_e) : region_with_privacy(profile, n_e);
}

SliceShape classify_case(const RankProfile& profile, int n_e, int d0) {
  const SdofRegion r = region_no_privacy(profile, n_e);
  if (d0 < 0 || d0 > r.max_d0()) {
    std::ostringstream msg;
    msg << "d0 = " << d0 << " is outside the feasible range [0, " << r.max_d0() << "]";
    throw Error(ErrorKind::infeasible_target, msg.str());
  }
  return d0 + n_e >= profile.s ? SliceShape::rectangle : SliceShape::pentagon;
}

RegionVertexSet enumerate_vertices(const SdofRegion& region) {
  RegionVertexSet out;
  const int box = bounding_box(region);
  for (int a = 0; a <= box; ++a) {
    for (int b = 0; b <= box; ++b) {
      for (int c = 0; c <= box; ++c) {
        const IntTriple x{a, b, c};
        if (!feasible(region, x)) continue;
        std::vector<IntTriple> tight;
        for (int i = 0; i < 3; ++i) {
          if (x[static_cast<std::size_t>(i)] == 0) {
            IntTriple n{0, 0, 0};
            n[static_cast<std::size_t>(i)] = -1;
            tight.push_back(n);
          }
        }
        for (const auto& con : region.constraints)
          if (dot(con.coeffs, x) == con.bound) tight.push_back(con.coeffs);
        if (spans_3d(tight)) out.vertices.push_back(x);
      }
    }
  }
  for (int d0 = 0; d0 <= region.max_d0(); ++d0) out.fixed_d0_polygons[d0] = slice_vertices(region, d0, box);
  return out;
}

std::vector<std::string> violated_constraints(const SdofRegion& region, const Point& point, double tol) {
  std::vector<std::string> out;
  for (int i = 0; i < 3; ++i) {
    const double v = point[static_cast<std::size_t>(i)];
    if (!std::isfinite(v)) {
      out.push_back("d" + std::to_string(i) + " is not finite");
    } else if (v < -tol) {
      out.push_back("d" + std::to_string(i) + " >= 0");
    }
  }
  for (const auto& c : region.constraints) {
    const double lhs = c.coeffs[0] * point[0] + c.coeffs[1] * point[1] + c.coeffs[2] * point[2];
    if (!(lhs <= c.bound + tol)) out.push_back(c.label);
  }
  return out;
}

bool contains(const SdofRegion& region, const Point& point, double tol) {
  return violated_constraints(region, point, tol).empty();
}

RegionRelation compare(const SdofRegion& a, const SdofRegion& b) {
  if (!(a.profile == b.profile) || a.n_e != b.n_e) {
    throw Error(ErrorKind::input, "compare: regions were built for different profiles or n_e");
  }
  const auto inside = [](const SdofRegion& outer, const SdofRegion& inner) {
    for (const auto& v : enumerate_vertices(inner).vertices) {
      if (!contains(outer, {static_cast<double>(v[0]), static_cast<double>(v[1]), static_cast<double>(v[2])}))
        return false;
    }
    return true;
  };
  const bool ab = inside(b, a);
  const bool ba = inside(a, b);
  if (ab && ba) return RegionRelation::equal;
  if (ab) return RegionRelation::a_subset_b;
  if (ba) return RegionRelation::b_subset_a;
  return RegionRelation::incomparable;
}

}  // namespace sdof
