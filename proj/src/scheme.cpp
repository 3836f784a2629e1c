#include "sdof/scheme.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "sdof/error.hpp"

namespace sdof {

namespace {

constexpr double kTargetTol = 1e-9;

std::string format_point(const Point& p) {
  std::ostringstream out;
  out << "(" << p[0] << ", " << p[1] << ", " << p[2] << ")";
  return out.str();
}

std::vector<int> coordinates(const Range& r, const Range& observed) {
  std::vector<int> out;
  for (int i = std::max(r.begin, observed.begin); i < std::min(r.end, observed.end); ++i) out.push_back(i);
  return out;
}

}  // namespace

std::string_view to_string(CaseId id) { return id == CaseId::case1 ? "case1" : "case2"; }

std::string_view to_string(Surplus surplus) {
  switch (surplus) {
    case Surplus::none: return "none";
    case Surplus::user1: return "user1";
    case Surplus::user2: return "user2";
    case Surplus::balanced: return "balanced";
  }
  return "unknown";
}

int Range::overlap(const Range& other) const {
  return std::max(0, std::min(end, other.end) - std::max(begin, other.begin));
}

Range observed_by(const RankProfile& profile, int receiver) {
  if (receiver == 1) return {0, profile.r1};
  if (receiver == 2) return {profile.rt1, profile.r0};
  throw Error(ErrorKind::input, "receiver must be 1 or 2");
}

DimensionPlan plan_dimensions(const RankProfile& p, int n_e, int d0, PrivacyMode mode, Surplus surplus) {
  if (n_e < 0 || d0 < 0) throw Error(ErrorKind::input, "plan_dimensions: n_e and d0 must be nonnegative");
  DimensionPlan plan;
  plan.n_e = n_e;
  plan.n_e_prime = n_e + d0;
  const int ne = plan.n_e_prime;

  if (ne >= p.s) {
    // Case 1: the common block plus N_E' − s dimensions of each private
    // block carry (W0, WE). Clamping only bites when N_E' > r_i, where the
    // region already forces that receiver's rates to zero.
    const int b1 = std::min(ne - p.s, p.rt1);
    const int b2 = std::min(ne - p.s, p.rt2);
    plan.case_id = CaseId::case1;
    plan.surplus = Surplus::none;
    plan.a = {0, p.rt1 - b1};
    plan.b = {p.rt1 - b1, p.rt1 + p.s + b2};
    plan.c = {p.rt1 + p.s + b2, p.r0};
    plan.b_split = {b1, p.s, b2};
    plan.blocks = {{"A", plan.a},
                   {"B1", {p.rt1 - b1, p.rt1}},
                   {"B0", {p.rt1, p.rt1 + p.s}},
                   {"B2", {p.rt1 + p.s, p.rt1 + p.s + b2}},
                   {"C", plan.c}};
    return plan;
  }

  plan.case_id = CaseId::case2;
  if (mode == PrivacyMode::mutual_privacy) {
    // The whole common block carries (W0, WE) as if N_E' were s.
    plan.surplus = Surplus::balanced;
    plan.n_e_prime = p.s;
    plan.a = {0, p.rt1};
    plan.b = {p.rt1, p.rt1 + p.s};
    plan.c = {p.rt1 + p.s, p.r0};
    plan.b_split = {0, p.s};
  } else if (surplus == Surplus::user2) {
    plan.surplus = Surplus::user2;
    plan.a = {0, p.rt1};
    plan.b = {p.rt1, p.rt1 + ne};
    plan.c = {p.rt1 + ne, p.r0};
    plan.b_split = {p.s - ne, ne};
  } else {
    plan.surplus = Surplus::user1;
    plan.a = {0, p.r1 - ne};
    plan.b = {p.r1 - ne, p.r1};
    plan.c = {p.r1, p.r0};
    plan.b_split = {p.s - ne, ne};
  }
  plan.blocks = {{"A", plan.a}, {"B", plan.b}, {"C", plan.c}};
  return plan;
}

double per_channel_rate(double signal_power, int r0, double s_min) {
  if (!(signal_power > 0.0) || !std::isfinite(signal_power)) {
    throw Error(ErrorKind::input, "per_channel_rate: signal power must be positive");
  }
  if (r0 < 1) throw Error(ErrorKind::input, "per_channel_rate: r0 must be at least 1");
  if (!(s_min > 0.0)) throw Error(ErrorKind::input, "per_channel_rate: s_min must be positive");
  const double g = s_min * s_min;
  return std::log2(1.0 + g * (signal_power / r0) / (g + 1.0));
}

PowerSplit power_budget(double p_bar, double s_p, int r0) {
  if (!(s_p > 0.0) || !(p_bar > 0.0) || r0 < 0) {
    throw Error(ErrorKind::input, "power_budget: p_bar and s_p must be positive, r0 nonnegative");
  }
  const double effective = p_bar / (s_p * s_p);
  if (!(effective > r0)) {
    std::ostringstream msg;
    msg << "power budget p_bar = " << p_bar << " leaves no signal power after " << r0
        << " units of artificial noise; p_bar must exceed " << r0 * s_p * s_p;
    throw Error(ErrorKind::input, msg.str());
  }
  return {effective - r0, static_cast<double>(r0)};
}

std::array<double, 4> Scheme::rates() const {
  std::array<double, 4> out{};
  for (const auto& part : parts)
    for (std::size_t i = 0; i < 4; ++i) out[i] += part.weight * part.allocation.rates[i];
  return out;
}

SchemeAllocation allocate(const ParallelChannel& pc, double p_bar, const DimensionPlan& plan, const Point& target,
                          PrivacyMode mode, const SchemeOptions& options) {
  if (!(options.delta > 0.0 && options.delta < 1.0)) throw Error(ErrorKind::input, "delta must lie in (0, 1)");
  SchemeAllocation a;
  a.plan = plan;
  a.profile = pc.profile;
  a.mode = mode;
  a.d_target = target;
  a.p_bar = p_bar;
  a.s_p = pc.s_p;
  a.s_min = pc.s_min;
  a.delta = options.delta;
  const PowerSplit split = power_budget(p_bar, pc.s_p, pc.profile.r0);
  a.signal_power = split.signal_power;
  a.noise_power_total = split.noise_total;
  a.rate_per_channel = per_channel_rate(split.signal_power, pc.profile.r0, pc.s_min);
  a.coding_rate = (1.0 - options.delta) * a.rate_per_channel;
  a.rates = {target[0] * a.coding_rate, target[1] * a.coding_rate, target[2] * a.coding_rate,
             plan.n_e * a.coding_rate};
  return a;
}

Scheme synthesize(const ParallelChannel& pc, double p_bar, int n_e, const Point& target, PrivacyMode mode,
                  const SchemeOptions& options) {
  const RankProfile& p = pc.profile;
  const SdofRegion region = make_region(p, n_e, mode);
  const auto violated = violated_constraints(region, target);
  if (!violated.empty()) {
    std::ostringstream msg;
    msg << "target " << format_point(target) << " is outside the " << to_string(mode) << " region; violated:";
    for (const auto& v : violated) msg << " [" << v << "]";
    throw Error(ErrorKind::infeasible_target, msg.str());
  }
  const double d0_rounded = std::round(target[0]);
  if (std::abs(target[0] - d0_rounded) > kTargetTol) {
    throw Error(ErrorKind::infeasible_target,
                "target " + format_point(target) +
                    " has a non-integer d0 and is not a combination of two corner allocations");
  }
  const int d0 = static_cast<int>(d0_rounded);
  const Point t{static_cast<double>(d0), std::max(0.0, target[1]), std::max(0.0, target[2])};
  const int ne = n_e + d0;

  Scheme scheme;
  scheme.target = t;
  scheme.mode = mode;
  const auto single = [&](Surplus surplus, const Point& point) {
    return allocate(pc, p_bar, plan_dimensions(p, n_e, d0, mode, surplus), point, mode, options);
  };

  if (mode == PrivacyMode::mutual_privacy || ne >= p.s) {
    scheme.parts.push_back({1.0, single(Surplus::none, t)});
    return scheme;
  }

  // Pentagon slice: each corner allocation covers a box; the remaining
  // triangle is reached by time-sharing between them.
  const double first_d1 = p.r1 - ne, first_d2 = p.r2 - p.s;
  const double second_d1 = p.r1 - p.s, second_d2 = p.r2 - ne;
  if (t[1] <= first_d1 + kTargetTol && t[2] <= first_d2 + kTargetTol) {
    scheme.parts.push_back({1.0, single(Surplus::user1, t)});
  } else if (t[1] <= second_d1 + kTargetTol && t[2] <= second_d2 + kTargetTol) {
    scheme.parts.push_back({1.0, single(Surplus::user2, t)});
  } else {
    const double lambda = (t[1] - second_d1) / (p.s - ne);
    const Point corner{t[0], first_d1, first_d2};
    const Point rest{t[0], second_d1, (t[2] - lambda * first_d2) / (1.0 - lambda)};
    scheme.parts.push_back({lambda, single(Surplus::user1, corner)});
    scheme.parts.push_back({1.0 - lambda, single(Surplus::user2, rest)});
  }
  return scheme;
}

DecodabilityReport check_decodability(const SchemeAllocation& alloc) {
  const Range obs1 = observed_by(alloc.profile, 1);
  const Range obs2 = observed_by(alloc.profile, 2);
  const double r = alloc.rate_per_channel;
  const auto& rates = alloc.rates;
  const auto& d = alloc.d_target;

  DecodabilityReport report;
  const auto add = [&](std::string message, int receiver, const Range& block, const Range& obs, double rate,
                       bool required) {
    Margin m;
    m.message = std::move(message);
    m.receiver = receiver;
    m.dimensions = block.overlap(obs);
    m.capacity = m.dimensions * r;
    m.rate = rate;
    m.margin = m.capacity - rate;
    // A message with no rate has no codeword to decode.
    m.required = required && rate > 0.0;
    if (m.required && !(m.margin > 0.0)) report.ok = false;
    report.margins.push_back(std::move(m));
  };
  add("(W0,WE)", 1, alloc.plan.b, obs1, rates[0] + rates[3], d[0] > 0.0 || d[1] > 0.0);
  add("W1", 1, alloc.plan.a, obs1, rates[1], d[1] > 0.0);
  add("(W0,WE)", 2, alloc.plan.b, obs2, rates[0] + rates[3], d[0] > 0.0 || d[2] > 0.0);
  add("W2", 2, alloc.plan.c, obs2, rates[2], d[2] > 0.0);
  return report;
}

PrivacyLeak privacy_overlap(const SchemeAllocation& alloc) {
  PrivacyLeak out;
  out.a_seen_by_2 = coordinates(alloc.plan.a, observed_by(alloc.profile, 2));
  out.c_seen_by_1 = coordinates(alloc.plan.c, observed_by(alloc.profile, 1));
  return out;
}

}  // namespace sdof
