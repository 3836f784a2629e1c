#include <gtest/gtest.h>

#include <cmath>

#include "fixtures.hpp"
#include "sdof/error.hpp"
#include "sdof/scheme.hpp"

using namespace sdof;

namespace {

// Allocation only reads the profile and the two gains.
ParallelChannel synthetic(const RankProfile& p, double s_p = 1.0, double s_min = 1.0 / std::sqrt(2.0)) {
  ParallelChannel pc;
  pc.profile = p;
  pc.s_p = s_p;
  pc.s_min = s_min;
  pc.effective_power = 0.0;
  return pc;
}

const RankProfile kExample = RankProfile::from_ranks(2, 2, 1);
const RankProfile kWide = RankProfile::from_ranks(4, 4, 3);

void expect_sound(const Scheme& scheme, const Point& target, int n_e) {
  Point achieved{};
  double weight = 0.0;
  for (const auto& part : scheme.parts) {
    const auto& a = part.allocation;
    weight += part.weight;
    EXPECT_GT(part.weight, 0.0);
    EXPECT_EQ(a.plan.dims_a() + a.plan.dims_b() + a.plan.dims_c(), a.profile.r0);
    EXPECT_NEAR(a.rates[3] / a.coding_rate, n_e, 1e-12);
    const auto report = check_decodability(a);
    EXPECT_TRUE(report.ok) << "target " << target[0] << "," << target[1] << "," << target[2] << " in "
                           << to_string(a.profile) << " n_e=" << n_e << " " << to_string(scheme.mode);
    for (int i = 0; i < 3; ++i) achieved[i] += part.weight * a.rates[i] / a.coding_rate;
    if (scheme.mode == PrivacyMode::mutual_privacy) EXPECT_TRUE(privacy_overlap(a).disjoint());
  }
  EXPECT_NEAR(weight, 1.0, 1e-12);
  for (int i = 0; i < 3; ++i) EXPECT_NEAR(achieved[i], target[i], 1e-9);
}

}  // namespace

TEST(PerChannelRate, Examples) {
  EXPECT_NEAR(per_channel_rate(3.0, 3, 1.0), std::log2(1.5), 1e-15);
  EXPECT_LT(per_channel_rate(1e-12, 3, 1.0), 1e-11);
  for (double p : {1e3, 1e6, 1e9, 1e12}) {
    const double ratio = per_channel_rate(p, 3, 1.0) / std::log2(p);
    EXPECT_GT(ratio, 0.5);
    EXPECT_LT(ratio, 1.0);
  }
  EXPECT_NEAR(per_channel_rate(1e300, 3, 1.0) / std::log2(1e300), 1.0, 0.01);
}

TEST(PerChannelRate, RejectsBadInputs) {
  for (auto f : {+[] { per_channel_rate(0.0, 3, 1.0); }, +[] { per_channel_rate(1.0, 0, 1.0); },
                 +[] { per_channel_rate(1.0, 3, 0.0); }}) {
    try {
      f();
      ADD_FAILURE();
    } catch (const Error& e) {
      EXPECT_EQ(e.kind(), ErrorKind::input);
    }
  }
}

TEST(PowerBudget, Examples) {
  const auto a = power_budget(100.0, 1.0, 3);
  EXPECT_EQ(a.signal_power, 97.0);
  EXPECT_EQ(a.noise_total, 3.0);
  const auto b = power_budget(1e6, 2.0, 5);
  EXPECT_EQ(b.signal_power, 249995.0);
  EXPECT_EQ(b.noise_total, 5.0);
}

TEST(PowerBudget, NoSignalPowerLeft) {
  try {
    power_budget(3.0, 1.0, 3);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::input);
    EXPECT_NE(std::string(e.what()).find("must exceed 3"), std::string::npos);
  }
}

TEST(PlanDimensions, TwoUserExampleCase1) {
  const auto plan = plan_dimensions(kExample, 1, 0, PrivacyMode::no_privacy);
  EXPECT_EQ(plan.case_id, CaseId::case1);
  EXPECT_EQ(plan.dims_a(), 1);
  EXPECT_EQ(plan.dims_b(), 1);
  EXPECT_EQ(plan.dims_c(), 1);
  EXPECT_EQ(plan.b_split, (std::vector<int>{0, 1, 0}));
}

TEST(PlanDimensions, ObservedCoordinates) {
  EXPECT_EQ(observed_by(kWide, 1), (Range{0, 4}));
  EXPECT_EQ(observed_by(kWide, 2), (Range{1, 5}));
}

TEST(Synthesize, TwoUserExample) {
  const auto pc = reduce_to_parallel(fixture::two_user_example());
  const auto scheme = synthesize(pc, 1e6, 1, {0, 1, 1}, PrivacyMode::no_privacy);
  ASSERT_EQ(scheme.parts.size(), 1u);
  const auto& a = scheme.parts[0].allocation;
  EXPECT_EQ(a.plan.case_id, CaseId::case1);
  EXPECT_EQ(a.plan.dims_a(), 1);
  EXPECT_EQ(a.plan.dims_b(), 1);
  EXPECT_EQ(a.plan.dims_c(), 1);
  EXPECT_EQ(a.plan.b_split, (std::vector<int>{0, 1, 0}));
  EXPECT_EQ(a.rates[1], a.rates[2]);
  EXPECT_EQ(a.rates[0], 0.0);
  // Every margin is exactly the δ share of one channel.
  for (const auto& m : check_decodability(a).margins) {
    EXPECT_EQ(m.dimensions, 1);
    EXPECT_NEAR(m.margin, a.delta * a.rate_per_channel, 1e-9);
  }
}

TEST(Synthesize, WideOverlapCorners) {
  const auto pc = synthetic(kWide);
  const auto first = synthesize(pc, 1e6, 1, {0, 3, 1}, PrivacyMode::no_privacy);
  ASSERT_EQ(first.parts.size(), 1u);
  const auto& a = first.parts[0].allocation;
  EXPECT_EQ(a.plan.case_id, CaseId::case2);
  EXPECT_EQ(a.plan.dims_a(), 3);
  EXPECT_EQ(a.plan.dims_b(), 1);
  EXPECT_EQ(a.plan.dims_c(), 1);
  EXPECT_NEAR(a.rates[1] / a.coding_rate, 3.0, 1e-12);
  // W2 decodes from r2 − s = 1 channel.
  const auto report = check_decodability(a);
  EXPECT_EQ(report.margins[3].message, "W2");
  EXPECT_EQ(report.margins[3].dimensions, 1);
  EXPECT_NEAR(report.margins[3].capacity, a.rate_per_channel, 1e-12);

  const auto second = synthesize(pc, 1e6, 1, {0, 1, 3}, PrivacyMode::no_privacy);
  ASSERT_EQ(second.parts.size(), 1u);
  const auto& b = second.parts[0].allocation;
  EXPECT_EQ(b.plan.surplus, Surplus::user2);
  EXPECT_EQ(b.plan.dims_a(), 1);
  EXPECT_EQ(b.plan.dims_b(), 1);
  EXPECT_EQ(b.plan.dims_c(), 3);
}

TEST(Synthesize, TimeSharingBetweenCorners) {
  const auto scheme = synthesize(synthetic(kWide), 1e6, 1, {0, 2, 2}, PrivacyMode::no_privacy);
  ASSERT_TRUE(scheme.time_shared());
  EXPECT_NEAR(scheme.parts[0].weight, 0.5, 1e-15);
  EXPECT_NEAR(scheme.parts[1].weight, 0.5, 1e-15);
  EXPECT_EQ(scheme.parts[0].allocation.d_target, (Point{0, 3, 1}));
  EXPECT_EQ(scheme.parts[1].allocation.d_target, (Point{0, 1, 3}));
  expect_sound(scheme, {0, 2, 2}, 1);
}

TEST(Synthesize, OutsideRegionIsInfeasible) {
  try {
    synthesize(synthetic(kExample), 1e6, 1, {1, 1, 1}, PrivacyMode::no_privacy);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::infeasible_target);
    EXPECT_NE(std::string(e.what()).find("[d0+d1 <= 1]"), std::string::npos);
  }
  try {
    synthesize(synthetic(kWide), 1e6, 1, {0.5, 1, 1}, PrivacyMode::no_privacy);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::infeasible_target);
  }
}

TEST(Decodability, ForcedTargetOutsideRegion) {
  const auto pc = synthetic(kExample);
  const auto plan = plan_dimensions(kExample, 1, 0, PrivacyMode::no_privacy);
  const auto a = allocate(pc, 1e6, plan, {0, 2, 1}, PrivacyMode::no_privacy);
  const auto report = check_decodability(a);
  EXPECT_FALSE(report.ok);
  EXPECT_EQ(report.margins[1].message, "W1");
  EXPECT_LT(report.margins[1].margin, 0.0);
}

TEST(SchemeProperties, EveryFeasibleTargetIsServed) {
  for (int r1 = 1; r1 <= 5; ++r1)
    for (int r2 = 1; r2 <= 5; ++r2)
      for (int s = 0; s <= std::min(r1, r2); ++s)
        for (int n_e = 0; n_e <= 3; ++n_e) {
          const auto p = RankProfile::from_ranks(r1, r2, s);
          const auto pc = synthetic(p);
          for (auto mode : {PrivacyMode::no_privacy, PrivacyMode::mutual_privacy}) {
            const auto region = make_region(p, n_e, mode);
            for (int d0 = 0; d0 <= p.r0; ++d0)
              for (int h1 = 0; h1 <= 2 * p.r0; ++h1)
                for (int h2 = 0; h2 <= 2 * p.r0; ++h2) {
                  const Point t{double(d0), h1 / 2.0, h2 / 2.0};
                  if (!contains(region, t)) continue;
                  expect_sound(synthesize(pc, 1e8, n_e, t, mode), t, n_e);
                }
          }
        }
}

TEST(SchemeProperties, PrivacyLayoutsAreDisjoint) {
  for (int r1 = 1; r1 <= 5; ++r1)
    for (int r2 = 1; r2 <= 5; ++r2)
      for (int s = 0; s <= std::min(r1, r2); ++s)
        for (int n_e = 0; n_e <= 3; ++n_e)
          for (int d0 = 0; d0 <= 3; ++d0) {
            const auto p = RankProfile::from_ranks(r1, r2, s);
            const auto plan = plan_dimensions(p, n_e, d0, PrivacyMode::mutual_privacy);
            const auto a = allocate(synthetic(p), 1e6, plan, {0, 0, 0}, PrivacyMode::mutual_privacy);
            const auto leak = privacy_overlap(a);
            EXPECT_TRUE(leak.a_seen_by_2.empty());
            EXPECT_TRUE(leak.c_seen_by_1.empty());
          }
}
