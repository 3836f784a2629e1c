#include <gtest/gtest.h>

#include <algorithm>
#include <functional>
#include <limits>
#include <numeric>
#include <random>

#include "fixtures.hpp"
#include "oracles.hpp"
#include "sdof/channel.hpp"
#include "sdof/error.hpp"

using namespace sdof;

namespace {

ErrorKind kind_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind();
  }
  ADD_FAILURE() << "no sdof::Error thrown";
  return ErrorKind::precondition;
}

ChannelSpec random_spec(int nt, int nr1, int nr2, int n_e, std::mt19937_64& rng) {
  ChannelSpec spec;
  spec.n_t = nt;
  spec.n_r1 = nr1;
  spec.n_r2 = nr2;
  spec.n_e = n_e;
  spec.p_bar = 1e6;
  spec.h1 = oracle::gaussian(nr1, nt, rng);
  spec.h2 = oracle::gaussian(nr2, nt, rng);
  return spec;
}

void expect_construction_consistent(const ComplexMatrix& m, int n_e, const EveConstruction& c) {
  // Blocks are ranked against the cut matrix's scale: a residual that is
  // numerically zero has no meaningful rank relative to itself.
  const double gap = 1e-8 * (m.size() ? oracle::singular_values_by_eigen(m)(0) : 0.0);
  const int rank = oracle::rank_by_eigen(m);
  EXPECT_EQ(c.cut_rank, rank);
  EXPECT_EQ(c.residual_rank, std::max(0, rank - n_e));
  EXPECT_EQ(c.residual_rank, oracle::rank_above(c.residual, gap));
  EXPECT_EQ(c.h_tilde.rows() + c.residual.rows(), m.rows());
  EXPECT_EQ(c.h_tilde.rows(), std::min<Eigen::Index>(n_e, m.rows()));
  const int eve_rank = oracle::rank_above(c.h_tilde, gap);
  EXPECT_GE(eve_rank + c.residual_rank, rank);
  if (n_e <= rank) EXPECT_EQ(eve_rank + c.residual_rank, rank);
  if (!c.rotated) {
    // The split is a row partition of the cut matrix.
    for (std::size_t k = 0; k < c.eve_rows.size(); ++k)
      EXPECT_EQ(c.h_tilde.row(static_cast<Eigen::Index>(k)), m.row(c.eve_rows[k]));
  }
}

}  // namespace

TEST(Validate, AcceptsTheExampleChannel) {
  EXPECT_TRUE(validate(fixture::two_user_example()).empty());
}

TEST(Validate, RejectsBadFields) {
  auto spec = fixture::two_user_example();
  spec.p_bar = -1.0;
  EXPECT_EQ(kind_of([&] { validate(spec); }), ErrorKind::input);
  spec = fixture::two_user_example();
  spec.n_e = -1;
  EXPECT_EQ(kind_of([&] { validate(spec); }), ErrorKind::input);
  spec = fixture::two_user_example();
  spec.h1(0, 0) = Complex(std::nan(""), 0.0);
  EXPECT_EQ(kind_of([&] { validate(spec); }), ErrorKind::input);
  spec = fixture::two_user_example();
  spec.n_r1 = 3;
  EXPECT_EQ(kind_of([&] { validate(spec); }), ErrorKind::dimension_mismatch);
  spec = fixture::two_user_example();
  spec.h2 = ComplexMatrix::Identity(2, 2);
  EXPECT_EQ(kind_of([&] { validate(spec); }), ErrorKind::dimension_mismatch);
}

TEST(Validate, WarnsOutsideTheRegimeAssumptions) {
  auto spec = fixture::two_user_example();
  spec.n_e = 3;
  const auto warnings = validate(spec);
  EXPECT_EQ(warnings.size(), 2u);
}

TEST(RankProfile, TwoUserExample) {
  const auto p = rank_profile(fixture::two_user_example());
  EXPECT_EQ(p.r1, 2);
  EXPECT_EQ(p.r2, 2);
  EXPECT_EQ(p.r0, 3);
  EXPECT_EQ(p.s, 1);
}

TEST(RankProfile, IdenticalChannelsShareEverything) {
  std::mt19937_64 rng(11);
  auto spec = random_spec(4, 3, 3, 1, rng);
  spec.h2 = spec.h1;
  const auto p = rank_profile(spec);
  EXPECT_EQ(p.r0, p.r1);
  EXPECT_EQ(p.s, p.r1);
}

TEST(RankProfile, GenericFullRankPair) {
  std::mt19937_64 rng(12);
  for (int trial = 0; trial < 10; ++trial) {
    const auto spec = random_spec(5, 3, 4, 1, rng);
    const auto p = rank_profile(spec);
    EXPECT_EQ(p.r1, oracle::rank_by_eigen(spec.h1));
    EXPECT_EQ(p.r2, oracle::rank_by_eigen(spec.h2));
    EXPECT_EQ(p.r0, oracle::rank_by_eigen(vstack(spec.h1, spec.h2)));
    EXPECT_EQ(p.r0, 5);
    EXPECT_EQ(p.s, 2);
  }
}

TEST(RankProfile, RowPermutationInvariance) {
  std::mt19937_64 rng(13);
  for (int trial = 0; trial < 20; ++trial) {
    const auto pair = oracle::structured_pair(6, 4, 5, rng);
    ChannelSpec spec{6, 4, 5, 2, pair.h1, pair.h2, 1e6};
    std::vector<int> perm(4);
    std::iota(perm.begin(), perm.end(), 0);
    std::shuffle(perm.begin(), perm.end(), rng);
    ChannelSpec permuted = spec;
    for (int i = 0; i < 4; ++i) permuted.h1.row(i) = spec.h1.row(perm[static_cast<std::size_t>(i)]);
    const auto a = rank_profile(spec);
    const auto b = rank_profile(permuted);
    EXPECT_EQ(a.r1, b.r1);
    EXPECT_EQ(a.r2, b.r2);
    EXPECT_EQ(a.r0, b.r0);
    EXPECT_EQ(worst_case_eve_single(spec, Cut::user1).residual_rank,
              worst_case_eve_single(permuted, Cut::user1).residual_rank);
    EXPECT_EQ(worst_case_eve_sum(spec).residual_rank, worst_case_eve_sum(permuted).residual_rank);
  }
}

TEST(ReduceToParallel, TwoUserExampleSplit) {
  const auto pc = reduce_to_parallel(fixture::two_user_example());
  EXPECT_EQ(pc.profile.rt1, 1);
  EXPECT_EQ(pc.profile.s, 1);
  EXPECT_EQ(pc.profile.rt2, 1);
  // The common coordinate is split evenly by the CS normalization.
  EXPECT_NEAR(pc.s_min, 1.0 / std::sqrt(2.0), 1e-12);
  EXPECT_NEAR(pc.effective_power, 1e6 / (pc.s_p * pc.s_p), 1e-6);
}

TEST(ReduceToParallel, IdenticalIdentityChannels) {
  ChannelSpec spec{2, 2, 2, 0, ComplexMatrix::Identity(2, 2), ComplexMatrix::Identity(2, 2), 8.0};
  const auto pc = reduce_to_parallel(spec);
  EXPECT_EQ(pc.profile.s, 2);
  EXPECT_EQ(pc.profile.rt1, 0);
  EXPECT_EQ(pc.profile.rt2, 0);
  // The stacked [I; I] has both singular values sqrt(2).
  EXPECT_NEAR(pc.s_p, std::sqrt(2.0), 1e-12);
  EXPECT_NEAR(pc.effective_power, 8.0 / 2.0, 1e-12);
}

TEST(ReduceToParallel, ProfileMatchesRankProfile) {
  std::mt19937_64 rng(14);
  for (int trial = 0; trial < 30; ++trial) {
    const auto pair = oracle::structured_pair(6, 4, 4, rng);
    ChannelSpec spec{6, 4, 4, 1, pair.h1, pair.h2, 1e6};
    const auto pc = reduce_to_parallel(spec);
    const auto p = rank_profile(spec);
    EXPECT_EQ(pc.profile.r1, p.r1);
    EXPECT_EQ(pc.profile.r2, p.r2);
    EXPECT_EQ(pc.profile.r0, p.r0);
    EXPECT_EQ(pc.profile.r0, pc.profile.rt1 + pc.profile.s + pc.profile.rt2);
    EXPECT_GT(pc.s_min, 0.0);
  }
}

TEST(ReduceToParallel, EffectivePowerFallsWithGain) {
  auto spec = fixture::two_user_example(1e4);
  double previous = std::numeric_limits<double>::infinity();
  for (double scale : {0.5, 1.0, 2.0, 4.0}) {
    spec.h1 = fixture::selector(2, 3, 0) * scale;
    spec.h2 = fixture::selector(2, 3, 1) * scale;
    const auto pc = reduce_to_parallel(spec);
    EXPECT_LT(pc.effective_power, previous);
    previous = pc.effective_power;
  }
}

TEST(ReduceToParallel, ZeroChannelIsDegenerate) {
  auto spec = fixture::two_user_example();
  spec.h2.setZero();
  EXPECT_EQ(kind_of([&] { reduce_to_parallel(spec); }), ErrorKind::degenerate);
}

TEST(WorstCaseEve, TwoUserExampleCuts) {
  const auto spec = fixture::two_user_example();
  EXPECT_EQ(worst_case_eve_single(spec, Cut::user1).residual_rank, 1);
  EXPECT_EQ(worst_case_eve_single(spec, Cut::user2).residual_rank, 1);
  const auto sum = worst_case_eve_sum(spec);
  EXPECT_EQ(sum.residual_rank, 2);
  EXPECT_EQ(sum.cut_rank, 3);
}

TEST(WorstCaseEve, NoEavesdropperKeepsEverything) {
  auto spec = fixture::two_user_example();
  spec.n_e = 0;
  const auto c = worst_case_eve_single(spec, Cut::user1);
  EXPECT_EQ(c.h_tilde.rows(), 0);
  EXPECT_EQ(c.residual, spec.h1);
  EXPECT_EQ(c.residual_rank, 2);
}

TEST(WorstCaseEve, EavesdropperCoveringAllRows) {
  auto spec = fixture::two_user_example();
  spec.n_e = 3;
  const auto sum = worst_case_eve_sum(spec);
  EXPECT_EQ(sum.residual_rank, 0);
  EXPECT_EQ(sum.h_tilde.rows(), 3);
  spec.n_e = 4;
  EXPECT_EQ(worst_case_eve_sum(spec).residual_rank, 0);
}

TEST(WorstCaseEve, RowChoiceMatchesExhaustiveSearch) {
  // Rank 4 with a repeated row: removing two of the unrepeated rows drops
  // the rank to 2, which exhaustive search confirms is reachable.
  std::mt19937_64 rng(15);
  for (int trial = 0; trial < 10; ++trial) {
    ComplexMatrix m(5, 6);
    m.topRows(4) = oracle::gaussian(4, 6, rng);
    m.row(4) = m.row(trial % 4) * Complex(0.0, 2.0);
    ASSERT_EQ(oracle::rank_by_eigen(m), 4);
    ASSERT_TRUE(oracle::some_removal_leaves_rank(m, 2, 2));
    const auto c = worst_case_eve(m, 2, Cut::user1);
    EXPECT_FALSE(c.rotated);
    EXPECT_EQ(c.eve_rows.size(), 2u);
    expect_construction_consistent(m, 2, c);
  }
}

TEST(WorstCaseEve, GenericTallMatrixNeedsRotation) {
  std::mt19937_64 rng(16);
  const ComplexMatrix m = oracle::gaussian_of_rank(5, 6, 4, rng);
  // Any three generic rows of a rank-4 matrix still have rank 3.
  ASSERT_FALSE(oracle::some_removal_leaves_rank(m, 2, 2));
  const auto c = worst_case_eve(m, 2, Cut::user1);
  EXPECT_TRUE(c.rotated);
  expect_construction_consistent(m, 2, c);
}

TEST(WorstCaseEve, RandomSumCut) {
  std::mt19937_64 rng(17);
  const auto spec = [&] {
    auto s = random_spec(5, 3, 4, 2, rng);
    return s;
  }();
  const auto c = worst_case_eve_sum(spec);
  EXPECT_EQ(c.cut_rank, 5);
  EXPECT_EQ(c.residual_rank, 3);
  expect_construction_consistent(vstack(spec.h1, spec.h2), 2, c);
}

TEST(WorstCaseEve, PropertyOverRandomCuts) {
  std::mt19937_64 rng(18);
  std::uniform_int_distribution<int> dim(1, 6);
  for (int trial = 0; trial < 100; ++trial) {
    const int rows = dim(rng), cols = dim(rng), rank = dim(rng), n_e = dim(rng) - 1;
    ComplexMatrix m = oracle::gaussian_of_rank(rows, cols, rank, rng);
    if (trial % 3 == 0 && rows > 1) m.row(rows - 1) = m.row(0);
    const auto c = worst_case_eve(m, n_e, Cut::sum);
    expect_construction_consistent(m, n_e, c);
    if (!c.rotated && n_e < rows && n_e > 0) {
      EXPECT_TRUE(oracle::some_removal_leaves_rank(m, n_e, c.residual_rank));
    }
  }
}

TEST(WorstCaseEve, SingleCutRejectsSum) {
  EXPECT_EQ(kind_of([] { worst_case_eve_single(fixture::two_user_example(), Cut::sum); }), ErrorKind::input);
}
