#include <gtest/gtest.h>

#include <functional>

#include "delayh2/error.hpp"
#include "delayh2/pattern.hpp"
#include "support/fixtures.hpp"

namespace delayh2 {
namespace {

using testing::random_matrix;

ErrorCode code_of(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "expected delayh2::Error";
  return ErrorCode::kInvalidArgument;
}

TEST(Pattern, BlockPartitionOffsets) {
  const BlockPartition p({2, 1, 3});
  EXPECT_EQ(p.count(), 3);
  EXPECT_EQ(p.total(), 6);
  EXPECT_EQ(p.offset(0), 0);
  EXPECT_EQ(p.offset(1), 2);
  EXPECT_EQ(p.offset(2), 3);
  EXPECT_EQ(code_of([] { BlockPartition({1, 0}); }), ErrorCode::kInvalidPattern);
}

TEST(Pattern, ChainMasks) {
  const InformationPattern p = testing::chain_fixture_pattern();
  EXPECT_EQ(p.horizon(), 2);
  EXPECT_EQ(p.mask(1), BlockMask::identity(3));
  EXPECT_EQ(p.mask(2), BlockMask::from_rows({{1, 1, 0}, {1, 1, 1}, {0, 1, 1}}));
  EXPECT_EQ(p.free_entries(), 3 + 7);
  EXPECT_TRUE(p.allows(3, 0, 2));
  EXPECT_FALSE(p.allows(2, 0, 2));
}

TEST(Pattern, BlockEntriesExpand) {
  const BlockPartition u({2, 1});
  const BlockPartition y({1, 2});
  const InformationPattern p = n_step_pattern(u, y, 1);
  Matrix want(3, 3);
  want << 1, 0, 0,
          1, 0, 0,
          0, 1, 1;
  EXPECT_EQ(p.entry_mask(1), want);
  EXPECT_EQ(p.entry_mask(2), Matrix::Ones(3, 3));
  EXPECT_EQ(p.free_entries(), 4);
}

TEST(Pattern, DelayMatrixRoundTrip) {
  const BlockPartition u = BlockPartition::units(3);
  const std::vector<std::vector<int>> d = {{1, 2, 4}, {3, 1, 2}, {4, 4, 1}};
  const InformationPattern p = from_delay_matrix(d, u, u, 3);
  EXPECT_EQ(delay_matrix(p), d);
  EXPECT_EQ(from_delay_matrix(delay_matrix(p), u, u, 3), p);
  EXPECT_EQ(code_of([&] { from_delay_matrix({{1, 5}, {1, 1}}, BlockPartition::units(2),
                                            BlockPartition::units(2), 3); }),
            ErrorCode::kDelayExceedsHorizon);
}

TEST(Pattern, RejectsNonMonotoneMasks) {
  const BlockPartition u = BlockPartition::units(2);
  std::vector<BlockMask> masks = {BlockMask::identity(2), BlockMask(2, 2, false)};
  EXPECT_EQ(code_of([&] { InformationPattern(2, u, u, masks); }), ErrorCode::kInvalidPattern);
  EXPECT_EQ(code_of([&] { InformationPattern(3, u, u, masks); }), ErrorCode::kInvalidPattern);
}

TEST(Pattern, Families) {
  const BlockPartition u = BlockPartition::units(3);
  EXPECT_EQ(family_pattern("tri", u, u, 1).mask(1),
            BlockMask::from_rows({{1, 0, 0}, {1, 1, 0}, {1, 1, 1}}));
  EXPECT_EQ(family_pattern("di", u, u, 1).mask(1), BlockMask::identity(3));
  EXPECT_EQ(family_pattern("low", u, u, 1).mask(1),
            BlockMask::from_rows({{0, 0, 0}, {0, 0, 0}, {0, 0, 1}}));
  EXPECT_FALSE(family_pattern("pure-delay", u, u, 2).mask(2).any());
  EXPECT_EQ(family_pattern("full", u, u, 2).free_entries(), 18);
  EXPECT_EQ(code_of([&] { family_pattern("ring", u, u, 1); }), ErrorCode::kInvalidArgument);
}

TEST(Pattern, ProjectionIdempotentAndSelfAdjoint) {
  std::mt19937_64 rng(4);
  const InformationPattern p = testing::chain_fixture_pattern();
  auto random_fir = [&] {
    return FirTransfer({random_matrix(rng, 3, 3), random_matrix(rng, 3, 3)});
  };
  const FirTransfer f = random_fir();
  const FirTransfer g = random_fir();
  const FirTransfer pf = project_fir(f, p);
  const FirTransfer ppf = project_fir(pf, p);
  for (int lag = 1; lag <= 2; ++lag) EXPECT_EQ(pf.at(lag), ppf.at(lag));
  EXPECT_NEAR(fir_inner_product(pf, g), fir_inner_product(f, project_fir(g, p)), 1e-12);
  EXPECT_EQ(pf.at(1)(0, 1), 0.0);
  EXPECT_EQ(pf.at(1)(1, 1), f.at(1)(1, 1));
}

// Brute-force QI test: random K in S and random P22 with the given block
// delays; check whether K P22 K leaves S within the horizon.
bool sampled_qi(const InformationPattern& p, const std::vector<std::vector<int>>& plant_delay,
                std::mt19937_64& rng) {
  const int n = p.horizon();
  const int nu = p.u_blocks().total();
  const int ny = p.y_blocks().total();
  std::vector<Matrix> k(static_cast<size_t>(n + 1), Matrix::Zero(nu, ny));
  std::vector<Matrix> g(static_cast<size_t>(n + 1), Matrix::Zero(ny, nu));
  for (int lag = 1; lag <= n; ++lag) {
    k[lag] = random_matrix(rng, nu, ny).cwiseProduct(p.entry_mask(lag));
    g[lag] = random_matrix(rng, ny, nu);
    for (int b = 0; b < ny; ++b) {
      for (int a = 0; a < nu; ++a) {
        if (lag < plant_delay[b][a]) g[lag](b, a) = 0.0;
      }
    }
  }
  for (int lag = 3; lag <= n; ++lag) {
    Matrix s = Matrix::Zero(nu, ny);
    for (int i = 1; i < lag; ++i) {
      for (int d = 1; i + d < lag; ++d) s += k[i] * g[d] * k[lag - i - d];
    }
    if ((s.cwiseAbs().array() > 1e-12 && p.entry_mask(lag).array() == 0.0).any()) return false;
  }
  return true;
}

TEST(Pattern, QuadraticInvarianceMatchesSampling) {
  std::mt19937_64 rng(12);
  const BlockPartition u = BlockPartition::units(2);
  int checked = 0, invariant = 0;
  for (int n = 3; n <= 4; ++n) {
    for (int code = 0; code < 625; code += 7) {
      std::vector<std::vector<int>> d(2, std::vector<int>(2));
      int c = code;
      for (int a = 0; a < 2; ++a) {
        for (int b = 0; b < 2; ++b) {
          d[a][b] = 1 + c % 5;
          c /= 5;
        }
      }
      if (d[0][0] > n + 1 || d[0][1] > n + 1 || d[1][0] > n + 1 || d[1][1] > n + 1) continue;
      const InformationPattern p = from_delay_matrix(d, u, u, n);
      for (const auto& plant : {std::vector<std::vector<int>>{{1, 1}, {1, 1}},
                                std::vector<std::vector<int>>{{1, 2}, {3, 1}},
                                std::vector<std::vector<int>>{{1, 9}, {9, 1}}}) {
        const bool expect = sampled_qi(p, plant, rng);
        EXPECT_EQ(is_quadratically_invariant(p, plant), expect);
        ++checked;
        invariant += expect ? 1 : 0;
      }
    }
  }
  EXPECT_GT(checked, 50);
  EXPECT_GT(invariant, 0);
  EXPECT_LT(invariant, checked);
}

TEST(Pattern, ChainIsQuadraticallyInvariant) {
  const InformationPattern p = testing::chain_fixture_pattern();
  const std::vector<std::vector<int>> chain = {{1, 2, 3}, {2, 1, 2}, {3, 2, 1}};
  EXPECT_TRUE(is_quadratically_invariant(p, chain));
  EXPECT_TRUE(is_quadratically_invariant(full_pattern(BlockPartition::units(3),
                                                      BlockPartition::units(3), 4), chain));
}

TEST(Pattern, PlantBlockDelaysOfChain) {
  const Plant plant = testing::chain_plant();
  const auto d = plant_block_delays(plant.p22(), BlockPartition::units(3),
                                    BlockPartition::units(3), 5);
  EXPECT_EQ(d, (std::vector<std::vector<int>>{{1, 2, 3}, {2, 1, 2}, {3, 2, 1}}));
}


TEST(Pattern, NStepShapes) {
  const InformationPattern two = n_step_pattern(BlockPartition::units(2), BlockPartition::units(2), 1);
  EXPECT_EQ(two.masks().size(), 1u);
  EXPECT_EQ(two.mask(1), BlockMask::identity(2));
  const InformationPattern one = n_step_pattern(BlockPartition::units(1), BlockPartition::units(1), 3);
  for (int lag = 1; lag <= 3; ++lag) EXPECT_TRUE(one.mask(lag)(0, 0));
  const InformationPattern three = n_step_pattern(BlockPartition::units(3), BlockPartition::units(3), 2);
  EXPECT_EQ(three.mask(2), BlockMask::identity(3));
}

TEST(Pattern, ChainWithWiderBlocks) {
  const InformationPattern p = chain_pattern(BlockPartition({2, 1, 1}), BlockPartition({1, 1, 2}));
  EXPECT_EQ(p.masks(), testing::chain_fixture_pattern().masks());
  EXPECT_EQ(p.entry_mask(1).rows(), 4);
  EXPECT_EQ(p.entry_mask(1).cols(), 4);
  EXPECT_TRUE(p.mask(1).subset_of(p.mask(2)));
}

TEST(Pattern, ExtremeDelayMatrices) {
  const BlockPartition u = BlockPartition::units(2);
  const InformationPattern ones = from_delay_matrix({{1, 1}, {1, 1}}, u, u, 3);
  EXPECT_EQ(ones, full_pattern(u, u, 3));
  const InformationPattern none = from_delay_matrix({{4, 4}, {4, 4}}, u, u, 3);
  EXPECT_EQ(none, pure_delay_pattern(u, u, 3));
}

TEST(Pattern, ProjectionTrivialCases) {
  const BlockPartition u = BlockPartition::units(2);
  const InformationPattern di = n_step_pattern(u, u, 2);
  const FirTransfer inside({Matrix::Identity(2, 2), 2.0 * Matrix::Identity(2, 2)});
  const FirTransfer same = project_fir(inside, di);
  for (int lag = 1; lag <= 2; ++lag) EXPECT_EQ(same.at(lag), inside.at(lag));
  const FirTransfer ones({Matrix::Ones(2, 2), Matrix::Ones(2, 2)});
  EXPECT_EQ(project_fir(ones, pure_delay_pattern(u, u, 2)).squared_norm(), 0.0);
}

TEST(Pattern, TrivialQuadraticInvariance) {
  const BlockPartition u = BlockPartition::units(3);
  const std::vector<std::vector<int>> dense = {{1, 1, 1}, {1, 1, 1}, {1, 1, 1}};
  const std::vector<std::vector<int>> diag = {{1, 9, 9}, {9, 1, 9}, {9, 9, 1}};
  EXPECT_TRUE(is_quadratically_invariant(pure_delay_pattern(u, u, 4), dense));
  EXPECT_TRUE(is_quadratically_invariant(n_step_pattern(u, u, 4), diag));
  EXPECT_FALSE(is_quadratically_invariant(n_step_pattern(u, u, 4), dense));
}

}  // namespace
}  // namespace delayh2
