#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "delayh2/diagnostics.hpp"
#include "delayh2/error.hpp"
#include "delayh2/spectral.hpp"
#include "support/fixtures.hpp"

namespace delayh2 {
namespace {

using testing::chain_plant;
using testing::random_plant;
using testing::random_system;
using testing::sweep_plant;

struct Solved {
  Plant plant;
  ControlSolution cs;
  EstimationSolution es;
  FactorSet fs;
};

Solved solve(Plant p) {
  ControlSolution cs = control_dare(p);
  EstimationSolution es = estimation_dare(p);
  FactorSet fs = build_factors(p, cs, es);
  return {std::move(p), std::move(cs), std::move(es), std::move(fs)};
}

// Largest deviation from [I, 0, 0, ...] of the Markov parameters of g1 g2.
double identity_defect(const StateSpace& g1, const StateSpace& g2, int lags) {
  const auto m = markov(series(g1, g2), lags);
  double err = (m[0] - Matrix::Identity(m[0].rows(), m[0].cols())).cwiseAbs().maxCoeff();
  for (int i = 1; i < lags; ++i) err = std::max(err, m[i].cwiseAbs().maxCoeff());
  return err;
}

TEST(Spectral, FactorizationAtUnitCircle) {
  for (const Plant& p : {chain_plant(), sweep_plant()}) {
    const Solved s = solve(p);
    double left = 0.0, right = 0.0;
    for (int k = 0; k < 64; ++k) {
      const Complex z = std::polar(1.0, 2.0 * std::numbers::pi * k / 64);
      const ComplexMatrix p12 = evalz(s.plant.p12(), z);
      const ComplexMatrix wl = evalz(s.fs.W_L_inv, z);
      left = std::max(left, (p12.adjoint() * p12 - wl.adjoint() * wl).norm());
      const ComplexMatrix p21 = evalz(s.plant.p21(), z);
      const ComplexMatrix wr = evalz(s.fs.W_R_inv, z);
      right = std::max(right, (p21 * p21.adjoint() - wr * wr.adjoint()).norm());
    }
    EXPECT_LE(left, 1e-8);
    EXPECT_LE(right, 1e-8);
    EXPECT_NEAR(left_factorization_error(s.plant, s.fs), left, 1e-12);
    EXPECT_NEAR(right_factorization_error(s.plant, s.fs), right, 1e-12);
  }
}

TEST(Spectral, FactorsInvertEachOther) {
  for (const Plant& p : {chain_plant(), sweep_plant(), random_plant(3)}) {
    const Solved s = solve(p);
    EXPECT_LE(identity_defect(s.fs.W_L, s.fs.W_L_inv, 20), 1e-9);
    EXPECT_LE(identity_defect(s.fs.W_L_inv, s.fs.W_L, 20), 1e-9);
    EXPECT_LE(identity_defect(s.fs.W_R, s.fs.W_R_inv, 20), 1e-9);
    EXPECT_LE(identity_defect(s.fs.W_R_inv, s.fs.W_R, 20), 1e-9);
    EXPECT_NEAR(inverse_identity_error(s.fs.W_L, s.fs.W_L_inv),
                identity_defect(s.fs.W_L, s.fs.W_L_inv, 20), 1e-15);
  }
}

TEST(Spectral, FactorsAreStable) {
  const Solved s = solve(chain_plant());
  EXPECT_LT(spectral_radius(s.fs.W_L.a()), 1.0);
  EXPECT_LT(spectral_radius(s.fs.W_R.a()), 1.0);
  EXPECT_LT(spectral_radius(s.fs.W_L_inv.a()), 1.0);
}

TEST(Spectral, TMarkovFormula) {
  const Solved s = solve(chain_plant());
  const auto m = markov(s.fs.T, 10);
  EXPECT_EQ(m[0].norm(), 0.0);
  Matrix apow = Matrix::Identity(s.plant.states(), s.plant.states());
  for (int i = 1; i < 10; ++i) {
    const Matrix want = s.cs.OmegaHalf * s.cs.K * apow * s.es.L * s.es.PsiHalf;
    EXPECT_LT((m[i] - want).norm(), 1e-12 * (1 + want.norm()));
    apow = s.plant.A() * apow;
  }
}

// The LQG controller in predictor form attains the centralized optimum.
TEST(Spectral, CentralizedMatchesLqgController) {
  for (const Plant& p : {chain_plant(), random_plant(8)}) {
    const Solved s = solve(p);
    const Matrix& A = s.plant.A();
    const StateSpace lqg(A + s.es.L * s.plant.C2() + s.plant.B2() * s.cs.K, -s.es.L,
                         s.cs.K, Matrix::Zero(s.plant.controls(), s.plant.measurements()));
    const double want = h2_norm(feedback_closed_loop(s.plant, lqg));
    const double got = h2_norm(closed_loop(s.plant, q_centralized(s.fs)));
    EXPECT_NEAR(got, want, 1e-9 * want);
  }
}

TEST(Spectral, ChainNorms) {
  const Solved s = solve(chain_plant());
  EXPECT_NEAR(h2_norm(closed_loop(s.plant, q_centralized(s.fs))), 2.0853, 1e-3);
  EXPECT_NEAR(h2_norm(closed_loop(s.plant, q_delayed(s.fs, 2))), 2.1780, 1e-3);
}

TEST(Spectral, DelayedNormsMonotone) {
  const Solved s = solve(sweep_plant());
  double prev = h2_norm(closed_loop(s.plant, q_centralized(s.fs)));
  for (int n = 1; n <= 10; ++n) {
    const double cur = h2_norm(closed_loop(s.plant, q_delayed(s.fs, n)));
    EXPECT_GE(cur, prev - 1e-9) << "N = " << n;
    prev = cur;
  }
}

TEST(Spectral, LongDelayApproachesOpenLoop) {
  const Solved s = solve(chain_plant());
  EXPECT_NEAR(h2_norm(closed_loop(s.plant, q_delayed(s.fs, 80))), h2_norm(s.plant.p11()), 1e-6);
}

TEST(Spectral, DelayedHeadVanishes) {
  const Solved s = solve(chain_plant());
  for (int n : {1, 2, 4}) {
    const auto m = markov(q_delayed(s.fs, n), n + 3);
    for (int i = 0; i <= n; ++i) EXPECT_LT(m[i].cwiseAbs().maxCoeff(), 1e-12);
    EXPECT_GT(m[n + 1].cwiseAbs().maxCoeff(), 1e-6);
  }
  EXPECT_EQ(q_delayed(s.fs, 0).states(), q_centralized(s.fs).states());
}

TEST(Spectral, TailProjectKeepsLagsBeyondN) {
  const StateSpace f = random_system(90, 3, 2, 2, 0.8, false);
  const auto m = markov(f, 15);
  for (int n : {0, 1, 3}) {
    const auto t = markov(tail_project(f, n), 15);
    for (int i = 0; i < 15; ++i) {
      const Matrix want = i > n ? m[i] : Matrix::Zero(2, 2);
      EXPECT_LT((t[i] - want).norm(), 1e-12);
    }
  }
}

TEST(Spectral, TailProjectNeedsStrictlyProper) {
  try {
    tail_project(random_system(91, 2, 2, 2), 1);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kNonStrictlyProper);
  }
}


TEST(Spectral, DecoupledStaticCase) {
  // A = 0 with no cross terms: K = 0 and L = 0, so T vanishes and so does Q0.
  PlantMatrices m;
  m.A = Matrix::Zero(1, 1);
  m.B1 = Matrix(1, 2);
  m.B1 << 1, 0;
  m.B2 = Matrix::Ones(1, 1);
  m.C1 = Matrix(2, 1);
  m.C1 << 1, 0;
  m.C2 = Matrix::Ones(1, 1);
  m.D12 = Matrix(2, 1);
  m.D12 << 0, 1;
  m.D21 = Matrix(1, 2);
  m.D21 << 0, 1;
  const Solved s = solve(Plant(std::move(m)));
  EXPECT_EQ(h2_norm(s.fs.T), 0.0);
  EXPECT_NEAR(s.fs.W_L.d()(0, 0), 1.0 / std::sqrt(2.0), 1e-15);
  EXPECT_EQ(h2_norm(q_centralized(s.fs)), 0.0);
  EXPECT_EQ(h2_norm(q_delayed(s.fs, 3)), 0.0);
}

TEST(Spectral, TailOfShortFirIsZero) {
  std::mt19937_64 rng(3);
  const FirTransfer f({testing::random_matrix(rng, 2, 2), testing::random_matrix(rng, 2, 2)});
  EXPECT_LT(h2_norm(tail_project(fir_to_ss(f), 2)), 1e-15);
  EXPECT_GT(h2_norm(tail_project(fir_to_ss(f), 1)), 0.0);
}

}  // namespace
}  // namespace delayh2
