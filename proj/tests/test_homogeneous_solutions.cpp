#include <gtest/gtest.h>

#include <random>

#include "oracles.hpp"
#include "wavebeam/homogeneous_solutions.hpp"

using namespace wavebeam;

namespace {

const Material<double> kMat = material_from_poisson(0.3, 1.0, 1.0);

}  // namespace

TEST(HomogeneousSolutions, ColumnsAnnihilateOperator) {
  std::mt19937_64 rng(20240601);
  for (int i = 0; i < 100; ++i) {
    const auto d = oracle::random_draw(rng, i, 6);
    EXPECT_LT(oracle::boundary_operator_residual(d, 6, 6, rng, 3), 1e-9)
        << "Omega=" << d.Omega << " K=" << d.K << " nu=" << d.nu << " a/b=" << d.aspect;
  }
}

TEST(HomogeneousSolutions, RetainedConstantsAreIdentityRows) {
  const auto st = dimensionalize(0.4, 0.9, kMat, CrossSection<double>{});
  for (Family f : {Family::One, Family::Two, Family::Zero}) {
    const int n = f == Family::Zero ? 0 : 2;
    const BoundaryBlock<double> blk(n, f, 1, st, kMat, CrossSection<double>{});
    const auto& t = blk.constraint();
    for (int j = 0; j < 6; ++j)
      for (int c = 0; c < 6; ++c)
        EXPECT_EQ(t.entries(t.retained[j], c), j == c ? 1.0 : 0.0);
  }
  const BoundaryBlock<double> zero(0, Family::Zero, 1, st, kMat, CrossSection<double>{});
  EXPECT_EQ(zero.constraint().retained, (std::array<int, 6>{0, 1, 4, 5, 10, 11}));
}

TEST(HomogeneousSolutions, ReducedColumnsHaveUnitJumps) {
  // Jump unknowns: [u], [u'], [v], [v'], [w], [w'] across x1 = +-a, divided
  // by the modulation along x2.
  const CrossSection<double> cs{1.0, 0.8};
  for (const auto& [K, Omega] : std::vector<std::pair<double, double>>{{0.3, 0.5}, {0.7, 1.6}})
    for (Family f : {Family::One, Family::Two, Family::Zero}) {
      const int n = f == Family::Zero ? 0 : 3;
      const auto st = dimensionalize(K, Omega, kMat, cs);
      const auto blk = boundary_block(n, f, st, kMat, cs);
      const double x2 = 0.123;
      const Eigen::Vector3d h = blk.modulation(x2, 0).diagonal();
      const Eigen::Matrix<double, 3, 6> dv = blk.eval(cs.a, x2, 0, 0) - blk.eval(-cs.a, x2, 0, 0);
      const Eigen::Matrix<double, 3, 6> dd = blk.eval(cs.a, x2, 1, 0) - blk.eval(-cs.a, x2, 1, 0);
      Eigen::Matrix<double, 6, 6> jumps;
      for (int c = 0; c < 3; ++c) {
        jumps.row(2 * c) = dv.row(c) / h(c);
        jumps.row(2 * c + 1) = dd.row(c) / h(c);
      }
      EXPECT_LT((jumps - Eigen::Matrix<double, 6, 6>::Identity()).cwiseAbs().maxCoeff(), 1e-9)
          << "family " << family_name(f) << " K=" << K;
    }
}

TEST(HomogeneousSolutions, JumpMapInverts) {
  const CrossSection<double> cs{1.0, 1.25};
  const auto st = dimensionalize(0.55, 1.1, kMat, cs);
  for (int dir : {1, 2})
    for (int n = 1; n <= 4; ++n) {
      const BoundaryBlock<double> blk(n, Family::Two, dir, st, kMat, cs);
      const Eigen::Matrix<double, 6, 6> st_map = blk.jump_map();
      const Eigen::Matrix<double, 6, 6> prod = st_map * st_map.fullPivLu().inverse();
      EXPECT_LT((prod - Eigen::Matrix<double, 6, 6>::Identity()).cwiseAbs().maxCoeff(), 1e-10);
      EXPECT_LT(blk.condition(), 1e13);
    }
}

TEST(HomogeneousSolutions, SquareSectionTwinBlocks) {
  // On a square, the direction-2 block is the direction-1 block with the
  // axes exchanged and u, v swapped.
  const CrossSection<double> cs{};
  const auto st = dimensionalize(0.45, 0.95, kMat, cs);
  for (Family f : {Family::One, Family::Two}) {
    const BoundaryBlock<double> b1(2, f, 1, st, kMat, cs), b2(2, f, 2, st, kMat, cs);
    for (const auto& [x, y] : std::vector<std::pair<double, double>>{{0.3, -0.7}, {-0.9, 0.15}})
      for (int k1 = 0; k1 <= 1; ++k1)
        for (int k2 = 0; k2 <= 1; ++k2) {
          Eigen::Matrix<double, 3, 6> a = b1.eval_retained(y, x, k2, k1);
          a.row(0).swap(a.row(1));
          EXPECT_LT((a - b2.eval_retained(x, y, k1, k2)).cwiseAbs().maxCoeff(), 1e-13);
        }
  }
}

TEST(HomogeneousSolutions, DegenerateJumpIsReported) {
  // Omega = K with n = 0: the shear pair collapses to {1, x} and S T loses rank.
  const CrossSection<double> cs{};
  const auto st = dimensionalize(0.5, 0.5, kMat, cs);
  EXPECT_THROW(boundary_block(0, Family::Zero, st, kMat, cs), DegenerateState);
  try {
    boundary_block(0, Family::Zero, st, kMat, cs);
  } catch (const DegenerateState& e) {
    EXPECT_EQ(e.index(), 0);
    EXPECT_DOUBLE_EQ(e.K(), 0.5);
  }
}

TEST(HomogeneousSolutions, RejectsInvalidBlocks) {
  const CrossSection<double> cs{};
  const auto st = dimensionalize(0.5, 0.9, kMat, cs);
  EXPECT_THROW(BoundaryBlock<double>(0, Family::One, 1, st, kMat, cs), InvalidParameter);
  EXPECT_THROW(BoundaryBlock<double>(2, Family::Zero, 1, st, kMat, cs), InvalidParameter);
  EXPECT_THROW(BoundaryBlock<double>(1, Family::One, 3, st, kMat, cs), InvalidParameter);
  const auto st0 = dimensionalize(0.0, 0.9, kMat, cs);
  EXPECT_THROW(BoundaryBlock<double>(1, Family::One, 1, st0, kMat, cs), UnsupportedWavenumber);
}
