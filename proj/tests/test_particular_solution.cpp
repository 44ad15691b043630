#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "oracles.hpp"
#include "wavebeam/particular_solution.hpp"

using namespace wavebeam;

namespace {

const Material<double> kMat = material_from_poisson(0.3, 1.0, 1.0);

}  // namespace

TEST(ParticularSolution, CornerFunction) {
  const CrossSection<double> cs{1.0, 0.5};
  EXPECT_DOUBLE_EQ(corner_eval(0.4, -0.2, 0, 0, cs)(0, 0), 0.4 * -0.2 / 2.0);
  EXPECT_DOUBLE_EQ(corner_eval(0.4, -0.2, 1, 0, cs)(1, 1), -0.2 / 2.0);
  EXPECT_DOUBLE_EQ(corner_eval(0.4, -0.2, 1, 1, cs)(2, 2), 0.5);
  EXPECT_DOUBLE_EQ(corner_eval(0.4, -0.2, 2, 0, cs)(0, 0), 0.0);
  EXPECT_DOUBLE_EQ(corner_eval(0.4, -0.2, 0, 0, cs)(0, 1), 0.0);
  EXPECT_THROW(corner_eval(0.0, 0.0, 3, 0, cs), InvalidParameter);
}

TEST(ParticularSolution, SeriesWeights) {
  EXPECT_DOUBLE_EQ(series_weight<double>(0, 0), 0.25);
  EXPECT_DOUBLE_EQ(series_weight<double>(0, 3), 0.5);
  EXPECT_DOUBLE_EQ(series_weight<double>(2, 0), 0.5);
  EXPECT_DOUBLE_EQ(series_weight<double>(1, 1), 1.0);
}

TEST(ParticularSolution, MonomialCoefficientsMatchQuadrature) {
  const auto [x, w] = oracle::gauss_legendre(48);
  const double a = 1.0, b = 0.7, pi = std::numbers::pi;
  for (int p1 = 0; p1 <= 1; ++p1)
    for (int p2 = 0; p2 <= 1; ++p2)
      for (int m = 0; m <= 5; ++m)
        for (int n = 0; n <= 5; ++n) {
          double q = 0;
          for (int i = 0; i < x.size(); ++i)
            for (int j = 0; j < x.size(); ++j) {
              const double x1 = a * x(i), x2 = b * x(j);
              const double f1 = p1 ? x1 * std::sin(m * pi * x1 / a) : std::cos(m * pi * x1 / a);
              const double f2 = p2 ? x2 * std::sin(n * pi * x2 / b) : std::cos(n * pi * x2 / b);
              q += w(i) * w(j) * a * b * f1 * f2;
            }
          EXPECT_NEAR(detail::monomial_coefficient(p1, p2, m, n, a, b), q / (a * b), 1e-13);
        }
}

TEST(ParticularSolution, FourierRelationsHoldAgainstQuadrature) {
  const std::vector<std::tuple<double, double, double, double>> cases{
      {0.3183, 0.4937, 0.3, 1.0}, {0.9, 1.7, 0.25, 2.0}, {0.05, 0.33, 0.4, 0.5}, {0.6, 0.2, 0.3, 1.25}};
  for (const auto& [K, Omega, nu, aspect] : cases) {
    const auto mat = material_from_poisson(nu, 1.0, 1.0);
    const auto cs = CrossSection<double>::from_aspect(aspect);
    const auto st = dimensionalize(K, Omega, mat, cs);
    EXPECT_LT(oracle::internal_relation_error(8, 8, st, mat, cs), 1e-10) << "K=" << K;
    EXPECT_LT(oracle::internal_relation_error(4, 6, st, mat, cs), 1e-10) << "K=" << K;
  }
}

TEST(ParticularSolution, CouplingLayout) {
  const auto st = dimensionalize(0.4, 0.8, kMat, CrossSection<double>{});
  const auto cm = solve_internal_coefficients(3, 5, st, kMat, CrossSection<double>{});
  EXPECT_EQ(cm.T03().rows(), 12 * 4 * 6);
  EXPECT_EQ(cm.row(2, 3, 3, 5), cm.T03().rows() - 1);
  // Sine of a zero wavenumber carries no coefficient.
  EXPECT_TRUE(cm.block(0, 0, 1).row(0).isZero(0));
  EXPECT_TRUE(cm.block(1, 1, 2).col(0).isZero(0));
}

TEST(ParticularSolution, ResonantCellIsReported) {
  // Shear resonance of cell (1, 1) on the unit square: Omega^2 = 1 + 1 + K^2.
  const double K = 0.3;
  const auto st = dimensionalize(K, std::sqrt(2 + K * K), kMat, CrossSection<double>{});
  try {
    solve_internal_coefficients(4, 4, st, kMat, CrossSection<double>{});
    FAIL() << "expected InternalResonance";
  } catch (const InternalResonance& e) {
    EXPECT_EQ(e.m(), 1);
    EXPECT_EQ(e.n(), 1);
  }
  EXPECT_THROW(solve_internal_coefficients(0, 4, st, kMat, CrossSection<double>{}), InvalidParameter);
}
