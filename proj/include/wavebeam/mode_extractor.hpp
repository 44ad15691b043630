#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <optional>
#include <string>

#include "wavebeam/boundary_collocation.hpp"
#include "wavebeam/errors.hpp"

namespace wavebeam {

template <typename Scalar = double>
struct NullVector {
  using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;
  Vector coefficients;  // filtered columns, collocator coordinates, unscaled
  Vector full;          // same vector expanded over every layout column
  Scalar sigma{};       // characteristic value at the state
  Scalar residual{};    // ||A c||_inf / ||c|| on the column-scaled matrix
};

/// Minimizing coefficient vector at a located root. The sign is fixed so
/// the largest-magnitude entry is positive.
template <typename Scalar>
NullVector<Scalar> null_vector(const Collocator<Scalar>& col, const WaveState<Scalar>& state,
                               Scalar root_threshold = Scalar(0.5)) {
  const auto sys = col.assemble(state);
  NullVector<Scalar> nv;
  nv.sigma = col.characteristic_value(sys, &nv.coefficients);
  if (!(nv.sigma < root_threshold))
    throw NotARoot("characteristic value " + std::to_string(double(nv.sigma)) +
                   " is not below the root threshold");
  Eigen::Index imax = 0;
  nv.coefficients.cwiseAbs().maxCoeff(&imax);
  if (nv.coefficients(imax) < 0) nv.coefficients = -nv.coefficients;
  const auto scaled = nv.coefficients.cwiseQuotient(sys.column_scale);
  nv.residual = (sys.matrix * scaled).cwiseAbs().maxCoeff() / scaled.norm();
  nv.full = col.expand(nv.coefficients);
  return nv;
}

template <typename Scalar = double>
struct WaveMode {
  using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
  Scalar K{};
  Scalar Omega{};
  WaveClass wave;
  int branch{0};
  Eigen::Matrix<Scalar, Eigen::Dynamic, 1> coefficients;
  Eigen::Matrix<Scalar, Eigen::Dynamic, 1> x1, x2;  // grid axes
  Matrix u, v, w;                                   // (x1 index, x2 index)
  Scalar normalization{1};
  Scalar parity_error_x1{0};
  Scalar parity_error_x2{0};
  Scalar parity_error_diagonal{0};

  Scalar max_parity_error() const {
    return std::max({parity_error_x1, parity_error_x2, parity_error_diagonal});
  }
};

/// Divides all three fields by their common max-magnitude.
template <typename Scalar>
void normalize(WaveMode<Scalar>& mode) {
  const Scalar m = std::max({mode.u.cwiseAbs().maxCoeff(), mode.v.cwiseAbs().maxCoeff(),
                             mode.w.cwiseAbs().maxCoeff()});
  if (!(m > 0)) return;
  mode.u /= m;
  mode.v /= m;
  mode.w /= m;
  mode.normalization *= m;
}

namespace detail {

template <typename Scalar>
void check_parities(WaveMode<Scalar>& mode) {
  const auto& wave = mode.wave;
  const Eigen::Index n1 = mode.u.rows(), n2 = mode.u.cols();
  mode.parity_error_x1 = mode.parity_error_x2 = mode.parity_error_diagonal = 0;
  for (Eigen::Index i = 0; i < n1; ++i)
    for (Eigen::Index j = 0; j < n2; ++j) {
      const Eigen::Index mi = n1 - 1 - i, mj = n2 - 1 - j;
      if (wave.x1 != 0) {
        const Scalar p = wave.x1;
        mode.parity_error_x1 = std::max({mode.parity_error_x1,
                                         std::abs(mode.u(mi, j) + p * mode.u(i, j)),
                                         std::abs(mode.v(mi, j) - p * mode.v(i, j)),
                                         std::abs(mode.w(mi, j) - p * mode.w(i, j))});
      }
      if (wave.x2 != 0) {
        const Scalar p = wave.x2;
        mode.parity_error_x2 = std::max({mode.parity_error_x2,
                                         std::abs(mode.u(i, mj) - p * mode.u(i, j)),
                                         std::abs(mode.v(i, mj) + p * mode.v(i, j)),
                                         std::abs(mode.w(i, mj) - p * mode.w(i, j))});
      }
      if (wave.diagonal != 0 && n1 == n2) {
        const Scalar d = wave.diagonal;
        mode.parity_error_diagonal = std::max({mode.parity_error_diagonal,
                                               std::abs(mode.u(j, i) - d * mode.v(i, j)),
                                               std::abs(mode.w(j, i) - d * mode.w(i, j))});
      }
    }
}

}  // namespace detail

/// Samples the mode of a null vector on an n1 x n2 uniform grid over the
/// cross section, normalizes it and records the parity checks.
template <typename Scalar>
WaveMode<Scalar> mode_field(const Collocator<Scalar>& col, const NullVector<Scalar>& nv,
                            const WaveState<Scalar>& state, int n1 = 41, int n2 = 41,
                            int branch = 0) {
  if (n1 < 21 || n2 < 21) throw InvalidParameter("mode grids need at least 21 x 21 points");
  const auto& cs = col.config().cross_section;
  const auto mb = col.basis(state);
  WaveMode<Scalar> mode;
  mode.K = state.K;
  mode.Omega = state.Omega;
  mode.wave = col.config().wave;
  mode.branch = branch;
  mode.coefficients = nv.coefficients;
  mode.x1 = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>::LinSpaced(n1, -cs.a, cs.a);
  mode.x2 = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>::LinSpaced(n2, -cs.b, cs.b);
  mode.u.resize(n1, n2);
  mode.v.resize(n1, n2);
  mode.w.resize(n1, n2);
  for (int i = 0; i < n1; ++i)
    for (int j = 0; j < n2; ++j) {
      const Eigen::Matrix<Scalar, 3, 1> f =
          mb.jet(mode.x1(i), mode.x2(j), 0, col.config().coords).d[0] * nv.full;
      mode.u(i, j) = f(0);
      mode.v(i, j) = f(1);
      mode.w(i, j) = f(2);
    }
  normalize(mode);
  detail::check_parities(mode);
  return mode;
}

/// Deviation from rigid cross-section kinematics for the wave family:
/// longitudinal, std(w) / mean|w|; bending, RMS residual of w = c x2 (Bx1)
/// or w = c x1 (Bx2) over max|w|; torsion, RMS residual of
/// (u, v) = theta (-x2, x1) over max in-plane magnitude. Empty when the
/// relevant field vanishes.
template <typename Scalar>
std::optional<Scalar> plane_section_metric(const WaveMode<Scalar>& mode) {
  const auto t = mode.wave.type;
  const Eigen::Index n1 = mode.u.rows(), n2 = mode.u.cols();
  const Scalar count = Scalar(n1 * n2);
  if (t == WaveType::L || t == WaveType::Ls || t == WaveType::La) {
    const Scalar mean_abs = mode.w.cwiseAbs().mean();
    if (!(mean_abs > 0)) return std::nullopt;
    const Scalar mean = mode.w.mean();
    const Scalar var = (mode.w.array() - mean).square().sum() / count;
    return std::sqrt(var) / mean_abs;
  }
  if (t == WaveType::Bx1 || t == WaveType::Bx2) {
    const Scalar wmax = mode.w.cwiseAbs().maxCoeff();
    if (!(wmax > 0)) return std::nullopt;
    Scalar num = 0, den = 0;
    for (Eigen::Index i = 0; i < n1; ++i)
      for (Eigen::Index j = 0; j < n2; ++j) {
        const Scalar s = t == WaveType::Bx1 ? mode.x2(j) : mode.x1(i);
        num += s * mode.w(i, j);
        den += s * s;
      }
    const Scalar c = num / den;
    Scalar r = 0;
    for (Eigen::Index i = 0; i < n1; ++i)
      for (Eigen::Index j = 0; j < n2; ++j) {
        const Scalar s = t == WaveType::Bx1 ? mode.x2(j) : mode.x1(i);
        r += std::pow(mode.w(i, j) - c * s, 2);
      }
    return std::sqrt(r / count) / wmax;
  }
  // Torsion.
  Scalar inplane = 0, num = 0, den = 0;
  for (Eigen::Index i = 0; i < n1; ++i)
    for (Eigen::Index j = 0; j < n2; ++j) {
      const Scalar x = mode.x1(i), y = mode.x2(j);
      inplane = std::max(inplane, std::hypot(mode.u(i, j), mode.v(i, j)));
      num += -y * mode.u(i, j) + x * mode.v(i, j);
      den += x * x + y * y;
    }
  if (!(inplane > 0)) return std::nullopt;
  const Scalar theta = num / den;
  Scalar r = 0;
  for (Eigen::Index i = 0; i < n1; ++i)
    for (Eigen::Index j = 0; j < n2; ++j) {
      const Scalar x = mode.x1(i), y = mode.x2(j);
      r += std::pow(mode.u(i, j) + theta * y, 2) + std::pow(mode.v(i, j) - theta * x, 2);
    }
  return std::sqrt(r / count) / inplane;
}

}  // namespace wavebeam
