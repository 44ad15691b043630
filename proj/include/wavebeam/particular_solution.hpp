#pragma once

#include <Eigen/Dense>
#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>

#include "wavebeam/elastic_model.hpp"
#include "wavebeam/errors.hpp"

namespace wavebeam {

/// Diagonal contribution of the corner function x1 x2 / (4ab) to the
/// (u, v, w) rows for the three corner unknowns.
template <typename Scalar>
Eigen::Matrix<Scalar, 3, 3> corner_eval(Scalar x1, Scalar x2, int k1, int k2,
                                        const CrossSection<Scalar>& cs) {
  if (k1 < 0 || k2 < 0 || k1 > 2 || k2 > 2)
    throw InvalidParameter("derivative orders must lie in 0..2");
  Scalar v = 0;
  if (k1 < 2 && k2 < 2) v = (k1 ? Scalar(1) : x1) * (k2 ? Scalar(1) : x2) / (4 * cs.a * cs.b);
  return Eigen::Matrix<Scalar, 3, 3>::Identity() * v;
}

/// Weight of the (m, n) term in the full-range double series.
template <typename Scalar = double>
Scalar series_weight(int m, int n) {
  return (m == 0 ? Scalar(0.5) : Scalar(1)) * (n == 0 ? Scalar(0.5) : Scalar(1));
}

/// Internal Fourier coefficients V_{t,mn,c} as linear maps of the corner
/// unknowns (q3u, q3v, q3w).
///
/// Type t in 0..3 encodes the trigonometric pair by bits (x1 sin, x2 sin):
/// cos cos, sin cos, cos sin, sin sin. Rows of T03 are ordered by
/// (component, type, m, n) with n fastest.
template <typename Scalar = double>
class CouplingMatrix {
 public:
  using RowMajor = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

  CouplingMatrix() = default;
  CouplingMatrix(int M, int N, const CrossSection<Scalar>& cs)
      : M_(M), N_(N), cs_(cs), T03_(Eigen::Matrix<Scalar, Eigen::Dynamic, 3>::Zero(12 * (M + 1) * (N + 1), 3)) {}

  int M() const { return M_; }
  int N() const { return N_; }
  const CrossSection<Scalar>& cross_section() const { return cs_; }

  int row(int comp, int type, int m, int n) const {
    return ((comp * 4 + type) * (M_ + 1) + m) * (N_ + 1) + n;
  }

  const Eigen::Matrix<Scalar, Eigen::Dynamic, 3>& T03() const { return T03_; }
  Eigen::Matrix<Scalar, Eigen::Dynamic, 3>& T03() { return T03_; }

  /// Coefficient block of (component, type) for one source, as an
  /// (M+1) x (N+1) matrix.
  Eigen::Map<const RowMajor> block(int source, int comp, int type) const {
    return Eigen::Map<const RowMajor>(T03_.col(source).data() + row(comp, type, 0, 0), M_ + 1,
                                      N_ + 1);
  }

  /// Precomputes weighted coefficient blocks for fast evaluation.
  void finalize() {
    for (int s = 0; s < 3; ++s)
      for (int c = 0; c < 3; ++c)
        for (int t = 0; t < 4; ++t) {
          RowMajor w = block(s, c, t);
          for (int m = 0; m <= M_; ++m)
            for (int n = 0; n <= N_; ++n) w(m, n) *= series_weight<Scalar>(m, n);
          active_[s][c][t] = !w.isZero(0);
          weighted_[s][c][t] = std::move(w);
        }
  }

  /// (k1, k2) derivative of the internal series for every (component, source).
  Eigen::Matrix<Scalar, 3, 3> internal_eval(Scalar x1, Scalar x2, int k1, int k2) const {
    std::array<Eigen::Matrix<Scalar, Eigen::Dynamic, 1>, 2> g, h;
    series_factors(x1, k1, M_, cs_.a, g);
    series_factors(x2, k2, N_, cs_.b, h);
    Eigen::Matrix<Scalar, 3, 3> out = Eigen::Matrix<Scalar, 3, 3>::Zero();
    for (int s = 0; s < 3; ++s)
      for (int c = 0; c < 3; ++c)
        for (int t = 0; t < 4; ++t)
          if (active_[s][c][t])
            out(c, s) += g[t & 1].dot(weighted_[s][c][t] * h[t >> 1]);
    return out;
  }

 private:
  static void series_factors(Scalar x, int k, int count, Scalar half,
                             std::array<Eigen::Matrix<Scalar, Eigen::Dynamic, 1>, 2>& f) {
    f[0].resize(count + 1);
    f[1].resize(count + 1);
    for (int j = 0; j <= count; ++j) {
      const Scalar w = j * std::numbers::pi_v<Scalar> / half;
      const Scalar c = std::cos(w * x), s = std::sin(w * x);
      switch (k) {
        case 0:
          f[0](j) = c;
          f[1](j) = s;
          break;
        case 1:
          f[0](j) = -w * s;
          f[1](j) = w * c;
          break;
        default:
          f[0](j) = -w * w * c;
          f[1](j) = -w * w * s;
          break;
      }
    }
  }

  int M_{0};
  int N_{0};
  CrossSection<Scalar> cs_{};
  Eigen::Matrix<Scalar, Eigen::Dynamic, 3> T03_;
  std::array<std::array<std::array<RowMajor, 4>, 3>, 3> weighted_{};
  std::array<std::array<std::array<bool, 4>, 3>, 3> active_{};
};

namespace detail {

// Full-range Fourier coefficient (1/ab) integral of x1^p1 x2^p2 against the
// matching trigonometric pair of cell (m, n); zero off the matching cells.
template <typename Scalar>
Scalar monomial_coefficient(int p1, int p2, int m, int n, Scalar a, Scalar b) {
  constexpr Scalar pi = std::numbers::pi_v<Scalar>;
  auto axis = [&](int p, int j, Scalar h) -> Scalar {
    if (p == 0) return j == 0 ? 2 * h : Scalar(0);
    if (j == 0) return 0;
    return 2 * h * h * ((j % 2) ? Scalar(1) : Scalar(-1)) / (j * pi);
  };
  return axis(p1, m, a) * axis(p2, n, b) / (a * b);
}

// Derivative factor of the trigonometric function of kind `bit`
// (0 cos, 1 sin): d/dx T_bit(w x) = factor * T_{bit^1}(w x).
template <typename Scalar>
Scalar derivative_factor(int bit, Scalar w) {
  return bit ? w : -w;
}

}  // namespace detail

/// Solves the Fourier-coefficient relations of the internal series for
/// every cell (m, n), 0 <= m <= M, 0 <= n <= N.
template <typename Scalar>
CouplingMatrix<Scalar> solve_internal_coefficients(int M, int N, const WaveState<Scalar>& state,
                                                   const Material<Scalar>& mat,
                                                   const CrossSection<Scalar>& cs) {
  if (M < 1 || N < 1) throw InvalidParameter("truncation orders M and N must be at least 1");
  mat.validate();
  cs.validate();
  constexpr Scalar pi = std::numbers::pi_v<Scalar>;
  const Scalar a = cs.a, b = cs.b, k = state.k;
  const Scalar lam = mat.lambda, mu = mat.mu;
  const Scalar rw2 = mat.rho * state.omega * state.omega;
  const Scalar lpm = lam + mu;
  const Scalar inv4ab = 1 / (4 * a * b);

  // Forcing polynomial -L(corner) for row c and source s: coefficient of x1^p1 x2^p2.
  // Entries: (row, source, p1, p2, coefficient).
  struct Term {
    int row, source, p1, p2;
    Scalar coeff;
  };
  const std::array<Term, 9> terms{{
      {0, 0, 1, 1, -(rw2 - mu * k * k) * inv4ab},
      {0, 1, 0, 0, -lpm * inv4ab},
      {0, 2, 0, 1, -lpm * k * inv4ab},
      {1, 0, 0, 0, -lpm * inv4ab},
      {1, 1, 1, 1, -(rw2 - mu * k * k) * inv4ab},
      {1, 2, 1, 0, -lpm * k * inv4ab},
      {2, 0, 0, 1, lpm * k * inv4ab},
      {2, 1, 1, 0, lpm * k * inv4ab},
      {2, 2, 1, 1, -(rw2 - (lam + 2 * mu) * k * k) * inv4ab},
  }};

  CouplingMatrix<Scalar> out(M, N, cs);
  auto& T03 = out.T03();
  for (int m = 0; m <= M; ++m) {
    const Scalar al = m * pi / a;
    for (int n = 0; n <= N; ++n) {
      const Scalar be = n * pi / b;
      const Scalar lap = -(al * al + be * be + k * k);
      for (int ut = 0; ut < 4; ++ut) {
        const int b1 = ut & 1, b2 = ut >> 1;
        // Unknown types of (u, v, w) in this coupled group.
        const std::array<int, 3> types{ut, (b1 ^ 1) | ((b2 ^ 1) << 1), (b1 ^ 1) | (b2 << 1)};
        const int b1v = types[1] & 1, b2v = types[1] >> 1;
        using detail::derivative_factor;
        Eigen::Matrix<Scalar, 3, 3> A;
        A(0, 0) = mu * lap - lpm * al * al + rw2;
        A(0, 1) = lpm * derivative_factor(b1v, al) * derivative_factor(b2v, be);
        A(0, 2) = lpm * k * derivative_factor(b1 ^ 1, al);
        A(1, 0) = lpm * derivative_factor(b1, al) * derivative_factor(b2, be);
        A(1, 1) = mu * lap - lpm * be * be + rw2;
        A(1, 2) = lpm * k * derivative_factor(b2, be);
        A(2, 0) = -lpm * k * derivative_factor(b1, al);
        A(2, 1) = -lpm * k * derivative_factor(b2v, be);
        A(2, 2) = mu * lap - lpm * k * k + rw2;

        Eigen::Matrix<Scalar, 3, 3> rhs = Eigen::Matrix<Scalar, 3, 3>::Zero();
        for (const auto& term : terms) {
          if ((term.p1 | (term.p2 << 1)) != types[term.row]) continue;
          rhs(term.row, term.source) +=
              term.coeff * detail::monomial_coefficient(term.p1, term.p2, m, n, a, b);
        }

        // A sine of zero wavenumber vanishes identically: drop that unknown and its row.
        std::array<int, 3> idx{};
        int na = 0;
        for (int c = 0; c < 3; ++c) {
          const int t = types[c];
          if (!(((t & 1) && m == 0) || ((t >> 1) && n == 0))) idx[na++] = c;
        }
        if (na == 0) continue;
        Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic> As(na, na), bs(na, 3);
        for (int i = 0; i < na; ++i) {
          bs.row(i) = rhs.row(idx[i]);
          for (int j = 0; j < na; ++j) As(i, j) = A(idx[i], idx[j]);
        }
        if (bs.isZero(0)) continue;
        Eigen::JacobiSVD<Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>> svd(
            As, Eigen::ComputeFullU | Eigen::ComputeFullV);
        const auto& sv = svd.singularValues();
        const Scalar scale =
            std::max(sv(0), rw2 + (lam + 2 * mu) * (al * al + be * be + k * k));
        if (!(sv(na - 1) * Scalar(1e13) > scale))
          throw InternalResonance(m, n, double(state.Omega), double(state.K));
        const Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic> x = svd.solve(bs);
        for (int i = 0; i < na; ++i)
          T03.row(out.row(idx[i], types[idx[i]], m, n)) = x.row(i);
      }
    }
  }
  out.finalize();
  return out;
}

}  // namespace wavebeam
