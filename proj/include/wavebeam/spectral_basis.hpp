#pragma once

#include <Eigen/Core>
#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <utility>

#include "wavebeam/elastic_model.hpp"
#include "wavebeam/errors.hpp"

namespace wavebeam {

template <typename Scalar = double>
struct Discriminants {
  Scalar delta1{};  // shear (double) root
  Scalar delta2{};  // dilatational (single) root
};

enum class RootKind { Hyperbolic, Trigonometric, Degenerate };

template <typename Scalar = double>
struct RootPair {
  RootKind kind{RootKind::Degenerate};
  Scalar alpha{};
};

/// delta1 = beta^2 + k^2 - rho omega^2 / mu, delta2 = beta^2 + k^2 - rho omega^2 / (lambda + 2 mu).
template <typename Scalar>
Discriminants<Scalar> discriminants(Scalar beta, const WaveState<Scalar>& state,
                                    const Material<Scalar>& mat) {
  const Scalar base = beta * beta + state.k * state.k;
  const Scalar inertia = mat.rho * state.omega * state.omega;
  return {base - inertia / mat.mu, base - inertia / mat.p_modulus()};
}

/// tau = 1e-9 (beta^2 + k^2 + rho omega^2 / mu).
template <typename Scalar>
Scalar degeneracy_tolerance(Scalar beta, const WaveState<Scalar>& state,
                            const Material<Scalar>& mat) {
  return Scalar(1e-9) *
         (beta * beta + state.k * state.k + mat.rho * state.omega * state.omega / mat.mu);
}

template <typename Scalar>
RootPair<Scalar> classify_root(Scalar delta, Scalar tol) {
  if (!(tol > 0)) throw InvalidParameter("degeneracy tolerance must be positive");
  if (delta > tol) return {RootKind::Hyperbolic, std::sqrt(delta)};
  if (delta < -tol) return {RootKind::Trigonometric, std::sqrt(-delta)};
  return {RootKind::Degenerate, Scalar(0)};
}

template <typename Scalar>
std::pair<RootPair<Scalar>, RootPair<Scalar>> classify_roots(const Discriminants<Scalar>& d,
                                                             Scalar tol) {
  return {classify_root(d.delta1, tol), classify_root(d.delta2, tol)};
}

/// [mu(-eta^2 + beta^2 + k^2) - rho omega^2]^2 [(lambda + 2 mu)(-eta^2 + beta^2 + k^2) - rho omega^2]
template <typename Scalar>
Scalar characteristic_residual(Scalar eta, Scalar beta, const WaveState<Scalar>& state,
                               const Material<Scalar>& mat) {
  const Scalar s = -eta * eta + beta * beta + state.k * state.k;
  const Scalar inertia = mat.rho * state.omega * state.omega;
  const Scalar shear = mat.mu * s - inertia;
  return shear * shear * (mat.p_modulus() * s - inertia);
}

namespace detail {

// F(alpha x) / G(alpha a) for F, G in {cosh, sinh}, stable for large alpha.
template <typename Scalar>
Scalar hyperbolic_ratio(bool num_cosh, bool den_cosh, Scalar alpha, Scalar x, Scalar a) {
  const Scalar t = alpha * std::abs(x);
  const Scalar ta = alpha * a;
  const Scalar num = num_cosh ? 1 + std::exp(-2 * t) : -std::expm1(-2 * t);
  const Scalar den = den_cosh ? 1 + std::exp(-2 * ta) : -std::expm1(-2 * ta);
  const Scalar sign = (!num_cosh && x < 0) ? Scalar(-1) : Scalar(1);
  return sign * std::exp(t - ta) * num / den;
}

}  // namespace detail

/// Four one-dimensional basis functions p1..p4 for one harmonic index.
///
/// p1, p2 are the even/odd pair of the double (shear) root, p3, p4 the pair
/// of the single (dilatational) root. Hyperbolic members are divided by
/// max(1, |p(a)|) so that no column overflows; the derivative couplings
/// p_even' = c_even p_odd and p_odd' = c_odd p_even absorb that scaling.
template <typename Scalar = double>
class HarmonicBasis {
 public:
  using Vector4 = Eigen::Matrix<Scalar, 4, 1>;

  HarmonicBasis() = default;

  HarmonicBasis(int index, Scalar beta, RootPair<Scalar> pair1, RootPair<Scalar> pair2,
                Scalar halfspan)
      : index_(index), beta_(beta), halfspan_(halfspan), pairs_{pair1, pair2} {
    if (!(halfspan > 0)) throw InvalidParameter("basis half-span must be positive");
    for (int p = 0; p < 2; ++p) setup_pair(p);
  }

  /// Builds the basis for wavenumber beta = index * pi / modulation_halfspan.
  static HarmonicBasis make(int index, Scalar modulation_halfspan, Scalar halfspan,
                            const WaveState<Scalar>& state, const Material<Scalar>& mat) {
    if (index < 0) throw InvalidParameter("harmonic index must be nonnegative");
    const Scalar beta = index * std::numbers::pi_v<Scalar> / modulation_halfspan;
    const auto d = discriminants(beta, state, mat);
    const auto [p1, p2] = classify_roots(d, degeneracy_tolerance(beta, state, mat));
    return HarmonicBasis(index, beta, p1, p2, halfspan);
  }

  int index() const { return index_; }
  Scalar beta() const { return beta_; }
  Scalar halfspan() const { return halfspan_; }
  const RootPair<Scalar>& pair1() const { return pairs_[0]; }
  const RootPair<Scalar>& pair2() const { return pairs_[1]; }

  /// Column scale applied to p_l (l = 1..4).
  Scalar scale(int l) const { return scale_[checked(l)]; }

  /// Coefficient c_l with p_l' = c_l p_partner(l).
  Scalar coupling(int l) const { return coupling_[checked(l)]; }

  /// order-th derivative of the scaled p_l at x.
  Scalar eval(int l, Scalar x, int order) const {
    const int i = checked(l);
    if (order < 0 || order > 2) throw InvalidParameter("derivative order must be 0, 1 or 2");
    const int partner = i ^ 1;
    switch (order) {
      case 0:
        return value(i, x);
      case 1:
        return coupling_[i] * value(partner, x);
      default:
        return coupling_[i] * coupling_[partner] * value(i, x);
    }
  }

  Vector4 values(Scalar x, int order) const {
    Vector4 out;
    for (int l = 1; l <= 4; ++l) out(l - 1) = eval(l, x, order);
    return out;
  }

 private:
  static int checked(int l) {
    if (l < 1 || l > 4) throw InvalidParameter("basis function index must be in 1..4");
    return l - 1;
  }

  void setup_pair(int p) {
    const auto& pair = pairs_[p];
    const int even = 2 * p;
    const int odd = even + 1;
    const Scalar alpha = pair.alpha;
    const Scalar a = halfspan_;
    switch (pair.kind) {
      case RootKind::Hyperbolic: {
        // cosh(alpha a) >= 1 always; sinh(alpha a) may stay below one.
        odd_scaled_[p] = std::sinh(alpha * a) > 1;
        scale_[even] = Scalar(1) / std::cosh(std::min(alpha * a, Scalar(700)));
        scale_[odd] = odd_scaled_[p] ? Scalar(1) / std::sinh(std::min(alpha * a, Scalar(700)))
                                     : Scalar(1);
        // ratio = scale_even / scale_odd, formed without overflow.
        const Scalar ratio = odd_scaled_[p] ? std::tanh(alpha * a) : Scalar(1) / std::cosh(alpha * a);
        coupling_[even] = alpha * ratio;
        coupling_[odd] = alpha / ratio;
        break;
      }
      case RootKind::Trigonometric:
        scale_[even] = scale_[odd] = 1;
        coupling_[even] = -alpha;
        coupling_[odd] = alpha;
        break;
      case RootKind::Degenerate:
        scale_[even] = scale_[odd] = 1;
        coupling_[even] = 0;
        coupling_[odd] = 1;
        break;
    }
  }

  Scalar value(int i, Scalar x) const {
    const int p = i / 2;
    const bool even = (i % 2) == 0;
    const auto& pair = pairs_[p];
    const Scalar alpha = pair.alpha;
    switch (pair.kind) {
      case RootKind::Hyperbolic:
        if (even) return detail::hyperbolic_ratio(true, true, alpha, x, halfspan_);
        if (odd_scaled_[p]) return detail::hyperbolic_ratio(false, false, alpha, x, halfspan_);
        return std::sinh(alpha * x);
      case RootKind::Trigonometric:
        return even ? std::cos(alpha * x) : std::sin(alpha * x);
      case RootKind::Degenerate:
      default:
        return even ? Scalar(1) : x;
    }
  }

  int index_{0};
  Scalar beta_{0};
  Scalar halfspan_{1};
  std::array<RootPair<Scalar>, 2> pairs_{};
  std::array<Scalar, 4> scale_{1, 1, 1, 1};
  std::array<Scalar, 4> coupling_{0, 1, 0, 1};
  std::array<bool, 2> odd_scaled_{false, false};
};

}  // namespace wavebeam
