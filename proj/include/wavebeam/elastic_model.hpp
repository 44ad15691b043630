#pragma once

#include <cmath>
#include <numbers>

#include "wavebeam/errors.hpp"

namespace wavebeam {

/// Isotropic elastic solid described by its Lame constants and density.
template <typename Scalar = double>
struct Material {
  Scalar lambda{};
  Scalar mu{};
  Scalar rho{};

  /// Shear wave speed c_T = sqrt(mu / rho).
  Scalar shear_speed() const { return std::sqrt(mu / rho); }

  /// P-wave modulus lambda + 2 mu.
  Scalar p_modulus() const { return lambda + 2 * mu; }

  void validate() const {
    if (!(mu > 0)) throw InvalidParameter("shear modulus must be positive");
    if (!(rho > 0)) throw InvalidParameter("density must be positive");
    if (!(lambda > -Scalar(2) / 3 * mu))
      throw InvalidParameter("lambda must exceed -2/3 mu for positive strain energy");
  }
};

/// lambda = 2 mu nu / (1 - 2 nu).
template <typename Scalar>
Material<Scalar> material_from_poisson(Scalar nu, Scalar mu, Scalar rho) {
  if (!(nu >= 0) || !(nu < Scalar(0.5)))
    throw InvalidParameter("Poisson ratio must lie in [0, 0.5)");
  Material<Scalar> m{2 * mu * nu / (1 - 2 * nu), mu, rho};
  m.validate();
  return m;
}

/// Rectangle [-a, a] x [-b, b].
template <typename Scalar = double>
struct CrossSection {
  Scalar a{1};
  Scalar b{1};

  /// a is fixed to one; b follows from the length-to-width ratio a/b.
  static CrossSection from_aspect(Scalar a_over_b) {
    if (!(a_over_b > 0)) throw InvalidParameter("aspect ratio a/b must be positive");
    return CrossSection{Scalar(1), Scalar(1) / a_over_b};
  }

  Scalar aspect() const { return a / b; }

  void validate() const {
    if (!(a > 0) || !(b > 0)) throw InvalidParameter("half-lengths a and b must be positive");
  }
};

/// Propagation state: both the nondimensional pair (K, Omega) and the
/// dimensional (k, omega) it maps to.
template <typename Scalar = double>
struct WaveState {
  Scalar K{};
  Scalar Omega{};
  Scalar k{};
  Scalar omega{};
};

/// Omega = omega a / (pi c_T), K = k a / pi.
template <typename Scalar>
WaveState<Scalar> nondimensionalize(Scalar omega, Scalar k, const Material<Scalar>& mat,
                                    const CrossSection<Scalar>& cs) {
  mat.validate();
  cs.validate();
  if (!(omega >= 0) || !(k >= 0))
    throw InvalidParameter("frequency and wave number must be nonnegative");
  constexpr Scalar pi = std::numbers::pi_v<Scalar>;
  return WaveState<Scalar>{k * cs.a / pi, omega * cs.a / (pi * mat.shear_speed()), k, omega};
}

/// Inverse of nondimensionalize.
template <typename Scalar>
WaveState<Scalar> dimensionalize(Scalar K, Scalar Omega, const Material<Scalar>& mat,
                                 const CrossSection<Scalar>& cs) {
  mat.validate();
  cs.validate();
  if (!(Omega >= 0) || !(K >= 0))
    throw InvalidParameter("frequency and wave number must be nonnegative");
  constexpr Scalar pi = std::numbers::pi_v<Scalar>;
  return WaveState<Scalar>{K, Omega, K * pi / cs.a, Omega * pi * mat.shear_speed() / cs.a};
}

}  // namespace wavebeam
