#pragma once

#include <Eigen/Dense>
#include <array>
#include <cmath>
#include <limits>
#include <numbers>

#include "wavebeam/elastic_model.hpp"
#include "wavebeam/errors.hpp"
#include "wavebeam/spectral_basis.hpp"

namespace wavebeam {

/// Modulation family of a boundary block: cos/sin/cos (One), sin/cos/sin
/// (Two) or the constant index-zero block (Zero).
enum class Family { One, Two, Zero };

inline const char* family_name(Family f) {
  switch (f) {
    case Family::One:
      return "1";
    case Family::Two:
      return "2";
    default:
      return "zero";
  }
}

/// Maps the six retained constants to the twelve constants
/// a = [G_u^1..4, G_v^1..4, G_w^1..4].
template <typename Scalar = double>
struct ConstraintMatrix {
  Eigen::Matrix<Scalar, 12, 6> entries = Eigen::Matrix<Scalar, 12, 6>::Zero();
  std::array<int, 6> retained{};
  Family family{Family::One};
};

/// Constraint matrix for index n >= 1. beta_sign = -1 gives the family-two variant.
template <typename Scalar>
ConstraintMatrix<Scalar> build_constraint_matrix(const HarmonicBasis<Scalar>& hb, int beta_sign,
                                                 const WaveState<Scalar>& state,
                                                 const Material<Scalar>& mat) {
  (void)mat;
  if (hb.index() < 1) throw InvalidParameter("build_constraint_matrix needs n >= 1");
  if (!(state.k > 0)) throw UnsupportedWavenumber("boundary functions need K > 0");
  if (beta_sign != 1 && beta_sign != -1) throw InvalidParameter("beta_sign must be +1 or -1");
  const Scalar beta = beta_sign * hb.beta();
  const Scalar k = state.k;
  const Scalar c1 = hb.coupling(1), c2 = hb.coupling(2), c3 = hb.coupling(3),
               c4 = hb.coupling(4);

  ConstraintMatrix<Scalar> t;
  t.family = beta_sign > 0 ? Family::One : Family::Two;
  t.retained = {0, 1, 6, 7, 8, 9};
  auto& e = t.entries;
  for (int j = 0; j < 6; ++j) e(t.retained[j], j) = 1;
  // Shear part is divergence free.
  e(4, 1) = -c2 / beta;
  e(4, 4) = -k / beta;
  e(5, 0) = -c1 / beta;
  e(5, 5) = -k / beta;
  // Dilatational part is the gradient of a potential.
  e(2, 3) = -c4 / beta;
  e(3, 2) = -c3 / beta;
  e(10, 2) = k / beta;
  e(11, 3) = k / beta;
  return t;
}

/// Constraint matrix for the index-zero block; v decouples from u and w.
template <typename Scalar>
ConstraintMatrix<Scalar> build_constraint_matrix_n0(const HarmonicBasis<Scalar>& hb,
                                                    const WaveState<Scalar>& state,
                                                    const Material<Scalar>& mat) {
  (void)mat;
  if (!(state.k > 0)) throw UnsupportedWavenumber("boundary functions need K > 0");
  const Scalar k = state.k;
  const Scalar c1 = hb.coupling(1), c2 = hb.coupling(2), c3 = hb.coupling(3),
               c4 = hb.coupling(4);

  ConstraintMatrix<Scalar> t;
  t.family = Family::Zero;
  t.retained = {0, 1, 4, 5, 10, 11};
  auto& e = t.entries;
  for (int j = 0; j < 6; ++j) e(t.retained[j], j) = 1;
  e(8, 1) = -c2 / k;
  e(9, 0) = -c1 / k;
  e(2, 5) = -c4 / k;
  e(3, 4) = -c3 / k;
  return t;
}

/// R = [p(a) - p(-a); p'(a) - p'(-a)] in the scaled basis.
template <typename Scalar>
Eigen::Matrix<Scalar, 2, 4> edge_trace(const HarmonicBasis<Scalar>& hb) {
  const Scalar a = hb.halfspan();
  Eigen::Matrix<Scalar, 2, 4> r;
  r.row(0) = (hb.values(a, 0) - hb.values(-a, 0)).transpose();
  r.row(1) = (hb.values(a, 1) - hb.values(-a, 1)).transpose();
  return r;
}

/// S * T, the map from retained constants to the six boundary jump unknowns.
template <typename Scalar>
Eigen::Matrix<Scalar, 6, 6> jump_matrix(const Eigen::Matrix<Scalar, 2, 4>& r,
                                        const ConstraintMatrix<Scalar>& t) {
  Eigen::Matrix<Scalar, 6, 6> st;
  for (int c = 0; c < 3; ++c) st.middleRows(2 * c, 2) = r * t.entries.middleRows(4 * c, 4);
  return st;
}

namespace detail {

// k-th derivative of cos(beta y) (sin_kind = false) or sin(beta y).
template <typename Scalar>
Scalar trig_derivative(bool sin_kind, Scalar beta, Scalar c, Scalar s, int k) {
  switch (k) {
    case 0:
      return sin_kind ? s : c;
    case 1:
      return sin_kind ? beta * c : -beta * s;
    default:
      return -beta * beta * (sin_kind ? s : c);
  }
}

}  // namespace detail

/// One boundary block: six exact solutions of the homogeneous modal system.
///
/// The block is built in a local frame where the one-dimensional basis runs
/// along y1 over [-h, h] and the modulation along y2. Direction 1 uses
/// (y1, y2) = (x1, x2); direction 2 uses (y1, y2) = (x2, x1) and exchanges
/// the u and v rows.
template <typename Scalar = double>
class BoundaryBlock {
 public:
  using Matrix36 = Eigen::Matrix<Scalar, 3, 6>;
  using Matrix33 = Eigen::Matrix<Scalar, 3, 3>;
  using Matrix6 = Eigen::Matrix<Scalar, 6, 6>;

  /// Column permutation of the jump unknowns for direction 2.
  static constexpr std::array<int, 6> kDirection2Perm{2, 3, 0, 1, 4, 5};

  BoundaryBlock() = default;

  BoundaryBlock(int index, Family family, int direction, const WaveState<Scalar>& state,
                const Material<Scalar>& mat, const CrossSection<Scalar>& cs)
      : index_(index), family_(family), direction_(direction) {
    if (direction != 1 && direction != 2) throw InvalidParameter("direction must be 1 or 2");
    if (index < 0) throw InvalidParameter("harmonic index must be nonnegative");
    if ((family == Family::Zero) != (index == 0))
      throw InvalidParameter("index zero pairs with the zero family only");
    if (!(state.k > 0)) throw UnsupportedWavenumber("boundary functions need K > 0");
    const Scalar span = direction == 1 ? cs.a : cs.b;
    const Scalar mod_span = direction == 1 ? cs.b : cs.a;
    basis_ = HarmonicBasis<Scalar>::make(index, mod_span, span, state, mat);
    constraint_ = family == Family::Zero ? build_constraint_matrix_n0(basis_, state, mat)
                                         : build_constraint_matrix(
                                               basis_, family == Family::One ? 1 : -1, state, mat);
    jump_ = jump_matrix(edge_trace(basis_), constraint_);
  }

  int index() const { return index_; }
  Family family() const { return family_; }
  int direction() const { return direction_; }
  const HarmonicBasis<Scalar>& basis() const { return basis_; }
  const ConstraintMatrix<Scalar>& constraint() const { return constraint_; }

  /// Local S * T.
  const Matrix6& local_jump_matrix() const { return jump_; }

  /// Map from retained constants to the block's jump unknowns in global
  /// component order.
  Matrix6 jump_map() const {
    if (direction_ == 1) return jump_;
    Matrix6 out;
    for (int r = 0; r < 6; ++r) out.row(r) = jump_.row(kDirection2Perm[r]);
    return out;
  }

  /// 2-norm condition number of S * T.
  Scalar condition() const {
    Eigen::JacobiSVD<Matrix6> svd(jump_);
    const auto& s = svd.singularValues();
    if (!(s(5) > 0)) return std::numeric_limits<Scalar>::infinity();
    return s(0) / s(5);
  }

  /// Local P^(k)(y1) T: retained-coordinate basis along the expansion axis.
  Matrix36 retained_basis(Scalar y1, int k1) const {
    const auto p = basis_.values(y1, k1);
    Matrix36 out;
    for (int c = 0; c < 3; ++c)
      out.row(c) = p.transpose() * constraint_.entries.template middleRows<4>(4 * c);
    return out;
  }

  /// Local P^(k)(y1) T (S T)^-1.
  Matrix36 reduced_basis(Scalar y1, int k1) const {
    return retained_basis(y1, k1) * jump_.partialPivLu().inverse();
  }

  /// Local diagonal modulation H^(k2)(y2).
  Matrix33 modulation(Scalar y2, int k2) const {
    Matrix33 h = Matrix33::Zero();
    const auto d = modulation_diag(y2, k2);
    h.diagonal() = d;
    return h;
  }

  /// Global-frame retained field columns and their (k1, k2) derivative.
  Matrix36 eval_retained(Scalar x1, Scalar x2, int k1, int k2) const {
    check_orders(k1, k2);
    const Scalar y1 = direction_ == 1 ? x1 : x2;
    const Scalar y2 = direction_ == 1 ? x2 : x1;
    const int j1 = direction_ == 1 ? k1 : k2;
    const int j2 = direction_ == 1 ? k2 : k1;
    Matrix36 out = modulation_diag(y2, j2).asDiagonal() * retained_basis(y1, j1);
    if (direction_ == 2) out.row(0).swap(out.row(1));
    return out;
  }

  /// Global-frame field columns in jump-unknown coordinates.
  Matrix36 eval(Scalar x1, Scalar x2, int k1, int k2) const {
    return eval_retained(x1, x2, k1, k2) * jump_map().partialPivLu().inverse();
  }

  /// Writes all derivatives up to max_order (0, 1 or 2) of the retained
  /// columns into out[slot] (3 x 6 blocks), slots ordered
  /// (0,0), (1,0), (0,1), (2,0), (1,1), (0,2).
  template <typename Out>
  void eval_retained_jet(Scalar x1, Scalar x2, int max_order, std::array<Out, 6>& out) const {
    const Scalar y1 = direction_ == 1 ? x1 : x2;
    const Scalar y2 = direction_ == 1 ? x2 : x1;
    std::array<Matrix36, 3> p;
    const int nk = max_order + 1;
    for (int k = 0; k < nk; ++k) p[k] = retained_basis(y1, k);
    std::array<Eigen::Matrix<Scalar, 3, 1>, 3> h;
    for (int k = 0; k < nk; ++k) h[k] = modulation_diag(y2, k);
    static constexpr int k1s[6] = {0, 1, 0, 2, 1, 0};
    static constexpr int k2s[6] = {0, 0, 1, 0, 1, 2};
    const int slots = max_order == 0 ? 1 : (max_order == 1 ? 3 : 6);
    for (int s = 0; s < slots; ++s) {
      const int j1 = direction_ == 1 ? k1s[s] : k2s[s];
      const int j2 = direction_ == 1 ? k2s[s] : k1s[s];
      Matrix36 m = h[j2].asDiagonal() * p[j1];
      if (direction_ == 2) m.row(0).swap(m.row(1));
      out[s] = m;
    }
  }

 private:
  static void check_orders(int k1, int k2) {
    if (k1 < 0 || k2 < 0 || k1 > 2 || k2 > 2)
      throw InvalidParameter("derivative orders must lie in 0..2");
  }

  Eigen::Matrix<Scalar, 3, 1> modulation_diag(Scalar y2, int k2) const {
    Eigen::Matrix<Scalar, 3, 1> d;
    if (family_ == Family::Zero) {
      d.setConstant(k2 == 0 ? Scalar(0.5) : Scalar(0));
      return d;
    }
    const Scalar beta = basis_.beta();
    const Scalar c = std::cos(beta * y2);
    const Scalar s = std::sin(beta * y2);
    const bool one = family_ == Family::One;
    d(0) = detail::trig_derivative(!one, beta, c, s, k2);
    d(1) = detail::trig_derivative(one, beta, c, s, k2);
    d(2) = d(0);
    return d;
  }

  int index_{0};
  Family family_{Family::Zero};
  int direction_{1};
  HarmonicBasis<Scalar> basis_{};
  ConstraintMatrix<Scalar> constraint_{};
  Matrix6 jump_ = Matrix6::Identity();
};

/// Direction-1 block; throws DegenerateState when S * T is numerically singular.
template <typename Scalar>
BoundaryBlock<Scalar> boundary_block(int n, Family family, const WaveState<Scalar>& state,
                                     const Material<Scalar>& mat, const CrossSection<Scalar>& cs) {
  BoundaryBlock<Scalar> block(n, family, 1, state, mat, cs);
  if (!(block.condition() <= Scalar(1e13)))
    throw DegenerateState(n, family_name(family), double(state.Omega), double(state.K));
  return block;
}

/// Direction-2 twin of boundary_block (index m, basis along x2).
template <typename Scalar>
BoundaryBlock<Scalar> direction2_block(int m, Family family, const WaveState<Scalar>& state,
                                       const Material<Scalar>& mat,
                                       const CrossSection<Scalar>& cs) {
  BoundaryBlock<Scalar> block(m, family, 2, state, mat, cs);
  if (!(block.condition() <= Scalar(1e13)))
    throw DegenerateState(m, family_name(family), double(state.Omega), double(state.K));
  return block;
}

}  // namespace wavebeam
