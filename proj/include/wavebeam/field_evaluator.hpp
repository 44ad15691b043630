#pragma once

#include <Eigen/Dense>
#include <array>
#include <cmath>
#include <vector>

#include "wavebeam/elastic_model.hpp"
#include "wavebeam/errors.hpp"
#include "wavebeam/homogeneous_solutions.hpp"
#include "wavebeam/particular_solution.hpp"

namespace wavebeam {

enum class ColumnSource { Corner, Direction1, Direction2 };

/// Unknowns either as boundary jump coefficients q (Reduced) or as the
/// retained constants of each block (Retained). Both span the same fields.
enum class Coordinates { Reduced, Retained };

/// Reflection classes. x1 = +1: u odd, v even, w even in x1.
/// x2 = +1: u even, v odd, w even in x2.
struct Parity {
  int x1{0};
  int x2{0};
};

struct ColumnDescriptor {
  ColumnSource source{ColumnSource::Corner};
  int block{-1};  // block number within the layout, -1 for the corner
  int index{0};   // harmonic index n (direction 1) or m (direction 2)
  Family family{Family::Zero};
  int local{0};  // position inside the block (0..5) or corner component (0..2)
  Parity reduced;
  Parity retained;
};

struct BlockDescriptor {
  int direction{1};
  int index{0};
  Family family{Family::Zero};
  int first_column{0};
};

namespace detail {

// x1 classes of the retained constants of a direction-1 block in its local frame.
inline std::array<int, 6> retained_local_x1_class(Family f) {
  if (f == Family::Zero) return {-1, +1, +1, -1, +1, -1};
  return {-1, +1, +1, -1, +1, -1};
}

// x2 class of the retained constants of a direction-1 block in its local frame.
inline std::array<int, 6> retained_local_x2_class(Family f) {
  if (f == Family::One) return {+1, +1, +1, +1, +1, +1};
  if (f == Family::Two) return {-1, -1, -1, -1, -1, -1};
  // u/w columns are constant-modulated and even, v-only columns as well,
  // but an even v belongs to the odd class.
  return {+1, +1, -1, -1, +1, +1};
}

// Jump unknowns: (q_u0, q_u1, q_v0, q_v1, q_w0, q_w1); value jumps pick the odd parts.
inline std::array<int, 6> reduced_local_x1_class() { return {+1, -1, -1, +1, -1, +1}; }

inline std::array<int, 6> reduced_local_x2_class(Family f) {
  if (f == Family::One) return {+1, +1, +1, +1, +1, +1};
  if (f == Family::Two) return {-1, -1, -1, -1, -1, -1};
  return {+1, +1, -1, -1, +1, +1};
}

}  // namespace detail

/// Column layout of the full unknown vector:
/// corner (3), direction-1 blocks (family one n = 0..N, family two n = 1..N),
/// direction-2 blocks (family one m = 0..M, family two m = 1..M).
class BasisLayout {
 public:
  BasisLayout() = default;
  BasisLayout(int M, int N) : M_(M), N_(N) {
    if (M < 1 || N < 1) throw InvalidParameter("truncation orders M and N must be at least 1");
    static constexpr Parity corner[3] = {{+1, -1}, {-1, +1}, {-1, -1}};
    for (int c = 0; c < 3; ++c)
      columns_.push_back({ColumnSource::Corner, -1, 0, Family::Zero, c, corner[c], corner[c]});
    add_direction(1, N);
    add_direction(2, M);
  }

  int M() const { return M_; }
  int N() const { return N_; }
  int size() const { return static_cast<int>(columns_.size()); }
  const std::vector<ColumnDescriptor>& columns() const { return columns_; }
  const ColumnDescriptor& column(int i) const { return columns_.at(i); }
  const std::vector<BlockDescriptor>& blocks() const { return blocks_; }

  /// 12M + 12N + 15.
  static int expected_size(int M, int N) { return 12 * M + 12 * N + 15; }

 private:
  void add_direction(int dir, int count) {
    for (int n = 0; n <= count; ++n) add_block(dir, n, n == 0 ? Family::Zero : Family::One);
    for (int n = 1; n <= count; ++n) add_block(dir, n, Family::Two);
  }

  void add_block(int dir, int n, Family f) {
    const int block = static_cast<int>(blocks_.size());
    blocks_.push_back({dir, n, f, size()});
    const auto rx1 = detail::retained_local_x1_class(f);
    const auto rx2 = detail::retained_local_x2_class(f);
    const auto qx1 = detail::reduced_local_x1_class();
    const auto qx2 = detail::reduced_local_x2_class(f);
    for (int j = 0; j < 6; ++j) {
      ColumnDescriptor d{dir == 1 ? ColumnSource::Direction1 : ColumnSource::Direction2,
                         block, n, f, j, {}, {}};
      if (dir == 1) {
        d.retained = {rx1[j], rx2[j]};
        d.reduced = {qx1[j], qx2[j]};
      } else {
        // The local x1 class becomes the global x2 class and vice versa.
        d.retained = {rx2[j], rx1[j]};
        const int lj = BoundaryBlock<double>::kDirection2Perm[j];
        d.reduced = {qx2[lj], qx1[lj]};
      }
      columns_.push_back(d);
    }
  }

  int M_{0};
  int N_{0};
  std::vector<ColumnDescriptor> columns_;
  std::vector<BlockDescriptor> blocks_;
};

/// Derivatives of the basis row at one point; slots ordered
/// (0,0), (1,0), (0,1), (2,0), (1,1), (0,2).
template <typename Scalar = double>
struct FieldJet {
  using Rows = Eigen::Matrix<Scalar, 3, Eigen::Dynamic>;
  std::array<Rows, 6> d;
  int max_order{0};

  static int slot(int k1, int k2) {
    static constexpr int table[3][3] = {{0, 2, 5}, {1, 4, -1}, {3, -1, -1}};
    if (k1 < 0 || k2 < 0 || k1 + k2 > 2) throw InvalidParameter("jet holds orders k1 + k2 <= 2");
    return table[k1][k2];
  }
  const Rows& operator()(int k1, int k2) const { return d[slot(k1, k2)]; }
};

/// All state-dependent pieces of the modal basis at one (Omega, K).
template <typename Scalar = double>
class ModalBasis {
 public:
  ModalBasis(const BasisLayout& layout, const WaveState<Scalar>& state,
             const Material<Scalar>& mat, const CrossSection<Scalar>& cs)
      : layout_(&layout), state_(state), mat_(mat), cs_(cs) {
    if (!(state.k > 0)) throw UnsupportedWavenumber("the modal basis needs K > 0");
    blocks_.reserve(layout.blocks().size());
    for (const auto& b : layout.blocks())
      blocks_.emplace_back(b.index, b.family, b.direction, state, mat, cs);
    coupling_ = solve_internal_coefficients(layout.M(), layout.N(), state, mat, cs);
  }

  const BasisLayout& layout() const { return *layout_; }
  const WaveState<Scalar>& state() const { return state_; }
  const Material<Scalar>& material() const { return mat_; }
  const CrossSection<Scalar>& cross_section() const { return cs_; }
  const std::vector<BoundaryBlock<Scalar>>& blocks() const { return blocks_; }
  const CouplingMatrix<Scalar>& coupling() const { return coupling_; }

  /// Corner block plus internal series: 3 x 3, columns q3u, q3v, q3w.
  Eigen::Matrix<Scalar, 3, 3> particular(Scalar x1, Scalar x2, int k1, int k2) const {
    return corner_eval(x1, x2, k1, k2, cs_) + coupling_.internal_eval(x1, x2, k1, k2);
  }

  /// Derivatives up to max_order (<= 2) of every layout column.
  FieldJet<Scalar> jet(Scalar x1, Scalar x2, int max_order,
                       Coordinates coords = Coordinates::Reduced) const {
    if (max_order < 0 || max_order > 2) throw InvalidParameter("max_order must be 0, 1 or 2");
    FieldJet<Scalar> out;
    out.max_order = max_order;
    const int slots = max_order == 0 ? 1 : (max_order == 1 ? 3 : 6);
    static constexpr int k1s[6] = {0, 1, 0, 2, 1, 0};
    static constexpr int k2s[6] = {0, 0, 1, 0, 1, 2};
    const int cols = layout_->size();
    for (int s = 0; s < slots; ++s) {
      out.d[s].resize(3, cols);
      out.d[s].template leftCols<3>() = particular(x1, x2, k1s[s], k2s[s]);
    }
    std::array<Eigen::Matrix<Scalar, 3, 6>, 6> tmp;
    for (std::size_t b = 0; b < blocks_.size(); ++b) {
      blocks_[b].eval_retained_jet(x1, x2, max_order, tmp);
      const int first = layout_->blocks()[b].first_column;
      if (coords == Coordinates::Reduced) {
        const Eigen::Matrix<Scalar, 6, 6> inv = jump_inverse(b);
        for (int s = 0; s < slots; ++s) out.d[s].middleCols(first, 6) = tmp[s] * inv;
      } else {
        for (int s = 0; s < slots; ++s) out.d[s].middleCols(first, 6) = tmp[s];
      }
    }
    return out;
  }

  /// Basis row Phi^(k1,k2) at one point: 3 x (12M + 12N + 15).
  Eigen::Matrix<Scalar, 3, Eigen::Dynamic> basis_row(Scalar x1, Scalar x2, int k1, int k2,
                                                     Coordinates coords = Coordinates::Reduced) const {
    return jet(x1, x2, k1 + k2, coords)(k1, k2);
  }

  /// Map from retained constants to jump unknowns for all layout columns.
  Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic> retained_to_reduced() const {
    const int n = layout_->size();
    Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic> t =
        Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>::Zero(n, n);
    t.template topLeftCorner<3, 3>().setIdentity();
    for (std::size_t b = 0; b < blocks_.size(); ++b) {
      const int first = layout_->blocks()[b].first_column;
      t.block(first, first, 6, 6) = blocks_[b].jump_map();
    }
    return t;
  }

 private:
  Eigen::Matrix<Scalar, 6, 6> jump_inverse(std::size_t b) const {
    if (inverses_.empty()) {
      inverses_.resize(blocks_.size());
      for (std::size_t i = 0; i < blocks_.size(); ++i) {
        const auto& blk = blocks_[i];
        if (!(blk.condition() <= Scalar(1e13)))
          throw DegenerateState(blk.index(), family_name(blk.family()), double(state_.Omega),
                                double(state_.K));
        inverses_[i] = blk.jump_map().fullPivLu().inverse();
      }
    }
    return inverses_[b];
  }

  const BasisLayout* layout_;
  WaveState<Scalar> state_;
  Material<Scalar> mat_;
  CrossSection<Scalar> cs_;
  std::vector<BoundaryBlock<Scalar>> blocks_;
  CouplingMatrix<Scalar> coupling_;
  mutable std::vector<Eigen::Matrix<Scalar, 6, 6>> inverses_;
};

/// Stress rows (sigma_x1, sigma_x2, sigma_z, tau_x1x2, tau_x2z, tau_x1z) from a
/// jet holding at least first derivatives.
template <typename Scalar>
Eigen::Matrix<Scalar, 6, Eigen::Dynamic> stress_rows(const FieldJet<Scalar>& jet,
                                                     const WaveState<Scalar>& state,
                                                     const Material<Scalar>& mat) {
  if (jet.max_order < 1) throw InvalidParameter("stress rows need first derivatives");
  const auto& f = jet.d[0];
  const auto& f1 = jet.d[1];
  const auto& f2 = jet.d[2];
  const Scalar lam = mat.lambda, mu = mat.mu, k = state.k;
  const Scalar l2m = lam + 2 * mu;
  Eigen::Matrix<Scalar, 6, Eigen::Dynamic> g(6, f.cols());
  g.row(0) = l2m * f1.row(0) + lam * f2.row(1) + lam * k * f.row(2);
  g.row(1) = lam * f1.row(0) + l2m * f2.row(1) + lam * k * f.row(2);
  g.row(2) = lam * (f1.row(0) + f2.row(1)) + l2m * k * f.row(2);
  g.row(3) = mu * (f2.row(0) + f1.row(1));
  g.row(4) = mu * (f2.row(2) - k * f.row(1));
  g.row(5) = mu * (f1.row(2) - k * f.row(0));
  return g;
}

template <typename Scalar>
Eigen::Matrix<Scalar, 6, Eigen::Dynamic> stress_row(const ModalBasis<Scalar>& basis, Scalar x1,
                                                    Scalar x2,
                                                    Coordinates coords = Coordinates::Reduced) {
  return stress_rows(basis.jet(x1, x2, 1, coords), basis.state(), basis.material());
}

/// Modal operator applied column by column: 3 x cols.
template <typename Scalar>
Eigen::Matrix<Scalar, 3, Eigen::Dynamic> operator_rows(const FieldJet<Scalar>& jet,
                                                       const WaveState<Scalar>& state,
                                                       const Material<Scalar>& mat) {
  if (jet.max_order < 2) throw InvalidParameter("the modal operator needs second derivatives");
  const auto& f = jet(0, 0);
  const auto& f10 = jet(1, 0);
  const auto& f01 = jet(0, 1);
  const auto& f20 = jet(2, 0);
  const auto& f11 = jet(1, 1);
  const auto& f02 = jet(0, 2);
  const Scalar lpm = mat.lambda + mat.mu, mu = mat.mu, k = state.k;
  const Scalar rw2 = mat.rho * state.omega * state.omega;
  Eigen::Matrix<Scalar, 3, Eigen::Dynamic> r(3, f.cols());
  r.row(0) = mu * (f20.row(0) + f02.row(0) - k * k * f.row(0)) +
             lpm * (f20.row(0) + f11.row(1) + k * f10.row(2)) + rw2 * f.row(0);
  r.row(1) = mu * (f20.row(1) + f02.row(1) - k * k * f.row(1)) +
             lpm * (f11.row(0) + f02.row(1) + k * f01.row(2)) + rw2 * f.row(1);
  r.row(2) = mu * (f20.row(2) + f02.row(2) - k * k * f.row(2)) -
             lpm * k * (f10.row(0) + f01.row(1) + k * f.row(2)) + rw2 * f.row(2);
  return r;
}

/// L_phi of the field Phi q at an interior point.
template <typename Scalar>
Eigen::Matrix<Scalar, 3, 1> operator_residual(const ModalBasis<Scalar>& basis,
                                              const Eigen::Matrix<Scalar, Eigen::Dynamic, 1>& q,
                                              Scalar x1, Scalar x2,
                                              Coordinates coords = Coordinates::Reduced) {
  if (q.size() != basis.layout().size()) throw InvalidParameter("q length does not match layout");
  return operator_rows(basis.jet(x1, x2, 2, coords), basis.state(), basis.material()) * q;
}

/// Physical displacement (u, v, w) at (x1, x2, z, t); u, v carry
/// cos(kz - omega t) and w carries sin(kz - omega t).
template <typename Scalar>
Eigen::Matrix<Scalar, 3, 1> displacement(const ModalBasis<Scalar>& basis,
                                         const Eigen::Matrix<Scalar, Eigen::Dynamic, 1>& q,
                                         Scalar x1, Scalar x2, Scalar z, Scalar t) {
  if (q.size() != basis.layout().size()) throw InvalidParameter("q length does not match layout");
  Eigen::Matrix<Scalar, 3, 1> phi = basis.basis_row(x1, x2, 0, 0) * q;
  const Scalar arg = basis.state().k * z - basis.state().omega * t;
  phi(0) *= std::cos(arg);
  phi(1) *= std::cos(arg);
  phi(2) *= std::sin(arg);
  return phi;
}

}  // namespace wavebeam
