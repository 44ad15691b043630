#pragma once

#include <Eigen/Dense>
#include <algorithm>
#include <array>
#include <cmath>
#include <string>
#include <vector>

#include "wavebeam/elastic_model.hpp"
#include "wavebeam/errors.hpp"
#include "wavebeam/field_evaluator.hpp"

namespace wavebeam {

enum class EdgeKind { Clamped, Free };

/// Edge order used by layouts: (x1 = +a, x2 = +b, x1 = -a, x2 = -b).
enum class Edge { PlusX1 = 0, PlusX2 = 1, MinusX1 = 2, MinusX2 = 3 };

inline bool is_x1_edge(Edge e) { return e == Edge::PlusX1 || e == Edge::MinusX1; }

struct EdgeCondition {
  Edge edge{Edge::PlusX1};
  EdgeKind kind{EdgeKind::Free};
};

/// Boundary layout: one condition per edge in the order above.
struct BcLayout {
  std::string label;
  std::array<EdgeKind, 4> edges{};

  static BcLayout FFFF() { return {"FFFF", {EdgeKind::Free, EdgeKind::Free, EdgeKind::Free, EdgeKind::Free}}; }
  static BcLayout FCFC() {
    return {"FCFC", {EdgeKind::Free, EdgeKind::Clamped, EdgeKind::Free, EdgeKind::Clamped}};
  }
  /// Free edge at x1 = -a, keeping the symmetry about the x1 axis.
  static BcLayout CCFC() {
    return {"CCFC", {EdgeKind::Clamped, EdgeKind::Clamped, EdgeKind::Free, EdgeKind::Clamped}};
  }

  static BcLayout parse(const std::string& s) {
    if (s == "FFFF") return FFFF();
    if (s == "FCFC") return FCFC();
    if (s == "CCFC") return CCFC();
    throw ConfigError("unknown boundary layout '" + s + "' (expected FFFF, FCFC or CCFC)");
  }

  EdgeKind kind(Edge e) const { return edges[static_cast<int>(e)]; }
  bool all_free() const {
    return std::all_of(edges.begin(), edges.end(), [](EdgeKind k) { return k == EdgeKind::Free; });
  }
};

enum class WaveType { L, T, Bx1, Bx2, Ls, La, Ts, Ta };

inline std::string wave_type_name(WaveType t) {
  static const char* names[] = {"L", "T", "Bx1", "Bx2", "Ls", "La", "Ts", "Ta"};
  return names[static_cast<int>(t)];
}

inline WaveType parse_wave_type(const std::string& s) {
  static const std::pair<const char*, WaveType> table[] = {
      {"L", WaveType::L},     {"T", WaveType::T},     {"Bx1", WaveType::Bx1},
      {"Bx2", WaveType::Bx2}, {"Ls", WaveType::Ls},   {"La", WaveType::La},
      {"Ts", WaveType::Ts},   {"Ta", WaveType::Ta},   {"B_x1", WaveType::Bx1},
      {"B_x2", WaveType::Bx2}, {"L_s", WaveType::Ls}, {"L_a", WaveType::La},
      {"T_s", WaveType::Ts},  {"T_a", WaveType::Ta}};
  for (const auto& [name, t] : table)
    if (s == name) return t;
  throw ConfigError("unknown wave type '" + s + "'");
}

inline bool is_diagonal_type(WaveType t) {
  return t == WaveType::Ls || t == WaveType::La || t == WaveType::Ts || t == WaveType::Ta;
}

/// Wave type bound to a layout with its reflection classes; 0 means the
/// reflection is not a symmetry of the layout.
struct WaveClass {
  BcLayout layout;
  WaveType type{WaveType::L};
  int x1{0};
  int x2{0};
  int diagonal{0};

  std::string name() const { return wave_type_name(type); }
};

inline WaveClass make_wave_class(const BcLayout& layout, WaveType type) {
  WaveClass w{layout, type, 0, 0, 0};
  auto reject = [&] {
    throw ConfigError("wave type " + wave_type_name(type) + " is not defined for layout " +
                      layout.label);
  };
  if (layout.label == "CCFC") {
    if (type == WaveType::L)
      w.x2 = +1;
    else if (type == WaveType::Bx1)
      w.x2 = -1;
    else
      reject();
    return w;
  }
  if (layout.label != "FFFF" && layout.label != "FCFC") reject();
  if (is_diagonal_type(type) && layout.label != "FFFF") reject();
  switch (type) {
    case WaveType::L:
    case WaveType::Ls:
    case WaveType::La:
      w.x1 = +1;
      w.x2 = +1;
      break;
    case WaveType::T:
    case WaveType::Ts:
    case WaveType::Ta:
      w.x1 = -1;
      w.x2 = -1;
      break;
    case WaveType::Bx1:
      w.x1 = +1;
      w.x2 = -1;
      break;
    case WaveType::Bx2:
      w.x1 = -1;
      w.x2 = +1;
      break;
  }
  if (type == WaveType::Ls || type == WaveType::Ts) w.diagonal = +1;
  if (type == WaveType::La || type == WaveType::Ta) w.diagonal = -1;
  return w;
}

/// Unknown counts of the symmetric decomposition.
inline int expected_column_count(const WaveClass& w, int M, int N) {
  const std::string& bc = w.layout.label;
  if (bc == "CCFC") return w.type == WaveType::L ? 6 * M + 6 * N + 7 : 6 * M + 6 * N + 5;
  const bool fffF = bc == "FFFF";
  switch (w.type) {
    case WaveType::L:
      return 3 * M + 3 * N + 4;
    case WaveType::T:
      return fffF ? 3 * M + 3 * N + 3 : 3 * M + 3 * N + 2;
    case WaveType::Bx1:
    case WaveType::Bx2:
      return fffF ? 3 * M + 3 * N + 4 : 3 * M + 3 * N + 3;
    case WaveType::Ls:
    case WaveType::La:
    case WaveType::Ts:
      return 3 * N + 2;
    case WaveType::Ta:
      return 3 * N + 1;
  }
  return 0;
}

/// A collocation segment: part of an edge carrying independent conditions.
template <typename Scalar = double>
struct ActiveEdge {
  Edge edge{Edge::PlusX1};
  EdgeKind kind{EdgeKind::Free};
  Scalar lo{};
  Scalar hi{};
};

/// A filtered column: layout column `primary`, plus sign * `partner` for
/// the diagonal split (partner = -1 otherwise).
template <typename Scalar = double>
struct FilteredColumn {
  int primary{0};
  int partner{-1};
  Scalar sign{1};
};

template <typename Scalar = double>
struct SymmetryFilter {
  std::vector<FilteredColumn<Scalar>> columns;
  std::vector<ActiveEdge<Scalar>> edges;
  int expected_count{0};
  Coordinates coords{Coordinates::Reduced};
  // Fundamental region for interior samples.
  Scalar x1_lo{}, x1_hi{}, x2_lo{}, x2_hi{};

  int size() const { return static_cast<int>(columns.size()); }
};

/// Selects the layout columns of a wave class, the edges carrying
/// independent conditions and the expected count.
template <typename Scalar>
SymmetryFilter<Scalar> symmetry_filter(const BasisLayout& layout, const WaveClass& wave,
                                       const CrossSection<Scalar>& cs,
                                       Coordinates coords = Coordinates::Reduced) {
  SymmetryFilter<Scalar> f;
  f.coords = coords;
  f.expected_count = expected_column_count(wave, layout.M(), layout.N());
  const bool corners = wave.layout.all_free();
  if (wave.diagonal != 0) {
    if (!corners) throw ConfigError("the diagonal split needs the FFFF layout");
    if (layout.M() != layout.N()) throw ConfigError("the diagonal split needs M = N");
    if (std::abs(cs.a - cs.b) > Scalar(1e-12) * cs.a)
      throw ConfigError("the diagonal split needs a square cross section");
  }
  auto parity = [&](const ColumnDescriptor& d) {
    return coords == Coordinates::Reduced ? d.reduced : d.retained;
  };
  auto matches = [&](const ColumnDescriptor& d) {
    const Parity p = parity(d);
    return (wave.x1 == 0 || p.x1 == wave.x1) && (wave.x2 == 0 || p.x2 == wave.x2);
  };

  for (int i = 0; i < layout.size(); ++i) {
    const auto& d = layout.column(i);
    if (d.source == ColumnSource::Corner && !corners) continue;
    if (!matches(d)) continue;
    if (wave.diagonal == 0) {
      f.columns.push_back({i, -1, Scalar(1)});
      continue;
    }
    if (d.source == ColumnSource::Corner) {
      // Only q3w lies in the T class; it is symmetric about the diagonal.
      if (d.local == 2 && wave.diagonal > 0) f.columns.push_back({i, -1, Scalar(1)});
      continue;
    }
    if (d.source != ColumnSource::Direction1) continue;
    // The diagonal reflection maps this column to its direction-2 twin.
    const int twin_block = d.block + static_cast<int>(layout.blocks().size()) / 2;
    const int twin_local =
        coords == Coordinates::Reduced ? BoundaryBlock<double>::kDirection2Perm[d.local] : d.local;
    const int twin = layout.blocks()[twin_block].first_column + twin_local;
    f.columns.push_back({i, twin, Scalar(wave.diagonal)});
  }

  const Scalar a = cs.a, b = cs.b;
  if (wave.diagonal != 0) {
    f.edges.push_back({Edge::PlusX1, wave.layout.kind(Edge::PlusX1), 0, b});
    f.x1_lo = 0, f.x1_hi = a, f.x2_lo = 0, f.x2_hi = b;
  } else if (wave.x1 != 0) {
    f.edges.push_back({Edge::PlusX1, wave.layout.kind(Edge::PlusX1), 0, b});
    f.edges.push_back({Edge::PlusX2, wave.layout.kind(Edge::PlusX2), 0, a});
    f.x1_lo = 0, f.x1_hi = a, f.x2_lo = 0, f.x2_hi = b;
  } else {
    f.edges.push_back({Edge::PlusX1, wave.layout.kind(Edge::PlusX1), 0, b});
    f.edges.push_back({Edge::MinusX1, wave.layout.kind(Edge::MinusX1), 0, b});
    f.edges.push_back({Edge::PlusX2, wave.layout.kind(Edge::PlusX2), -a, a});
    f.x1_lo = -a, f.x1_hi = a, f.x2_lo = 0, f.x2_hi = b;
  }
  return f;
}

/// Collocation point (x1, x2) at parameter t along an active edge.
template <typename Scalar>
std::array<Scalar, 2> edge_point(const ActiveEdge<Scalar>& e, Scalar t,
                                 const CrossSection<Scalar>& cs) {
  switch (e.edge) {
    case Edge::PlusX1:
      return {cs.a, t};
    case Edge::MinusX1:
      return {-cs.a, t};
    case Edge::PlusX2:
      return {t, cs.b};
    default:
      return {t, -cs.b};
  }
}

/// Boundary-condition rows at one edge point from a jet of order >= 1
/// (order 0 suffices for clamped edges). Stress rows are divided by mu.
template <typename Scalar>
Eigen::Matrix<Scalar, 3, Eigen::Dynamic> bc_rows_from_jet(const EdgeCondition& cond,
                                                          const FieldJet<Scalar>& jet,
                                                          const WaveState<Scalar>& state,
                                                          const Material<Scalar>& mat) {
  if (cond.kind == EdgeKind::Clamped) return jet.d[0];
  const auto g = stress_rows(jet, state, mat);
  Eigen::Matrix<Scalar, 3, Eigen::Dynamic> r(3, g.cols());
  if (is_x1_edge(cond.edge)) {
    r.row(0) = g.row(0);
    r.row(1) = g.row(3);
    r.row(2) = g.row(5);
  } else {
    r.row(0) = g.row(1);
    r.row(1) = g.row(3);
    r.row(2) = g.row(4);
  }
  return r / mat.mu;
}

/// Boundary-condition rows over all layout columns at a point on an edge.
template <typename Scalar>
Eigen::Matrix<Scalar, 3, Eigen::Dynamic> bc_rows(const EdgeCondition& cond, Scalar x1, Scalar x2,
                                                 const ModalBasis<Scalar>& basis,
                                                 Coordinates coords = Coordinates::Reduced) {
  const auto& cs = basis.cross_section();
  const Scalar tol = Scalar(1e-12) * std::max(cs.a, cs.b);
  const bool x1_edge = is_x1_edge(cond.edge);
  const Scalar want = (cond.edge == Edge::PlusX1)    ? cs.a
                      : (cond.edge == Edge::MinusX1) ? -cs.a
                      : (cond.edge == Edge::PlusX2)  ? cs.b
                                                     : -cs.b;
  const Scalar normal = x1_edge ? x1 : x2;
  const Scalar along = x1_edge ? x2 : x1;
  const Scalar half = x1_edge ? cs.b : cs.a;
  if (std::abs(normal - want) > tol) throw InvalidParameter("point does not lie on the edge");
  if (!(std::abs(along) < half - tol)) throw InvalidParameter("collocation point is a corner");
  const int order = cond.kind == EdgeKind::Clamped ? 0 : 1;
  return bc_rows_from_jet(cond, basis.jet(x1, x2, order, coords), basis.state(), basis.material());
}

template <typename Scalar = double>
struct CollocationConfig {
  WaveClass wave;
  int M{8};
  int N{8};
  Scalar oversample{3};
  Material<Scalar> material{};
  CrossSection<Scalar> cross_section{};
  Coordinates coords{Coordinates::Retained};
  Scalar rank_tolerance{1e-11};
};

template <typename Scalar = double>
struct CollocationPoint {
  EdgeCondition condition;
  Scalar x1{};
  Scalar x2{};
};

/// Boundary rows A and interior sample rows B over the filtered columns at
/// one (Omega, K); columns scaled to unit max-norm (scale recorded).
template <typename Scalar = double>
struct CollocationSystem {
  using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
  Matrix matrix;    // boundary rows, scaled
  Matrix interior;  // interior field values, scaled
  Eigen::Matrix<Scalar, Eigen::Dynamic, 1> column_scale;
  std::vector<FilteredColumn<Scalar>> columns;
  std::vector<CollocationPoint<Scalar>> points;
  Coordinates coords{Coordinates::Retained};
};

/// Reusable collocation setup for one configuration (layout, filter and
/// point sets are independent of Omega and K).
template <typename Scalar = double>
class Collocator {
 public:
  using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
  using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

  explicit Collocator(const CollocationConfig<Scalar>& cfg)
      : cfg_(cfg), layout_(cfg.M, cfg.N) {
    cfg_.material.validate();
    cfg_.cross_section.validate();
    if (!(cfg.oversample >= 1)) throw ConfigError("oversample must be at least 1");
    filter_ = symmetry_filter(layout_, cfg.wave, cfg.cross_section, cfg.coords);
    const int cols = filter_.size();
    const int n_edges = static_cast<int>(filter_.edges.size());
    const int p = static_cast<int>(std::ceil(cfg.oversample * cols / (3.0 * n_edges) - 1e-12));
    for (const auto& e : filter_.edges) {
      for (int j = 0; j < p; ++j) {
        const Scalar t = e.lo + (j + Scalar(0.5)) * (e.hi - e.lo) / p;
        const auto xy = edge_point(e, t, cfg.cross_section);
        points_.push_back({{e.edge, e.kind}, xy[0], xy[1]});
      }
    }
    const int ni = static_cast<int>(std::ceil(std::sqrt(Scalar(cols)))) + 1;
    for (int i = 0; i < ni; ++i)
      for (int j = 0; j < ni; ++j)
        interior_.push_back({filter_.x1_lo + (i + Scalar(0.5)) * (filter_.x1_hi - filter_.x1_lo) / ni,
                             filter_.x2_lo + (j + Scalar(0.5)) * (filter_.x2_hi - filter_.x2_lo) / ni});
  }

  const CollocationConfig<Scalar>& config() const { return cfg_; }
  const BasisLayout& layout() const { return layout_; }
  const SymmetryFilter<Scalar>& filter() const { return filter_; }
  const std::vector<CollocationPoint<Scalar>>& points() const { return points_; }
  const std::vector<std::array<Scalar, 2>>& interior_points() const { return interior_; }

  WaveState<Scalar> state(Scalar K, Scalar Omega) const {
    return dimensionalize(K, Omega, cfg_.material, cfg_.cross_section);
  }

  ModalBasis<Scalar> basis(const WaveState<Scalar>& st) const {
    return ModalBasis<Scalar>(layout_, st, cfg_.material, cfg_.cross_section);
  }

  /// Restricts full-layout rows to the filtered (possibly paired) columns.
  template <typename Rows>
  Matrix select(const Rows& full) const {
    Matrix out(full.rows(), filter_.size());
    for (int j = 0; j < filter_.size(); ++j) {
      const auto& c = filter_.columns[j];
      out.col(j) = full.col(c.primary);
      if (c.partner >= 0) out.col(j) += c.sign * full.col(c.partner);
    }
    return out;
  }

  CollocationSystem<Scalar> assemble(const WaveState<Scalar>& st) const {
    const auto mb = basis(st);
    CollocationSystem<Scalar> sys;
    sys.coords = cfg_.coords;
    sys.columns = filter_.columns;
    sys.points = points_;
    const int cols = filter_.size();
    sys.matrix.resize(3 * static_cast<int>(points_.size()), cols);
    for (std::size_t i = 0; i < points_.size(); ++i) {
      const auto& pt = points_[i];
      const int order = pt.condition.kind == EdgeKind::Clamped ? 0 : 1;
      const auto jet = mb.jet(pt.x1, pt.x2, order, cfg_.coords);
      sys.matrix.middleRows(3 * i, 3) =
          select(bc_rows_from_jet(pt.condition, jet, st, cfg_.material));
    }
    sys.interior.resize(3 * static_cast<int>(interior_.size()), cols);
    for (std::size_t i = 0; i < interior_.size(); ++i) {
      const auto jet = mb.jet(interior_[i][0], interior_[i][1], 0, cfg_.coords);
      sys.interior.middleRows(3 * i, 3) = select(jet.d[0]);
    }
    sys.column_scale.resize(cols);
    for (int j = 0; j < cols; ++j) {
      const Scalar m = std::max(sys.matrix.col(j).cwiseAbs().maxCoeff(),
                                sys.interior.col(j).cwiseAbs().maxCoeff());
      sys.column_scale(j) = m > 0 ? 1 / m : Scalar(1);
    }
    sys.matrix *= sys.column_scale.asDiagonal();
    sys.interior *= sys.column_scale.asDiagonal();
    return sys;
  }

  /// Smallest singular value of the boundary part of an orthonormal basis of
  /// the sampled field space. Lies in [0, 1] and vanishes at dispersion points.
  /// When `coeffs` is given it receives the minimizing filtered-column vector
  /// (unscaled).
  Scalar characteristic_value(const CollocationSystem<Scalar>& sys, Vector* coeffs = nullptr) const {
    const Eigen::Index na = sys.matrix.rows();
    const Eigen::Index cols = sys.matrix.cols();
    Matrix w(na + sys.interior.rows(), cols);
    w << sys.matrix, sys.interior;
    Eigen::ColPivHouseholderQR<Matrix> qr(w);
    qr.setThreshold(cfg_.rank_tolerance);
    const Eigen::Index r = qr.rank();
    if (r == 0) return Scalar(1);
    Matrix q = Matrix::Identity(w.rows(), r);
    q.applyOnTheLeft(qr.householderQ());
    const Matrix qa = q.topRows(na);
    if (!coeffs) {
      Eigen::JacobiSVD<Matrix> svd(qa);
      return svd.singularValues()(r - 1);
    }
    Eigen::JacobiSVD<Matrix> svd(qa, Eigen::ComputeThinV);
    const Vector y = svd.matrixV().col(r - 1);
    const Vector cp = qr.matrixR().topLeftCorner(r, r).template triangularView<Eigen::Upper>().solve(y);
    Vector c = Vector::Zero(cols);
    for (Eigen::Index i = 0; i < r; ++i) c(qr.colsPermutation().indices()(i)) = cp(i);
    *coeffs = c.cwiseProduct(sys.column_scale);
    return svd.singularValues()(r - 1);
  }

  Scalar characteristic_value(const WaveState<Scalar>& st) const {
    return characteristic_value(assemble(st));
  }

  /// Expands filtered coefficients to the full layout vector (same coordinates).
  Vector expand(const Vector& filtered) const {
    Vector full = Vector::Zero(layout_.size());
    for (int j = 0; j < filter_.size(); ++j) {
      const auto& c = filter_.columns[j];
      full(c.primary) += filtered(j);
      if (c.partner >= 0) full(c.partner) += c.sign * filtered(j);
    }
    return full;
  }

 private:
  CollocationConfig<Scalar> cfg_;
  BasisLayout layout_;
  SymmetryFilter<Scalar> filter_;
  std::vector<CollocationPoint<Scalar>> points_;
  std::vector<std::array<Scalar, 2>> interior_;
};

template <typename Scalar>
CollocationSystem<Scalar> assemble(const WaveState<Scalar>& state,
                                   const CollocationConfig<Scalar>& config) {
  if (!(state.K > 0)) throw UnsupportedWavenumber("collocation needs K > 0");
  return Collocator<Scalar>(config).assemble(state);
}

template <typename Scalar>
Scalar characteristic_value(const WaveState<Scalar>& state, const CollocationConfig<Scalar>& config) {
  if (!(state.K > 0)) throw UnsupportedWavenumber("collocation needs K > 0");
  return Collocator<Scalar>(config).characteristic_value(state);
}

}  // namespace wavebeam
