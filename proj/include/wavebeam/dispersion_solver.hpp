#pragma once

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <exception>
#include <limits>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include "wavebeam/boundary_collocation.hpp"
#include "wavebeam/errors.hpp"

namespace wavebeam {

/// Omega grid, K grid and root acceptance rules.
///
/// A grid local minimum of the characteristic value is a root when it is
/// below `root_threshold` and below `root_ratio` times the smaller of the
/// highest values reached within `prominence_window` on either side.
template <typename Scalar = double>
struct ScanConfig {
  Scalar omega_min{0.01};
  Scalar omega_max{2.0};
  Scalar omega_step{5e-3};
  std::vector<Scalar> k_grid;
  Scalar root_threshold{0.5};
  Scalar root_ratio{0.85};
  Scalar prominence_window{0.05};
  Scalar refine_tol{1e-6};
  Scalar jump_threshold{0.05};
  int max_branches{0};  // 0 keeps every branch
  int threads{1};       // workers for the per-K scans

  void validate() const {
    if (!(omega_step > 0)) throw ConfigError("omega step must be positive");
    if (!(omega_max > omega_min) || !(omega_min > 0))
      throw ConfigError("omega range must satisfy 0 < omega_min < omega_max");
    if (threads < 1) throw ConfigError("thread count must be at least 1");
    if (!(refine_tol > 0) || !(refine_tol < omega_step))
      throw ConfigError("refine tolerance must lie in (0, omega_step)");
    for (Scalar k : k_grid)
      if (!(k > 0)) throw ConfigError("K grid values must be positive");
  }

  /// K = lo, lo + (hi - lo)/steps, ..., hi.
  static std::vector<Scalar> uniform_k(Scalar lo, Scalar hi, int steps) {
    if (steps < 1) return {lo};
    std::vector<Scalar> k(steps + 1);
    for (int i = 0; i <= steps; ++i) k[i] = lo + (hi - lo) * i / steps;
    return k;
  }
};

template <typename Scalar = double>
struct Root {
  Scalar Omega{};
  Scalar value{};
  bool perturbed{false};
};

template <typename Scalar = double>
struct BranchSample {
  Scalar K{};
  Scalar Omega{};
  bool flagged{false};
};

template <typename Scalar = double>
struct DispersionBranch {
  std::string wave;
  int order{0};
  std::vector<BranchSample<Scalar>> samples;
  std::optional<Scalar> cutoff;
  std::vector<std::string> flags;

  std::optional<Scalar> at(Scalar K, Scalar tol = Scalar(1e-9)) const {
    for (const auto& s : samples)
      if (std::abs(s.K - K) <= tol) return s.Omega;
    return std::nullopt;
  }
};

/// Characteristic value with the resonance policy: a degenerate or resonant
/// state is retried once at Omega (1 + 1e-7).
template <typename Scalar>
Scalar robust_value(const Collocator<Scalar>& col, Scalar K, Scalar Omega, bool* perturbed = nullptr) {
  try {
    return col.characteristic_value(col.state(K, Omega));
  } catch (const InternalResonance&) {
  } catch (const DegenerateState&) {
  }
  if (perturbed) *perturbed = true;
  return col.characteristic_value(col.state(K, Omega * (1 + Scalar(1e-7))));
}

/// Golden-section minimization of the characteristic value on [lo, hi].
template <typename Scalar>
Root<Scalar> refine_minimum(const Collocator<Scalar>& col, Scalar K, Scalar lo, Scalar hi,
                            Scalar tol) {
  const Scalar g = (std::sqrt(Scalar(5)) - 1) / 2;
  bool perturbed = false;
  auto f = [&](Scalar o) { return robust_value(col, K, o, &perturbed); };
  Scalar a = lo, b = hi;
  Scalar c = b - g * (b - a), d = a + g * (b - a);
  Scalar fc = f(c), fd = f(d);
  while (b - a > tol) {
    if (fc < fd) {
      b = d, d = c, fd = fc;
      c = b - g * (b - a);
      fc = f(c);
    } else {
      a = c, c = d, fc = fd;
      d = a + g * (b - a);
      fd = f(d);
    }
  }
  const Scalar x = (a + b) / 2;
  return {x, f(x), perturbed};
}

/// Ascending distinct roots in the Omega window at one K.
template <typename Scalar>
std::vector<Root<Scalar>> scan_roots(Scalar K, const Collocator<Scalar>& col,
                                     const ScanConfig<Scalar>& scan) {
  if (!(K > 0)) throw UnsupportedWavenumber("root scans need K > 0");
  scan.validate();
  const int n = static_cast<int>(std::floor((scan.omega_max - scan.omega_min) / scan.omega_step + 1e-9)) + 1;
  std::vector<Scalar> om(n), val(n);
  std::vector<bool> pert(n, false);
  for (int i = 0; i < n; ++i) {
    om[i] = scan.omega_min + i * scan.omega_step;
    bool p = false;
    val[i] = robust_value(col, K, om[i], &p);
    pert[i] = p;
  }
  const int window = std::max(1, static_cast<int>(std::lround(scan.prominence_window / scan.omega_step)));
  std::vector<Root<Scalar>> roots;
  for (int i = 1; i + 1 < n; ++i) {
    if (!(val[i] < val[i - 1] && val[i] <= val[i + 1])) continue;
    if (!(val[i] < scan.root_threshold)) continue;
    Scalar left = val[i], right = val[i];
    for (int j = std::max(0, i - window); j < i; ++j) left = std::max(left, val[j]);
    for (int j = i + 1; j <= std::min(n - 1, i + window); ++j) right = std::max(right, val[j]);
    if (!(val[i] < scan.root_ratio * std::min(left, right))) continue;
    auto r = refine_minimum(col, K, om[i - 1], om[i + 1], scan.refine_tol);
    r.perturbed = r.perturbed || pert[i];
    if (!roots.empty() && std::abs(roots.back().Omega - r.Omega) <= 2 * scan.refine_tol) {
      if (r.value < roots.back().value) roots.back() = r;
      continue;
    }
    roots.push_back(r);
  }
  return roots;
}

/// Links per-K root lists into branches by nearest continuation with a
/// linear slope prediction. Branch order follows ascending Omega at each
/// branch's first sample, so a branch entering the Omega window later (one
/// rising from the origin) still ranks below the branches above it.
template <typename Scalar>
std::vector<DispersionBranch<Scalar>> link_branches(
    const std::vector<Scalar>& k_grid, const std::vector<std::vector<Root<Scalar>>>& roots,
    const std::string& wave, Scalar jump_threshold, int max_branches = 0) {
  if (k_grid.size() != roots.size()) throw InvalidParameter("K grid and root lists differ in size");
  std::vector<DispersionBranch<Scalar>> open;
  std::vector<int> last_index;  // K index of each branch's latest sample
  for (std::size_t ki = 0; ki < k_grid.size(); ++ki) {
    const Scalar K = k_grid[ki];
    const auto& rs = roots[ki];
    // Candidate pairs (distance, branch, root), greedily matched by distance.
    struct Pair {
      Scalar d;
      int b, r;
    };
    std::vector<Pair> pairs;
    for (int b = 0; b < static_cast<int>(open.size()); ++b) {
      if (last_index[b] + 2 < static_cast<int>(ki)) continue;  // branch lost
      const auto& s = open[b].samples;
      Scalar pred = s.back().Omega;
      if (s.size() >= 2) {
        const auto& p = s[s.size() - 2];
        const Scalar dk = s.back().K - p.K;
        if (dk > 0) pred += (s.back().Omega - p.Omega) / dk * (K - s.back().K);
      }
      for (int r = 0; r < static_cast<int>(rs.size()); ++r) {
        const Scalar d = std::abs(rs[r].Omega - pred);
        if (d <= jump_threshold) pairs.push_back({d, b, r});
      }
    }
    std::sort(pairs.begin(), pairs.end(), [](const Pair& x, const Pair& y) {
      if (x.d != y.d) return x.d < y.d;
      if (x.b != y.b) return x.b < y.b;
      return x.r < y.r;
    });
    std::vector<bool> used_b(open.size(), false), used_r(rs.size(), false);
    for (const auto& p : pairs) {
      if (used_b[p.b] || used_r[p.r]) continue;
      used_b[p.b] = used_r[p.r] = true;
      open[p.b].samples.push_back({K, rs[p.r].Omega, rs[p.r].perturbed});
      if (last_index[p.b] + 1 < static_cast<int>(ki))
        open[p.b].flags.push_back("gap before K=" + std::to_string(K));
      last_index[p.b] = static_cast<int>(ki);
    }
    for (int r = 0; r < static_cast<int>(rs.size()); ++r) {
      if (used_r[r]) continue;
      DispersionBranch<Scalar> b;
      b.wave = wave;
      b.samples.push_back({K, rs[r].Omega, rs[r].perturbed});
      open.push_back(std::move(b));
      last_index.push_back(static_cast<int>(ki));
    }
  }
  std::vector<int> idx(open.size());
  for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = static_cast<int>(i);
  std::stable_sort(idx.begin(), idx.end(), [&](int x, int y) {
    const auto& sx = open[x].samples.front();
    const auto& sy = open[y].samples.front();
    if (sx.Omega != sy.Omega) return sx.Omega < sy.Omega;
    return sx.K < sy.K;
  });
  std::vector<DispersionBranch<Scalar>> out;
  for (int i : idx) {
    if (max_branches > 0 && static_cast<int>(out.size()) >= max_branches) break;
    out.push_back(std::move(open[i]));
    out.back().order = static_cast<int>(out.size());
  }
  return out;
}

/// Roots for every K of the scan grid. Workers take K indices round-robin
/// and write to their own slots, so the result does not depend on timing.
template <typename Scalar>
std::vector<std::vector<Root<Scalar>>> scan_grid(const Collocator<Scalar>& col,
                                                 const ScanConfig<Scalar>& scan) {
  if (scan.k_grid.empty()) throw ConfigError("the K grid is empty");
  scan.validate();
  const std::size_t nk = scan.k_grid.size();
  std::vector<std::vector<Root<Scalar>>> roots(nk);
  const std::size_t workers = std::min<std::size_t>(static_cast<std::size_t>(scan.threads), nk);
  if (workers <= 1) {
    for (std::size_t i = 0; i < nk; ++i) roots[i] = scan_roots(scan.k_grid[i], col, scan);
    return roots;
  }
  std::vector<std::exception_ptr> errors(workers);
  std::vector<std::thread> pool;
  for (std::size_t w = 0; w < workers; ++w)
    pool.emplace_back([&, w] {
      try {
        for (std::size_t i = w; i < nk; i += workers) roots[i] = scan_roots(scan.k_grid[i], col, scan);
      } catch (...) {
        errors[w] = std::current_exception();
      }
    });
  for (auto& t : pool) t.join();
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
  return roots;
}

template <typename Scalar>
std::vector<DispersionBranch<Scalar>> trace_branches(const Collocator<Scalar>& col,
                                                     const ScanConfig<Scalar>& scan) {
  const auto roots = scan_grid(col, scan);
  return link_branches(scan.k_grid, roots, col.config().wave.name(), scan.jump_threshold,
                       scan.max_branches);
}

/// Root nearest to `guess` within +-`window`, accepted by the same rules as
/// scan_roots using the sampled window as the prominence neighbourhood.
template <typename Scalar>
std::optional<Root<Scalar>> follow_root(const Collocator<Scalar>& col, Scalar K, Scalar guess,
                                        Scalar window, const ScanConfig<Scalar>& scan) {
  const int h = std::max(2, static_cast<int>(std::lround(window / scan.omega_step)));
  std::vector<Scalar> om, val;
  std::vector<bool> pert;
  for (int i = -h; i <= h; ++i) {
    const Scalar o = guess + i * scan.omega_step;
    if (!(o > 0)) continue;
    bool p = false;
    om.push_back(o);
    val.push_back(robust_value(col, K, o, &p));
    pert.push_back(p);
  }
  const int n = static_cast<int>(om.size());
  int best = -1;
  for (int i = 1; i + 1 < n; ++i) {
    if (!(val[i] < val[i - 1] && val[i] <= val[i + 1])) continue;
    if (!(val[i] < scan.root_threshold)) continue;
    const Scalar left = *std::max_element(val.begin(), val.begin() + i);
    const Scalar right = *std::max_element(val.begin() + i + 1, val.end());
    if (!(val[i] < scan.root_ratio * std::min(left, right))) continue;
    if (best < 0 || std::abs(om[i] - guess) < std::abs(om[best] - guess)) best = i;
  }
  if (best < 0) return std::nullopt;
  auto r = refine_minimum(col, K, om[best - 1], om[best + 1], scan.refine_tol);
  r.perturbed = r.perturbed || pert[best];
  return r;
}

/// Solutions of `col` matched to each sample of `ref` (nearest root within
/// the jump threshold). Unmatched samples are dropped and counted.
template <typename Scalar>
DispersionBranch<Scalar> match_branch(const Collocator<Scalar>& col, const DispersionBranch<Scalar>& ref,
                                      const ScanConfig<Scalar>& scan, int* missing = nullptr) {
  DispersionBranch<Scalar> out;
  out.wave = ref.wave;
  out.order = ref.order;
  int miss = 0;
  for (const auto& s : ref.samples) {
    const auto r = follow_root(col, s.K, s.Omega, scan.jump_threshold, scan);
    if (r && std::abs(r->Omega - s.Omega) <= scan.jump_threshold)
      out.samples.push_back({s.K, r->Omega, r->perturbed});
    else {
      ++miss;
      out.flags.push_back("unmatched at K=" + std::to_string(s.K));
    }
  }
  if (missing) *missing = miss;
  return out;
}

/// Quadratic extrapolation to K = 0 from the samples with K <= 0.1.
template <typename Scalar>
std::optional<Scalar> extrapolate_cutoff(const DispersionBranch<Scalar>& branch,
                                         Scalar k_limit = Scalar(0.1)) {
  std::vector<BranchSample<Scalar>> near;
  for (const auto& s : branch.samples)
    if (s.K <= k_limit + Scalar(1e-12)) near.push_back(s);
  if (near.size() < 3) return std::nullopt;
  Eigen::Matrix<Scalar, Eigen::Dynamic, 3> V(near.size(), 3);
  Eigen::Matrix<Scalar, Eigen::Dynamic, 1> y(near.size());
  for (std::size_t i = 0; i < near.size(); ++i) {
    V(i, 0) = 1;
    V(i, 1) = near[i].K;
    V(i, 2) = near[i].K * near[i].K;
    y(i) = near[i].Omega;
  }
  const Eigen::Matrix<Scalar, 3, 1> c = V.colPivHouseholderQr().solve(y);
  return c(0);
}

/// Fills each branch's cutoff (or flags it absent) and returns the list.
template <typename Scalar>
std::vector<std::optional<Scalar>> cutoff_frequencies(std::vector<DispersionBranch<Scalar>>& branches) {
  std::vector<std::optional<Scalar>> out;
  for (auto& b : branches) {
    b.cutoff = extrapolate_cutoff(b);
    if (!b.cutoff) b.flags.push_back("cutoff absent: fewer than 3 samples with K <= 0.1");
    out.push_back(b.cutoff);
  }
  return out;
}

/// Max |Omega - Omega_ref| over the K samples the two branches share.
template <typename Scalar>
Scalar convergence_error(const DispersionBranch<Scalar>& branch, const DispersionBranch<Scalar>& ref) {
  if (branch.order != ref.order) throw InvalidParameter("branch orders differ");
  Scalar e = 0;
  int shared = 0;
  for (const auto& s : branch.samples) {
    if (const auto r = ref.at(s.K)) {
      e = std::max(e, std::abs(s.Omega - *r));
      ++shared;
    }
  }
  if (shared == 0) throw InvalidParameter("branches share no K samples");
  return e;
}

}  // namespace wavebeam
