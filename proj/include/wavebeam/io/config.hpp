#pragma once

#include <string>
#include <vector>

#include "wavebeam/boundary_collocation.hpp"
#include "wavebeam/dispersion_solver.hpp"

namespace wavebeam::io {

/// Everything a CLI run needs. Keys of the JSON config file use the field
/// names below; CLI flags use the same names with '-' in place of '_'.
struct RunConfig {
  std::string bc{"FFFF"};
  std::vector<std::string> waves{"Ls"};
  double nu{0.3};
  double aspect{1.0};
  int M{8};
  int N{8};
  std::vector<int> M_list{4, 8, 12, 16, 20};
  double kmin{0.01};
  double kmax{1.0};
  int ksteps{100};  // number of K samples, kmin and kmax included
  double omega_min{0.01};
  double omega_max{2.0};
  double omega_step{5e-3};
  double refine_tol{1e-6};
  double root_threshold{0.5};
  double root_ratio{0.85};
  double jump_threshold{0.05};
  int max_branches{0};
  double oversample{3.0};
  int threads{1};
  std::string out;
  bool svg{false};
  // modes
  double K{0.1};
  int branch{1};
  int grid{41};

  /// Checks ranges and the layout/class compatibility. Throws ConfigError.
  void validate() const;

  std::vector<double> k_grid() const;
  std::vector<WaveClass> wave_classes() const;
  CollocationConfig<double> collocation(const WaveClass& wave) const;
  CollocationConfig<double> collocation(const WaveClass& wave, int M, int N) const;
  ScanConfig<double> scan() const;
};

/// Reads a flat JSON object. Unknown keys and mistyped values throw ConfigError.
RunConfig load_config(const std::string& path);

/// Overlays the keys of a JSON text onto `cfg`.
void apply_json(RunConfig& cfg, const std::string& text);

}  // namespace wavebeam::io
