#pragma once

#include <optional>
#include <vector>

#include "wavebeam/dispersion_solver.hpp"
#include "wavebeam/io/config.hpp"
#include "wavebeam/io/csv.hpp"
#include "wavebeam/mode_extractor.hpp"

namespace wavebeam::io {

/// Branches of every configured wave class on the configured K grid.
std::vector<DispersionBranch<double>> run_dispersion(const RunConfig& cfg);

/// As run_dispersion, with the K -> 0 extrapolation filled in.
std::vector<DispersionBranch<double>> run_cutoffs(const RunConfig& cfg);

/// Convergence errors of the lowest branches against the last M_list entry.
/// `max_branches` limits the rows per wave class (5 when zero).
ConvergenceTable run_convergence(const RunConfig& cfg);

struct ModeResult {
  WaveMode<double> mode;
  NullVector<double> null;
  DispersionBranch<double> branch;
  std::optional<double> plane_section;
};

/// Mode of branch `cfg.branch` of the first wave class at `cfg.K`.
/// Throws BlindArea when the branch has no sample there.
ModeResult run_mode(const RunConfig& cfg);

}  // namespace wavebeam::io
