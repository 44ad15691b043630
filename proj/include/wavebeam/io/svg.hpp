#pragma once

#include <string>
#include <vector>

#include "wavebeam/dispersion_solver.hpp"
#include "wavebeam/mode_extractor.hpp"

namespace wavebeam::io {

/// Omega versus K line plot, one polyline per branch, one colour per wave class.
std::string dispersion_svg(const std::vector<DispersionBranch<double>>& branches,
                           const std::string& title);

/// Two panels: in-plane displacement arrows and a heatmap of w.
std::string mode_svg(const WaveMode<double>& mode, const std::string& title);

}  // namespace wavebeam::io
