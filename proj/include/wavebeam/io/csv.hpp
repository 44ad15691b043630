#pragma once

#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "wavebeam/dispersion_solver.hpp"
#include "wavebeam/mode_extractor.hpp"

namespace wavebeam::io {

/// Shortest round-trip decimal form, independent of the global locale.
std::string format_number(double v);

/// One cell of a convergence table; empty when the branch could not be matched.
struct ConvergenceCell {
  int M{0};
  std::optional<double> error;
  int matched{0};
  int total{0};
};

struct ConvergenceRow {
  std::string wave;
  int branch{0};
  std::vector<ConvergenceCell> cells;
};

struct ConvergenceTable {
  std::vector<int> M_list;  // last entry is the reference
  std::vector<ConvergenceRow> rows;
};

/// `wave,branch,K,Omega,flag`, one row per branch sample.
void write_branches_csv(std::ostream& os, const std::vector<DispersionBranch<double>>& branches);

/// `x1,x2,u,v,w` with x2 running fastest.
void write_mode_csv(std::ostream& os, const WaveMode<double>& mode);

/// `wave,branch,M4,M8,...`; unmatched cells read `flagged`.
void write_convergence_csv(std::ostream& os, const ConvergenceTable& table);

/// `wave,branch,cutoff,flag`; the cutoff is blank when absent.
void write_cutoffs_csv(std::ostream& os, const std::vector<DispersionBranch<double>>& branches);

}  // namespace wavebeam::io
