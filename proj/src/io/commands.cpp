#include "wavebeam/io/commands.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace wavebeam::io {

std::vector<DispersionBranch<double>> run_dispersion(const RunConfig& cfg) {
  cfg.validate();
  const auto scan = cfg.scan();
  std::vector<DispersionBranch<double>> out;
  for (const auto& wave : cfg.wave_classes()) {
    const Collocator<double> col(cfg.collocation(wave));
    auto b = trace_branches(col, scan);
    out.insert(out.end(), std::make_move_iterator(b.begin()), std::make_move_iterator(b.end()));
  }
  return out;
}

std::vector<DispersionBranch<double>> run_cutoffs(const RunConfig& cfg) {
  auto branches = run_dispersion(cfg);
  cutoff_frequencies(branches);
  return branches;
}

ConvergenceTable run_convergence(const RunConfig& cfg) {
  cfg.validate();
  if (cfg.M_list.size() < 2) throw ConfigError("M_list needs at least two entries (the last is the reference)");
  for (std::size_t i = 0; i < cfg.M_list.size(); ++i) {
    if (cfg.M_list[i] < 1) throw ConfigError("M_list entries must be at least 1");
    if (i && cfg.M_list[i] <= cfg.M_list[i - 1]) throw ConfigError("M_list must be strictly ascending");
  }
  const auto scan = cfg.scan();
  const int count = cfg.max_branches > 0 ? cfg.max_branches : 5;
  ConvergenceTable table;
  table.M_list = cfg.M_list;
  for (const auto& wave : cfg.wave_classes()) {
    const int mref = cfg.M_list.back();
    const Collocator<double> ref_col(cfg.collocation(wave, mref, mref));
    auto refs = trace_branches(ref_col, scan);
    if (static_cast<int>(refs.size()) > count) refs.resize(count);
    std::vector<ConvergenceRow> rows(refs.size());
    for (std::size_t b = 0; b < refs.size(); ++b) {
      rows[b].wave = wave.name();
      rows[b].branch = refs[b].order;
    }
    for (std::size_t i = 0; i + 1 < cfg.M_list.size(); ++i) {
      const int m = cfg.M_list[i];
      const Collocator<double> col(cfg.collocation(wave, m, m));
      for (std::size_t b = 0; b < refs.size(); ++b) {
        int missing = 0;
        const auto br = match_branch(col, refs[b], scan, &missing);
        ConvergenceCell cell;
        cell.M = m;
        cell.total = static_cast<int>(refs[b].samples.size());
        cell.matched = cell.total - missing;
        // Flagged when matching fails on more than half of the reference samples.
        if (cell.matched > 0 && 2 * cell.matched >= cell.total)
          cell.error = convergence_error(br, refs[b]);
        rows[b].cells.push_back(cell);
      }
    }
    table.rows.insert(table.rows.end(), rows.begin(), rows.end());
  }
  return table;
}

ModeResult run_mode(const RunConfig& cfg) {
  cfg.validate();
  const WaveClass wave = cfg.wave_classes().front();
  const Collocator<double> col(cfg.collocation(wave));
  auto scan = cfg.scan();
  // Tracing grid from kmin up to K with steps of at most 0.02, small enough
  // for the steepest branches to stay within the jump threshold.
  const double k0 = std::min(cfg.kmin, cfg.K);
  const int n = std::max(1, static_cast<int>(std::ceil((cfg.K - k0) / 0.02 - 1e-9)) + 1);
  scan.k_grid = n == 1 ? std::vector<double>{cfg.K} : ScanConfig<double>::uniform_k(k0, cfg.K, n - 1);
  const auto branches = trace_branches(col, scan);
  std::ostringstream where;
  where << wave.name() << " branch " << cfg.branch << " at K=" << cfg.K;
  if (static_cast<int>(branches.size()) < cfg.branch)
    throw BlindArea("blind area: " + where.str() + " was not found below Omega=" +
                    std::to_string(cfg.omega_max));
  const auto& br = branches[cfg.branch - 1];
  const auto Omega = br.at(cfg.K);
  if (!Omega)
    throw BlindArea("blind area: " + where.str() +
                    " cannot be separated from neighbouring branches (continuation lost)");
  ModeResult r;
  r.branch = br;
  const auto st = col.state(cfg.K, *Omega);
  r.null = null_vector(col, st, cfg.root_threshold);
  r.mode = mode_field(col, r.null, st, cfg.grid, cfg.grid, cfg.branch);
  r.plane_section = plane_section_metric(r.mode);
  return r;
}

}  // namespace wavebeam::io
