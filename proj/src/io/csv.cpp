#include "wavebeam/io/csv.hpp"

#include <charconv>
#include <cmath>

namespace wavebeam::io {

std::string format_number(double v) {
  if (std::isnan(v)) return "nan";
  if (v == 0) v = 0;  // drop the sign of -0
  char buf[64];
  const auto r = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, r.ptr);
}

void write_branches_csv(std::ostream& os, const std::vector<DispersionBranch<double>>& branches) {
  os << "wave,branch,K,Omega,flag\n";
  for (const auto& b : branches)
    for (const auto& s : b.samples)
      os << b.wave << ',' << b.order << ',' << format_number(s.K) << ',' << format_number(s.Omega)
         << ',' << (s.flagged ? "perturbed" : "ok") << '\n';
}

void write_mode_csv(std::ostream& os, const WaveMode<double>& mode) {
  os << "x1,x2,u,v,w\n";
  for (Eigen::Index i = 0; i < mode.x1.size(); ++i)
    for (Eigen::Index j = 0; j < mode.x2.size(); ++j)
      os << format_number(mode.x1(i)) << ',' << format_number(mode.x2(j)) << ','
         << format_number(mode.u(i, j)) << ',' << format_number(mode.v(i, j)) << ','
         << format_number(mode.w(i, j)) << '\n';
}

void write_convergence_csv(std::ostream& os, const ConvergenceTable& table) {
  os << "wave,branch";
  for (std::size_t i = 0; i + 1 < table.M_list.size(); ++i) os << ",M" << table.M_list[i];
  os << '\n';
  for (const auto& r : table.rows) {
    os << r.wave << ',' << r.branch;
    for (const auto& c : r.cells) os << ',' << (c.error ? format_number(*c.error) : "flagged");
    os << '\n';
  }
}

void write_cutoffs_csv(std::ostream& os, const std::vector<DispersionBranch<double>>& branches) {
  os << "wave,branch,cutoff,flag\n";
  for (const auto& b : branches)
    os << b.wave << ',' << b.order << ',' << (b.cutoff ? format_number(*b.cutoff) : "") << ','
       << (b.cutoff ? "ok" : "absent") << '\n';
}

}  // namespace wavebeam::io
