#include "wavebeam/io/svg.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <map>
#include <sstream>

namespace wavebeam::io {

namespace {

std::string fixed(double v, int digits = 2) {
  char buf[64];
  const auto r = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::fixed, digits);
  return std::string(buf, r.ptr);
}

std::string escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    if (c == '<') out += "&lt;";
    else if (c == '>') out += "&gt;";
    else if (c == '&') out += "&amp;";
    else out += c;
  }
  return out;
}

const std::array<const char*, 8> kPalette{"#1f77b4", "#d62728", "#2ca02c", "#9467bd",
                                          "#ff7f0e", "#8c564b", "#e377c2", "#17becf"};

// Diverging blue-white-red map on [-1, 1].
std::string diverging(double t) {
  t = std::clamp(t, -1.0, 1.0);
  int r, g, b;
  if (t >= 0) {
    r = 255;
    g = b = static_cast<int>(std::lround(255 * (1 - t)));
  } else {
    b = 255;
    r = g = static_cast<int>(std::lround(255 * (1 + t)));
  }
  char buf[8];
  std::snprintf(buf, sizeof buf, "#%02x%02x%02x", r, g, b);
  return buf;
}

struct Frame {
  double x0, y0, w, h;        // pixel box
  double xmin, xmax, ymin, ymax;
  double px(double x) const { return x0 + (x - xmin) / (xmax - xmin) * w; }
  double py(double y) const { return y0 + h - (y - ymin) / (ymax - ymin) * h; }
};

void axes(std::ostringstream& os, const Frame& f, const std::string& xl, const std::string& yl,
          int ticks = 5) {
  os << "<rect x=\"" << fixed(f.x0) << "\" y=\"" << fixed(f.y0) << "\" width=\"" << fixed(f.w)
     << "\" height=\"" << fixed(f.h) << "\" fill=\"none\" stroke=\"black\"/>\n";
  for (int i = 0; i <= ticks; ++i) {
    const double xv = f.xmin + (f.xmax - f.xmin) * i / ticks;
    const double yv = f.ymin + (f.ymax - f.ymin) * i / ticks;
    os << "<text x=\"" << fixed(f.px(xv)) << "\" y=\"" << fixed(f.y0 + f.h + 16)
       << "\" font-size=\"11\" text-anchor=\"middle\">" << fixed(xv) << "</text>\n";
    os << "<text x=\"" << fixed(f.x0 - 6) << "\" y=\"" << fixed(f.py(yv) + 4)
       << "\" font-size=\"11\" text-anchor=\"end\">" << fixed(yv) << "</text>\n";
  }
  os << "<text x=\"" << fixed(f.x0 + f.w / 2) << "\" y=\"" << fixed(f.y0 + f.h + 34)
     << "\" font-size=\"13\" text-anchor=\"middle\">" << escape(xl) << "</text>\n";
  os << "<text x=\"" << fixed(f.x0 - 40) << "\" y=\"" << fixed(f.y0 + f.h / 2)
     << "\" font-size=\"13\" text-anchor=\"middle\" transform=\"rotate(-90 " << fixed(f.x0 - 40)
     << ' ' << fixed(f.y0 + f.h / 2) << ")\">" << escape(yl) << "</text>\n";
}

}  // namespace

std::string dispersion_svg(const std::vector<DispersionBranch<double>>& branches,
                           const std::string& title) {
  double kmax = 0, omax = 0;
  for (const auto& b : branches)
    for (const auto& s : b.samples) {
      kmax = std::max(kmax, s.K);
      omax = std::max(omax, s.Omega);
    }
  if (kmax <= 0) kmax = 1;
  if (omax <= 0) omax = 1;
  const Frame f{70, 40, 560, 420, 0, kmax, 0, omax};
  std::ostringstream os;
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"760\" height=\"520\">\n";
  os << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  os << "<text x=\"350\" y=\"24\" font-size=\"15\" text-anchor=\"middle\">" << escape(title)
     << "</text>\n";
  axes(os, f, "K", "Omega");
  std::map<std::string, std::size_t> colour;
  for (const auto& b : branches) {
    const auto it = colour.emplace(b.wave, colour.size()).first;
    const char* c = kPalette[it->second % kPalette.size()];
    if (b.samples.size() == 1) {
      os << "<circle cx=\"" << fixed(f.px(b.samples[0].K)) << "\" cy=\""
         << fixed(f.py(b.samples[0].Omega)) << "\" r=\"2\" fill=\"" << c << "\"/>\n";
      continue;
    }
    os << "<polyline fill=\"none\" stroke=\"" << c << "\" stroke-width=\"1.5\" points=\"";
    for (const auto& s : b.samples) os << fixed(f.px(s.K)) << ',' << fixed(f.py(s.Omega)) << ' ';
    os << "\"/>\n";
  }
  int row = 0;
  for (const auto& [wave, idx] : colour) {
    const double y = 60 + 18 * row++;
    os << "<line x1=\"650\" y1=\"" << fixed(y) << "\" x2=\"675\" y2=\"" << fixed(y)
       << "\" stroke=\"" << kPalette[idx % kPalette.size()] << "\" stroke-width=\"2\"/>\n";
    os << "<text x=\"680\" y=\"" << fixed(y + 4) << "\" font-size=\"12\">" << escape(wave)
       << "</text>\n";
  }
  os << "</svg>\n";
  return os.str();
}

std::string mode_svg(const WaveMode<double>& mode, const std::string& title) {
  const double a = mode.x1(mode.x1.size() - 1), b = mode.x2(mode.x2.size() - 1);
  const double side = 320;
  const double scale = side / (2 * std::max(a, b));
  const double pw = 2 * a * scale, ph = 2 * b * scale;
  const Frame left{70, 50, pw, ph, -a, a, -b, b};
  const Frame right{70 + pw + 110, 50, pw, ph, -a, a, -b, b};
  std::ostringstream os;
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << fixed(right.x0 + pw + 40)
     << "\" height=\"" << fixed(ph + 110) << "\">\n";
  os << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  os << "<text x=\"" << fixed((right.x0 + pw + 40) / 2) << "\" y=\"24\" font-size=\"15\" "
     << "text-anchor=\"middle\">" << escape(title) << "</text>\n";

  // In-plane arrows on a subsampled lattice.
  const Eigen::Index n1 = mode.x1.size(), n2 = mode.x2.size();
  const Eigen::Index stride = std::max<Eigen::Index>(1, std::max(n1, n2) / 16);
  double umax = 0;
  for (Eigen::Index i = 0; i < n1; ++i)
    for (Eigen::Index j = 0; j < n2; ++j) umax = std::max(umax, std::hypot(mode.u(i, j), mode.v(i, j)));
  const double len = 0.9 * stride * 2 * a / (n1 - 1);
  os << "<defs><marker id=\"h\" markerWidth=\"6\" markerHeight=\"6\" refX=\"5\" refY=\"3\" "
        "orient=\"auto\"><path d=\"M0,0 L6,3 L0,6 z\" fill=\"black\"/></marker></defs>\n";
  if (umax > 0)
    for (Eigen::Index i = 0; i < n1; i += stride)
      for (Eigen::Index j = 0; j < n2; j += stride) {
        const double dx = mode.u(i, j) / umax * len, dy = mode.v(i, j) / umax * len;
        if (std::hypot(dx, dy) < 1e-3 * len) continue;
        os << "<line x1=\"" << fixed(left.px(mode.x1(i))) << "\" y1=\"" << fixed(left.py(mode.x2(j)))
           << "\" x2=\"" << fixed(left.px(mode.x1(i) + dx)) << "\" y2=\""
           << fixed(left.py(mode.x2(j) + dy)) << "\" stroke=\"black\" marker-end=\"url(#h)\"/>\n";
      }
  axes(os, left, "x1 (in-plane u, v)", "x2", 4);

  // Heatmap of w, one cell per sample.
  const double cw = pw / n1, ch = ph / n2;
  double wmax = mode.w.cwiseAbs().maxCoeff();
  if (!(wmax > 0)) wmax = 1;
  for (Eigen::Index i = 0; i < n1; ++i)
    for (Eigen::Index j = 0; j < n2; ++j)
      os << "<rect x=\"" << fixed(right.x0 + i * cw) << "\" y=\"" << fixed(right.y0 + (n2 - 1 - j) * ch)
         << "\" width=\"" << fixed(cw + 0.3) << "\" height=\"" << fixed(ch + 0.3) << "\" fill=\""
         << diverging(mode.w(i, j) / wmax) << "\"/>\n";
  axes(os, right, "x1 (out-of-plane w)", "x2", 4);
  os << "</svg>\n";
  return os.str();
}

}  // namespace wavebeam::io
