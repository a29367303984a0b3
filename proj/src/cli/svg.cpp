#include "kleingate/cli/svg.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <locale>
#include <sstream>

#include "kleingate/cli/format.hpp"
#include "kleingate/error.hpp"

namespace kleingate::cli {
namespace {

constexpr std::array<std::array<int, 3>, 5> kRamp{{
    {0x44, 0x01, 0x54},
    {0x3b, 0x52, 0x8b},
    {0x21, 0x91, 0x8c},
    {0x5e, 0xc9, 0x62},
    {0xfd, 0xe7, 0x25},
}};

constexpr double kWidth = 640, kHeight = 480;
constexpr double kLeft = 80, kRight = 110, kTop = 40, kBottom = 60;
constexpr const char* kFont = "font-family:sans-serif;font-size:12px;fill:#222";

// Compact label, 4 significant digits.
std::string label(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.4g", std::abs(v) < 1e-12 ? 0.0 : v);
  return buf;
}

std::string escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '&': out += "&amp;"; break;
      default: out += c;
    }
  }
  return out;
}

void header(std::ostringstream& os, const std::string& title) {
  os.imbue(std::locale::classic());
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth << "\" height=\"" << kHeight
     << "\" viewBox=\"0 0 " << kWidth << ' ' << kHeight << "\">\n";
  os << "<rect x=\"0\" y=\"0\" width=\"" << kWidth << "\" height=\"" << kHeight
     << "\" style=\"fill:#ffffff\"/>\n";
  os << "<text x=\"" << kWidth / 2 << "\" y=\"22\" style=\"" << kFont
     << ";text-anchor:middle;font-size:14px\">" << escape(title) << "</text>\n";
}

void axes(std::ostringstream& os, double x0, double x1, double y0, double y1,
          const std::string& x_label, const std::string& y_label) {
  const double pw = kWidth - kLeft - kRight, ph = kHeight - kTop - kBottom;
  os << "<rect x=\"" << kLeft << "\" y=\"" << kTop << "\" width=\"" << pw << "\" height=\"" << ph
     << "\" style=\"fill:none;stroke:#222;stroke-width:1\"/>\n";
  for (int i = 0; i <= 4; ++i) {
    const double fx = kLeft + pw * i / 4.0;
    const double fy = kTop + ph - ph * i / 4.0;
    os << "<text x=\"" << fx << "\" y=\"" << kTop + ph + 18 << "\" style=\"" << kFont
       << ";text-anchor:middle\">" << label(x0 + (x1 - x0) * i / 4.0) << "</text>\n";
    os << "<text x=\"" << kLeft - 6 << "\" y=\"" << fy + 4 << "\" style=\"" << kFont
       << ";text-anchor:end\">" << label(y0 + (y1 - y0) * i / 4.0) << "</text>\n";
  }
  os << "<text x=\"" << kLeft + pw / 2 << "\" y=\"" << kHeight - 16 << "\" style=\"" << kFont
     << ";text-anchor:middle\">" << escape(x_label) << "</text>\n";
  os << "<text x=\"18\" y=\"" << kTop + ph / 2 << "\" style=\"" << kFont
     << ";text-anchor:middle\" transform=\"rotate(-90 18 " << kTop + ph / 2 << ")\">"
     << escape(y_label) << "</text>\n";
}

}  // namespace

std::string ramp_color(double t) {
  if (!std::isfinite(t)) t = 0.0;
  t = std::clamp(t, 0.0, 1.0);
  const double pos = t * (kRamp.size() - 1);
  const std::size_t i = std::min<std::size_t>(static_cast<std::size_t>(pos), kRamp.size() - 2);
  const double f = pos - i;
  char buf[8];
  int rgb[3];
  for (int c = 0; c < 3; ++c) {
    rgb[c] = static_cast<int>(std::lround(kRamp[i][c] + f * (kRamp[i + 1][c] - kRamp[i][c])));
  }
  std::snprintf(buf, sizeof buf, "#%02x%02x%02x", rgb[0], rgb[1], rgb[2]);
  return buf;
}

std::string render_heatmap(const HeatmapSpec& spec) {
  const std::size_t nx = spec.xs.size(), ny = spec.ys.size();
  if (nx < 2 || ny < 2 || spec.values.size() != nx * ny) {
    throw Error(ErrorKind::Domain, "heatmap needs a full grid of at least 2x2 values");
  }
  const auto [lo_it, hi_it] = std::minmax_element(spec.values.begin(), spec.values.end());
  const double lo = *lo_it, hi = *hi_it;
  const double span = hi > lo ? hi - lo : 1.0;

  std::ostringstream os;
  header(os, spec.title);
  const double pw = kWidth - kLeft - kRight, ph = kHeight - kTop - kBottom;
  const double cw = pw / nx, ch = ph / ny;
  os << "<g shape-rendering=\"crispEdges\">\n";
  for (std::size_t iy = 0; iy < ny; ++iy) {
    for (std::size_t ix = 0; ix < nx; ++ix) {
      const double v = spec.values[iy * nx + ix];
      // Row 0 at the bottom.
      const double x = kLeft + ix * cw, y = kTop + ph - (iy + 1) * ch;
      os << "<rect x=\"" << label(x) << "\" y=\"" << label(y) << "\" width=\"" << label(cw + 0.05)
         << "\" height=\"" << label(ch + 0.05) << "\" style=\"fill:" << ramp_color((v - lo) / span)
         << "\"/>\n";
    }
  }
  os << "</g>\n";
  axes(os, spec.xs.front(), spec.xs.back(), spec.ys.front(), spec.ys.back(), spec.x_label,
       spec.y_label);

  // Color bar.
  const double bx = kWidth - kRight + 20, bw = 18;
  for (int i = 0; i < 64; ++i) {
    const double y = kTop + ph - (i + 1) * ph / 64;
    os << "<rect x=\"" << bx << "\" y=\"" << label(y) << "\" width=\"" << bw << "\" height=\""
       << label(ph / 64 + 0.05) << "\" style=\"fill:" << ramp_color((i + 0.5) / 64) << "\"/>\n";
  }
  os << "<text x=\"" << bx + bw + 4 << "\" y=\"" << kTop + ph << "\" style=\"" << kFont << "\">"
     << label(lo) << "</text>\n";
  os << "<text x=\"" << bx + bw + 4 << "\" y=\"" << kTop + 10 << "\" style=\"" << kFont << "\">"
     << label(hi) << "</text>\n";
  os << "</svg>\n";
  return os.str();
}

std::string render_line_plot(const LinePlotSpec& spec) {
  if (spec.xs.size() < 2) throw Error(ErrorKind::Domain, "line plot needs at least 2 points");
  double lo = 0.0, hi = 1.0;
  for (const auto& s : spec.series) {
    if (s.ys.size() != spec.xs.size()) throw Error(ErrorKind::Domain, "series length mismatch");
    for (double y : s.ys) {
      lo = std::min(lo, y);
      hi = std::max(hi, y);
    }
  }
  const double x0 = spec.xs.front(), x1 = spec.xs.back();
  const double pw = kWidth - kLeft - kRight, ph = kHeight - kTop - kBottom;
  auto px = [&](double x) { return kLeft + pw * (x - x0) / (x1 - x0); };
  auto py = [&](double y) { return kTop + ph - ph * (y - lo) / (hi - lo); };

  std::ostringstream os;
  header(os, spec.title);
  axes(os, x0, x1, lo, hi, spec.x_label, spec.y_label);
  for (std::size_t k = 0; k < spec.series.size(); ++k) {
    const auto& s = spec.series[k];
    os << "<polyline style=\"fill:none;stroke:" << s.color << ";stroke-width:2\" points=\"";
    for (std::size_t i = 0; i < spec.xs.size(); ++i) {
      os << label(px(spec.xs[i])) << ',' << label(py(s.ys[i])) << ' ';
    }
    os << "\"/>\n";
    const double ly = kTop + 16 + 18 * k;
    os << "<line x1=\"" << kWidth - kRight + 8 << "\" y1=\"" << ly << "\" x2=\""
       << kWidth - kRight + 28 << "\" y2=\"" << ly << "\" style=\"stroke:" << s.color
       << ";stroke-width:2\"/>\n";
    os << "<text x=\"" << kWidth - kRight + 32 << "\" y=\"" << ly + 4 << "\" style=\"" << kFont
       << "\">" << escape(s.label) << "</text>\n";
  }
  os << "</svg>\n";
  return os.str();
}

}  // namespace kleingate::cli
