#include "axicyl/plots.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "axicyl/config.hpp"

namespace axicyl {

namespace {

constexpr double kW = 720, kH = 420, kL = 70, kR = 170, kT = 40, kB = 60;
const char* kColors[] = {"#1f77b4", "#d62728", "#2ca02c", "#ff7f0e", "#9467bd", "#8c564b"};

std::string esc(const std::string& s) {
  std::string o;
  for (char c : s) {
    if (c == '<') o += "&lt;";
    else if (c == '>') o += "&gt;";
    else if (c == '&') o += "&amp;";
    else o += c;
  }
  return o;
}

std::string num(double x) {
  std::ostringstream o;
  o.precision(4);
  o << x;
  return o.str();
}

std::string header(const std::string& title) {
  std::ostringstream o;
  o << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kW << "\" height=\"" << kH
    << "\" font-family=\"sans-serif\" font-size=\"12\">\n"
    << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n"
    << "<text x=\"" << kW / 2 << "\" y=\"22\" text-anchor=\"middle\" font-size=\"15\">" << esc(title)
    << "</text>\n";
  return o.str();
}

}  // namespace

std::string svg_line_chart(const std::string& title, const std::string& xlabel,
                           const std::string& ylabel, const std::vector<Series2D>& series,
                           bool log_x) {
  auto tx = [&](double x) { return log_x ? std::log10(x) : x; };
  double x0 = INFINITY, x1 = -INFINITY, y0 = INFINITY, y1 = -INFINITY;
  for (const auto& s : series)
    for (std::size_t k = 0; k < s.x.size(); ++k) {
      if (!std::isfinite(s.y[k])) continue;
      x0 = std::min(x0, tx(s.x[k]));
      x1 = std::max(x1, tx(s.x[k]));
      y0 = std::min(y0, s.y[k]);
      y1 = std::max(y1, s.y[k]);
    }
  if (!std::isfinite(x0)) x0 = 0, x1 = 1, y0 = 0, y1 = 1;
  if (x1 == x0) x1 = x0 + 1;
  if (y1 == y0) y1 = y0 + 1;
  const double pw = kW - kL - kR, ph = kH - kT - kB;
  auto px = [&](double x) { return kL + (tx(x) - x0) / (x1 - x0) * pw; };
  auto py = [&](double y) { return kT + (1.0 - (y - y0) / (y1 - y0)) * ph; };

  std::ostringstream o;
  o << header(title);
  o << "<rect x=\"" << kL << "\" y=\"" << kT << "\" width=\"" << pw << "\" height=\"" << ph
    << "\" fill=\"none\" stroke=\"black\"/>\n";
  for (int k = 0; k <= 4; ++k) {
    const double yv = y0 + (y1 - y0) * k / 4, xv = x0 + (x1 - x0) * k / 4;
    o << "<text x=\"" << kL - 6 << "\" y=\"" << py(yv) + 4 << "\" text-anchor=\"end\">" << num(yv)
      << "</text>\n";
    const double xl = log_x ? std::pow(10.0, xv) : xv;
    o << "<text x=\"" << kL + (xv - x0) / (x1 - x0) * pw << "\" y=\"" << kT + ph + 16
      << "\" text-anchor=\"middle\">" << num(xl) << "</text>\n";
  }
  o << "<text x=\"" << kL + pw / 2 << "\" y=\"" << kH - 14 << "\" text-anchor=\"middle\">" << esc(xlabel)
    << "</text>\n";
  o << "<text x=\"16\" y=\"" << kT + ph / 2 << "\" text-anchor=\"middle\" transform=\"rotate(-90 16 "
    << kT + ph / 2 << ")\">" << esc(ylabel) << "</text>\n";
  for (std::size_t s = 0; s < series.size(); ++s) {
    const char* col = kColors[s % 6];
    o << "<polyline fill=\"none\" stroke=\"" << col << "\" stroke-width=\"1.5\" points=\"";
    for (std::size_t k = 0; k < series[s].x.size(); ++k)
      if (std::isfinite(series[s].y[k])) o << num(px(series[s].x[k])) << "," << num(py(series[s].y[k])) << " ";
    o << "\"/>\n";
    o << "<text x=\"" << kW - kR + 10 << "\" y=\"" << kT + 16 * (s + 1) << "\" fill=\"" << col << "\">"
      << esc(series[s].label) << "</text>\n";
  }
  o << "</svg>\n";
  return o.str();
}

std::string svg_bar_chart(const std::string& title, const std::vector<std::string>& groups,
                          const std::vector<Bar>& bars, double reference) {
  const double H = std::max(kH, kT + kB + 22.0 * bars.size());
  double vmax = reference;
  for (const auto& b : bars)
    for (double v : b.values)
      if (std::isfinite(v)) vmax = std::max(vmax, v);
  if (vmax <= 0.0) vmax = 1.0;
  const double left = 230, pw = kW - left - 40, ph = H - kT - kB;
  const double row = ph / std::max<std::size_t>(1, bars.size());
  const double bh = row * 0.8 / std::max<std::size_t>(1, groups.size());

  std::ostringstream o;
  o << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kW << "\" height=\"" << H
    << "\" font-family=\"sans-serif\" font-size=\"11\">\n"
    << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n"
    << "<text x=\"" << kW / 2 << "\" y=\"22\" text-anchor=\"middle\" font-size=\"15\">" << esc(title)
    << "</text>\n";
  for (std::size_t b = 0; b < bars.size(); ++b) {
    const double y = kT + row * b;
    o << "<text x=\"" << left - 6 << "\" y=\"" << y + row / 2 + 4 << "\" text-anchor=\"end\">"
      << esc(bars[b].label) << "</text>\n";
    for (std::size_t g = 0; g < bars[b].values.size(); ++g) {
      const double v = bars[b].values[g];
      if (!std::isfinite(v)) continue;
      o << "<rect x=\"" << left << "\" y=\"" << num(y + row * 0.1 + bh * g) << "\" width=\""
        << num(v / vmax * pw) << "\" height=\"" << num(bh) << "\" fill=\"" << kColors[g % 6] << "\"/>\n";
    }
  }
  if (reference > 0.0) {
    const double x = left + reference / vmax * pw;
    o << "<line x1=\"" << num(x) << "\" y1=\"" << kT << "\" x2=\"" << num(x) << "\" y2=\"" << kT + ph
      << "\" stroke=\"black\" stroke-dasharray=\"4 3\"/>\n";
  }
  o << "<text x=\"" << left << "\" y=\"" << H - 30 << "\">0</text>\n";
  o << "<text x=\"" << left + pw << "\" y=\"" << H - 30 << "\" text-anchor=\"end\">" << num(vmax) << "</text>\n";
  for (std::size_t g = 0; g < groups.size(); ++g)
    o << "<text x=\"" << left + 120 * g << "\" y=\"" << H - 12 << "\" fill=\"" << kColors[g % 6] << "\">"
      << esc(groups[g]) << "</text>\n";
  o << "</svg>\n";
  return o.str();
}

}  // namespace axicyl
