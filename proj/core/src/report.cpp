#include "journeynet/report.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

namespace journeynet::report {
namespace {

constexpr double kWidth = 640.0;
constexpr double kHeight = 400.0;
constexpr double kLeft = 70.0;
constexpr double kRight = 20.0;
constexpr double kTop = 40.0;
constexpr double kBottom = 60.0;
constexpr const char* kPalette[] = {"#1b9e77", "#d95f02", "#7570b3", "#e7298a", "#66a61e", "#e6ab02", "#a6761d"};

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  return buf;
}

std::string escape(const std::string& s) {
  std::string out;
  for (char ch : s) {
    switch (ch) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out += ch;
    }
  }
  return out;
}

void open_svg(std::ostringstream& os, const std::string& title) {
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << num(kWidth) << "\" height=\"" << num(kHeight)
     << "\" font-family=\"sans-serif\" font-size=\"12\">\n";
  os << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  os << "<text x=\"" << num(kWidth / 2) << "\" y=\"22\" text-anchor=\"middle\" font-size=\"15\">" << escape(title)
     << "</text>\n";
  os << "<line x1=\"" << num(kLeft) << "\" y1=\"" << num(kHeight - kBottom) << "\" x2=\"" << num(kWidth - kRight)
     << "\" y2=\"" << num(kHeight - kBottom) << "\" stroke=\"black\"/>\n";
  os << "<line x1=\"" << num(kLeft) << "\" y1=\"" << num(kTop) << "\" x2=\"" << num(kLeft) << "\" y2=\""
     << num(kHeight - kBottom) << "\" stroke=\"black\"/>\n";
}

void label(std::ostringstream& os, double x, double y, const std::string& text, const char* anchor = "middle") {
  os << "<text x=\"" << num(x) << "\" y=\"" << num(y) << "\" text-anchor=\"" << anchor << "\">" << escape(text)
     << "</text>\n";
}

double plot_x(double t) { return kLeft + t * (kWidth - kLeft - kRight); }
double plot_y(double t) { return kHeight - kBottom - t * (kHeight - kTop - kBottom); }

}  // namespace

std::string survival_svg(std::span<const Series> series, const std::string& title) {
  std::ostringstream os;
  open_svg(os, title);
  double lo = 1e300;
  double hi = 0.0;
  for (const auto& s : series) {
    for (std::size_t j = 0; j < s.dist.size(); ++j) {
      lo = std::min(lo, std::max(s.dist.lower[j], 0.1));
      hi = std::max(hi, s.dist.upper[j]);
    }
  }
  if (hi <= lo) hi = lo * 10.0;
  const double llo = std::log10(lo);
  const double lhi = std::log10(hi);
  auto sx = [&](double d) { return plot_x((std::log10(std::max(d, lo)) - llo) / (lhi - llo)); };

  for (int e = static_cast<int>(std::floor(llo)); e <= static_cast<int>(std::ceil(lhi)); ++e) {
    const double d = std::pow(10.0, e);
    if (d < lo || d > hi) continue;
    label(os, sx(d), kHeight - kBottom + 16, std::to_string(static_cast<long long>(d)));
  }
  label(os, plot_x(0.5), kHeight - 16, "journey distance (km, log scale)");
  for (int i = 0; i <= 4; ++i) label(os, kLeft - 8, plot_y(i / 4.0) + 4, num(i / 4.0), "end");

  std::size_t colour = 0;
  for (const auto& s : series) {
    const char* stroke = kPalette[colour++ % std::size(kPalette)];
    os << "<polyline fill=\"none\" stroke=\"" << stroke << "\" stroke-width=\"1.5\" points=\"";
    os << num(sx(lo)) << ',' << num(plot_y(1.0));
    for (std::size_t j = 0; j < s.dist.size(); ++j) {
      os << ' ' << num(sx(s.dist.lower[j])) << ',' << num(plot_y(s.dist.survival(s.dist.lower[j])));
      os << ' ' << num(sx(s.dist.upper[j])) << ',' << num(plot_y(s.dist.survival(s.dist.upper[j])));
    }
    os << "\"/>\n";
    const double ly = kTop + 14.0 * static_cast<double>(colour);
    os << "<line x1=\"" << num(kWidth - 170) << "\" y1=\"" << num(ly - 4) << "\" x2=\"" << num(kWidth - 150)
       << "\" y2=\"" << num(ly - 4) << "\" stroke=\"" << stroke << "\" stroke-width=\"2\"/>\n";
    label(os, kWidth - 145, ly, s.name, "start");
  }
  os << "</svg>\n";
  return os.str();
}

std::string bar_svg(std::span<const Bar> bars, const std::string& title, const std::string& y_label) {
  std::ostringstream os;
  open_svg(os, title);
  double top = 0.0;
  for (const auto& b : bars) top = std::max(top, b.value + b.error);
  if (top <= 0.0) top = 1.0;
  for (int i = 0; i <= 4; ++i) label(os, kLeft - 8, plot_y(i / 4.0) + 4, num(top * i / 4.0), "end");
  label(os, 16, plot_y(0.5), y_label, "middle");
  const double slot = 1.0 / static_cast<double>(std::max<std::size_t>(bars.size(), 1));
  for (std::size_t i = 0; i < bars.size(); ++i) {
    const auto& b = bars[i];
    const double x0 = plot_x(slot * (static_cast<double>(i) + 0.15));
    const double x1 = plot_x(slot * (static_cast<double>(i) + 0.85));
    const double y = plot_y(std::max(b.value, 0.0) / top);
    os << "<rect x=\"" << num(x0) << "\" y=\"" << num(y) << "\" width=\"" << num(x1 - x0) << "\" height=\""
       << num(plot_y(0.0) - y) << "\" fill=\"" << kPalette[i % std::size(kPalette)] << "\"/>\n";
    if (b.error > 0.0) {
      const double xm = (x0 + x1) / 2;
      os << "<line x1=\"" << num(xm) << "\" y1=\"" << num(plot_y(std::max(b.value - b.error, 0.0) / top))
         << "\" x2=\"" << num(xm) << "\" y2=\"" << num(plot_y((b.value + b.error) / top))
         << "\" stroke=\"black\"/>\n";
    }
    label(os, (x0 + x1) / 2, kHeight - kBottom + 16, b.label);
  }
  os << "</svg>\n";
  return os.str();
}

std::string elbow_svg(std::span<const double> sorted_desc, std::optional<std::size_t> knee_rank,
                      const std::string& title) {
  std::ostringstream os;
  open_svg(os, title);
  const std::size_t n = sorted_desc.size();
  double top = 0.0;
  for (double v : sorted_desc) top = std::max(top, v);
  if (top <= 0.0) top = 1.0;
  auto sx = [&](std::size_t rank) {
    return plot_x(n > 1 ? static_cast<double>(rank - 1) / static_cast<double>(n - 1) : 0.5);
  };
  for (int i = 0; i <= 4; ++i) label(os, kLeft - 8, plot_y(i / 4.0) + 4, num(top * i / 4.0), "end");
  label(os, plot_x(0.5), kHeight - 16, "rank");
  os << "<polyline fill=\"none\" stroke=\"" << kPalette[0] << "\" stroke-width=\"1.5\" points=\"";
  for (std::size_t r = 1; r <= n; ++r) {
    os << (r > 1 ? " " : "") << num(sx(r)) << ',' << num(plot_y(sorted_desc[r - 1] / top));
  }
  os << "\"/>\n";
  if (knee_rank && *knee_rank >= 1 && *knee_rank <= n) {
    const double x = sx(*knee_rank);
    os << "<line x1=\"" << num(x) << "\" y1=\"" << num(kTop) << "\" x2=\"" << num(x) << "\" y2=\""
       << num(kHeight - kBottom) << "\" stroke=\"" << kPalette[1] << "\" stroke-dasharray=\"4 3\"/>\n";
    label(os, x + 4, kTop + 12, "knee k = " + std::to_string(*knee_rank), "start");
  }
  os << "</svg>\n";
  return os.str();
}

}  // namespace journeynet::report
