#include "dmap/cli/svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

namespace dmap::cli {
namespace {

constexpr double kWidth = 640;
constexpr double kHeight = 480;
constexpr double kMargin = 56;

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  return buf;
}

std::string label(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3g", v);
  return buf;
}

std::string escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

struct Axis {
  double lo, hi;
  double pixel_lo, pixel_hi;
  double operator()(double v) const {
    const double span = hi > lo ? hi - lo : 1.0;
    return pixel_lo + (v - lo) / span * (pixel_hi - pixel_lo);
  }
};

Axis fit(double lo, double hi, double pixel_lo, double pixel_hi) {
  if (!(hi > lo)) {
    lo -= 0.5;
    hi += 0.5;
  }
  const double pad = 0.04 * (hi - lo);
  return {lo - pad, hi + pad, pixel_lo, pixel_hi};
}

// Blue to red through a desaturated middle.
std::string colormap(double s) {
  s = std::clamp(s, 0.0, 1.0);
  const int r = static_cast<int>(std::lround(40 + 200 * s));
  const int g = static_cast<int>(std::lround(80 + 100 * (1 - std::abs(2 * s - 1))));
  const int b = static_cast<int>(std::lround(240 - 200 * s));
  char buf[8];
  std::snprintf(buf, sizeof buf, "#%02x%02x%02x", r, g, b);
  return buf;
}

void open_document(std::ostringstream& os, const std::string& title) {
  os << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
     << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth
     << "\" height=\"" << kHeight << "\" viewBox=\"0 0 " << kWidth << ' '
     << kHeight << "\">\n"
     << "<rect x=\"0\" y=\"0\" width=\"" << kWidth << "\" height=\"" << kHeight
     << "\" fill=\"white\"/>\n"
     << "<text x=\"" << kWidth / 2 << "\" y=\"24\" text-anchor=\"middle\" "
     << "font-family=\"sans-serif\" font-size=\"14\">" << escape(title)
     << "</text>\n";
}

void frame(std::ostringstream& os) {
  os << "<rect x=\"" << kMargin << "\" y=\"" << kMargin << "\" width=\""
     << kWidth - 2 * kMargin << "\" height=\"" << kHeight - 2 * kMargin
     << "\" fill=\"none\" stroke=\"#444\"/>\n";
}

}  // namespace

std::string scatter_svg(const Matrix& coords, const std::optional<Vector>& color_by,
                        const std::string& title) {
  const Index n = coords.rows();
  Vector xs(n), ys(n);
  if (coords.cols() >= 2) {
    xs = coords.col(0);
    ys = coords.col(1);
  } else {
    xs = Vector::LinSpaced(n, 0, static_cast<double>(n - 1));
    ys = coords.col(0);
  }
  const Axis ax = fit(xs.minCoeff(), xs.maxCoeff(), kMargin, kWidth - kMargin);
  const Axis ay = fit(ys.minCoeff(), ys.maxCoeff(), kHeight - kMargin, kMargin);

  double c_lo = 0, c_hi = 1;
  if (color_by) {
    c_lo = color_by->minCoeff();
    c_hi = color_by->maxCoeff();
  }

  std::ostringstream os;
  open_document(os, title);
  frame(os);
  os << "<g class=\"points\">\n";
  for (Index i = 0; i < n; ++i) {
    std::string fill = "#3060c0";
    if (color_by) {
      const double span = c_hi > c_lo ? c_hi - c_lo : 1.0;
      fill = colormap(((*color_by)(i) - c_lo) / span);
    }
    os << "<circle cx=\"" << num(ax(xs(i))) << "\" cy=\"" << num(ay(ys(i)))
       << "\" r=\"2.5\" fill=\"" << fill << "\"/>\n";
  }
  os << "</g>\n</svg>\n";
  return os.str();
}

std::string sge_curve_svg(const SGECurve& curve, const std::string& title) {
  std::vector<const SGEPoint*> valid;
  for (const SGEPoint& p : curve.points) {
    if (p.valid()) valid.push_back(&p);
  }
  const double lt_lo = std::log10(curve.points.front().t);
  const double lt_hi = std::log10(curve.points.back().t);
  double s_hi = 0;
  for (const SGEPoint* p : valid) s_hi = std::max(s_hi, p->sge);
  if (s_hi <= 0) s_hi = 1;

  const Axis ax = fit(lt_lo, lt_hi, kMargin, kWidth - kMargin);
  const Axis ay{0, s_hi * 1.05, kHeight - kMargin, kMargin};

  std::ostringstream os;
  open_document(os, title);
  frame(os);

  // Tick per grid point; label roughly eight of them.
  const std::size_t every = std::max<std::size_t>(1, (curve.points.size() + 7) / 8);
  os << "<g class=\"ticks\" stroke=\"#444\">\n";
  for (std::size_t i = 0; i < curve.points.size(); ++i) {
    const double x = ax(std::log10(curve.points[i].t));
    os << "<line x1=\"" << num(x) << "\" y1=\"" << num(kHeight - kMargin)
       << "\" x2=\"" << num(x) << "\" y2=\"" << num(kHeight - kMargin + 5) << "\"/>\n";
  }
  os << "</g>\n<g class=\"tick-labels\" font-family=\"sans-serif\" font-size=\"10\" "
     << "text-anchor=\"middle\">\n";
  for (std::size_t i = 0; i < curve.points.size(); i += every) {
    const double x = ax(std::log10(curve.points[i].t));
    os << "<text x=\"" << num(x) << "\" y=\"" << num(kHeight - kMargin + 18)
       << "\">" << label(curve.points[i].t) << "</text>\n";
  }
  os << "</g>\n";
  os << "<text x=\"" << kWidth / 2 << "\" y=\"" << kHeight - 12
     << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"12\">"
     << "t (log scale)</text>\n";
  os << "<text x=\"16\" y=\"" << kHeight / 2 << "\" font-family=\"sans-serif\" "
     << "font-size=\"12\" transform=\"rotate(-90 16 " << kHeight / 2 << ")\" "
     << "text-anchor=\"middle\">SGE(t)</text>\n";
  os << "<text x=\"" << kMargin - 6 << "\" y=\"" << num(ay(0))
     << "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"10\">0</text>\n";
  os << "<text x=\"" << kMargin - 6 << "\" y=\"" << num(ay(s_hi))
     << "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"10\">"
     << label(s_hi) << "</text>\n";

  if (!valid.empty()) {
    os << "<polyline fill=\"none\" stroke=\"#3060c0\" points=\"";
    for (std::size_t i = 0; i < valid.size(); ++i) {
      os << (i ? " " : "") << num(ax(std::log10(valid[i]->t))) << ','
         << num(ay(valid[i]->sge));
    }
    os << "\"/>\n";
  }

  os << "<g class=\"markers\">\n";
  for (std::size_t i = 0; i < curve.points.size(); ++i) {
    const SGEPoint& p = curve.points[i];
    if (!p.valid()) continue;
    const bool selected = curve.selected_index && *curve.selected_index == i;
    os << "<circle cx=\"" << num(ax(std::log10(p.t))) << "\" cy=\"" << num(ay(p.sge))
       << "\" r=\"" << (selected ? "5" : "3") << "\" fill=\""
       << (selected ? "red" : "#3060c0") << '"' << (selected ? " class=\"selected\"" : "")
       << "/>\n";
  }
  os << "</g>\n</svg>\n";
  return os.str();
}

}  // namespace dmap::cli
