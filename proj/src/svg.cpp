#include "modgeo/svg.hpp"

#include "modgeo/errors.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <sstream>

namespace modgeo {

namespace {

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3f", v);
  return buf;
}

std::string tick_label(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.4g", v);
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

const char* palette(std::size_t k) {
  static const char* colors[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#17becf", "#8c564b", "#e377c2"};
  return colors[k % 8];
}

struct Window {
  double xmin = std::numeric_limits<double>::infinity();
  double xmax = -std::numeric_limits<double>::infinity();
  double ymin = std::numeric_limits<double>::infinity();
  double ymax = -std::numeric_limits<double>::infinity();

  void include(double x, double y) {
    xmin = std::min(xmin, x);
    xmax = std::max(xmax, x);
    ymin = std::min(ymin, y);
    ymax = std::max(ymax, y);
  }

  void pad() {
    if (!std::isfinite(xmin)) *this = Window{-1, 1, -1, 1};
    double dx = std::max(xmax - xmin, 1e-9 * std::max(1.0, std::abs(xmin)));
    double dy = std::max(ymax - ymin, 1e-9 * std::max(1.0, std::abs(ymin)));
    if (xmax - xmin < dx) xmax = xmin + dx;
    if (ymax - ymin < dy) ymax = ymin + dy;
    xmin -= 0.05 * dx;
    xmax += 0.05 * dx;
    ymin -= 0.05 * dy;
    ymax += 0.05 * dy;
  }
};

}  // namespace

SvgPanel::SvgPanel(double xmin, double xmax, double ymin, double ymax, std::string title, std::string xlabel,
                   std::string ylabel)
    : xmin_(xmin),
      xmax_(xmax),
      ymin_(ymin),
      ymax_(ymax),
      title_(std::move(title)),
      xlabel_(std::move(xlabel)),
      ylabel_(std::move(ylabel)) {
  if (!(xmin < xmax) || !(ymin < ymax)) throw PreconditionError("plot window is degenerate");
}

void SvgPanel::add_polyline(const std::vector<std::pair<double, double>>& points, const std::string& color) {
  items_.push_back({Item::Kind::Polyline, points, 0, 0, color});
}

void SvgPanel::add_semicircle(double center, double radius, const std::string& color) {
  items_.push_back({Item::Kind::Semicircle, {}, center, radius, color});
}

void SvgPanel::add_vertical_line(double x, const std::string& color) {
  items_.push_back({Item::Kind::Vertical, {}, x, 0, color});
}

void SvgPanel::add_point(double x, double y, const std::string& color) {
  items_.push_back({Item::Kind::Point, {{x, y}}, 0, 0, color});
}

std::string SvgPanel::render(double ox, double oy, double width, double height) const {
  const double ml = 60, mr = 15, mt = 30, mb = 45;
  const double pw = width - ml - mr;
  const double ph = height - mt - mb;
  auto px = [&](double x) { return ox + ml + (x - xmin_) / (xmax_ - xmin_) * pw; };
  auto py = [&](double y) { return oy + mt + (ymax_ - y) / (ymax_ - ymin_) * ph; };
  std::ostringstream s;
  s << "<g>\n";
  s << "<text x=\"" << fmt(ox + width / 2) << "\" y=\"" << fmt(oy + 18)
    << "\" text-anchor=\"middle\" font-size=\"14\">" << escape(title_) << "</text>\n";
  s << "<rect x=\"" << fmt(ox + ml) << "\" y=\"" << fmt(oy + mt) << "\" width=\"" << fmt(pw) << "\" height=\""
    << fmt(ph) << "\" fill=\"none\" stroke=\"#444\"/>\n";
  for (int k = 0; k <= 4; ++k) {
    double xv = xmin_ + (xmax_ - xmin_) * k / 4.0;
    double yv = ymin_ + (ymax_ - ymin_) * k / 4.0;
    s << "<text x=\"" << fmt(px(xv)) << "\" y=\"" << fmt(oy + mt + ph + 16)
      << "\" text-anchor=\"middle\" font-size=\"10\">" << tick_label(xv) << "</text>\n";
    s << "<text x=\"" << fmt(ox + ml - 4) << "\" y=\"" << fmt(py(yv) + 3)
      << "\" text-anchor=\"end\" font-size=\"10\">" << tick_label(yv) << "</text>\n";
  }
  s << "<text x=\"" << fmt(ox + ml + pw / 2) << "\" y=\"" << fmt(oy + height - 8)
    << "\" text-anchor=\"middle\" font-size=\"12\">" << escape(xlabel_) << "</text>\n";
  s << "<text x=\"" << fmt(ox + 14) << "\" y=\"" << fmt(oy + mt + ph / 2) << "\" font-size=\"12\" transform=\"rotate(-90 "
    << fmt(ox + 14) << " " << fmt(oy + mt + ph / 2) << ")\" text-anchor=\"middle\">" << escape(ylabel_) << "</text>\n";
  s << "<clipPath id=\"clip" << static_cast<long>(ox) << "_" << static_cast<long>(oy) << "\"><rect x=\"" << fmt(ox + ml)
    << "\" y=\"" << fmt(oy + mt) << "\" width=\"" << fmt(pw) << "\" height=\"" << fmt(ph) << "\"/></clipPath>\n";
  s << "<g clip-path=\"url(#clip" << static_cast<long>(ox) << "_" << static_cast<long>(oy) << ")\">\n";
  if (ymin_ < 0 && ymax_ > 0) {
    s << "<line x1=\"" << fmt(px(xmin_)) << "\" y1=\"" << fmt(py(0)) << "\" x2=\"" << fmt(px(xmax_)) << "\" y2=\""
      << fmt(py(0)) << "\" stroke=\"#bbb\"/>\n";
  }
  for (const auto& it : items_) {
    switch (it.kind) {
      case Item::Kind::Polyline: {
        s << "<polyline fill=\"none\" stroke=\"" << it.color << "\" stroke-width=\"1.2\" points=\"";
        for (const auto& [x, y] : it.points) s << fmt(px(x)) << "," << fmt(py(y)) << " ";
        s << "\"/>\n";
        break;
      }
      case Item::Kind::Semicircle: {
        const double rx = it.b / (xmax_ - xmin_) * pw;
        const double ry = it.b / (ymax_ - ymin_) * ph;
        s << "<path fill=\"none\" stroke=\"" << it.color << "\" stroke-width=\"1.2\" d=\"M " << fmt(px(it.a - it.b))
          << " " << fmt(py(0)) << " A " << fmt(rx) << " " << fmt(ry) << " 0 0 1 " << fmt(px(it.a + it.b)) << " "
          << fmt(py(0)) << "\"/>\n";
        break;
      }
      case Item::Kind::Vertical:
        s << "<line x1=\"" << fmt(px(it.a)) << "\" y1=\"" << fmt(py(std::max(ymin_, 0.0))) << "\" x2=\""
          << fmt(px(it.a)) << "\" y2=\"" << fmt(py(ymax_)) << "\" stroke=\"" << it.color
          << "\" stroke-width=\"1.2\"/>\n";
        break;
      case Item::Kind::Point:
        s << "<circle cx=\"" << fmt(px(it.points[0].first)) << "\" cy=\"" << fmt(py(it.points[0].second))
          << "\" r=\"2.5\" fill=\"" << it.color << "\"/>\n";
        break;
    }
  }
  s << "</g>\n</g>\n";
  return s.str();
}

std::string render_svg(const std::vector<SvgPanel>& panels, double panel_width, double panel_height) {
  std::ostringstream s;
  const double width = panel_width * static_cast<double>(std::max<std::size_t>(1, panels.size()));
  s << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  s << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << fmt(width) << "\" height=\"" << fmt(panel_height)
    << "\" viewBox=\"0 0 " << fmt(width) << " " << fmt(panel_height) << "\">\n";
  s << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  for (std::size_t k = 0; k < panels.size(); ++k) {
    s << panels[k].render(panel_width * static_cast<double>(k), 0, panel_width, panel_height);
  }
  s << "</svg>\n";
  return s.str();
}

std::string branches_svg(const std::vector<TracedBranch>& branches, const std::string& title) {
  const bool four = !branches.empty() && branches.front().dimension == 4;
  const int planes = four ? 2 : 1;
  std::vector<SvgPanel> panels;
  for (int plane = 0; plane < planes; ++plane) {
    Window w;
    std::vector<std::vector<std::pair<double, double>>> lines;
    for (const auto& b : branches) {
      std::vector<std::pair<double, double>> line;
      for (const auto& p : b.points) {
        double x = p[2 * plane].to_double();
        double y = p[2 * plane + 1].to_double();
        w.include(x, y);
        line.emplace_back(x, y);
      }
      lines.push_back(std::move(line));
    }
    w.pad();
    std::string sub = planes == 1 ? title : title + (plane == 0 ? " (x1, y1)" : " (x2, y2)");
    std::string xl = planes == 1 ? "x" : (plane == 0 ? "x1" : "x2");
    std::string yl = planes == 1 ? "y" : (plane == 0 ? "y1" : "y2");
    SvgPanel panel(w.xmin, w.xmax, w.ymin, w.ymax, sub, xl, yl);
    for (std::size_t k = 0; k < lines.size(); ++k) panel.add_polyline(lines[k], palette(k));
    panels.push_back(std::move(panel));
  }
  return render_svg(panels);
}

std::string geodesics_svg(const std::vector<GeodesicLocus>& loci, const std::string& title) {
  Window w;
  w.include(-1, 0);
  w.include(1, 1);
  for (const auto& l : loci) {
    if (l.kind == GeodesicLocus::Kind::VerticalLine) {
      w.include(l.x0.get_d(), 0);
    } else {
      const double c = l.center.get_d();
      const double r = std::sqrt(l.radius_sq.get_d());
      w.include(c - r, 0);
      w.include(c + r, r);
    }
  }
  w.pad();
  w.ymin = 0;
  SvgPanel panel(w.xmin, w.xmax, w.ymin, w.ymax, title, "Re z", "Im z");
  for (std::size_t k = 0; k < loci.size(); ++k) {
    const auto& l = loci[k];
    if (l.kind == GeodesicLocus::Kind::VerticalLine) {
      panel.add_vertical_line(l.x0.get_d(), palette(k));
    } else {
      panel.add_semicircle(l.center.get_d(), std::sqrt(l.radius_sq.get_d()), palette(k));
    }
  }
  return render_svg({panel});
}

}  // namespace modgeo
