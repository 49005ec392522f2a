#pragma once

#include "modgeo/geodesics.hpp"
#include "modgeo/real_modular_curves.hpp"

#include <string>
#include <utility>
#include <vector>

namespace modgeo {

/// One rectangular plotting panel mapping a data window linearly to pixels.
class SvgPanel {
 public:
  SvgPanel(double xmin, double xmax, double ymin, double ymax, std::string title, std::string xlabel,
           std::string ylabel);

  void add_polyline(const std::vector<std::pair<double, double>>& points, const std::string& color);
  /// Upper half of the circle |z - center| = radius.
  void add_semicircle(double center, double radius, const std::string& color);
  void add_vertical_line(double x, const std::string& color);
  void add_point(double x, double y, const std::string& color);

  /// Panel body at pixel offset (ox, oy) with the given size.
  [[nodiscard]] std::string render(double ox, double oy, double width, double height) const;

 private:
  struct Item {
    enum class Kind { Polyline, Semicircle, Vertical, Point } kind;
    std::vector<std::pair<double, double>> points;
    double a = 0;
    double b = 0;
    std::string color;
  };

  double xmin_, xmax_, ymin_, ymax_;
  std::string title_, xlabel_, ylabel_;
  std::vector<Item> items_;
};

/// Panels laid out left to right in one document.
std::string render_svg(const std::vector<SvgPanel>& panels, double panel_width = 480, double panel_height = 400);

/// 2-dimensional branches in one panel; 4-dimensional ones as the (x1, y1)
/// and (x2, y2) projections side by side.
std::string branches_svg(const std::vector<TracedBranch>& branches, const std::string& title);

/// Geodesic loci in the upper half-plane.
std::string geodesics_svg(const std::vector<GeodesicLocus>& loci, const std::string& title);

}  // namespace modgeo
