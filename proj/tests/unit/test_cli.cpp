#include <doctest.h>

#include "modgeo/errors.hpp"
#include "modgeo/svg.hpp"

using namespace modgeo;

namespace {

std::size_t count(const std::string& s, const std::string& what) {
  std::size_t n = 0;
  for (std::size_t p = s.find(what); p != std::string::npos; p = s.find(what, p + 1)) ++n;
  return n;
}

TracedBranch line_branch(int dimension, int n) {
  TracedBranch b;
  b.dimension = dimension;
  for (int k = 0; k < n; ++k) {
    std::vector<Real> p;
    for (int c = 0; c < dimension; ++c) p.emplace_back(static_cast<long>(k * (c + 1)), 64);
    b.points.push_back(std::move(p));
    b.residuals.push_back(0.0);
  }
  return b;
}

}  // namespace

TEST_CASE("geodesics render as arcs and rays") {
  std::vector<GeodesicLocus> loci{locus(GeodesicMatrix(RationalMatrix2(0, 1, 1, 0))),
                                  locus(GeodesicMatrix(RationalMatrix2(1, 0, 0, -1)))};
  std::string svg = geodesics_svg(loci, "two geodesics");
  CHECK(svg.rfind("<?xml", 0) == 0);
  CHECK(count(svg, "<svg") == 1);
  CHECK(count(svg, " A ") == 1);
  CHECK(count(svg, "stroke-width=\"1.2\"/>") >= 1);
  CHECK(svg.find("Re z") != std::string::npos);
  CHECK(svg.find("two geodesics") != std::string::npos);
}

TEST_CASE("planar branches use one panel") {
  std::string svg = branches_svg({line_branch(2, 5), line_branch(2, 3)}, "Z_2");
  CHECK(count(svg, "<polyline") == 2);
  CHECK(count(svg, "<clipPath") == 1);
}

TEST_CASE("four-dimensional branches use two panels") {
  std::string svg = branches_svg({line_branch(4, 6)}, "C");
  CHECK(count(svg, "<polyline") == 2);
  CHECK(count(svg, "<clipPath") == 2);
  CHECK(svg.find("(x1, y1)") != std::string::npos);
  CHECK(svg.find("(x2, y2)") != std::string::npos);
  CHECK(svg.find("width=\"960.000\"") != std::string::npos);
}

TEST_CASE("rendering is deterministic and escapes text") {
  SvgPanel p(0, 1, 0, 1, "a<b & c", "x", "y");
  p.add_point(0.5, 0.5, "#000");
  std::string s1 = render_svg({p});
  std::string s2 = render_svg({p});
  CHECK(s1 == s2);
  CHECK(s1.find("a&lt;b &amp; c") != std::string::npos);
  CHECK(count(s1, "<circle") == 1);
  CHECK_THROWS_AS(SvgPanel(1, 1, 0, 1, "", "", ""), PreconditionError);
}
