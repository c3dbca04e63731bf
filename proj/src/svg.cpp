#include "tverberg/svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>
#include <stdexcept>
#include <vector>

namespace tverberg {

namespace {

const char* kClassPalette[] = {"#e41a1c", "#377eb8", "#4daf4a", "#984ea3",
                               "#ff7f00", "#a65628", "#f781bf", "#17becf",
                               "#bcbd22", "#8c564b", "#2ca02c", "#7f7f7f"};
const char* kFacePalette[] = {"#1b9e77", "#d95f02", "#7570b3", "#e7298a",
                              "#66a61e", "#e6ab02", "#a6761d", "#666666"};

std::string fmt(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", x);
  return buf;
}

struct Mapper {
  double scale, ox, oy;
  double x(double vx) const { return ox + scale * vx; }
  double y(double vy) const { return oy - scale * vy; }  // flip y up
};

}  // namespace

std::string render_svg(const Instance& instance, const TverbergWitness* witness) {
  instance.validate();
  if (instance.d != 2) throw std::invalid_argument("plot requires d=2");

  const int n = instance.num_vertices();
  std::vector<double> xs(n), ys(n);
  for (int v = 0; v < n; ++v) {
    xs[v] = instance.points[v][0].get_d();
    ys[v] = instance.points[v][1].get_d();
  }
  double lox = xs[0], hix = xs[0], loy = ys[0], hiy = ys[0];
  for (int v = 1; v < n; ++v) {
    lox = std::min(lox, xs[v]);
    hix = std::max(hix, xs[v]);
    loy = std::min(loy, ys[v]);
    hiy = std::max(hiy, ys[v]);
  }
  const double span = std::max({hix - lox, hiy - loy, 1e-9});
  const double view = 560.0;
  const double margin = 20.0;
  Mapper m;
  m.scale = view / span;
  m.ox = margin + (view - m.scale * (hix - lox)) / 2 - m.scale * lox;
  m.oy = margin + (view - m.scale * (hiy - loy)) / 2 + m.scale * hiy;

  std::ostringstream svg;
  svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" "
      << "width=\"600\" height=\"600\" viewBox=\"0 0 600 600\">\n";
  svg << "  <rect width=\"600\" height=\"600\" fill=\"white\"/>\n";

  if (witness) {
    for (std::size_t i = 0; i < witness->faces.size(); ++i) {
      const Face& face = witness->faces[i];
      const char* color = kFacePalette[i % (sizeof kFacePalette / sizeof *kFacePalette)];
      if (face.size() == 1) {
        svg << "  <circle cx=\"" << fmt(m.x(xs[face[0]])) << "\" cy=\""
            << fmt(m.y(ys[face[0]])) << "\" r=\"9\" fill=\"none\" stroke=\"" << color
            << "\" stroke-width=\"2\"/>\n";
      } else if (face.size() == 2) {
        svg << "  <line x1=\"" << fmt(m.x(xs[face[0]])) << "\" y1=\"" << fmt(m.y(ys[face[0]]))
            << "\" x2=\"" << fmt(m.x(xs[face[1]])) << "\" y2=\"" << fmt(m.y(ys[face[1]]))
            << "\" stroke=\"" << color << "\" stroke-width=\"2.5\"/>\n";
      } else {
        // draw the hull ring: vertices ordered by angle around the centroid
        double cx = 0, cy = 0;
        for (int v : face) {
          cx += xs[v];
          cy += ys[v];
        }
        cx /= static_cast<double>(face.size());
        cy /= static_cast<double>(face.size());
        Face ring = face;
        std::sort(ring.begin(), ring.end(), [&](int a, int b) {
          return std::atan2(ys[a] - cy, xs[a] - cx) < std::atan2(ys[b] - cy, xs[b] - cx);
        });
        svg << "  <polygon points=\"";
        for (std::size_t j = 0; j < ring.size(); ++j) {
          if (j) svg << " ";
          svg << fmt(m.x(xs[ring[j]])) << "," << fmt(m.y(ys[ring[j]]));
        }
        svg << "\" fill=\"" << color << "\" fill-opacity=\"0.25\" stroke=\"" << color
            << "\" stroke-width=\"2\"/>\n";
      }
    }
  }

  for (int v = 0; v < n; ++v) {
    const char* color =
        kClassPalette[instance.coloring.class_of(v) %
                      static_cast<int>(sizeof kClassPalette / sizeof *kClassPalette)];
    svg << "  <circle cx=\"" << fmt(m.x(xs[v])) << "\" cy=\"" << fmt(m.y(ys[v]))
        << "\" r=\"5\" fill=\"" << color << "\" stroke=\"black\" stroke-width=\"1\"/>\n";
    svg << "  <text x=\"" << fmt(m.x(xs[v]) + 7) << "\" y=\"" << fmt(m.y(ys[v]) - 7)
        << "\" font-size=\"11\" font-family=\"sans-serif\">" << v << "</text>\n";
  }

  if (witness) {
    const double px = witness->point[0].get_d();
    const double py = witness->point[1].get_d();
    const double cx = m.x(px), cy = m.y(py);
    svg << "  <line x1=\"" << fmt(cx - 7) << "\" y1=\"" << fmt(cy - 7) << "\" x2=\""
        << fmt(cx + 7) << "\" y2=\"" << fmt(cy + 7)
        << "\" stroke=\"black\" stroke-width=\"2\"/>\n";
    svg << "  <line x1=\"" << fmt(cx - 7) << "\" y1=\"" << fmt(cy + 7) << "\" x2=\""
        << fmt(cx + 7) << "\" y2=\"" << fmt(cy - 7)
        << "\" stroke=\"black\" stroke-width=\"2\"/>\n";
  }

  svg << "</svg>\n";
  return svg.str();
}

}  // namespace tverberg
