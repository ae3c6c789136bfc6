#include "icregion/polygon.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>

#include "icregion/errors.hpp"

namespace icr {

namespace {

std::vector<Halfplane> with_quadrant(const RatePolygon& p) {
  std::vector<Halfplane> hs = p.halfplanes;
  hs.push_back({-1, 0, 0});
  hs.push_back({0, -1, 0});
  return hs;
}

double cross(Point o, Point a, Point b) {
  return (a.r1 - o.r1) * (b.r2 - o.r2) - (a.r2 - o.r2) * (b.r1 - o.r1);
}

bool unbounded(const std::vector<Halfplane>& hs) {
  std::vector<Point> dirs = {{1, 0}, {0, 1}};
  for (const auto& h : hs) {
    if (h.alpha * h.beta < 0) dirs.push_back({std::abs(h.beta), std::abs(h.alpha)});
  }
  return std::any_of(dirs.begin(), dirs.end(), [&](Point d) {
    const double n = std::hypot(d.r1, d.r2);
    return std::all_of(hs.begin(), hs.end(), [&](const Halfplane& h) {
      return (h.alpha * d.r1 + h.beta * d.r2) / n <= 1e-12;
    });
  });
}

}  // namespace

double RatePolygon::violation(Point p) const {
  double worst = std::max(-p.r1, -p.r2);
  for (const auto& h : halfplanes) worst = std::max(worst, h.alpha * p.r1 + h.beta * p.r2 - h.gamma);
  return worst;
}

bool RatePolygon::contains(Point p, double tol) const { return violation(p) <= tol; }

RatePolygon instantiate(const InequalitySystem& sys, const SymbolValues& values) {
  std::set<std::string, SymbolLess> missing;
  for (const auto& name : sys.symbols())
    if (!values.count(name)) missing.insert(name);
  if (!missing.empty()) {
    std::string msg = "unbound symbols:";
    for (const auto& m : missing) msg += " " + m;
    throw ArgumentError(msg);
  }
  RatePolygon p;
  for (const auto& row : sys.rows()) {
    Halfplane h;
    for (const auto& [name, k] : row.lhs.terms()) {
      if (name == "R1") {
        h.alpha = k.get_d();
      } else if (name == "R2") {
        h.beta = k.get_d();
      } else {
        throw ArgumentError("rate polygon rows may only use R1 and R2, found " + name);
      }
    }
    h.gamma = row.rhs.evaluate(values) - row.lhs.constant().get_d();
    p.halfplanes.push_back(h);
  }
  return p;
}

std::vector<Point> vertices(const RatePolygon& p) {
  const auto hs = with_quadrant(p);
  std::vector<Point> pts;
  for (std::size_t i = 0; i < hs.size(); ++i) {
    for (std::size_t j = i + 1; j < hs.size(); ++j) {
      const double det = hs[i].alpha * hs[j].beta - hs[i].beta * hs[j].alpha;
      if (std::abs(det) < 1e-14) continue;
      const Point x{(hs[i].gamma * hs[j].beta - hs[i].beta * hs[j].gamma) / det,
                    (hs[i].alpha * hs[j].gamma - hs[i].gamma * hs[j].alpha) / det};
      // adding 0.0 turns -0 into +0
      if (p.contains(x)) pts.push_back({x.r1 + 0.0, x.r2 + 0.0});
    }
  }
  if (pts.empty()) throw EmptyRegionError("rate polygon is empty");
  if (unbounded(hs)) throw ArgumentError("rate polygon is unbounded");

  std::sort(pts.begin(), pts.end(), [](Point a, Point b) {
    return a.r1 < b.r1 || (a.r1 == b.r1 && a.r2 < b.r2);
  });
  std::vector<Point> uniq;
  for (const auto& x : pts) {
    const bool dup = std::any_of(uniq.begin(), uniq.end(), [&](Point u) {
      return std::abs(u.r1 - x.r1) <= kVertexMergeTolerance &&
             std::abs(u.r2 - x.r2) <= kVertexMergeTolerance;
    });
    if (!dup) uniq.push_back(x);
  }
  if (uniq.size() < 3) return uniq;

  // Andrew's monotone chain
  std::vector<Point> hull(2 * uniq.size());
  std::size_t k = 0;
  for (const auto& x : uniq) {
    while (k >= 2 && cross(hull[k - 2], hull[k - 1], x) <= 1e-12) --k;
    hull[k++] = x;
  }
  for (std::size_t i = uniq.size() - 1, lower = k + 1; i-- > 0;) {
    while (k >= lower && cross(hull[k - 2], hull[k - 1], uniq[i]) <= 1e-12) --k;
    hull[k++] = uniq[i];
  }
  hull.resize(k - 1);
  return hull;
}

SubsetResult subset(const RatePolygon& a, const RatePolygon& b, double tol) {
  SubsetResult r;
  double worst = -std::numeric_limits<double>::infinity();
  for (const auto& v : vertices(a)) {
    const double viol = b.violation(v);
    if (viol > worst) {
      worst = viol;
      if (viol > tol) r.witness = v;
    }
  }
  r.max_violation = worst > 0 ? worst : 0.0;
  r.holds = !r.witness.has_value();
  return r;
}

bool region_equal(const RatePolygon& a, const RatePolygon& b, double tol) {
  return subset(a, b, tol).holds && subset(b, a, tol).holds;
}

double shoelace(const std::vector<Point>& pts) {
  double s = 0;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    const Point& p = pts[i];
    const Point& q = pts[(i + 1) % pts.size()];
    s += p.r1 * q.r2 - q.r1 * p.r2;
  }
  return std::abs(s) / 2;
}

AreaResult area(const RatePolygon& p) {
  try {
    return {shoelace(vertices(p)), false};
  } catch (const EmptyRegionError&) {
    return {0.0, true};
  }
}

std::string vertices_csv(const std::vector<Point>& pts, const std::string& header_comment) {
  std::string out = header_comment;
  out += "R1,R2\n";
  for (const auto& p : pts) out += fmt::format("{},{}\n", p.r1, p.r2);
  return out;
}

std::string render_svg(const std::vector<SvgLayer>& layers, const std::string& comment) {
  constexpr double kSize = 480, kMargin = 50;
  double extent = 0;
  for (const auto& l : layers)
    for (const auto& p : l.points) extent = std::max({extent, p.r1, p.r2});
  extent = extent <= 0 ? 1.0 : std::ceil(extent * 4) / 4;
  const double plot = kSize - 2 * kMargin;
  auto sx = [&](double v) { return kMargin + v / extent * plot; };
  auto sy = [&](double v) { return kSize - kMargin - v / extent * plot; };

  std::string out = fmt::format(
      "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{0}\" height=\"{0}\" "
      "viewBox=\"0 0 {0} {0}\">\n",
      kSize);
  if (!comment.empty()) out += "<!--\n" + comment + "-->\n";
  out += fmt::format("<rect width=\"{0}\" height=\"{0}\" fill=\"white\"/>\n", kSize);
  out += fmt::format(
      "<g stroke=\"black\" stroke-width=\"1\">\n"
      "<line x1=\"{0}\" y1=\"{1}\" x2=\"{2}\" y2=\"{1}\"/>\n"
      "<line x1=\"{0}\" y1=\"{1}\" x2=\"{0}\" y2=\"{3}\"/>\n</g>\n",
      sx(0), sy(0), sx(extent), sy(extent));
  out += "<g font-family=\"sans-serif\" font-size=\"11\">\n";
  for (int i = 0; i <= 4; ++i) {
    const double v = extent * i / 4;
    out += fmt::format("<text x=\"{}\" y=\"{}\" text-anchor=\"middle\">{:.3g}</text>\n", sx(v),
                       sy(0) + 16, v);
    out += fmt::format("<text x=\"{}\" y=\"{}\" text-anchor=\"end\">{:.3g}</text>\n", sx(0) - 6,
                       sy(v) + 4, v);
  }
  out += fmt::format("<text x=\"{}\" y=\"{}\" text-anchor=\"middle\">R1 (bits)</text>\n",
                     kSize / 2, kSize - 12);
  out += fmt::format(
      "<text x=\"14\" y=\"{0}\" text-anchor=\"middle\" transform=\"rotate(-90 14 {0})\">"
      "R2 (bits)</text>\n</g>\n",
      kSize / 2);

  int legend = 0;
  for (const auto& l : layers) {
    std::string pts;
    for (const auto& p : l.points) pts += fmt::format("{:.3f},{:.3f} ", sx(p.r1), sy(p.r2));
    if (!pts.empty()) pts.pop_back();
    if (l.closed) {
      out += fmt::format(
          "<polygon points=\"{}\" fill=\"{}\" fill-opacity=\"0.25\" stroke=\"{}\" "
          "stroke-width=\"1.5\"/>\n",
          pts, l.color, l.color);
    } else {
      out += fmt::format(
          "<polyline points=\"{}\" fill=\"none\" stroke=\"{}\" stroke-width=\"1.5\"/>\n", pts,
          l.color);
    }
    if (!l.label.empty()) {
      const double y = kMargin + 14.0 * legend++;
      out += fmt::format(
          "<rect x=\"{}\" y=\"{}\" width=\"10\" height=\"10\" fill=\"{}\"/>\n"
          "<text x=\"{}\" y=\"{}\" font-family=\"sans-serif\" font-size=\"11\">{}</text>\n",
          kSize - kMargin - 110, y - 9, l.color, kSize - kMargin - 95, y, l.label);
    }
  }
  out += "</svg>\n";
  return out;
}

}  // namespace icr
