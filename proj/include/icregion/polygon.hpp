#pragma once

#include <optional>
#include <string>
#include <vector>

#include "icregion/coefficients.hpp"
#include "icregion/symbolic.hpp"

namespace icr {

inline constexpr double kFeasibilityTolerance = 1e-9;
inline constexpr double kVertexMergeTolerance = 1e-9;
inline constexpr double kRegionEqualTolerance = 1e-7;

struct Point {
  double r1 = 0;
  double r2 = 0;
};

// alpha*R1 + beta*R2 <= gamma
struct Halfplane {
  double alpha = 0;
  double beta = 0;
  double gamma = 0;
};

// Intersection of halfplanes with the implicit quadrant R1 >= 0, R2 >= 0.
struct RatePolygon {
  std::vector<Halfplane> halfplanes;

  bool contains(Point p, double tol = kFeasibilityTolerance) const;
  // Largest amount by which p breaks a constraint (<= 0 when inside).
  double violation(Point p) const;
};

// Binds every rhs symbol to its value. Rows may only use R1 and R2 on the lhs.
// Unbound symbols -> ArgumentError listing all of them.
RatePolygon instantiate(const InequalitySystem& sys, const SymbolValues& values);

// Counter-clockwise from the lowest-leftmost vertex; collinear points dropped.
// Throws EmptyRegionError for an infeasible polygon and ArgumentError for an
// unbounded one.
std::vector<Point> vertices(const RatePolygon& p);

struct SubsetResult {
  bool holds = true;
  std::optional<Point> witness;  // a vertex of the first polygon outside the second
  double max_violation = 0;
};

SubsetResult subset(const RatePolygon& a, const RatePolygon& b,
                    double tol = kFeasibilityTolerance);
bool region_equal(const RatePolygon& a, const RatePolygon& b,
                  double tol = kRegionEqualTolerance);

struct AreaResult {
  double value = 0;
  bool empty = false;
};

AreaResult area(const RatePolygon& p);
double shoelace(const std::vector<Point>& pts);

// "R1,R2" header, then one vertex per line.
std::string vertices_csv(const std::vector<Point>& pts, const std::string& header_comment = "");

struct SvgLayer {
  std::vector<Point> points;
  bool closed = true;
  std::string color = "#1f77b4";
  std::string label;
};

// Self-contained SVG with axes in bits, one shape per layer and a legend when
// any layer is labelled.
std::string render_svg(const std::vector<SvgLayer>& layers, const std::string& comment = "");

}  // namespace icr
