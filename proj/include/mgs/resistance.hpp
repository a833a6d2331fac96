#pragma once

#include <tuple>

#include "mgs/graph.hpp"
#include "mgs/harmonic.hpp"

namespace mgs {

/// Quadratic model of the effective resistance r(x_t, y_s) over one edge
/// pair, t along e1 and s along e2 (offsets from the u endpoints). For
/// e1 == e2 the patch covers the triangle t <= s only, where r has no kink.
struct QuadraticPatch {
  EdgeId e1 = -1, e2 = -1;
  // r(t,s) = c00 + c10 t + c01 s + c20 t^2 + c11 t s + c02 s^2
  double c00 = 0, c10 = 0, c01 = 0, c20 = 0, c11 = 0, c02 = 0;
  double residual = 0;        // worst held-out absolute misfit
  bool quadratic = true;      // false => callers must fall back to a grid

  double eval(double t, double s) const {
    return c00 + c10 * t + c01 * s + c20 * t * t + c11 * t * s + c02 * s * s;
  }
};

/// Effective resistance between two points; 0 when the points coincide.
double resistance(const MetricGraphModel& model, const GraphPoint& x, const GraphPoint& y);

/// The potential with f(x) = 1, f(y) = -1, harmonic elsewhere. Lives on a
/// model refined so that x and y are vertices; q(f) * r(x,y) = 4.
PiecewiseLinearFunction f_xy(const MetricGraphModel& model, const GraphPoint& x,
                             const GraphPoint& y);

/// Fits r over the edge pair from a sample grid and validates on held-out
/// samples; a failed validation clears `quadratic` instead of throwing.
QuadraticPatch fit_patch(const MetricGraphModel& model, EdgeId e1, EdgeId e2);

/// Exact maximum of r over G x G via per-pair quadratic patches (grid
/// fallback where a patch fails validation). Ties broken towards the
/// lexicographically smallest (edge id, offset) pair.
std::tuple<double, GraphPoint, GraphPoint> resistance_diameter(const MetricGraphModel& model);

}  // namespace mgs
