#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "mgs/resistance.hpp"
#include "mgs/spectral.hpp"

namespace mgs {

/// lambda_1^min together with its two-point minimizing measure.
struct OptimalFirstEigenvalue {
  double value;                    // 4 / diam_r
  GraphPoint x, y;                 // resistance-diameter argmax pair
  DiscreteMeasure measure;         // (1/2) delta_x + (1/2) delta_y
  PiecewiseLinearFunction eigenfunction;  // f_xy of the pair
};

OptimalFirstEigenvalue lambda1_min(const MetricGraphModel& model);

/// Smallest Dirichlet eigenvalue over Dirac measures:
/// 1 / max_x r_A(x), with the maximizing point.
std::pair<double, GraphPoint> lambda0_min_dirichlet(const MetricGraphModel& model,
                                                    const DirichletSpec& A);

/// A nodal-domain 2-partition induced by the lambda_1^min eigenfunction.
struct Partition2 {
  // cut points (zeros of the eigenfunction) and, per side, the vertices with
  // the matching sign on the refined model below
  MetricGraphModel refined;          // original model subdivided at the cuts
  std::vector<GraphPoint> cuts;      // as points of the refined model (vertices)
  std::vector<VertexId> positive;    // vertices of the closed domain {f >= 0}
  std::vector<VertexId> negative;    // vertices of the closed domain {f <= 0}
  double energy;                     // Lambda(P) = max_i 2 lambda_0^{min,D}(G_i, cuts)
  double lambda1;                    // for the identity Lambda(P) = lambda_1^min
};

Partition2 partition_l2(const MetricGraphModel& model);

/// Cheeger-type constant on an essential model, with which of the three
/// terms (bridge, edge pair, single edge) attains the minimum.
struct CheegerResult {
  double h;
  enum class Witness { Bridge, EdgePair, SingleEdge } witness;
};

CheegerResult cheeger_constant(const MetricGraphModel& model);

/// Closed form on the path of length L: value 4k^2/L and the unique
/// minimizing measure (1/2k) delta_0 + (1/2k) delta_L + sum (1/k) delta_{jL/k}.
struct PathOptimal {
  double value;
  std::vector<double> positions;  // along [0, L]
  std::vector<double> masses;
};

PathOptimal lambda_k_min_path(double L, int k);

/// Interlacing sandwich: lower = 4(k-(#E-1))^2/L for k >= #E-1 else 0;
/// upper = 4(k+2#E-#V)^2/L. Computed on the given (normalized) model.
std::pair<double, double> interlacing_bounds(const MetricGraphModel& model, int k);

struct SearchOptions {
  int restarts = -1;      // default 32*(k+1)
  std::uint64_t seed = 0;
  int max_iters = 2000;
  int threads = 1;
};

struct KthSearchResult {
  int k;
  double value;
  DiscreteMeasure measure;
  double lower, upper;
  int restarts_used;
  bool converged;
  bool extra_atom_improved;  // a k+2-atom probe beat every k+1-atom restart
};

/// Multi-start simplex search for lambda_k^min over (k+1)-atom probability
/// measures. Best effort; `converged` reports whether the result respects
/// the interlacing sandwich.
KthSearchResult lambda_k_min_search(const MetricGraphModel& model, int k,
                                    const SearchOptions& options = {});

struct WeylRow {
  int k;
  double estimate;  // search value, or NaN when bounds_only
  double lower, upper;
  double ratio;     // estimate * L / (4 k^2)
  double lower_ratio, upper_ratio;
};

std::vector<WeylRow> weyl_scan(const MetricGraphModel& model, int k_max,
                               const SearchOptions& options = {}, bool bounds_only = false);

}  // namespace mgs
