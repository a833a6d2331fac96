#pragma once

#include <map>
#include <string>
#include <vector>

#include "mgs/graph.hpp"

namespace mgs {
namespace examples {

/// A generated model together with its closed-form reference values
/// (keys: lambda1_min, h, diam_rho, diam_r, ... where known).
struct Example {
  MetricGraphModel model;
  std::map<std::string, double> golden;
};

/// Single edge of length L.
Example path(double L = 1.0);

/// Cycle of total length L (two parallel edges of length L/2).
Example cycle(double L = 1.0);

/// Equilateral n-star with total length L (legs of length L/n).
Example star(int n, double L = 1.0);

/// Equilateral complete graph K_n with total length 1 (lengths 2/(n(n-1))).
Example complete(int n);

/// Equilateral n-pumpkin: two vertices joined by n edges of length 1/n.
Example pumpkin(int n);

/// Butterfly B_n: vertices x0, x1, c with n edges c--x0 and n edges c--x1,
/// each of length 1/(2n). Total length 1.
Example butterfly(int n);

/// Pumpkin chain with the given block sizes: consecutive vertices joined by
/// blocks[i] parallel edges of length 1/(#blocks * blocks[i]); total length 1.
Example pumpkin_chain(const std::vector<int>& blocks);

/// Dispatch by name; the vector carries the numeric parameters in order.
Example by_name(const std::string& name, const std::vector<double>& params);

}  // namespace examples
}  // namespace mgs
