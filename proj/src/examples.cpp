#include "mgs/examples.hpp"

#include <stdexcept>

namespace mgs {
namespace examples {

Example path(double L) {
  auto m = MetricGraphModel::build({0, 1}, {{0, 0, 1, L}});
  return {std::move(m),
          {{"lambda1_min", 4.0 / L},
           {"h", 1.0 / L},
           {"diam_rho", L},
           {"diam_r", L}}};
}

Example cycle(double L) {
  auto m = MetricGraphModel::build({0, 1}, {{0, 0, 1, L / 2}, {1, 0, 1, L / 2}});
  return {std::move(m),
          {{"lambda1_min", 16.0 / L},
           {"h", 4.0 / L},
           {"diam_rho", L / 2},
           {"diam_r", L / 4}}};
}

Example star(int n, double L) {
  if (n < 2) throw ParseError("star needs n >= 2");
  std::vector<VertexId> vs = {0};
  std::vector<EdgeSpec> es;
  for (int i = 1; i <= n; ++i) {
    vs.push_back(i);
    es.push_back({i - 1, 0, i, L / n});
  }
  auto m = MetricGraphModel::build(vs, es);
  return {std::move(m),
          {{"lambda1_min", 2.0 * n / L},
           {"h", n / L},
           {"diam_rho", 2.0 * L / n},
           {"diam_r", 2.0 * L / n}}};
}

Example complete(int n) {
  if (n < 3) throw ParseError("complete graph needs n >= 3");
  double l = 2.0 / (n * (n - 1.0));
  std::vector<VertexId> vs;
  std::vector<EdgeSpec> es;
  for (int i = 0; i < n; ++i) vs.push_back(i);
  EdgeId id = 0;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) es.push_back({id++, i, j, l});
  auto m = MetricGraphModel::build(vs, es);
  if (n == 3) {
    // K_3 is a circle of length 1: the disjoint-edge-midpoint closed forms
    // need n >= 4, so the cycle values apply instead
    return {std::move(m),
            {{"lambda1_min", 16.0},
             {"h", 4.0},
             {"diam_rho", 0.5},
             {"diam_r", 0.25},
             {"edge_length", l}}};
  }
  double lam = 4.0 * n * n * (n - 1.0) / (n + 2.0);
  return {std::move(m),
          {{"lambda1_min", lam},
           {"h", n * (n - 1.0)},
           {"diam_rho", 4.0 / ((n - 1.0) * n)},
           {"diam_r", 4.0 / lam},
           {"edge_length", l}}};
}

Example pumpkin(int n) {
  if (n < 2) throw ParseError("pumpkin needs n >= 2");
  std::vector<EdgeSpec> es;
  for (int i = 0; i < n; ++i) es.push_back({i, 0, 1, 1.0 / n});
  auto m = MetricGraphModel::build({0, 1}, es);
  return {std::move(m),
          {{"lambda1_min", 8.0 * n},
           {"h", 2.0 * n},
           {"diam_rho", 1.0 / n},
           {"diam_r", 1.0 / (2.0 * n)},
           {"edge_length", 1.0 / n}}};
}

Example butterfly(int n) {
  if (n < 2) throw ParseError("butterfly needs n >= 2");
  // vertices: 0 = x0, 1 = x1, 2 = c
  std::vector<EdgeSpec> es;
  double l = 1.0 / (2.0 * n);
  EdgeId id = 0;
  for (int i = 0; i < n; ++i) es.push_back({id++, 2, 0, l});
  for (int i = 0; i < n; ++i) es.push_back({id++, 2, 1, l});
  auto m = MetricGraphModel::build({0, 1, 2}, es);
  Example ex{std::move(m),
             {{"lambda1_min", 16.0 * (n - 1.0)},
              {"diam_rho", 1.0 / n},
              {"diam_r", 1.0 / (4.0 * (n - 1.0))},
              {"edge_length", l},
              {"minimizer_offset", (n - 2.0) / (4.0 * n * (n - 1.0))}}};
  // the closed-form h = 4n presumes x0 and x1 survive in the essential
  // model, which needs degree n >= 3; B_2's essential model is a
  // figure-eight with h = 4
  ex.golden["h"] = (n >= 3) ? 4.0 * n : 4.0;
  return ex;
}

Example pumpkin_chain(const std::vector<int>& blocks) {
  if (blocks.empty()) throw ParseError("pumpkin chain needs at least one block");
  const int B = static_cast<int>(blocks.size());
  std::vector<VertexId> vs;
  for (int i = 0; i <= B; ++i) vs.push_back(i);
  std::vector<EdgeSpec> es;
  EdgeId id = 0;
  for (int i = 0; i < B; ++i) {
    if (blocks[i] < 1) throw ParseError("block sizes must be >= 1");
    double l = 1.0 / (static_cast<double>(B) * blocks[i]);
    for (int j = 0; j < blocks[i]; ++j) es.push_back({id++, i, i + 1, l});
  }
  auto m = MetricGraphModel::build(vs, es);
  return {std::move(m), {}};
}

Example by_name(const std::string& name, const std::vector<double>& params) {
  auto p = [&](size_t i, double dflt) { return i < params.size() ? params[i] : dflt; };
  if (name == "path") return path(p(0, 1.0));
  if (name == "cycle") return cycle(p(0, 1.0));
  if (name == "star") return star(static_cast<int>(p(0, 3)), p(1, 1.0));
  if (name == "complete") return complete(static_cast<int>(p(0, 4)));
  if (name == "pumpkin") return pumpkin(static_cast<int>(p(0, 3)));
  if (name == "butterfly") return butterfly(static_cast<int>(p(0, 3)));
  if (name == "pumpkin-chain") {
    std::vector<int> blocks;
    for (double d : params) blocks.push_back(static_cast<int>(d));
    if (blocks.empty()) blocks = {2, 2};
    return pumpkin_chain(blocks);
  }
  throw ParseError("unknown example '" + name + "'");
}

}  // namespace examples
}  // namespace mgs
