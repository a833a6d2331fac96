#include <doctest.h>

#include <random>

#include "mgs/examples.hpp"
#include "mgs/harmonic.hpp"
#include "support/oracles.hpp"

using namespace mgs;

TEST_CASE("laplacian assembly") {
  auto m = MetricGraphModel::build({0, 1}, {{0, 0, 1, 1.0}});
  SymMatrix L = assemble_laplacian(m);
  CHECK(L(0, 0) == doctest::Approx(1));
  CHECK(L(0, 1) == doctest::Approx(-1));

  auto par = MetricGraphModel::build({0, 1}, {{0, 0, 1, 1.0}, {1, 0, 1, 1.0}});
  SymMatrix L2 = assemble_laplacian(par);
  CHECK(L2(0, 0) == doctest::Approx(2));
  CHECK(L2(0, 1) == doctest::Approx(-2));

  double a = 0.5, b = 2.0;
  auto p3 = MetricGraphModel::build({0, 1, 2}, {{0, 0, 1, a}, {1, 1, 2, b}});
  SymMatrix L3 = assemble_laplacian(p3);
  CHECK(L3(0, 0) == doctest::Approx(1 / a));
  CHECK(L3(1, 1) == doctest::Approx(1 / a + 1 / b));
  CHECK(L3(1, 2) == doctest::Approx(-1 / b));
  CHECK(L3(0, 2) == doctest::Approx(0));
}

TEST_CASE("harmonic extension on the path is linear") {
  auto m = MetricGraphModel::build({0, 1, 2}, {{0, 0, 1, 0.5}, {1, 1, 2, 0.5}});
  auto f = harmonic_extension(m, {{0, 0.0}, {2, 1.0}});
  CHECK(f.at_vertex(1) == doctest::Approx(0.5));
  CHECK(f(GraphPoint::on_edge(0, 0.25)) == doctest::Approx(0.25));
  CHECK(energy(f) == doctest::Approx(1.0));
}

TEST_CASE("harmonic extension with full boundary is the identity") {
  auto m = examples::star(3, 1.0).model;
  auto f = harmonic_extension(m, {{0, 2.0}, {1, -1.0}, {2, 0.0}, {3, 5.0}});
  CHECK(f.at_vertex(0) == doctest::Approx(2.0));
  CHECK(f.at_vertex(3) == doctest::Approx(5.0));
}

TEST_CASE("3-star center balances its leaves") {
  auto m = examples::star(3, 1.0).model;
  auto f = harmonic_extension(m, {{1, 1.0}, {2, 0.0}, {3, 0.0}});
  CHECK(f.at_vertex(0) == doctest::Approx(1.0 / 3));
  auto [ok, resid] = is_harmonic(f, {0});
  CHECK(ok);
}

TEST_CASE("empty boundary is rejected") {
  auto m = examples::path(1.0).model;
  CHECK_THROWS_AS(harmonic_extension(m, {}), EmptyBoundary);
}

TEST_CASE("energy closed forms") {
  auto m = examples::path(1.0).model;
  auto c = harmonic_extension(m, {{0, 3.0}, {1, 3.0}});
  CHECK(energy(c) == doctest::Approx(0.0));
  auto lin = harmonic_extension(m, {{0, 0.0}, {1, 1.0}});
  CHECK(energy(lin) == doctest::Approx(1.0));
  auto fxy = harmonic_extension(m, {{0, 1.0}, {1, -1.0}});
  CHECK(energy(fxy) == doctest::Approx(4.0));
}

TEST_CASE("is_harmonic flags an unbalanced vertex") {
  auto m = MetricGraphModel::build({0, 1, 2}, {{0, 0, 1, 0.5}, {1, 1, 2, 0.5}});
  Vector vals(3);
  vals << 0.0, 0.9, 1.0;
  PiecewiseLinearFunction f(m, vals);
  auto [ok, resid] = is_harmonic(f, {1});
  CHECK(!ok);
  CHECK(resid > 0.1);

  Vector cst = Vector::Constant(3, 2.5);
  auto [ok2, resid2] = is_harmonic(PiecewiseLinearFunction(m, cst), {0, 1, 2});
  CHECK(ok2);
}

TEST_CASE("reduce_parallel closed forms") {
  auto two = MetricGraphModel::build({0, 1}, {{0, 0, 1, 1.0}, {1, 0, 1, 1.0}});
  auto [m2, l2] = reduce_parallel(two, 0, 1);
  CHECK(l2 == doctest::Approx(0.5));
  CHECK(m2.edges().size() == 1);

  auto three = examples::pumpkin(3).model;
  auto [m3, l3] = reduce_parallel(three, 0, 1);
  CHECK(l3 == doctest::Approx(1.0 / 9));

  auto mixed = MetricGraphModel::build({0, 1}, {{0, 0, 1, 2.0}, {1, 0, 1, 3.0}});
  auto [m4, l4] = reduce_parallel(mixed, 0, 1);
  CHECK(l4 == doctest::Approx(6.0 / 5));

  auto single = examples::path(1.0).model;
  CHECK_THROWS_AS(reduce_parallel(single, 0, 1), NoParallelEdges);
}

TEST_CASE("maximum principle and energy projection on random models") {
  for (std::uint64_t seed = 50; seed < 58; ++seed) {
    auto m = oracles::random_graph(seed, 6);
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    // boundary = two random vertices
    VertexId b0 = m.vertices().front(), b1 = m.vertices().back();
    double v0 = u(rng), v1 = u(rng);
    if (b0 == b1) continue;
    auto f = harmonic_extension(m, {{b0, v0}, {b1, v1}});
    double lo = std::min(v0, v1), hi = std::max(v0, v1);
    for (VertexId v : m.vertices()) {
      CHECK(f.at_vertex(v) >= lo - 1e-12);
      CHECK(f.at_vertex(v) <= hi + 1e-12);
    }
    // energy projection against random competitors with the same boundary
    for (int trial = 0; trial < 5; ++trial) {
      Vector g(m.vertices().size());
      for (int i = 0; i < g.size(); ++i) g[i] = u(rng);
      g[m.vertex_index(b0)] = v0;
      g[m.vertex_index(b1)] = v1;
      CHECK(energy(f) <= energy(PiecewiseLinearFunction(m, g)) + 1e-12);
    }
  }
}

TEST_CASE("harmonic extension is subdivision invariant") {
  for (std::uint64_t seed = 60; seed < 64; ++seed) {
    auto m = oracles::random_graph(seed, 5);
    VertexId b0 = m.vertices().front(), b1 = m.vertices().back();
    if (b0 == b1) continue;
    auto f = harmonic_extension(m, {{b0, 1.0}, {b1, -2.0}});
    std::mt19937_64 rng(seed + 99);
    std::vector<GraphPoint> extra;
    for (int i = 0; i < 4; ++i) extra.push_back(oracles::random_point(rng, m));
    auto [m2, map] = m.subdivide_at(extra);
    auto f2 = harmonic_extension(m2, {{b0, 1.0}, {b1, -2.0}});
    for (VertexId v : m.vertices())
      CHECK(f.at_vertex(v) == doctest::Approx(f2.at_vertex(v)).epsilon(1e-10));
    CHECK(energy(f) == doctest::Approx(energy(f2)).epsilon(1e-10));
  }
}

TEST_CASE("reduce_parallel preserves resistance between surviving vertices") {
  auto pump = examples::pumpkin(4).model;
  // add a tail so there is a vertex outside the bundle
  std::vector<EdgeSpec> es = pump.edges();
  EdgeId next = 0;
  for (const EdgeSpec& e : es) next = std::max(next, e.id);
  es.push_back({next + 1, 1, 7, 0.3});
  std::vector<VertexId> vs = pump.vertices();
  vs.push_back(7);
  auto m = MetricGraphModel::build(vs, es);
  auto [m2, lmerged] = reduce_parallel(m, 0, 1);

  auto f1 = harmonic_extension(m, {{0, 1.0}, {7, 0.0}});
  auto f2 = harmonic_extension(m2, {{0, 1.0}, {7, 0.0}});
  CHECK(energy(f1) == doctest::Approx(energy(f2)).epsilon(1e-10));
}
