#include <doctest.h>

#include <cmath>
#include <random>

#include "mgs/examples.hpp"
#include "mgs/optimize.hpp"
#include "support/oracles.hpp"

using namespace mgs;

TEST_CASE("lambda1_min closed forms") {
  auto path = examples::path(1.0);
  auto r = lambda1_min(path.model);
  CHECK(r.value == doctest::Approx(4.0));
  CHECK(r.x.is_vertex());
  CHECK(r.y.is_vertex());

  for (int n : {4, 5, 6}) {
    auto kn = examples::complete(n);
    auto rk = lambda1_min(kn.model);
    CHECK(rk.value == doctest::Approx(kn.golden.at("lambda1_min")).epsilon(1e-9));
    CHECK(kn.model.degree(rk.x) == 2);
    CHECK(kn.model.degree(rk.y) == 2);
  }
  for (int n : {2, 3, 5}) {
    auto g = examples::pumpkin(n);
    CHECK(lambda1_min(g.model).value == doctest::Approx(8.0 * n).epsilon(1e-9));
    auto b = examples::butterfly(n);
    CHECK(lambda1_min(b.model).value == doctest::Approx(16.0 * (n - 1.0)).epsilon(1e-9));
  }
}

TEST_CASE("lambda1_min invariants") {
  for (std::uint64_t seed = 120; seed < 126; ++seed) {
    auto m = oracles::random_graph(seed, 6);
    auto r = lambda1_min(m);
    double rd = resistance(m, r.x, r.y);
    CHECK(r.value * rd == doctest::Approx(4.0).epsilon(1e-9));
    CHECK(m.degree(r.x) <= 2);
    CHECK(m.degree(r.y) <= 2);
    auto [diam, dx, dy] = m.rho_diameter();
    double L = m.total_length();
    CHECK(r.value <= 4.0 * L / (diam * diam) + 1e-9);
    CHECK(r.value >= 4.0 / diam - 1e-9);
    CHECK(r.value <= 4.0 * cheeger_constant(m).h + 1e-9);
  }
}

TEST_CASE("scaling and edge-shortening monotonicity") {
  for (std::uint64_t seed = 130; seed < 133; ++seed) {
    auto m = oracles::random_graph(seed, 5);
    double c = 2.5;
    std::vector<EdgeSpec> scaled = m.edges();
    for (EdgeSpec& e : scaled) e.length *= c;
    auto mc = MetricGraphModel::build(m.vertices(), scaled);
    CHECK(lambda1_min(mc).value == doctest::Approx(lambda1_min(m).value / c).epsilon(1e-9));

    std::vector<EdgeSpec> shorter = m.edges();
    shorter[0].length *= 0.6;
    auto ms = MetricGraphModel::build(m.vertices(), shorter);
    CHECK(lambda1_min(ms).value >= lambda1_min(m).value - 1e-9);
  }
}

TEST_CASE("dirichlet optimal eigenvalue on intervals") {
  for (double L : {1.0, 2.0}) {
    auto m = MetricGraphModel::build({0, 1}, {{0, 0, 1, L}});
    auto [v1, x1] = lambda0_min_dirichlet(m, DirichletSpec{{GraphPoint::at_vertex(1)}});
    CHECK(v1 == doctest::Approx(1.0 / L).epsilon(1e-10));
    CHECK(x1 == GraphPoint::at_vertex(0));

    auto [v2, x2] = lambda0_min_dirichlet(
        m, DirichletSpec{{GraphPoint::at_vertex(0), GraphPoint::at_vertex(1)}});
    CHECK(v2 == doctest::Approx(4.0 / L).epsilon(1e-10));
    CHECK(!x2.is_vertex());
    CHECK(x2.offset == doctest::Approx(L / 2).epsilon(1e-10));
  }
  auto m = examples::path(1.0).model;
  CHECK_THROWS_AS(lambda0_min_dirichlet(m, DirichletSpec{{}}), EmptyBoundary);
}

TEST_CASE("dirichlet value dominates 1/diam") {
  for (std::uint64_t seed = 140; seed < 145; ++seed) {
    auto m = oracles::random_graph(seed, 5);
    std::mt19937_64 rng(seed);
    DirichletSpec A{{oracles::random_point(rng, m)}};
    auto [v, x] = lambda0_min_dirichlet(m, A);
    auto [diam, dx, dy] = m.rho_diameter();
    CHECK(v >= 1.0 / diam - 1e-9);
  }
}

TEST_CASE("partition on the path splits at the midpoint") {
  auto m = examples::path(1.0).model;
  Partition2 p = partition_l2(m);
  REQUIRE(p.cuts.size() == 1);
  CHECK(p.energy == doctest::Approx(4.0).epsilon(1e-9));
  CHECK(p.lambda1 == doctest::Approx(4.0).epsilon(1e-9));
}

TEST_CASE("partition identity holds on examples and random graphs") {
  for (int n : {4, 5}) {
    auto kn = examples::complete(n);
    Partition2 p = partition_l2(kn.model);
    CHECK(p.energy == doctest::Approx(p.lambda1).epsilon(1e-8));
  }
  for (std::uint64_t seed = 150; seed < 155; ++seed) {
    auto m = oracles::random_graph(seed, 5);
    Partition2 p = partition_l2(m);
    CHECK(p.energy == doctest::Approx(p.lambda1).epsilon(1e-8));
  }
}

TEST_CASE("cheeger closed forms") {
  CHECK(cheeger_constant(examples::path(1.0).model).h == doctest::Approx(1.0));
  CHECK(cheeger_constant(examples::cycle(1.0).model).h == doctest::Approx(4.0));
  for (int n : {4, 5, 6})
    CHECK(cheeger_constant(examples::complete(n).model).h ==
          doctest::Approx(n * (n - 1.0)).epsilon(1e-12));
  for (int n : {2, 3, 5})
    CHECK(cheeger_constant(examples::pumpkin(n).model).h == doctest::Approx(2.0 * n));
  // the essential model of B_2 is a figure-eight, so the 4n closed form
  // needs n >= 3
  for (int n : {3, 4, 5})
    CHECK(cheeger_constant(examples::butterfly(n).model).h == doctest::Approx(4.0 * n));
  CHECK(cheeger_constant(examples::butterfly(2).model).h == doctest::Approx(4.0));
}

TEST_CASE("path closed form measures") {
  PathOptimal p1 = lambda_k_min_path(1.0, 1);
  CHECK(p1.value == doctest::Approx(4.0));
  REQUIRE(p1.positions.size() == 2);
  CHECK(p1.masses[0] == doctest::Approx(0.5));

  CHECK(lambda_k_min_path(1.0, 3).value == doctest::Approx(36.0));
  CHECK(lambda_k_min_path(2.0, 1).value == doctest::Approx(2.0));

  // round trip through the spectral solver
  auto m = examples::path(1.0).model;
  for (int k : {1, 2, 3}) {
    PathOptimal po = lambda_k_min_path(1.0, k);
    std::vector<DiscreteMeasure::Atom> atoms;
    for (size_t j = 0; j < po.positions.size(); ++j)
      atoms.push_back({GraphPoint::on_edge(0, po.positions[j]), po.masses[j]});
    auto dec = spectrum(m, DiscreteMeasure(m, std::move(atoms)));
    CHECK(dec.eigenvalues[k] == doctest::Approx(po.value).epsilon(1e-10));
  }
}

TEST_CASE("interlacing bounds") {
  auto path = examples::path(1.0).model;
  auto [lo, hi] = interlacing_bounds(path, 5);
  CHECK(lo == doctest::Approx(100.0));
  CHECK(hi == doctest::Approx(100.0));

  auto [lo0, hi0] = interlacing_bounds(path, 0);
  CHECK(lo0 == 0.0);

  auto cyc = examples::cycle(1.0).model;
  auto [loc, hic] = interlacing_bounds(cyc, 3);
  CHECK(loc == doctest::Approx(16.0));
  CHECK(hic == doctest::Approx(100.0));
}

TEST_CASE("search recovers closed forms") {
  auto path = examples::path(1.0).model;
  SearchOptions opt;
  opt.restarts = 8;
  opt.max_iters = 800;

  KthSearchResult r0 = lambda_k_min_search(path, 0, opt);
  CHECK(r0.value == 0.0);

  KthSearchResult r2 = lambda_k_min_search(path, 2, opt);
  CHECK(r2.converged);
  CHECK(r2.value == doctest::Approx(16.0).epsilon(1e-6));
  REQUIRE(r2.measure.atoms().size() == 3);
  PathOptimal po = lambda_k_min_path(1.0, 2);
  for (size_t i = 0; i < 3; ++i) {
    const auto& a = r2.measure.atoms()[i];
    double pos = a.point.is_vertex() ? (a.point.vertex == 0 ? 0.0 : 1.0) : a.point.offset;
    CHECK(pos == doctest::Approx(po.positions[i]).epsilon(1e-3));
    CHECK(a.mass == doctest::Approx(po.masses[i]).epsilon(1e-3));
  }

  auto cyc = examples::cycle(1.0).model;
  KthSearchResult rc = lambda_k_min_search(cyc, 1, opt);
  CHECK(rc.value == doctest::Approx(16.0).epsilon(1e-5));

  // independent oracle: k = 1 search vs the exact resistance-diameter value
  for (std::uint64_t seed = 160; seed < 162; ++seed) {
    auto m = oracles::random_graph(seed, 4);
    KthSearchResult r1 = lambda_k_min_search(m, 1, opt);
    double exact = lambda1_min(m).value;
    CHECK(r1.value == doctest::Approx(exact).epsilon(1e-5));
    CHECK(r1.value >= exact - 1e-9);  // search can never beat the true minimum
  }
}

TEST_CASE("weyl scan: bounds sandwich the estimates") {
  auto path = examples::path(1.0).model;
  auto rows = weyl_scan(path, 6, {}, true);
  for (const auto& row : rows) {
    CHECK(row.lower_ratio == doctest::Approx(1.0));
    CHECK(row.upper_ratio == doctest::Approx(1.0));
  }

  SearchOptions opt;
  opt.restarts = 2;
  opt.max_iters = 300;
  auto cyc = examples::cycle(1.0).model;
  auto rows2 = weyl_scan(cyc, 5, opt, false);
  for (const auto& row : rows2) {
    CHECK(row.estimate >= row.lower - 1e-9);
    CHECK(row.estimate <= row.upper * (1 + 1e-9));
  }
}
