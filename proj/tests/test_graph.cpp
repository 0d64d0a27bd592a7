#include <doctest.h>

#include "mcnet/graph.hpp"
#include "mcnet/random.hpp"
#include "mcnet/state.hpp"
#include "oracles.hpp"

#include <cmath>
#include <sstream>

using namespace mcnet;

namespace {

Vector vec(std::initializer_list<double> v) {
  Vector out(static_cast<Index>(v.size()));
  Index i = 0;
  for (double x : v) out(i++) = x;
  return out;
}

}  // namespace

TEST_CASE("load_graph builds P3 and the 4-cycle") {
  const auto p3 = parse_graph("3\n0 1 1\n1 2 1\n");
  CHECK(p3.size() == 3);
  CHECK(p3.degrees().isApprox(vec({1, 2, 1})));
  CHECK(p3.weight(1, 0) == 1.0);
  CHECK(p3.weight(0, 2) == 0.0);

  const auto c4 = parse_graph("# square\n4\n0 1 1\n1 2 1\n2 3 1\n3 0 1\n");
  CHECK(c4.degrees().isApprox(vec({2, 2, 2, 2})));
}

TEST_CASE("load_graph accepts comments, blank lines, tabs and CRLF") {
  const auto g = parse_graph("# header comment\r\n\r\n2\r\n# edge\r\n0\t1\t2.5\r\n");
  CHECK(g.weight(0, 1) == 2.5);
  CHECK(g.weight(1, 0) == 2.5);
}

TEST_CASE("load_graph rejects invalid lines with the offending line number") {
  auto fails_at = [](const char* text, std::size_t line) {
    try {
      parse_graph(text, "g.txt");
    } catch (const ParseError& e) {
      CHECK(e.line() == line);
      CHECK(e.source() == "g.txt");
      return true;
    }
    return false;
  };
  CHECK(fails_at("2\n0 0 1\n", 2));                // self-loop
  CHECK(fails_at("3\n0 1 1\n1 0 2\n", 3));         // duplicate, reversed orientation
  CHECK(fails_at("3\n0 1 1\n0 1 1\n", 3));         // duplicate
  CHECK(fails_at("2\n0 1 -1\n", 2));               // negative weight
  CHECK(fails_at("2\n0 1 0\n", 2));                // zero weight
  CHECK(fails_at("2\n0 2 1\n", 2));                // out of range
  CHECK(fails_at("2\n0 1\n", 2));                  // missing weight
  CHECK(fails_at("# nothing\n", 1));               // no header
  CHECK(fails_at("x\n", 1));
  CHECK(fails_at("0\n", 1));
}

TEST_CASE("load_graph_file reports unreadable paths") {
  CHECK_THROWS_AS(load_graph_file("/nonexistent/graph.txt"), ParseError);
}

TEST_CASE("format_graph round-trips through the parser") {
  Rng rng(11);
  const auto g = random_graph(rng, 9, {});
  const auto back = parse_graph(format_graph(g));
  CHECK(back.weights() == g.weights());
}

TEST_CASE("WeightedGraph enforces its invariants") {
  Matrix asym = Matrix::Zero(2, 2);
  asym(0, 1) = 1.0;
  CHECK_THROWS_AS(WeightedGraph{asym}, DomainError);
  Matrix loop = Matrix::Zero(2, 2);
  loop(0, 0) = 1.0;
  CHECK_THROWS_AS(WeightedGraph{loop}, DomainError);
  Matrix neg = Matrix::Zero(2, 2);
  neg(0, 1) = neg(1, 0) = -1.0;
  CHECK_THROWS_AS(WeightedGraph{neg}, DomainError);
}

TEST_CASE("laplacian of small graphs") {
  const auto p2 = path_graph(2);
  Matrix expect(2, 2);
  expect << 1, -1, -1, 1;
  CHECK(laplacian(p2).laplacian == expect);

  CHECK(laplacian(WeightedGraph::empty(1)).laplacian == Matrix::Zero(1, 1));

  const auto w2 = WeightedGraph::from_edges(2, {{0, 1, 2.0}});
  expect << 2, -2, -2, 2;
  CHECK(laplacian(w2).laplacian == expect);
}

TEST_CASE("laplacian invariants on random graphs") {
  Rng rng(1);
  for (int t = 0; t < 50; ++t) {
    const auto g = random_graph(rng, rng.integer(1, 25), {});
    const auto lv = laplacian(g);
    const double scale = std::max(1.0, lv.laplacian.cwiseAbs().maxCoeff());
    CHECK(lv.laplacian.rowwise().sum().cwiseAbs().maxCoeff() <= 1e-12 * scale);
    CHECK(lv.laplacian.colwise().sum().cwiseAbs().maxCoeff() <= 1e-12 * scale);
    for (Index i = 0; i < g.size(); ++i) {
      CHECK(lv.laplacian(i, i) >= 0.0);
      for (Index j = 0; j < g.size(); ++j)
        if (i != j) CHECK(lv.laplacian(i, j) <= 0.0);
    }
    CHECK(apply_laplacian(lv, Vector::Constant(g.size(), 0.37)).cwiseAbs().maxCoeff() <= 1e-12 * scale);
  }
}

TEST_CASE("apply_laplacian") {
  const auto lv = laplacian(path_graph(2));
  CHECK(apply_laplacian(lv, vec({1, 0})) == vec({1, -1}));
  CHECK_THROWS_AS(apply_laplacian(lv, vec({1, 0, 0})), DomainError);

  Rng rng(2);
  for (int t = 0; t < 100; ++t) {
    const auto g = random_graph(rng, rng.integer(1, 20), {});
    const auto lv2 = laplacian(g);
    Vector x(g.size());
    for (Index i = 0; i < x.size(); ++i) x(i) = rng.uniform(-3, 3);
    const Vector lx = apply_laplacian(lv2, x);
    CHECK((lx - oracle::edge_sum_laplacian(g, x)).cwiseAbs().maxCoeff() <= 1e-12);
    CHECK(std::abs(lx.sum()) <= 1e-10 * std::max(1.0, x.lpNorm<Eigen::Infinity>()));
  }
}

TEST_CASE("quadratic_form uses the unordered edge sum") {
  const auto lv = laplacian(path_graph(2));
  // x.Lx for x = (1, 0) is 1: a single edge contributing w (x0 - x1)^2.
  CHECK(quadratic_form(lv, vec({1, 0})) == doctest::Approx(1.0));
  CHECK(quadratic_form(lv, vec({0.3, 0.3})) == doctest::Approx(0.0));
  CHECK_THROWS_AS(quadratic_form(lv, vec({1})), DomainError);

  Rng rng(3);
  for (int t = 0; t < 50; ++t) {
    const auto g = random_graph(rng, rng.integer(2, 20), {});
    const auto lvg = laplacian(g);
    for (int s = 0; s < 1000 / 50; ++s) {
      Vector x(g.size());
      for (Index i = 0; i < x.size(); ++i) x(i) = rng.uniform(-2, 2);
      const double q = quadratic_form(lvg, x);
      const double ref = oracle::edge_sum_quadratic(g, x);
      CHECK(q >= -1e-12);
      CHECK(std::abs(q - ref) <= 1e-12 * std::max(1.0, std::abs(ref)));
    }
  }
}

TEST_CASE("quadratic form is positive semidefinite under fuzzing") {
  Rng rng(4);
  for (int t = 0; t < 10; ++t) {
    const auto g = random_graph(rng, rng.integer(2, 25), {});
    const auto lv = laplacian(g);
    for (int s = 0; s < 1000; ++s) {
      Vector x(g.size());
      for (Index i = 0; i < x.size(); ++i) x(i) = rng.uniform(-1, 1);
      REQUIRE(quadratic_form(lv, x) >= -1e-12);
    }
  }
}

TEST_CASE("is_connected") {
  CHECK(is_connected(path_graph(3)));
  CHECK_FALSE(is_connected(WeightedGraph::empty(2)));
  CHECK(is_connected(cycle_graph(4)));
  CHECK(is_connected(WeightedGraph::empty(1)));
  CHECK_FALSE(is_connected(WeightedGraph::from_edges(4, {{0, 1, 1.0}, {2, 3, 1.0}})));
}

TEST_CASE("lambda_1 on named graphs") {
  CHECK(lambda_1(path_graph(2)) == doctest::Approx(2.0).epsilon(1e-12));
  CHECK(lambda_1(complete_graph(4)) == doctest::Approx(4.0).epsilon(1e-12));
  CHECK(lambda_1(cycle_graph(4)) == doctest::Approx(2.0).epsilon(1e-12));
  CHECK(lambda_1(circulant_regular(8, 3)) ==
        doctest::Approx(oracle::eigenvalues(laplacian(circulant_regular(8, 3)).laplacian)(1)));
  CHECK_THROWS_AS(lambda_1(WeightedGraph::empty(3)), DomainError);
}

TEST_CASE("Jacobi eigenvalues match a dense symmetric solver") {
  Rng rng(5);
  for (int t = 0; t < 30; ++t) {
    const auto g = random_graph(rng, rng.integer(2, 30), {});
    const Matrix l = laplacian(g).laplacian;
    const Vector mine = symmetric_eigenvalues(l);
    const Vector ref = oracle::eigenvalues(l);
    CHECK((mine - ref).cwiseAbs().maxCoeff() <= 1e-10 * std::max(1.0, ref.maxCoeff()));
  }
}

TEST_CASE("spectral gap inequality (1/N) x.Lx >= lambda_1 Var(x)") {
  Rng rng(6);
  RandomInstanceOptions opts;
  opts.connected = true;
  for (int t = 0; t < 40; ++t) {
    const auto g = random_graph(rng, rng.integer(2, 20), opts);
    const auto lv = laplacian(g);
    const double l1 = lambda_1(g);
    for (int s = 0; s < 50; ++s) {
      Vector x(g.size());
      for (Index i = 0; i < x.size(); ++i) x(i) = rng.uniform(-1, 1);
      const double lhs = quadratic_form(lv, x) / static_cast<double>(g.size());
      CHECK(lhs >= l1 * variance(x) - 1e-9);
    }
  }
}

TEST_CASE("max/min principle for the Laplacian") {
  Rng rng(7);
  RandomInstanceOptions opts;
  opts.connected = true;
  for (int t = 0; t < 200; ++t) {
    const auto g = random_graph(rng, rng.integer(2, 20), opts);
    Vector x(g.size());
    for (Index i = 0; i < x.size(); ++i) x(i) = rng.uniform();
    Index imax = 0;
    Index imin = 0;
    x.maxCoeff(&imax);
    x.minCoeff(&imin);
    const Vector lx = apply_laplacian(laplacian(g), x);
    // Random draws give strict extrema; a connected graph then makes the
    // inequalities strict.
    CHECK(lx(imax) > 0.0);
    CHECK(lx(imin) < 0.0);
  }
}

TEST_CASE("graph builders") {
  CHECK(circulant_regular(8, 3).is_regular());
  CHECK(circulant_regular(8, 3).degree(0) == 3.0);
  CHECK(circulant_regular(5, 4).degrees() == Vector::Constant(5, 4.0));
  CHECK_THROWS_AS(circulant_regular(5, 3), DomainError);
  CHECK(star_graph(5).degree(0) == 4.0);
  CHECK_FALSE(star_graph(5).is_regular());
  CHECK(complete_graph(4).degrees() == Vector::Constant(4, 3.0));
}
