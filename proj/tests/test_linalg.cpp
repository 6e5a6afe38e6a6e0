#include <doctest.h>

#include <algorithm>
#include <random>

#include "bgd/linalg.hpp"

using namespace bgd;

namespace {

using Q = Rational;

Matrix<Q> mat(std::initializer_list<std::initializer_list<long long>> rows) {
  Matrix<Q> m(static_cast<Index>(rows.size()), static_cast<Index>(rows.begin()->size()));
  Index i = 0;
  for (const auto& r : rows) {
    Index j = 0;
    for (long long x : r) m(i, j++) = Q(x);
    ++i;
  }
  return m;
}

template <class S>
Matrix<S> random_matrix(std::mt19937& rng, Index rows, Index cols, const FieldSpec& field, int spread = 3) {
  std::uniform_int_distribution<int> d(-spread, spread);
  Matrix<S> m(rows, cols);
  for (Index i = 0; i < rows; ++i)
    for (Index j = 0; j < cols; ++j) m(i, j) = make_scalar<S>(field, d(rng));
  return m;
}

/// Rank-deficient random matrix: product of two thin factors.
template <class S>
Matrix<S> low_rank(std::mt19937& rng, Index rows, Index cols, Index r, const FieldSpec& field) {
  return multiply(random_matrix<S>(rng, rows, r, field), random_matrix<S>(rng, r, cols, field));
}

}  // namespace

TEST_CASE("kernel examples") {
  BasedSpace v3(3);
  CHECK(kernel(LinMap<Q>::identity(v3)).rank() == 0);
  CHECK(kernel(LinMap<Q>::zero(v3, v3)).rank() == 3);
  SubSpace<Q> k = kernel(mat({{1, 1}, {1, 1}}), BasedSpace(2));
  REQUIRE(k.rank() == 1);
  // reduced column echelon: pivot entry 1
  CHECK(exactly_equal(k.basis(), mat({{1}, {-1}})));
}

TEST_CASE("quotient examples") {
  BasedSpace v(2);
  auto q0 = quotient(v, SubSpace<Q>::zero(v));
  CHECK(q0.space.dim() == 2);
  CHECK(exactly_equal(q0.projection.matrix(), identity_matrix<Q>(2)));
  CHECK(quotient(v, SubSpace<Q>::full(v)).space.dim() == 0);
  auto q1 = quotient(v, SubSpace<Q>::span(v, mat({{1}, {-1}})));
  CHECK(q1.space.dim() == 1);
  CHECK(exactly_equal(multiply(q1.projection.matrix(), q1.section.matrix()), identity_matrix<Q>(1)));
}

TEST_CASE("coequalizer examples") {
  BasedSpace k(1), k2(2);
  LinMap<Q> f(k, k2, mat({{1}, {0}})), g(k, k2, mat({{0}, {1}}));
  CHECK(coequalizer(f, f).space.dim() == 2);
  CHECK(exactly_equal(coequalizer(f, f).projection.matrix(), identity_matrix<Q>(2)));
  CHECK(coequalizer(f, g).space.dim() == 1);
  CHECK_THROWS_AS(coequalizer(f, LinMap<Q>(k2, k2, identity_matrix<Q>(2))), std::invalid_argument);
}

TEST_CASE("tensor of maps") {
  BasedSpace v(2), w(3);
  CHECK(tensor(LinMap<Q>::identity(v), LinMap<Q>::identity(w)) == LinMap<Q>::identity(tensor(v, w)));
  LinMap<Q> f(BasedSpace(3), BasedSpace(2), mat({{1, 2, 3}, {4, 5, 6}}));
  LinMap<Q> g(BasedSpace(2), BasedSpace(2), mat({{0, 1}, {1, 0}}));
  LinMap<Q> fg = tensor(f, g);
  CHECK(fg.matrix().rows() == 4);
  CHECK(fg.matrix().cols() == 6);
  for (Index i = 0; i < 3; ++i)
    for (Index j = 0; j < 2; ++j) {
      Vector<Q> lhs = fg(unit_vector<Q>(6, i * 2 + j));
      Vector<Q> rhs = kronecker(Matrix<Q>(f(unit_vector<Q>(3, i))), Matrix<Q>(g(unit_vector<Q>(2, j))));
      CHECK(exactly_equal(lhs, rhs));
    }
}

TEST_CASE("intersect and sum") {
  BasedSpace v(2);
  auto a = SubSpace<Q>::span(v, mat({{1}, {0}}));
  auto b = SubSpace<Q>::span(v, mat({{0}, {1}}));
  std::vector<SubSpace<Q>> one{a}, two{a, b}, none;
  CHECK(intersect<Q>(one, v) == a);
  CHECK(intersect<Q>(two, v).rank() == 0);
  CHECK(intersect<Q>(none, v) == SubSpace<Q>::full(v));
  CHECK(sum(a, b) == SubSpace<Q>::full(v));
}

TEST_CASE("equalizer") {
  BasedSpace v(3), w(2);
  LinMap<Q> f(v, w, mat({{1, 0, 0}, {0, 1, 0}})), g(v, w, mat({{0, 1, 0}, {1, 0, 0}}));
  SubSpace<Q> e = equalizer(f, g);
  CHECK(e.rank() == 2);
  CHECK(e.contains(Vector<Q>(mat({{1}, {1}, {0}}).col(0))));
  CHECK(e.contains(Vector<Q>(unit_vector<Q>(3, 2))));
}

TEST_CASE("property: rank-nullity and kernel annihilation over Q") {
  std::mt19937 rng(11);
  for (int trial = 0; trial < 60; ++trial) {
    Index rows = 1 + trial % 5, cols = 1 + (trial * 7) % 6;
    Index r = 1 + trial % std::min(rows, cols);
    Matrix<Q> m = low_rank<Q>(rng, rows, cols, r, FieldSpec::rationals());
    SubSpace<Q> k = kernel(m, BasedSpace(cols));
    CHECK(k.rank() + rank(m) == cols);
    CHECK(is_zero_matrix(multiply(m, k.basis())));
    CHECK(image(LinMap<Q>(BasedSpace(cols), BasedSpace(rows), m)).rank() == rank(m));
  }
}

TEST_CASE("oracle: kernel over F3 agrees with brute-force enumeration") {
  FieldSpec f3 = FieldSpec::prime(3);
  std::mt19937 rng(5);
  for (int trial = 0; trial < 40; ++trial) {
    Index rows = 1 + trial % 3, cols = 2 + trial % 4;
    Matrix<ModP> m = random_matrix<ModP>(rng, rows, cols, f3, 2);
    SubSpace<ModP> k = kernel(m, BasedSpace(cols));
    std::size_t brute = 0, members = 0, total = 1;
    for (Index i = 0; i < cols; ++i) total *= 3;
    for (std::size_t code = 0; code < total; ++code) {
      Vector<ModP> v(cols);
      std::size_t c = code;
      for (Index i = 0; i < cols; ++i, c /= 3) v(i) = make_scalar<ModP>(f3, static_cast<long long>(c % 3));
      bool in_kernel = is_zero_matrix(multiply(m, Matrix<ModP>(v)));
      brute += in_kernel;
      members += k.contains(v);
      if (in_kernel != k.contains(v)) FAIL("membership disagrees at trial " << trial);
    }
    std::size_t expected = 1;
    for (Index i = 0; i < k.rank(); ++i) expected *= 3;
    CHECK(brute == expected);
    CHECK(members == expected);
  }
}

TEST_CASE_TEMPLATE("property: echelon form is canonical under generator shuffles", S, Rational, ModP) {
  FieldSpec field = std::is_same_v<S, Rational> ? FieldSpec::rationals() : FieldSpec::prime(7);
  std::mt19937 rng(3);
  for (int trial = 0; trial < 40; ++trial) {
    Index dim = 2 + trial % 6, gens = 1 + trial % 5;
    Matrix<S> g = random_matrix<S>(rng, dim, gens, field);
    BasedSpace v(dim);
    auto a = SubSpace<S>::span(v, g);
    // shuffle, rescale and add a redundant combination
    std::vector<Index> order(static_cast<std::size_t>(gens));
    for (Index i = 0; i < gens; ++i) order[static_cast<std::size_t>(i)] = i;
    std::shuffle(order.begin(), order.end(), rng);
    Matrix<S> h(dim, gens + 1);
    for (Index i = 0; i < gens; ++i)
      h.col(i) = g.col(order[static_cast<std::size_t>(i)]) * make_scalar<S>(field, 2 + i % 3);
    h.col(gens) = g.col(0) - make_scalar<S>(field, 3) * g.col(gens - 1);
    auto b = SubSpace<S>::span(v, h);
    CHECK(a == b);
    CHECK(exactly_equal(a.basis(), b.basis()));
  }
}

TEST_CASE_TEMPLATE("property: quotient then lift", S, Rational, ModP) {
  FieldSpec field = std::is_same_v<S, Rational> ? FieldSpec::rationals() : FieldSpec::prime(5);
  std::mt19937 rng(17);
  for (int trial = 0; trial < 30; ++trial) {
    Index dim = 1 + trial % 7;
    BasedSpace v(dim);
    auto w = SubSpace<S>::span(v, random_matrix<S>(rng, dim, trial % 4, field));
    auto q = quotient(v, w);
    CHECK(q.space.dim() == dim - w.rank());
    CHECK(exactly_equal(multiply(q.projection.matrix(), q.section.matrix()), identity_matrix<S>(q.space.dim())));
    CHECK(is_zero_matrix(multiply(q.projection.matrix(), w.basis())));
    CHECK(q.relations == w);
  }
}

TEST_CASE_TEMPLATE("property: coequalizer universality", S, Rational, ModP) {
  FieldSpec field = std::is_same_v<S, Rational> ? FieldSpec::rationals() : FieldSpec::prime(11);
  std::mt19937 rng(23);
  for (int trial = 0; trial < 30; ++trial) {
    Index n = 1 + trial % 3, m = 2 + trial % 5, k = 1 + trial % 4;
    BasedSpace dom(n), cod(m), out(k);
    LinMap<S> f(dom, cod, random_matrix<S>(rng, m, n, field)), g(dom, cod, random_matrix<S>(rng, m, n, field));
    auto q = coequalizer(f, g);
    // any h with h f = h g is (something) * projection
    LinMap<S> h(cod, out, multiply(random_matrix<S>(rng, k, q.space.dim(), field), q.projection.matrix()));
    CHECK(exactly_equal(multiply(h.matrix(), f.matrix()), multiply(h.matrix(), g.matrix())));
    LinMap<S> bar = factor_through(q, h);
    CHECK(exactly_equal(multiply(bar.matrix(), q.projection.matrix()), h.matrix()));
    // a map that does not coequalize is rejected
    if (!exactly_equal(f.matrix(), g.matrix())) {
      Matrix<S> bad = Matrix<S>::Zero(1, m);
      for (Index j = 0; j < m; ++j) bad(0, j) = make_scalar<S>(field, 1 + j * j);
      LinMap<S> hb(cod, BasedSpace(1), bad);
      if (!exactly_equal(multiply(bad, f.matrix()), multiply(bad, g.matrix())))
        CHECK_THROWS_AS(factor_through(q, hb), std::invalid_argument);
    }
  }
}

TEST_CASE("property: flattening is associative") {
  std::mt19937 rng(29);
  FieldSpec q = FieldSpec::rationals();
  for (int trial = 0; trial < 20; ++trial) {
    LinMap<Q> f(BasedSpace(1 + trial % 2), BasedSpace(2), random_matrix<Q>(rng, 2, 1 + trial % 2, q));
    LinMap<Q> g(BasedSpace(3), BasedSpace(1 + trial % 3), random_matrix<Q>(rng, 1 + trial % 3, 3, q));
    LinMap<Q> h(BasedSpace(2), BasedSpace(2), random_matrix<Q>(rng, 2, 2, q));
    CHECK(exactly_equal(tensor(tensor(f, g), h).matrix(), tensor(f, tensor(g, h)).matrix()));
    CHECK(exactly_equal(tensor(f * LinMap<Q>::identity(f.domain()), g).matrix(), tensor(f, g).matrix()));
  }
}

TEST_CASE("inverse and solve") {
  CHECK(exactly_equal(*inverse(mat({{2, 1}, {1, 1}})), mat({{1, -1}, {-1, 2}})));
  CHECK_FALSE(inverse(mat({{1, 1}, {1, 1}})).has_value());
  auto x = solve(mat({{1, 1}, {1, 1}}), mat({{2}, {2}}));
  REQUIRE(x.has_value());
  CHECK(exactly_equal(multiply(mat({{1, 1}, {1, 1}}), *x), mat({{2}, {2}})));
  CHECK_FALSE(solve(mat({{1, 1}, {1, 1}}), mat({{1}, {2}})).has_value());
}
