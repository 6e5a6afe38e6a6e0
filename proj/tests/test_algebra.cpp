#include <doctest.h>

#include "bgd/corpus.hpp"

using namespace bgd;

namespace {

using Q = Rational;
const FieldSpec kQ = FieldSpec::rationals();

/// k^n with orthogonal idempotents.
template <class S>
Algebra<S> diagonal(Index n) {
  Matrix<S> mul = Matrix<S>::Zero(n, n * n);
  Vector<S> unit(n);
  for (Index i = 0; i < n; ++i) {
    mul(i, i * n + i) = S(1);
    unit(i) = S(1);
  }
  return Algebra<S>(BasedSpace(n), mul, unit);
}

Algebra<Q> m2() { return gen_matrix_frobenius<Q>(2, kQ).base; }

Algebra<Q> group_algebra_z2() {
  return gen_groupoid_wba<Q>({GroupoidKind::group, 1, cyclic_group(2)}, kQ).algebra;
}

}  // namespace

TEST_CASE("algebra examples") {
  CHECK(check_algebra(Algebra<Q>::ground()).passed());
  CHECK(check_algebra(diagonal<Q>(2)).passed());
  CHECK(check_algebra(m2()).passed());
  CHECK(check_algebra(group_algebra_z2()).passed());
}

TEST_CASE("perturbed matrix algebra fails associativity with a witness") {
  Algebra<Q> a = m2();
  // basis E11, E12, E21, E22; set E11 * E12 = 0
  Matrix<Q> mul = a.mul();
  mul.col(0 * 4 + 1).setZero();
  Report r = check_algebra(Algebra<Q>(a.space(), mul, a.unit()));
  CHECK_FALSE(r.passed());
  const AxiomCheck* bad = r.first_failure();
  REQUIRE(bad != nullptr);
  REQUIRE(bad->witness.has_value());
  CHECK(bad->witness->indices.size() >= 1);
  CHECK(bad->witness->lhs != bad->witness->rhs);
}

TEST_CASE("wrong unit fails a unit law") {
  Algebra<Q> a = diagonal<Q>(2);
  Vector<Q> u = a.unit();
  u(1) = Q(0);
  Report r = check_algebra(Algebra<Q>(a.space(), a.mul(), u));
  CHECK_FALSE(r.passed());
  CHECK((!r.find("left-unit")->passed || !r.find("right-unit")->passed));
}

TEST_CASE("subalgebra and morphisms") {
  Algebra<Q> a = m2();
  Matrix<Q> diag = Matrix<Q>::Zero(4, 2);
  diag(0, 0) = Q(1);
  diag(3, 1) = Q(1);
  Algebra<Q> d = subalgebra(a, SubSpace<Q>::span(a.space(), diag));
  CHECK(d.dim() == 2);
  CHECK(check_algebra(d).passed());
  Matrix<Q> upper = Matrix<Q>::Zero(4, 1);
  upper(1, 0) = Q(1);
  CHECK_THROWS_AS(subalgebra(a, SubSpace<Q>::span(a.space(), upper)), VerificationError);

  Algebra<Q> k = Algebra<Q>::ground();
  Matrix<Q> unit_map(4, 1);
  unit_map.col(0) = a.unit();
  CHECK(check_morphism(AlgMorphism<Q>{k, a, LinMap<Q>(k.space(), a.space(), unit_map)}).passed());
  Matrix<Q> e11 = Matrix<Q>::Zero(4, 1);
  e11(0, 0) = Q(1);
  CHECK_FALSE(check_morphism(AlgMorphism<Q>{k, a, LinMap<Q>(k.space(), a.space(), e11)}).passed());
}

TEST_CASE("bimodule examples") {
  Algebra<Q> a = diagonal<Q>(2);
  CHECK(check_bimodule(Bimodule<Q>::regular(a)).passed());
  CHECK(check_bimodule(Bimodule<Q>::regular(m2())).passed());

  // lambda(1 (x) x) = 0
  Bimodule<Q> reg = Bimodule<Q>::regular(a);
  Bimodule<Q> broken(a, a, reg.space(), Matrix<Q>::Zero(2, 4), reg.rho());
  Report r = check_bimodule(broken);
  CHECK_FALSE(r.passed());
  CHECK_FALSE(r.find("left-unit")->passed);
  CHECK(r.find("right-unit")->passed);
}

TEST_CASE("module examples and hom spaces") {
  Algebra<Q> z2 = group_algebra_z2();
  auto reg = RightModule<Q>::regular(z2);
  CHECK(check_module(reg).passed());
  CHECK(module_hom_space(reg, reg).rank() == 2);

  Algebra<Q> m = m2();
  auto regm = RightModule<Q>::regular(m);
  CHECK(module_hom_space(regm, regm).rank() == 4);

  // row vectors k^2 as a right M_2 module: x <| E_ij sends e_i to e_j
  std::vector<Matrix<Q>> acts;
  for (Index i = 0; i < 2; ++i)
    for (Index j = 0; j < 2; ++j) {
      Matrix<Q> t = Matrix<Q>::Zero(2, 2);
      t(j, i) = Q(1);
      acts.push_back(t);
    }
  auto simple = RightModule<Q>::from_actions(m, BasedSpace(2), acts);
  CHECK(check_module(simple).passed());
  CHECK(module_hom_space(simple, simple).rank() == 1);
  CHECK(module_hom_space(regm, simple).rank() == 2);
}

TEST_CASE("tensor over an algebra: dimensions") {
  Algebra<Q> k = Algebra<Q>::ground();
  Algebra<Q> d2 = diagonal<Q>(2);
  auto k2 = Bimodule<Q>::regular(d2);
  // over k the quotient is the plain tensor product
  std::vector<Matrix<Q>> id2{identity_matrix<Q>(2)};
  Bimodule<Q> x = Bimodule<Q>::from_actions(k, k, BasedSpace(2), id2, id2);
  Bimodule<Q> y = Bimodule<Q>::from_actions(k, k, BasedSpace(3), {identity_matrix<Q>(3)}, {identity_matrix<Q>(3)});
  auto kk = tensor_over(x, y);
  CHECK(kk.space().dim() == 6);
  CHECK(kk.relations().rank() == 0);

  auto dd = tensor_over(k2, k2);
  CHECK(dd.space().dim() == 2);
  CHECK(dd.relations().rank() + dd.space().dim() == 4);
  CHECK(check_bimodule(dd.bimodule).passed());

  auto mm = tensor_over(Bimodule<Q>::regular(m2()), Bimodule<Q>::regular(m2()));
  CHECK(mm.space().dim() == 4);

  auto pair2 = gen_groupoid_wba<Q>({GroupoidKind::pair, 2, {}}, kQ);
  auto b = wba_to_bialgebroid(pair2);
  CHECK(b.tensor_square().space().dim() == 8);

  CHECK_THROWS_AS(tensor_over(k2, Bimodule<Q>::regular(m2())), std::invalid_argument);
}

TEST_CASE("induced maps on tensor quotients") {
  Algebra<Q> d2 = diagonal<Q>(2);
  auto x = Bimodule<Q>::regular(d2);
  auto t = tensor_over(x, x);
  auto id = LinMap<Q>::identity(x.space());
  auto ind = induced_on_quotient(id, id, t, t);
  CHECK(exactly_equal(ind.matrix(), identity_matrix<Q>(t.space().dim())));
  auto zero = LinMap<Q>::zero(x.space(), x.space());
  CHECK(is_zero_matrix(induced_on_quotient(zero, id, t, t).matrix()));
}

TEST_CASE("opposite algebra") {
  Algebra<Q> m = m2();
  Algebra<Q> op = m.opposite();
  CHECK(check_algebra(op).passed());
  for (Index i = 0; i < 4; ++i)
    for (Index j = 0; j < 4; ++j)
      CHECK(exactly_equal(op.product(op.basis_vector(i), op.basis_vector(j)),
                          m.product(m.basis_vector(j), m.basis_vector(i))));
  CHECK(m.opposite().opposite() == m);
}
