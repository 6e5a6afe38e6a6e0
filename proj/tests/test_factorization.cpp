#include <doctest.h>

#include "bgd/corpus.hpp"
#include "bgd/factorization.hpp"

using namespace bgd;

namespace {

using Q = Rational;
const FieldSpec kQ = FieldSpec::rationals();

struct Setup {
  RightBialgebroid<Q> b;
  SepFrobenius<Q> sf;
  MonoidalFunctorFragment<Q> f;
};

Setup forgetful(const WeakBialgebra<Q>& w) {
  auto b = wba_to_bialgebroid(w);
  auto sf = base_sep_frobenius(w);
  auto f = forgetful_fragment(b, sf, {{"A", RightModule<Q>::regular(b.total())}});
  return {b, sf, f};
}

std::vector<std::pair<std::string, WeakBialgebra<Q>>> samples() {
  return {{"Z2", gen_groupoid_wba<Q>({GroupoidKind::group, 1, cyclic_group(2)}, kQ)},
          {"pair2", gen_groupoid_wba<Q>({GroupoidKind::pair, 2, {}}, kQ)},
          {"dual:pair2", gen_dual_groupoid_wba<Q>({GroupoidKind::pair, 2, {}}, kQ)},
          {"discrete2", gen_groupoid_wba<Q>({GroupoidKind::discrete, 2, {}}, kQ)}};
}

}  // namespace

TEST_CASE("forgetful functor is separable Frobenius monoidal") {
  for (const auto& [name, w] : samples()) {
    INFO(name);
    auto s = forgetful(w);
    CHECK_NOTHROW(s.f.validate());
    Report r = functor_frobenius_check(s.f);
    CHECK(r.passed());
    if (!r.passed()) MESSAGE(r.first_failure()->name);
    for (const char* line : {"hexagon", "separability", "frob1", "frob2", "split.gamma-d0-d1", "split.gamma-sigma",
                             "split.d0-tau", "split.d1-tau"}) {
      const AxiomCheck* c = r.find(line);
      REQUIRE_MESSAGE(c != nullptr, line);
      CHECK(c->instances > 0);
    }
  }
}

TEST_CASE("fragment object counts for the pair groupoid") {
  auto s = forgetful(gen_groupoid_wba<Q>({GroupoidKind::pair, 2, {}}, kQ));
  CHECK(s.f.unit_object == "E");
  CHECK(s.f.space("E").dim() == 2);
  CHECK(s.f.space("A").dim() == 4);
  CHECK(s.f.space(s.f.product("A", "A")).dim() == 8);
  CHECK(s.f.pairs.size() == 4);
  CHECK(s.f.triples.size() == 8);
}

TEST_CASE("every pair of the forgetful fragment is strong") {
  for (const auto& [name, w] : samples()) {
    INFO(name);
    auto s = forgetful(w);
    for (const auto& [a, c] : s.f.pairs) {
      auto st = induced_strength(s.f, a, c);
      CHECK(st.essentially_strong);
      CHECK(st.report.passed());
    }
  }
}

TEST_CASE("canonical base") {
  auto z2 = forgetful(gen_groupoid_wba<Q>({GroupoidKind::group, 1, cyclic_group(2)}, kQ));
  CHECK(canonical_base(z2.f).dim() == 1);
  auto p2 = forgetful(gen_groupoid_wba<Q>({GroupoidKind::pair, 2, {}}, kQ));
  Algebra<Q> r = canonical_base(p2.f);
  CHECK(r.dim() == 2);
  CHECK(check_algebra(r).passed());
  CHECK(check_bimodule(canonical_bimodule(p2.f, "A")).passed());
  CHECK(canonical_base(invariants_fragment<Q>(kQ)).dim() == 1);
}

TEST_CASE("canonical base agrees with the reconstructed base") {
  for (const auto& [name, w] : samples()) {
    INFO(name);
    auto s = forgetful(w);
    auto cmp = compare_base(s.b, s.f);
    CHECK(cmp.report.passed());
    CHECK(cmp.map.source.dim() == cmp.map.target.dim());
  }
}

TEST_CASE("derived base Frobenius structure") {
  auto s = forgetful(gen_groupoid_wba<Q>({GroupoidKind::pair, 3, {}}, kQ));
  auto d = derived_base_frobenius(s.f);
  CHECK(check_sep_frobenius(d).passed());
  CHECK(d.base.dim() == 3);
}

TEST_CASE("universal sigma for the identity, scalar and twisted witnesses") {
  auto s = forgetful(gen_groupoid_wba<Q>({GroupoidKind::pair, 2, {}}, kQ));
  auto id = universal_sigma(s.f, identity_witness(s.f));
  CHECK(exactly_equal(id.sigma.map.matrix(), identity_matrix<Q>(2)));

  auto sc = universal_sigma(s.f, scalar_witness(s.f));
  CHECK(sc.sigma.source.dim() == 1);
  CHECK(exactly_equal(sc.sigma.map.matrix().col(0), canonical_base(s.f).unit()));

  Matrix<Q> swap(2, 2);
  swap << Q(0), Q(1), Q(1), Q(0);
  Algebra<Q> r = canonical_base(s.f);
  REQUIRE(check_morphism(AlgMorphism<Q>{r, r, LinMap<Q>(r.space(), r.space(), swap)}).passed());
  auto tw = universal_sigma(s.f, twisted_witness(s.f, swap));
  CHECK(exactly_equal(tw.sigma.map.matrix(), swap));
}

TEST_CASE("a witness whose unit map is not multiplicative is rejected") {
  auto s = forgetful(gen_groupoid_wba<Q>({GroupoidKind::pair, 2, {}}, kQ));
  Matrix<Q> bad = Matrix<Q>::Zero(2, 2);
  bad(0, 0) = Q(1);
  bad(0, 1) = Q(1);
  auto res = analyze_sigma(s.f, twisted_witness(s.f, bad));
  CHECK_FALSE(res.report.passed());
  REQUIRE(res.report.first_failure()->witness.has_value());
  CHECK_THROWS_AS(universal_sigma(s.f, twisted_witness(s.f, bad)), VerificationError);
}

TEST_CASE("zero counit functional G^0 breaks the opmonoidal unit law") {
  auto s = forgetful(gen_groupoid_wba<Q>({GroupoidKind::pair, 2, {}}, kQ));
  REQUIRE(s.f.g0_op.has_value());
  s.f.g0_op->setZero();
  Report r = functor_frobenius_check(s.f);
  CHECK_FALSE(r.passed());
  const AxiomCheck* c = r.find("op-left-unit");
  REQUIRE(c != nullptr);
  CHECK_FALSE(c->passed);
  REQUIRE(c->witness.has_value());
}

TEST_CASE("invariants of Z2") {
  auto f = invariants_fragment<Q>(kQ);
  CHECK(check_fragment(f).passed());
  auto ss = induced_strength(f, "sign", "sign");
  CHECK_FALSE(ss.essentially_strong);
  const AxiomCheck* surj = ss.report.find("surjective");
  REQUIRE(surj != nullptr);
  CHECK_FALSE(surj->passed);
  CHECK(induced_strength(f, "trivial", "sign").essentially_strong);
  CHECK(induced_strength(f, "trivial", "trivial").essentially_strong);
  auto f5 = invariants_fragment<ModP>(FieldSpec::prime(5));
  CHECK_FALSE(induced_strength(f5, "sign", "sign").essentially_strong);
}
