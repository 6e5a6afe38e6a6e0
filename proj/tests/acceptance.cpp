// One PASS/FAIL line per acceptance criterion. Exit status is the number of
// failures.

#include <functional>
#include <iostream>
#include <sstream>

#include <json.hpp>

#include "bgd/cli.hpp"
#include "bgd/corpus.hpp"
#include "bgd/document.hpp"

using namespace bgd;
using nlohmann::json;

namespace {

using Q = Rational;

struct Outcome {
  bool ok = true;
  std::vector<std::string> notes;

  void expect(bool cond, const std::string& what) {
    if (cond) return;
    ok = false;
    if (notes.size() < 5) notes.push_back(what);
  }
};

template <class S>
struct Named {
  std::string name;
  WeakBialgebra<S> wba;
  /// objects of the groupoid, 0 when not a discrete or pair groupoid
  int objects = 0;
};

template <class S>
std::vector<Named<S>> groupoid_corpus(const FieldSpec& field) {
  std::vector<Named<S>> out;
  for (int n = 1; n <= 4; ++n)
    out.push_back({"discrete" + std::to_string(n), gen_groupoid_wba<S>({GroupoidKind::discrete, n, {}}, field), n});
  for (int n = 2; n <= 3; ++n)
    out.push_back({"pair" + std::to_string(n), gen_groupoid_wba<S>({GroupoidKind::pair, n, {}}, field), n});
  out.push_back({"Z2", gen_groupoid_wba<S>({GroupoidKind::group, 1, cyclic_group(2)}, field)});
  out.push_back({"Z3", gen_groupoid_wba<S>({GroupoidKind::group, 1, cyclic_group(3)}, field)});
  out.push_back({"S3", gen_groupoid_wba<S>({GroupoidKind::group, 1, symmetric_group_3()}, field)});
  return out;
}

template <class S>
std::vector<Named<S>> full_corpus(const FieldSpec& field) {
  auto out = groupoid_corpus<S>(field);
  for (int n = 2; n <= 3; ++n)
    out.push_back({"dual:pair" + std::to_string(n), gen_dual_groupoid_wba<S>({GroupoidKind::pair, n, {}}, field)});
  out.push_back({"dual:Z2", gen_dual_groupoid_wba<S>({GroupoidKind::group, 1, cyclic_group(2)}, field)});
  out.push_back({"dual:S3", gen_dual_groupoid_wba<S>({GroupoidKind::group, 1, symmetric_group_3()}, field)});
  return out;
}

struct Run {
  int code;
  std::string out;
};

Run cli(const std::vector<std::string>& args, const std::string& input) {
  std::istringstream in(input);
  std::ostringstream out, err;
  int code = run_cli(args, in, out, err);
  return {code, out.str()};
}

/// Exit code 1 and at least one failed check carrying a concrete witness.
bool fails_with_witness(const Run& r) {
  if (r.code != 1) return false;
  json c = json::parse(r.out);
  for (const auto& chk : c["checks"]) {
    if (chk["passed"] == true || !chk.contains("witness")) continue;
    const json& w = chk["witness"];
    bool vectors = !w["lhs"].empty() && w["lhs"] != w["rhs"];
    bool note = w.contains("note") && !w["note"].get<std::string>().empty();
    if (vectors || note) return true;
  }
  return false;
}

template <class S>
void criterion1_field(Outcome& o, const FieldSpec& field) {
  for (const auto& c : groupoid_corpus<S>(field)) {
    Report r = check_wba(c.wba);
    o.expect(r.passed(), c.name + " over " + field.name() + ": " + (r.passed() ? "" : r.first_failure()->name));
    if (c.objects > 0) {
      S eps1 = multiply(c.wba.counit, Matrix<S>(c.wba.algebra.unit()))(0, 0);
      o.expect(eps1 == make_scalar<S>(field, c.objects), c.name + ": counit of unit " + eps1.str());
    }
  }
}

Outcome criterion1() {
  Outcome o;
  criterion1_field<Rational>(o, FieldSpec::rationals());
  criterion1_field<ModP>(o, FieldSpec::prime(5));
  criterion1_field<ModP>(o, FieldSpec::prime(7));
  return o;
}

template <class S>
void criterion2_field(Outcome& o, const FieldSpec& field) {
  for (const auto& c : full_corpus<S>(field)) {
    try {
      auto w2 = bialgebroid_to_wba(wba_to_bialgebroid(c.wba), base_sep_frobenius(c.wba));
      o.expect(exactly_equal(w2.coproduct, c.wba.coproduct), c.name + ": coproduct differs");
      o.expect(exactly_equal(w2.counit, c.wba.counit), c.name + ": counit differs");
    } catch (const VerificationError& e) {
      o.expect(false, c.name + ": " + e.what());
    }
  }
}

Outcome criterion2() {
  Outcome o;
  criterion2_field<Rational>(o, FieldSpec::rationals());
  criterion2_field<ModP>(o, FieldSpec::prime(5));
  criterion2_field<ModP>(o, FieldSpec::prime(7));
  return o;
}

Outcome criterion3() {
  Outcome o;
  auto w = gen_groupoid_wba<Q>({GroupoidKind::pair, 2, {}}, FieldSpec::rationals());
  auto b = wba_to_bialgebroid(w);
  auto tk = takeuchi_product(b);
  o.expect(b.total().dim() == 4, "dim A");
  o.expect(b.base().dim() == 2, "dim A^R");
  o.expect(b.tensor_square().space().dim() == 8, "dim A (x)_R A");
  o.expect(tk.space.rank() == 4, "dim Takeuchi");
  for (Index a = 0; a < 4; ++a) o.expect(tk.space.contains(Vector<Q>(b.delta().col(a))), "delta outside Takeuchi");
  o.expect(check_bialgebroid(b).passed(), "bialgebroid axioms");
  // the same numbers through the command line
  Run g = cli({"gen", "pair2"}, "");
  Run d = cli({"derive-bialgebroid", "-"}, g.out);
  json facts = json::parse(d.out)["facts"];
  o.expect(d.code == 0, "derive-bialgebroid exit code");
  o.expect(facts["dim_A"] == 4 && facts["dim_R"] == 2 && facts["dim_tensor_square"] == 8 &&
               facts["dim_takeuchi"] == 4,
           "certificate facts " + facts.dump());
  return o;
}

MonoidalFunctorFragment<Q> forgetful_of(const WeakBialgebra<Q>& w) {
  auto b = wba_to_bialgebroid(w);
  auto sf = base_sep_frobenius(w);
  return forgetful_fragment(b, sf, {{"A", RightModule<Q>::regular(b.total())}});
}

Outcome criterion4() {
  Outcome o;
  for (const auto& c : full_corpus<Q>(FieldSpec::rationals())) {
    auto f = forgetful_of(c.wba);
    Report r = functor_frobenius_check(f);
    for (const char* line : {"split.gamma-d0-d1", "split.gamma-sigma", "split.d0-tau", "split.d1-tau"}) {
      const AxiomCheck* chk = r.find(line);
      o.expect(chk != nullptr && chk->passed && chk->instances > 0 && !f.pairs.empty(), c.name + ": " + line);
    }
    for (const auto& [a, b] : f.pairs)
      o.expect(induced_strength(f, a, b).essentially_strong, c.name + ": strength " + a + "," + b);
  }
  return o;
}

Outcome criterion5() {
  Outcome o;
  for (const auto& c : full_corpus<Q>(FieldSpec::rationals())) {
    auto f = forgetful_of(c.wba);
    auto d = derived_base_frobenius(f);
    o.expect(check_sep_frobenius(d).passed(), c.name + ": derived base Frobenius");
    for (const auto& [a, b] : f.pairs) {
      auto x = canonical_bimodule(f, a), y = canonical_bimodule(f, b);
      auto t = tensor_over(x, y);
      auto sec = frobenius_section(x, y, t, d);
      o.expect(exactly_equal(multiply(t.projection(), sec.matrix()), identity_matrix<Q>(t.space().dim())),
               c.name + ": section " + a + "," + b);
    }
  }
  return o;
}

bool pullbacks_hold(const Report& r) {
  bool any = false;
  for (const auto& chk : r.checks())
    if (chk.name.starts_with("pullback-")) {
      any = true;
      if (!chk.passed) return false;
    }
  return any && r.passed();
}

Outcome criterion6() {
  Outcome o;
  auto w = gen_groupoid_wba<Q>({GroupoidKind::pair, 2, {}}, FieldSpec::rationals());
  auto b = wba_to_bialgebroid(w);
  auto f = forgetful_of(w);
  auto cmp = compare_base(b, f);
  o.expect(cmp.report.passed(), "canonical base comparison");
  o.expect(cmp.map.source.dim() == 2 && cmp.map.target.dim() == 2, "base dimensions");
  Algebra<Q> r = canonical_base(f);

  auto id = analyze_sigma(f, identity_witness(f));
  o.expect(pullbacks_hold(id.report), "identity witness");
  o.expect(exactly_equal(id.sigma.map.matrix(), identity_matrix<Q>(2)), "sigma is the identity");

  auto sc = analyze_sigma(f, scalar_witness(f));
  o.expect(pullbacks_hold(sc.report), "scalar witness");
  o.expect(sc.sigma.map.matrix().cols() == 1 && exactly_equal(sc.sigma.map.matrix().col(0), r.unit()),
           "sigma is the unit map");

  Matrix<Q> swap = Matrix<Q>::Zero(2, 2);
  swap(0, 1) = Q(1);
  swap(1, 0) = Q(1);
  o.expect(check_morphism(AlgMorphism<Q>{r, r, LinMap<Q>(r.space(), r.space(), swap)}).passed(),
           "swap is an automorphism");
  auto tw = analyze_sigma(f, twisted_witness(f, swap));
  o.expect(pullbacks_hold(tw.report), "swapped witness");
  o.expect(exactly_equal(tw.sigma.map.matrix(), swap), "sigma is the swap");
  return o;
}

Outcome criterion7() {
  Outcome o;
  FieldSpec kQ = FieldSpec::rationals();
  auto inv = invariants_fragment<Q>(kQ);
  auto ss = induced_strength(inv, "sign", "sign");
  o.expect(!ss.essentially_strong, "sign,sign reported strong");
  o.expect(ss.tensor.space().dim() == 0 && ss.induced.matrix().rows() == 1 && ss.induced.matrix().cols() == 0,
           "sign,sign is not the map 0 -> k");
  Run gi = cli({"gen", "invariants"}, "");
  Run si = cli({"strength", "-", "--pair", "sign,sign"}, gi.out);
  o.expect(fails_with_witness(si), "strength sign,sign certificate");

  // every single-entry corruption of mul, delta and counit
  std::size_t runs = 0;
  for (const auto& c : groupoid_corpus<Q>(kQ)) {
    if (c.name != "pair2" && c.name != "Z2" && c.name != "discrete2") continue;
    auto probe = [&](const WeakBialgebra<Q>& bad, const std::string& what) {
      ++runs;
      Run r = cli({"check-wba", "-"}, serialize(wba_document(kQ, bad)));
      o.expect(fails_with_witness(r), c.name + ": " + what + " not caught");
    };
    const auto& w = c.wba;
    for (Index i = 0; i < w.algebra.mul().rows(); ++i)
      for (Index j = 0; j < w.algebra.mul().cols(); ++j) {
        Matrix<Q> m = w.algebra.mul();
        m(i, j) = m(i, j) + Q(1);
        probe({Algebra<Q>(w.algebra.space(), m, w.algebra.unit()), w.coproduct, w.counit},
              "mul[" + std::to_string(i) + "," + std::to_string(j) + "]");
      }
    for (Index i = 0; i < w.coproduct.rows(); ++i)
      for (Index j = 0; j < w.coproduct.cols(); ++j) {
        auto bad = w;
        bad.coproduct(i, j) = bad.coproduct(i, j) + Q(1);
        probe(bad, "delta[" + std::to_string(i) + "," + std::to_string(j) + "]");
      }
    for (Index j = 0; j < w.counit.cols(); ++j) {
      auto bad = w;
      bad.counit(0, j) = bad.counit(0, j) + Q(1);
      probe(bad, "counit[" + std::to_string(j) + "]");
    }
  }
  o.expect(runs > 100, "corruption sweep too small");

  Run gf = cli({"gen", "forgetful:pair2"}, "");
  json frag = json::parse(gf.out);
  frag["components"]["G^0"] = json::array();
  Run zero = cli({"frobenius-functor", "-"}, frag.dump());
  o.expect(fails_with_witness(zero), "G^0 = 0 not caught");
  return o;
}

Outcome criterion8() {
  Outcome o;
  struct Case {
    std::string gen;
    std::vector<std::string> args;
  };
  std::vector<Case> cases{{"pair2", {"check-wba", "-"}},
                          {"dual:pair2", {"derive-bialgebroid", "-"}},
                          {"pair2", {"factorize", "-"}},
                          {"forgetful:pair2", {"frobenius-functor", "-"}},
                          {"invariants", {"strength", "-", "--pair", "sign,sign"}},
                          {"S3", {"check-wba", "-", "--format", "text"}},
                          {"pair3", {"check-wba", "-", "--field", "Fp:7"}}};
  for (const auto& c : cases) {
    Run g1 = cli({"gen", c.gen}, ""), g2 = cli({"gen", c.gen}, "");
    o.expect(g1.out == g2.out, "gen " + c.gen + " differs");
    Run a = cli(c.args, g1.out), b = cli(c.args, g1.out);
    o.expect(!a.out.empty() && a.out == b.out, c.args[0] + " on " + c.gen + " differs");
  }
  // no floating-point value anywhere in a certificate
  Run r = cli({"factorize", "-"}, cli({"gen", "pair2"}, "").out);
  std::function<bool(const json&)> has_float = [&](const json& j) {
    if (j.is_number_float()) return true;
    if (j.is_structured())
      for (const auto& v : j) if (has_float(v)) return true;
    return false;
  };
  o.expect(!has_float(json::parse(r.out)), "floating point in certificate");
  return o;
}

}  // namespace

int main() {
  struct Criterion {
    int id;
    const char* text;
    Outcome (*run)();
  };
  const Criterion criteria[] = {
      {1, "weak bialgebra axioms on the groupoid corpus over Q, F5, F7; counit of unit = objects", criterion1},
      {2, "weak bialgebra -> bialgebroid -> weak bialgebra reproduces coproduct and counit", criterion2},
      {3, "pair groupoid on 2 objects: dims 4, 2, 8, 4 and delta in the Takeuchi product", criterion3},
      {4, "split coequalizer identities on forgetful fragments; every listed pair strong", criterion4},
      {5, "derived base Frobenius structure; projection after section is the identity", criterion5},
      {6, "canonical base iso to A^R; sigma = identity, unit map, swap", criterion6},
      {7, "negative controls: invariants not strong; corruptions exit 1 with a witness", criterion7},
      {8, "byte-identical certificates across runs", criterion8},
  };
  int failures = 0;
  for (const auto& c : criteria) {
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o.ok = false;
      o.notes.push_back(std::string("exception: ") + e.what());
    }
    std::cout << (o.ok ? "PASS " : "FAIL ") << c.id << " " << c.text << "\n";
    for (const auto& n : o.notes) std::cout << "     " << n << "\n";
    failures += !o.ok;
  }
  return failures;
}
