#include "bgd/factorization.hpp"

#include <set>

namespace bgd {

namespace {

std::string shape(Index r, Index c) { return std::to_string(r) + "x" + std::to_string(c); }

void expect_shape(const std::string& what, const auto& m, Index rows, Index cols) {
  if (m.rows() != rows || m.cols() != cols)
    throw std::invalid_argument("fragment: " + what + " must be " + shape(rows, cols) + ", got " +
                                shape(m.rows(), m.cols()));
}

std::string pair_name(const std::string& a, const std::string& b) { return a + "|" + b; }
std::string triple_name(const std::string& a, const std::string& b, const std::string& c) {
  return a + "|" + b + "|" + c;
}

template <class S>
Matrix<S> identity(Index n) {
  return identity_matrix<S>(n);
}

auto decode(std::vector<Index> dims) { return tuple_decoder(std::move(dims)); }

}  // namespace

// -- fragment accessors ------------------------------------------------------

template <class S>
bool MonoidalFunctorFragment<S>::has_object(const std::string& c) const {
  for (const auto& [name, sp] : objects)
    if (name == c) return true;
  return false;
}

template <class S>
const BasedSpace& MonoidalFunctorFragment<S>::space(const std::string& c) const {
  for (const auto& [name, sp] : objects)
    if (name == c) return sp;
  throw std::invalid_argument("fragment has no object '" + c + "'");
}

template <class S>
const std::string& MonoidalFunctorFragment<S>::product(const std::string& a, const std::string& b) const {
  auto it = products.find({a, b});
  if (it == products.end()) throw std::invalid_argument("fragment lacks the product " + pair_name(a, b));
  return it->second;
}

template <class S>
const Matrix<S>& MonoidalFunctorFragment<S>::structure(const std::string& a, const std::string& b) const {
  auto it = g2.find({a, b});
  if (it == g2.end()) throw std::invalid_argument("fragment lacks G2:" + pair_name(a, b));
  return it->second;
}

template <class S>
const Matrix<S>& MonoidalFunctorFragment<S>::co_structure(const std::string& a, const std::string& b) const {
  auto it = g2_op.find({a, b});
  if (it == g2_op.end()) throw std::invalid_argument("fragment lacks G^2:" + pair_name(a, b));
  return it->second;
}

template <class S>
Matrix<S> MonoidalFunctorFragment<S>::left_unitor(const std::string& c) const {
  if (auto it = left_unitors.find(c); it != left_unitors.end()) return it->second;
  Index d = dim(product(unit_object, c));
  if (d != dim(c)) throw std::invalid_argument("fragment lacks lunitor:" + c);
  return identity<S>(d);
}

template <class S>
Matrix<S> MonoidalFunctorFragment<S>::right_unitor(const std::string& c) const {
  if (auto it = right_unitors.find(c); it != right_unitors.end()) return it->second;
  Index d = dim(product(c, unit_object));
  if (d != dim(c)) throw std::invalid_argument("fragment lacks runitor:" + c);
  return identity<S>(d);
}

template <class S>
Matrix<S> MonoidalFunctorFragment<S>::associator(const std::string& a, const std::string& b,
                                                 const std::string& c) const {
  if (auto it = associators.find({a, b, c}); it != associators.end()) return it->second;
  Index from = dim(product(product(a, b), c));
  Index to = dim(product(a, product(b, c)));
  if (from != to) throw std::invalid_argument("fragment lacks assoc:" + triple_name(a, b, c));
  return identity<S>(from);
}

template <class S>
void MonoidalFunctorFragment<S>::validate() const {
  std::set<std::string> names;
  for (const auto& [name, sp] : objects)
    if (!names.insert(name).second) throw std::invalid_argument("fragment lists object '" + name + "' twice");
  if (!has_object(unit_object)) throw std::invalid_argument("fragment unit object '" + unit_object + "' is not listed");
  for (const auto& [ab, c] : products) {
    space(ab.first), space(ab.second), space(c);
  }
  for (const auto& [ab, m] : g2)
    expect_shape("G2:" + pair_name(ab.first, ab.second), m, dim(product(ab.first, ab.second)),
                 dim(ab.first) * dim(ab.second));
  for (const auto& [ab, m] : g2_op)
    expect_shape("G^2:" + pair_name(ab.first, ab.second), m, dim(ab.first) * dim(ab.second),
                 dim(product(ab.first, ab.second)));
  expect_shape("G0", g0, dim(unit_object), 1);
  if (g0_op) expect_shape("G^0", *g0_op, 1, dim(unit_object));
  for (const auto& [c, m] : left_unitors) expect_shape("lunitor:" + c, m, dim(c), dim(product(unit_object, c)));
  for (const auto& [c, m] : right_unitors) expect_shape("runitor:" + c, m, dim(c), dim(product(c, unit_object)));
  for (const auto& [abc, m] : associators) {
    const auto& [a, b, c] = abc;
    expect_shape("assoc:" + triple_name(a, b, c), m, dim(product(a, product(b, c))), dim(product(product(a, b), c)));
  }
  for (const auto& [a, b] : pairs) structure(a, b);
  for (const auto& [a, b, c] : triples) {
    structure(a, b), structure(b, c);
    structure(product(a, b), c), structure(a, product(b, c));
  }
  for (const auto& [name, f] : morphisms) expect_shape("morph:" + name, f.map, dim(f.target), dim(f.source));
}

// -- axioms ------------------------------------------------------------------

namespace {

template <class S>
struct ResolvedMorphism {
  std::string source;
  std::string target;
  Matrix<S> map;
};

template <class S>
ResolvedMorphism<S> resolve(const MonoidalFunctorFragment<S>& f, const std::string& name) {
  if (name.rfind("id:", 0) == 0) {
    std::string c = name.substr(3);
    return {c, c, identity<S>(f.dim(c))};
  }
  auto it = f.morphisms.find(name);
  if (it == f.morphisms.end()) throw std::invalid_argument("fragment has no morphism '" + name + "'");
  return {it->second.source, it->second.target, it->second.map};
}

/// Objects with both unit products, hence a canonical bimodule structure.
template <class S>
std::vector<std::string> unital_objects(const MonoidalFunctorFragment<S>& f) {
  std::vector<std::string> out;
  for (const auto& [c, sp] : f.objects)
    if (f.g2.count({f.unit_object, c}) && f.g2.count({c, f.unit_object})) out.push_back(c);
  return out;
}

template <class S>
std::vector<std::string> unit_objects(const MonoidalFunctorFragment<S>& f, bool left) {
  std::vector<std::string> out;
  for (const auto& [c, sp] : f.objects) {
    ObjectPair key = left ? ObjectPair{f.unit_object, c} : ObjectPair{c, f.unit_object};
    if (f.g2.count(key)) out.push_back(c);
  }
  return out;
}

}  // namespace

template <class S>
Report check_fragment(const MonoidalFunctorFragment<S>& f) {
  f.validate();
  Report report("monoidal functor fragment");
  const std::string& e = f.unit_object;

  CheckBuilder hex("hexagon");
  for (const auto& [a, b, c] : f.triples) {
    const std::string& ab = f.product(a, b);
    const std::string& bc = f.product(b, c);
    Matrix<S> lhs = multiply(f.associator(a, b, c),
                             multiply(f.structure(ab, c), kronecker(f.structure(a, b), identity<S>(f.dim(c)))));
    Matrix<S> rhs = multiply(f.structure(a, bc), kronecker(identity<S>(f.dim(a)), f.structure(b, c)));
    hex.compare(lhs, rhs, decode({f.dim(a), f.dim(b), f.dim(c)}), triple_name(a, b, c));
  }
  report.add(std::move(hex).done());

  CheckBuilder lu("left-unit");
  for (const auto& c : unit_objects(f, true)) {
    Matrix<S> lhs = multiply(f.left_unitor(c), multiply(f.structure(e, c), kronecker(f.g0, identity<S>(f.dim(c)))));
    lu.compare(lhs, identity<S>(f.dim(c)), [](Index j) { return std::vector<Index>{j}; }, c);
  }
  report.add(std::move(lu).done());
  CheckBuilder ru("right-unit");
  for (const auto& c : unit_objects(f, false)) {
    Matrix<S> lhs = multiply(f.right_unitor(c), multiply(f.structure(c, e), kronecker(identity<S>(f.dim(c)), f.g0)));
    ru.compare(lhs, identity<S>(f.dim(c)), [](Index j) { return std::vector<Index>{j}; }, c);
  }
  report.add(std::move(ru).done());

  if (f.opmonoidal()) {
    CheckBuilder ohex("op-hexagon");
    for (const auto& [a, b, c] : f.triples) {
      const std::string& ab = f.product(a, b);
      const std::string& bc = f.product(b, c);
      Matrix<S> lhs = multiply(kronecker(f.co_structure(a, b), identity<S>(f.dim(c))), f.co_structure(ab, c));
      Matrix<S> rhs = multiply(kronecker(identity<S>(f.dim(a)), f.co_structure(b, c)),
                               multiply(f.co_structure(a, bc), f.associator(a, b, c)));
      ohex.compare(lhs, rhs, [](Index j) { return std::vector<Index>{j}; }, triple_name(a, b, c));
    }
    report.add(std::move(ohex).done());
    CheckBuilder olu("op-left-unit");
    for (const auto& c : unit_objects(f, true)) {
      Matrix<S> lhs = multiply(kronecker(*f.g0_op, identity<S>(f.dim(c))), f.co_structure(e, c));
      olu.compare(lhs, f.left_unitor(c), [](Index j) { return std::vector<Index>{j}; }, c);
    }
    report.add(std::move(olu).done());
    CheckBuilder oru("op-right-unit");
    for (const auto& c : unit_objects(f, false)) {
      Matrix<S> lhs = multiply(kronecker(identity<S>(f.dim(c)), *f.g0_op), f.co_structure(c, e));
      oru.compare(lhs, f.right_unitor(c), [](Index j) { return std::vector<Index>{j}; }, c);
    }
    report.add(std::move(oru).done());
  }

  if (!f.morphism_products.empty()) {
    CheckBuilder nat("naturality");
    for (const auto& [fg, m] : f.morphism_products) {
      auto p = resolve(f, fg.first);
      auto q = resolve(f, fg.second);
      expect_shape("morphism product " + pair_name(fg.first, fg.second), m, f.dim(f.product(p.target, q.target)),
                   f.dim(f.product(p.source, q.source)));
      Matrix<S> lhs = multiply(f.structure(p.target, q.target), kronecker(p.map, q.map));
      Matrix<S> rhs = multiply(m, f.structure(p.source, q.source));
      nat.compare(lhs, rhs, decode({f.dim(p.source), f.dim(q.source)}), pair_name(fg.first, fg.second));
    }
    report.add(std::move(nat).done());
  }
  return report;
}

// -- factorization -----------------------------------------------------------

template <class S>
Algebra<S> canonical_base(const MonoidalFunctorFragment<S>& f) {
  const std::string& e = f.unit_object;
  Matrix<S> mul = multiply(f.left_unitor(e), f.structure(e, e));
  Algebra<S> r(f.space(e), std::move(mul), Vector<S>(f.g0.col(0)));
  require(check_algebra(r), "canonical base");
  return r;
}

template <class S>
Bimodule<S> canonical_bimodule(const MonoidalFunctorFragment<S>& f, const std::string& c) {
  const std::string& e = f.unit_object;
  Algebra<S> r = canonical_base(f);
  Matrix<S> lam = multiply(f.left_unitor(c), f.structure(e, c));
  Matrix<S> rho = multiply(f.right_unitor(c), f.structure(c, e));
  Bimodule<S> x(r, r, f.space(c), std::move(lam), std::move(rho));
  require(check_bimodule(x), "canonical bimodule on " + c);
  return x;
}

template <class S>
Strength<S> induced_strength(const MonoidalFunctorFragment<S>& f, const std::string& a, const std::string& b) {
  Bimodule<S> ua = canonical_bimodule(f, a);
  Bimodule<S> ub = canonical_bimodule(f, b);
  Strength<S> out;
  out.tensor = tensor_over(ua, ub, ua.right_algebra());
  out.report = Report("essential strength " + pair_name(a, b));
  const Matrix<S>& g = f.structure(a, b);
  const std::string& ab = f.product(a, b);
  std::string note = pair_name(a, b);

  CheckBuilder coeq("coequalizes");
  Matrix<S> killed = multiply(g, out.tensor.relations().basis());
  coeq.compare(killed, Matrix<S>::Zero(killed.rows(), killed.cols()), [](Index j) { return std::vector<Index>{j}; },
               note);
  bool coequalizes = !coeq.failed();
  out.report.add(std::move(coeq).done());
  if (!coequalizes) throw VerificationError("G2:" + note + " does not coequalize the actions", out.report);

  out.induced = LinMap<S>(out.tensor.space(), f.space(ab), multiply(g, out.tensor.section()));
  CheckBuilder factors("factors");
  factors.compare(multiply(out.induced.matrix(), out.tensor.projection()), g,
                  decode({f.dim(a), f.dim(b)}), note);
  out.report.add(std::move(factors).done());

  CheckBuilder surj("surjective");
  surj.count();
  SubSpace<S> img = SubSpace<S>::span(f.space(ab), g);
  if (img.codim() > 0) {
    Index j = img.free_coordinates().front();
    surj.fail(Witness{{img.rank(), f.dim(ab)}, to_strings(unit_vector<S>(f.dim(ab), j)), {},
                      note + ": image has dimension " + std::to_string(img.rank()) + " < " +
                          std::to_string(f.dim(ab)) + "; this basis vector is not reached"});
  }
  CheckBuilder ker("kernel-is-relations");
  ker.count();
  SubSpace<S> k = kernel(g, tensor(f.space(a), f.space(b)));
  if (!(k == out.tensor.relations())) {
    Index rk = k.rank(), rr = out.tensor.relations().rank();
    Vector<S> extra = Vector<S>::Zero(g.cols());
    for (Index j = 0; j < rk; ++j)
      if (!out.tensor.relations().contains(Vector<S>(k.basis().col(j)))) {
        extra = k.basis().col(j);
        break;
      }
    ker.fail(Witness{{rk, rr}, to_strings(extra), {},
                     note + ": kernel of dimension " + std::to_string(rk) + " against " + std::to_string(rr) +
                         " balancing relations; this kernel vector is not a relation"});
  }
  out.essentially_strong = !surj.failed() && !ker.failed();
  out.report.add(std::move(surj).done());
  out.report.add(std::move(ker).done());
  return out;
}

template <class S>
SigmaResult<S> analyze_sigma(const MonoidalFunctorFragment<S>& f, const FactorizationWitness<S>& w) {
  Algebra<S> r = canonical_base(f);
  const Algebra<S>& s = w.algebra;
  const std::string& e = f.unit_object;
  expect_shape("witness V0", w.unit_map, r.dim(), s.dim());
  SigmaResult<S> out{AlgMorphism<S>{s, r, LinMap<S>(s.space(), r.space(), w.unit_map)}, Report("universal sigma")};
  auto bimodule = [&](const std::string& c) -> const Bimodule<S>& {
    auto it = w.bimodules.find(c);
    if (it == w.bimodules.end()) throw std::invalid_argument("witness has no bimodule for object '" + c + "'");
    if (!(it->second.left_algebra() == s) || !(it->second.right_algebra() == s) || it->second.dim() != f.dim(c))
      throw std::invalid_argument("witness bimodule for '" + c + "' does not match the witness algebra");
    return it->second;
  };
  auto single = [](Index j) { return std::vector<Index>{j}; };

  out.report.merge(check_morphism(out.sigma), "sigma.");
  std::vector<std::string> unital = unital_objects(f);
  std::set<std::string> covered(unital.begin(), unital.end());
  for (const auto& c : unital) out.report.merge(check_bimodule(bimodule(c)), "V[" + c + "].");

  CheckBuilder unit("V0-unit");
  unit.compare(multiply(w.unit_map, Matrix<S>(s.unit())), f.g0, single);
  out.report.add(std::move(unit).done());

  CheckBuilder v0map("V0-bimodule-map");
  const Bimodule<S>& ve = bimodule(e);
  for (Index i = 0; i < s.dim(); ++i) {
    v0map.compare(multiply(w.unit_map, s.left_mult(i)), multiply(ve.left_action(i), w.unit_map), single, "left");
    v0map.compare(multiply(w.unit_map, s.right_mult(i)), multiply(ve.right_action(i), w.unit_map), single, "right");
  }
  out.report.add(std::move(v0map).done());

  CheckBuilder pl("pullback-left");
  CheckBuilder pr("pullback-right");
  for (const auto& c : unital) {
    Bimodule<S> u = canonical_bimodule(f, c);
    const Bimodule<S>& v = bimodule(c);
    for (Index i = 0; i < s.dim(); ++i) {
      Vector<S> si = w.unit_map.col(i);
      pl.compare(u.left_action_by(si), v.left_action(i), [i](Index j) { return std::vector<Index>{i, j}; }, c);
      pr.compare(u.right_action_by(si), v.right_action(i), [i](Index j) { return std::vector<Index>{j, i}; }, c);
    }
  }
  out.report.add(std::move(pl).done());
  out.report.add(std::move(pr).done());

  CheckBuilder bal("structure-balanced");
  CheckBuilder lin("structure-bimodule-map");
  for (const auto& [a, b] : f.pairs) {
    if (!covered.count(a) || !covered.count(b) || !covered.count(f.product(a, b))) continue;
    const Bimodule<S>& va = bimodule(a);
    const Bimodule<S>& vb = bimodule(b);
    const Bimodule<S>& vab = bimodule(f.product(a, b));
    const Matrix<S>& g = f.structure(a, b);
    Matrix<S> ia = identity<S>(f.dim(a)), ib = identity<S>(f.dim(b));
    std::string note = pair_name(a, b);
    for (Index i = 0; i < s.dim(); ++i) {
      Matrix<S> lhs = multiply(g, kronecker(va.right_action(i), ib));
      Matrix<S> rhs = multiply(g, kronecker(ia, vb.left_action(i)));
      bal.compare(lhs, rhs, decode({f.dim(a), f.dim(b)}), note);
      lin.compare(multiply(g, kronecker(va.left_action(i), ib)), multiply(vab.left_action(i), g),
                  decode({f.dim(a), f.dim(b)}), note);
      lin.compare(multiply(g, kronecker(ia, vb.right_action(i))), multiply(vab.right_action(i), g),
                  decode({f.dim(a), f.dim(b)}), note);
    }
  }
  out.report.add(std::move(bal).done());
  out.report.add(std::move(lin).done());
  return out;
}

template <class S>
SigmaResult<S> universal_sigma(const MonoidalFunctorFragment<S>& f, const FactorizationWitness<S>& w) {
  SigmaResult<S> out = analyze_sigma(f, w);
  require(out.report, "universal sigma");
  return out;
}

template <class S>
FactorizationWitness<S> identity_witness(const MonoidalFunctorFragment<S>& f) {
  FactorizationWitness<S> w{canonical_base(f), {}, {}};
  w.unit_map = identity<S>(w.algebra.dim());
  for (const auto& c : unital_objects(f)) w.bimodules.emplace(c, canonical_bimodule(f, c));
  return w;
}

template <class S>
FactorizationWitness<S> scalar_witness(const MonoidalFunctorFragment<S>& f) {
  FactorizationWitness<S> w{Algebra<S>::ground(), {}, f.g0};
  for (const auto& c : unital_objects(f)) {
    const BasedSpace& sp = f.space(c);
    Index d = sp.dim();
    w.bimodules.emplace(c, Bimodule<S>(w.algebra, w.algebra, sp, identity<S>(d), identity<S>(d)));
  }
  return w;
}

template <class S>
FactorizationWitness<S> twisted_witness(const MonoidalFunctorFragment<S>& f, const Matrix<S>& phi) {
  Algebra<S> r = canonical_base(f);
  expect_shape("twist", phi, r.dim(), r.dim());
  FactorizationWitness<S> w{r, {}, phi};
  for (const auto& c : unital_objects(f)) {
    const BasedSpace& sp = f.space(c);
    Bimodule<S> u = canonical_bimodule(f, c);
    std::vector<Matrix<S>> left, right;
    for (Index i = 0; i < r.dim(); ++i) {
      left.push_back(u.left_action_by(Vector<S>(phi.col(i))));
      right.push_back(u.right_action_by(Vector<S>(phi.col(i))));
    }
    w.bimodules.emplace(c, Bimodule<S>::from_actions(r, r, sp, left, right));
  }
  return w;
}

// -- separable Frobenius structures on the functor ---------------------------

template <class S>
SepFrobenius<S> derived_base_frobenius(const MonoidalFunctorFragment<S>& f) {
  if (!f.opmonoidal()) throw std::invalid_argument("fragment has no opmonoidal data");
  const std::string& e = f.unit_object;
  Algebra<S> r = canonical_base(f);
  auto linv = inverse(f.left_unitor(e));
  if (!linv) {
    Report report("derived base Frobenius");
    report.add_failure("unitor-invertible", 1, Witness{{}, {}, {}, "lunitor:" + e + " is singular"});
    throw VerificationError("left unitor of the unit object is not invertible", report);
  }
  Matrix<S> sigma = multiply(f.co_structure(e, e), *linv);
  Vector<S> el = multiply(sigma, f.g0);
  return SepFrobenius<S>{r, *f.g0_op, el};
}

template <class S>
Report functor_frobenius_check(const MonoidalFunctorFragment<S>& f) {
  if (!f.opmonoidal()) throw std::invalid_argument("fragment has no opmonoidal data (G^0, G^2)");
  Report report("separable Frobenius functor");
  report.merge(check_fragment(f), "");
  const std::string& e = f.unit_object;
  auto single = [](Index j) { return std::vector<Index>{j}; };

  CheckBuilder ainv("associator-invertible");
  CheckBuilder frob1("frob1");
  CheckBuilder frob2("frob2");
  for (const auto& [x, y, z] : f.triples) {
    const std::string& xy = f.product(x, y);
    const std::string& yz = f.product(y, z);
    std::string note = triple_name(x, y, z);
    Matrix<S> a = f.associator(x, y, z);
    auto inv = inverse(a);
    ainv.count();
    if (!inv) {
      ainv.fail(Witness{{}, {}, {}, note});
      continue;
    }
    Matrix<S> ix = identity<S>(f.dim(x)), iz = identity<S>(f.dim(z));
    Matrix<S> lhs1 = multiply(kronecker(f.structure(x, y), iz), kronecker(ix, f.co_structure(y, z)));
    Matrix<S> rhs1 = multiply(f.co_structure(xy, z), multiply(*inv, f.structure(x, yz)));
    frob1.compare(lhs1, rhs1, decode({f.dim(x), f.dim(yz)}), note);
    Matrix<S> lhs2 = multiply(kronecker(ix, f.structure(y, z)), kronecker(f.co_structure(x, y), iz));
    Matrix<S> rhs2 = multiply(f.co_structure(x, yz), multiply(a, f.structure(xy, z)));
    frob2.compare(lhs2, rhs2, decode({f.dim(xy), f.dim(z)}), note);
  }
  report.add(std::move(ainv).done());
  report.add(std::move(frob1).done());
  report.add(std::move(frob2).done());

  CheckBuilder sep("separability");
  CheckBuilder gd("split.gamma-d0-d1");
  CheckBuilder gs("split.gamma-sigma");
  CheckBuilder dt0("split.d0-tau");
  CheckBuilder dt1("split.d1-tau");
  for (const auto& [x, y] : f.pairs) {
    std::string note = pair_name(x, y);
    const std::string& xy = f.product(x, y);
    Matrix<S> gamma = f.structure(x, y);
    Matrix<S> sigma = f.co_structure(x, y);
    Matrix<S> ix = identity<S>(f.dim(x)), iy = identity<S>(f.dim(y));
    sep.compare(multiply(gamma, sigma), identity<S>(f.dim(xy)), single, note);

    Matrix<S> d0 = kronecker(ix, multiply(f.left_unitor(y), f.structure(e, y)));
    Matrix<S> d1 = kronecker(multiply(f.right_unitor(x), f.structure(x, e)), iy);
    auto linv = inverse(f.left_unitor(y));
    if (!linv) {
      dt0.fail(Witness{{}, {}, {}, note + ": lunitor:" + y + " is singular"});
      continue;
    }
    Matrix<S> tau = kronecker(ix, multiply(f.co_structure(e, y), *linv));
    auto dims3 = decode({f.dim(x), f.dim(e), f.dim(y)});
    gd.compare(multiply(gamma, d0), multiply(gamma, d1), dims3, note);
    gs.compare(multiply(gamma, sigma), identity<S>(f.dim(xy)), single, note);
    dt0.compare(multiply(d0, tau), identity<S>(f.dim(x) * f.dim(y)), decode({f.dim(x), f.dim(y)}), note);
    dt1.compare(multiply(d1, tau), multiply(sigma, gamma), decode({f.dim(x), f.dim(y)}), note);
  }
  report.add(std::move(sep).done());
  report.add(std::move(gd).done());
  report.add(std::move(gs).done());
  report.add(std::move(dt0).done());
  report.add(std::move(dt1).done());

  try {
    SepFrobenius<S> sf = derived_base_frobenius(f);
    report.merge(check_sep_frobenius(sf), "base.");
    CheckBuilder agree("base.sigma-agrees");
    Matrix<S> direct = multiply(f.co_structure(e, e), *inverse(f.left_unitor(e)));
    agree.compare(sf.sigma(), direct, single);
    report.add(std::move(agree).done());
  } catch (const VerificationError& err) {
    report.merge(err.report(), "base.");
  }
  return report;
}

// -- builders ----------------------------------------------------------------

template <class S>
MonoidalFunctorFragment<S> forgetful_fragment(const RightBialgebroid<S>& b, const SepFrobenius<S>& sf,
                                              const std::vector<std::pair<std::string, RightModule<S>>>& modules,
                                              bool with_triples) {
  const Algebra<S>& A = b.total();
  const Algebra<S>& R = b.base();
  if (!(sf.base == R)) throw std::invalid_argument("forgetful fragment: Frobenius data lives on another algebra");
  MonoidalFunctorFragment<S> f;
  f.unit_object = "E";
  std::map<std::string, RightModule<S>> mods;
  std::map<std::string, Bimodule<S>> bims;
  std::map<ObjectPair, TensorOver<S>> tensors;
  auto add_object = [&](const std::string& name, RightModule<S> m) {
    bims.emplace(name, restrict_to_base(b, m));
    f.objects.emplace_back(name, m.space());
    mods.emplace(name, std::move(m));
  };
  add_object("E", unit_module(b));
  std::vector<std::string> base{"E"};
  for (const auto& [name, m] : modules) {
    if (name.empty() || name.find_first_of("*()|:") != std::string::npos || mods.count(name))
      throw std::invalid_argument("forgetful fragment: bad or duplicate module name '" + name + "'");
    add_object(name, m);
    base.push_back(name);
  }

  auto ensure = [&](const std::string& x, const std::string& y) -> std::string {
    if (auto it = f.products.find({x, y}); it != f.products.end()) return it->second;
    std::string name = "(" + x + "*" + y + ")";
    ModuleProduct<S> p = module_product(b, mods.at(x), mods.at(y));
    f.g2.emplace(ObjectPair{x, y}, p.tensor.projection());
    f.g2_op.emplace(ObjectPair{x, y}, frobenius_section(bims.at(x), bims.at(y), p.tensor, sf).matrix());
    f.products.emplace(ObjectPair{x, y}, name);
    tensors.emplace(ObjectPair{x, y}, p.tensor);
    if (!mods.count(name)) add_object(name, std::move(p.module));
    return name;
  };

  for (const auto& x : base)
    for (const auto& y : base) {
      ensure(x, y);
      f.pairs.emplace_back(x, y);
    }

  if (with_triples) {
    for (const auto& x : base)
      for (const auto& y : base)
        for (const auto& z : base) {
          std::string xy = ensure(x, y), yz = ensure(y, z);
          ensure(xy, z);
          ensure(x, yz);
          const TensorOver<S>& t_xy = tensors.at({x, y});
          const TensorOver<S>& t_xy_z = tensors.at({xy, z});
          const TensorOver<S>& t_yz = tensors.at({y, z});
          const TensorOver<S>& t_x_yz = tensors.at({x, yz});
          Matrix<S> flat = kronecker(t_xy.section(), identity<S>(mods.at(z).dim()));
          Matrix<S> lifted = multiply(flat, t_xy_z.section());
          Matrix<S> regrouped = multiply(kronecker(identity<S>(mods.at(x).dim()), t_yz.projection()), lifted);
          f.associators.emplace(ObjectTriple{x, y, z}, multiply(t_x_yz.projection(), regrouped));
          f.triples.emplace_back(x, y, z);
        }
  }

  // unitors: [r (x) x] -> x <| t(r) and [x (x) r] -> x <| s(r)
  for (const auto& [c, m] : mods) {
    Index d = m.dim(), nr = R.dim();
    Matrix<S> lflat(d, nr * d), rflat(d, d * nr);
    for (Index r = 0; r < nr; ++r) {
      Matrix<S> tr = m.action_by(Vector<S>(b.target().col(r)));
      Matrix<S> sr = m.action_by(Vector<S>(b.source().col(r)));
      lflat.middleCols(r * d, d) = tr;
      for (Index x = 0; x < d; ++x) rflat.col(x * nr + r) = sr.col(x);
    }
    if (auto it = tensors.find({"E", c}); it != tensors.end())
      f.left_unitors.emplace(c, multiply(lflat, it->second.section()));
    if (auto it = tensors.find({c, "E"}); it != tensors.end())
      f.right_unitors.emplace(c, multiply(rflat, it->second.section()));
  }

  f.g0 = Matrix<S>(R.unit());
  f.g0_op = sf.psi;

  // left multiplications on the regular module are module maps
  for (const auto& [name, m] : modules) {
    if (m.dim() != A.dim() || !exactly_equal(m.action(), A.mul())) continue;
    for (Index a = 0; a < A.dim(); ++a) {
      std::string fname = "L" + A.space().label(a) + ":" + name;
      f.morphisms.emplace(fname, typename MonoidalFunctorFragment<S>::Morphism{name, name, A.left_mult(a)});
      const TensorOver<S>& t = tensors.at({name, name});
      Matrix<S> id = identity<S>(A.dim());
      LinMap<S> lm(A.space(), A.space(), A.left_mult(a)), idm(A.space(), A.space(), id);
      f.morphism_products.emplace(ObjectPair{fname, "id:" + name}, induced_on_quotient(lm, idm, t, t).matrix());
      f.morphism_products.emplace(ObjectPair{"id:" + name, fname}, induced_on_quotient(idm, lm, t, t).matrix());
      f.morphism_products.emplace(ObjectPair{fname, fname}, induced_on_quotient(lm, lm, t, t).matrix());
    }
  }
  f.validate();
  return f;
}

template <class S>
BaseComparison<S> compare_base(const RightBialgebroid<S>& b, const MonoidalFunctorFragment<S>& f) {
  BaseComparison<S> out;
  out.report = Report("base comparison");
  BaseReconstruction<S> rec;
  try {
    rec = reconstruct_base(b);
  } catch (const VerificationError& err) {
    out.report.merge(err.report(), "reconstruction.");
    return out;
  }
  out.report.merge(rec.report, "reconstruction.");
  Algebra<S> r = canonical_base(f);
  CheckBuilder shape("same-carrier");
  shape.count();
  if (r.dim() != rec.algebra.dim()) {
    shape.fail(Witness{{r.dim(), rec.algebra.dim()}, {}, {}, "canonical base and reconstructed base differ in dimension"});
    out.report.add(std::move(shape).done());
    return out;
  }
  out.report.add(std::move(shape).done());
  out.map = AlgMorphism<S>{rec.algebra, r, LinMap<S>(rec.algebra.space(), r.space(), rec.comparison.matrix())};
  out.report.merge(check_morphism(out.map), "isomorphism.");
  CheckBuilder bij("isomorphism.bijective");
  bij.count();
  if (!inverse(rec.comparison.matrix())) bij.fail(Witness{{}, {}, {}, "comparison map is singular"});
  out.report.add(std::move(bij).done());
  return out;
}

template <class S>
MonoidalFunctorFragment<S> invariants_fragment(const FieldSpec& field) {
  if (field.characteristic() == 2) throw std::invalid_argument("the sign module is trivial in characteristic 2");
  MonoidalFunctorFragment<S> f;
  f.unit_object = "trivial";
  f.objects.emplace_back("trivial", BasedSpace(std::vector<std::string>{"1"}));
  f.objects.emplace_back("sign", BasedSpace(std::vector<std::string>{}));
  auto times = [](const std::string& a, const std::string& b) { return a == b ? "trivial" : "sign"; };
  S one = make_scalar<S>(field, 1);
  for (const std::string a : {"trivial", "sign"})
    for (const std::string b : {"trivial", "sign"}) {
      std::string ab = times(a, b);
      f.products.emplace(ObjectPair{a, b}, ab);
      Index rows = f.dim(ab), cols = f.dim(a) * f.dim(b);
      Matrix<S> g = Matrix<S>::Zero(rows, cols);
      if (rows == 1 && cols == 1) g(0, 0) = one;
      f.g2.emplace(ObjectPair{a, b}, g);
      f.pairs.emplace_back(a, b);
    }
  for (const std::string a : {"trivial", "sign"})
    for (const std::string b : {"trivial", "sign"})
      for (const std::string c : {"trivial", "sign"}) f.triples.emplace_back(a, b, c);
  f.g0 = Matrix<S>::Constant(1, 1, one);
  f.validate();
  return f;
}

#define BGD_INSTANTIATE_FACTORIZATION(S)                                                                         \
  template struct MonoidalFunctorFragment<S>;                                                                    \
  template Report check_fragment<S>(const MonoidalFunctorFragment<S>&);                                          \
  template Algebra<S> canonical_base<S>(const MonoidalFunctorFragment<S>&);                                      \
  template Bimodule<S> canonical_bimodule<S>(const MonoidalFunctorFragment<S>&, const std::string&);             \
  template Strength<S> induced_strength<S>(const MonoidalFunctorFragment<S>&, const std::string&,                \
                                           const std::string&);                                                  \
  template SigmaResult<S> analyze_sigma<S>(const MonoidalFunctorFragment<S>&, const FactorizationWitness<S>&);   \
  template SigmaResult<S> universal_sigma<S>(const MonoidalFunctorFragment<S>&, const FactorizationWitness<S>&); \
  template FactorizationWitness<S> identity_witness<S>(const MonoidalFunctorFragment<S>&);                       \
  template FactorizationWitness<S> scalar_witness<S>(const MonoidalFunctorFragment<S>&);                         \
  template FactorizationWitness<S> twisted_witness<S>(const MonoidalFunctorFragment<S>&, const Matrix<S>&);      \
  template SepFrobenius<S> derived_base_frobenius<S>(const MonoidalFunctorFragment<S>&);                         \
  template Report functor_frobenius_check<S>(const MonoidalFunctorFragment<S>&);                                 \
  template MonoidalFunctorFragment<S> forgetful_fragment<S>(                                                     \
      const RightBialgebroid<S>&, const SepFrobenius<S>&,                                                        \
      const std::vector<std::pair<std::string, RightModule<S>>>&, bool);                                         \
  template MonoidalFunctorFragment<S> invariants_fragment<S>(const FieldSpec&);                                 \
  template BaseComparison<S> compare_base<S>(const RightBialgebroid<S>&, const MonoidalFunctorFragment<S>&);

BGD_INSTANTIATE_FACTORIZATION(Rational)
BGD_INSTANTIATE_FACTORIZATION(ModP)

}  // namespace bgd
