#include "bgd/bialgebroid.hpp"

namespace bgd {

namespace {

void expect(bool ok, const std::string& what) {
  if (!ok) throw std::invalid_argument("bialgebroid: " + what);
}

std::vector<Index> one_index(Index j) { return {j}; }

}  // namespace

template <class S>
RightBialgebroid<S>::RightBialgebroid(Algebra<S> a, Algebra<S> r, Matrix<S> s, Matrix<S> t, Matrix<S> counit)
    : a_(std::move(a)), r_(std::move(r)), s_(std::move(s)), t_(std::move(t)), eps_(std::move(counit)) {
  Index n = a_.dim(), m = r_.dim();
  expect(s_.rows() == n && s_.cols() == m, "source must be dim A x dim R");
  expect(t_.rows() == n && t_.cols() == m, "target must be dim A x dim R");
  expect(eps_.rows() == m && eps_.cols() == n, "counit must be dim R x dim A");
  std::vector<Matrix<S>> left, right;
  for (Index i = 0; i < m; ++i) {
    left.push_back(a_.right_mult(Vector<S>(t_.col(i))));
    right.push_back(a_.right_mult(Vector<S>(s_.col(i))));
  }
  bimodule_ = Bimodule<S>::from_actions(r_, r_, a_.space(), left, right);
  square_ = tensor_over(bimodule_, bimodule_, r_);
}

template <class S>
RightBialgebroid<S> RightBialgebroid<S>::from_quotient(Algebra<S> a, Algebra<S> r, Matrix<S> s, Matrix<S> t,
                                                       Matrix<S> delta, Matrix<S> counit) {
  RightBialgebroid b(std::move(a), std::move(r), std::move(s), std::move(t), std::move(counit));
  expect(delta.rows() == b.square_.space().dim() && delta.cols() == b.a_.dim(),
         "coproduct must be dim(A (x)_R A) x dim A = " + std::to_string(b.square_.space().dim()) + "x" +
             std::to_string(b.a_.dim()));
  b.delta_ = std::move(delta);
  return b;
}

template <class S>
RightBialgebroid<S> RightBialgebroid<S>::from_lift(Algebra<S> a, Algebra<S> r, Matrix<S> s, Matrix<S> t,
                                                   Matrix<S> delta_lift, Matrix<S> counit) {
  RightBialgebroid b(std::move(a), std::move(r), std::move(s), std::move(t), std::move(counit));
  Index n = b.a_.dim();
  expect(delta_lift.rows() == n * n && delta_lift.cols() == n, "coproduct lift must be dim A^2 x dim A");
  b.delta_ = multiply(b.square_.projection(), delta_lift);
  return b;
}

template <class S>
Vector<S> tensor_square_product(const Algebra<S>& a, const Vector<S>& u, const Vector<S>& v) {
  Index n = a.dim();
  Vector<S> out = Vector<S>::Zero(n * n);
  for (Index p = 0; p < n * n; ++p) {
    if (is_zero(u(p))) continue;
    for (Index q = 0; q < n * n; ++q) {
      if (is_zero(v(q))) continue;
      S c = u(p) * v(q);
      const auto x = a.mul().col((p / n) * n + q / n);
      const auto y = a.mul().col((p % n) * n + q % n);
      for (Index i = 0; i < n; ++i) {
        if (is_zero(x(i))) continue;
        S cx = c * x(i);
        for (Index j = 0; j < n; ++j)
          if (!is_zero(y(j))) out(i * n + j) += cx * y(j);
      }
    }
  }
  return out;
}

template <class S>
Takeuchi<S> analyze_takeuchi(const RightBialgebroid<S>& b) {
  const auto& A = b.total();
  const auto& sq = b.tensor_square();
  Index n = A.dim(), m = b.base().dim(), q = sq.space().dim();
  const auto& P = sq.projection();
  const auto& free = sq.relations().free_coordinates();
  Matrix<S> id = identity_matrix<S>(n);
  // [a (x) b] -> [s(r) a (x) b] - [a (x) t(r) b], one block of rows per basis r
  Matrix<S> d(m * q, q);
  for (Index r = 0; r < m; ++r) {
    Matrix<S> ls = A.left_mult(Vector<S>(b.source().col(r)));
    Matrix<S> lt = A.left_mult(Vector<S>(b.target().col(r)));
    Matrix<S> flat = kronecker_columns<S>(ls, id, free) - kronecker_columns<S>(id, lt, free);
    d.middleRows(r * q, q) = multiply(P, flat);
  }
  Takeuchi<S> out;
  out.report = Report("takeuchi");
  out.space = kernel(d, sq.space());
  Index k = out.space.rank();
  Matrix<S> lifts = multiply(sq.section(), out.space.basis());

  CheckBuilder unit("unit");
  unit.count();
  Vector<S> one = multiply(P, kronecker(Matrix<S>(A.unit()), Matrix<S>(A.unit())));
  if (!out.space.contains(one)) unit.fail(Witness{{}, to_strings(one), {}, "[1 (x) 1] is not in the Takeuchi subspace"});

  CheckBuilder closure("closure");
  Matrix<S> mul = Matrix<S>::Zero(k, k * k);
  for (Index i = 0; i < k; ++i)
    for (Index j = 0; j < k; ++j) {
      closure.count();
      Vector<S> p = multiply(P, tensor_square_product(A, Vector<S>(lifts.col(i)), Vector<S>(lifts.col(j))));
      if (!out.space.contains(p)) {
        closure.fail(Witness{{i, j}, to_strings(p), {}, "product leaves the Takeuchi subspace"});
        continue;
      }
      mul.col(i * k + j) = out.space.coordinates(p);
    }

  CheckBuilder lifts_ok("lift-independence");
  const Matrix<S>& rel = sq.relations().basis();
  for (Index w = 0; w < rel.cols() && !lifts_ok.failed(); ++w)
    for (Index j = 0; j < k; ++j) {
      lifts_ok.count(2);
      Vector<S> wl = multiply(P, tensor_square_product(A, Vector<S>(rel.col(w)), Vector<S>(lifts.col(j))));
      Vector<S> lw = multiply(P, tensor_square_product(A, Vector<S>(lifts.col(j)), Vector<S>(rel.col(w))));
      if (!is_zero_matrix(wl) || !is_zero_matrix(lw)) {
        lifts_ok.fail(Witness{{w, j}, to_strings(wl), to_strings(lw), "relation times Takeuchi lift is nonzero"});
        break;
      }
    }
  bool ok = !unit.failed() && !closure.failed() && !lifts_ok.failed();
  out.report.add(std::move(unit).done());
  out.report.add(std::move(closure).done());
  out.report.add(std::move(lifts_ok).done());
  if (ok) out.algebra = Algebra<S>(BasedSpace(k, "t"), std::move(mul), out.space.coordinates(one));
  return out;
}

template <class S>
Takeuchi<S> takeuchi_product(const RightBialgebroid<S>& b) {
  Takeuchi<S> t = analyze_takeuchi(b);
  require(t.report, "Takeuchi product");
  return t;
}

template <class S>
Report check_bialgebroid(const RightBialgebroid<S>& b) {
  const auto& A = b.total();
  const auto& R = b.base();
  const auto& sq = b.tensor_square();
  Index n = A.dim(), m = R.dim();
  const Matrix<S>& s = b.source();
  const Matrix<S>& t = b.target();
  const Matrix<S>& eps = b.counit();
  const Matrix<S>& delta = b.delta();
  const Matrix<S>& P = sq.projection();
  Matrix<S> lift = b.delta_lift();
  Matrix<S> id = identity_matrix<S>(n);

  Report report("right bialgebroid");
  report.merge(check_algebra(A), "A.");
  report.merge(check_algebra(R), "R.");
  report.merge(check_morphism(AlgMorphism<S>{R, A, LinMap<S>(R.space(), A.space(), s)}), "source.");
  report.merge(check_morphism(AlgMorphism<S>{R.opposite(), A, LinMap<S>(R.space(), A.space(), t)}), "target.");

  CheckBuilder st("source-target-commute");
  for (Index r = 0; r < m && !st.failed(); ++r)
    for (Index u = 0; u < m; ++u) {
      st.count();
      Vector<S> sr = s.col(r), tu = t.col(u);
      Vector<S> lhs = A.product(sr, tu), rhs = A.product(tu, sr);
      if (!exactly_equal(lhs, rhs)) st.fail(Witness{{r, u}, to_strings(lhs), to_strings(rhs), {}});
    }
  report.add(std::move(st).done());

  report.merge(check_bimodule(b.bimodule()), "bimodule.");

  CheckBuilder dmap("delta-bimodule-map");
  CheckBuilder emap("counit-bimodule-map");
  for (Index r = 0; r < m; ++r) {
    auto at = [r](Index a) { return std::vector<Index>{r, a}; };
    dmap.compare(multiply(delta, b.bimodule().left_action(r)), multiply(sq.bimodule.left_action(r), delta), at);
    dmap.compare(multiply(delta, b.bimodule().right_action(r)), multiply(sq.bimodule.right_action(r), delta), at);
    emap.compare(multiply(eps, b.bimodule().left_action(r)), multiply(R.left_mult(r), eps), at);
    emap.compare(multiply(eps, b.bimodule().right_action(r)), multiply(R.right_mult(r), eps), at);
  }
  report.add(std::move(dmap).done());
  report.add(std::move(emap).done());

  // A (x)_R A (x)_R A as the quotient of the flat triple tensor
  {
    const Matrix<S>& rel = sq.relations().basis();
    std::vector<SparseVector<S>> gens;
    for (Index w = 0; w < rel.cols(); ++w) {
      SparseVector<S> sw = to_sparse(rel.col(w));
      for (Index c = 0; c < n; ++c) {
        SparseVector<S> g1, g2;
        for (const auto& [i, x] : sw) g1.emplace_back(i * n + c, x);
        for (const auto& [i, x] : sw) g2.emplace_back(c * n * n + i, x);
        gens.push_back(std::move(g1));
        gens.push_back(std::move(g2));
      }
    }
    BasedSpace triple = tensor(tensor(A.space(), A.space()), A.space());
    Quotient<S> q3 = quotient(triple, SubSpace<S>::span_sparse(triple, gens));
    const Matrix<S>& p3 = q3.projection.matrix();
    CheckBuilder coassoc("coassociativity");
    coassoc.compare(multiply(p3, kronecker_apply(lift, id, lift)), multiply(p3, kronecker_apply(id, lift, lift)),
                    one_index);
    report.add(std::move(coassoc).done());
  }

  Matrix<S> cl(n, n * n), cr(n, n * n);
  for (Index a = 0; a < n; ++a)
    for (Index c = 0; c < n; ++c) {
      Vector<S> te = multiply(t, Matrix<S>(eps.col(a)));
      Vector<S> se = multiply(s, Matrix<S>(eps.col(c)));
      cl.col(a * n + c) = A.product(A.basis_vector(c), te);
      cr.col(a * n + c) = A.product(A.basis_vector(a), se);
    }
  CheckBuilder cleft("counit-left");
  cleft.compare(multiply(cl, lift), id, one_index);
  report.add(std::move(cleft).done());
  CheckBuilder cright("counit-right");
  cright.compare(multiply(cr, lift), id, one_index);
  report.add(std::move(cright).done());

  Matrix<S> eab = multiply(eps, A.mul());
  Matrix<S> via_s(m, n * n), via_t(m, n * n);
  for (Index a = 0; a < n; ++a) {
    Matrix<S> ls = A.left_mult(Vector<S>(multiply(s, Matrix<S>(eps.col(a)))));
    Matrix<S> lt = A.left_mult(Vector<S>(multiply(t, Matrix<S>(eps.col(a)))));
    via_s.middleCols(a * n, n) = multiply(eps, ls);
    via_t.middleCols(a * n, n) = multiply(eps, lt);
  }
  CheckBuilder cs("counit-via-source");
  cs.compare(via_s, eab, tuple_decoder({n, n}));
  report.add(std::move(cs).done());
  CheckBuilder ct("counit-via-target");
  ct.compare(via_t, eab, tuple_decoder({n, n}));
  report.add(std::move(ct).done());
  CheckBuilder cu("counit-unit");
  cu.compare(multiply(eps, Matrix<S>(A.unit())), Matrix<S>(R.unit()), [](Index) { return std::vector<Index>{}; });
  report.add(std::move(cu).done());

  Takeuchi<S> tk = analyze_takeuchi(b);
  report.merge(tk.report, "takeuchi.");
  CheckBuilder contained("delta-in-takeuchi");
  Matrix<S> off = multiply(tk.space.equations(), delta);
  contained.compare(off, Matrix<S>::Zero(off.rows(), off.cols()), one_index);
  report.add(std::move(contained).done());

  CheckBuilder mult("delta-multiplicative");
  Matrix<S> prod(sq.space().dim(), n * n);
  for (Index a = 0; a < n; ++a)
    for (Index c = 0; c < n; ++c)
      prod.col(a * n + c) = multiply(P, tensor_square_product(A, Vector<S>(lift.col(a)), Vector<S>(lift.col(c))));
  mult.compare(multiply(delta, A.mul()), prod, tuple_decoder({n, n}));
  report.add(std::move(mult).done());
  CheckBuilder du("delta-unit");
  du.compare(multiply(delta, Matrix<S>(A.unit())), multiply(P, kronecker(Matrix<S>(A.unit()), Matrix<S>(A.unit()))),
             [](Index) { return std::vector<Index>{}; });
  report.add(std::move(du).done());
  return report;
}

template <class S>
Bimodule<S> restrict_to_base(const RightBialgebroid<S>& b, const RightModule<S>& x) {
  if (!(x.algebra() == b.total())) throw std::invalid_argument("restrict_to_base: module over a different algebra");
  std::vector<Matrix<S>> left, right;
  for (Index r = 0; r < b.base().dim(); ++r) {
    left.push_back(x.action_by(Vector<S>(b.target().col(r))));
    right.push_back(x.action_by(Vector<S>(b.source().col(r))));
  }
  return Bimodule<S>::from_actions(b.base(), b.base(), x.space(), left, right);
}

template <class S>
ModuleProduct<S> module_product(const RightBialgebroid<S>& b, const RightModule<S>& x, const RightModule<S>& y) {
  Bimodule<S> xb = restrict_to_base(b, x);
  Bimodule<S> yb = restrict_to_base(b, y);
  ModuleProduct<S> out{tensor_over(xb, yb, b.base()), {}};
  Index n = b.total().dim();
  Matrix<S> lift = b.delta_lift();
  std::vector<Matrix<S>> xa, ya, acts;
  for (Index a = 0; a < n; ++a) {
    xa.push_back(x.action(a));
    ya.push_back(y.action(a));
  }
  for (Index a = 0; a < n; ++a) {
    Matrix<S> flat = Matrix<S>::Zero(x.dim() * y.dim(), x.dim() * y.dim());
    for (Index p = 0; p < n * n; ++p)
      if (!is_zero(lift(p, a))) flat += lift(p, a) * kronecker(xa[p / n], ya[p % n]);
    acts.push_back(descend(flat, out.tensor.quotient, out.tensor.quotient, "module product action"));
  }
  out.module = RightModule<S>::from_actions(b.total(), out.tensor.space(), acts);
  require(check_module(out.module), "module product");
  return out;
}

template <class S>
RightModule<S> unit_module(const RightBialgebroid<S>& b) {
  const auto& A = b.total();
  Index n = A.dim(), m = b.base().dim();
  Matrix<S> act(m, m * n);
  for (Index r = 0; r < m; ++r)
    act.middleCols(r * n, n) = multiply(b.counit(), A.left_mult(Vector<S>(b.source().col(r))));
  RightModule<S> e(A, b.base().space(), std::move(act));
  require(check_module(e), "unit module");
  return e;
}

template <class S>
BaseReconstruction<S> reconstruct_base(const RightBialgebroid<S>& b) {
  const auto& A = b.total();
  const auto& R = b.base();
  Index n = A.dim(), m = R.dim();
  RightModule<S> e = unit_module(b);
  SubSpace<S> hom = module_hom_space(RightModule<S>::regular(A), e);
  Index k = hom.rank();
  std::vector<Matrix<S>> rho;
  for (Index i = 0; i < k; ++i) rho.push_back(unflatten(Vector<S>(hom.basis().col(i)), m, n));
  // [r (x) y] -> r |> y = epsilon(s(y) t(r)) on E (x)_R E
  Matrix<S> unitor(m, m * m);
  for (Index r = 0; r < m; ++r)
    for (Index y = 0; y < m; ++y)
      unitor.col(r * m + y) = multiply(
          b.counit(), Matrix<S>(A.product(Vector<S>(b.source().col(y)), Vector<S>(b.target().col(r)))));
  Matrix<S> lift = b.delta_lift();
  auto flatten = [&](const Matrix<S>& f) {
    Vector<S> v(m * n);
    for (Index i = 0; i < m; ++i)
      for (Index j = 0; j < n; ++j) v(i * n + j) = f(i, j);
    return v;
  };

  BaseReconstruction<S> out;
  out.report = Report("base reconstruction");
  CheckBuilder closed("convolution-closed");
  Matrix<S> mul = Matrix<S>::Zero(k, k * k);
  for (Index i = 0; i < k; ++i)
    for (Index j = 0; j < k; ++j) {
      closed.count();
      Vector<S> v = flatten(multiply(unitor, kronecker_apply(rho[i], rho[j], lift)));
      if (!hom.contains(v)) {
        closed.fail(Witness{{i, j}, to_strings(v), {}, "convolution leaves Hom_A(A, E)"});
        continue;
      }
      mul.col(i * k + j) = hom.coordinates(v);
    }
  CheckBuilder unit("counit-in-hom");
  unit.count();
  Vector<S> ev = flatten(b.counit());
  if (!hom.contains(ev)) unit.fail(Witness{{}, to_strings(ev), {}, "counit is not a module map"});
  CheckBuilder dims("dimension");
  dims.count();
  if (k != m)
    dims.fail(Witness{{k, m}, {std::to_string(k)}, {std::to_string(m)}, "dim Hom_A(A, E) differs from dim R"});
  bool ok = !closed.failed() && !unit.failed() && !dims.failed();
  out.report.add(std::move(closed).done());
  out.report.add(std::move(unit).done());
  out.report.add(std::move(dims).done());
  if (!ok) throw VerificationError("base reconstruction failed", out.report);

  out.algebra = Algebra<S>(BasedSpace(k, "h"), std::move(mul), hom.coordinates(ev));
  Matrix<S> comp(m, k);
  for (Index i = 0; i < k; ++i) comp.col(i) = multiply(rho[i], Matrix<S>(A.unit()));
  out.comparison = LinMap<S>(out.algebra.space(), R.space(), comp);
  out.report.merge(check_algebra(out.algebra), "convolution.");
  CheckBuilder bij("comparison-bijective");
  bij.count();
  if (!inverse(comp)) bij.fail(Witness{{}, {}, {}, "comparison map is singular"});
  out.report.add(std::move(bij).done());
  out.report.merge(check_morphism(AlgMorphism<S>{out.algebra, R, out.comparison}), "comparison.");
  require(out.report, "base reconstruction");
  return out;
}

#define BGD_INSTANTIATE_BIALGEBROID(S)                                                                         \
  template class RightBialgebroid<S>;                                                                          \
  template Takeuchi<S> analyze_takeuchi<S>(const RightBialgebroid<S>&);                                        \
  template Takeuchi<S> takeuchi_product<S>(const RightBialgebroid<S>&);                                        \
  template Vector<S> tensor_square_product<S>(const Algebra<S>&, const Vector<S>&, const Vector<S>&);          \
  template Report check_bialgebroid<S>(const RightBialgebroid<S>&);                                            \
  template Bimodule<S> restrict_to_base<S>(const RightBialgebroid<S>&, const RightModule<S>&);                 \
  template ModuleProduct<S> module_product<S>(const RightBialgebroid<S>&, const RightModule<S>&,               \
                                              const RightModule<S>&);                                          \
  template RightModule<S> unit_module<S>(const RightBialgebroid<S>&);                                          \
  template BaseReconstruction<S> reconstruct_base<S>(const RightBialgebroid<S>&);

BGD_INSTANTIATE_BIALGEBROID(Rational)
BGD_INSTANTIATE_BIALGEBROID(ModP)

}  // namespace bgd
