#include "bgd/algebra.hpp"

#include <algorithm>
#include <map>

namespace bgd {

namespace {

std::string dims_str(Index r, Index c) { return std::to_string(r) + "x" + std::to_string(c); }

void expect_shape(const char* what, Index rows, Index cols, Index want_rows, Index want_cols) {
  if (rows != want_rows || cols != want_cols)
    throw std::invalid_argument(std::string(what) + ": expected " + dims_str(want_rows, want_cols) + ", got " +
                                dims_str(rows, cols));
}

template <class S>
Matrix<S> combine(const Vector<S>& coeffs, const std::function<Matrix<S>(Index)>& block, Index rows, Index cols) {
  Matrix<S> m = Matrix<S>::Zero(rows, cols);
  for (Index i = 0; i < coeffs.size(); ++i)
    if (!is_zero(coeffs(i))) m += coeffs(i) * block(i);
  return m;
}

}  // namespace

// -- Algebra -----------------------------------------------------------------

template <class S>
Algebra<S>::Algebra(BasedSpace space, Matrix<S> mul, Vector<S> unit)
    : space_(std::move(space)), mul_(std::move(mul)), unit_(std::move(unit)) {
  Index n = space_.dim();
  expect_shape("algebra multiplication", mul_.rows(), mul_.cols(), n, n * n);
  expect_shape("algebra unit", unit_.rows(), 1, n, 1);
}

template <class S>
Algebra<S> Algebra<S>::ground(const std::string& label) {
  Matrix<S> m(1, 1);
  m(0, 0) = S(1);
  Vector<S> u(1);
  u(0) = S(1);
  return Algebra(BasedSpace(std::vector<std::string>{label}), m, u);
}

template <class S>
Vector<S> Algebra<S>::product(const Vector<S>& a, const Vector<S>& b) const {
  Index n = dim();
  Vector<S> out = Vector<S>::Zero(n);
  for (Index i = 0; i < n; ++i) {
    if (is_zero(a(i))) continue;
    for (Index j = 0; j < n; ++j) {
      if (is_zero(b(j))) continue;
      S c = a(i) * b(j);
      const auto col = mul_.col(i * n + j);
      for (Index k = 0; k < n; ++k)
        if (!is_zero(col(k))) out(k) += c * col(k);
    }
  }
  return out;
}

template <class S>
Matrix<S> Algebra<S>::left_mult(const Vector<S>& a) const {
  return combine<S>(a, [this](Index i) { return left_mult(i); }, dim(), dim());
}

template <class S>
Matrix<S> Algebra<S>::right_mult(Index i) const {
  Index n = dim();
  Matrix<S> m(n, n);
  for (Index j = 0; j < n; ++j) m.col(j) = mul_.col(j * n + i);
  return m;
}

template <class S>
Matrix<S> Algebra<S>::right_mult(const Vector<S>& a) const {
  return combine<S>(a, [this](Index i) { return right_mult(i); }, dim(), dim());
}

template <class S>
Algebra<S> Algebra<S>::opposite() const {
  Index n = dim();
  Matrix<S> m(n, n * n);
  for (Index i = 0; i < n; ++i)
    for (Index j = 0; j < n; ++j) m.col(i * n + j) = mul_.col(j * n + i);
  return Algebra(space_, std::move(m), unit_);
}

template <class S>
Report check_algebra(const Algebra<S>& a) {
  Report report("algebra");
  Index n = a.dim();
  std::vector<Matrix<S>> left, right;
  for (Index i = 0; i < n; ++i) {
    left.push_back(a.left_mult(i));
    right.push_back(a.right_mult(i));
  }
  CheckBuilder assoc("associativity");
  for (Index i = 0; i < n; ++i)
    for (Index k = 0; k < n; ++k) {
      if (assoc.failed()) {
        assoc.count(static_cast<std::size_t>(n));
        continue;
      }
      // x -> (e_i x) e_k against x -> e_i (x e_k)
      assoc.compare(multiply(right[k], left[i]), multiply(left[i], right[k]),
                    [&](Index j) { return std::vector<Index>{i, j, k}; });
    }
  report.add(std::move(assoc).done());
  CheckBuilder lu("left-unit");
  lu.compare(a.left_mult(a.unit()), identity_matrix<S>(n), [](Index j) { return std::vector<Index>{j}; });
  report.add(std::move(lu).done());
  CheckBuilder ru("right-unit");
  ru.compare(a.right_mult(a.unit()), identity_matrix<S>(n), [](Index j) { return std::vector<Index>{j}; });
  report.add(std::move(ru).done());
  return report;
}

template <class S>
Algebra<S> subalgebra(const Algebra<S>& a, const SubSpace<S>& sub) {
  if (sub.ambient().dim() != a.dim()) throw std::invalid_argument("subalgebra: ambient mismatch");
  Index r = sub.rank();
  const Matrix<S>& b = sub.basis();
  Report report("subalgebra");
  CheckBuilder unit("contains-unit");
  unit.count();
  if (!sub.contains(a.unit())) unit.fail(Witness{{}, to_strings(a.unit()), {}, "unit not in subspace"});
  CheckBuilder closed("closed-under-product");
  Matrix<S> mul(r, r * r);
  for (Index k = 0; k < r; ++k)
    for (Index l = 0; l < r; ++l) {
      closed.count();
      Vector<S> p = a.product(b.col(k), b.col(l));
      if (!sub.contains(p)) {
        closed.fail(Witness{{k, l}, to_strings(p), {}, "product leaves the subspace"});
        continue;
      }
      mul.col(k * r + l) = sub.coordinates(p);
    }
  bool ok = !unit.failed() && !closed.failed();
  report.add(std::move(unit).done());
  report.add(std::move(closed).done());
  if (!ok) throw VerificationError("subspace is not a unital subalgebra", report);
  std::vector<std::string> labels;
  for (Index k = 0; k < r; ++k) {
    Index p = sub.pivots()[static_cast<std::size_t>(k)];
    bool unit_col = exactly_equal(b.col(k), unit_vector<S>(a.dim(), p));
    labels.push_back(unit_col ? a.space().label(p) : "[" + a.space().label(p) + "]");
  }
  return Algebra<S>(BasedSpace(std::move(labels)), std::move(mul), sub.coordinates(a.unit()));
}

template <class S>
Report check_morphism(const AlgMorphism<S>& f) {
  Index n = f.source.dim(), m = f.target.dim();
  expect_shape("algebra morphism", f.map.matrix().rows(), f.map.matrix().cols(), m, n);
  const Matrix<S>& F = f.map.matrix();
  Report report("algebra morphism");
  CheckBuilder unit("unit");
  Matrix<S> fu = multiply(F, Matrix<S>(f.source.unit()));
  unit.compare(fu, Matrix<S>(f.target.unit()), [](Index) { return std::vector<Index>{}; });
  report.add(std::move(unit).done());
  CheckBuilder mult("multiplicative");
  Matrix<S> lhs = multiply(F, f.source.mul());
  Matrix<S> rhs(m, n * n);
  for (Index i = 0; i < n; ++i)
    for (Index j = 0; j < n; ++j) rhs.col(i * n + j) = f.target.product(F.col(i), F.col(j));
  mult.compare(lhs, rhs, tuple_decoder({n, n}));
  report.add(std::move(mult).done());
  return report;
}

// -- Bimodule ----------------------------------------------------------------

template <class S>
Bimodule<S>::Bimodule(Algebra<S> left, Algebra<S> right, BasedSpace space, Matrix<S> left_action,
                      Matrix<S> right_action)
    : left_(std::move(left)),
      right_(std::move(right)),
      space_(std::move(space)),
      lambda_(std::move(left_action)),
      rho_(std::move(right_action)) {
  Index d = space_.dim();
  expect_shape("left action", lambda_.rows(), lambda_.cols(), d, left_.dim() * d);
  expect_shape("right action", rho_.rows(), rho_.cols(), d, d * right_.dim());
}

template <class S>
Bimodule<S> Bimodule<S>::from_actions(Algebra<S> left, Algebra<S> right, BasedSpace space,
                                      const std::vector<Matrix<S>>& left_actions,
                                      const std::vector<Matrix<S>>& right_actions) {
  Index d = space.dim(), nl = left.dim(), nr = right.dim();
  if (static_cast<Index>(left_actions.size()) != nl || static_cast<Index>(right_actions.size()) != nr)
    throw std::invalid_argument("bimodule: one action matrix per basis element expected");
  Matrix<S> lam(d, nl * d), rho(d, d * nr);
  for (Index r = 0; r < nl; ++r) {
    expect_shape("left action matrix", left_actions[r].rows(), left_actions[r].cols(), d, d);
    lam.middleCols(r * d, d) = left_actions[r];
  }
  for (Index s = 0; s < nr; ++s) {
    expect_shape("right action matrix", right_actions[s].rows(), right_actions[s].cols(), d, d);
    for (Index x = 0; x < d; ++x) rho.col(x * nr + s) = right_actions[s].col(x);
  }
  return Bimodule(std::move(left), std::move(right), std::move(space), std::move(lam), std::move(rho));
}

template <class S>
Bimodule<S> Bimodule<S>::regular(const Algebra<S>& a) {
  std::vector<Matrix<S>> l, r;
  for (Index i = 0; i < a.dim(); ++i) {
    l.push_back(a.left_mult(i));
    r.push_back(a.right_mult(i));
  }
  return from_actions(a, a, a.space(), l, r);
}

template <class S>
Matrix<S> Bimodule<S>::right_action(Index s) const {
  Index d = dim(), nr = right_.dim();
  Matrix<S> m(d, d);
  for (Index x = 0; x < d; ++x) m.col(x) = rho_.col(x * nr + s);
  return m;
}

template <class S>
Matrix<S> Bimodule<S>::left_action_by(const Vector<S>& r) const {
  return combine<S>(r, [this](Index i) { return left_action(i); }, dim(), dim());
}

template <class S>
Matrix<S> Bimodule<S>::right_action_by(const Vector<S>& s) const {
  return combine<S>(s, [this](Index i) { return right_action(i); }, dim(), dim());
}

template <class S>
Report check_bimodule(const Bimodule<S>& x) {
  Report report("bimodule");
  const auto& R = x.left_algebra();
  const auto& T = x.right_algebra();
  Index d = x.dim(), nl = R.dim(), nr = T.dim();
  std::vector<Matrix<S>> L, Rt;
  for (Index i = 0; i < nl; ++i) L.push_back(x.left_action(i));
  for (Index i = 0; i < nr; ++i) Rt.push_back(x.right_action(i));

  CheckBuilder la("left-associativity");
  for (Index r = 0; r < nl && !la.failed(); ++r)
    for (Index q = 0; q < nl; ++q) {
      Vector<S> rq = R.product(R.basis_vector(r), R.basis_vector(q));
      la.compare(x.left_action_by(rq), multiply(L[r], L[q]), [&](Index j) { return std::vector<Index>{r, q, j}; });
    }
  report.add(std::move(la).done());
  CheckBuilder lu("left-unit");
  lu.compare(x.left_action_by(R.unit()), identity_matrix<S>(d), [](Index j) { return std::vector<Index>{j}; });
  report.add(std::move(lu).done());

  CheckBuilder ra("right-associativity");
  for (Index s = 0; s < nr && !ra.failed(); ++s)
    for (Index q = 0; q < nr; ++q) {
      Vector<S> sq = T.product(T.basis_vector(s), T.basis_vector(q));
      ra.compare(x.right_action_by(sq), multiply(Rt[q], Rt[s]),
                 [&](Index j) { return std::vector<Index>{j, s, q}; });
    }
  report.add(std::move(ra).done());
  CheckBuilder ru("right-unit");
  ru.compare(x.right_action_by(T.unit()), identity_matrix<S>(d), [](Index j) { return std::vector<Index>{j}; });
  report.add(std::move(ru).done());

  CheckBuilder comm("actions-commute");
  for (Index r = 0; r < nl && !comm.failed(); ++r)
    for (Index s = 0; s < nr; ++s)
      comm.compare(multiply(Rt[s], L[r]), multiply(L[r], Rt[s]),
                   [&](Index j) { return std::vector<Index>{r, j, s}; });
  report.add(std::move(comm).done());
  return report;
}

// -- RightModule -------------------------------------------------------------

template <class S>
RightModule<S>::RightModule(Algebra<S> algebra, BasedSpace space, Matrix<S> action)
    : algebra_(std::move(algebra)), space_(std::move(space)), action_(std::move(action)) {
  expect_shape("module action", action_.rows(), action_.cols(), space_.dim(), space_.dim() * algebra_.dim());
}

template <class S>
RightModule<S> RightModule<S>::from_actions(Algebra<S> algebra, BasedSpace space,
                                            const std::vector<Matrix<S>>& actions) {
  Index d = space.dim(), n = algebra.dim();
  if (static_cast<Index>(actions.size()) != n)
    throw std::invalid_argument("module: one action matrix per basis element expected");
  Matrix<S> act(d, d * n);
  for (Index a = 0; a < n; ++a) {
    expect_shape("module action matrix", actions[a].rows(), actions[a].cols(), d, d);
    for (Index x = 0; x < d; ++x) act.col(x * n + a) = actions[a].col(x);
  }
  return RightModule(std::move(algebra), std::move(space), std::move(act));
}

template <class S>
RightModule<S> RightModule<S>::regular(const Algebra<S>& a) {
  return RightModule(a, a.space(), a.mul());
}

template <class S>
Matrix<S> RightModule<S>::action(Index a) const {
  Index d = dim(), n = algebra_.dim();
  Matrix<S> m(d, d);
  for (Index x = 0; x < d; ++x) m.col(x) = action_.col(x * n + a);
  return m;
}

template <class S>
Matrix<S> RightModule<S>::action_by(const Vector<S>& a) const {
  return combine<S>(a, [this](Index i) { return action(i); }, dim(), dim());
}

template <class S>
Report check_module(const RightModule<S>& x) {
  Report report("module");
  const auto& A = x.algebra();
  Index n = A.dim(), d = x.dim();
  std::vector<Matrix<S>> act;
  for (Index a = 0; a < n; ++a) act.push_back(x.action(a));
  CheckBuilder assoc("associativity");
  for (Index a = 0; a < n && !assoc.failed(); ++a)
    for (Index b = 0; b < n; ++b) {
      Vector<S> ab = A.product(A.basis_vector(a), A.basis_vector(b));
      assoc.compare(x.action_by(ab), multiply(act[b], act[a]), [&](Index j) { return std::vector<Index>{j, a, b}; });
    }
  report.add(std::move(assoc).done());
  CheckBuilder unit("unit");
  unit.compare(x.action_by(A.unit()), identity_matrix<S>(d), [](Index j) { return std::vector<Index>{j}; });
  report.add(std::move(unit).done());
  return report;
}

// -- tensor products over an algebra -----------------------------------------

template <class S>
Matrix<S> kronecker_columns(const Matrix<S>& m, const Matrix<S>& n, const std::vector<Index>& cols) {
  Index nr = n.rows(), nc = n.cols();
  Matrix<S> out = Matrix<S>::Zero(m.rows() * nr, static_cast<Index>(cols.size()));
  for (std::size_t c = 0; c < cols.size(); ++c) {
    Index i = cols[c] / nc, j = cols[c] % nc;
    for (Index a = 0; a < m.rows(); ++a) {
      const S& x = m(a, i);
      if (is_zero(x)) continue;
      for (Index b = 0; b < nr; ++b)
        if (!is_zero(n(b, j))) out(a * nr + b, static_cast<Index>(c)) = x * n(b, j);
    }
  }
  return out;
}

template <class S>
Matrix<S> kronecker_apply(const Matrix<S>& m, const Matrix<S>& n, const Matrix<S>& v) {
  Index nr = n.rows(), nc = n.cols();
  if (v.rows() != m.cols() * nc) throw std::invalid_argument("kronecker_apply: length mismatch");
  Matrix<S> out = Matrix<S>::Zero(m.rows() * nr, v.cols());
  for (Index c = 0; c < v.cols(); ++c)
    for (Index k = 0; k < v.rows(); ++k) {
      const S& x = v(k, c);
      if (is_zero(x)) continue;
      Index i = k / nc, j = k % nc;
      for (Index a = 0; a < m.rows(); ++a) {
        if (is_zero(m(a, i))) continue;
        S xa = x * m(a, i);
        for (Index b = 0; b < nr; ++b)
          if (!is_zero(n(b, j))) out(a * nr + b, c) += xa * n(b, j);
      }
    }
  return out;
}

template <class S>
TensorOver<S> tensor_over(const Bimodule<S>& x, const Bimodule<S>& y, const Algebra<S>& over) {
  if (!(x.right_algebra() == over) || !(y.left_algebra() == over))
    throw std::invalid_argument("tensor_over: algebra mismatch");
  Index dx = x.dim(), dy = y.dim(), nr = over.dim();
  BasedSpace flat = tensor(x.space(), y.space());
  std::vector<SparseVector<S>> gens;
  gens.reserve(static_cast<std::size_t>(dx * nr * dy));
  for (Index r = 0; r < nr; ++r) {
    Matrix<S> xr = x.right_action(r);
    Matrix<S> ry = y.left_action(r);
    for (Index i = 0; i < dx; ++i)
      for (Index j = 0; j < dy; ++j) {
        std::map<Index, S> v;
        for (Index k = 0; k < dx; ++k)
          if (!is_zero(xr(k, i))) v[k * dy + j] += xr(k, i);
        for (Index l = 0; l < dy; ++l)
          if (!is_zero(ry(l, j))) v[i * dy + l] -= ry(l, j);
        SparseVector<S> g;
        for (auto& [idx, c] : v)
          if (!is_zero(c)) g.emplace_back(idx, c);
        if (!g.empty()) gens.push_back(std::move(g));
      }
  }
  TensorOver<S> t;
  t.quotient = quotient(flat, SubSpace<S>::span_sparse(flat, gens));
  t.left_dim = dx;
  t.right_dim = dy;
  const auto& P = t.projection();
  const auto& free = t.relations().free_coordinates();
  std::vector<Matrix<S>> left, right;
  Matrix<S> idx = identity_matrix<S>(dx), idy = identity_matrix<S>(dy);
  for (Index l = 0; l < x.left_algebra().dim(); ++l)
    left.push_back(multiply(P, kronecker_columns<S>(x.left_action(l), idy, free)));
  for (Index s = 0; s < y.right_algebra().dim(); ++s)
    right.push_back(multiply(P, kronecker_columns<S>(idx, y.right_action(s), free)));
  t.bimodule = Bimodule<S>::from_actions(x.left_algebra(), y.right_algebra(), t.space(), left, right);
  return t;
}

template <class S>
TensorOver<S> tensor_over(const Bimodule<S>& x, const Bimodule<S>& y) {
  return tensor_over(x, y, x.right_algebra());
}

template <class S>
Matrix<S> descend(const Matrix<S>& flat, const Quotient<S>& src, const Quotient<S>& dst, const std::string& what) {
  const Matrix<S>& P = dst.projection.matrix();
  if (flat.cols() != src.projection.domain().dim() || flat.rows() != P.cols())
    throw std::invalid_argument("descend: " + what + " has shape " + dims_str(flat.rows(), flat.cols()));
  Matrix<S> pf = multiply(P, flat);
  Matrix<S> bad = multiply(pf, src.relations.basis());
  for (Index k = 0; k < bad.cols(); ++k) {
    if (is_zero_matrix(bad.col(k))) continue;
    Report report("descend");
    report.add_failure("balance", static_cast<std::size_t>(bad.cols()),
                       Witness{{k}, to_strings(bad.col(k)), to_strings(Vector<S>::Zero(bad.rows())),
                               what + " sends a balancing relation outside the target relations"});
    throw VerificationError(what + " does not respect the balancing relations", report);
  }
  const auto& free = src.relations.free_coordinates();
  Matrix<S> out(pf.rows(), static_cast<Index>(free.size()));
  for (std::size_t k = 0; k < free.size(); ++k) out.col(static_cast<Index>(k)) = pf.col(free[k]);
  return out;
}

template <class S>
LinMap<S> induced_on_quotient(const LinMap<S>& f, const LinMap<S>& g, const TensorOver<S>& src,
                              const TensorOver<S>& dst) {
  Matrix<S> flat = kronecker(f.matrix(), g.matrix());
  return LinMap<S>(src.space(), dst.space(), descend(flat, src.quotient, dst.quotient, "induced map"));
}

template <class S>
SubSpace<S> module_hom_space(const RightModule<S>& x, const RightModule<S>& y) {
  if (!(x.algebra() == y.algebra())) throw std::invalid_argument("module_hom_space: algebra mismatch");
  Index dx = x.dim(), dy = y.dim(), n = x.algebra().dim();
  Index m = dx * dy;
  Matrix<S> c(n * m, m);
  Matrix<S> ix = identity_matrix<S>(dx), iy = identity_matrix<S>(dy);
  for (Index a = 0; a < n; ++a) {
    Matrix<S> xa = x.action(a);
    Matrix<S> ya = y.action(a);
    Matrix<S> xat = xa.transpose();
    c.middleRows(a * m, m) = kronecker(ya, ix) - kronecker(iy, xat);
  }
  std::vector<std::string> labels;
  for (Index i = 0; i < dy; ++i)
    for (Index j = 0; j < dx; ++j) labels.push_back(y.space().label(i) + "<-" + x.space().label(j));
  return kernel(c, BasedSpace(std::move(labels)));
}

template <class S>
Matrix<S> unflatten(const Vector<S>& flat, Index rows, Index cols) {
  if (flat.size() != rows * cols) throw std::invalid_argument("unflatten: size mismatch");
  Matrix<S> m(rows, cols);
  for (Index i = 0; i < rows; ++i)
    for (Index j = 0; j < cols; ++j) m(i, j) = flat(i * cols + j);
  return m;
}

#define BGD_INSTANTIATE_ALGEBRA(S)                                                                             \
  template class Algebra<S>;                                                                                   \
  template class Bimodule<S>;                                                                                  \
  template class RightModule<S>;                                                                               \
  template Report check_algebra<S>(const Algebra<S>&);                                                         \
  template Algebra<S> subalgebra<S>(const Algebra<S>&, const SubSpace<S>&);                                    \
  template Report check_morphism<S>(const AlgMorphism<S>&);                                                    \
  template Report check_bimodule<S>(const Bimodule<S>&);                                                       \
  template Report check_module<S>(const RightModule<S>&);                                                      \
  template Matrix<S> kronecker_columns<S>(const Matrix<S>&, const Matrix<S>&, const std::vector<Index>&);      \
  template Matrix<S> kronecker_apply<S>(const Matrix<S>&, const Matrix<S>&, const Matrix<S>&);                \
  template TensorOver<S> tensor_over<S>(const Bimodule<S>&, const Bimodule<S>&, const Algebra<S>&);            \
  template TensorOver<S> tensor_over<S>(const Bimodule<S>&, const Bimodule<S>&);                               \
  template Matrix<S> descend<S>(const Matrix<S>&, const Quotient<S>&, const Quotient<S>&, const std::string&); \
  template LinMap<S> induced_on_quotient<S>(const LinMap<S>&, const LinMap<S>&, const TensorOver<S>&,          \
                                            const TensorOver<S>&);                                             \
  template SubSpace<S> module_hom_space<S>(const RightModule<S>&, const RightModule<S>&);                      \
  template Matrix<S> unflatten<S>(const Vector<S>&, Index, Index);

BGD_INSTANTIATE_ALGEBRA(Rational)
BGD_INSTANTIATE_ALGEBRA(ModP)

}  // namespace bgd
