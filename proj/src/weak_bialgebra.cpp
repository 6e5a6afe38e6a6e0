#include "bgd/weak_bialgebra.hpp"

namespace bgd {

namespace {

template <class S>
void compare_entries(CheckBuilder& check, const Matrix<S>& lhs, const Matrix<S>& rhs, Index b) {
  check.count(static_cast<std::size_t>(lhs.size()));
  if (check.failed()) return;
  for (Index c = 0; c < lhs.cols(); ++c)
    for (Index a = 0; a < lhs.rows(); ++a)
      if (lhs(a, c) != rhs(a, c)) {
        check.fail(Witness{{a, b, c}, {to_string(lhs(a, c))}, {to_string(rhs(a, c))}, {}});
        return;
      }
}

template <class S>
Matrix<S> coproduct_block(const Matrix<S>& delta, Index a, Index n) {
  Matrix<S> d(n, n);
  for (Index p = 0; p < n; ++p)
    for (Index q = 0; q < n; ++q) d(p, q) = delta(p * n + q, a);
  return d;
}

template <class S>
Vector<S> delta_of_unit(const WeakBialgebra<S>& w) {
  return multiply(w.coproduct, Matrix<S>(w.algebra.unit()));
}

template <class S>
Matrix<S> square(const Matrix<S>& flat, Index n) {
  Matrix<S> m(n, n);
  for (Index p = 0; p < n; ++p)
    for (Index q = 0; q < n; ++q) m(p, q) = flat(p * n + q);
  return m;
}

// E(i, j) = epsilon(e_i e_j)
template <class S>
Matrix<S> counit_pairing(const WeakBialgebra<S>& w) {
  return square<S>(multiply(w.counit, w.algebra.mul()), w.algebra.dim());
}

void expect_shapes(Index n, Index drows, Index dcols, Index erows, Index ecols) {
  if (drows != n * n || dcols != n)
    throw std::invalid_argument("weak bialgebra: coproduct must be " + std::to_string(n * n) + "x" + std::to_string(n));
  if (erows != 1 || ecols != n) throw std::invalid_argument("weak bialgebra: counit must be 1x" + std::to_string(n));
}

}  // namespace

template <class S>
Vector<S> tensor_power_product(const Algebra<S>& a, Index k, const Vector<S>& u, const Vector<S>& v) {
  Index n = a.dim();
  Index len = 1;
  for (Index i = 0; i < k; ++i) len *= n;
  Vector<S> out = Vector<S>::Zero(len);
  std::vector<Index> du(static_cast<std::size_t>(k)), dv(static_cast<std::size_t>(k));
  for (Index p = 0; p < len; ++p) {
    if (is_zero(u(p))) continue;
    for (Index q = 0; q < len; ++q) {
      if (is_zero(v(q))) continue;
      Index pp = p, qq = q;
      for (Index i = k; i-- > 0;) {
        du[static_cast<std::size_t>(i)] = pp % n;
        dv[static_cast<std::size_t>(i)] = qq % n;
        pp /= n;
        qq /= n;
      }
      Vector<S> acc(1);
      acc(0) = u(p) * v(q);
      for (Index i = 0; i < k; ++i) {
        const auto col = a.mul().col(du[static_cast<std::size_t>(i)] * n + dv[static_cast<std::size_t>(i)]);
        Vector<S> next = Vector<S>::Zero(acc.size() * n);
        for (Index x = 0; x < acc.size(); ++x) {
          if (is_zero(acc(x))) continue;
          for (Index y = 0; y < n; ++y)
            if (!is_zero(col(y))) next(x * n + y) = acc(x) * col(y);
        }
        acc = std::move(next);
      }
      out += acc;
    }
  }
  return out;
}

template <class S>
Report check_wba(const WeakBialgebra<S>& w) {
  const auto& A = w.algebra;
  Index n = A.dim();
  expect_shapes(n, w.coproduct.rows(), w.coproduct.cols(), w.counit.rows(), w.counit.cols());
  const Matrix<S>& delta = w.coproduct;
  const Matrix<S>& eps = w.counit;
  Matrix<S> id = identity_matrix<S>(n);
  auto single = [](Index j) { return std::vector<Index>{j}; };

  Report report("weak bialgebra");
  report.merge(check_algebra(A), "algebra.");

  CheckBuilder coassoc("coassociativity");
  coassoc.compare(kronecker_apply(delta, id, delta), kronecker_apply(id, delta, delta), single);
  report.add(std::move(coassoc).done());
  CheckBuilder cl("counit-left");
  cl.compare(kronecker_apply(eps, id, delta), id, single);
  report.add(std::move(cl).done());
  CheckBuilder cr("counit-right");
  cr.compare(kronecker_apply(id, eps, delta), id, single);
  report.add(std::move(cr).done());

  CheckBuilder mult("multiplicative");
  Matrix<S> prod(n * n, n * n);
  for (Index a = 0; a < n; ++a)
    for (Index b = 0; b < n; ++b)
      prod.col(a * n + b) = tensor_square_product(A, Vector<S>(delta.col(a)), Vector<S>(delta.col(b)));
  mult.compare(multiply(delta, A.mul()), prod, tuple_decoder({n, n}));
  report.add(std::move(mult).done());

  Matrix<S> e = counit_pairing(w);
  CheckBuilder wl("weak-counit-left");
  CheckBuilder wr("weak-counit-right");
  for (Index b = 0; b < n; ++b) {
    Matrix<S> db = coproduct_block(delta, b, n);
    Matrix<S> abc = multiply(Matrix<S>(A.right_mult(b).transpose()), e);
    compare_entries(wl, multiply(e, multiply(db, e)), abc, b);
    compare_entries(wr, multiply(e, multiply(Matrix<S>(db.transpose()), e)), abc, b);
  }
  report.add(std::move(wl).done());
  report.add(std::move(wr).done());

  Vector<S> d1 = delta_of_unit(w);
  Vector<S> one = A.unit();
  Vector<S> lhs = kronecker_apply(delta, id, Matrix<S>(d1));
  Vector<S> d1_1 = kronecker(Matrix<S>(d1), Matrix<S>(one));
  Vector<S> one_d1 = kronecker(Matrix<S>(one), Matrix<S>(d1));
  auto none = [](Index) { return std::vector<Index>{}; };
  CheckBuilder ul("weak-unit-left");
  ul.compare(Matrix<S>(lhs), Matrix<S>(tensor_power_product(A, 3, d1_1, one_d1)), none);
  report.add(std::move(ul).done());
  CheckBuilder ur("weak-unit-right");
  ur.compare(Matrix<S>(lhs), Matrix<S>(tensor_power_product(A, 3, one_d1, d1_1)), none);
  report.add(std::move(ur).done());
  return report;
}

template <class S>
TargetProjection<S> target_projection(const WeakBialgebra<S>& w) {
  const auto& A = w.algebra;
  Index n = A.dim();
  expect_shapes(n, w.coproduct.rows(), w.coproduct.cols(), w.counit.rows(), w.counit.cols());
  Matrix<S> e = counit_pairing(w);
  Matrix<S> d1 = square<S>(delta_of_unit(w), n);
  TargetProjection<S> out;
  out.projection = multiply(d1, Matrix<S>(e.transpose()));
  out.image = SubSpace<S>::span(A.space(), out.projection);
  out.algebra = subalgebra(A, out.image);
  out.inclusion = out.image.basis();
  return out;
}

template <class S>
RightBialgebroid<S> wba_to_bialgebroid(const WeakBialgebra<S>& w) {
  const auto& A = w.algebra;
  Index n = A.dim();
  TargetProjection<S> tp = target_projection(w);
  Index m = tp.algebra.dim();
  Matrix<S> e = counit_pairing(w);
  Matrix<S> d1 = square<S>(delta_of_unit(w), n);
  // t(a) = epsilon(a 1_(1)) 1_(2) on all of A, restricted to A^R
  Matrix<S> t_full = multiply(Matrix<S>(d1.transpose()), Matrix<S>(e.transpose()));
  Matrix<S> t = multiply(t_full, tp.inclusion);
  Matrix<S> counit(m, n);
  for (Index a = 0; a < n; ++a) counit.col(a) = tp.image.coordinates(tp.projection.col(a));
  auto b = RightBialgebroid<S>::from_lift(A, tp.algebra, tp.inclusion, t, w.coproduct, counit);
  require(check_bialgebroid(b), "bialgebroid from weak bialgebra");
  return b;
}

template <class S>
SepFrobenius<S> base_sep_frobenius(const WeakBialgebra<S>& w) {
  RightBialgebroid<S> b = wba_to_bialgebroid(w);
  Vector<S> u = delta_of_unit(w);
  Matrix<S> st = kronecker(b.source(), b.target());
  auto e = solve(st, Matrix<S>(u));
  if (!e) {
    Report report("separable Frobenius base");
    report.add_failure("coproduct-of-unit-in-base", 1,
                       Witness{{}, to_strings(u), {}, "Delta(1) is not in s(A^R) (x) t(A^R)"});
    throw VerificationError("Delta(1) does not come from the base", report);
  }
  SepFrobenius<S> sf{b.base(), multiply(w.counit, b.source()), Vector<S>(e->col(0))};
  require(check_sep_frobenius(sf), "separable Frobenius base");
  return sf;
}

template <class S>
WeakBialgebra<S> bialgebroid_to_wba(const RightBialgebroid<S>& b, const SepFrobenius<S>& sf) {
  LinMap<S> section = frobenius_section(b.bimodule(), b.bimodule(), b.tensor_square(), sf);
  WeakBialgebra<S> w{b.total(), multiply(section.matrix(), b.delta()), multiply(sf.psi, b.counit())};
  require(check_wba(w), "weak bialgebra from bialgebroid");
  return w;
}

#define BGD_INSTANTIATE_WBA(S)                                                                     \
  template Report check_wba<S>(const WeakBialgebra<S>&);                                           \
  template TargetProjection<S> target_projection<S>(const WeakBialgebra<S>&);                      \
  template RightBialgebroid<S> wba_to_bialgebroid<S>(const WeakBialgebra<S>&);                     \
  template SepFrobenius<S> base_sep_frobenius<S>(const WeakBialgebra<S>&);                         \
  template WeakBialgebra<S> bialgebroid_to_wba<S>(const RightBialgebroid<S>&, const SepFrobenius<S>&); \
  template Vector<S> tensor_power_product<S>(const Algebra<S>&, Index, const Vector<S>&, const Vector<S>&);

BGD_INSTANTIATE_WBA(Rational)
BGD_INSTANTIATE_WBA(ModP)

}  // namespace bgd
