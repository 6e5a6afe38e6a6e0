#include "bgd/frobenius.hpp"

namespace bgd {

template <class S>
Matrix<S> SepFrobenius<S>::sigma() const {
  Index n = base.dim();
  if (e.size() != n * n) throw std::invalid_argument("separable Frobenius: e has length " + std::to_string(e.size()));
  Matrix<S> sig = Matrix<S>::Zero(n * n, n);
  for (Index r = 0; r < n; ++r)
    for (Index a = 0; a < n; ++a)
      for (Index b = 0; b < n; ++b) {
        const S& c = e(a * n + b);
        if (is_zero(c)) continue;
        const auto col = base.mul().col(r * n + a);
        for (Index k = 0; k < n; ++k)
          if (!is_zero(col(k))) sig(k * n + b, r) += c * col(k);
      }
  return sig;
}

template <class S>
Report check_sep_frobenius(const SepFrobenius<S>& sf) {
  const auto& R = sf.base;
  Index n = R.dim();
  if (sf.psi.rows() != 1 || sf.psi.cols() != n)
    throw std::invalid_argument("separable Frobenius: psi must be 1x" + std::to_string(n));
  Report report("separable Frobenius");
  Matrix<S> sig = sf.sigma();
  Matrix<S> id = identity_matrix<S>(n);
  auto single = [](Index j) { return std::vector<Index>{j}; };

  CheckBuilder casimir("casimir");
  Matrix<S> right(n * n, n);  // r -> e (1 (x) r)
  for (Index r = 0; r < n; ++r) {
    Vector<S> v = Vector<S>::Zero(n * n);
    for (Index a = 0; a < n; ++a)
      for (Index b = 0; b < n; ++b) {
        const S& c = sf.e(a * n + b);
        if (is_zero(c)) continue;
        const auto col = R.mul().col(b * n + r);
        for (Index k = 0; k < n; ++k)
          if (!is_zero(col(k))) v(a * n + k) += c * col(k);
      }
    right.col(r) = v;
  }
  casimir.compare(sig, right, single);
  report.add(std::move(casimir).done());

  CheckBuilder coassoc("coassociativity");
  coassoc.compare(kronecker_apply(sig, id, sig), kronecker_apply(id, sig, sig), single);
  report.add(std::move(coassoc).done());

  Matrix<S> one(1, 1);
  one(0, 0) = S(1);
  CheckBuilder cl("counit-left");
  cl.compare(kronecker_apply(sf.psi, id, sig), id, single);
  report.add(std::move(cl).done());
  CheckBuilder cr("counit-right");
  cr.compare(kronecker_apply(id, sf.psi, sig), id, single);
  report.add(std::move(cr).done());

  // (mu (x) R)(R (x) sigma) = sigma mu = (R (x) mu)(sigma (x) R) on R (x) R
  Matrix<S> sm = multiply(sig, R.mul());
  Matrix<S> pairs = identity_matrix<S>(n * n);
  CheckBuilder fl("frobenius-left");
  fl.compare(kronecker_apply(R.mul(), id, kronecker_apply(id, sig, pairs)), sm, tuple_decoder({n, n}));
  report.add(std::move(fl).done());
  CheckBuilder fr("frobenius-right");
  fr.compare(kronecker_apply(id, R.mul(), kronecker_apply(sig, id, pairs)), sm, tuple_decoder({n, n}));
  report.add(std::move(fr).done());

  CheckBuilder sep("separability");
  sep.compare(multiply(R.mul(), sig), id, single);
  report.add(std::move(sep).done());
  return report;
}

template <class S>
LinMap<S> frobenius_section(const Bimodule<S>& x, const Bimodule<S>& y, const TensorOver<S>& t,
                            const SepFrobenius<S>& sf) {
  if (!(x.right_algebra() == sf.base) || !(y.left_algebra() == sf.base))
    throw std::invalid_argument("frobenius_section: bimodules are not over the Frobenius base");
  Index n = sf.base.dim(), dx = x.dim(), dy = y.dim();
  Matrix<S> flat = Matrix<S>::Zero(dx * dy, dx * dy);
  for (Index a = 0; a < n; ++a)
    for (Index b = 0; b < n; ++b) {
      const S& c = sf.e(a * n + b);
      if (is_zero(c)) continue;
      flat += c * kronecker(x.right_action(a), y.left_action(b));
    }
  Report report("frobenius section");
  CheckBuilder bal("balance");
  Matrix<S> killed = multiply(flat, t.relations().basis());
  bal.compare(killed, Matrix<S>::Zero(killed.rows(), killed.cols()), [](Index j) { return std::vector<Index>{j}; });
  bool balanced = !bal.failed();
  report.add(std::move(bal).done());
  if (!balanced) throw VerificationError("frobenius section is not balanced", report);
  Matrix<S> section = multiply(flat, t.section());
  CheckBuilder split("split");
  split.compare(multiply(t.projection(), section), identity_matrix<S>(t.space().dim()),
                [](Index j) { return std::vector<Index>{j}; });
  bool ok = !split.failed();
  report.add(std::move(split).done());
  if (!ok) throw VerificationError("frobenius section does not split the projection", report);
  return LinMap<S>(t.space(), tensor(x.space(), y.space()), std::move(section));
}

template <class S>
LinMap<S> frobenius_section(const Bimodule<S>& x, const Bimodule<S>& y, const SepFrobenius<S>& sf) {
  return frobenius_section(x, y, tensor_over(x, y, sf.base), sf);
}

#define BGD_INSTANTIATE_FROBENIUS(S)                                                                         \
  template struct SepFrobenius<S>;                                                                           \
  template Report check_sep_frobenius<S>(const SepFrobenius<S>&);                                            \
  template LinMap<S> frobenius_section<S>(const Bimodule<S>&, const Bimodule<S>&, const TensorOver<S>&,      \
                                          const SepFrobenius<S>&);                                           \
  template LinMap<S> frobenius_section<S>(const Bimodule<S>&, const Bimodule<S>&, const SepFrobenius<S>&);

BGD_INSTANTIATE_FROBENIUS(Rational)
BGD_INSTANTIATE_FROBENIUS(ModP)

}  // namespace bgd
