#include "bgd/linalg.hpp"

#include <algorithm>
#include <unordered_set>

namespace bgd {

BasedSpace::BasedSpace(Index dim, const std::string& prefix) {
  if (dim < 0) throw std::invalid_argument("negative dimension");
  labels_.reserve(static_cast<std::size_t>(dim));
  for (Index i = 0; i < dim; ++i) labels_.push_back(prefix + std::to_string(i));
}

BasedSpace::BasedSpace(std::vector<std::string> labels) : labels_(std::move(labels)) {
  std::unordered_set<std::string> seen;
  for (const auto& l : labels_)
    if (!seen.insert(l).second) throw std::invalid_argument("duplicate basis label '" + l + "'");
}

BasedSpace tensor(const BasedSpace& a, const BasedSpace& b) {
  std::vector<std::string> labels;
  labels.reserve(static_cast<std::size_t>(a.dim() * b.dim()));
  for (const auto& x : a.labels())
    for (const auto& y : b.labels()) labels.push_back(x + "⊗" + y);
  return BasedSpace(std::move(labels));
}

namespace {

template <class S>
SparseVector<S> axpy_sparse(const SparseVector<S>& x, const S& c, const SparseVector<S>& y) {
  // x - c * y
  SparseVector<S> out;
  out.reserve(x.size() + y.size());
  auto i = x.begin();
  auto j = y.begin();
  while (i != x.end() || j != y.end()) {
    if (j == y.end() || (i != x.end() && i->first < j->first)) {
      out.push_back(*i++);
    } else if (i == x.end() || j->first < i->first) {
      out.emplace_back(j->first, -(c * j->second));
      ++j;
    } else {
      S v = i->second - c * j->second;
      if (!is_zero(v)) out.emplace_back(i->first, std::move(v));
      ++i;
      ++j;
    }
  }
  return out;
}

/// Incremental reduced row echelon form over sparse rows.
template <class S>
class Echelon {
 public:
  explicit Echelon(Index dim) : dim_(dim), work_(Vector<S>::Zero(dim)) {}

  bool add(const SparseVector<S>& v) {
    for (const auto& [i, x] : v) work_(i) = x;
    return absorb();
  }

  bool add_dense(const Vector<S>& v) {
    for (Index i = 0; i < dim_; ++i) work_(i) = v(i);
    return absorb();
  }

  /// Rows sorted by pivot.
  std::pair<std::vector<Index>, std::vector<SparseVector<S>>> result() && {
    std::vector<std::size_t> order(rows_.size());
    for (std::size_t k = 0; k < order.size(); ++k) order[k] = k;
    std::sort(order.begin(), order.end(), [&](auto a, auto b) { return pivots_[a] < pivots_[b]; });
    std::vector<Index> piv;
    std::vector<SparseVector<S>> rows;
    for (auto k : order) {
      piv.push_back(pivots_[k]);
      rows.push_back(std::move(rows_[k]));
    }
    return {std::move(piv), std::move(rows)};
  }

 private:
  bool absorb() {
    for (std::size_t k = 0; k < rows_.size(); ++k) {
      Index p = pivots_[k];
      if (is_zero(work_(p))) continue;
      S c = work_(p);
      for (const auto& [i, x] : rows_[k]) work_(i) -= c * x;
    }
    Index p = -1;
    for (Index i = 0; i < dim_; ++i)
      if (!is_zero(work_(i))) {
        p = i;
        break;
      }
    if (p < 0) return false;
    S inv = S(1) / work_(p);
    SparseVector<S> row;
    for (Index i = p; i < dim_; ++i) {
      if (is_zero(work_(i))) continue;
      row.emplace_back(i, i == p ? S(1) : work_(i) * inv);
      work_(i) = S(0);
    }
    for (auto& other : rows_) {
      auto it = std::lower_bound(other.begin(), other.end(), p, [](const auto& e, Index q) { return e.first < q; });
      if (it == other.end() || it->first != p) continue;
      S c = it->second;
      other = axpy_sparse(other, c, row);
    }
    pivots_.push_back(p);
    rows_.push_back(std::move(row));
    return true;
  }

  Index dim_;
  Vector<S> work_;
  std::vector<Index> pivots_;
  std::vector<SparseVector<S>> rows_;
};

template <class S>
Echelon<S> echelon_of_rows(const Matrix<S>& m) {
  Echelon<S> e(m.cols());
  SparseVector<S> row;
  for (Index i = 0; i < m.rows(); ++i) {
    row.clear();
    for (Index j = 0; j < m.cols(); ++j)
      if (!is_zero(m(i, j))) row.emplace_back(j, m(i, j));
    if (!row.empty()) e.add(row);
  }
  return e;
}

}  // namespace

template <class S>
SubSpace<S> make_subspace(BasedSpace ambient, std::vector<Index> pivots, std::vector<SparseVector<S>> rows) {
  SubSpace<S> w;
  Index n = ambient.dim();
  Index r = static_cast<Index>(rows.size());
  w.ambient_ = std::move(ambient);
  w.basis_ = Matrix<S>::Zero(n, r);
  for (Index k = 0; k < r; ++k)
    for (const auto& [i, x] : rows[static_cast<std::size_t>(k)]) w.basis_(i, k) = x;
  w.pivots_ = std::move(pivots);
  std::vector<Index> position(static_cast<std::size_t>(n), -1);
  {
    std::size_t k = 0;
    for (Index i = 0; i < n; ++i) {
      if (k < w.pivots_.size() && w.pivots_[k] == i) {
        ++k;
        continue;
      }
      position[static_cast<std::size_t>(i)] = static_cast<Index>(w.free_.size());
      w.free_.push_back(i);
    }
  }
  w.equations_ = Matrix<S>::Zero(n - r, n);
  for (std::size_t f = 0; f < w.free_.size(); ++f) w.equations_(static_cast<Index>(f), w.free_[f]) = S(1);
  for (Index k = 0; k < r; ++k) {
    Index p = w.pivots_[static_cast<std::size_t>(k)];
    for (const auto& [i, x] : rows[static_cast<std::size_t>(k)]) {
      if (i == p) continue;
      w.equations_(position[static_cast<std::size_t>(i)], p) = -x;
    }
  }
  return w;
}

template <class S>
SubSpace<S> SubSpace<S>::span(BasedSpace ambient, const Matrix<S>& generators) {
  if (generators.size() > 0 && generators.rows() != ambient.dim())
    throw std::invalid_argument("span: generator length differs from ambient dimension");
  Echelon<S> e(ambient.dim());
  SparseVector<S> v;
  for (Index j = 0; j < generators.cols(); ++j) {
    v.clear();
    for (Index i = 0; i < generators.rows(); ++i)
      if (!is_zero(generators(i, j))) v.emplace_back(i, generators(i, j));
    if (!v.empty()) e.add(v);
  }
  auto [piv, rows] = std::move(e).result();
  return make_subspace<S>(std::move(ambient), std::move(piv), std::move(rows));
}

template <class S>
SubSpace<S> SubSpace<S>::span_sparse(BasedSpace ambient, const std::vector<SparseVector<S>>& generators) {
  Echelon<S> e(ambient.dim());
  for (const auto& g : generators) {
    for (const auto& [i, x] : g)
      if (i < 0 || i >= ambient.dim()) throw std::invalid_argument("span: generator index out of range");
    if (!g.empty()) e.add(g);
  }
  auto [piv, rows] = std::move(e).result();
  return make_subspace<S>(std::move(ambient), std::move(piv), std::move(rows));
}

template <class S>
SubSpace<S> SubSpace<S>::full(BasedSpace ambient) {
  Index n = ambient.dim();
  std::vector<Index> piv;
  std::vector<SparseVector<S>> rows;
  for (Index i = 0; i < n; ++i) {
    piv.push_back(i);
    rows.push_back({{i, S(1)}});
  }
  return make_subspace<S>(std::move(ambient), std::move(piv), std::move(rows));
}

template <class S>
bool SubSpace<S>::contains(const Vector<S>& v) const {
  if (v.size() != ambient_.dim()) throw std::invalid_argument("contains: vector length differs from ambient");
  return is_zero_matrix(multiply(equations_, v));
}

template <class S>
bool SubSpace<S>::contains(const SubSpace& other) const {
  if (other.ambient_.dim() != ambient_.dim()) throw std::invalid_argument("contains: ambient mismatch");
  return is_zero_matrix(multiply(equations_, other.basis_));
}

template <class S>
Vector<S> SubSpace<S>::coordinates(const Vector<S>& v) const {
  if (!contains(v)) throw std::invalid_argument("coordinates: vector not in subspace");
  Vector<S> c(rank());
  for (Index k = 0; k < rank(); ++k) c(k) = v(pivots_[static_cast<std::size_t>(k)]);
  return c;
}

template <class S>
SubSpace<S> kernel(const Matrix<S>& m, const BasedSpace& domain) {
  if (m.cols() != domain.dim()) throw std::invalid_argument("kernel: domain dimension mismatch");
  auto [piv, rows] = echelon_of_rows(m).result();
  std::vector<bool> is_pivot(static_cast<std::size_t>(domain.dim()), false);
  for (Index p : piv) is_pivot[static_cast<std::size_t>(p)] = true;
  // column f of the RREF, gathered per free column
  std::vector<SparseVector<S>> gens;
  std::vector<SparseVector<S>> column(static_cast<std::size_t>(domain.dim()));
  for (std::size_t k = 0; k < rows.size(); ++k)
    for (const auto& [i, x] : rows[k])
      if (!is_pivot[static_cast<std::size_t>(i)]) column[static_cast<std::size_t>(i)].emplace_back(piv[k], x);
  for (Index f = 0; f < domain.dim(); ++f) {
    if (is_pivot[static_cast<std::size_t>(f)]) continue;
    SparseVector<S> v;
    for (const auto& [p, x] : column[static_cast<std::size_t>(f)]) v.emplace_back(p, -x);
    v.emplace_back(f, S(1));
    std::sort(v.begin(), v.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
    gens.push_back(std::move(v));
  }
  return SubSpace<S>::span_sparse(domain, gens);
}

template <class S>
SubSpace<S> kernel(const LinMap<S>& f) {
  return kernel(f.matrix(), f.domain());
}

template <class S>
SubSpace<S> image(const LinMap<S>& f) {
  return SubSpace<S>::span(f.codomain(), f.matrix());
}

template <class S>
Index rank(const Matrix<S>& m) {
  auto [piv, rows] = echelon_of_rows(m).result();
  return static_cast<Index>(piv.size());
}

template <class S>
Quotient<S> quotient(const BasedSpace& space, const SubSpace<S>& relations) {
  if (!(relations.ambient() == space)) throw std::invalid_argument("quotient: subspace lives in a different space");
  std::vector<std::string> labels;
  for (Index f : relations.free_coordinates()) labels.push_back("[" + space.label(f) + "]");
  BasedSpace q(std::move(labels));
  Matrix<S> section = Matrix<S>::Zero(space.dim(), q.dim());
  for (std::size_t k = 0; k < relations.free_coordinates().size(); ++k)
    section(relations.free_coordinates()[k], static_cast<Index>(k)) = S(1);
  return Quotient<S>{q, LinMap<S>(space, q, relations.equations()), LinMap<S>(q, space, std::move(section)),
                     relations};
}

template <class S>
Quotient<S> coequalizer(const LinMap<S>& f, const LinMap<S>& g) {
  if (f.domain().dim() != g.domain().dim() || !(f.codomain() == g.codomain()))
    throw std::invalid_argument("coequalizer: maps do not share domain and codomain");
  return quotient(f.codomain(), SubSpace<S>::span(f.codomain(), f.matrix() - g.matrix()));
}

template <class S>
SubSpace<S> equalizer(const LinMap<S>& f, const LinMap<S>& g) {
  return kernel(f - g);
}

template <class S>
LinMap<S> factor_through(const Quotient<S>& q, const LinMap<S>& h) {
  if (h.domain().dim() != q.projection.domain().dim()) throw std::invalid_argument("factor_through: domain mismatch");
  if (!is_zero_matrix(multiply(h.matrix(), q.relations.basis())))
    throw std::invalid_argument("factor_through: map does not vanish on the relations");
  return LinMap<S>(q.space, h.codomain(), multiply(h.matrix(), q.section.matrix()));
}

template <class S>
SubSpace<S> intersect(std::span<const SubSpace<S>> subspaces, const BasedSpace& ambient) {
  Index rows = 0;
  for (const auto& w : subspaces) {
    if (!(w.ambient() == ambient)) throw std::invalid_argument("intersect: ambient mismatch");
    rows += w.codim();
  }
  if (subspaces.size() == 1) return subspaces[0];
  Matrix<S> stacked(rows, ambient.dim());
  Index at = 0;
  for (const auto& w : subspaces) {
    stacked.middleRows(at, w.codim()) = w.equations();
    at += w.codim();
  }
  return kernel(stacked, ambient);
}

template <class S>
SubSpace<S> sum(const SubSpace<S>& a, const SubSpace<S>& b) {
  if (!(a.ambient() == b.ambient())) throw std::invalid_argument("sum: ambient mismatch");
  Matrix<S> gens(a.ambient().dim(), a.rank() + b.rank());
  gens << a.basis(), b.basis();
  return SubSpace<S>::span(a.ambient(), gens);
}

template <class S>
std::optional<Matrix<S>> inverse(const Matrix<S>& m) {
  if (m.rows() != m.cols()) return std::nullopt;
  Index n = m.rows();
  Matrix<S> aug(n, 2 * n);
  aug << m, identity_matrix<S>(n);
  auto [piv, rows] = echelon_of_rows(aug).result();
  if (static_cast<Index>(piv.size()) != n || (n > 0 && piv.back() != n - 1)) return std::nullopt;
  Matrix<S> inv = Matrix<S>::Zero(n, n);
  for (Index k = 0; k < n; ++k)
    for (const auto& [j, x] : rows[static_cast<std::size_t>(k)])
      if (j >= n) inv(k, j - n) = x;
  return inv;
}

template <class S>
std::optional<Matrix<S>> solve(const Matrix<S>& a, const Matrix<S>& b) {
  if (a.rows() != b.rows()) throw std::invalid_argument("solve: row count mismatch");
  Index n = a.cols();
  Matrix<S> aug(a.rows(), n + b.cols());
  aug << a, b;
  auto [piv, rows] = echelon_of_rows(aug).result();
  Matrix<S> x = Matrix<S>::Zero(n, b.cols());
  for (std::size_t k = 0; k < piv.size(); ++k) {
    if (piv[k] >= n) return std::nullopt;
    for (const auto& [j, v] : rows[k])
      if (j >= n) x(piv[k], j - n) = v;
  }
  return x;
}

#define BGD_INSTANTIATE_LINALG(S)                                                                         \
  template class SubSpace<S>;                                                                             \
  template SubSpace<S> make_subspace<S>(BasedSpace, std::vector<Index>, std::vector<SparseVector<S>>);   \
  template SubSpace<S> kernel<S>(const LinMap<S>&);                                                       \
  template SubSpace<S> kernel<S>(const Matrix<S>&, const BasedSpace&);                                    \
  template SubSpace<S> image<S>(const LinMap<S>&);                                                        \
  template Index rank<S>(const Matrix<S>&);                                                               \
  template Quotient<S> quotient<S>(const BasedSpace&, const SubSpace<S>&);                                \
  template Quotient<S> coequalizer<S>(const LinMap<S>&, const LinMap<S>&);                                \
  template SubSpace<S> equalizer<S>(const LinMap<S>&, const LinMap<S>&);                                  \
  template LinMap<S> factor_through<S>(const Quotient<S>&, const LinMap<S>&);                             \
  template SubSpace<S> intersect<S>(std::span<const SubSpace<S>>, const BasedSpace&);                     \
  template SubSpace<S> sum<S>(const SubSpace<S>&, const SubSpace<S>&);                                    \
  template std::optional<Matrix<S>> inverse<S>(const Matrix<S>&);                                         \
  template std::optional<Matrix<S>> solve<S>(const Matrix<S>&, const Matrix<S>&);

BGD_INSTANTIATE_LINALG(Rational)
BGD_INSTANTIATE_LINALG(ModP)

}  // namespace bgd
