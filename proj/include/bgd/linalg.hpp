#pragma once

// Exact linear algebra on based finite-dimensional spaces.
//
// Tensor products flatten left to right: the basis vector e_i (x) f_j of
// V (x) W sits at index i * dim(W) + j. Nested tensors flatten associatively,
// so coordinate associators and unitors are identity matrices.
//
// Subspaces are stored in reduced echelon form with the pivot of each basis
// vector at its first nonzero coordinate. The form is canonical, so two
// subspaces are equal exactly when their stored matrices are equal.

#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Core>

#include "bgd/scalar.hpp"

namespace bgd {

using Index = Eigen::Index;

template <class S>
using Matrix = Eigen::Matrix<S, Eigen::Dynamic, Eigen::Dynamic>;
template <class S>
using Vector = Eigen::Matrix<S, Eigen::Dynamic, 1>;

/// Sorted (index, value) pairs with nonzero values.
template <class S>
using SparseVector = std::vector<std::pair<Index, S>>;

class BasedSpace {
 public:
  BasedSpace() = default;
  explicit BasedSpace(Index dim, const std::string& prefix = "e");
  explicit BasedSpace(std::vector<std::string> labels);

  Index dim() const { return static_cast<Index>(labels_.size()); }
  const std::vector<std::string>& labels() const { return labels_; }
  const std::string& label(Index i) const { return labels_.at(static_cast<std::size_t>(i)); }

  friend bool operator==(const BasedSpace&, const BasedSpace&) = default;

 private:
  std::vector<std::string> labels_;
};

BasedSpace tensor(const BasedSpace& a, const BasedSpace& b);

// -- matrix helpers ----------------------------------------------------------

template <class Derived>
bool is_zero_matrix(const Eigen::MatrixBase<Derived>& m) {
  for (Index j = 0; j < m.cols(); ++j)
    for (Index i = 0; i < m.rows(); ++i)
      if (!is_zero(m(i, j))) return false;
  return true;
}

template <class DA, class DB>
bool exactly_equal(const Eigen::MatrixBase<DA>& a, const Eigen::MatrixBase<DB>& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) return false;
  for (Index j = 0; j < a.cols(); ++j)
    for (Index i = 0; i < a.rows(); ++i)
      if (a(i, j) != b(i, j)) return false;
  return true;
}

/// Matrix product that skips zero coefficients; cost is nnz(b) * rows(a).
template <class DA, class DB>
Matrix<typename DA::Scalar> multiply(const Eigen::MatrixBase<DA>& a, const Eigen::MatrixBase<DB>& b) {
  using S = typename DA::Scalar;
  if (a.cols() != b.rows()) throw std::invalid_argument("multiply: inner dimensions differ");
  Matrix<S> c = Matrix<S>::Zero(a.rows(), b.cols());
  for (Index j = 0; j < b.cols(); ++j) {
    for (Index k = 0; k < b.rows(); ++k) {
      const S& bkj = b(k, j);
      if (is_zero(bkj)) continue;
      for (Index i = 0; i < a.rows(); ++i) {
        const S& aik = a(i, k);
        if (!is_zero(aik)) c(i, j) += aik * bkj;
      }
    }
  }
  return c;
}

/// Kronecker product with left-to-right index flattening.
template <class DA, class DB>
Matrix<typename DA::Scalar> kronecker(const Eigen::MatrixBase<DA>& a, const Eigen::MatrixBase<DB>& b) {
  using S = typename DA::Scalar;
  Matrix<S> c = Matrix<S>::Zero(a.rows() * b.rows(), a.cols() * b.cols());
  for (Index j = 0; j < a.cols(); ++j)
    for (Index i = 0; i < a.rows(); ++i) {
      const S& aij = a(i, j);
      if (is_zero(aij)) continue;
      for (Index l = 0; l < b.cols(); ++l)
        for (Index k = 0; k < b.rows(); ++k) {
          const S& bkl = b(k, l);
          if (!is_zero(bkl)) c(i * b.rows() + k, j * b.cols() + l) = aij * bkl;
        }
    }
  return c;
}

template <class S>
Vector<S> unit_vector(Index dim, Index i) {
  Vector<S> v = Vector<S>::Zero(dim);
  v(i) = S(1);
  return v;
}

template <class S>
Matrix<S> identity_matrix(Index dim) {
  return Matrix<S>::Identity(dim, dim);
}

template <class Derived>
std::vector<std::string> to_strings(const Eigen::MatrixBase<Derived>& v) {
  std::vector<std::string> out;
  out.reserve(static_cast<std::size_t>(v.size()));
  for (Index i = 0; i < v.size(); ++i) out.push_back(to_string(v(i)));
  return out;
}

template <class Derived>
SparseVector<typename Derived::Scalar> to_sparse(const Eigen::MatrixBase<Derived>& v) {
  SparseVector<typename Derived::Scalar> out;
  for (Index i = 0; i < v.size(); ++i)
    if (!is_zero(v(i))) out.emplace_back(i, v(i));
  return out;
}

// -- linear maps -------------------------------------------------------------

template <class S>
class LinMap {
 public:
  LinMap() = default;
  LinMap(BasedSpace domain, BasedSpace codomain, Matrix<S> matrix)
      : domain_(std::move(domain)), codomain_(std::move(codomain)), matrix_(std::move(matrix)) {
    if (matrix_.rows() != codomain_.dim() || matrix_.cols() != domain_.dim())
      throw std::invalid_argument("LinMap: matrix shape " + std::to_string(matrix_.rows()) + "x" +
                                  std::to_string(matrix_.cols()) + " does not match " +
                                  std::to_string(codomain_.dim()) + "x" + std::to_string(domain_.dim()));
  }

  static LinMap identity(const BasedSpace& space) { return LinMap(space, space, identity_matrix<S>(space.dim())); }
  static LinMap zero(const BasedSpace& domain, const BasedSpace& codomain) {
    return LinMap(domain, codomain, Matrix<S>::Zero(codomain.dim(), domain.dim()));
  }

  const BasedSpace& domain() const { return domain_; }
  const BasedSpace& codomain() const { return codomain_; }
  const Matrix<S>& matrix() const { return matrix_; }

  Vector<S> operator()(const Vector<S>& v) const { return multiply(matrix_, v); }

  friend bool operator==(const LinMap& a, const LinMap& b) {
    return a.domain_.dim() == b.domain_.dim() && a.codomain_.dim() == b.codomain_.dim() &&
           exactly_equal(a.matrix_, b.matrix_);
  }

 private:
  BasedSpace domain_;
  BasedSpace codomain_;
  Matrix<S> matrix_;
};

/// g after f.
template <class S>
LinMap<S> compose(const LinMap<S>& g, const LinMap<S>& f) {
  if (g.domain().dim() != f.codomain().dim()) throw std::invalid_argument("compose: dimension mismatch");
  return LinMap<S>(f.domain(), g.codomain(), multiply(g.matrix(), f.matrix()));
}

template <class S>
LinMap<S> operator*(const LinMap<S>& g, const LinMap<S>& f) {
  return compose(g, f);
}

template <class S>
LinMap<S> operator+(const LinMap<S>& a, const LinMap<S>& b) {
  if (a.domain().dim() != b.domain().dim() || a.codomain().dim() != b.codomain().dim())
    throw std::invalid_argument("LinMap sum: shape mismatch");
  return LinMap<S>(a.domain(), a.codomain(), a.matrix() + b.matrix());
}

template <class S>
LinMap<S> operator-(const LinMap<S>& a, const LinMap<S>& b) {
  if (a.domain().dim() != b.domain().dim() || a.codomain().dim() != b.codomain().dim())
    throw std::invalid_argument("LinMap difference: shape mismatch");
  return LinMap<S>(a.domain(), a.codomain(), a.matrix() - b.matrix());
}

template <class S>
LinMap<S> tensor(const LinMap<S>& f, const LinMap<S>& g) {
  return LinMap<S>(tensor(f.domain(), g.domain()), tensor(f.codomain(), g.codomain()),
                   kronecker(f.matrix(), g.matrix()));
}

// -- subspaces ---------------------------------------------------------------

template <class S>
class SubSpace {
 public:
  SubSpace() = default;

  static SubSpace span(BasedSpace ambient, const Matrix<S>& generators);
  static SubSpace span_sparse(BasedSpace ambient, const std::vector<SparseVector<S>>& generators);
  static SubSpace zero(BasedSpace ambient) { return span(std::move(ambient), Matrix<S>(0, 0)); }
  static SubSpace full(BasedSpace ambient);

  const BasedSpace& ambient() const { return ambient_; }
  Index rank() const { return basis_.cols(); }
  Index codim() const { return ambient_.dim() - rank(); }
  /// ambient.dim() x rank, reduced column-echelon form
  const Matrix<S>& basis() const { return basis_; }
  const std::vector<Index>& pivots() const { return pivots_; }
  const std::vector<Index>& free_coordinates() const { return free_; }
  /// codim x ambient.dim(); its kernel is exactly this subspace. Also the
  /// projection onto the quotient with basis the free coordinates.
  const Matrix<S>& equations() const { return equations_; }

  bool contains(const Vector<S>& v) const;
  bool contains(const SubSpace& other) const;
  /// Coordinates of v in the echelon basis; throws std::invalid_argument
  /// when v is not in the subspace.
  Vector<S> coordinates(const Vector<S>& v) const;

  friend bool operator==(const SubSpace& a, const SubSpace& b) {
    return a.ambient_.dim() == b.ambient_.dim() && a.pivots_ == b.pivots_ && exactly_equal(a.basis_, b.basis_);
  }

 private:
  BasedSpace ambient_;
  Matrix<S> basis_;
  std::vector<Index> pivots_;
  std::vector<Index> free_;
  Matrix<S> equations_;

  template <class T>
  friend SubSpace<T> make_subspace(BasedSpace ambient, std::vector<Index> pivots, std::vector<SparseVector<T>> rows);
};

/// Result of a quotient or coequalizer: V / W with the projection and the
/// section that picks the free coordinates.
template <class S>
struct Quotient {
  BasedSpace space;
  LinMap<S> projection;
  LinMap<S> section;
  SubSpace<S> relations;
};

template <class S>
SubSpace<S> kernel(const LinMap<S>& f);
template <class S>
SubSpace<S> kernel(const Matrix<S>& m, const BasedSpace& domain);
template <class S>
SubSpace<S> image(const LinMap<S>& f);
template <class S>
Index rank(const Matrix<S>& m);

template <class S>
Quotient<S> quotient(const BasedSpace& space, const SubSpace<S>& relations);
template <class S>
Quotient<S> coequalizer(const LinMap<S>& f, const LinMap<S>& g);
template <class S>
SubSpace<S> equalizer(const LinMap<S>& f, const LinMap<S>& g);

/// Unique h' with h' * projection == h; throws std::invalid_argument when h
/// does not vanish on the relations.
template <class S>
LinMap<S> factor_through(const Quotient<S>& q, const LinMap<S>& h);

/// Intersection of subspaces of `ambient`; the empty family gives the full space.
template <class S>
SubSpace<S> intersect(std::span<const SubSpace<S>> subspaces, const BasedSpace& ambient);
template <class S>
SubSpace<S> sum(const SubSpace<S>& a, const SubSpace<S>& b);

template <class S>
std::optional<Matrix<S>> inverse(const Matrix<S>& m);
/// Some X with a * X == b, or nullopt when the system is inconsistent.
template <class S>
std::optional<Matrix<S>> solve(const Matrix<S>& a, const Matrix<S>& b);

}  // namespace bgd
