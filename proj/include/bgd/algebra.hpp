#pragma once

// Algebras given by structure constants, their modules and bimodules, and
// tensor products over an algebra realised as coequalizer quotients.

#include <string>
#include <vector>

#include "bgd/linalg.hpp"
#include "bgd/report.hpp"

namespace bgd {

/// Finite-dimensional unital associative algebra. Column i * dim + j of
/// mul() is the product e_i e_j.
template <class S>
class Algebra {
 public:
  Algebra() = default;
  Algebra(BasedSpace space, Matrix<S> mul, Vector<S> unit);

  /// The ground field as a one-dimensional algebra.
  static Algebra ground(const std::string& label = "1");

  Index dim() const { return space_.dim(); }
  const BasedSpace& space() const { return space_; }
  const Matrix<S>& mul() const { return mul_; }
  const Vector<S>& unit() const { return unit_; }

  Vector<S> basis_vector(Index i) const { return unit_vector<S>(dim(), i); }
  Vector<S> product(const Vector<S>& a, const Vector<S>& b) const;
  /// x -> a x
  Matrix<S> left_mult(const Vector<S>& a) const;
  /// x -> x a
  Matrix<S> right_mult(const Vector<S>& a) const;
  Matrix<S> left_mult(Index i) const { return mul_.middleCols(i * dim(), dim()); }
  Matrix<S> right_mult(Index i) const;

  Algebra opposite() const;

  friend bool operator==(const Algebra& a, const Algebra& b) {
    return a.dim() == b.dim() && exactly_equal(a.mul_, b.mul_) && exactly_equal(a.unit_, b.unit_);
  }

 private:
  BasedSpace space_;
  Matrix<S> mul_;
  Vector<S> unit_;
};

/// Associativity on all basis triples and both unit laws.
template <class S>
Report check_algebra(const Algebra<S>& a);

/// The subalgebra on `sub`, in the coordinates of its echelon basis. Throws
/// VerificationError when `sub` is not closed or misses the unit.
template <class S>
Algebra<S> subalgebra(const Algebra<S>& a, const SubSpace<S>& sub);

template <class S>
struct AlgMorphism {
  Algebra<S> source;
  Algebra<S> target;
  LinMap<S> map;
};

/// Unit preservation and multiplicativity on basis pairs.
template <class S>
Report check_morphism(const AlgMorphism<S>& f);

/// Left R-action lambda: R (x) X -> X and right S-action rho: X (x) S -> X.
template <class S>
class Bimodule {
 public:
  Bimodule() = default;
  Bimodule(Algebra<S> left, Algebra<S> right, BasedSpace space, Matrix<S> left_action, Matrix<S> right_action);

  /// Per-basis-element action matrices: left[r] is x -> e_r |> x, right[s] is x -> x <| e_s.
  static Bimodule from_actions(Algebra<S> left, Algebra<S> right, BasedSpace space,
                               const std::vector<Matrix<S>>& left_actions,
                               const std::vector<Matrix<S>>& right_actions);
  static Bimodule regular(const Algebra<S>& a);

  const Algebra<S>& left_algebra() const { return left_; }
  const Algebra<S>& right_algebra() const { return right_; }
  const BasedSpace& space() const { return space_; }
  Index dim() const { return space_.dim(); }
  const Matrix<S>& lambda() const { return lambda_; }
  const Matrix<S>& rho() const { return rho_; }

  Matrix<S> left_action(Index r) const { return lambda_.middleCols(r * dim(), dim()); }
  Matrix<S> right_action(Index s) const;
  Matrix<S> left_action_by(const Vector<S>& r) const;
  Matrix<S> right_action_by(const Vector<S>& s) const;

 private:
  Algebra<S> left_;
  Algebra<S> right_;
  BasedSpace space_;
  Matrix<S> lambda_;
  Matrix<S> rho_;
};

template <class S>
Report check_bimodule(const Bimodule<S>& x);

template <class S>
class RightModule {
 public:
  RightModule() = default;
  /// action: X (x) A -> X, column x * dim(A) + a is x <| e_a.
  RightModule(Algebra<S> algebra, BasedSpace space, Matrix<S> action);
  static RightModule from_actions(Algebra<S> algebra, BasedSpace space, const std::vector<Matrix<S>>& actions);
  static RightModule regular(const Algebra<S>& a);

  const Algebra<S>& algebra() const { return algebra_; }
  const BasedSpace& space() const { return space_; }
  Index dim() const { return space_.dim(); }
  const Matrix<S>& action() const { return action_; }
  Matrix<S> action(Index a) const;
  Matrix<S> action_by(const Vector<S>& a) const;

 private:
  Algebra<S> algebra_;
  BasedSpace space_;
  Matrix<S> action_;
};

template <class S>
Report check_module(const RightModule<S>& x);

/// X (x)_R Y: the quotient of X (x) Y by the span of (x <| r) (x) y - x (x) (r |> y)
/// over basis vectors x, r, y, carrying the outer actions.
template <class S>
struct TensorOver {
  Quotient<S> quotient;
  Bimodule<S> bimodule;
  Index left_dim = 0;
  Index right_dim = 0;

  const BasedSpace& space() const { return quotient.space; }
  const Matrix<S>& projection() const { return quotient.projection.matrix(); }
  const Matrix<S>& section() const { return quotient.section.matrix(); }
  const SubSpace<S>& relations() const { return quotient.relations; }
};

/// Throws std::invalid_argument when X's right algebra or Y's left algebra
/// differs from `over`.
template <class S>
TensorOver<S> tensor_over(const Bimodule<S>& x, const Bimodule<S>& y, const Algebra<S>& over);
template <class S>
TensorOver<S> tensor_over(const Bimodule<S>& x, const Bimodule<S>& y);

/// The map dst.projection * flat * src.section after checking that `flat`
/// sends src's relations into dst's. Throws VerificationError("balance") with
/// the offending relation otherwise.
template <class S>
Matrix<S> descend(const Matrix<S>& flat, const Quotient<S>& src, const Quotient<S>& dst, const std::string& what);

/// Columns `cols` of kron(m, n), without forming the full product.
template <class S>
Matrix<S> kronecker_columns(const Matrix<S>& m, const Matrix<S>& n, const std::vector<Index>& cols);

/// (m (x) n) * v, visiting only the nonzero coefficients of v.
template <class S>
Matrix<S> kronecker_apply(const Matrix<S>& m, const Matrix<S>& n, const Matrix<S>& v);

/// f (x)_R g for bimodule maps f: X -> X', g: Y -> Y'.
template <class S>
LinMap<S> induced_on_quotient(const LinMap<S>& f, const LinMap<S>& g, const TensorOver<S>& src,
                              const TensorOver<S>& dst);

/// Hom_A(X, Y) as a subspace of all linear maps X -> Y, flattened row-major
/// (entry (i, j) at index i * dim X + j).
template <class S>
SubSpace<S> module_hom_space(const RightModule<S>& x, const RightModule<S>& y);

template <class S>
Matrix<S> unflatten(const Vector<S>& flat, Index rows, Index cols);

}  // namespace bgd
