#pragma once

// Right bialgebroids (A, R, s, t, delta, epsilon). A is an R-R-bimodule by
// right multiplication: r |> a = a t(r) and a <| r = a s(r). The coproduct
// lands in A (x)_R A and is stored in the coordinates of that quotient.

#include <optional>

#include "bgd/algebra.hpp"

namespace bgd {

template <class S>
class RightBialgebroid {
 public:
  RightBialgebroid() = default;

  /// delta given in the coordinates of A (x)_R A.
  static RightBialgebroid from_quotient(Algebra<S> a, Algebra<S> r, Matrix<S> s, Matrix<S> t, Matrix<S> delta,
                                        Matrix<S> counit);
  /// delta given by a lift A -> A (x) A, projected to the quotient.
  static RightBialgebroid from_lift(Algebra<S> a, Algebra<S> r, Matrix<S> s, Matrix<S> t, Matrix<S> delta_lift,
                                    Matrix<S> counit);

  const Algebra<S>& total() const { return a_; }
  const Algebra<S>& base() const { return r_; }
  /// dim A x dim R
  const Matrix<S>& source() const { return s_; }
  const Matrix<S>& target() const { return t_; }
  /// dim(A (x)_R A) x dim A
  const Matrix<S>& delta() const { return delta_; }
  /// dim R x dim A
  const Matrix<S>& counit() const { return eps_; }

  /// A as an R-R-bimodule.
  const Bimodule<S>& bimodule() const { return bimodule_; }
  /// A (x)_R A
  const TensorOver<S>& tensor_square() const { return square_; }
  /// section * delta: the canonical lift A -> A (x) A.
  Matrix<S> delta_lift() const { return multiply(square_.section(), delta_); }

 private:
  RightBialgebroid(Algebra<S> a, Algebra<S> r, Matrix<S> s, Matrix<S> t, Matrix<S> counit);

  Algebra<S> a_;
  Algebra<S> r_;
  Matrix<S> s_;
  Matrix<S> t_;
  Matrix<S> delta_;
  Matrix<S> eps_;
  Bimodule<S> bimodule_;
  TensorOver<S> square_;
};

/// A x_R A inside A (x)_R A with its induced multiplication.
template <class S>
struct Takeuchi {
  SubSpace<S> space;
  /// Present when closure, lift independence and unit checks passed.
  std::optional<Algebra<S>> algebra;
  Report report;
};

/// Never throws for well-shaped data; failures are recorded in the report.
template <class S>
Takeuchi<S> analyze_takeuchi(const RightBialgebroid<S>& b);
/// As analyze_takeuchi, but throws VerificationError when closure fails.
template <class S>
Takeuchi<S> takeuchi_product(const RightBialgebroid<S>& b);

/// Factorwise product (a (x) b)(c (x) d) = ac (x) bd on flat A (x) A vectors.
template <class S>
Vector<S> tensor_square_product(const Algebra<S>& a, const Vector<S>& u, const Vector<S>& v);

template <class S>
Report check_bialgebroid(const RightBialgebroid<S>& b);

/// The R-bimodule underlying a right A-module: r |> x = x <| t(r), x <| r = x <| s(r).
template <class S>
Bimodule<S> restrict_to_base(const RightBialgebroid<S>& b, const RightModule<S>& x);

template <class S>
struct ModuleProduct {
  TensorOver<S> tensor;
  RightModule<S> module;
};

/// X (x)_R Y with [x (x) y] <| a = sum [x <| a_(1) (x) y <| a_(2)]. Throws
/// VerificationError when the action does not descend or is not associative.
template <class S>
ModuleProduct<S> module_product(const RightBialgebroid<S>& b, const RightModule<S>& x, const RightModule<S>& y);

/// R with r <| a = epsilon(s(r) a).
template <class S>
RightModule<S> unit_module(const RightBialgebroid<S>& b);

template <class S>
struct BaseReconstruction {
  /// Hom_A(A, E) with the convolution product.
  Algebra<S> algebra;
  /// rho -> rho(1), an algebra isomorphism onto R.
  LinMap<S> comparison;
  Report report;
};

/// Throws VerificationError when the comparison is not an algebra isomorphism.
template <class S>
BaseReconstruction<S> reconstruct_base(const RightBialgebroid<S>& b);

}  // namespace bgd
