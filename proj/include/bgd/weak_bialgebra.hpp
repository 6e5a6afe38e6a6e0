#pragma once

// Weak bialgebras and their correspondence with right bialgebroids over a
// separable Frobenius base.

#include "bgd/bialgebroid.hpp"
#include "bgd/frobenius.hpp"

namespace bgd {

template <class S>
struct WeakBialgebra {
  Algebra<S> algebra;
  Matrix<S> coproduct;  // dim^2 x dim
  Matrix<S> counit;     // 1 x dim

  friend bool operator==(const WeakBialgebra& a, const WeakBialgebra& b) {
    return a.algebra == b.algebra && exactly_equal(a.coproduct, b.coproduct) && exactly_equal(a.counit, b.counit);
  }
};

/// Coalgebra laws, multiplicativity of the coproduct, the two weak counit
/// identities on basis triples and the two weak unit identities.
template <class S>
Report check_wba(const WeakBialgebra<S>& w);

template <class S>
struct TargetProjection {
  /// a -> 1_(1) epsilon(a 1_(2)), as a map A -> A
  Matrix<S> projection;
  SubSpace<S> image;
  Algebra<S> algebra;
  /// dim A x dim A^R
  Matrix<S> inclusion;
};

/// Throws VerificationError when the image is not a unital subalgebra.
template <class S>
TargetProjection<S> target_projection(const WeakBialgebra<S>& w);

/// Right bialgebroid over A^R with s the inclusion, t(r) = epsilon(r 1_(1)) 1_(2),
/// delta the projected coproduct and counit the target projection. Throws
/// VerificationError naming the first failed bialgebroid axiom.
template <class S>
RightBialgebroid<S> wba_to_bialgebroid(const WeakBialgebra<S>& w);

/// psi = epsilon restricted to A^R; e the unique element of A^R (x) A^R with
/// (s (x) t)(e) = Delta(1). Throws VerificationError when no such e exists or
/// the candidate fails check_sep_frobenius.
template <class S>
SepFrobenius<S> base_sep_frobenius(const WeakBialgebra<S>& w);

/// Delta(a) = sum a_(1) s(e_i) (x) a_(2) t(f_i), epsilon = psi after the
/// bialgebroid counit. Throws VerificationError when the result is not a weak
/// bialgebra.
template <class S>
WeakBialgebra<S> bialgebroid_to_wba(const RightBialgebroid<S>& b, const SepFrobenius<S>& sf);

/// Factorwise product on flat A^(x)k vectors.
template <class S>
Vector<S> tensor_power_product(const Algebra<S>& a, Index k, const Vector<S>& u, const Vector<S>& v);

}  // namespace bgd
