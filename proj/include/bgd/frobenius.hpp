#pragma once

// Separable Frobenius structures on an algebra R: a functional psi and an
// element e = sum_i e_i (x) f_i of R (x) R with sum_i e_i f_i = 1. The
// comultiplication is sigma(r) = (r (x) 1) e.

#include "bgd/algebra.hpp"

namespace bgd {

template <class S>
struct SepFrobenius {
  Algebra<S> base;
  Matrix<S> psi;  // 1 x dim
  Vector<S> e;    // dim^2

  /// R -> R (x) R, r -> (r (x) 1) e
  Matrix<S> sigma() const;
};

/// Casimir symmetry, coassociativity, both counit laws, both Frobenius
/// compatibilities and separability, on basis elements.
template <class S>
Report check_sep_frobenius(const SepFrobenius<S>& sf);

/// x (x)_R y -> sum_i x e_i (x) f_i y, as a map X (x)_R Y -> X (x) Y. Verifies
/// that the flat map kills the balancing relations and that composing with
/// the projection gives the identity; throws VerificationError otherwise.
template <class S>
LinMap<S> frobenius_section(const Bimodule<S>& x, const Bimodule<S>& y, const TensorOver<S>& t,
                            const SepFrobenius<S>& sf);
template <class S>
LinMap<S> frobenius_section(const Bimodule<S>& x, const Bimodule<S>& y, const SepFrobenius<S>& sf);

}  // namespace bgd
