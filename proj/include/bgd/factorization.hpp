#pragma once

// Finite fragments of monoidal functors into vector spaces: the canonical
// base algebra G(e), the lift of each object to a G(e)-bimodule, essential
// strength, the universal morphism of a factorization, and separable
// Frobenius structures on the functor.

#include <map>
#include <optional>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "bgd/bialgebroid.hpp"
#include "bgd/frobenius.hpp"

namespace bgd {

using ObjectPair = std::pair<std::string, std::string>;
using ObjectTriple = std::tuple<std::string, std::string, std::string>;

template <class S>
struct MonoidalFunctorFragment {
  struct Morphism {
    std::string source;
    std::string target;
    Matrix<S> map;  // G f: G source -> G target
  };

  /// G c for every listed object, in listing order.
  std::vector<std::pair<std::string, BasedSpace>> objects;
  std::string unit_object;
  std::map<ObjectPair, std::string> products;
  /// G_{a,b}: G a (x) G b -> G(a * b)
  std::map<ObjectPair, Matrix<S>> g2;
  /// G^{a,b}: G(a * b) -> G a (x) G b
  std::map<ObjectPair, Matrix<S>> g2_op;
  /// G_0: k -> G e, a column
  Matrix<S> g0;
  /// G^0: G e -> k, a row
  std::optional<Matrix<S>> g0_op;
  /// G(l_c): G(e * c) -> G c and G(r_c): G(c * e) -> G c; identity when absent
  std::map<std::string, Matrix<S>> left_unitors;
  std::map<std::string, Matrix<S>> right_unitors;
  /// G((a * b) * c) -> G(a * (b * c)); identity when absent
  std::map<ObjectTriple, Matrix<S>> associators;
  std::vector<ObjectPair> pairs;
  std::vector<ObjectTriple> triples;
  std::map<std::string, Morphism> morphisms;
  /// G(f * g) for listed morphism pairs; "id:<object>" names an identity.
  std::map<ObjectPair, Matrix<S>> morphism_products;

  bool has_object(const std::string& c) const;
  const BasedSpace& space(const std::string& c) const;
  Index dim(const std::string& c) const { return space(c).dim(); }
  const std::string& product(const std::string& a, const std::string& b) const;
  const Matrix<S>& structure(const std::string& a, const std::string& b) const;
  const Matrix<S>& co_structure(const std::string& a, const std::string& b) const;
  Matrix<S> left_unitor(const std::string& c) const;
  Matrix<S> right_unitor(const std::string& c) const;
  Matrix<S> associator(const std::string& a, const std::string& b, const std::string& c) const;
  bool opmonoidal() const { return g0_op.has_value(); }

  /// Shapes, names and closure of the product table; throws std::invalid_argument.
  void validate() const;
};

/// Hexagon on listed triples, both unit squares on every object with the
/// needed products, the dual axioms when opmonoidal data is present, and
/// naturality on listed morphism products.
template <class S>
Report check_fragment(const MonoidalFunctorFragment<S>& f);

/// G e with multiplication G(l_e) G_{e,e} and unit G_0; throws VerificationError
/// when this is not an algebra.
template <class S>
Algebra<S> canonical_base(const MonoidalFunctorFragment<S>& f);

/// G c with actions G(l_c) G_{e,c} and G(r_c) G_{c,e}.
template <class S>
Bimodule<S> canonical_bimodule(const MonoidalFunctorFragment<S>& f, const std::string& c);

template <class S>
struct Strength {
  TensorOver<S> tensor;
  /// the unique U with U pi = G_{a,b}
  LinMap<S> induced;
  bool essentially_strong = false;
  Report report;
};

/// Throws VerificationError when G_{a,b} does not coequalize the two actions.
template <class S>
Strength<S> induced_strength(const MonoidalFunctorFragment<S>& f, const std::string& a, const std::string& b);

template <class S>
struct FactorizationWitness {
  Algebra<S> algebra;
  /// S-bimodule structure on G c for every object with both unit products
  std::map<std::string, Bimodule<S>> bimodules;
  /// V_0: S -> G e
  Matrix<S> unit_map;
};

template <class S>
struct SigmaResult {
  AlgMorphism<S> sigma;
  Report report;
};

/// sigma = V_0, checked to be an algebra morphism with pullback of U along
/// sigma equal to V on every object. Throws VerificationError on failure.
template <class S>
SigmaResult<S> universal_sigma(const MonoidalFunctorFragment<S>& f, const FactorizationWitness<S>& w);

/// Non-throwing form of universal_sigma.
template <class S>
SigmaResult<S> analyze_sigma(const MonoidalFunctorFragment<S>& f, const FactorizationWitness<S>& w);

/// (R, U) itself.
template <class S>
FactorizationWitness<S> identity_witness(const MonoidalFunctorFragment<S>& f);
/// S = k acting by scalars.
template <class S>
FactorizationWitness<S> scalar_witness(const MonoidalFunctorFragment<S>& f);
/// S = R with U twisted by an automorphism phi of R: r |> x = phi(r) |> x.
template <class S>
FactorizationWitness<S> twisted_witness(const MonoidalFunctorFragment<S>& f, const Matrix<S>& phi);

/// Frobenius structure on G e read off from the fragment: multiplication
/// G(l_e) G_{e,e}, comultiplication G^{e,e} G(l_e)^{-1}, psi = G^0.
template <class S>
SepFrobenius<S> derived_base_frobenius(const MonoidalFunctorFragment<S>& f);

/// Monoidal and opmonoidal axioms, both Frobenius conditions on listed
/// triples, separability G_{X,Y} G^{X,Y} = 1 and the split coequalizer
/// identities on listed pairs, and the derived base Frobenius structure.
template <class S>
Report functor_frobenius_check(const MonoidalFunctorFragment<S>& f);

/// Forgetful functor of right A-modules into vector spaces, on the unit module
/// E, the given base modules and the products needed for every pair and
/// triple of base objects. G_2 is the quotient projection, G^2 the Frobenius
/// section, G_0 the unit of R and G^0 = psi.
template <class S>
MonoidalFunctorFragment<S> forgetful_fragment(const RightBialgebroid<S>& b, const SepFrobenius<S>& sf,
                                              const std::vector<std::pair<std::string, RightModule<S>>>& modules,
                                              bool with_triples = true);

template <class S>
struct BaseComparison {
  /// Hom_A(A, E) under convolution -> canonical_base(f), rho -> rho(1)
  AlgMorphism<S> map;
  Report report;
};

/// Cross-check of canonical_base against the base reconstructed from the
/// bialgebroid, for a forgetful fragment of b. Never throws on axiom failure.
template <class S>
BaseComparison<S> compare_base(const RightBialgebroid<S>& b, const MonoidalFunctorFragment<S>& f);

/// Invariants functor Hom_A(k, -) on the trivial and sign modules of the
/// group algebra of Z2 (characteristic not 2).
template <class S>
MonoidalFunctorFragment<S> invariants_fragment(const FieldSpec& field);

}  // namespace bgd
