#pragma once

// Generators for the standard examples: groupoid algebras and their duals as
// weak bialgebras, and matrix algebras as separable Frobenius algebras.

#include <string>
#include <vector>

#include "bgd/frobenius.hpp"
#include "bgd/weak_bialgebra.hpp"

namespace bgd {

/// Multiplication table of a finite group on elements 0..n-1; table[a][b] = ab.
struct GroupTable {
  std::string name;
  std::vector<std::vector<int>> table;
};

GroupTable cyclic_group(int order);
/// Permutations of three letters, element 0 the identity.
GroupTable symmetric_group_3();
/// "Z<k>" or "S3".
GroupTable group_by_name(const std::string& name);
/// Throws std::invalid_argument unless the table is a group (closure,
/// associativity, identity, inverses).
void validate_group(const GroupTable& g);

enum class GroupoidKind { discrete, pair, group };

struct GroupoidSpec {
  GroupoidKind kind = GroupoidKind::discrete;
  int objects = 1;
  GroupTable group;  // used when kind == group

  std::string name() const;
};

/// Morphisms of the groupoid: (source, target, group element).
struct GroupoidMorphism {
  int source;
  int target;
  int element;
};
std::vector<GroupoidMorphism> groupoid_morphisms(const GroupoidSpec& g);

/// The groupoid algebra: basis the morphisms, g h = composite or 0,
/// Delta(g) = g (x) g, epsilon(g) = 1.
template <class S>
WeakBialgebra<S> gen_groupoid_wba(const GroupoidSpec& g, const FieldSpec& field);

/// Functions on the groupoid: delta_g delta_h = [g = h] delta_g,
/// Delta(delta_g) = sum over composable h, k with hk = g of delta_h (x) delta_k,
/// epsilon(delta_g) = [g is an identity].
template <class S>
WeakBialgebra<S> gen_dual_groupoid_wba(const GroupoidSpec& g, const FieldSpec& field);

/// M_n with psi = n tr and e = (1/n) sum E_ij (x) E_ji. Throws
/// std::invalid_argument when the characteristic divides n.
template <class S>
SepFrobenius<S> gen_matrix_frobenius(int n, const FieldSpec& field);

}  // namespace bgd
