#pragma once

// JSON input documents. A document names a field, a kind, the dimensions of
// its spaces and a set of sparse components [row, col, num, den]. Numerators
// and denominators are JSON integers or decimal strings.
//
//   {"field": "Q" | {"Fp": p}, "kind": "wba", "dims": {"A": 4},
//    "labels": {"A": [...]}, "components": {"mul": [[0, 0, 1, 1], ...], ...}}
//
// Component names by kind:
//   algebra        mul, unit
//   wba            mul, unit, delta, counit
//   bialgebroid    A.mul, A.unit, R.mul, R.unit, s, t, delta_lift, counit
//   sep_frobenius  mul, unit, psi, e                 (dims: R)
//   module         mul, unit, action                 (dims: A, X)
//   fragment       G2:a|b, G^2:a|b, G0, G^0, lunitor:c, runitor:c,
//                  assoc:a|b|c, morph:f, morph*:f|g, and for a witness
//                  (dims: S) S.mul, S.unit, V0, V.lambda:c, V.rho:c
// A fragment document also carries a "fragment" object with the unit object,
// objects [[name, dim]], products [[a, b, a*b]], pairs, triples, morphisms
// [[name, source, target]] and morphism_products [[f, g]].

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "bgd/factorization.hpp"
#include "bgd/weak_bialgebra.hpp"

namespace bgd {

struct Entry {
  Index row = 0;
  Index col = 0;
  std::string num;
  std::string den;
};

struct FragmentLayout {
  std::string unit;
  std::vector<std::pair<std::string, Index>> objects;
  std::vector<std::tuple<std::string, std::string, std::string>> products;
  std::vector<ObjectPair> pairs;
  std::vector<ObjectTriple> triples;
  std::vector<std::tuple<std::string, std::string, std::string>> morphisms;
  std::vector<ObjectPair> morphism_products;
};

struct Document {
  FieldSpec field;
  std::string kind;
  std::map<std::string, Index> dims;
  std::map<std::string, std::vector<std::string>> labels;
  /// entries sorted by (row, col), zeros dropped, fractions reduced
  std::map<std::string, std::vector<Entry>> components;
  std::optional<FragmentLayout> fragment;
};

/// Throws InputError naming the offending field.
Document parse_document(std::string_view text);
Document document_from_json(const nlohmann::json& j);
nlohmann::json document_json(const Document& doc);
/// Sorted keys, two-space indent, arrays of scalars on one line, trailing newline.
std::string canonical_dump(const nlohmann::json& j);
std::string serialize(const Document& doc);

/// Shape of a named component; throws InputError for names the kind does not know.
std::pair<Index, Index> component_shape(const Document& doc, const std::string& name);

nlohmann::json field_json(const FieldSpec& field);

// -- typed views (all throw InputError on missing or malformed data) ---------

template <class S>
Matrix<S> read_matrix(const Document& doc, const std::string& name);
template <class S>
Algebra<S> read_algebra(const Document& doc);
template <class S>
WeakBialgebra<S> read_wba(const Document& doc);
template <class S>
RightBialgebroid<S> read_bialgebroid(const Document& doc);
template <class S>
SepFrobenius<S> read_sep_frobenius(const Document& doc);
template <class S>
RightModule<S> read_module(const Document& doc);
template <class S>
MonoidalFunctorFragment<S> read_fragment(const Document& doc);
/// Present when the fragment document has an S dimension.
template <class S>
std::optional<FactorizationWitness<S>> read_witness(const Document& doc);

template <class S>
Document algebra_document(const FieldSpec& field, const Algebra<S>& a);
template <class S>
Document wba_document(const FieldSpec& field, const WeakBialgebra<S>& w);
template <class S>
Document bialgebroid_document(const FieldSpec& field, const RightBialgebroid<S>& b);
template <class S>
Document sep_frobenius_document(const FieldSpec& field, const SepFrobenius<S>& sf);
template <class S>
Document module_document(const FieldSpec& field, const RightModule<S>& m);
template <class S>
Document fragment_document(const FieldSpec& field, const MonoidalFunctorFragment<S>& f);
/// Adds the witness components to a fragment document.
template <class S>
void add_witness(Document& doc, const FactorizationWitness<S>& w);

}  // namespace bgd
