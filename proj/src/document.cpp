#include "bgd/document.hpp"

#include <algorithm>
#include <set>

namespace bgd {

using nlohmann::json;

namespace {

[[noreturn]] void bad(const std::string& where, const std::string& what) {
  throw InputError(where + ": " + what);
}

const json& member(const json& j, const std::string& key, const std::string& where) {
  if (!j.is_object()) bad(where, "expected an object");
  auto it = j.find(key);
  if (it == j.end()) bad(where, "missing \"" + key + "\"");
  return *it;
}

std::string text(const json& j, const std::string& where) {
  if (!j.is_string()) bad(where, "expected a string");
  return j.get<std::string>();
}

Index count(const json& j, const std::string& where) {
  if (!j.is_number_integer() || j.get<long long>() < 0) bad(where, "expected a nonnegative integer");
  return static_cast<Index>(j.get<long long>());
}

std::string integer_text(const json& j, const std::string& where) {
  if (j.is_number_integer()) return j.dump();
  if (j.is_string()) {
    std::string s = j.get<std::string>();
    std::size_t start = !s.empty() && (s[0] == '-' || s[0] == '+') ? 1 : 0;
    if (s.size() > start && std::all_of(s.begin() + static_cast<std::ptrdiff_t>(start), s.end(),
                                        [](char c) { return c >= '0' && c <= '9'; }))
      return s;
  }
  bad(where, "expected an integer or a decimal string");
}

json integer_json(const std::string& s) {
  try {
    std::size_t used = 0;
    long long v = std::stoll(s, &used);
    if (used == s.size()) return v;
  } catch (const std::out_of_range&) {
  }
  return s;
}

std::vector<std::string> names(const json& j, std::size_t arity, const std::string& where) {
  if (!j.is_array() || j.size() != arity) bad(where, "expected " + std::to_string(arity) + " names");
  std::vector<std::string> out;
  for (std::size_t i = 0; i < arity; ++i) out.push_back(text(j[i], where + "[" + std::to_string(i) + "]"));
  return out;
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::size_t start = 0;
  for (;;) {
    std::size_t pos = s.find(sep, start);
    out.push_back(s.substr(start, pos - start));
    if (pos == std::string::npos) return out;
    start = pos + 1;
  }
}

const std::vector<std::string>& kinds() {
  static const std::vector<std::string> k{"algebra", "wba", "bialgebroid", "sep_frobenius", "module", "fragment"};
  return k;
}

std::vector<std::string> dim_names(const std::string& kind) {
  if (kind == "algebra" || kind == "wba") return {"A"};
  if (kind == "bialgebroid") return {"A", "R"};
  if (kind == "sep_frobenius") return {"R"};
  if (kind == "module") return {"A", "X"};
  return {};
}

struct FragmentShapes {
  const FragmentLayout& layout;

  Index dim(const std::string& c) const {
    for (const auto& [name, d] : layout.objects)
      if (name == c) return d;
    throw InputError("fragment: unknown object '" + c + "'");
  }
  const std::string& product(const std::string& a, const std::string& b) const {
    for (const auto& [x, y, xy] : layout.products)
      if (x == a && y == b) return xy;
    throw InputError("fragment: no product listed for " + a + "|" + b);
  }
  std::pair<std::string, std::string> ends(const std::string& f) const {
    if (f.rfind("id:", 0) == 0) {
      dim(f.substr(3));
      return {f.substr(3), f.substr(3)};
    }
    for (const auto& [name, s, t] : layout.morphisms)
      if (name == f) return {s, t};
    throw InputError("fragment: unknown morphism '" + f + "'");
  }
};

}  // namespace

nlohmann::json field_json(const FieldSpec& field) {
  if (field.is_rational()) return "Q";
  return json{{"Fp", field.modulus}};
}

std::pair<Index, Index> component_shape(const Document& doc, const std::string& name) {
  auto d = [&](const std::string& key) -> Index {
    auto it = doc.dims.find(key);
    if (it == doc.dims.end()) throw InputError("dims: missing \"" + key + "\"");
    return it->second;
  };
  auto unknown = [&]() -> std::pair<Index, Index> {
    throw InputError("components: unknown component '" + name + "' for kind " + doc.kind);
  };
  const std::string& k = doc.kind;
  if (k == "algebra" || k == "wba") {
    Index n = d("A");
    if (name == "mul") return {n, n * n};
    if (name == "unit") return {n, 1};
    if (k == "wba" && name == "delta") return {n * n, n};
    if (k == "wba" && name == "counit") return {1, n};
    return unknown();
  }
  if (k == "bialgebroid") {
    Index n = d("A"), m = d("R");
    if (name == "A.mul") return {n, n * n};
    if (name == "A.unit") return {n, 1};
    if (name == "R.mul") return {m, m * m};
    if (name == "R.unit") return {m, 1};
    if (name == "s" || name == "t") return {n, m};
    if (name == "delta_lift") return {n * n, n};
    if (name == "counit") return {m, n};
    return unknown();
  }
  if (k == "sep_frobenius") {
    Index m = d("R");
    if (name == "mul") return {m, m * m};
    if (name == "unit") return {m, 1};
    if (name == "psi") return {1, m};
    if (name == "e") return {m * m, 1};
    return unknown();
  }
  if (k == "module") {
    Index n = d("A"), x = d("X");
    if (name == "mul") return {n, n * n};
    if (name == "unit") return {n, 1};
    if (name == "action") return {x, x * n};
    return unknown();
  }
  if (k != "fragment" || !doc.fragment) return unknown();
  FragmentShapes f{*doc.fragment};
  const std::string& e = doc.fragment->unit;
  std::size_t colon = name.find(':');
  std::string head = name.substr(0, colon);
  std::vector<std::string> args = colon == std::string::npos ? std::vector<std::string>{}
                                                              : split(name.substr(colon + 1), '|');
  auto arity = [&](std::size_t n) {
    if (args.size() != n) unknown();
  };
  if (name == "G0") return {f.dim(e), 1};
  if (name == "G^0") return {1, f.dim(e)};
  if (head == "G2" || head == "G^2") {
    arity(2);
    Index from = f.dim(args[0]) * f.dim(args[1]), to = f.dim(f.product(args[0], args[1]));
    return head == "G2" ? std::pair{to, from} : std::pair{from, to};
  }
  if (head == "lunitor") {
    arity(1);
    return {f.dim(args[0]), f.dim(f.product(e, args[0]))};
  }
  if (head == "runitor") {
    arity(1);
    return {f.dim(args[0]), f.dim(f.product(args[0], e))};
  }
  if (head == "assoc") {
    arity(3);
    const auto& [a, b, c] = std::tie(args[0], args[1], args[2]);
    return {f.dim(f.product(a, f.product(b, c))), f.dim(f.product(f.product(a, b), c))};
  }
  if (head == "morph") {
    arity(1);
    auto [s, t] = f.ends(args[0]);
    return {f.dim(t), f.dim(s)};
  }
  if (head == "morph*") {
    arity(2);
    auto [s1, t1] = f.ends(args[0]);
    auto [s2, t2] = f.ends(args[1]);
    return {f.dim(f.product(t1, t2)), f.dim(f.product(s1, s2))};
  }
  if (doc.dims.count("S")) {
    Index s = d("S");
    if (name == "S.mul") return {s, s * s};
    if (name == "S.unit") return {s, 1};
    if (name == "V0") return {f.dim(e), s};
    if (head == "V.lambda") {
      arity(1);
      return {f.dim(args[0]), s * f.dim(args[0])};
    }
    if (head == "V.rho") {
      arity(1);
      return {f.dim(args[0]), f.dim(args[0]) * s};
    }
  }
  return unknown();
}

// -- parsing -----------------------------------------------------------------

namespace {

FieldSpec parse_field(const json& j) {
  try {
    if (j.is_string()) {
      std::string s = j.get<std::string>();
      if (s == "Q") return FieldSpec::rationals();
      return FieldSpec::parse(s);
    }
    if (j.is_object() && j.size() == 1 && j.contains("Fp")) {
      const json& p = j.at("Fp");
      if (!p.is_number_unsigned()) bad("field.Fp", "expected a positive integer");
      return FieldSpec::prime(p.get<std::uint64_t>());
    }
  } catch (const std::invalid_argument& err) {
    bad("field", err.what());
  }
  bad("field", "expected \"Q\" or {\"Fp\": p}");
}

FragmentLayout parse_layout(const json& j) {
  const std::string where = "fragment";
  FragmentLayout l;
  l.unit = text(member(j, "unit", where), where + ".unit");
  std::set<std::string> seen;
  const json& objs = member(j, "objects", where);
  if (!objs.is_array()) bad(where + ".objects", "expected an array");
  for (std::size_t i = 0; i < objs.size(); ++i) {
    std::string w = where + ".objects[" + std::to_string(i) + "]";
    if (!objs[i].is_array() || objs[i].size() != 2) bad(w, "expected [name, dim]");
    std::string name = text(objs[i][0], w);
    if (name.empty() || name.find('|') != std::string::npos || name.rfind("id:", 0) == 0)
      bad(w, "bad object name '" + name + "'");
    if (!seen.insert(name).second) bad(w, "duplicate object '" + name + "'");
    l.objects.emplace_back(name, count(objs[i][1], w));
  }
  if (!seen.count(l.unit)) bad(where + ".unit", "'" + l.unit + "' is not a listed object");
  auto known = [&](const std::string& c, const std::string& w) {
    if (!seen.count(c)) bad(w, "unknown object '" + c + "'");
  };
  auto list = [&](const char* key) -> const json& {
    static const json empty = json::array();
    auto it = j.find(key);
    if (it == j.end()) return empty;
    if (!it->is_array()) bad(where + "." + key, "expected an array");
    return *it;
  };
  std::set<ObjectPair> have;
  const json& prods = list("products");
  for (std::size_t i = 0; i < prods.size(); ++i) {
    std::string w = where + ".products[" + std::to_string(i) + "]";
    auto n = names(prods[i], 3, w);
    for (const auto& c : n) known(c, w);
    if (!have.insert({n[0], n[1]}).second) bad(w, "duplicate product " + n[0] + "|" + n[1]);
    l.products.emplace_back(n[0], n[1], n[2]);
  }
  const json& pairs = list("pairs");
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    std::string w = where + ".pairs[" + std::to_string(i) + "]";
    auto n = names(pairs[i], 2, w);
    for (const auto& c : n) known(c, w);
    l.pairs.emplace_back(n[0], n[1]);
  }
  const json& triples = list("triples");
  for (std::size_t i = 0; i < triples.size(); ++i) {
    std::string w = where + ".triples[" + std::to_string(i) + "]";
    auto n = names(triples[i], 3, w);
    for (const auto& c : n) known(c, w);
    l.triples.emplace_back(n[0], n[1], n[2]);
  }
  std::set<std::string> morphs;
  const json& ms = list("morphisms");
  for (std::size_t i = 0; i < ms.size(); ++i) {
    std::string w = where + ".morphisms[" + std::to_string(i) + "]";
    auto n = names(ms[i], 3, w);
    if (n[0].empty() || n[0].find('|') != std::string::npos || n[0].rfind("id:", 0) == 0)
      bad(w, "bad morphism name '" + n[0] + "'");
    if (!morphs.insert(n[0]).second) bad(w, "duplicate morphism '" + n[0] + "'");
    known(n[1], w);
    known(n[2], w);
    l.morphisms.emplace_back(n[0], n[1], n[2]);
  }
  const json& mps = list("morphism_products");
  for (std::size_t i = 0; i < mps.size(); ++i) {
    std::string w = where + ".morphism_products[" + std::to_string(i) + "]";
    auto n = names(mps[i], 2, w);
    l.morphism_products.emplace_back(n[0], n[1]);
  }
  return l;
}

std::vector<Entry> parse_entries(const Document& doc, const std::string& name, const json& j) {
  std::string where = "components." + name;
  auto [rows, cols] = component_shape(doc, name);
  if (!j.is_array()) bad(where, "expected an array of [row, col, num, den]");
  std::map<std::pair<Index, Index>, Entry> sorted;
  for (std::size_t i = 0; i < j.size(); ++i) {
    std::string w = where + "[" + std::to_string(i) + "]";
    const json& e = j[i];
    if (!e.is_array() || e.size() != 4) bad(w, "expected [row, col, num, den]");
    Index r = count(e[0], w + ".row"), c = count(e[1], w + ".col");
    if (r >= rows) bad(w, "row " + std::to_string(r) + " out of range (" + std::to_string(rows) + " rows)");
    if (c >= cols) bad(w, "col " + std::to_string(c) + " out of range (" + std::to_string(cols) + " cols)");
    std::string num = integer_text(e[2], w + ".num"), den = integer_text(e[3], w + ".den");
    std::pair<std::string, std::string> frac;
    try {
      frac = with_field(doc.field, [&]<class S>() { return to_fraction(parse_scalar<S>(doc.field, num, den)); });
    } catch (const std::domain_error& err) {
      bad(w, err.what());
    } catch (const std::invalid_argument& err) {
      bad(w, err.what());
    }
    if (!sorted.emplace(std::pair{r, c}, Entry{r, c, frac.first, frac.second}).second)
      bad(w, "duplicate entry at (" + std::to_string(r) + ", " + std::to_string(c) + ")");
  }
  std::vector<Entry> out;
  for (auto& [rc, entry] : sorted)
    if (entry.num != "0") out.push_back(std::move(entry));
  return out;
}

}  // namespace

Document document_from_json(const json& j) {
  Document doc;
  if (!j.is_object()) bad("document", "expected a JSON object");
  doc.field = parse_field(member(j, "field", "document"));
  doc.kind = text(member(j, "kind", "document"), "kind");
  if (std::find(kinds().begin(), kinds().end(), doc.kind) == kinds().end()) bad("kind", "unknown kind '" + doc.kind + "'");

  if (doc.kind == "fragment") {
    doc.fragment = parse_layout(member(j, "fragment", "document"));
    if (auto it = j.find("dims"); it != j.end()) {
      if (!it->is_object()) bad("dims", "expected an object");
      for (const auto& [key, value] : it->items()) {
        if (key != "S") bad("dims." + key, "a fragment document only has the witness dimension S");
        doc.dims[key] = count(value, "dims." + key);
      }
    }
  } else {
    const json& dims = member(j, "dims", "document");
    for (const auto& key : dim_names(doc.kind)) doc.dims[key] = count(member(dims, key, "dims"), "dims." + key);
    for (const auto& [key, value] : dims.items())
      if (!doc.dims.count(key)) bad("dims." + key, "unknown dimension for kind " + doc.kind);
  }

  std::map<std::string, Index> spaces = doc.dims;
  if (doc.fragment)
    for (const auto& [name, d] : doc.fragment->objects) spaces[name] = d;
  if (auto it = j.find("labels"); it != j.end()) {
    if (!it->is_object()) bad("labels", "expected an object");
    for (const auto& [key, value] : it->items()) {
      std::string w = "labels." + key;
      auto sp = spaces.find(key);
      if (sp == spaces.end()) bad(w, "no space named '" + key + "'");
      if (!value.is_array() || static_cast<Index>(value.size()) != sp->second)
        bad(w, "expected " + std::to_string(sp->second) + " labels");
      std::vector<std::string> ls;
      for (std::size_t i = 0; i < value.size(); ++i) ls.push_back(text(value[i], w + "[" + std::to_string(i) + "]"));
      if (std::set<std::string>(ls.begin(), ls.end()).size() != ls.size()) bad(w, "labels are not unique");
      doc.labels[key] = std::move(ls);
    }
  }

  const json& comps = member(j, "components", "document");
  if (!comps.is_object()) bad("components", "expected an object");
  for (const auto& [key, value] : comps.items()) doc.components[key] = parse_entries(doc, key, value);
  return doc;
}

Document parse_document(std::string_view text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& err) {
    throw InputError(std::string("malformed JSON: ") + err.what());
  }
  return document_from_json(j);
}

json document_json(const Document& doc) {
  json j;
  j["field"] = field_json(doc.field);
  j["kind"] = doc.kind;
  j["dims"] = json::object();
  for (const auto& [k, v] : doc.dims) j["dims"][k] = v;
  if (!doc.labels.empty()) j["labels"] = doc.labels;
  j["components"] = json::object();
  for (const auto& [name, entries] : doc.components) {
    json list = json::array();
    for (const auto& e : entries) list.push_back(json::array({e.row, e.col, integer_json(e.num), integer_json(e.den)}));
    j["components"][name] = std::move(list);
  }
  if (doc.fragment) {
    const FragmentLayout& l = *doc.fragment;
    json f;
    f["unit"] = l.unit;
    f["objects"] = json::array();
    for (const auto& [name, d] : l.objects) f["objects"].push_back(json::array({name, d}));
    f["products"] = json::array();
    for (const auto& [a, b, c] : l.products) f["products"].push_back(json::array({a, b, c}));
    f["pairs"] = json::array();
    for (const auto& [a, b] : l.pairs) f["pairs"].push_back(json::array({a, b}));
    f["triples"] = json::array();
    for (const auto& [a, b, c] : l.triples) f["triples"].push_back(json::array({a, b, c}));
    f["morphisms"] = json::array();
    for (const auto& [n, s, t] : l.morphisms) f["morphisms"].push_back(json::array({n, s, t}));
    f["morphism_products"] = json::array();
    for (const auto& [a, b] : l.morphism_products) f["morphism_products"].push_back(json::array({a, b}));
    j["fragment"] = std::move(f);
  }
  return j;
}

namespace {

void write_canonical(const json& j, int depth, std::string& out) {
  std::string pad(static_cast<std::size_t>(2 * (depth + 1)), ' ');
  std::string close(static_cast<std::size_t>(2 * depth), ' ');
  if (j.is_object()) {
    if (j.empty()) {
      out += "{}";
      return;
    }
    out += "{\n";
    bool first = true;
    for (const auto& [key, value] : j.items()) {
      if (!first) out += ",\n";
      first = false;
      out += pad + json(key).dump() + ": ";
      write_canonical(value, depth + 1, out);
    }
    out += "\n" + close + "}";
    return;
  }
  if (j.is_array()) {
    bool flat = std::all_of(j.begin(), j.end(), [](const json& x) { return x.is_primitive(); });
    if (flat) {
      out += j.dump(-1, ' ', false);
      return;
    }
    out += "[\n";
    for (std::size_t i = 0; i < j.size(); ++i) {
      if (i) out += ",\n";
      out += pad;
      write_canonical(j[i], depth + 1, out);
    }
    out += "\n" + close + "]";
    return;
  }
  out += j.dump();
}

}  // namespace

std::string canonical_dump(const nlohmann::json& j) {
  std::string out;
  write_canonical(j, 0, out);
  return out + "\n";
}

std::string serialize(const Document& doc) { return canonical_dump(document_json(doc)); }

// -- typed views -------------------------------------------------------------

namespace {

BasedSpace space_of(const Document& doc, const std::string& key, Index dim, const std::string& prefix) {
  if (auto it = doc.labels.find(key); it != doc.labels.end()) return BasedSpace(it->second);
  return BasedSpace(dim, prefix);
}

Index dim_of(const Document& doc, const std::string& key) {
  auto it = doc.dims.find(key);
  if (it == doc.dims.end()) throw InputError("dims: missing \"" + key + "\"");
  return it->second;
}

void expect_kind(const Document& doc, const std::string& kind) {
  if (doc.kind != kind) throw InputError("expected a " + kind + " document, got " + doc.kind);
}

template <class S>
std::vector<Entry> entries(const FieldSpec& field, const Matrix<S>& m) {
  std::vector<Entry> out;
  for (Index r = 0; r < m.rows(); ++r)
    for (Index c = 0; c < m.cols(); ++c) {
      if (is_zero(m(r, c))) continue;
      auto [num, den] = to_fraction(S(m(r, c) + make_scalar<S>(field, 0)));
      out.push_back({r, c, num, den});
    }
  return out;
}

Document empty_document(const FieldSpec& field, std::string kind) {
  Document doc;
  doc.field = field;
  doc.kind = std::move(kind);
  return doc;
}

}  // namespace

template <class S>
Matrix<S> read_matrix(const Document& doc, const std::string& name) {
  auto [rows, cols] = component_shape(doc, name);
  auto it = doc.components.find(name);
  if (it == doc.components.end()) throw InputError("components: missing \"" + name + "\"");
  Matrix<S> m = Matrix<S>::Zero(rows, cols);
  for (const auto& e : it->second) {
    try {
      m(e.row, e.col) = parse_scalar<S>(doc.field, e.num, e.den);
    } catch (const std::domain_error& err) {
      throw InputError("components." + name + ": " + err.what());
    }
  }
  return m;
}

namespace {

template <class S>
Algebra<S> algebra_from(const Document& doc, const std::string& space, const std::string& prefix,
                        const std::string& mul, const std::string& unit, const std::string& label_prefix) {
  Index n = dim_of(doc, space);
  return Algebra<S>(space_of(doc, space, n, label_prefix), read_matrix<S>(doc, prefix + mul),
                    Vector<S>(read_matrix<S>(doc, prefix + unit).col(0)));
}

}  // namespace

template <class S>
Algebra<S> read_algebra(const Document& doc) {
  if (doc.kind == "bialgebroid") return algebra_from<S>(doc, "A", "A.", "mul", "unit", "e");
  if (doc.kind == "sep_frobenius") return algebra_from<S>(doc, "R", "", "mul", "unit", "r");
  if (doc.kind == "fragment") throw InputError("a fragment document has no algebra");
  return algebra_from<S>(doc, "A", "", "mul", "unit", "e");
}

template <class S>
WeakBialgebra<S> read_wba(const Document& doc) {
  expect_kind(doc, "wba");
  return WeakBialgebra<S>{read_algebra<S>(doc), read_matrix<S>(doc, "delta"), read_matrix<S>(doc, "counit")};
}

template <class S>
RightBialgebroid<S> read_bialgebroid(const Document& doc) {
  expect_kind(doc, "bialgebroid");
  Algebra<S> a = algebra_from<S>(doc, "A", "A.", "mul", "unit", "e");
  Algebra<S> r = algebra_from<S>(doc, "R", "R.", "mul", "unit", "r");
  return RightBialgebroid<S>::from_lift(std::move(a), std::move(r), read_matrix<S>(doc, "s"),
                                        read_matrix<S>(doc, "t"), read_matrix<S>(doc, "delta_lift"),
                                        read_matrix<S>(doc, "counit"));
}

template <class S>
SepFrobenius<S> read_sep_frobenius(const Document& doc) {
  expect_kind(doc, "sep_frobenius");
  return SepFrobenius<S>{read_algebra<S>(doc), read_matrix<S>(doc, "psi"),
                         Vector<S>(read_matrix<S>(doc, "e").col(0))};
}

template <class S>
RightModule<S> read_module(const Document& doc) {
  expect_kind(doc, "module");
  return RightModule<S>(read_algebra<S>(doc), space_of(doc, "X", dim_of(doc, "X"), "x"),
                        read_matrix<S>(doc, "action"));
}

template <class S>
MonoidalFunctorFragment<S> read_fragment(const Document& doc) {
  expect_kind(doc, "fragment");
  const FragmentLayout& l = *doc.fragment;
  MonoidalFunctorFragment<S> f;
  f.unit_object = l.unit;
  for (const auto& [name, d] : l.objects) f.objects.emplace_back(name, space_of(doc, name, d, "x"));
  for (const auto& [a, b, c] : l.products) f.products.emplace(ObjectPair{a, b}, c);
  f.pairs = l.pairs;
  f.triples = l.triples;
  for (const auto& [name, s, t] : l.morphisms) {
    f.morphisms.emplace(name, typename MonoidalFunctorFragment<S>::Morphism{s, t, read_matrix<S>(doc, "morph:" + name)});
  }
  for (const auto& [fa, fb] : l.morphism_products)
    f.morphism_products.emplace(ObjectPair{fa, fb}, read_matrix<S>(doc, "morph*:" + fa + "|" + fb));
  f.g0 = read_matrix<S>(doc, "G0");
  for (const auto& [name, entries] : doc.components) {
    std::size_t colon = name.find(':');
    if (colon == std::string::npos) continue;
    std::string head = name.substr(0, colon);
    auto args = split(name.substr(colon + 1), '|');
    if (head == "G2") f.g2.emplace(ObjectPair{args[0], args[1]}, read_matrix<S>(doc, name));
    if (head == "G^2") f.g2_op.emplace(ObjectPair{args[0], args[1]}, read_matrix<S>(doc, name));
    if (head == "lunitor") f.left_unitors.emplace(args[0], read_matrix<S>(doc, name));
    if (head == "runitor") f.right_unitors.emplace(args[0], read_matrix<S>(doc, name));
    if (head == "assoc") f.associators.emplace(ObjectTriple{args[0], args[1], args[2]}, read_matrix<S>(doc, name));
  }
  if (doc.components.count("G^0")) f.g0_op = read_matrix<S>(doc, "G^0");
  try {
    f.validate();
  } catch (const std::invalid_argument& err) {
    throw InputError(err.what());
  }
  return f;
}

template <class S>
std::optional<FactorizationWitness<S>> read_witness(const Document& doc) {
  expect_kind(doc, "fragment");
  if (!doc.dims.count("S")) return std::nullopt;
  Algebra<S> s = algebra_from<S>(doc, "S", "S.", "mul", "unit", "s");
  FactorizationWitness<S> w{s, {}, read_matrix<S>(doc, "V0")};
  for (const auto& [name, d] : doc.fragment->objects) {
    bool l = doc.components.count("V.lambda:" + name), r = doc.components.count("V.rho:" + name);
    if (!l && !r) continue;
    w.bimodules.emplace(name, Bimodule<S>(s, s, space_of(doc, name, d, "x"), read_matrix<S>(doc, "V.lambda:" + name),
                                          read_matrix<S>(doc, "V.rho:" + name)));
  }
  return w;
}

template <class S>
Document algebra_document(const FieldSpec& field, const Algebra<S>& a) {
  Document doc = empty_document(field, "algebra");
  doc.dims["A"] = a.dim();
  doc.labels["A"] = a.space().labels();
  doc.components["mul"] = entries(field, a.mul());
  doc.components["unit"] = entries(field, Matrix<S>(a.unit()));
  return doc;
}

template <class S>
Document wba_document(const FieldSpec& field, const WeakBialgebra<S>& w) {
  Document doc = algebra_document(field, w.algebra);
  doc.kind = "wba";
  doc.components["delta"] = entries(field, w.coproduct);
  doc.components["counit"] = entries(field, w.counit);
  return doc;
}

template <class S>
Document bialgebroid_document(const FieldSpec& field, const RightBialgebroid<S>& b) {
  Document doc = empty_document(field, "bialgebroid");
  doc.dims["A"] = b.total().dim();
  doc.dims["R"] = b.base().dim();
  doc.labels["A"] = b.total().space().labels();
  doc.labels["R"] = b.base().space().labels();
  doc.components["A.mul"] = entries(field, b.total().mul());
  doc.components["A.unit"] = entries(field, Matrix<S>(b.total().unit()));
  doc.components["R.mul"] = entries(field, b.base().mul());
  doc.components["R.unit"] = entries(field, Matrix<S>(b.base().unit()));
  doc.components["s"] = entries(field, b.source());
  doc.components["t"] = entries(field, b.target());
  doc.components["delta_lift"] = entries(field, b.delta_lift());
  doc.components["counit"] = entries(field, b.counit());
  return doc;
}

template <class S>
Document sep_frobenius_document(const FieldSpec& field, const SepFrobenius<S>& sf) {
  Document doc = empty_document(field, "sep_frobenius");
  doc.dims["R"] = sf.base.dim();
  doc.labels["R"] = sf.base.space().labels();
  doc.components["mul"] = entries(field, sf.base.mul());
  doc.components["unit"] = entries(field, Matrix<S>(sf.base.unit()));
  doc.components["psi"] = entries(field, sf.psi);
  doc.components["e"] = entries(field, Matrix<S>(sf.e));
  return doc;
}

template <class S>
Document module_document(const FieldSpec& field, const RightModule<S>& m) {
  Document doc = algebra_document(field, m.algebra());
  doc.kind = "module";
  doc.dims["X"] = m.dim();
  doc.labels["X"] = m.space().labels();
  doc.components["action"] = entries(field, m.action());
  return doc;
}

template <class S>
Document fragment_document(const FieldSpec& field, const MonoidalFunctorFragment<S>& f) {
  f.validate();
  Document doc = empty_document(field, "fragment");
  FragmentLayout l;
  l.unit = f.unit_object;
  for (const auto& [name, sp] : f.objects) {
    l.objects.emplace_back(name, sp.dim());
    doc.labels[name] = sp.labels();
  }
  for (const auto& [ab, c] : f.products) l.products.emplace_back(ab.first, ab.second, c);
  l.pairs = f.pairs;
  l.triples = f.triples;
  for (const auto& [name, m] : f.morphisms) {
    l.morphisms.emplace_back(name, m.source, m.target);
    doc.components["morph:" + name] = entries(field, m.map);
  }
  for (const auto& [fg, m] : f.morphism_products) {
    l.morphism_products.push_back(fg);
    doc.components["morph*:" + fg.first + "|" + fg.second] = entries(field, m);
  }
  for (const auto& [ab, m] : f.g2) doc.components["G2:" + ab.first + "|" + ab.second] = entries(field, m);
  for (const auto& [ab, m] : f.g2_op) doc.components["G^2:" + ab.first + "|" + ab.second] = entries(field, m);
  doc.components["G0"] = entries(field, f.g0);
  if (f.g0_op) doc.components["G^0"] = entries(field, *f.g0_op);
  for (const auto& [c, m] : f.left_unitors) doc.components["lunitor:" + c] = entries(field, m);
  for (const auto& [c, m] : f.right_unitors) doc.components["runitor:" + c] = entries(field, m);
  for (const auto& [abc, m] : f.associators) {
    const auto& [a, b, c] = abc;
    doc.components["assoc:" + a + "|" + b + "|" + c] = entries(field, m);
  }
  doc.fragment = std::move(l);
  return doc;
}

template <class S>
void add_witness(Document& doc, const FactorizationWitness<S>& w) {
  expect_kind(doc, "fragment");
  doc.dims["S"] = w.algebra.dim();
  doc.labels["S"] = w.algebra.space().labels();
  doc.components["S.mul"] = entries(doc.field, w.algebra.mul());
  doc.components["S.unit"] = entries(doc.field, Matrix<S>(w.algebra.unit()));
  doc.components["V0"] = entries(doc.field, w.unit_map);
  for (const auto& [c, v] : w.bimodules) {
    doc.components["V.lambda:" + c] = entries(doc.field, v.lambda());
    doc.components["V.rho:" + c] = entries(doc.field, v.rho());
  }
}

#define BGD_INSTANTIATE_DOCUMENT(S)                                                              \
  template Matrix<S> read_matrix<S>(const Document&, const std::string&);                        \
  template Algebra<S> read_algebra<S>(const Document&);                                          \
  template WeakBialgebra<S> read_wba<S>(const Document&);                                        \
  template RightBialgebroid<S> read_bialgebroid<S>(const Document&);                             \
  template SepFrobenius<S> read_sep_frobenius<S>(const Document&);                               \
  template RightModule<S> read_module<S>(const Document&);                                       \
  template MonoidalFunctorFragment<S> read_fragment<S>(const Document&);                         \
  template std::optional<FactorizationWitness<S>> read_witness<S>(const Document&);              \
  template Document algebra_document<S>(const FieldSpec&, const Algebra<S>&);                    \
  template Document wba_document<S>(const FieldSpec&, const WeakBialgebra<S>&);                  \
  template Document bialgebroid_document<S>(const FieldSpec&, const RightBialgebroid<S>&);       \
  template Document sep_frobenius_document<S>(const FieldSpec&, const SepFrobenius<S>&);         \
  template Document module_document<S>(const FieldSpec&, const RightModule<S>&);                 \
  template Document fragment_document<S>(const FieldSpec&, const MonoidalFunctorFragment<S>&);   \
  template void add_witness<S>(Document&, const FactorizationWitness<S>&);

BGD_INSTANTIATE_DOCUMENT(Rational)
BGD_INSTANTIATE_DOCUMENT(ModP)

}  // namespace bgd
