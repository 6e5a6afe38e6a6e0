#include "bgd/corpus.hpp"

#include <algorithm>
#include <array>

namespace bgd {

GroupTable cyclic_group(int order) {
  if (order < 1) throw std::invalid_argument("cyclic group order must be positive");
  GroupTable g{"Z" + std::to_string(order), {}};
  g.table.assign(static_cast<std::size_t>(order), std::vector<int>(static_cast<std::size_t>(order)));
  for (int a = 0; a < order; ++a)
    for (int b = 0; b < order; ++b) g.table[a][b] = (a + b) % order;
  return g;
}

GroupTable symmetric_group_3() {
  std::vector<std::array<int, 3>> perms;
  std::array<int, 3> p{0, 1, 2};
  do perms.push_back(p);
  while (std::next_permutation(p.begin(), p.end()));
  GroupTable g{"S3", std::vector<std::vector<int>>(6, std::vector<int>(6))};
  for (int a = 0; a < 6; ++a)
    for (int b = 0; b < 6; ++b) {
      // (ab)(i) = a(b(i))
      std::array<int, 3> c{};
      for (int i = 0; i < 3; ++i) c[i] = perms[a][perms[b][i]];
      g.table[a][b] = static_cast<int>(std::find(perms.begin(), perms.end(), c) - perms.begin());
    }
  return g;
}

GroupTable group_by_name(const std::string& name) {
  if (name == "S3") return symmetric_group_3();
  if (name.size() > 1 && name[0] == 'Z' &&
      std::all_of(name.begin() + 1, name.end(), [](char c) { return c >= '0' && c <= '9'; }))
    return cyclic_group(std::stoi(name.substr(1)));
  throw std::invalid_argument("unknown group '" + name + "' (expected Z<k> or S3)");
}

void validate_group(const GroupTable& g) {
  int n = static_cast<int>(g.table.size());
  if (n == 0) throw std::invalid_argument("group table is empty");
  for (const auto& row : g.table) {
    if (static_cast<int>(row.size()) != n) throw std::invalid_argument("group table is not square");
    for (int x : row)
      if (x < 0 || x >= n) throw std::invalid_argument("group table entry out of range");
  }
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (int c = 0; c < n; ++c)
        if (g.table[g.table[a][b]][c] != g.table[a][g.table[b][c]])
          throw std::invalid_argument("group table is not associative at (" + std::to_string(a) + "," +
                                      std::to_string(b) + "," + std::to_string(c) + ")");
  int e = -1;
  for (int a = 0; a < n && e < 0; ++a) {
    bool ok = true;
    for (int b = 0; b < n; ++b) ok = ok && g.table[a][b] == b && g.table[b][a] == b;
    if (ok) e = a;
  }
  if (e < 0) throw std::invalid_argument("group table has no identity");
  for (int a = 0; a < n; ++a) {
    bool inv = false;
    for (int b = 0; b < n; ++b) inv = inv || (g.table[a][b] == e && g.table[b][a] == e);
    if (!inv) throw std::invalid_argument("element " + std::to_string(a) + " has no inverse");
  }
}

std::string GroupoidSpec::name() const {
  switch (kind) {
    case GroupoidKind::discrete:
      return "discrete" + std::to_string(objects);
    case GroupoidKind::pair:
      return "pair" + std::to_string(objects);
    case GroupoidKind::group:
      return group.name;
  }
  return {};
}

namespace {

int group_identity(const GroupTable& g) {
  for (int a = 0; a < static_cast<int>(g.table.size()); ++a)
    if (g.table[a][a] == a) return a;
  return 0;
}

std::string morphism_label(const GroupoidSpec& g, const GroupoidMorphism& m) {
  switch (g.kind) {
    case GroupoidKind::discrete:
      return "e" + std::to_string(m.source + 1);
    case GroupoidKind::pair:
      return "g" + std::to_string(m.source + 1) + std::to_string(m.target + 1);
    case GroupoidKind::group:
      return "g" + std::to_string(m.element);
  }
  return {};
}

/// Composite of m then k in algebra order (m k), or -1 when not composable.
int compose(const GroupoidSpec& g, const std::vector<GroupoidMorphism>& ms, std::size_t m, std::size_t k) {
  const auto& a = ms[m];
  const auto& b = ms[k];
  if (a.target != b.source) return -1;
  int element = g.kind == GroupoidKind::group ? g.group.table[a.element][b.element] : 0;
  for (std::size_t i = 0; i < ms.size(); ++i)
    if (ms[i].source == a.source && ms[i].target == b.target && ms[i].element == element) return static_cast<int>(i);
  return -1;
}

template <class S>
Algebra<S> groupoid_algebra(const GroupoidSpec& g, const std::vector<GroupoidMorphism>& ms, const FieldSpec& field,
                            const std::string& prefix) {
  Index n = static_cast<Index>(ms.size());
  std::vector<std::string> labels;
  for (const auto& m : ms) labels.push_back(prefix + morphism_label(g, m));
  Matrix<S> mul = Matrix<S>::Zero(n, n * n);
  Vector<S> unit = Vector<S>::Zero(n);
  S one = make_scalar<S>(field, 1);
  int e = g.kind == GroupoidKind::group ? group_identity(g.group) : 0;
  for (Index i = 0; i < n; ++i) {
    for (Index j = 0; j < n; ++j) {
      int c = compose(g, ms, static_cast<std::size_t>(i), static_cast<std::size_t>(j));
      if (c >= 0) mul(c, i * n + j) = one;
    }
    const auto& m = ms[static_cast<std::size_t>(i)];
    if (m.source == m.target && m.element == e) unit(i) = one;
  }
  return Algebra<S>(BasedSpace(std::move(labels)), std::move(mul), std::move(unit));
}

void check_spec(const GroupoidSpec& g) {
  if (g.objects < 1) throw std::invalid_argument("groupoid needs at least one object");
  if (g.kind == GroupoidKind::group) {
    validate_group(g.group);
    if (g.objects != 1) throw std::invalid_argument("group pattern has exactly one object");
  }
}

}  // namespace

std::vector<GroupoidMorphism> groupoid_morphisms(const GroupoidSpec& g) {
  check_spec(g);
  std::vector<GroupoidMorphism> out;
  switch (g.kind) {
    case GroupoidKind::discrete:
      for (int x = 0; x < g.objects; ++x) out.push_back({x, x, 0});
      break;
    case GroupoidKind::pair:
      for (int x = 0; x < g.objects; ++x)
        for (int y = 0; y < g.objects; ++y) out.push_back({x, y, 0});
      break;
    case GroupoidKind::group:
      for (int a = 0; a < static_cast<int>(g.group.table.size()); ++a) out.push_back({0, 0, a});
      break;
  }
  return out;
}

template <class S>
WeakBialgebra<S> gen_groupoid_wba(const GroupoidSpec& g, const FieldSpec& field) {
  auto ms = groupoid_morphisms(g);
  Algebra<S> a = groupoid_algebra<S>(g, ms, field, "");
  Index n = a.dim();
  S one = make_scalar<S>(field, 1);
  Matrix<S> delta = Matrix<S>::Zero(n * n, n);
  Matrix<S> eps(1, n);
  for (Index i = 0; i < n; ++i) {
    delta(i * n + i, i) = one;
    eps(0, i) = one;
  }
  return WeakBialgebra<S>{std::move(a), std::move(delta), std::move(eps)};
}

template <class S>
WeakBialgebra<S> gen_dual_groupoid_wba(const GroupoidSpec& g, const FieldSpec& field) {
  auto ms = groupoid_morphisms(g);
  Index n = static_cast<Index>(ms.size());
  std::vector<std::string> labels;
  for (const auto& m : ms) labels.push_back("d" + morphism_label(g, m));
  S one = make_scalar<S>(field, 1);
  Matrix<S> mul = Matrix<S>::Zero(n, n * n);
  Vector<S> unit(n);
  Matrix<S> delta = Matrix<S>::Zero(n * n, n);
  Matrix<S> eps = Matrix<S>::Zero(1, n);
  int e = g.kind == GroupoidKind::group ? group_identity(g.group) : 0;
  for (Index i = 0; i < n; ++i) {
    mul(i, i * n + i) = one;
    unit(i) = one;
    const auto& m = ms[static_cast<std::size_t>(i)];
    if (m.source == m.target && m.element == e) eps(0, i) = one;
    for (Index h = 0; h < n; ++h)
      for (Index k = 0; k < n; ++k)
        if (compose(g, ms, static_cast<std::size_t>(h), static_cast<std::size_t>(k)) == i) delta(h * n + k, i) = one;
  }
  Algebra<S> a(BasedSpace(std::move(labels)), std::move(mul), std::move(unit));
  return WeakBialgebra<S>{std::move(a), std::move(delta), std::move(eps)};
}

template <class S>
SepFrobenius<S> gen_matrix_frobenius(int n, const FieldSpec& field) {
  if (n < 1) throw std::invalid_argument("matrix size must be positive");
  if (field.characteristic() != 0 && static_cast<std::uint64_t>(n) % field.characteristic() == 0)
    throw std::invalid_argument("characteristic " + std::to_string(field.characteristic()) + " divides " +
                                std::to_string(n));
  Index d = static_cast<Index>(n) * n;
  S one = make_scalar<S>(field, 1);
  std::vector<std::string> labels;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) labels.push_back("E" + std::to_string(i + 1) + std::to_string(j + 1));
  Matrix<S> mul = Matrix<S>::Zero(d, d * d);
  Vector<S> unit = Vector<S>::Zero(d);
  Matrix<S> psi = Matrix<S>::Zero(1, d);
  Vector<S> e = Vector<S>::Zero(d * d);
  S nn = make_scalar<S>(field, n);
  S inv = make_scalar<S>(field, 1, n);
  for (Index i = 0; i < n; ++i) {
    unit(i * n + i) = one;
    psi(0, i * n + i) = nn;
    for (Index j = 0; j < n; ++j) {
      for (Index l = 0; l < n; ++l) mul(i * n + l, (i * n + j) * d + (j * n + l)) = one;
      e((i * n + j) * d + (j * n + i)) = inv;
    }
  }
  return SepFrobenius<S>{Algebra<S>(BasedSpace(std::move(labels)), std::move(mul), std::move(unit)), psi, e};
}

#define BGD_INSTANTIATE_CORPUS(S)                                                           \
  template WeakBialgebra<S> gen_groupoid_wba<S>(const GroupoidSpec&, const FieldSpec&);      \
  template WeakBialgebra<S> gen_dual_groupoid_wba<S>(const GroupoidSpec&, const FieldSpec&); \
  template SepFrobenius<S> gen_matrix_frobenius<S>(int, const FieldSpec&);

BGD_INSTANTIATE_CORPUS(Rational)
BGD_INSTANTIATE_CORPUS(ModP)

}  // namespace bgd
