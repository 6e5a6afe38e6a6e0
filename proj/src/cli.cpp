#include "bgd/cli.hpp"

#include <openssl/evp.h>

#include <CLI11.hpp>
#include <fstream>
#include <iostream>
#include <sstream>

#include "bgd/corpus.hpp"
#include "bgd/document.hpp"

namespace bgd {

using nlohmann::json;

std::string sha256_hex(std::string_view bytes) {
  unsigned char md[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (EVP_Digest(bytes.data(), bytes.size(), md, &len, EVP_sha256(), nullptr) != 1)
    throw std::runtime_error("SHA-256 failed");
  static const char* hex = "0123456789abcdef";
  std::string out;
  for (unsigned int i = 0; i < len; ++i) {
    out += hex[md[i] >> 4];
    out += hex[md[i] & 15];
  }
  return out;
}

namespace {

struct Options {
  std::vector<std::string> inputs;
  std::string format = "json";
  std::string field;
  std::string output;
  std::string pair;
  std::string name;
};

struct Outcome {
  Report report;
  json facts = json::object();
  json derived = json::object();
  std::string error;
};

struct Loaded {
  std::vector<std::string> digests;
  std::vector<Document> docs;
};

std::string read_all(std::istream& s) {
  std::ostringstream buf;
  buf << s.rdbuf();
  return buf.str();
}

Loaded load(const Options& opt, std::istream& in) {
  Loaded out;
  bool stdin_used = false;
  for (const auto& path : opt.inputs) {
    std::string bytes;
    if (path == "-") {
      if (stdin_used) throw InputError("standard input given twice");
      stdin_used = true;
      bytes = read_all(in);
    } else {
      std::ifstream f(path, std::ios::binary);
      if (!f) throw InputError(path + ": cannot open");
      bytes = read_all(f);
    }
    out.digests.push_back("sha256:" + sha256_hex(bytes));
    json j;
    try {
      j = json::parse(bytes);
    } catch (const json::parse_error& err) {
      throw InputError(path + ": malformed JSON: " + err.what());
    }
    try {
      if (j.is_object() && j.contains("derived")) {
        for (const auto& [key, value] : j.at("derived").items())
          if (value.is_object() && value.contains("kind")) out.docs.push_back(document_from_json(value));
      } else {
        out.docs.push_back(document_from_json(j));
      }
    } catch (const InputError& err) {
      throw InputError(path + ": " + err.what());
    }
  }
  if (!opt.field.empty()) {
    FieldSpec field = FieldSpec::parse(opt.field);
    for (auto& d : out.docs) d.field = field;
  }
  for (const auto& d : out.docs)
    if (!(d.field == out.docs.front().field)) throw InputError("inputs live over different fields");
  return out;
}

const Document& pick(const Loaded& l, std::initializer_list<const char*> kinds) {
  for (const auto& d : l.docs)
    for (const char* k : kinds)
      if (d.kind == k) return d;
  std::string want;
  for (const char* k : kinds) want += std::string(want.empty() ? "" : " or ") + k;
  throw InputError("no " + want + " document among the inputs");
}

std::string scalar_text(const FieldSpec& field, const auto& x) {
  auto [num, den] = to_fraction(x + make_scalar<std::decay_t<decltype(x)>>(field, 0));
  return den == "1" ? num : num + "/" + den;
}

json matrix_json(const FieldSpec& field, const auto& m) {
  json entries = json::array();
  for (Index r = 0; r < m.rows(); ++r)
    for (Index c = 0; c < m.cols(); ++c) {
      if (is_zero(m(r, c))) continue;
      entries.push_back(json::array({r, c, scalar_text(field, m(r, c))}));
    }
  return json{{"rows", m.rows()}, {"cols", m.cols()}, {"entries", entries}};
}

template <class S>
struct Forgetful {
  RightBialgebroid<S> bialgebroid;
  MonoidalFunctorFragment<S> fragment;
};

template <class S>
Forgetful<S> forgetful_of(const WeakBialgebra<S>& w) {
  require(check_wba(w), "weak bialgebra");
  RightBialgebroid<S> b = wba_to_bialgebroid(w);
  SepFrobenius<S> sf = base_sep_frobenius(w);
  auto f = forgetful_fragment(b, sf, {{"A", RightModule<S>::regular(w.algebra)}});
  return {std::move(b), std::move(f)};
}

template <class S>
std::pair<MonoidalFunctorFragment<S>, std::optional<RightBialgebroid<S>>> fragment_of(const Loaded& l) {
  const Document& d = pick(l, {"fragment", "wba"});
  if (d.kind == "fragment") return {read_fragment<S>(d), std::nullopt};
  auto fg = forgetful_of(read_wba<S>(d));
  return {std::move(fg.fragment), std::move(fg.bialgebroid)};
}

// -- commands ----------------------------------------------------------------

template <class S>
void check_algebra_cmd(const Loaded& l, const Options&, Outcome& o) {
  Algebra<S> a = read_algebra<S>(pick(l, {"algebra", "wba", "module", "sep_frobenius", "bialgebroid"}));
  o.report = check_algebra(a);
  o.facts["dim"] = a.dim();
}

template <class S>
void wba_facts(const FieldSpec& field, const WeakBialgebra<S>& w, Outcome& o) {
  o.facts["dim_A"] = w.algebra.dim();
  o.facts["counit_of_unit"] = scalar_text(field, multiply(w.counit, Matrix<S>(w.algebra.unit()))(0, 0));
  if (o.report.passed()) o.facts["dim_AR"] = target_projection(w).algebra.dim();
}

template <class S>
void check_wba_cmd(const Loaded& l, const Options&, Outcome& o) {
  const Document& d = pick(l, {"wba"});
  WeakBialgebra<S> w = read_wba<S>(d);
  o.report = check_wba(w);
  wba_facts(d.field, w, o);
}

template <class S>
void bialgebroid_facts(const RightBialgebroid<S>& b, Outcome& o) {
  o.facts["dim_A"] = b.total().dim();
  o.facts["dim_R"] = b.base().dim();
  o.facts["dim_tensor_square"] = b.tensor_square().space().dim();
  o.facts["dim_takeuchi"] = analyze_takeuchi(b).space.rank();
}

template <class S>
void check_bialgebroid_cmd(const Loaded& l, const Options&, Outcome& o) {
  RightBialgebroid<S> b = read_bialgebroid<S>(pick(l, {"bialgebroid"}));
  o.report = check_bialgebroid(b);
  bialgebroid_facts(b, o);
}

template <class S>
void check_frobenius_cmd(const Loaded& l, const Options&, Outcome& o) {
  SepFrobenius<S> sf = read_sep_frobenius<S>(pick(l, {"sep_frobenius"}));
  o.report = check_sep_frobenius(sf);
  o.facts["dim_R"] = sf.base.dim();
}

template <class S>
void derive_bialgebroid_cmd(const Loaded& l, const Options&, Outcome& o) {
  const Document& d = pick(l, {"wba"});
  WeakBialgebra<S> w = read_wba<S>(d);
  o.report.merge(check_wba(w), "wba.");
  wba_facts(d.field, w, o);
  if (!o.report.passed()) return;
  RightBialgebroid<S> b = wba_to_bialgebroid(w);
  SepFrobenius<S> sf = base_sep_frobenius(w);
  o.report.merge(check_bialgebroid(b), "bialgebroid.");
  o.report.merge(check_sep_frobenius(sf), "frobenius.");
  bialgebroid_facts(b, o);
  o.derived["bialgebroid"] = document_json(bialgebroid_document(d.field, b));
  o.derived["sep_frobenius"] = document_json(sep_frobenius_document(d.field, sf));
}

template <class S>
void derive_wba_cmd(const Loaded& l, const Options&, Outcome& o) {
  const Document& db = pick(l, {"bialgebroid"});
  RightBialgebroid<S> b = read_bialgebroid<S>(db);
  SepFrobenius<S> sf = read_sep_frobenius<S>(pick(l, {"sep_frobenius"}));
  WeakBialgebra<S> w = bialgebroid_to_wba(b, sf);
  o.report.merge(check_wba(w), "wba.");
  wba_facts(db.field, w, o);
  o.derived["wba"] = document_json(wba_document(db.field, w));
}

template <class S>
void factorize_cmd(const Loaded& l, const Options&, Outcome& o) {
  auto [f, b] = fragment_of<S>(l);
  const FieldSpec& field = l.docs.front().field;
  o.report.merge(check_fragment(f), "fragment.");
  Algebra<S> r = canonical_base(f);
  o.report.merge(check_algebra(r), "base.");
  o.facts["dim_R"] = r.dim();
  o.facts["objects"] = f.objects.size();
  o.derived["base"] = document_json(algebra_document(field, r));
  const std::string& e = f.unit_object;
  for (const auto& [c, sp] : f.objects)
    if (f.g2.count({e, c}) && f.g2.count({c, e})) o.report.merge(check_bimodule(canonical_bimodule(f, c)), "U[" + c + "].");
  if (b) o.report.merge(compare_base(*b, f).report, "comparison.");
  if (const Document& d = pick(l, {"fragment", "wba"}); d.kind == "fragment") {
    if (auto w = read_witness<S>(d)) {
      SigmaResult<S> sr = analyze_sigma(f, *w);
      o.report.merge(sr.report, "sigma.");
      o.derived["sigma"] = matrix_json(field, sr.sigma.map.matrix());
    }
  }
}

template <class S>
void strength_cmd(const Loaded& l, const Options& opt, Outcome& o) {
  auto [f, b] = fragment_of<S>(l);
  std::vector<ObjectPair> pairs = f.pairs;
  if (!opt.pair.empty()) {
    auto comma = opt.pair.find(',');
    if (comma == std::string::npos) throw InputError("--pair expects <a>,<b>");
    ObjectPair p{opt.pair.substr(0, comma), opt.pair.substr(comma + 1)};
    if (!f.has_object(p.first) || !f.has_object(p.second))
      throw InputError("--pair names an object the fragment does not list");
    pairs = {p};
  }
  json verdicts = json::object();
  for (const auto& [a, c] : pairs) {
    std::string key = a + "|" + c;
    try {
      Strength<S> st = induced_strength(f, a, c);
      o.report.merge(st.report, "strength[" + key + "].");
      verdicts[key] = st.essentially_strong ? "essentially strong" : "not essentially strong";
    } catch (const VerificationError& err) {
      o.report.merge(err.report(), "strength[" + key + "].");
      verdicts[key] = "does not coequalize";
    }
  }
  o.facts["strength"] = verdicts;
}

template <class S>
void frobenius_functor_cmd(const Loaded& l, const Options&, Outcome& o) {
  auto [f, b] = fragment_of<S>(l);
  o.report = functor_frobenius_check(f);
  o.facts["pairs"] = f.pairs.size();
  o.facts["triples"] = f.triples.size();
}

using Command = void (*)(const Loaded&, const Options&, Outcome&);

template <class S>
Command command_for(const std::string& name) {
  if (name == "check-algebra") return check_algebra_cmd<S>;
  if (name == "check-wba") return check_wba_cmd<S>;
  if (name == "check-bialgebroid") return check_bialgebroid_cmd<S>;
  if (name == "check-frobenius") return check_frobenius_cmd<S>;
  if (name == "derive-bialgebroid") return derive_bialgebroid_cmd<S>;
  if (name == "derive-wba") return derive_wba_cmd<S>;
  if (name == "factorize") return factorize_cmd<S>;
  if (name == "strength") return strength_cmd<S>;
  return frobenius_functor_cmd<S>;
}

// -- generators --------------------------------------------------------------

int parse_count(const std::string& s, const std::string& what) {
  if (s.empty() || s.size() > 3 || !std::all_of(s.begin(), s.end(), [](char c) { return c >= '0' && c <= '9'; }))
    throw InputError("gen: bad " + what + " '" + s + "'");
  return std::stoi(s);
}

GroupoidSpec groupoid_by_name(const std::string& name) {
  if (name.rfind("discrete", 0) == 0) return {GroupoidKind::discrete, parse_count(name.substr(8), "object count"), {}};
  if (name.rfind("pair", 0) == 0) return {GroupoidKind::pair, parse_count(name.substr(4), "object count"), {}};
  try {
    return {GroupoidKind::group, 1, group_by_name(name)};
  } catch (const std::invalid_argument&) {
    throw InputError("gen: unknown groupoid '" + name + "' (discrete<n>, pair<n>, Z<k> or S3)");
  }
}

template <class S>
WeakBialgebra<S> gen_wba(const std::string& name, const FieldSpec& field) {
  if (name.rfind("dual:", 0) == 0) return gen_dual_groupoid_wba<S>(groupoid_by_name(name.substr(5)), field);
  return gen_groupoid_wba<S>(groupoid_by_name(name), field);
}

template <class S>
Document generate(const std::string& name, const FieldSpec& field) {
  if (name == "invariants") return fragment_document(field, invariants_fragment<S>(field));
  if (name.rfind("matrix", 0) == 0)
    return sep_frobenius_document(field, gen_matrix_frobenius<S>(parse_count(name.substr(6), "matrix size"), field));
  if (name.rfind("forgetful:", 0) == 0)
    return fragment_document(field, forgetful_of(gen_wba<S>(name.substr(10), field)).fragment);
  if (name.rfind("module:", 0) == 0)
    return module_document(field, RightModule<S>::regular(gen_wba<S>(name.substr(7), field).algebra));
  return wba_document(field, gen_wba<S>(name, field));
}

// -- output ------------------------------------------------------------------

json check_json(const AxiomCheck& c) {
  json j{{"name", c.name}, {"passed", c.passed}, {"instances", c.instances}};
  if (c.witness)
    j["witness"] = json{{"indices", c.witness->indices},
                        {"lhs", c.witness->lhs},
                        {"rhs", c.witness->rhs},
                        {"note", c.witness->note}};
  return j;
}

json certificate(const std::string& command, const Loaded& l, const Outcome& o) {
  json j;
  j["command"] = command;
  j["inputs"] = l.digests;
  j["field"] = l.docs.empty() ? json("Q") : field_json(l.docs.front().field);
  j["checks"] = json::array();
  for (const auto& c : o.report.checks()) j["checks"].push_back(check_json(c));
  j["facts"] = o.facts;
  j["derived"] = o.derived;
  if (!o.error.empty()) j["error"] = o.error;
  j["verdict"] = o.report.passed() && o.error.empty() ? "pass" : "fail";
  return j;
}

std::string join(const std::vector<std::string>& xs) {
  std::string out;
  for (const auto& x : xs) out += (out.empty() ? "" : ", ") + x;
  return out;
}

std::string render_text(const json& cert) {
  std::ostringstream s;
  s << "command  " << cert["command"].get<std::string>() << "\n";
  s << "field    " << (cert["field"].is_string() ? cert["field"].get<std::string>()
                                                   : "Fp:" + cert["field"]["Fp"].dump())
    << "\n";
  for (const auto& d : cert["inputs"]) s << "input    " << d.get<std::string>() << "\n";
  for (const auto& c : cert["checks"]) {
    s << (c["passed"].get<bool>() ? "PASS  " : "FAIL  ") << c["name"].get<std::string>() << "  ["
      << c["instances"].get<std::size_t>() << "]";
    if (c.contains("witness")) {
      const json& w = c["witness"];
      std::vector<std::string> idx;
      for (const auto& i : w["indices"]) idx.push_back(i.dump());
      s << "\n      at (" << join(idx) << ")";
      if (!w["note"].get<std::string>().empty()) s << "  " << w["note"].get<std::string>();
      if (!w["lhs"].empty()) s << "\n      lhs (" << join(w["lhs"].get<std::vector<std::string>>()) << ")";
      if (!w["rhs"].empty()) s << "\n      rhs (" << join(w["rhs"].get<std::vector<std::string>>()) << ")";
    }
    s << "\n";
  }
  for (const auto& [k, v] : cert["facts"].items()) {
    if (v.is_object())
      for (const auto& [k2, v2] : v.items()) s << "fact     " << k << "[" << k2 << "] = " << v2.get<std::string>() << "\n";
    else
      s << "fact     " << k << " = " << (v.is_string() ? v.get<std::string>() : v.dump()) << "\n";
  }
  for (const auto& [k, v] : cert["derived"].items()) s << "derived  " << k << "\n";
  if (cert.contains("error")) s << "error    " << cert["error"].get<std::string>() << "\n";
  s << "verdict  " << cert["verdict"].get<std::string>() << "\n";
  return s.str();
}

int emit(const std::string& text, const Options& opt, std::ostream& out, std::ostream& err) {
  if (opt.output.empty()) {
    out << text;
    return 0;
  }
  std::ofstream f(opt.output, std::ios::binary);
  if (!f) {
    err << "error: cannot write " << opt.output << "\n";
    return 2;
  }
  f << text;
  return 0;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exact verifier for weak bialgebras, bialgebroids and monoidal functor fragments", "bgd"};
  app.require_subcommand(1);
  Options opt;

  struct Spec {
    const char* name;
    const char* help;
    int inputs;  // -1: one or two
  };
  const std::vector<Spec> specs{
      {"check-algebra", "check the associative unital algebra axioms", 1},
      {"check-wba", "check the weak bialgebra axioms", 1},
      {"check-bialgebroid", "check the right bialgebroid axioms", 1},
      {"check-frobenius", "check a separable Frobenius structure", 1},
      {"derive-bialgebroid", "bialgebroid and base Frobenius data of a weak bialgebra", 1},
      {"derive-wba", "weak bialgebra from a bialgebroid and separable Frobenius base", -1},
      {"factorize", "canonical factorization of a fragment (or the forgetful fragment of a weak bialgebra)", 1},
      {"strength", "essential strength on listed pairs", 1},
      {"frobenius-functor", "separable Frobenius structure on a fragment", 1},
  };
  std::vector<CLI::App*> subs;
  for (const auto& sp : specs) {
    CLI::App* sub = app.add_subcommand(sp.name, sp.help);
    auto* pos = sub->add_option("inputs", opt.inputs, "input documents or certificates (- for stdin)")->required();
    if (sp.inputs == 1)
      pos->expected(1);
    else
      pos->expected(1, 2);
    sub->add_option("--format", opt.format, "text or json")->check(CLI::IsMember({"text", "json"}));
    sub->add_option("--field", opt.field, "reinterpret coefficients over Q or Fp:<p>");
    sub->add_option("-o,--output", opt.output, "write the certificate to a file");
    if (std::string(sp.name) == "strength") sub->add_option("--pair", opt.pair, "<a>,<b>");
    subs.push_back(sub);
  }
  CLI::App* gen = app.add_subcommand("gen", "generate a corpus document");
  gen->add_option("name", opt.name,
                  "discrete<n> | pair<n> | Z<k> | S3 | dual:<groupoid> | matrix<n> | invariants | "
                  "forgetful:<groupoid> | module:<groupoid>")
      ->required();
  gen->add_option("--field", opt.field, "Q or Fp:<p>");
  gen->add_option("-o,--output", opt.output, "write the document to a file");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e, out, err);
    return code == 0 ? 0 : 2;
  }

  try {
    if (gen->parsed()) {
      FieldSpec field = opt.field.empty() ? FieldSpec::rationals() : FieldSpec::parse(opt.field);
      Document doc = with_field(field, [&]<class S>() { return generate<S>(opt.name, field); });
      return emit(serialize(doc), opt, out, err);
    }
    std::string command;
    for (auto* sub : subs)
      if (sub->parsed()) command = sub->get_name();

    Loaded loaded = load(opt, in);
    Outcome outcome;
    try {
      Command run = with_field(loaded.docs.front().field, [&]<class S>() { return command_for<S>(command); });
      run(loaded, opt, outcome);
    } catch (const VerificationError& e) {
      outcome.report.merge(e.report(), "");
      outcome.error = e.what();
    }
    json cert = certificate(command, loaded, outcome);
    std::string text = opt.format == "text" ? render_text(cert) : canonical_dump(cert);
    if (int code = emit(text, opt, out, err)) return code;
    return cert["verdict"] == "pass" ? 0 : 1;
  } catch (const InputError& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::domain_error& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }
}

}  // namespace bgd
