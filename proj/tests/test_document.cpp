#include <doctest.h>

#include <sstream>

#include "bgd/cli.hpp"
#include "bgd/corpus.hpp"
#include "bgd/document.hpp"

using namespace bgd;
using nlohmann::json;

namespace {

using Q = Rational;
const FieldSpec kQ = FieldSpec::rationals();

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run cli(std::vector<std::string> args, const std::string& input = {}) {
  std::istringstream in(input);
  std::ostringstream out, err;
  int code = run_cli(args, in, out, err);
  return {code, out.str(), err.str()};
}

std::string gen(const std::string& name, const std::string& field = "Q") {
  Run r = cli({"gen", name, "--field", field});
  REQUIRE(r.code == 0);
  return r.out;
}

std::string error_of(const std::string& text) {
  try {
    parse_document(text);
  } catch (const InputError& e) {
    return e.what();
  }
  return {};
}

}  // namespace

TEST_CASE("sha256 of known strings") {
  CHECK(sha256_hex("") == "e3b0c44298fc1c149afbf4c8996fb92427ae41e4649b934ca495991b7852b855");
  CHECK(sha256_hex("abc") == "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
}

TEST_CASE("documents round trip through text") {
  for (const char* name : {"pair2", "dual:pair2", "Z3", "S3", "discrete2", "matrix2", "invariants", "forgetful:pair2",
                           "module:pair2"}) {
    INFO(name);
    std::string text = gen(name);
    Document d = parse_document(text);
    CHECK(serialize(d) == text);
    CHECK(serialize(parse_document(serialize(d))) == text);
  }
}

TEST_CASE("typed readers invert the writers") {
  auto w = gen_groupoid_wba<Q>({GroupoidKind::pair, 2, {}}, kQ);
  CHECK(read_wba<Q>(parse_document(serialize(wba_document(kQ, w)))) == w);
  auto b = wba_to_bialgebroid(w);
  auto b2 = read_bialgebroid<Q>(parse_document(serialize(bialgebroid_document(kQ, b))));
  CHECK(b2.total() == b.total());
  CHECK(exactly_equal(b2.delta(), b.delta()));
  auto sf = base_sep_frobenius(w);
  auto sf2 = read_sep_frobenius<Q>(parse_document(serialize(sep_frobenius_document(kQ, sf))));
  CHECK(exactly_equal(sf2.e, sf.e));
  auto f = forgetful_fragment(b, sf, {{"A", RightModule<Q>::regular(b.total())}});
  auto f2 = read_fragment<Q>(parse_document(serialize(fragment_document(kQ, f))));
  CHECK(f2.objects.size() == f.objects.size());
  CHECK(functor_frobenius_check(f2).passed());
}

TEST_CASE("fractions are reduced and big numbers survive") {
  std::string text = R"({"field": "Q", "kind": "algebra", "dims": {"A": 1},
    "components": {"mul": [[0, 0, 2, 2]], "unit": [[0, 0, "123456789012345678901234567890", "123456789012345678901234567890"]]}})";
  Document d = parse_document(text);
  CHECK(d.components.at("mul").front().num == "1");
  CHECK(d.components.at("unit").front().den == "1");
  auto a = read_algebra<Q>(d);
  CHECK(check_algebra(a).passed());
  std::string big = R"({"field": "Q", "kind": "algebra", "dims": {"A": 1},
    "components": {"mul": [[0, 0, 1, 1]], "unit": [[0, 0, "99999999999999999999999", 1]]}})";
  CHECK(serialize(parse_document(big)).find("\"99999999999999999999999\"") != std::string::npos);
}

TEST_CASE("input errors name the offending field") {
  CHECK(error_of("not json").size() > 0);
  CHECK(error_of(R"({"field": "Q", "kind": "nope", "dims": {}, "components": {}})").size() > 0);
  std::string range = error_of(R"({"field": "Q", "kind": "algebra", "dims": {"A": 2},
    "components": {"mul": [[5, 0, 1, 1]], "unit": []}})");
  CHECK(range.find("components.mul[0]") != std::string::npos);
  CHECK(range.find("out of range") != std::string::npos);
  std::string zero = error_of(R"({"field": {"Fp": 5}, "kind": "algebra", "dims": {"A": 1},
    "components": {"mul": [[0, 0, 1, 5]], "unit": []}})");
  CHECK(zero.find("zero") != std::string::npos);
  CHECK(error_of(R"({"field": "Fp:4", "kind": "algebra", "dims": {"A": 1}, "components": {}})").size() > 0);
  CHECK(error_of(R"({"field": "Q", "kind": "algebra", "dims": {"A": 1}, "components": {"bogus": []}})").size() > 0);
}

TEST_CASE("certificates are byte-identical across runs") {
  std::string doc = gen("pair2");
  for (const char* cmd : {"check-wba", "derive-bialgebroid", "factorize", "frobenius-functor"}) {
    INFO(cmd);
    Run a = cli({cmd, "-"}, doc), b = cli({cmd, "-"}, doc);
    CHECK(a.code == 0);
    CHECK(a.out == b.out);
    Run t1 = cli({cmd, "-", "--format", "text"}, doc), t2 = cli({cmd, "-", "--format", "text"}, doc);
    CHECK(t1.out == t2.out);
  }
}

TEST_CASE("certificate contents") {
  std::string doc = gen("pair2");
  Run r = cli({"check-wba", "-"}, doc);
  json c = json::parse(r.out);
  CHECK(c["verdict"] == "pass");
  CHECK(c["command"] == "check-wba");
  CHECK(c["inputs"][0] == "sha256:" + sha256_hex(doc));
  CHECK(c["facts"]["counit_of_unit"] == "2");
  CHECK(c["checks"].size() > 0);
  for (const auto& chk : c["checks"]) CHECK(chk["passed"] == true);
}

TEST_CASE("exit codes") {
  std::string doc = gen("pair2");
  CHECK(cli({"check-wba", "-"}, doc).code == 0);
  json j = json::parse(doc);
  j["components"]["counit"] = json::array({json::array({0, 0, 1, 1})});
  Run bad = cli({"check-wba", "-"}, j.dump());
  CHECK(bad.code == 1);
  CHECK(json::parse(bad.out)["verdict"] == "fail");
  CHECK(cli({"check-wba", "-"}, "{").code == 2);
  CHECK(cli({"check-wba", "/nonexistent/file.json"}).code == 2);
  CHECK(cli({"frobnicate"}).code == 2);
  CHECK(cli({"gen", "Z0"}).code == 2);
  CHECK(cli({"check-wba", "-", "--field", "Fp:6"}, doc).code == 2);
}

TEST_CASE("field override and derived documents chain") {
  std::string doc = gen("pair2");
  Run f7 = cli({"check-wba", "-", "--field", "Fp:7"}, doc);
  CHECK(f7.code == 0);
  CHECK(json::parse(f7.out)["field"] == json({{"Fp", 7}}));
  Run bgd = cli({"derive-bialgebroid", "-"}, doc);
  REQUIRE(bgd.code == 0);
  Run back = cli({"derive-wba", "-"}, bgd.out);
  REQUIRE(back.code == 0);
  Run again = cli({"check-wba", "-"}, back.out);
  CHECK(again.code == 0);
}

TEST_CASE("strength command") {
  std::string inv = gen("invariants");
  Run ss = cli({"strength", "-", "--pair", "sign,sign"}, inv);
  CHECK(ss.code == 1);
  CHECK(json::parse(ss.out)["facts"]["strength"]["sign|sign"] == "not essentially strong");
  Run ts = cli({"strength", "-", "--pair", "trivial,sign"}, inv);
  CHECK(ts.code == 0);
  CHECK(cli({"strength", "-", "--pair", "sign,nothing"}, inv).code == 2);
}
