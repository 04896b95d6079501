#include "doctest.h"

#include "symwave/io.hpp"
#include "test_support.hpp"

#include <filesystem>

using namespace symwave;
using namespace symwave::testing;

namespace {

const std::filesystem::path kFixtures = SYMWAVE_FIXTURE_DIR;

ErrorKind kind_of(const Json& j) {
  try {
    parse_mask(j);
  } catch (const Error& e) {
    return e.kind();
  }
  FAIL("no error");
  return ErrorKind::InternalInconsistency;
}

}  // namespace

TEST_CASE("io: value encodings") {
  CHECK(parse_value("3/4").q == QSqrt(Rational(3, 4)));
  CHECK(parse_value(-2).q == QSqrt(-2));
  auto v = parse_value(Json{{"a", "1/2"}, {"b", "-1/3"}, {"sqrt", 8}});
  CHECK(v.exact);
  CHECK(v.q == QSqrt(Rational(1, 2), Rational(-2, 3), 2));
  auto f = parse_value(Json::array({0.25, -1.0}));
  CHECK_FALSE(f.exact);
  CHECK(f.z == Complex(0.25, -1.0));
  CHECK(value_to_json(QSqrt(Rational(-5, 108))) == "-5/108");
  CHECK(parse_value(value_to_json(QSqrt::sqrt_of(12))).q == QSqrt::sqrt_of(12));
  CHECK_THROWS_AS(parse_value("1/0"), Error);
  CHECK_THROWS_AS(parse_value(true), Error);
}

TEST_CASE("io: entries round trip") {
  ExactPoly t = ex2_published_dual();
  t.add_term({7, -3}, QSqrt(Rational(1), Rational(1, 5), 3));
  Json j = mask_to_json(t);
  MaskFile f = parse_mask(j);
  CHECK(f.exact);
  CHECK(f.exact_poly == t);
  CHECK(mask_to_json(f.exact_poly) == j);
  CHECK(dump(j) == dump(mask_to_json(parse_mask(Json::parse(dump(j))).exact_poly)));

  // entry order does not matter
  Json r = j;
  std::reverse(r["entries"].begin(), r["entries"].end());
  CHECK(parse_mask(r).exact_poly == t);

  FloatPoly z = to_float(t);
  z.add_term({1, 1}, Complex(0.1, -0.3));
  MaskFile g = parse_mask(mask_to_json(z));
  CHECK_FALSE(g.exact);
  CHECK(g.float_poly == z);
  CHECK_THROWS_AS(mask_as<QSqrt>(g, "mask"), Error);
}

TEST_CASE("io: malformed masks") {
  Json dup = {{"dim", 2},
              {"entries", {{{"exponent", {0, 0}}, {"value", "1"}}, {{"exponent", {0, 0}}, {"value", "2"}}}}};
  CHECK(kind_of(dup) == ErrorKind::DuplicateExponent);
  Json noaxes = {{"dim", 2}, {"grid", {{"rows", {{"1"}}}, {"origin", {0, 0}}}}};
  CHECK(kind_of(noaxes) == ErrorKind::GridAmbiguous);
  Json both = {{"dim", 2}, {"entries", Json::array()}, {"grid", Json::object()}};
  CHECK(kind_of(both) == ErrorKind::ParseError);
  Json wrongdim = {{"dim", 3}, {"entries", {{{"exponent", {0, 0}}, {"value", "1"}}}}};
  CHECK(kind_of(wrongdim) == ErrorKind::ParseError);
  Json ragged = {{"grid", {{"rows", Json::array({Json::array({"1", "2"}), Json::array({"3"})})}, {"origin", {0, 0}}, {"axes", {{"col", "+x1"}, {"row", "-x2"}}}}}};
  CHECK(kind_of(ragged) == ErrorKind::ParseError);
  Json same = {{"grid", {{"rows", {{"1"}}}, {"origin", {0, 0}}, {"axes", {{"col", "+x1"}, {"row", "-x1"}}}}}};
  CHECK(kind_of(same) == ErrorKind::GridAmbiguous);
  Json badorigin = {{"grid",
                     {{"rows", Json::array({Json::array({"1", "2"})})},
                      {"origin", {0, 0}},
                      {"origin_value", "2"},
                      {"axes", {{"col", "+x1"}, {"row", "-x2"}}}}}};
  CHECK(kind_of(badorigin) == ErrorKind::ParseError);
}

TEST_CASE("io: grid axes") {
  Json base = {{"rows", Json::array({Json::array({"1", "2"}), Json::array({"3", "4"})})}, {"origin", {0, 0}}};
  Json g = base;
  g["axes"] = {{"col", "+x1"}, {"row", "-x2"}};
  ExactPoly a = parse_mask(Json{{"grid", g}}).exact_poly;
  CHECK(a.coeff({1, 0}) == QSqrt(2));
  CHECK(a.coeff({0, -1}) == QSqrt(3));
  g["axes"] = {{"col", "-x2"}, {"row", "+x1"}};
  ExactPoly b = parse_mask(Json{{"grid", g}}).exact_poly;
  CHECK(b.coeff({0, -1}) == QSqrt(2));
  CHECK(b.coeff({1, 0}) == QSqrt(3));
}

TEST_CASE("io: first example grids") {
  MaskFile m0 = import_mask(kFixtures / "ex1" / "m0.json");
  CHECK(m0.exact_poly == ex1_m0());
  Contexts ctx = ex1_contexts();
  CHECK(check_symmetry(m0.exact_poly, ctx.sym));
  CHECK(sum_rule_order(m0.exact_poly, ctx.dil, 6) >= 3);
  CHECK(import_mask(kFixtures / "ex1" / "published_m10.json").exact_poly == ex1_published_m10());
  CHECK(import_mask(kFixtures / "ex1" / "published_lifted_dual0.json").exact_poly == ex1_published_lifted_dual0());
}

TEST_CASE("io: second example grids") {
  Contexts ctx = ex2_contexts();
  MaskFile m0 = import_mask(kFixtures / "ex2" / "m0.json");
  CHECK(m0.exact_poly == ex2_m0());
  CHECK(check_symmetry(m0.exact_poly, ctx.sym));
  CHECK(sum_rule_order(m0.exact_poly, ctx.dil, 5) == 2);
  CHECK(import_mask(kFixtures / "ex2" / "published_dual.json").exact_poly == ex2_published_dual());
  CHECK(import_mask(kFixtures / "ex2" / "utility_dual.json").exact_poly == ex2_utility_dual());
}

TEST_CASE("io: grid export reproduces the input grid") {
  for (const char* name : {"ex1/m0.json", "ex1/published_m10.json", "ex1/published_lifted_dual0.json", "ex2/m0.json",
                           "ex2/published_dual.json"}) {
    Json in = read_json(kFixtures / name);
    Json out = mask_to_json(parse_mask(in).exact_poly, MaskFormat::Grid);
    CAPTURE(name);
    CHECK(out["grid"]["rows"] == in["grid"]["rows"]);
    CHECK(out["grid"]["origin"] == in["grid"]["origin"]);
    CHECK(out["grid"]["axes"] == in["grid"]["axes"]);
  }
  CHECK_THROWS_AS(mask_to_json(ExactPoly::monomial({1, 2, 3}), MaskFormat::Grid), Error);
}

TEST_CASE("io: contexts and reports serialize") {
  Contexts ctx = ex2_contexts();
  Json j = to_json(ctx);
  CHECK(j["dilation"]["m"] == 3);
  CHECK(j["orbits"].size() == 2);
  CHECK(j["center"] == Json::array({"1/2", "0"}));
  CHECK(imat_from_json(j["dilation"]["M"], "M") == ctx.dil.M);
  VerificationReport rep;
  rep.checks.push_back({"a", "exact", false, 0.0, {"entry (0,0)"}, ""});
  rep.assumed.push_back("x");
  Json r = to_json(rep);
  CHECK(r["all_passed"] == false);
  CHECK(r["checks"][0]["verdict"] == "fail");
  CHECK(r["assumed"][0]["status"] == "assumed, not verified");
}
