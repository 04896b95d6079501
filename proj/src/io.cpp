#include "symwave/io.hpp"

#include <algorithm>
#include <fstream>
#include <limits>
#include <set>
#include <sstream>

namespace symwave {

namespace {

[[noreturn]] void parse_fail(const std::string& msg) { throw Error(ErrorKind::ParseError, msg); }

Rational rational_field(const Json& v, const std::string& what) {
  try {
    if (v.is_number_integer()) return rational_from_int(v.get<std::int64_t>());
    if (v.is_string()) return parse_rational(v.get<std::string>());
  } catch (const Error& e) {
    parse_fail(what + ": " + e.what());
  }
  parse_fail(what + ": expected a rational string \"p/q\" or an integer");
}

std::int64_t int_field(const Json& v, const std::string& what) {
  if (!v.is_number_integer()) parse_fail(what + ": expected an integer");
  return v.get<std::int64_t>();
}

const Json& member(const Json& j, const char* key, const std::string& what) {
  if (!j.is_object() || !j.contains(key)) parse_fail(what + ": missing \"" + key + "\"");
  return j.at(key);
}

void add_value(MaskFile& f, const IVec& k, const ParsedValue& v, std::set<IVec>& seen) {
  if (!seen.insert(k).second) throw Error(ErrorKind::DuplicateExponent, "exponent " + to_string(k) + " listed twice");
  if (v.exact) f.exact_poly.add_term(k, v.q);
  else f.exact = false;
  f.float_poly.add_term(k, v.z);
}

std::pair<std::size_t, int> parse_axis(const Json& v, const std::string& what) {
  if (!v.is_string()) parse_fail(what + ": expected \"+xN\" or \"-xN\"");
  std::string s = v.get<std::string>();
  if (s.size() < 3 || (s[0] != '+' && s[0] != '-') || s[1] != 'x') parse_fail(what + ": bad axis '" + s + "'");
  std::size_t idx = 0;
  try {
    idx = std::stoul(s.substr(2));
  } catch (const std::exception&) {
    parse_fail(what + ": bad axis '" + s + "'");
  }
  if (idx < 1 || idx > 2) parse_fail(what + ": grid axes must be x1 or x2");
  return {idx - 1, s[0] == '+' ? 1 : -1};
}

template <class C>
void export_entries(Json& out, const TrigPoly<C>& t) {
  Json entries = Json::array();
  for (const auto& [k, c] : t.terms()) entries.push_back({{"exponent", to_json(k)}, {"value", value_to_json(c)}});
  out["entries"] = std::move(entries);
}

template <class C>
void export_grid(Json& out, const TrigPoly<C>& t) {
  if (t.dim() != 2) throw Error(ErrorKind::ParseError, "grid export needs dimension 2");
  std::int64_t x1lo = 0, x1hi = 0, x2lo = 0, x2hi = 0;
  bool first = true;
  for (const auto& [k, c] : t.terms()) {
    if (first) {
      x1lo = x1hi = k[0];
      x2lo = x2hi = k[1];
      first = false;
    }
    x1lo = std::min(x1lo, k[0]);
    x1hi = std::max(x1hi, k[0]);
    x2lo = std::min(x2lo, k[1]);
    x2hi = std::max(x2hi, k[1]);
  }
  Json rows = Json::array();
  if (!first) {
    for (std::int64_t x2 = x2hi; x2 >= x2lo; --x2) {
      Json row = Json::array();
      for (std::int64_t x1 = x1lo; x1 <= x1hi; ++x1) row.push_back(value_to_json(t.coeff({x1, x2})));
      rows.push_back(std::move(row));
    }
  }
  Json grid = {{"rows", rows},
               {"origin", {x2hi, -x1lo}},
               {"axes", {{"col", "+x1"}, {"row", "-x2"}}}};
  IVec zero{0, 0};
  grid["origin_value"] = value_to_json(t.coeff(zero));
  out["grid"] = std::move(grid);
}

template <class C>
Json mask_json(const TrigPoly<C>& t, MaskFormat format) {
  Json out = {{"schema", 1}, {"dim", t.dim()}};
  if (format == MaskFormat::Grid) export_grid(out, t);
  else export_entries(out, t);
  return out;
}

bool same_value(const ParsedValue& a, const ParsedValue& b) {
  if (a.exact && b.exact) return a.q == b.q;
  return std::abs(a.z - b.z) <= 1e-12 * std::max(1.0, std::abs(a.z));
}

}  // namespace

ParsedValue parse_value(const Json& v) {
  ParsedValue out;
  if (v.is_string() || v.is_number_integer()) {
    out.q = QSqrt(rational_field(v, "value"));
  } else if (v.is_object()) {
    Rational a = v.contains("a") ? rational_field(v.at("a"), "value.a") : Rational(0);
    Rational b = v.contains("b") ? rational_field(v.at("b"), "value.b") : Rational(0);
    std::int64_t r = v.contains("sqrt") ? int_field(v.at("sqrt"), "value.sqrt") : 1;
    if (r <= 0) parse_fail("value.sqrt must be positive");
    for (const auto& [key, val] : v.items())
      if (key != "a" && key != "b" && key != "sqrt") parse_fail("value: unknown field \"" + key + "\"");
    out.q = QSqrt(a, b, r);
  } else if (v.is_array()) {
    if (v.size() != 2 || !v[0].is_number() || !v[1].is_number()) parse_fail("value: expected [re, im]");
    out.exact = false;
    out.z = {v[0].get<double>(), v[1].get<double>()};
    return out;
  } else if (v.is_number_float()) {
    out.exact = false;
    out.z = {v.get<double>(), 0.0};
    return out;
  } else {
    parse_fail("value: unsupported encoding");
  }
  out.z = to_complex(out.q);
  return out;
}

Json value_to_json(const QSqrt& x) {
  if (x.is_rational()) return to_string(x.rational_part());
  return {{"a", to_string(x.rational_part())}, {"b", to_string(x.radical_part())}, {"sqrt", x.radicand()}};
}

Json value_to_json(const Complex& x) { return Json::array({x.real(), x.imag()}); }

GridAxes parse_axes(const Json& axes) {
  if (!axes.is_object()) parse_fail("grid.axes must be an object");
  GridAxes g;
  std::tie(g.col_axis, g.col_sign) = parse_axis(member(axes, "col", "grid.axes"), "grid.axes.col");
  std::tie(g.row_axis, g.row_sign) = parse_axis(member(axes, "row", "grid.axes"), "grid.axes.row");
  if (g.col_axis == g.row_axis) throw Error(ErrorKind::GridAmbiguous, "grid axes map rows and columns to the same coordinate");
  return g;
}

MaskFile parse_mask(const Json& j) {
  if (!j.is_object()) parse_fail("mask file must be a JSON object");
  if (j.contains("schema") && j.at("schema") != 1) parse_fail("unsupported mask schema");
  bool has_entries = j.contains("entries"), has_grid = j.contains("grid");
  if (has_entries == has_grid) parse_fail("mask needs exactly one of \"entries\" and \"grid\"");
  MaskFile f;
  f.dim = has_grid && !j.contains("dim") ? 2 : static_cast<std::size_t>(int_field(member(j, "dim", "mask"), "dim"));
  if (f.dim == 0) parse_fail("dim must be positive");
  f.exact_poly = ExactPoly(f.dim);
  f.float_poly = FloatPoly(f.dim);
  std::set<IVec> seen;

  if (has_entries) {
    const Json& entries = j.at("entries");
    if (!entries.is_array()) parse_fail("entries must be an array");
    for (const auto& e : entries) {
      IVec k = ivec_from_json(member(e, "exponent", "entry"), "entry.exponent");
      if (k.size() != f.dim) parse_fail("exponent " + to_string(k) + " does not have dimension " + std::to_string(f.dim));
      add_value(f, k, parse_value(member(e, "value", "entry")), seen);
    }
    return f;
  }

  const Json& grid = j.at("grid");
  if (f.dim != 2) parse_fail("grid form needs dim 2");
  if (!grid.is_object()) parse_fail("grid must be an object");
  if (!grid.contains("axes")) throw Error(ErrorKind::GridAmbiguous, "grid block has no axes declaration");
  GridAxes ax = parse_axes(grid.at("axes"));
  const Json& rows = member(grid, "rows", "grid");
  const Json& origin = member(grid, "origin", "grid");
  if (!origin.is_array() || origin.size() != 2) parse_fail("grid.origin must be [row, col]");
  std::int64_t orow = int_field(origin[0], "grid.origin"), ocol = int_field(origin[1], "grid.origin");
  if (!rows.is_array()) parse_fail("grid.rows must be an array");
  std::size_t width = rows.empty() ? 0 : rows[0].size();
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (!rows[r].is_array() || rows[r].size() != width) parse_fail("grid rows must be arrays of equal length");
    for (std::size_t c = 0; c < width; ++c) {
      IVec k(2, 0);
      k[ax.col_axis] += ax.col_sign * (static_cast<std::int64_t>(c) - ocol);
      k[ax.row_axis] += ax.row_sign * (static_cast<std::int64_t>(r) - orow);
      add_value(f, k, parse_value(rows[r][c]), seen);
    }
  }
  if (grid.contains("origin_value")) {
    ParsedValue want = parse_value(grid.at("origin_value"));
    ParsedValue got;
    got.exact = f.exact;
    got.q = f.exact_poly.coeff({0, 0});
    got.z = f.float_poly.coeff({0, 0});
    if (!same_value(want, got)) parse_fail("grid origin does not hold the declared origin_value");
  }
  return f;
}

MaskFile import_mask(const std::filesystem::path& file) {
  try {
    return parse_mask(read_json(file));
  } catch (const Error& e) {
    if (e.kind() == ErrorKind::ConfigError) throw;
    throw Error(e.kind(), file.string() + ": " + std::string(e.what()).substr(std::string(to_string(e.kind())).size() + 2));
  }
}

Json mask_to_json(const ExactPoly& t, MaskFormat format) { return mask_json(t, format); }
Json mask_to_json(const FloatPoly& t, MaskFormat format) { return mask_json(t, format); }

Json read_json(const std::filesystem::path& file) {
  std::ifstream in(file);
  if (!in) throw Error(ErrorKind::ConfigError, "cannot open " + file.string());
  try {
    return Json::parse(in);
  } catch (const Json::parse_error& e) {
    throw Error(ErrorKind::ParseError, file.string() + ": " + e.what());
  }
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

void write_text(const std::filesystem::path& file, const std::string& text) {
  if (file.has_parent_path()) std::filesystem::create_directories(file.parent_path());
  std::ofstream out(file, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorKind::ConfigError, "cannot write " + file.string());
  out << text;
}

void write_json(const std::filesystem::path& file, const Json& j) { write_text(file, dump(j)); }

Json to_json(const IVec& v) { return Json(v); }

Json to_json(const RVec& v) {
  Json out = Json::array();
  for (const auto& q : v) out.push_back(to_string(q));
  return out;
}

Json to_json(const IMat& A) { return Json(A.rows()); }

IVec ivec_from_json(const Json& j, const std::string& what) {
  if (!j.is_array()) parse_fail(what + ": expected an integer array");
  IVec out;
  for (const auto& x : j) out.push_back(int_field(x, what));
  return out;
}

RVec rvec_from_json(const Json& j, const std::string& what) {
  if (!j.is_array()) parse_fail(what + ": expected an array of rationals");
  RVec out;
  for (const auto& x : j) out.push_back(rational_field(x, what));
  return out;
}

IMat imat_from_json(const Json& j, const std::string& what) {
  if (!j.is_array() || j.empty()) parse_fail(what + ": expected a square integer matrix");
  std::vector<std::vector<std::int64_t>> rows;
  for (const auto& r : j) {
    IVec row = ivec_from_json(r, what);
    if (row.size() != j.size()) parse_fail(what + ": matrix is not square");
    rows.push_back(row);
  }
  return IMat::from_rows(rows);
}

Json to_json(const CheckRecord& r) {
  Json out = {{"name", r.name},
              {"mode", r.mode},
              {"verdict", r.passed ? "pass" : "fail"},
              {"residual", r.residual},
              {"witnesses", r.witnesses}};
  if (!r.detail.empty()) out["detail"] = r.detail;
  return out;
}

Json to_json(const MomentTable& t) {
  Json rows = Json::array();
  for (const auto& r : t.rows) rows.push_back({{"mask", r.label}, {"primal_vm", r.primal_vm}, {"dual_vm", r.dual_vm}});
  return {{"primal_sum_rule", t.primal_sum_rule},
          {"dual_sum_rule", t.dual_sum_rule},
          {"sum_rule_exact", t.sum_rule_exact},
          {"masks", rows}};
}

Json to_json(const VerificationReport& rep) {
  Json checks = Json::array();
  for (const auto& c : rep.checks) checks.push_back(to_json(c));
  Json assumed = Json::array();
  for (const auto& a : rep.assumed) assumed.push_back({{"item", a}, {"status", "assumed, not verified"}});
  return {{"all_passed", rep.all_passed()}, {"checks", checks}, {"moments", to_json(rep.moments)}, {"assumed", assumed}};
}

Json to_json(const ExpectedLaw& law) {
  return {{"element", law.element}, {"eps", value_to_json(law.eps)}, {"r", to_json(law.r)}};
}

Json to_json(const DilationContext& dil) {
  Json digits = Json::array(), dual = Json::array();
  for (const auto& s : dil.digits) digits.push_back(to_json(s));
  for (const auto& s : dil.dual_digits) dual.push_back(to_json(s));
  return {{"M", to_json(dil.M)}, {"det", dil.det}, {"m", dil.m}, {"digits", digits}, {"dual_digits", dual}};
}

Json to_json(const Contexts& ctx) {
  Json group = Json::array();
  for (const auto& E : ctx.sym.group) group.push_back(to_json(E));
  Json orbits = Json::array();
  for (const auto& orb : ctx.orb.orbits) {
    Json digits = Json::array();
    for (std::size_t d : orb.digits) digits.push_back(to_json(ctx.dil.digits[d]));
    Json r = Json::array();
    for (const auto& [F, v] : orb.r) r.push_back({{"element", F}, {"r", to_json(v)}});
    orbits.push_back({{"digits", digits},
                      {"digit_indices", orb.digits},
                      {"stabilizer", orb.stabilizer},
                      {"transversal", orb.transversal},
                      {"r", r}});
  }
  return {{"dilation", to_json(ctx.dil)},
          {"group", group},
          {"center", to_json(ctx.sym.center)},
          {"abelian", ctx.sym.is_abelian()},
          {"orbits", orbits}};
}

}  // namespace symwave
