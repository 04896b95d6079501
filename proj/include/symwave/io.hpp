#pragma once

#include "symwave/verify.hpp"

#include "json.hpp"

#include <filesystem>
#include <string>

namespace symwave {

using Json = nlohmann::json;

enum class MaskFormat { Entries, Grid };

/// Parsed mask; float is always filled, exact only when every value is exact.
struct MaskFile {
  std::size_t dim = 0;
  bool exact = true;
  ExactPoly exact_poly;
  FloatPoly float_poly;
};

/// "p/q" string, integer, {"a": "p/q", "b": "p/q", "sqrt": r} or [re, im].
struct ParsedValue {
  bool exact = true;
  QSqrt q;
  Complex z;
};
ParsedValue parse_value(const Json& v);
Json value_to_json(const QSqrt& x);
Json value_to_json(const Complex& x);

/// Grid cells: column c and row r sit at origin + (sign_col (c - oc)) e_col + (sign_row (r - or)) e_row.
struct GridAxes {
  std::size_t col_axis = 0;
  int col_sign = 1;
  std::size_t row_axis = 1;
  int row_sign = -1;
};
GridAxes parse_axes(const Json& axes);

MaskFile parse_mask(const Json& j);
MaskFile import_mask(const std::filesystem::path& file);

Json mask_to_json(const ExactPoly& t, MaskFormat format = MaskFormat::Entries);
Json mask_to_json(const FloatPoly& t, MaskFormat format = MaskFormat::Entries);

template <class C>
TrigPoly<C> mask_as(const MaskFile& f, const std::string& what) {
  if constexpr (CoeffTraits<C>::exact) {
    if (!f.exact) throw Error(ErrorKind::BackendMismatch, what + " has floating point values; use --backend float");
    return f.exact_poly;
  } else {
    return f.float_poly;
  }
}

Json read_json(const std::filesystem::path& file);
/// Two-space indented UTF-8 with a trailing newline.
std::string dump(const Json& j);
void write_text(const std::filesystem::path& file, const std::string& text);
void write_json(const std::filesystem::path& file, const Json& j);

Json to_json(const IVec& v);
Json to_json(const RVec& v);
Json to_json(const IMat& A);
IVec ivec_from_json(const Json& j, const std::string& what);
RVec rvec_from_json(const Json& j, const std::string& what);
IMat imat_from_json(const Json& j, const std::string& what);

Json to_json(const CheckRecord& r);
Json to_json(const MomentTable& t);
Json to_json(const VerificationReport& rep);
Json to_json(const ExpectedLaw& law);
Json to_json(const DilationContext& dil);
Json to_json(const Contexts& ctx);

}  // namespace symwave
