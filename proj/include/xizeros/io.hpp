#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

#include "xizeros/product.hpp"
#include "xizeros/series.hpp"
#include "xizeros/zeros.hpp"

namespace xizeros::io {

inline const std::string kZeroTableHeader = "aleph,index,re,im,bracket_lo,bracket_hi,certified_digits,residual";
inline const std::string kCoefficientHeader = "aleph,gamma,alpha,error_radius";

/// Writes `content` to a temporary file beside `path`, then renames it over `path`.
void write_file_atomic(const std::filesystem::path& path, const std::string& content);
std::string read_file(const std::filesystem::path& path);

/// Scientific notation with `digits` significant digits and no flush to zero.
std::string to_scientific(const Real& x, int digits);

/// Zero-table CSV. Real zeros come first (im = 0, empty residual), then
/// complex zeros (empty bracket fields) indexed after them. Numbers are
/// decimal strings with ctx.target_digits() significant digits.
std::string format_zero_table(const ZeroTable& table, const PrecisionContext& ctx);

/// Parses the zero-table CSV. Throws SchemaMismatch for a wrong header or rows
/// whose aleph differs from the first row (or from `expected`), ParseError
/// with the 1-based line number for malformed fields. Complex rows are
/// imported with multiplicity 1.
ZeroTable parse_zero_table(const std::string& text, const PrecisionContext& ctx,
                           const std::optional<AlephParam>& expected = std::nullopt);

std::string format_coefficients(const CoefficientTable& table, const PrecisionContext& ctx);
CoefficientTable parse_coefficients(const std::string& text, const PrecisionContext& ctx);

void export_table(const ZeroTable& table, const std::filesystem::path& path, const PrecisionContext& ctx);
void export_table(const CoefficientTable& table, const std::filesystem::path& path, const PrecisionContext& ctx);
ZeroTable import_zero_table(const std::filesystem::path& path, const PrecisionContext& ctx);
CoefficientTable import_coefficients(const std::filesystem::path& path, const PrecisionContext& ctx);

/// Appends the rows of `fresh` whose real zeros are not already present
/// (within 1e-6) to the CSV text `existing`, leaving existing lines untouched.
/// New rows are indexed after the existing ones.
std::string merge_zero_table(const std::string& existing, const ZeroTable& fresh, const PrecisionContext& ctx);

nlohmann::ordered_json zero_table_json(const ZeroTable& table, const PrecisionContext& ctx);
nlohmann::ordered_json coefficients_json(const CoefficientTable& table, const PrecisionContext& ctx);
nlohmann::ordered_json turan_json(const std::vector<TuranMargin>& margins, const PrecisionContext& ctx);
nlohmann::ordered_json identity_json(const AlephParam& aleph, const std::vector<IdentityReport>& reports,
                                     const PrecisionContext& ctx);
std::string identity_csv(const std::vector<IdentityReport>& reports, const PrecisionContext& ctx);

struct BoundRow {
  std::string bound;
  std::string direction;
  std::string attribution;
};

/// Published lower and upper bounds on the de Bruijn-Newman constant
/// (heat-flow convention t = -aleph).
const std::vector<BoundRow>& bounds_table();
std::string bounds_csv();
nlohmann::ordered_json bounds_json();

/// What the published bounds imply for the zeros of Xi at literature time t.
struct LiteratureExpectation {
  std::string t;
  /// ALL_REAL, NON_REAL_PRESENT or UNDETERMINED; non-real zeros need not lie in any given box.
  std::string expectation;
  std::optional<BoundRow> reference;
};

LiteratureExpectation literature_expectation(const AlephParam& aleph);

}  // namespace xizeros::io
