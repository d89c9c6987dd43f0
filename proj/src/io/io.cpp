#include "xizeros/io.hpp"

#include <fstream>
#include <sstream>
#include <system_error>

#include "xizeros/error.hpp"

namespace xizeros::io {

namespace {

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> out;
  std::string field;
  for (char c : line) {
    if (c == ',') {
      out.push_back(std::move(field));
      field.clear();
    } else {
      field.push_back(c);
    }
  }
  out.push_back(std::move(field));
  return out;
}

std::vector<std::string> lines_of(const std::string& text) {
  std::vector<std::string> out;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    out.push_back(line);
  }
  while (!out.empty() && out.back().empty()) out.pop_back();
  return out;
}

[[noreturn]] void parse_fail(std::size_t line, const std::string& what) {
  throw Error(ErrorKind::ParseError, "line " + std::to_string(line) + ": " + what, static_cast<double>(line));
}

Real parse_real(const std::string& s, std::size_t line, const char* column) {
  if (s.empty()) parse_fail(line, std::string("empty ") + column);
  try {
    return from_decimal(s);
  } catch (const Error&) {
    parse_fail(line, std::string("bad ") + column + " '" + s + "'");
  }
}

int parse_int(const std::string& s, std::size_t line, const char* column) {
  std::size_t used = 0;
  int v = 0;
  try {
    v = std::stoi(s, &used);
  } catch (const std::exception&) {
    parse_fail(line, std::string("bad ") + column + " '" + s + "'");
  }
  if (used != s.size()) parse_fail(line, std::string("bad ") + column + " '" + s + "'");
  return v;
}

AlephParam parse_aleph(const std::string& s, std::size_t line) {
  try {
    return AlephParam(s);
  } catch (const Error&) {
    parse_fail(line, "bad aleph '" + s + "'");
  }
}

std::string csv_quote(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

nlohmann::ordered_json complex_pair(const Complex& z, int digits) {
  return nlohmann::ordered_json::array({to_decimal(z.real(), digits), to_decimal(z.imag(), digits)});
}

}  // namespace

void write_file_atomic(const std::filesystem::path& path, const std::string& content) {
  std::filesystem::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error(ErrorKind::InvalidArgument, "cannot write " + tmp.string());
    out << content;
    out.flush();
    if (!out) throw Error(ErrorKind::InvalidArgument, "write failed for " + tmp.string());
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) {
    std::filesystem::remove(tmp);
    throw Error(ErrorKind::InvalidArgument, "cannot rename onto " + path.string() + ": " + ec.message());
  }
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::InvalidArgument, "cannot read " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string to_scientific(const Real& x, int digits) {
  if (x == 0) return "0";
  return x.str(digits, std::ios_base::scientific);
}

std::string format_zero_table(const ZeroTable& table, const PrecisionContext& ctx) {
  PrecisionScope scope(ctx);
  const int d = ctx.target_digits();
  const std::string& a = table.aleph.text();
  std::ostringstream out;
  out << kZeroTableHeader << '\n';
  for (const RealZero& z : table.real_zeros) {
    out << a << ',' << z.index << ',' << to_decimal(z.location, d) << ",0," << to_decimal(z.bracket_lo, d) << ','
        << to_decimal(z.bracket_hi, d) << ',' << z.certified_digits << ",\n";
  }
  int index = static_cast<int>(table.real_zeros.size());
  for (const ComplexZero& z : table.complex_zeros) {
    out << a << ',' << ++index << ',' << to_decimal(z.location.real(), d) << ',' << to_decimal(z.location.imag(), d)
        << ",,," << z.certified_digits << ',' << to_decimal(z.residual, d) << '\n';
  }
  return out.str();
}

ZeroTable parse_zero_table(const std::string& text, const PrecisionContext& ctx,
                           const std::optional<AlephParam>& expected) {
  PrecisionScope scope(ctx);
  const std::vector<std::string> lines = lines_of(text);
  if (lines.empty() || lines[0] != kZeroTableHeader)
    throw Error(ErrorKind::SchemaMismatch, "zero table header must be '" + kZeroTableHeader + "'");
  ZeroTable table;
  table.provenance = ctx.summary();
  std::optional<AlephParam> aleph = expected;
  for (std::size_t i = 1; i < lines.size(); ++i) {
    const std::size_t line = i + 1;
    const std::vector<std::string> f = split_csv_line(lines[i]);
    if (f.size() != 8) parse_fail(line, "expected 8 fields, found " + std::to_string(f.size()));
    const AlephParam row_aleph = parse_aleph(f[0], line);
    if (!aleph) aleph = row_aleph;
    if (!(row_aleph == *aleph))
      throw Error(ErrorKind::SchemaMismatch, "line " + std::to_string(line) + ": aleph " + f[0] + " differs from " +
                                                 aleph->text());
    const int index = parse_int(f[1], line, "index");
    const Real re = parse_real(f[2], line, "re");
    const Real im = parse_real(f[3], line, "im");
    const int digits = parse_int(f[6], line, "certified_digits");
    const bool has_bracket = !f[4].empty() || !f[5].empty();
    if (has_bracket) {
      if (im != 0) parse_fail(line, "real zero with nonzero im");
      if (!f[7].empty()) parse_fail(line, "real zero with a residual");
      RealZero z;
      z.aleph = row_aleph;
      z.index = index;
      z.location = re;
      z.bracket_lo = parse_real(f[4], line, "bracket_lo");
      z.bracket_hi = parse_real(f[5], line, "bracket_hi");
      z.certified_digits = digits;
      table.real_zeros.push_back(std::move(z));
    } else {
      ComplexZero z;
      z.aleph = row_aleph;
      z.location = Complex(re, im);
      z.residual = parse_real(f[7], line, "residual");
      z.certified_digits = digits;
      table.complex_zeros.push_back(std::move(z));
    }
  }
  if (aleph) table.aleph = *aleph;
  return table;
}

std::string format_coefficients(const CoefficientTable& table, const PrecisionContext& ctx) {
  PrecisionScope scope(ctx);
  const int d = ctx.target_digits();
  std::ostringstream out;
  out << kCoefficientHeader << '\n';
  for (const CoefficientEntry& e : table.entries)
    out << table.aleph.text() << ',' << e.gamma << ',' << to_scientific(e.alpha.value, d) << ','
        << to_scientific(e.alpha.radius, d) << '\n';
  return out.str();
}

CoefficientTable parse_coefficients(const std::string& text, const PrecisionContext& ctx) {
  PrecisionScope scope(ctx);
  const std::vector<std::string> lines = lines_of(text);
  if (lines.empty() || lines[0] != kCoefficientHeader)
    throw Error(ErrorKind::SchemaMismatch, "coefficient header must be '" + kCoefficientHeader + "'");
  CoefficientTable table;
  std::optional<AlephParam> aleph;
  for (std::size_t i = 1; i < lines.size(); ++i) {
    const std::size_t line = i + 1;
    const std::vector<std::string> f = split_csv_line(lines[i]);
    if (f.size() != 4) parse_fail(line, "expected 4 fields, found " + std::to_string(f.size()));
    const AlephParam row_aleph = parse_aleph(f[0], line);
    if (!aleph) aleph = row_aleph;
    if (!(row_aleph == *aleph))
      throw Error(ErrorKind::SchemaMismatch, "line " + std::to_string(line) + ": aleph " + f[0] + " differs from " +
                                                 aleph->text());
    CoefficientEntry e;
    e.gamma = parse_int(f[1], line, "gamma");
    if (e.gamma != static_cast<int>(table.entries.size())) parse_fail(line, "gamma values must run 0, 1, 2, ...");
    e.alpha.value = parse_real(f[2], line, "alpha");
    e.alpha.radius = parse_real(f[3], line, "error_radius");
    table.entries.push_back(std::move(e));
  }
  if (aleph) table.aleph = *aleph;
  return table;
}

void export_table(const ZeroTable& table, const std::filesystem::path& path, const PrecisionContext& ctx) {
  write_file_atomic(path, format_zero_table(table, ctx));
}

void export_table(const CoefficientTable& table, const std::filesystem::path& path, const PrecisionContext& ctx) {
  write_file_atomic(path, format_coefficients(table, ctx));
}

ZeroTable import_zero_table(const std::filesystem::path& path, const PrecisionContext& ctx) {
  return parse_zero_table(read_file(path), ctx);
}

CoefficientTable import_coefficients(const std::filesystem::path& path, const PrecisionContext& ctx) {
  return parse_coefficients(read_file(path), ctx);
}

std::string merge_zero_table(const std::string& existing, const ZeroTable& fresh, const PrecisionContext& ctx) {
  PrecisionScope scope(ctx);
  const ZeroTable old = parse_zero_table(existing, ctx, fresh.aleph);
  const Real close(1e-6);
  auto present = [&](const Complex& z) {
    for (const RealZero& r : old.real_zeros)
      if (abs(Complex(r.location, Real(0)) - z) < close) return true;
    for (const ComplexZero& c : old.complex_zeros)
      if (abs(c.location - z) < close) return true;
    return false;
  };
  ZeroTable added;
  added.aleph = fresh.aleph;
  int index = static_cast<int>(old.real_zeros.size() + old.complex_zeros.size());
  for (const RealZero& z : fresh.real_zeros) {
    if (present(Complex(z.location, Real(0)))) continue;
    RealZero copy = z;
    copy.index = ++index;
    added.real_zeros.push_back(std::move(copy));
  }
  std::string out = existing;
  if (!out.empty() && out.back() != '\n') out += '\n';
  std::string rows = format_zero_table(added, ctx);
  out += rows.substr(rows.find('\n') + 1);
  // Complex rows are indexed after everything above them.
  const int d = ctx.target_digits();
  for (const ComplexZero& z : fresh.complex_zeros) {
    if (present(z.location)) continue;
    out += fresh.aleph.text() + ',' + std::to_string(++index) + ',' + to_decimal(z.location.real(), d) + ',' +
           to_decimal(z.location.imag(), d) + ",,," + std::to_string(z.certified_digits) + ',' +
           to_decimal(z.residual, d) + '\n';
  }
  return out;
}

nlohmann::ordered_json zero_table_json(const ZeroTable& table, const PrecisionContext& ctx) {
  PrecisionScope scope(ctx);
  const int d = ctx.target_digits();
  nlohmann::ordered_json j;
  j["aleph"] = table.aleph.text();
  j["provenance"] = table.provenance;
  j["real_zeros"] = nlohmann::ordered_json::array();
  for (const RealZero& z : table.real_zeros) {
    j["real_zeros"].push_back({{"index", z.index},
                               {"location", to_decimal(z.location, d)},
                               {"bracket", {to_decimal(z.bracket_lo, d), to_decimal(z.bracket_hi, d)}},
                               {"certified_digits", z.certified_digits}});
  }
  j["complex_zeros"] = nlohmann::ordered_json::array();
  for (const ComplexZero& z : table.complex_zeros) {
    j["complex_zeros"].push_back({{"location", complex_pair(z.location, d)},
                                  {"residual", to_decimal(z.residual, d)},
                                  {"multiplicity", z.multiplicity},
                                  {"certified_digits", z.certified_digits}});
  }
  j["flagged"] = nlohmann::ordered_json::array();
  for (const FlaggedInterval& f : table.flagged) j["flagged"].push_back({to_decimal(f.lo, d), to_decimal(f.hi, d)});
  return j;
}

nlohmann::ordered_json coefficients_json(const CoefficientTable& table, const PrecisionContext& ctx) {
  PrecisionScope scope(ctx);
  const int d = ctx.target_digits();
  nlohmann::ordered_json j;
  j["aleph"] = table.aleph.text();
  j["entries"] = nlohmann::ordered_json::array();
  for (const CoefficientEntry& e : table.entries)
    j["entries"].push_back({{"gamma", e.gamma},
                            {"alpha", to_scientific(e.alpha.value, d)},
                            {"error_radius", to_scientific(e.alpha.radius, d)}});
  return j;
}

nlohmann::ordered_json turan_json(const std::vector<TuranMargin>& margins, const PrecisionContext& ctx) {
  PrecisionScope scope(ctx);
  nlohmann::ordered_json j = nlohmann::ordered_json::array();
  for (const TuranMargin& m : margins)
    j.push_back({{"gamma", m.gamma},
                 {"margin", to_scientific(m.margin, ctx.target_digits())},
                 {"error", to_scientific(m.error, 6)},
                 {"pass", m.pass}});
  return j;
}

nlohmann::ordered_json identity_json(const AlephParam& aleph, const std::vector<IdentityReport>& reports,
                                     const PrecisionContext& ctx) {
  PrecisionScope scope(ctx);
  const int d = ctx.target_digits();
  nlohmann::ordered_json j;
  j["aleph"] = aleph.text();
  j["checks"] = nlohmann::ordered_json::array();
  for (const IdentityReport& r : reports) {
    j["checks"].push_back({{"name", r.name},
                           {"lhs", complex_pair(r.lhs.value, d)},
                           {"rhs", complex_pair(r.rhs.value, d)},
                           {"residual", to_decimal(r.residual, d)},
                           {"tolerance", to_decimal(r.tolerance, d)},
                           {"pass", r.pass},
                           {"notes", r.notes}});
  }
  return j;
}

std::string identity_csv(const std::vector<IdentityReport>& reports, const PrecisionContext& ctx) {
  PrecisionScope scope(ctx);
  const int d = ctx.target_digits();
  std::ostringstream out;
  out << "name,lhs_re,lhs_im,rhs_re,rhs_im,residual,tolerance,pass,notes\n";
  for (const IdentityReport& r : reports) {
    out << r.name << ',' << to_decimal(r.lhs.value.real(), d) << ',' << to_decimal(r.lhs.value.imag(), d) << ','
        << to_decimal(r.rhs.value.real(), d) << ',' << to_decimal(r.rhs.value.imag(), d) << ','
        << to_decimal(r.residual, d) << ',' << to_decimal(r.tolerance, d) << ',' << (r.pass ? "true" : "false") << ','
        << csv_quote(r.notes) << '\n';
  }
  return out.str();
}

const std::vector<BoundRow>& bounds_table() {
  static const std::vector<BoundRow> rows{
      {"-inf", "lower", "Newman"},
      {"-50", "lower", "Csordas–Norfolk–Varga"},
      {"-5", "lower", "te Riele"},
      {"-0.385", "lower", "Norfolk–Ruttan–Varga"},
      {"-0.0991", "lower", "Csordas–Ruttan–Varga"},
      {"-0.000000379", "lower", "Csordas–Smith–Varga"},
      {"-0.000000005895", "lower", "Csordas–Odlyzko–Smith–Varga"},
      {"-0.00000000263", "lower", "Odlyzko"},
      {"-0.0000000000115", "lower", "Saouter–Gourdon–Demichel"},
      {"0.5", "upper", "Ki, Kim and Lee"},
      {"0.22", "upper", "Polymath"},
      {"+inf", "upper", "Rodgers and Tao"},
  };
  return rows;
}

std::string bounds_csv() {
  std::ostringstream out;
  out << "bound,direction,attribution\n";
  for (const BoundRow& r : bounds_table()) out << r.bound << ',' << r.direction << ',' << csv_quote(r.attribution) << '\n';
  return out.str();
}

nlohmann::ordered_json bounds_json() {
  nlohmann::ordered_json j = nlohmann::ordered_json::array();
  for (const BoundRow& r : bounds_table())
    j.push_back({{"bound", r.bound}, {"direction", r.direction}, {"attribution", r.attribution}});
  return j;
}

LiteratureExpectation literature_expectation(const AlephParam& aleph) {
  LiteratureExpectation out;
  out.t = aleph.literature_t();
  const double t = std::stod(out.t);
  // A lower bound B on the constant with t <= B leaves non-real zeros at t;
  // an upper bound B with t >= B makes every zero real.
  std::optional<std::pair<double, BoundRow>> lower, upper;
  for (const BoundRow& r : bounds_table()) {
    const double b = std::stod(r.bound);
    if (!std::isfinite(b)) continue;
    if (r.direction == "lower" && t <= b && (!lower || b < lower->first)) lower = {b, r};
    if (r.direction == "upper" && t >= b && (!upper || b < upper->first)) upper = {b, r};
  }
  if (lower) {
    out.expectation = "NON_REAL_PRESENT";
    out.reference = lower->second;
  } else if (upper) {
    out.expectation = "ALL_REAL";
    out.reference = upper->second;
  } else {
    out.expectation = "UNDETERMINED";
  }
  return out;
}

}  // namespace xizeros::io
