#include "xizeros/cli.hpp"

#include <algorithm>
#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <functional>
#include <iomanip>
#include <ostream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "xizeros/error.hpp"
#include "xizeros/io.hpp"

namespace xizeros::cli {

namespace {

using nlohmann::ordered_json;

struct Options {
  std::string aleph = "0";
  std::optional<int> digits;
  std::string lambda;
  std::string tau;
  std::string range;
  std::string box;
  std::string box_height = "2";
  int gamma_max = kDefaultGammaMax;
  int factors = 50;
  std::string suite = "all";
  std::string format = "csv";
  std::string out;
};

void diagnostic(std::ostream& err, const std::string& level, const std::string& kind, const std::string& message,
                std::optional<double> hint = std::nullopt) {
  ordered_json j{{"level", level}, {"kind", kind}, {"message", message}};
  if (hint && *hint != 0.0) j["hint"] = *hint;
  err << j.dump() << '\n';
}

int exit_code_for(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::ParseError:
    case ErrorKind::InvalidArgument:
    case ErrorKind::InvalidInterval:
    case ErrorKind::SchemaMismatch:
      return kExitParse;
    default:
      return kExitNumeric;
  }
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : s) {
    if (c == sep) {
      out.push_back(cur);
      cur.clear();
    } else {
      cur.push_back(c);
    }
  }
  out.push_back(cur);
  return out;
}

Complex parse_point(const std::string& text, const char* flag) {
  const std::vector<std::string> parts = split(text, ',');
  if (parts.empty() || parts.size() > 2 || parts[0].empty())
    throw Error(ErrorKind::ParseError, std::string(flag) + " expects <re>[,<im>]");
  const Real re = from_decimal(parts[0]);
  const Real im = parts.size() == 2 ? from_decimal(parts[1]) : Real(0);
  return {re, im};
}

std::vector<Real> parse_colon_list(const std::string& text, std::size_t n, const char* flag, const char* shape) {
  const std::vector<std::string> parts = split(text, ':');
  if (parts.size() != n) throw Error(ErrorKind::ParseError, std::string(flag) + " expects " + shape);
  std::vector<Real> out;
  for (const std::string& p : parts) out.push_back(from_decimal(p));
  return out;
}

int resolve_digits(const Options& o, std::ostream& err) {
  int digits = kDefaultDigits;
  if (o.digits) {
    digits = *o.digits;
  } else if (const char* env = std::getenv("XIZEROS_DIGITS"); env && *env) {
    std::size_t used = 0;
    try {
      digits = std::stoi(env, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == 0 || env[used] != '\0') {
      diagnostic(err, "error", "ParseError", std::string("XIZEROS_DIGITS is not an integer: '") + env + "'");
      return -1;
    }
  }
  if (digits < kMinDigits || digits > kMaxDigits) {
    diagnostic(err, "error", "ParseError",
               "digits must be in [" + std::to_string(kMinDigits) + ", " + std::to_string(kMaxDigits) +
                   "], got " + std::to_string(digits));
    return -1;
  }
  return digits;
}

class Runner {
 public:
  Runner(const Options& o, const PrecisionContext& ctx, std::ostream& out, std::ostream& err)
      : o_(o), ctx_(ctx), out_(out), err_(err) {}

  int eval() {
    PrecisionScope scope(ctx_);
    const AlephParam aleph(o_.aleph);
    const bool use_tau = !o_.tau.empty();
    const Complex point = use_tau ? parse_point(o_.tau, "--tau") : parse_point(o_.lambda.empty() ? "0" : o_.lambda, "--lambda");
    const EvalResult r = use_tau ? eval_M(aleph, point, ctx_) : eval_Xi(aleph, point, ctx_);
    const int d = ctx_.target_digits();
    const std::string fn = use_tau ? "M" : "Xi";
    if (json()) {
      ordered_json j{{"aleph", aleph.text()},
                     {"function", fn},
                     {"point", {to_decimal(point.real(), d), to_decimal(point.imag(), d)}},
                     {"value", {to_decimal(r.value.value.real(), d), to_decimal(r.value.value.imag(), d)}},
                     {"error_radius", io::to_scientific(r.value.radius, 6)},
                     {"quadrature_converged", r.quadrature_converged}};
      emit(j.dump(2) + "\n");
    } else {
      std::ostringstream s;
      s << "aleph,function,point_re,point_im,value_re,value_im,error_radius\n"
        << aleph.text() << ',' << fn << ',' << to_decimal(point.real(), d) << ',' << to_decimal(point.imag(), d) << ','
        << to_decimal(r.value.value.real(), d) << ',' << to_decimal(r.value.value.imag(), d) << ','
        << io::to_scientific(r.value.radius, 6) << '\n';
      emit(s.str());
    }
    if (!r.quadrature_converged) {
      diagnostic(err_, "error", "NonConvergent", "quadrature hit the refinement cap; radius may be optimistic");
      return kExitNumeric;
    }
    return kExitOk;
  }

  int coeffs() {
    PrecisionScope scope(ctx_);
    const AlephParam aleph(o_.aleph);
    const CoefficientTable table = compute_coefficients(aleph, o_.gamma_max, ctx_);
    if (json()) {
      ordered_json j = io::coefficients_json(table, ctx_);
      if (table.gamma_max() >= 2) j["turan"] = io::turan_json(turan_diagnostic(table), ctx_);
      emit(j.dump(2) + "\n");
    } else {
      emit(io::format_coefficients(table, ctx_));
    }
    return kExitOk;
  }

  int zeros() {
    PrecisionScope scope(ctx_);
    const AlephParam aleph(o_.aleph);
    const std::vector<Real> r = parse_colon_list(o_.range, 2, "--range", "<lo:hi>");
    const ZeroTable table = scan_real_zeros(aleph, r[0], r[1], ctx_);
    if (json()) {
      emit(io::zero_table_json(table, ctx_).dump(2) + "\n");
    } else if (!o_.out.empty() && std::filesystem::exists(o_.out)) {
      io::write_file_atomic(o_.out, io::merge_zero_table(io::read_file(o_.out), table, ctx_));
    } else {
      emit(io::format_zero_table(table, ctx_));
    }
    if (!table.flagged.empty()) {
      diagnostic(err_, "error", "PrecisionExhausted",
                 std::to_string(table.flagged.size()) + " subinterval(s) could not be resolved above the error radius");
      return kExitNumeric;
    }
    return kExitOk;
  }

  int box_count() {
    PrecisionScope scope(ctx_);
    const AlephParam aleph(o_.aleph);
    const std::vector<Real> b = parse_colon_list(o_.box, 4, "--box", "<relo:rehi:imlo:imhi>");
    const BoxCount c = count_zeros_perturbed(aleph, Box{b[0], b[1], b[2], b[3]}, ctx_);
    const int d = ctx_.target_digits();
    std::ostringstream winding;
    winding << std::fixed << std::setprecision(6) << c.winding;
    if (json()) {
      ordered_json j{{"aleph", aleph.text()},
                     {"box", {to_decimal(c.box.re_lo, d), to_decimal(c.box.re_hi, d), to_decimal(c.box.im_lo, d),
                              to_decimal(c.box.im_hi, d)}},
                     {"count", c.count},
                     {"winding", winding.str()},
                     {"min_modulus_on_contour", io::to_scientific(c.min_modulus_on_contour, 6)},
                     {"max_radius_on_contour", io::to_scientific(c.max_radius_on_contour, 6)},
                     {"samples", c.samples}};
      emit(j.dump(2) + "\n");
    } else {
      std::ostringstream s;
      s << "aleph,re_lo,re_hi,im_lo,im_hi,count,winding,min_modulus_on_contour,max_radius_on_contour,samples\n"
        << aleph.text() << ',' << to_decimal(c.box.re_lo, d) << ',' << to_decimal(c.box.re_hi, d) << ','
        << to_decimal(c.box.im_lo, d) << ',' << to_decimal(c.box.im_hi, d) << ',' << c.count << ',' << winding.str()
        << ',' << io::to_scientific(c.min_modulus_on_contour, 6) << ','
        << io::to_scientific(c.max_radius_on_contour, 6) << ',' << c.samples << '\n';
      emit(s.str());
    }
    return kExitOk;
  }

  int certify() {
    PrecisionScope scope(ctx_);
    const AlephParam aleph(o_.aleph);
    const std::vector<Real> r = parse_colon_list(o_.range.empty() ? "0:60" : o_.range, 2, "--range", "<0:b>");
    if (r[0] != 0) throw Error(ErrorKind::InvalidArgument, "certify needs a range starting at 0");
    const Real height = from_decimal(o_.box_height);
    const RealityReport rep = reality_certificate(aleph, r[1], height, ctx_);
    const CoefficientTable coeffs = compute_coefficients(aleph, kDefaultGammaMax, ctx_);
    const std::vector<TuranMargin> turan = turan_diagnostic(coeffs);
    const io::LiteratureExpectation lit = io::literature_expectation(aleph);
    const int d = ctx_.target_digits();
    const int turan_failures =
        static_cast<int>(std::count_if(turan.begin(), turan.end(), [](const TuranMargin& m) { return !m.pass; }));
    const std::string reference = lit.reference ? lit.reference->bound + " " + lit.reference->attribution : "";

    if (json()) {
      ordered_json j;
      j["aleph"] = aleph.text();
      j["t"] = lit.t;
      j["b"] = to_decimal(rep.b, d);
      j["height"] = to_decimal(rep.height, d);
      j["epsilon"] = to_decimal(rep.epsilon, d);
      j["box"] = {to_decimal(rep.box.re_lo, d), to_decimal(rep.box.re_hi, d), to_decimal(rep.box.im_lo, d),
                  to_decimal(rep.box.im_hi, d)};
      j["n_real"] = rep.n_real;
      j["n_box"] = rep.n_box;
      j["verdict"] = to_string(rep.verdict);
      j["consistent"] = rep.consistent;
      j["real_axis_threshold"] = kRealAxisThreshold;
      j["zeros"] = io::zero_table_json(rep.table, ctx_);
      j["turan"] = io::turan_json(turan, ctx_);
      j["literature"] = {{"t", lit.t}, {"expectation", lit.expectation}, {"reference", reference}};
      emit(j.dump(2) + "\n");
    } else {
      std::ostringstream s;
      s << "aleph,t,b,height,epsilon,n_real,n_box,verdict,consistent,non_real_upper,turan_failures,"
           "literature_expectation,literature_reference\n"
        << aleph.text() << ',' << lit.t << ',' << to_decimal(rep.b, d) << ',' << to_decimal(rep.height, d) << ','
        << to_decimal(rep.epsilon, d) << ',' << rep.n_real << ',' << rep.n_box << ',' << to_string(rep.verdict) << ','
        << (rep.consistent ? "true" : "false") << ',' << rep.non_real_upper.size() << ',' << turan_failures << ','
        << lit.expectation << ',' << reference << '\n';
      emit(s.str());
    }
    if (!rep.consistent) {
      diagnostic(err_, "error", "Inconsistent", "n_box differs from n_real + 2 x located non-real zeros");
      return kExitVerification;
    }
    return kExitOk;
  }

  int product() {
    PrecisionScope scope(ctx_);
    const AlephParam aleph(o_.aleph);
    if (o_.factors < 0) throw Error(ErrorKind::InvalidArgument, "--factors must be nonnegative");
    const Complex minus_i(Real(0), Real(-1));
    const Complex lambda = !o_.tau.empty() ? minus_i * parse_point(o_.tau, "--tau")
                                           : parse_point(o_.lambda.empty() ? "0" : o_.lambda, "--lambda");
    const ZeroTable table = first_real_zeros(aleph, o_.factors, ctx_);
    const BoundedReal m0 = eval_M(aleph, Complex(Real(0), Real(0)), ctx_).value.real_part();
    const ProductResult p = eval_product(m0, table, o_.factors, lambda, ctx_);
    const Real envelope = abs(p.result.value.value) * (exp(p.truncation.tail_estimate) - 1);
    const int d = ctx_.target_digits();
    if (json()) {
      ordered_json j{{"aleph", aleph.text()},
                     {"L", p.truncation.L},
                     {"lambda", {to_decimal(lambda.real(), d), to_decimal(lambda.imag(), d)}},
                     {"value", {to_decimal(p.result.value.value.real(), d), to_decimal(p.result.value.value.imag(), d)}},
                     {"error_radius", io::to_scientific(p.result.value.radius, 6)},
                     {"tail_estimate", io::to_scientific(p.truncation.tail_estimate, 6)},
                     {"envelope", io::to_scientific(envelope, 6)}};
      emit(j.dump(2) + "\n");
    } else {
      std::ostringstream s;
      s << "aleph,L,lambda_re,lambda_im,value_re,value_im,error_radius,tail_estimate,envelope\n"
        << aleph.text() << ',' << p.truncation.L << ',' << to_decimal(lambda.real(), d) << ','
        << to_decimal(lambda.imag(), d) << ',' << to_decimal(p.result.value.value.real(), d) << ','
        << to_decimal(p.result.value.value.imag(), d) << ',' << io::to_scientific(p.result.value.radius, 6) << ','
        << io::to_scientific(p.truncation.tail_estimate, 6) << ',' << io::to_scientific(envelope, 6) << '\n';
      emit(s.str());
    }
    return kExitOk;
  }

  int verify() {
    PrecisionScope scope(ctx_);
    const AlephParam aleph(o_.aleph);
    std::vector<Check> suite;
    if (o_.suite == "all") {
      suite = all_checks();
    } else {
      for (const std::string& name : split(o_.suite, ',')) suite.push_back(parse_check(name));
    }
    SuiteInputs inputs = SuiteInputs::defaults();
    inputs.zeros = o_.factors;
    inputs.gamma_max = o_.gamma_max;
    const std::vector<IdentityReport> reports = check_identities(aleph, suite, ctx_, inputs);
    if (json())
      emit(io::identity_json(aleph, reports, ctx_).dump(2) + "\n");
    else
      emit(io::identity_csv(reports, ctx_));
    const auto failed = std::count_if(reports.begin(), reports.end(), [](const IdentityReport& r) { return !r.pass; });
    if (failed > 0) {
      diagnostic(err_, "error", "VerificationFailed", std::to_string(failed) + " check(s) failed");
      return kExitVerification;
    }
    return kExitOk;
  }

  int bounds() {
    if (json())
      emit(io::bounds_json().dump(2) + "\n");
    else
      emit(io::bounds_csv());
    return kExitOk;
  }

 private:
  bool json() const { return o_.format == "json"; }

  void emit(const std::string& content) {
    if (o_.out.empty())
      out_ << content;
    else
      io::write_file_atomic(o_.out, content);
  }

  const Options& o_;
  const PrecisionContext& ctx_;
  std::ostream& out_;
  std::ostream& err_;
};

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Numerical laboratory for the de Bruijn family Xi_aleph / M_aleph", "xizeros"};
  app.require_subcommand(1);
  Options o;

  auto common = [&](CLI::App* sub) {
    sub->add_option("--aleph", o.aleph, "Deformation parameter (decimal)");
    sub->add_option("--digits", o.digits, "Target digits, 15..200 (default 30 or $XIZEROS_DIGITS)");
    sub->add_option("--format", o.format, "Output format")->check(CLI::IsMember({"csv", "json"}));
    sub->add_option("--out", o.out, "Write output to this file instead of stdout");
  };
  auto point = [&](CLI::App* sub) {
    auto* l = sub->add_option("--lambda", o.lambda, "Point re[,im] in the lambda-plane");
    auto* t = sub->add_option("--tau", o.tau, "Point re[,im] in the tau-plane");
    l->excludes(t);
  };

  CLI::App* eval = app.add_subcommand("eval", "Evaluate Xi(lambda) or M(tau)");
  common(eval);
  point(eval);
  CLI::App* coeffs = app.add_subcommand("coeffs", "Taylor coefficients alpha_{2g} of M");
  common(coeffs);
  coeffs->add_option("--gamma-max", o.gamma_max, "Largest gamma")->check(CLI::NonNegativeNumber);
  CLI::App* zeros = app.add_subcommand("zeros", "Real zeros of Xi in a range");
  common(zeros);
  zeros->add_option("--range", o.range, "lo:hi")->required();
  CLI::App* box = app.add_subcommand("box-count", "Argument-principle zero count in a box");
  common(box);
  box->add_option("--box", o.box, "relo:rehi:imlo:imhi")->required();
  CLI::App* certify = app.add_subcommand("certify", "Compare real and boxed zero counts");
  common(certify);
  certify->add_option("--range", o.range, "0:b (default 0:60)");
  certify->add_option("--box-height", o.box_height, "Half-height h of the box (default 2)");
  CLI::App* product = app.add_subcommand("product", "Truncated Hadamard product");
  common(product);
  point(product);
  product->add_option("--factors", o.factors, "Number of zero factors L");
  CLI::App* verify = app.add_subcommand("verify", "Identity verification suite");
  common(verify);
  verify->add_option("--suite", o.suite, "Check name, comma list, or all");
  verify->add_option("--factors", o.factors, "Zeros used by product checks");
  verify->add_option("--gamma-max", o.gamma_max, "Coefficients used by series checks")->check(CLI::NonNegativeNumber);
  CLI::App* bounds = app.add_subcommand("bounds", "Published bounds on the de Bruijn-Newman constant");
  bounds->add_option("--format", o.format, "Output format")->check(CLI::IsMember({"csv", "json"}));
  bounds->add_option("--out", o.out, "Write output to this file instead of stdout");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    diagnostic(err, "error", "ParseError", e.what());
    return kExitParse;
  }

  const int digits = resolve_digits(o, err);
  if (digits < 0) return kExitParse;
  const PrecisionContext ctx = PrecisionContext::for_target(digits);
  Runner runner(o, ctx, out, err);
  const std::vector<std::pair<CLI::App*, std::function<int()>>> table{
      {eval, [&] { return runner.eval(); }},         {coeffs, [&] { return runner.coeffs(); }},
      {zeros, [&] { return runner.zeros(); }},       {box, [&] { return runner.box_count(); }},
      {certify, [&] { return runner.certify(); }},   {product, [&] { return runner.product(); }},
      {verify, [&] { return runner.verify(); }},     {bounds, [&] { return runner.bounds(); }},
  };

  const auto start = std::chrono::steady_clock::now();
  for (const auto& [sub, action] : table) {
    if (!sub->parsed()) continue;
    int code = kExitOk;
    try {
      code = action();
    } catch (const Error& e) {
      diagnostic(err, "error", std::string(to_string(e.kind())), e.what(), e.hint());
      return exit_code_for(e.kind());
    } catch (const std::exception& e) {
      diagnostic(err, "error", "Internal", e.what());
      return kExitNumeric;
    }
    const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    ordered_json info{{"level", "info"}, {"subcommand", sub->get_name()}, {"digits", digits}, {"seconds", seconds},
                      {"exit", code}};
    err << info.dump() << '\n';
    return code;
  }
  diagnostic(err, "error", "ParseError", "no subcommand given");
  return kExitParse;
}

}  // namespace xizeros::cli
