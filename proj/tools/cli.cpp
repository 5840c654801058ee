#include "cli.hpp"

#include <CLI11.hpp>

#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "pinvq/pinvq.hpp"

namespace pinvq::cli {
namespace {

constexpr const char* kNoUniversalCertificate =
    "certified mode needs --rank and --lambda-lb: no algorithm can derive a rank and a "
    "spectral lower bound from approximate entries for every matrix, so the certificate "
    "must be supplied by the caller";

/// Bad flags, missing inputs or a mode the verb does not support.
class UsageError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A certified computation cannot proceed or its result is not trustworthy.
class CertificateError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

struct Options {
  std::string matrix;
  std::string vector;
  std::string mode = "exact";
  std::size_t precision = 32;
  std::optional<std::size_t> rank;
  std::string lambda_lb;
  std::string eps;
  std::vector<std::size_t> dims;
  std::optional<std::size_t> n_max;
  std::string function;
  std::size_t budget = 64;
  std::size_t max_iter = 200;
  std::string algorithm = "rounded-exact:10";
  std::string out;
  std::string transcript;
};

// ---------------------------------------------------------------------------
// Rendering

std::string matrix_literal(const QMatrix& a) {
  std::string s = "[";
  for (std::size_t i = 0; i < a.rows(); ++i) {
    s += i == 0 ? "[" : ",[";
    for (std::size_t j = 0; j < a.cols(); ++j) {
      if (j > 0) s += ',';
      s += to_string(a(i, j));
    }
    s += ']';
  }
  return s + "]";
}

std::string vector_literal(const QVector& x) {
  std::string s = "[";
  for (std::size_t i = 0; i < x.dim(); ++i) {
    if (i > 0) s += ',';
    s += to_string(x[i]);
  }
  return s + "]";
}

std::string decimal_entry(const GaussRat& z, std::size_t digits) {
  if (z.im == 0) return to_decimal(z.re, digits);
  std::string im = to_decimal(abs(z.im), digits);
  return to_decimal(z.re, digits) + (sgn(z.im) < 0 ? "-" : "+") + im + "i";
}

// Decimal places such that rounding every real and imaginary part of `count`
// entries moves the vector by at most 2^{-(N+1)} in the 2-norm.
std::size_t digits_for_entries(std::size_t N, std::size_t count) {
  return decimal_digits_for(N + 1 + ceil_log2(Rat(2 * static_cast<unsigned long>(count))));
}

std::string decimal_matrix(const QMatrix& a, std::size_t digits) {
  std::string s = "[";
  for (std::size_t i = 0; i < a.rows(); ++i) {
    s += i == 0 ? "[" : ",[";
    for (std::size_t j = 0; j < a.cols(); ++j) {
      if (j > 0) s += ',';
      s += decimal_entry(a(i, j), digits);
    }
    s += ']';
  }
  return s + "]";
}

std::string decimal_vector(const QVector& x, std::size_t digits) {
  std::string s = "[";
  for (std::size_t i = 0; i < x.dim(); ++i) {
    if (i > 0) s += ',';
    s += decimal_entry(x[i], digits);
  }
  return s + "]";
}

std::string pm(std::size_t N) { return " ± 2^-" + std::to_string(N); }

// Balls are computed at N + 1 so that center rounding to decimals still fits
// inside the printed 2^{-N}.
void emit_ball(std::ostream& os, const std::string& label, const BallScalar& s, std::size_t N) {
  os << label << ' ' << to_string(s.center) << " ± " << to_string(s.radius) << '\n';
  os << label << "_interval [" << to_string(Rat(s.center - s.radius)) << ", "
     << to_string(Rat(s.center + s.radius)) << "]\n";
  os << label << "_decimal " << to_decimal(s.center, decimal_digits_for(N)) << pm(N) << '\n';
}

void emit_ball(std::ostream& os, const std::string& label, const BallVector& v, std::size_t N) {
  os << label << ' ' << vector_literal(v.center) << " ± " << to_string(v.radius) << '\n';
  os << label << "_decimal " << decimal_vector(v.center, digits_for_entries(N, v.center.dim()))
     << pm(N) << '\n';
}

void emit_sqrt(std::ostream& os, const std::string& label, const Rat& sq, std::size_t N) {
  os << label << "^2 " << to_string(sq) << '\n';
  os << label << ' ' << render(sqrt(creal_from_rat(sq)), N) << '\n';
}

// ---------------------------------------------------------------------------
// Inputs

Rat parse_rat_flag(const std::string& flag, const std::string& text) {
  try {
    return parse_rat(text);
  } catch (const ParseError& e) {
    throw UsageError(flag + ": " + e.what());
  }
}

QMatrix require_matrix(const Options& o) {
  if (o.matrix.empty()) throw UsageError("--matrix PATH is required");
  return read_matrix_file(o.matrix);
}

QVector require_vector(const Options& o) {
  if (o.vector.empty()) throw UsageError("--vector PATH is required");
  return read_vector_file(o.vector);
}

Certificate require_certificate(const Options& o) {
  if (!o.rank || o.lambda_lb.empty()) throw CertificateError(kNoUniversalCertificate);
  return {*o.rank, parse_rat_flag("--lambda-lb", o.lambda_lb)};
}

std::pair<std::size_t, std::size_t> dims_or_default(const Options& o) {
  if (o.dims.empty()) return {2, 2};
  return {o.dims[0], o.dims[1]};
}

Target require_target(const std::string& name) {
  const auto t = parse_target(name);
  if (!t) throw UsageError("unknown function '" + name + "'");
  return *t;
}

void reject_heuristic(const Options& o, const std::string& verb) {
  if (o.mode == "heuristic") throw UsageError(verb + " supports --mode exact|certified only");
}

// ---------------------------------------------------------------------------
// Verbs. Each returns the report; `file` receives the --out variant.

std::string verb_pinv(const Options& o, std::string& file) {
  const QMatrix a = require_matrix(o);
  std::ostringstream os;
  if (o.mode == "exact") {
    const QMatrix x = pinv_exact(a);
    os << matrix_literal(x) << '\n';
    file = format_matrix(x);
  } else if (o.mode == "certified") {
    const auto res = pinv_certified(a, require_certificate(o), o.precision + 1);
    if (res.certificate_suspect) {
      throw CertificateError("the certificate is inconsistent with the matrix: A·center·A is "
                             "farther from A than the radius allows");
    }
    const auto& ball = res.ball;
    os << "center " << matrix_literal(ball.center) << '\n';
    os << "radius " << to_string(ball.radius) << " <= 2^-" << o.precision << '\n';
    os << "decimal "
       << decimal_matrix(ball.center, digits_for_entries(o.precision, ball.center.entries().size()))
       << pm(o.precision) << '\n';
    os << "iterations " << res.trace.stopped_at << '\n';
    file = format_matrix(ball.center);
  } else {
    const auto h = pinv_heuristic(a, pow2(-static_cast<long>(o.precision)), o.max_iter);
    os << "approx " << matrix_literal(h.approx) << '\n';
    os << "stopped " << to_string(h.reason) << " after " << h.iterations << " iterations\n";
    os << "last_step^2 " << to_string(h.last_step_sq) << '\n';
    os << "error_bound none (the step-size rule certifies nothing)\n";
    file = format_matrix(h.approx);
  }
  return os.str();
}

std::string verb_lsq(const Options& o) {
  reject_heuristic(o, "lsq");
  const QMatrix a = require_matrix(o);
  const QVector b = require_vector(o);
  std::ostringstream os;
  if (o.mode == "exact") {
    const auto ls = lsq_exact(a, b);
    os << "xhat " << vector_literal(ls.xhat) << '\n';
    emit_sqrt(os, "residual", ls.residual_sq, o.precision);
    emit_sqrt(os, "xhat_norm", norm_sq(ls.xhat), o.precision);
  } else {
    const Certificate cert = require_certificate(o);
    const std::size_t n = o.precision + 1;
    emit_ball(os, "xhat", std::get<BallVector>(derived_certified(Derived::psi_sol, a, b, cert, n)),
              o.precision);
    emit_ball(os, "residual",
              std::get<BallScalar>(derived_certified(Derived::psi_lsq, a, b, cert, n)),
              o.precision);
    emit_ball(os, "xhat_norm",
              std::get<BallScalar>(derived_certified(Derived::psi_norm, a, b, cert, n)),
              o.precision);
  }
  return os.str();
}

std::string verb_scalar(const Options& o, const std::string& verb, Derived which) {
  reject_heuristic(o, verb);
  const QMatrix a = require_matrix(o);
  std::ostringstream os;
  if (o.mode == "exact") {
    const Rat sq = which == Derived::kappa ? cond_sq_exact(a) : frob_norm_sq(pinv_exact(a));
    emit_sqrt(os, verb, sq, o.precision);
  } else {
    const auto s = std::get<BallScalar>(
        derived_certified(which, a, std::nullopt, require_certificate(o), o.precision + 1));
    emit_ball(os, verb, s, o.precision);
  }
  return os.str();
}

std::string verb_family(const Options& o) {
  const auto [m, n] = dims_or_default(o);
  const Rat eps = o.eps.empty() ? Rat(1, 2) : parse_rat_flag("--eps", o.eps);
  if (sgn(eps) < 0) throw UsageError("--eps must be nonnegative");
  return format_matrix(make_family_point(m, n, eps).a);
}

// Irrational gaps are printed as a decimal with its radius.
std::string gap_cell(const GapValue& g, std::size_t N) {
  if (const auto v = g.exact()) return to_string(*v);
  const CReal x = abs(sqrt(creal_from_rat(g.u_sq)) - sqrt(creal_from_rat(g.v_sq)));
  return to_decimal(x.approx(N + 1), decimal_digits_for(N)) + "±2^-" + std::to_string(N);
}

std::string verb_gaps(const Options& o, bool& empty) {
  if (!o.n_max) throw UsageError("--n-max K is required");
  std::vector<std::size_t> columns;
  for (std::size_t i = 0; i < kAllTargets.size(); ++i) {
    if (o.function.empty() || require_target(o.function) == kAllTargets[i]) columns.push_back(i);
  }
  std::ostringstream os;
  os << 'n';
  for (std::size_t i : columns) os << ' ' << to_string(kAllTargets[i]);
  os << '\n';
  const auto table = gap_table(*o.n_max);
  for (const auto& row : table) {
    os << row.n;
    for (std::size_t i : columns) os << ' ' << gap_cell(row.gaps[i], o.precision);
    os << '\n';
  }
  empty = table.empty();
  return os.str();
}

std::string verb_adversary(const Options& o) {
  const auto [m, n] = dims_or_default(o);
  const Target t = o.function.empty() ? Target::g_inv : require_target(o.function);
  std::optional<Rat> cap;
  if (!o.eps.empty()) cap = parse_rat_flag("--eps", o.eps);
  if (cap && sgn(*cap) <= 0) throw UsageError("--eps must be positive");
  auto alg = make_algorithm(o.algorithm);
  if (!alg) throw UsageError("unknown algorithm '" + o.algorithm + "'");
  return format_transcript(run_adversary(*alg, make_game_setup(m, n, t, o.budget, cap)));
}

std::string verb_trace(const Options& o) {
  const QMatrix a = require_matrix(o);
  const auto res = pinv_certified(a, require_certificate(o), o.precision);
  return format_trace(res.trace);
}

// ---------------------------------------------------------------------------

void add_matrix(CLI::App* cmd, Options& o) {
  cmd->add_option("--matrix", o.matrix, "matrix file");
}

void add_mode(CLI::App* cmd, Options& o) {
  cmd->add_option("--mode", o.mode, "exact, certified or heuristic")
      ->check(CLI::IsMember({"exact", "certified", "heuristic"}));
}

void add_certificate(CLI::App* cmd, Options& o) {
  cmd->add_option("--rank", o.rank, "asserted rank p");
  cmd->add_option("--lambda-lb", o.lambda_lb, "lower bound a/b on the p-th eigenvalue of A^H A");
}

void add_precision(CLI::App* cmd, Options& o) {
  cmd->add_option("--precision", o.precision, "target precision N, error <= 2^-N")
      ->check(CLI::Range(std::size_t{1}, std::size_t{1} << 20));
}

void add_out(CLI::App* cmd, Options& o) {
  cmd->add_option("--out", o.out, "also write the machine-readable result here");
}

void add_dims(CLI::App* cmd, Options& o) {
  cmd->add_option("--dims", o.dims, "family dimensions m n (default 2 2)")
      ->expected(2)
      ->check(CLI::Range(std::size_t{2}, std::size_t{1} << 16));
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Options o;
  CLI::App app{"Exact and certified Moore-Penrose pseudoinverses, with lower-bound games", "pinvq"};
  app.require_subcommand(1);

  auto* pinv = app.add_subcommand("pinv", "pseudoinverse of --matrix");
  auto* lsq = app.add_subcommand("lsq", "minimum-norm least-squares solution and residual");
  auto* cond = app.add_subcommand("cond", "condition number ‖A‖_F‖A†‖_F");
  auto* gnorm = app.add_subcommand("gnorm", "Frobenius norm of the pseudoinverse");
  auto* family = app.add_subcommand("family", "write the family point A_eps as a matrix file");
  auto* gaps = app.add_subcommand("gaps", "gap table between A_{2^-n} and A_0");
  auto* adversary = app.add_subcommand("adversary", "play one lower-bound game");
  auto* trace = app.add_subcommand("trace", "error-bound trace of the certified iteration");
  auto* verify = app.add_subcommand("verify-transcript", "check an adversary transcript");

  for (auto* cmd : {pinv, lsq, cond, gnorm}) {
    add_matrix(cmd, o);
    add_mode(cmd, o);
    add_certificate(cmd, o);
    add_precision(cmd, o);
    add_out(cmd, o);
  }
  lsq->add_option("--vector", o.vector, "right-hand side file");
  pinv->add_option("--budget", o.max_iter, "iteration cap in heuristic mode (default 200)");

  add_dims(family, o);
  family->add_option("--eps", o.eps, "epsilon a/b (default 1/2)");
  add_out(family, o);

  gaps->add_option("--n-max", o.n_max, "rows n = 1..K");
  gaps->add_option("--function", o.function, "single column to print");
  add_precision(gaps, o);
  add_out(gaps, o);

  add_dims(adversary, o);
  adversary->add_option("--function", o.function, "target function (default g_inv)");
  adversary->add_option("--algorithm", o.algorithm, "algorithm under test");
  adversary->add_option("--budget", o.budget, "query budget");
  adversary->add_option("--eps", o.eps, "upper limit on the revealed epsilon");
  add_out(adversary, o);

  add_matrix(trace, o);
  add_certificate(trace, o);
  add_precision(trace, o);
  add_out(trace, o);

  verify->add_option("transcript", o.transcript, "transcript file")->required();

  std::vector<const char*> argv{"pinvq"};
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitInput;
  }

  try {
    std::string report;
    std::string file;
    int status = kExitOk;
    if (pinv->parsed()) {
      report = verb_pinv(o, file);
    } else if (lsq->parsed()) {
      report = verb_lsq(o);
    } else if (cond->parsed()) {
      report = verb_scalar(o, "kappa", Derived::kappa);
    } else if (gnorm->parsed()) {
      report = verb_scalar(o, "gnorm", Derived::g_norm);
    } else if (family->parsed()) {
      report = verb_family(o);
    } else if (gaps->parsed()) {
      bool empty = false;
      report = verb_gaps(o, empty);
      if (empty) {
        err << "gaps: --n-max must be at least 1\n";
        status = kExitInput;
      }
    } else if (adversary->parsed()) {
      report = verb_adversary(o);
    } else if (trace->parsed()) {
      report = verb_trace(o);
    } else {
      const auto verdict = verify_transcript(read_text_file(o.transcript));
      report = verdict.reason + '\n';
      if (!verdict.consistent) status = kExitCertificate;
    }
    out << report;
    if (!o.out.empty()) write_text_file(o.out, file.empty() ? report : file);
    return status;
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
    return kExitInput;
  } catch (const ParseError& e) {
    err << "input error: " << e.what() << '\n';
    return kExitInput;
  } catch (const DimensionError& e) {
    err << "input error: " << e.what() << '\n';
    return kExitInput;
  } catch (const CertificateError& e) {
    err << "certificate error: " << e.what() << '\n';
    return kExitCertificate;
  } catch (const PreconditionError& e) {
    err << "precondition failed: " << e.what() << '\n';
    return kExitCertificate;
  } catch (const SingularMatrixError& e) {
    err << "precondition failed: " << e.what() << '\n';
    return kExitCertificate;
  }
}

}  // namespace pinvq::cli
