#include "pinvq/pinv_iter.hpp"

#include <algorithm>
#include <sstream>

#include <mpfr.h>

#include "pinvq/creal.hpp"
#include "pinvq/errors.hpp"
#include "pinvq/text_io.hpp"

namespace pinvq {

namespace {

// RAII wrapper for an mpfr_t.
class Mpfr {
 public:
  explicit Mpfr(mpfr_prec_t prec) { mpfr_init2(v_, prec); }
  ~Mpfr() { mpfr_clear(v_); }
  Mpfr(const Mpfr&) = delete;
  Mpfr& operator=(const Mpfr&) = delete;
  mpfr_ptr get() { return v_; }
  [[nodiscard]] mpfr_srcptr get() const { return v_; }

  [[nodiscard]] Rat to_rat() const {
    Rat q;
    mpfr_get_q(q.get_mpq_t(), v_);
    return q;
  }

 private:
  mpfr_t v_;
};

constexpr std::size_t kExactDecisionBits = std::size_t{1} << 22;
constexpr mpfr_prec_t kMaxDecisionPrecision = mpfr_prec_t{1} << 16;

// Decides q^(2^j) ≤ target for 0 ≤ q < 1 using outward-rounded squarings,
// refining the precision until the enclosure settles the comparison. Exact
// ties are decided with exact powers when their size is reasonable; otherwise
// the answer is "no", which only costs an extra iteration.
bool power_at_most(const Rat& q, std::size_t j, const Rat& target) {
  if (sgn(q) == 0) return true;
  for (mpfr_prec_t prec = 64;; prec *= 4) {
    Mpfr lo(prec);
    Mpfr hi(prec);
    mpfr_set_q(lo.get(), q.get_mpq_t(), MPFR_RNDD);
    mpfr_set_q(hi.get(), q.get_mpq_t(), MPFR_RNDU);
    for (std::size_t s = 0; s < j; ++s) {
      mpfr_sqr(lo.get(), lo.get(), MPFR_RNDD);
      mpfr_sqr(hi.get(), hi.get(), MPFR_RNDU);
    }
    if (mpfr_cmp_q(hi.get(), target.get_mpq_t()) <= 0) return true;
    if (mpfr_cmp_q(lo.get(), target.get_mpq_t()) > 0) return false;

    const std::size_t size = std::max(bit_length(q.get_num()), bit_length(q.get_den()));
    if (j < 40 && (size << j) <= kExactDecisionBits) {
      const unsigned long e = 1UL << j;
      Int num;
      Int den;
      mpz_pow_ui(num.get_mpz_t(), q.get_num_mpz_t(), e);
      mpz_pow_ui(den.get_mpz_t(), q.get_den_mpz_t(), e);
      return make_rat(num, den) <= target;
    }
    if (prec >= kMaxDecisionPrecision) return false;
  }
}

// Upper bound on λ^{-1/2}(1 − αλ)^{2^k}.
Rat spectral_bound_upper(const Rat& q, const Rat& lambda, std::size_t k) {
  constexpr mpfr_prec_t prec = 96;
  Mpfr p(prec);
  mpfr_set_q(p.get(), q.get_mpq_t(), MPFR_RNDU);
  for (std::size_t s = 0; s < k; ++s) mpfr_sqr(p.get(), p.get(), MPFR_RNDU);
  Mpfr root(prec);
  mpfr_set_q(root.get(), lambda.get_mpq_t(), MPFR_RNDD);
  mpfr_sqrt(root.get(), root.get(), MPFR_RNDD);
  mpfr_div(p.get(), p.get(), root.get(), MPFR_RNDU);
  return p.to_rat();
}

void validate_certificate(const QMatrix& a, const Certificate& cert) {
  const std::size_t r = std::min(a.rows(), a.cols());
  if (cert.rank == 0 || cert.rank > r) {
    throw PreconditionError("invalid certificate: rank " + std::to_string(cert.rank) +
                            " outside 1.." + std::to_string(r));
  }
  if (sgn(cert.lambda_lb) <= 0) {
    throw PreconditionError("invalid certificate: lambda lower bound must be positive");
  }
}

QMatrix round_entries(const QMatrix& x, std::size_t bits) {
  std::vector<GaussRat> e;
  e.reserve(x.rows() * x.cols());
  for (const auto& v : x.entries()) e.emplace_back(round_dyadic(v.re, bits), round_dyadic(v.im, bits));
  return {x.rows(), x.cols(), std::move(e)};
}

// Smallest t with 4^t ≥ r, so that √r ≤ 2^t.
std::size_t half_log2_ceil(std::size_t r) {
  std::size_t t = 0;
  while ((std::size_t{1} << (2 * t)) < r) ++t;
  return t;
}

struct RunResult {
  QMatrix center;
  std::vector<QMatrix> iterates;  // kept only when an observer is installed
  IterationTrace trace;
  Rat truncation;  // Frobenius bound on ‖A† − Y_K‖ for the exact iterate Y_K
  Rat drift;       // bound on ‖X_K − Y_K‖ introduced by rounding
};

RunResult run_iteration(const QMatrix& a, const Certificate& cert, std::size_t N,
                        std::size_t iterations, std::size_t rounding_factor, bool exact,
                        const CertifiedOptions& options) {
  const Rat fa2 = frob_norm_sq(a);
  const Rat alpha = 1 / fa2;
  const Rat q = 1 - alpha * cert.lambda_lb;
  const Rat a_up = sqrt_upper(fa2);
  const Rat sqrt_r_up = sqrt_upper(Rat(static_cast<unsigned long>(std::min(a.rows(), a.cols()))));

  RunResult out{QMatrix(0, 0), {}, {}, Rat(0), Rat(0)};
  out.trace.alpha = alpha;

  auto truncation_at = [&](std::size_t k) -> Rat { return sqrt_r_up * spectral_bound_upper(q, cert.lambda_lb, k); };

  QMatrix x = alpha * a.adjoint();
  Rat drift = 0;
  if (!exact) {
    QMatrix rounded = round_entries(x, rounding_factor * N);
    drift = sqrt_upper(frob_norm_sq(rounded - x));
    x = std::move(rounded);
  }
  if (options.observer) out.iterates.push_back(x);
  out.trace.iterates.push_back({0, round_up_significant(truncation_at(0) + drift)});

  for (std::size_t k = 1; k <= iterations; ++k) {
    QMatrix next = ben_israel_step(x, a);
    if (!exact) {
      // With D = X − Y: f(X) − f(Y) = 2D − XAD − DAX + DAD, so
      // ‖f(X) − f(Y)‖_F ≤ d(2 + 2‖A‖_F‖X‖_F + ‖A‖_F d).
      const Rat x_up = sqrt_upper(frob_norm_sq(x));
      drift = drift * (2 + 2 * a_up * x_up + a_up * drift);
      QMatrix rounded = round_entries(next, rounding_factor * (N + k));
      drift += sqrt_upper(frob_norm_sq(rounded - next));
      drift = round_up_significant(drift);
      next = std::move(rounded);
    }
    x = std::move(next);
    if (options.observer) out.iterates.push_back(x);
    out.trace.iterates.push_back({k, round_up_significant(truncation_at(k) + drift)});
  }
  out.trace.stopped_at = iterations;
  out.truncation = truncation_at(iterations);
  out.drift = drift;
  out.center = std::move(x);
  return out;
}

}  // namespace

Rat alpha_init(const QMatrix& a) {
  const Rat f = frob_norm_sq(a);
  if (sgn(f) == 0) throw PreconditionError("alpha undefined for zero matrix");
  return 1 / f;
}

QMatrix ben_israel_step(const QMatrix& x, const QMatrix& a) {
  if (x.rows() != a.cols() || x.cols() != a.rows()) {
    throw DimensionError("ben_israel_step: iterate is " + std::to_string(x.rows()) + "x" +
                         std::to_string(x.cols()) + ", expected " + std::to_string(a.cols()) +
                         "x" + std::to_string(a.rows()));
  }
  return GaussRat(2) * x - x * a * x;
}

std::size_t iterations_needed(const Certificate& cert, const Rat& alpha, std::size_t N) {
  if (cert.rank == 0) throw PreconditionError("invalid certificate: rank must be positive");
  if (sgn(cert.lambda_lb) <= 0) {
    throw PreconditionError("invalid certificate: lambda lower bound must be positive");
  }
  const Rat product = alpha * cert.lambda_lb;
  if (sgn(product) <= 0 || product > 1) {
    throw PreconditionError("invalid certificate: alpha*lambda must lie in (0, 1]");
  }
  const Rat q = 1 - product;
  // (λ^{-1/2} q^{2^k})² ≤ 4^{-N}  <=>  q^{2^{k+1}} ≤ λ·4^{-N}
  const Rat target = cert.lambda_lb * pow2(-2 * static_cast<long>(N));
  std::size_t k = 0;
  while (!power_at_most(q, k + 1, target)) ++k;
  return k;
}

CertifiedPinv pinv_certified(const QMatrix& a, const Certificate& cert, std::size_t N,
                             const CertifiedOptions& options) {
  const Rat alpha = alpha_init(a);
  validate_certificate(a, cert);
  const Rat fa2 = frob_norm_sq(a);
  // p eigenvalues of A^H A, each ≥ λ, sum to at most ‖A‖_F².
  if (cert.lambda_lb * static_cast<unsigned long>(cert.rank) > fa2) {
    throw PreconditionError("invalid certificate: rank*lambda exceeds the squared Frobenius norm");
  }

  const std::size_t r = std::min(a.rows(), a.cols());
  const std::size_t tightened = N + 1 + half_log2_ceil(r);
  const std::size_t iterations = iterations_needed(cert, alpha, tightened);
  const Rat half = pow2(-static_cast<long>(N) - 1);

  std::size_t factor = std::max<std::size_t>(options.rounding_factor, 1);
  for (;;) {
    RunResult run = run_iteration(a, cert, N, iterations, factor, options.exact_iterates, options);
    if (options.exact_iterates || run.drift <= half) {
      // iterations_needed proved truncation ≤ √r·2^{-tightened} ≤ 2^{-(N+1)};
      // the floating bound may be tighter still.
      const Rat truncation = std::min(run.truncation, half);
      for (std::size_t k = 0; k < run.iterates.size(); ++k) options.observer(k, run.iterates[k]);
      CertifiedPinv out{{std::move(run.center), round_up_significant(truncation + run.drift)},
                        std::move(run.trace), false};
      const QMatrix residual = a * out.ball.center * a - a;
      const Rat allowed = fa2 * out.ball.radius;
      out.certificate_suspect = frob_norm_sq(residual) > allowed * allowed;
      return out;
    }
    if (factor >= 256) {
      throw PreconditionError("rounding drift could not be brought below 2^-(N+1)");
    }
    factor *= 2;
  }
}

HeuristicResult pinv_heuristic(const QMatrix& a, const Rat& tol, std::size_t max_iter) {
  const Rat alpha = alpha_init(a);
  if (sgn(tol) <= 0) throw PreconditionError("tolerance must be positive");
  const Rat tol_sq = tol * tol;
  const std::size_t bits = 64 + 2 * ceil_log2(Rat(1 / tol));

  QMatrix x = alpha * a.adjoint();
  Rat last = 0;
  for (std::size_t k = 1; k <= max_iter; ++k) {
    QMatrix next = round_entries(ben_israel_step(x, a), bits);
    last = frob_norm_sq(next - x);
    x = std::move(next);
    if (last <= tol_sq) return {std::move(x), HeuristicStop::StepBelowTolerance, k, last};
  }
  return {std::move(x), HeuristicStop::MaxIterations, max_iter, last};
}

std::string_view to_string(HeuristicStop reason) {
  switch (reason) {
    case HeuristicStop::StepBelowTolerance:
      return "step_below_tolerance";
    case HeuristicStop::MaxIterations:
      return "max_iter reached";
  }
  return "unknown";
}

namespace {

Rat sqrt_approx(const Rat& q, std::size_t precision) {
  return sqrt(creal_from_rat(q)).approx(precision);
}

const QVector& require_rhs(const QMatrix& a, const std::optional<QVector>& b) {
  if (!b) throw PreconditionError("right-hand side b is required");
  if (b->dim() != a.rows()) {
    throw DimensionError("right-hand side has dimension " + std::to_string(b->dim()) +
                         ", matrix has " + std::to_string(a.rows()) + " rows");
  }
  return *b;
}

// Evaluates `which` from a pinv ball computed at `precision`.
DerivedEnclosure derive_at(Derived which, const QMatrix& a, const std::optional<QVector>& b,
                           const Certificate& cert, std::size_t N, std::size_t precision) {
  const CertifiedPinv pinv = pinv_certified(a, cert, precision);
  const QMatrix& c = pinv.ball.center;
  const Rat& r = pinv.ball.radius;
  const Rat sqrt_err = pow2(-static_cast<long>(N) - 2);

  switch (which) {
    case Derived::g_norm: {
      // |‖A†‖_F − ‖C‖_F| ≤ ‖A† − C‖_F
      return BallScalar{sqrt_approx(frob_norm_sq(c), N + 2), round_up_significant(sqrt_err + r)};
    }
    case Derived::psi_sol: {
      const QVector& rhs = require_rhs(a, b);
      return BallVector{c * rhs, round_up_significant(r * sqrt_upper(norm_sq(rhs)))};
    }
    case Derived::psi_norm: {
      const QVector& rhs = require_rhs(a, b);
      const QVector x = c * rhs;
      return BallScalar{sqrt_approx(norm_sq(x), N + 2),
                        round_up_significant(sqrt_err + r * sqrt_upper(norm_sq(rhs)))};
    }
    case Derived::psi_lsq: {
      // |‖Ax_c − b‖ − ‖Ax̂ − b‖| ≤ ‖A(x_c − x̂)‖ ≤ ‖A‖_F·r·‖b‖
      const QVector& rhs = require_rhs(a, b);
      const QVector x = c * rhs;
      const Rat prop = sqrt_upper(frob_norm_sq(a)) * r * sqrt_upper(norm_sq(rhs));
      return BallScalar{sqrt_approx(norm_sq(a * x - rhs), N + 2),
                        round_up_significant(sqrt_err + prop)};
    }
    case Derived::kappa: {
      // (ac ± ar)(gc ± gr) ⊆ ac·gc ± (|ac|gr + |gc|ar + ar·gr)
      const Rat ar = pow2(-static_cast<long>(precision));
      const Rat ac = sqrt_approx(frob_norm_sq(a), precision);
      const Rat gr = pow2(-static_cast<long>(precision)) + r;
      const Rat gc = sqrt_approx(frob_norm_sq(c), precision);
      const Rat rad = abs(ac) * gr + abs(gc) * ar + ar * gr;
      return BallScalar{ac * gc, round_up_significant(rad)};
    }
  }
  throw PreconditionError("unknown derived quantity");
}

Rat radius_of(const DerivedEnclosure& e) {
  return std::visit([](const auto& ball) { return ball.radius; }, e);
}

}  // namespace

DerivedEnclosure derived_certified(Derived which, const QMatrix& a,
                                   const std::optional<QVector>& b, const Certificate& cert,
                                   std::size_t N) {
  if (which != Derived::g_norm && which != Derived::kappa) require_rhs(a, b);
  const Rat a_up = sqrt_upper(frob_norm_sq(a));
  const std::size_t b_bits = b ? ceil_log2(sqrt_upper(norm_sq(*b))) : 0;

  std::size_t precision = N + 2;
  switch (which) {
    case Derived::g_norm:
      break;
    case Derived::psi_sol:
      precision = N + b_bits;
      break;
    case Derived::psi_norm:
      precision = N + 1 + b_bits;
      break;
    case Derived::psi_lsq:
      precision = N + 1 + ceil_log2(a_up) + b_bits;
      break;
    case Derived::kappa: {
      // ‖A†‖_F² ≤ p/λ for a valid certificate.
      const Rat g_up = sqrt_upper(Rat(static_cast<unsigned long>(cert.rank) / cert.lambda_lb));
      precision = N + 2 + ceil_log2(Rat(a_up + g_up + 1));
      break;
    }
  }

  const Rat target = pow2(-static_cast<long>(N));
  for (int attempt = 0;; ++attempt) {
    DerivedEnclosure e = derive_at(which, a, b, cert, N, precision);
    if (radius_of(e) <= target) return e;
    if (attempt >= 8) throw PreconditionError("could not reach the requested precision");
    precision += 8;
  }
}

std::string_view to_string(Derived which) {
  switch (which) {
    case Derived::g_norm:
      return "g_norm";
    case Derived::psi_lsq:
      return "psi_lsq";
    case Derived::psi_sol:
      return "psi_sol";
    case Derived::psi_norm:
      return "psi_norm";
    case Derived::kappa:
      return "kappa";
  }
  return "unknown";
}

std::optional<Derived> parse_derived(std::string_view name) {
  for (Derived d : {Derived::g_norm, Derived::psi_lsq, Derived::psi_sol, Derived::psi_norm,
                    Derived::kappa}) {
    if (to_string(d) == name) return d;
  }
  return std::nullopt;
}

std::string format_trace(const IterationTrace& trace) {
  std::string out;
  for (const auto& e : trace.iterates) {
    out += std::to_string(e.k) + " " + to_fraction_string(e.error_bound) + "\n";
  }
  out += "stopped_at " + std::to_string(trace.stopped_at) + "\n";
  return out;
}

IterationTrace parse_trace(std::string_view text) {
  IterationTrace trace;
  std::istringstream in{std::string(text)};
  std::string line;
  bool stopped = false;
  while (std::getline(in, line)) {
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    if (stopped) throw ParseError("trailing content after stopped_at");
    std::istringstream ls(line);
    std::string first;
    std::string second;
    std::string extra;
    ls >> first >> second;
    if (second.empty() || (ls >> extra)) throw ParseError("malformed trace line '" + line + "'");
    if (first == "stopped_at") {
      if (second.find_first_not_of("0123456789") != std::string::npos) {
        throw ParseError("malformed stopped_at '" + second + "'");
      }
      trace.stopped_at = std::stoull(second);
      stopped = true;
      continue;
    }
    if (first.find_first_not_of("0123456789") != std::string::npos) {
      throw ParseError("malformed iteration index '" + first + "'");
    }
    trace.iterates.push_back({static_cast<std::size_t>(std::stoull(first)), parse_rat(second)});
  }
  if (!stopped) throw ParseError("trace has no stopped_at line");
  return trace;
}

}  // namespace pinvq
