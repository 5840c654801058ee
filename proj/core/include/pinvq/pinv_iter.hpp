#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "pinvq/matrix.hpp"

namespace pinvq {

/// Represents every matrix within Frobenius distance `radius` of `center`.
struct BallMatrix {
  QMatrix center;
  Rat radius;
};

struct BallScalar {
  Rat center;
  Rat radius;

  [[nodiscard]] bool contains(const Rat& v) const { return abs(v - center) <= radius; }
};

/// Represents every vector within Euclidean distance `radius` of `center`.
struct BallVector {
  QVector center;
  Rat radius;
};

/// Caller-supplied spectral side information: an asserted rank p and a
/// positive lower bound on the p-th largest eigenvalue of A^H A.
///
/// No algorithm can produce these from approximate input data in general,
/// so the certified routines take them as inputs and check them only
/// partially.
struct Certificate {
  std::size_t rank = 0;
  Rat lambda_lb;
};

struct TraceEntry {
  std::size_t k;
  Rat error_bound;  // Frobenius-norm bound on ‖A† − A_k‖

  friend bool operator==(const TraceEntry&, const TraceEntry&) = default;
};

struct IterationTrace {
  Rat alpha;
  std::vector<TraceEntry> iterates;
  std::size_t stopped_at = 0;
};

/// α = 1/‖A‖_F². Since ‖A‖₂ ≤ ‖A‖_F this satisfies 0 < α < 2/‖A‖₂².
/// Throws PreconditionError for the zero matrix.
Rat alpha_init(const QMatrix& a);

/// 2X − XAX, exactly. X must be n×m for an m×n A.
QMatrix ben_israel_step(const QMatrix& x, const QMatrix& a);

/// Smallest k with λ^{-1/2}(1 − αλ)^{2^k} ≤ 2^{-N}, decided exactly.
/// Requires rank ≥ 1, λ > 0 and 0 < αλ ≤ 1.
std::size_t iterations_needed(const Certificate& cert, const Rat& alpha, std::size_t N);

struct CertifiedOptions {
  /// Iterate k is rounded to rounding_factor·(N + k) fractional bits; the
  /// rounding error is propagated into the radius. The factor is doubled
  /// (and the run repeated) if the propagated error would exceed 2^{-(N+1)}.
  std::size_t rounding_factor = 4;
  /// Exact iterates (no rounding). Bit sizes grow roughly threefold per step.
  bool exact_iterates = false;
  /// Receives every stored iterate A_k of the run that produced the result.
  std::function<void(std::size_t k, const QMatrix& iterate)> observer;
};

struct CertifiedPinv {
  BallMatrix ball;
  IterationTrace trace;
  /// Best-effort post-hoc check: ‖A·center·A − A‖_F exceeds what the radius
  /// allows, so the certificate cannot have been valid.
  bool certificate_suspect = false;
};

/// Certified Ben-Israel iteration A_0 = αA^H, A_k = 2A_{k-1} − A_{k-1}AA_{k-1}.
/// With a valid certificate the returned center is within radius ≤ 2^{-N} of
/// A† in Frobenius norm. Throws PreconditionError for A = 0 or a certificate
/// that is out of range or provably inconsistent with A.
CertifiedPinv pinv_certified(const QMatrix& a, const Certificate& cert, std::size_t N,
                             const CertifiedOptions& options = {});

enum class HeuristicStop { StepBelowTolerance, MaxIterations };

struct HeuristicResult {
  QMatrix approx;
  HeuristicStop reason;
  std::size_t iterations;
  Rat last_step_sq;  // ‖A_{k+1} − A_k‖_F² of the final step
};

/// The same iteration with a step-size stopping rule and no certificate.
///
/// There is deliberately no error guarantee: neither a computable
/// initialization nor a computable stopping rule can make this iteration
/// effective over all matrices, and on nearly rank-deficient inputs the step
/// size drops below `tol` while the iterate is still arbitrarily far from A†.
HeuristicResult pinv_heuristic(const QMatrix& a, const Rat& tol, std::size_t max_iter);

std::string_view to_string(HeuristicStop reason);

enum class Derived { g_norm, psi_lsq, psi_sol, psi_norm, kappa };

using DerivedEnclosure = std::variant<BallScalar, BallVector>;

/// Certified enclosures of ‖A†‖_F, min‖Ax − b‖₂, A†b, ‖A†b‖₂ and
/// ‖A‖_F‖A†‖_F with half-width ≤ 2^{-N}. `b` is required for the psi_* cases.
DerivedEnclosure derived_certified(Derived which, const QMatrix& a,
                                   const std::optional<QVector>& b, const Certificate& cert,
                                   std::size_t N);

std::string_view to_string(Derived which);
std::optional<Derived> parse_derived(std::string_view name);

/// "k num/den" per iterate followed by "stopped_at k".
std::string format_trace(const IterationTrace& trace);
/// Inverse of format_trace; alpha is not part of the format and stays 0.
IterationTrace parse_trace(std::string_view text);

}  // namespace pinvq
