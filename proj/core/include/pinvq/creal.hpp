#pragma once

#include <cstddef>
#include <functional>
#include <memory>
#include <optional>
#include <string>

#include "pinvq/rational.hpp"

namespace pinvq {

/// A computable real x given by a precision-query function k ↦ r_k with
/// |r_k − x| ≤ 2^{-k} for every k ≥ 0.
///
/// Every constructor in this header documents why the modulus holds. Queries
/// are memoized per value; the cache is guarded by a mutex, so a CReal may be
/// shared and queried from several threads.
class CReal {
 public:
  using Approximator = std::function<Rat(std::size_t)>;

  /// The caller vouches for the 2^{-k} modulus of `approx`.
  explicit CReal(Approximator approx);

  /// r_k. May throw what the underlying approximator throws (for example a
  /// PreconditionError from a square root of a negative number).
  [[nodiscard]] Rat approx(std::size_t k) const;

 private:
  struct Node;
  std::shared_ptr<Node> node_;
};

/// Exact rational: r_k = q for all k.
CReal creal_from_rat(const Rat& q);

CReal operator+(const CReal& x, const CReal& y);
CReal operator-(const CReal& x, const CReal& y);
CReal operator-(const CReal& x);
CReal operator*(const CReal& x, const CReal& y);
CReal abs(const CReal& x);
CReal max(const CReal& x, const CReal& y);
CReal min(const CReal& x, const CReal& y);

/// A precision k0 at which |approx(k0)| > 2^{-k0+1}; then |y| > 2^{-k0}.
struct NonzeroWitness {
  std::size_t precision;
};

/// Checks a proposed witness; returns nullopt if approx(k0) is too small.
std::optional<NonzeroWitness> check_nonzero_witness(const CReal& y, std::size_t k0);

/// Tries k0 = 0, 1, …, budget. No budget suffices for y = 0, which is the
/// point: comparison with zero is only semi-decidable.
std::optional<NonzeroWitness> search_nonzero_witness(const CReal& y, std::size_t budget);

/// x / y. Throws PreconditionError("nonzero witness required") if the witness
/// does not check out for y.
CReal divide(const CReal& x, const CReal& y, NonzeroWitness witness);

/// x / y, searching for a witness up to `budget`; throws PreconditionError if
/// none is found.
CReal divide(const CReal& x, const CReal& y, std::size_t budget);

/// √x for x ≥ 0. A query throws PreconditionError("negative radicand") when
/// the enclosure it sees lies entirely below zero.
CReal sqrt(const CReal& x);

/// Rational enclosure lower ≤ √q ≤ upper on the 2^{-grid_bits} grid; both
/// ends are within 2^{-grid_bits} of √q. Requires q ≥ 0.
struct SqrtEnclosure {
  Rat lower;
  Rat upper;
};
SqrtEnclosure sqrt_enclosure(const Rat& q, std::size_t grid_bits);

/// Upper / lower bounds on √q with roughly `significant` correct bits,
/// exact when q is the square of a rational representable at that scale.
Rat sqrt_upper(const Rat& q, std::size_t significant = 64);
Rat sqrt_lower(const Rat& q, std::size_t significant = 64);

/// A computable double sequence x_{n,k} → x_n with a modulus e(n, N) such
/// that |term(n, k) − x_n| ≤ 2^{-N} whenever k ≥ e(n, N). The modulus should
/// be non-decreasing in both arguments.
struct CRealSeq {
  std::function<Rat(std::size_t n, std::size_t k)> term;
  std::function<std::size_t(std::size_t n, std::size_t N)> modulus;
};

/// The limit sequence n ↦ x_n. Precision N of x_n is answered by
/// term(n, modulus(n, N + 1)).
std::function<CReal(std::size_t)> effective_limit(CRealSeq seq);

enum class Ordering { Less, Greater, Indistinguishable };

struct ComparisonOutcome {
  Ordering tag;
  std::size_t at_precision;
};

/// Compares at precision N + 2. Less/Greater are always correct;
/// Indistinguishable guarantees |x − y| ≤ 2^{-N+2}.
ComparisonOutcome compare_witness(const CReal& x, const CReal& y, std::size_t N);

/// "r_N ≈ d.ddd… ± 2^-N" where r_N = x.approx(N) and the decimal is within
/// 2^{-N} of x.
std::string render(const CReal& x, std::size_t N);

/// Number of decimal places d with 10^{-d} ≤ 2^{-N}.
std::size_t decimal_digits_for(std::size_t N);

}  // namespace pinvq
