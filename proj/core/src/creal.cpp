#include "pinvq/creal.hpp"

#include <algorithm>
#include <map>
#include <mutex>

#include "pinvq/errors.hpp"

namespace pinvq {

struct CReal::Node {
  explicit Node(Approximator f) : fn(std::move(f)) {}
  Approximator fn;
  std::mutex mutex;
  std::map<std::size_t, Rat> cache;
};

CReal::CReal(Approximator approx) : node_(std::make_shared<Node>(std::move(approx))) {}

Rat CReal::approx(std::size_t k) const {
  {
    std::lock_guard lock(node_->mutex);
    if (auto it = node_->cache.find(k); it != node_->cache.end()) return it->second;
  }
  Rat r = node_->fn(k);
  std::lock_guard lock(node_->mutex);
  return node_->cache.try_emplace(k, std::move(r)).first->second;
}

namespace {

// Keeps approximations short: rounding to the 2^{-(k+2)} grid costs at most
// 2^{-(k+3)}, which every caller below budgets for.
Rat tidy(const Rat& q, std::size_t k) {
  if (bit_length(q.get_den()) <= k + 2) return q;
  return round_dyadic(q, k + 2);
}

}  // namespace

// Constant: |q − q| = 0.
CReal creal_from_rat(const Rat& q) {
  return CReal([q](std::size_t) { return q; });
}

// |(x_{k+1} + y_{k+1}) − (x + y)| ≤ 2·2^{-(k+1)}.
CReal operator+(const CReal& x, const CReal& y) {
  return CReal([x, y](std::size_t k) -> Rat { return x.approx(k + 1) + y.approx(k + 1); });
}

// Negation is an isometry.
CReal operator-(const CReal& x) {
  return CReal([x](std::size_t k) -> Rat { return -x.approx(k); });
}

CReal operator-(const CReal& x, const CReal& y) { return x + (-y); }

// With 2^bx ≥ |x| (from |x0| + 1) and 2^by ≥ |y_j| (from |y0| + 2):
// |xy − x_j y_j| ≤ |x||y − y_j| + |y_j||x − x_j| ≤ 2^{-j}(2^bx + 2^by)
// ≤ 2^{-j + 1 + max(bx, by)}. j = k + 2 + max(bx, by) leaves 2^{-(k+1)},
// and tidy adds at most 2^{-(k+3)}.
CReal operator*(const CReal& x, const CReal& y) {
  return CReal([x, y](std::size_t k) -> Rat {
    const std::size_t bx = ceil_log2(Rat(abs(x.approx(0)) + 1));
    const std::size_t by = ceil_log2(Rat(abs(y.approx(0)) + 2));
    const std::size_t j = k + 2 + std::max(bx, by);
    return tidy(x.approx(j) * y.approx(j), k);
  });
}

// ||x_k| − |x|| ≤ |x_k − x|.
CReal abs(const CReal& x) {
  return CReal([x](std::size_t k) -> Rat { return abs(x.approx(k)); });
}

// max and min are 1-Lipschitz in the sup norm.
CReal max(const CReal& x, const CReal& y) {
  return CReal([x, y](std::size_t k) -> Rat {
    Rat a = x.approx(k);
    Rat b = y.approx(k);
    return a >= b ? a : b;
  });
}

CReal min(const CReal& x, const CReal& y) {
  return CReal([x, y](std::size_t k) -> Rat {
    Rat a = x.approx(k);
    Rat b = y.approx(k);
    return a <= b ? a : b;
  });
}

std::optional<NonzeroWitness> check_nonzero_witness(const CReal& y, std::size_t k0) {
  if (abs(y.approx(k0)) > pow2(1 - static_cast<long>(k0))) return NonzeroWitness{k0};
  return std::nullopt;
}

std::optional<NonzeroWitness> search_nonzero_witness(const CReal& y, std::size_t budget) {
  for (std::size_t k0 = 0; k0 <= budget; ++k0) {
    if (auto w = check_nonzero_witness(y, k0)) return w;
  }
  return std::nullopt;
}

namespace {

// Witness k0 gives |y| > 2^{-k0} and, for j ≥ k0 + 1, |y_j| > 2^{-k0-1}, so
// |1/y_j − 1/y| = |y − y_j| / (|y||y_j|) < 2^{-j + 2k0 + 1}.
// j = k + 2k0 + 2 leaves 2^{-(k+1)}; tidy adds at most 2^{-(k+3)}.
CReal reciprocal(const CReal& y, NonzeroWitness w) {
  const std::size_t k0 = w.precision;
  return CReal([y, k0](std::size_t k) -> Rat {
    const Rat yj = y.approx(k + 2 * k0 + 2);
    return tidy(Rat(1 / yj), k);
  });
}

}  // namespace

CReal divide(const CReal& x, const CReal& y, NonzeroWitness witness) {
  if (!check_nonzero_witness(y, witness.precision)) {
    throw PreconditionError("nonzero witness required");
  }
  return x * reciprocal(y, witness);
}

CReal divide(const CReal& x, const CReal& y, std::size_t budget) {
  const auto w = search_nonzero_witness(y, budget);
  if (!w) {
    throw PreconditionError("nonzero witness required (none found up to precision " +
                            std::to_string(budget) + ")");
  }
  return x * reciprocal(y, *w);
}

SqrtEnclosure sqrt_enclosure(const Rat& q, std::size_t grid_bits) {
  if (sgn(q) < 0) throw PreconditionError("negative radicand");
  // z = q · 4^g; floor(√z) = isqrt(floor(z)), ceil(√z) = t or t + 1.
  Rat z = q;
  mpq_mul_2exp(z.get_mpq_t(), z.get_mpq_t(), 2 * grid_bits);
  Int fl;
  mpz_fdiv_q(fl.get_mpz_t(), z.get_num_mpz_t(), z.get_den_mpz_t());
  Int lo;
  mpz_sqrt(lo.get_mpz_t(), fl.get_mpz_t());
  Int hi = lo;
  if (Rat(hi * hi) < z) hi += 1;
  Int den;
  mpz_setbit(den.get_mpz_t(), grid_bits);
  return {make_rat(lo, den), make_rat(hi, den)};
}

namespace {

std::size_t grid_for(const Rat& q, std::size_t significant) {
  const long mag = static_cast<long>(bit_length(q.get_num())) -
                   static_cast<long>(bit_length(q.get_den()));
  const long g = static_cast<long>(significant) - mag / 2;
  return g > 0 ? static_cast<std::size_t>(g) : 0;
}

}  // namespace

Rat sqrt_upper(const Rat& q, std::size_t significant) {
  if (sgn(q) == 0) return q;
  return sqrt_enclosure(q, grid_for(q, significant)).upper;
}

Rat sqrt_lower(const Rat& q, std::size_t significant) {
  if (sgn(q) == 0) return q;
  return sqrt_enclosure(q, grid_for(q, significant)).lower;
}

// Query x at j = 2k + 3: x ∈ [lo, hi] with hi − lo = 2^{1-j}. √ is monotone,
// so √x ∈ [√max(lo,0), √hi], an interval of width ≤ √(hi − lo) = 2^{-(k+1)}.
// Outer rational bounds on the 2^{-(k+2)} grid widen it to at most 2^{-k};
// the midpoint is then within 2^{-(k+1)} of √x. At x = 0 the doubled query
// precision is what the square-root singularity of the modulus costs.
CReal sqrt(const CReal& x) {
  return CReal([x](std::size_t k) -> Rat {
    const std::size_t j = 2 * k + 3;
    const Rat xj = x.approx(j);
    const Rat r = pow2(-static_cast<long>(j));
    const Rat hi = xj + r;
    if (sgn(hi) < 0) throw PreconditionError("negative radicand");
    Rat lo = xj - r;
    if (sgn(lo) < 0) lo = 0;
    const Rat lower = sqrt_enclosure(lo, k + 2).lower;
    const Rat upper = sqrt_enclosure(hi, k + 2).upper;
    return (lower + upper) / 2;
  });
}

std::function<CReal(std::size_t)> effective_limit(CRealSeq seq) {
  auto shared = std::make_shared<const CRealSeq>(std::move(seq));
  // |term(n, e(n, N+1)) − x_n| ≤ 2^{-(N+1)} ≤ 2^{-N}.
  return [shared](std::size_t n) {
    return CReal([shared, n](std::size_t N) { return shared->term(n, shared->modulus(n, N + 1)); });
  };
}

ComparisonOutcome compare_witness(const CReal& x, const CReal& y, std::size_t N) {
  const std::size_t p = N + 2;
  const Rat delta = pow2(-static_cast<long>(p));
  const Rat a = x.approx(p);
  const Rat b = y.approx(p);
  if (a + delta < b - delta) return {Ordering::Less, N};
  if (b + delta < a - delta) return {Ordering::Greater, N};
  return {Ordering::Indistinguishable, N};
}

std::size_t decimal_digits_for(std::size_t N) {
  Int two_n;
  mpz_setbit(two_n.get_mpz_t(), N);
  std::size_t d = 0;
  Int ten_d = 1;
  while (ten_d < two_n) {
    ten_d *= 10;
    ++d;
  }
  return d;
}

std::string render(const CReal& x, std::size_t N) {
  // approx(N+1) is within 2^{-(N+1)}; rounding to d places adds at most
  // 10^{-d}/2 ≤ 2^{-(N+1)}.
  const std::string dec = to_decimal(x.approx(N + 1), decimal_digits_for(N));
  return to_string(x.approx(N)) + " ≈ " + dec + " ± 2^-" + std::to_string(N);
}

}  // namespace pinvq
