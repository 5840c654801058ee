#pragma once

#include <cstddef>
#include <iosfwd>
#include <string>

#include <gmpxx.h>

namespace pinvq {

/// Arbitrary-precision integer.
using Int = mpz_class;

/// Arbitrary-precision rational. gmpxx keeps every arithmetic result in
/// canonical form (positive denominator, gcd 1), so `==` is exact equality.
using Rat = mpq_class;

/// Builds num/den in canonical form. Throws std::domain_error when den == 0.
Rat make_rat(const Int& num, const Int& den = 1);

/// 2^e for any signed exponent.
Rat pow2(long e);

/// Number of bits in |v| (0 for v == 0).
std::size_t bit_length(const Int& v);

/// Nearest multiple of 2^-bits (ties away from zero).
Rat round_dyadic(const Rat& q, std::size_t bits);
/// Largest multiple of 2^-bits that is <= q.
Rat floor_dyadic(const Rat& q, std::size_t bits);
/// Smallest multiple of 2^-bits that is >= q.
Rat ceil_dyadic(const Rat& q, std::size_t bits);

/// Upper bound on q with at most `significant` bits of mantissa. Used to keep
/// error-bound bookkeeping small without losing soundness.
Rat round_up_significant(const Rat& q, std::size_t significant = 64);

/// Smallest integer t >= 0 with 2^t >= q (q > 0); 0 for q <= 1.
std::size_t ceil_log2(const Rat& q);

/// "a" for integers, "a/b" otherwise.
std::string to_string(const Rat& q);

/// Always "a/b", also for integers ("3/1"); used by line formats that
/// promise an explicit denominator.
std::string to_fraction_string(const Rat& q);

/// Decimal expansion of q rounded to `digits` places after the point.
std::string to_decimal(const Rat& q, std::size_t digits);

/// Gaussian rational re + im·i.
struct GaussRat {
  Rat re;
  Rat im;

  GaussRat() = default;
  GaussRat(Rat real) : re(std::move(real)) {}  // NOLINT(google-explicit-constructor)
  GaussRat(int real) : re(real) {}              // NOLINT(google-explicit-constructor)
  GaussRat(Rat real, Rat imag) : re(std::move(real)), im(std::move(imag)) {}

  [[nodiscard]] bool is_zero() const { return sgn(re) == 0 && sgn(im) == 0; }
  [[nodiscard]] bool is_real() const { return sgn(im) == 0; }

  GaussRat& operator+=(const GaussRat& o);
  GaussRat& operator-=(const GaussRat& o);
  GaussRat& operator*=(const GaussRat& o);
  GaussRat& operator/=(const GaussRat& o);

  friend bool operator==(const GaussRat& a, const GaussRat& b) {
    return a.re == b.re && a.im == b.im;
  }
};

GaussRat operator+(GaussRat a, const GaussRat& b);
GaussRat operator-(GaussRat a, const GaussRat& b);
GaussRat operator*(GaussRat a, const GaussRat& b);
GaussRat operator/(GaussRat a, const GaussRat& b);
GaussRat operator-(const GaussRat& a);

GaussRat conj(const GaussRat& z);
/// |z|^2, always rational.
Rat abs_sq(const GaussRat& z);

/// "re", "im i" or "re±im i" (e.g. "1/2-3/4i", "2i").
std::string to_string(const GaussRat& z);
std::ostream& operator<<(std::ostream& os, const GaussRat& z);

}  // namespace pinvq
