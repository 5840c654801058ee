#include "pinvq/rational.hpp"

#include <ostream>
#include <stdexcept>

namespace pinvq {

Rat make_rat(const Int& num, const Int& den) {
  if (sgn(den) == 0) throw std::domain_error("zero denominator");
  Rat q(num, den);
  q.canonicalize();
  return q;
}

Rat pow2(long e) {
  Int p;
  if (e >= 0) {
    mpz_ui_pow_ui(p.get_mpz_t(), 2, static_cast<unsigned long>(e));
    return Rat(p);
  }
  mpz_ui_pow_ui(p.get_mpz_t(), 2, static_cast<unsigned long>(-e));
  return make_rat(1, p);
}

std::size_t bit_length(const Int& v) {
  if (sgn(v) == 0) return 0;
  return mpz_sizeinbase(v.get_mpz_t(), 2);
}

namespace {

Int scaled_numerator(const Rat& q, std::size_t bits) {
  Int n = q.get_num();
  mpz_mul_2exp(n.get_mpz_t(), n.get_mpz_t(), bits);
  return n;
}

Rat from_scaled(const Int& n, std::size_t bits) {
  Int d;
  mpz_setbit(d.get_mpz_t(), bits);
  return make_rat(n, d);
}

}  // namespace

Rat floor_dyadic(const Rat& q, std::size_t bits) {
  Int r;
  mpz_fdiv_q(r.get_mpz_t(), scaled_numerator(q, bits).get_mpz_t(), q.get_den_mpz_t());
  return from_scaled(r, bits);
}

Rat ceil_dyadic(const Rat& q, std::size_t bits) {
  Int r;
  mpz_cdiv_q(r.get_mpz_t(), scaled_numerator(q, bits).get_mpz_t(), q.get_den_mpz_t());
  return from_scaled(r, bits);
}

Rat round_dyadic(const Rat& q, std::size_t bits) {
  // floor((2|n|·2^bits + d) / 2d) with the sign restored.
  Int n = scaled_numerator(q, bits);
  const bool negative = sgn(n) < 0;
  if (negative) n = -n;
  const Int& d = q.get_den();
  Int r = (2 * n + d) / (2 * d);
  if (negative) r = -r;
  return from_scaled(r, bits);
}

std::size_t ceil_log2(const Rat& q) {
  if (q <= 1) return 0;
  Int c;
  mpz_cdiv_q(c.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
  // 2^t >= c  <=>  t >= bit_length(c - 1)
  return bit_length(Int(c - 1));
}

Rat round_up_significant(const Rat& q, std::size_t significant) {
  if (sgn(q) == 0) return q;
  const long num_bits = static_cast<long>(bit_length(q.get_num()));
  const long den_bits = static_cast<long>(bit_length(q.get_den()));
  // |q| lies in [2^(num_bits-den_bits-1), 2^(num_bits-den_bits+1)).
  const long frac = static_cast<long>(significant) - (num_bits - den_bits) + 1;
  if (frac <= 0) {
    // Magnitude already exceeds the mantissa budget; keep an integer ceiling.
    Int c;
    mpz_cdiv_q(c.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
    return Rat(c);
  }
  const Rat r = ceil_dyadic(q, static_cast<std::size_t>(frac));
  // Never return something with a longer representation than the input.
  return bit_length(r.get_den()) + bit_length(r.get_num()) <
                 static_cast<std::size_t>(num_bits + den_bits)
             ? r
             : q;
}

std::string to_string(const Rat& q) { return q.get_str(10); }

std::string to_fraction_string(const Rat& q) {
  return q.get_num().get_str(10) + "/" + q.get_den().get_str(10);
}

std::string to_decimal(const Rat& q, std::size_t digits) {
  Int scale;
  mpz_ui_pow_ui(scale.get_mpz_t(), 10, digits);
  const Rat scaled = abs(q) * scale;
  // round half up on the magnitude
  Int r = (2 * scaled.get_num() + scaled.get_den()) / (2 * scaled.get_den());
  std::string s = r.get_str(10);
  if (digits > 0) {
    if (s.size() <= digits) s.insert(0, digits + 1 - s.size(), '0');
    s.insert(s.size() - digits, ".");
  }
  if (sgn(q) < 0 && sgn(r) != 0) s.insert(0, "-");
  return s;
}

GaussRat& GaussRat::operator+=(const GaussRat& o) {
  re += o.re;
  im += o.im;
  return *this;
}

GaussRat& GaussRat::operator-=(const GaussRat& o) {
  re -= o.re;
  im -= o.im;
  return *this;
}

GaussRat& GaussRat::operator*=(const GaussRat& o) {
  if (is_real() && o.is_real()) {
    re *= o.re;
    return *this;
  }
  Rat r = re * o.re - im * o.im;
  Rat i = re * o.im + im * o.re;
  re = std::move(r);
  im = std::move(i);
  return *this;
}

GaussRat& GaussRat::operator/=(const GaussRat& o) {
  if (o.is_zero()) throw std::domain_error("division by zero");
  if (o.is_real()) {
    re /= o.re;
    im /= o.re;
    return *this;
  }
  const Rat d = abs_sq(o);
  *this *= conj(o);
  re /= d;
  im /= d;
  return *this;
}

GaussRat operator+(GaussRat a, const GaussRat& b) { return a += b; }
GaussRat operator-(GaussRat a, const GaussRat& b) { return a -= b; }
GaussRat operator*(GaussRat a, const GaussRat& b) { return a *= b; }
GaussRat operator/(GaussRat a, const GaussRat& b) { return a /= b; }
GaussRat operator-(const GaussRat& a) { return {Rat(-a.re), Rat(-a.im)}; }

GaussRat conj(const GaussRat& z) { return {z.re, Rat(-z.im)}; }

Rat abs_sq(const GaussRat& z) { return z.re * z.re + z.im * z.im; }

std::string to_string(const GaussRat& z) {
  if (z.is_real()) return to_string(z.re);
  std::string im = to_string(abs(z.im)) + "i";
  if (sgn(z.re) == 0) return (sgn(z.im) < 0 ? "-" : "") + im;
  return to_string(z.re) + (sgn(z.im) < 0 ? "-" : "+") + im;
}

std::ostream& operator<<(std::ostream& os, const GaussRat& z) { return os << to_string(z); }

}  // namespace pinvq
