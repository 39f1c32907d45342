#pragma once

#include <gmp.h>

#include <cstdlib>
#include <stdexcept>
#include <string>
#include <utility>

namespace odmsum {

// Exact rational number backed by GMP's mpq_t. Always kept canonical:
// lowest terms, positive denominator.
class Rational {
 public:
  Rational() { mpq_init(v_); }

  Rational(long n) {  // NOLINT: implicit by design, mirrors integer literals
    mpq_init(v_);
    mpq_set_si(v_, n, 1);
  }

  Rational(long num, long den) {
    if (den == 0) throw std::invalid_argument("Rational: zero denominator");
    mpq_init(v_);
    mpq_set_si(v_, num, static_cast<unsigned long>(std::labs(den)));
    if (den < 0) mpq_neg(v_, v_);
    mpq_canonicalize(v_);
  }

  // Parses "num" or "num/den" in base 10.
  explicit Rational(const std::string& s) {
    mpq_init(v_);
    if (mpq_set_str(v_, s.c_str(), 10) != 0) {
      mpq_clear(v_);
      throw std::invalid_argument("Rational: cannot parse '" + s + "'");
    }
    if (mpz_sgn(mpq_denref(v_)) == 0) {
      mpq_clear(v_);
      throw std::invalid_argument("Rational: zero denominator in '" + s + "'");
    }
    mpq_canonicalize(v_);
  }

  static Rational from_decimal_strings(const std::string& num,
                                       const std::string& den) {
    return Rational(num + "/" + den);
  }

  Rational(const Rational& o) {
    mpq_init(v_);
    mpq_set(v_, o.v_);
  }

  Rational(Rational&& o) noexcept {
    mpq_init(v_);
    mpq_swap(v_, o.v_);
  }

  Rational& operator=(const Rational& o) {
    if (this != &o) mpq_set(v_, o.v_);
    return *this;
  }

  Rational& operator=(Rational&& o) noexcept {
    if (this != &o) mpq_swap(v_, o.v_);
    return *this;
  }

  ~Rational() { mpq_clear(v_); }

  const mpq_t& raw() const { return v_; }

  int sign() const { return mpq_sgn(v_); }
  bool is_zero() const { return mpq_sgn(v_) == 0; }

  bool is_integer() const { return mpz_cmp_ui(mpq_denref(v_), 1) == 0; }

  friend Rational operator+(const Rational& a, const Rational& b) {
    Rational r;
    mpq_add(r.v_, a.v_, b.v_);
    return r;
  }
  friend Rational operator-(const Rational& a, const Rational& b) {
    Rational r;
    mpq_sub(r.v_, a.v_, b.v_);
    return r;
  }
  friend Rational operator*(const Rational& a, const Rational& b) {
    Rational r;
    mpq_mul(r.v_, a.v_, b.v_);
    return r;
  }
  friend Rational operator/(const Rational& a, const Rational& b) {
    if (b.is_zero()) throw std::domain_error("Rational: division by zero");
    Rational r;
    mpq_div(r.v_, a.v_, b.v_);
    return r;
  }
  Rational operator-() const {
    Rational r;
    mpq_neg(r.v_, v_);
    return r;
  }

  Rational& operator+=(const Rational& o) {
    mpq_add(v_, v_, o.v_);
    return *this;
  }
  Rational& operator-=(const Rational& o) {
    mpq_sub(v_, v_, o.v_);
    return *this;
  }
  Rational& operator*=(const Rational& o) {
    mpq_mul(v_, v_, o.v_);
    return *this;
  }
  Rational& operator/=(const Rational& o) {
    *this = *this / o;
    return *this;
  }

  friend bool operator==(const Rational& a, const Rational& b) {
    return mpq_equal(a.v_, b.v_) != 0;
  }
  friend bool operator!=(const Rational& a, const Rational& b) {
    return !(a == b);
  }
  friend bool operator<(const Rational& a, const Rational& b) {
    return mpq_cmp(a.v_, b.v_) < 0;
  }
  friend bool operator>(const Rational& a, const Rational& b) {
    return mpq_cmp(a.v_, b.v_) > 0;
  }
  friend bool operator<=(const Rational& a, const Rational& b) {
    return mpq_cmp(a.v_, b.v_) <= 0;
  }
  friend bool operator>=(const Rational& a, const Rational& b) {
    return mpq_cmp(a.v_, b.v_) >= 0;
  }

  Rational abs() const {
    Rational r;
    mpq_abs(r.v_, v_);
    return r;
  }

  // Integer power; negative exponents invert (value must be nonzero).
  Rational pow(long e) const {
    if (e < 0) {
      if (is_zero()) throw std::domain_error("Rational: 0^negative");
      return (Rational(1) / *this).pow(-e);
    }
    Rational base(*this), acc(1);
    unsigned long n = static_cast<unsigned long>(e);
    while (n) {
      if (n & 1UL) acc *= base;
      base *= base;
      n >>= 1UL;
    }
    return acc;
  }

  std::string numerator_string() const { return mpz_to_string(mpq_numref(v_)); }
  std::string denominator_string() const {
    return mpz_to_string(mpq_denref(v_));
  }

  // "n" for integers, "n/d" otherwise.
  std::string to_string() const {
    if (is_integer()) return numerator_string();
    return numerator_string() + "/" + denominator_string();
  }

  double to_double() const { return mpq_get_d(v_); }

 private:
  static std::string mpz_to_string(mpz_srcptr z) {
    char* buf = mpz_get_str(nullptr, 10, z);
    std::string s(buf);
    void (*freefn)(void*, size_t);
    mp_get_memory_functions(nullptr, nullptr, &freefn);
    freefn(buf, s.size() + 1);
    return s;
  }

  mpq_t v_;
};

inline Rational zero_like(const Rational&) { return Rational(0); }
inline Rational one_like(const Rational&) { return Rational(1); }
inline bool is_exact_zero(const Rational& x) { return x.is_zero(); }

}  // namespace odmsum
