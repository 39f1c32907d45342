#pragma once

#include <mpfr.h>

#include <stdexcept>
#include <string>
#include <utility>

#include "precision.hpp"
#include "rational.hpp"

namespace odmsum {

// Arbitrary-precision real number backed by MPFR. Every value carries its own
// binary precision; binary operations produce results at the *larger* operand
// precision, so precision never degrades silently. Rounding is to nearest.
class BigFloat {
 public:
  BigFloat() {
    mpfr_init2(v_, Precision(Precision::min_digits).bits());
    mpfr_set_zero(v_, 1);
  }

  explicit BigFloat(Precision p) {
    mpfr_init2(v_, p.bits());
    mpfr_set_zero(v_, 1);
  }

  BigFloat(long x, Precision p) {
    mpfr_init2(v_, p.bits());
    mpfr_set_si(v_, x, MPFR_RNDN);
  }

  BigFloat(double x, Precision p) {
    mpfr_init2(v_, p.bits());
    mpfr_set_d(v_, x, MPFR_RNDN);
  }

  BigFloat(const Rational& q, Precision p) {
    mpfr_init2(v_, p.bits());
    mpfr_set_q(v_, q.raw(), MPFR_RNDN);
  }

  BigFloat(const std::string& s, Precision p) {
    mpfr_init2(v_, p.bits());
    if (mpfr_set_str(v_, s.c_str(), 10, MPFR_RNDN) != 0) {
      mpfr_clear(v_);
      throw std::invalid_argument("BigFloat: cannot parse '" + s + "'");
    }
  }

  BigFloat(const BigFloat& o) {
    mpfr_init2(v_, mpfr_get_prec(o.v_));
    mpfr_set(v_, o.v_, MPFR_RNDN);
  }

  BigFloat(BigFloat&& o) noexcept {
    mpfr_init2(v_, MPFR_PREC_MIN);
    mpfr_swap(v_, o.v_);
  }

  BigFloat& operator=(const BigFloat& o) {
    if (this != &o) {
      mpfr_set_prec(v_, mpfr_get_prec(o.v_));
      mpfr_set(v_, o.v_, MPFR_RNDN);
    }
    return *this;
  }

  BigFloat& operator=(BigFloat&& o) noexcept {
    if (this != &o) mpfr_swap(v_, o.v_);
    return *this;
  }

  ~BigFloat() { mpfr_clear(v_); }

  static BigFloat zero(Precision p) { return BigFloat(p); }
  static BigFloat pi(Precision p) {
    BigFloat r(p);
    mpfr_const_pi(r.v_, MPFR_RNDN);
    return r;
  }

  mpfr_srcptr raw() const { return v_; }
  mpfr_ptr raw() { return v_; }

  mpfr_prec_t prec_bits() const { return mpfr_get_prec(v_); }

  bool is_zero() const { return mpfr_zero_p(v_) != 0; }
  bool is_finite() const { return mpfr_number_p(v_) != 0; }
  int sign() const { return mpfr_sgn(v_); }
  bool signbit() const { return mpfr_signbit(v_) != 0; }

  friend BigFloat operator+(const BigFloat& a, const BigFloat& b) {
    BigFloat r = like_max(a, b);
    mpfr_add(r.v_, a.v_, b.v_, MPFR_RNDN);
    return r;
  }
  friend BigFloat operator-(const BigFloat& a, const BigFloat& b) {
    BigFloat r = like_max(a, b);
    mpfr_sub(r.v_, a.v_, b.v_, MPFR_RNDN);
    return r;
  }
  friend BigFloat operator*(const BigFloat& a, const BigFloat& b) {
    BigFloat r = like_max(a, b);
    mpfr_mul(r.v_, a.v_, b.v_, MPFR_RNDN);
    return r;
  }
  friend BigFloat operator/(const BigFloat& a, const BigFloat& b) {
    if (b.is_zero()) throw std::domain_error("BigFloat: division by zero");
    BigFloat r = like_max(a, b);
    mpfr_div(r.v_, a.v_, b.v_, MPFR_RNDN);
    return r;
  }
  BigFloat operator-() const {
    BigFloat r(*this);
    mpfr_neg(r.v_, r.v_, MPFR_RNDN);
    return r;
  }

  BigFloat& operator+=(const BigFloat& o) { return *this = *this + o; }
  BigFloat& operator-=(const BigFloat& o) { return *this = *this - o; }
  BigFloat& operator*=(const BigFloat& o) { return *this = *this * o; }
  BigFloat& operator/=(const BigFloat& o) { return *this = *this / o; }

  friend bool operator==(const BigFloat& a, const BigFloat& b) {
    return mpfr_cmp(a.v_, b.v_) == 0;
  }
  friend bool operator!=(const BigFloat& a, const BigFloat& b) {
    return !(a == b);
  }
  friend bool operator<(const BigFloat& a, const BigFloat& b) {
    return mpfr_cmp(a.v_, b.v_) < 0;
  }
  friend bool operator>(const BigFloat& a, const BigFloat& b) {
    return mpfr_cmp(a.v_, b.v_) > 0;
  }
  friend bool operator<=(const BigFloat& a, const BigFloat& b) {
    return mpfr_cmp(a.v_, b.v_) <= 0;
  }
  friend bool operator>=(const BigFloat& a, const BigFloat& b) {
    return mpfr_cmp(a.v_, b.v_) >= 0;
  }

  double to_double() const { return mpfr_get_d(v_, MPFR_RNDN); }

  long to_long() const { return mpfr_get_si(v_, MPFR_RNDN); }

  // Scientific notation with the requested number of significant digits;
  // deterministic for a given value/digit count.
  std::string to_string(long sig_digits) const {
    if (sig_digits < 2) sig_digits = 2;
    char* buf = nullptr;
    mpfr_asprintf(&buf, "%.*Re", static_cast<int>(sig_digits - 1), v_);
    std::string s(buf);
    mpfr_free_str(buf);
    return s;
  }

  std::string to_string() const {
    long digits =
        static_cast<long>(static_cast<double>(prec_bits()) / 3.32193) - 2;
    return to_string(digits);
  }

 private:
  static BigFloat like_max(const BigFloat& a, const BigFloat& b) {
    BigFloat r;
    mpfr_set_prec(r.v_, std::max(mpfr_get_prec(a.v_), mpfr_get_prec(b.v_)));
    return r;
  }

  mpfr_t v_;
};

inline BigFloat zero_like(const BigFloat& x) {
  BigFloat r;
  mpfr_set_prec(r.raw(), x.prec_bits());
  mpfr_set_zero(r.raw(), 1);
  return r;
}

inline BigFloat one_like(const BigFloat& x) {
  BigFloat r = zero_like(x);
  mpfr_set_si(r.raw(), 1, MPFR_RNDN);
  return r;
}

inline bool is_exact_zero(const BigFloat& x) { return x.is_zero(); }

// Exact rational constant carried at the precision of an existing value.
inline BigFloat rational_like(const BigFloat& like, const Rational& q) {
  BigFloat r = zero_like(like);
  mpfr_set_q(r.raw(), q.raw(), MPFR_RNDN);
  return r;
}

// Rough decimal-digit count of a value's working precision.
inline long approx_digits(const BigFloat& x) {
  return static_cast<long>((static_cast<double>(x.prec_bits()) - 8.0) /
                           3.3219280948873626);
}

// The same value rounded into a different working precision.
inline BigFloat to_precision(const BigFloat& x, Precision p) {
  BigFloat r(p);
  mpfr_set(r.raw(), x.raw(), MPFR_RNDN);
  return r;
}

inline BigFloat abs(const BigFloat& x) {
  BigFloat r(x);
  mpfr_abs(r.raw(), r.raw(), MPFR_RNDN);
  return r;
}

inline BigFloat sqrt(const BigFloat& x) {
  if (x.sign() < 0) throw std::domain_error("BigFloat: sqrt of negative");
  BigFloat r(x);
  mpfr_sqrt(r.raw(), r.raw(), MPFR_RNDN);
  return r;
}

inline BigFloat exp(const BigFloat& x) {
  BigFloat r(x);
  mpfr_exp(r.raw(), r.raw(), MPFR_RNDN);
  return r;
}

inline BigFloat log(const BigFloat& x) {
  if (x.sign() <= 0) throw std::domain_error("BigFloat: log of non-positive");
  BigFloat r(x);
  mpfr_log(r.raw(), r.raw(), MPFR_RNDN);
  return r;
}

inline BigFloat sin(const BigFloat& x) {
  BigFloat r(x);
  mpfr_sin(r.raw(), r.raw(), MPFR_RNDN);
  return r;
}

inline BigFloat cos(const BigFloat& x) {
  BigFloat r(x);
  mpfr_cos(r.raw(), r.raw(), MPFR_RNDN);
  return r;
}

inline BigFloat atan2(const BigFloat& y, const BigFloat& x) {
  BigFloat r = y + x;  // adopt joint precision
  mpfr_atan2(r.raw(), y.raw(), x.raw(), MPFR_RNDN);
  return r;
}

inline BigFloat hypot(const BigFloat& x, const BigFloat& y) {
  BigFloat r = x + y;
  mpfr_hypot(r.raw(), x.raw(), y.raw(), MPFR_RNDN);
  return r;
}

// x^y for real x, arbitrary real y (x must be positive unless y is integer).
inline BigFloat pow(const BigFloat& x, const BigFloat& y) {
  BigFloat r = x + y;
  mpfr_pow(r.raw(), x.raw(), y.raw(), MPFR_RNDN);
  if (!r.is_finite()) throw std::domain_error("BigFloat: pow out of domain");
  return r;
}

inline BigFloat pow(const BigFloat& x, long n) {
  BigFloat r(x);
  mpfr_pow_si(r.raw(), x.raw(), n, MPFR_RNDN);
  return r;
}

inline BigFloat gamma_fn(const BigFloat& x) {
  BigFloat r(x);
  mpfr_gamma(r.raw(), r.raw(), MPFR_RNDN);
  return r;
}

inline BigFloat min(const BigFloat& a, const BigFloat& b) {
  return (a < b) ? a : b;
}
inline BigFloat max(const BigFloat& a, const BigFloat& b) {
  return (a > b) ? a : b;
}

// 10^e at the precision of the template value; handy for tolerance floors.
inline BigFloat pow10_like(const BigFloat& like, long e) {
  BigFloat ten = one_like(like);
  mpfr_set_si(ten.raw(), 10, MPFR_RNDN);
  return pow(ten, e);
}

}  // namespace odmsum
