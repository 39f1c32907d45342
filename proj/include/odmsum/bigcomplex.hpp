#pragma once

#include "bigfloat.hpp"

namespace odmsum {

// Complex number over BigFloat. All multivalued functions (sqrt, log, pow)
// take the principal branch, with the cut on the negative real axis; the
// sign of a zero imaginary part selects the side of the cut, so a value with
// im = +0 is treated as the limit from the upper half plane.
class BigComplex {
 public:
  BigComplex() = default;

  explicit BigComplex(Precision p) : re_(p), im_(p) {}

  BigComplex(BigFloat re, BigFloat im) : re_(std::move(re)), im_(std::move(im)) {}

  explicit BigComplex(const BigFloat& re) : re_(re), im_(zero_like(re)) {}

  BigComplex(long re, Precision p) : re_(re, p), im_(p) {}

  const BigFloat& real() const { return re_; }
  const BigFloat& imag() const { return im_; }
  BigFloat& real() { return re_; }
  BigFloat& imag() { return im_; }

  bool is_zero() const { return re_.is_zero() && im_.is_zero(); }

  friend BigComplex operator+(const BigComplex& a, const BigComplex& b) {
    return {a.re_ + b.re_, a.im_ + b.im_};
  }
  friend BigComplex operator-(const BigComplex& a, const BigComplex& b) {
    return {a.re_ - b.re_, a.im_ - b.im_};
  }
  friend BigComplex operator*(const BigComplex& a, const BigComplex& b) {
    return {a.re_ * b.re_ - a.im_ * b.im_, a.re_ * b.im_ + a.im_ * b.re_};
  }
  friend BigComplex operator*(const BigFloat& a, const BigComplex& b) {
    return {a * b.re_, a * b.im_};
  }
  friend BigComplex operator*(const BigComplex& a, const BigFloat& b) {
    return b * a;
  }
  friend BigComplex operator/(const BigComplex& a, const BigComplex& b) {
    if (b.is_zero()) throw std::domain_error("BigComplex: division by zero");
    BigFloat d = b.re_ * b.re_ + b.im_ * b.im_;
    return {(a.re_ * b.re_ + a.im_ * b.im_) / d,
            (a.im_ * b.re_ - a.re_ * b.im_) / d};
  }
  friend BigComplex operator/(const BigComplex& a, const BigFloat& b) {
    return {a.re_ / b, a.im_ / b};
  }
  BigComplex operator-() const { return {-re_, -im_}; }

  BigComplex& operator+=(const BigComplex& o) { return *this = *this + o; }
  BigComplex& operator-=(const BigComplex& o) { return *this = *this - o; }
  BigComplex& operator*=(const BigComplex& o) { return *this = *this * o; }
  BigComplex& operator/=(const BigComplex& o) { return *this = *this / o; }

  friend bool operator==(const BigComplex& a, const BigComplex& b) {
    return a.re_ == b.re_ && a.im_ == b.im_;
  }
  friend bool operator!=(const BigComplex& a, const BigComplex& b) {
    return !(a == b);
  }

  BigComplex conj() const { return {re_, -im_}; }

 private:
  BigFloat re_, im_;
};

inline BigComplex zero_like(const BigComplex& z) {
  return {zero_like(z.real()), zero_like(z.real())};
}

inline BigComplex one_like(const BigComplex& z) {
  return {one_like(z.real()), zero_like(z.real())};
}

inline bool is_exact_zero(const BigComplex& z) { return z.is_zero(); }

inline BigFloat abs(const BigComplex& z) { return hypot(z.real(), z.imag()); }

// Principal argument in (-pi, pi]; respects the sign of a zero imaginary
// part, so (-x, +0) maps to +pi and (-x, -0) to -pi.
inline BigFloat arg(const BigComplex& z) { return atan2(z.imag(), z.real()); }

inline BigComplex sqrt(const BigComplex& z) {
  if (z.is_zero()) return zero_like(z);
  BigFloat r = abs(z);
  if (z.real().sign() >= 0) {
    BigFloat u = sqrt((r + z.real()) / BigFloat(2L, Precision(30)));
    return {u, z.imag() / (u + u)};
  }
  BigFloat v = sqrt((r - z.real()) / BigFloat(2L, Precision(30)));
  if (z.imag().signbit()) v = -v;  // lower half (or im = -0): negative branch
  return {z.imag() / (v + v), v};
}

inline BigComplex exp(const BigComplex& z) {
  BigFloat m = exp(z.real());
  return {m * cos(z.imag()), m * sin(z.imag())};
}

inline BigComplex log(const BigComplex& z) {
  if (z.is_zero()) throw std::domain_error("BigComplex: log of zero");
  return {log(abs(z)), arg(z)};
}

// Principal power z^w with real exponent.
inline BigComplex pow(const BigComplex& z, const BigFloat& w) {
  if (z.is_zero()) {
    if (w.sign() <= 0) throw std::domain_error("BigComplex: 0^nonpositive");
    return zero_like(z);
  }
  BigFloat lr = log(abs(z)), th = arg(z);
  BigFloat m = exp(w * lr), ph = w * th;
  return {m * cos(ph), m * sin(ph)};
}

inline BigComplex pow(const BigComplex& z, long n) {
  if (n < 0) return one_like(z) / pow(z, -n);
  BigComplex acc = one_like(z), base = z;
  unsigned long k = static_cast<unsigned long>(n);
  while (k) {
    if (k & 1UL) acc *= base;
    base *= base;
    k >>= 1UL;
  }
  return acc;
}

}  // namespace odmsum
