#pragma once

#include <stdexcept>
#include <vector>

#include "bigcomplex.hpp"
#include "bigfloat.hpp"
#include "rational.hpp"

namespace odmsum {

// Truncated power series sum_{i=0..K} c[i] x^i over a coefficient field T
// (Rational, BigFloat or BigComplex). The truncation order K is the length
// of the coefficient vector minus one. Arithmetic follows the usual rule
// that a binary operation only knows the series through the smaller of the
// two truncation orders.
template <class T>
struct PowerSeries {
  std::vector<T> c;

  PowerSeries() = default;
  explicit PowerSeries(std::vector<T> coeffs) : c(std::move(coeffs)) {
    if (c.empty()) throw std::invalid_argument("PowerSeries: empty");
  }

  long order() const { return static_cast<long>(c.size()) - 1; }
  const T& operator[](long i) const { return c[static_cast<size_t>(i)]; }
  T& operator[](long i) { return c[static_cast<size_t>(i)]; }
};

namespace series {

template <class T>
PowerSeries<T> constant(const T& value, long order) {
  PowerSeries<T> r;
  r.c.assign(static_cast<size_t>(order) + 1, zero_like(value));
  r.c[0] = value;
  return r;
}

// x itself, padded to the requested order (order >= 1).
template <class T>
PowerSeries<T> identity(const T& like, long order) {
  if (order < 1) throw std::invalid_argument("series::identity: order < 1");
  PowerSeries<T> r = constant(zero_like(like), order);
  r.c[1] = one_like(like);
  return r;
}

template <class T>
PowerSeries<T> truncate(const PowerSeries<T>& a, long order) {
  if (order >= a.order()) return a;
  PowerSeries<T> r;
  r.c.assign(a.c.begin(), a.c.begin() + order + 1);
  return r;
}

// Zero-pads (treating the series as exact beyond its stored coefficients).
template <class T>
PowerSeries<T> pad(const PowerSeries<T>& a, long order) {
  PowerSeries<T> r = a;
  while (r.order() < order) r.c.push_back(zero_like(a.c[0]));
  return r;
}

template <class T>
PowerSeries<T> add(const PowerSeries<T>& a, const PowerSeries<T>& b) {
  long k = std::min(a.order(), b.order());
  PowerSeries<T> r = truncate(a, k);
  for (long i = 0; i <= k; ++i) r[i] = a[i] + b[i];
  return r;
}

template <class T>
PowerSeries<T> sub(const PowerSeries<T>& a, const PowerSeries<T>& b) {
  long k = std::min(a.order(), b.order());
  PowerSeries<T> r = truncate(a, k);
  for (long i = 0; i <= k; ++i) r[i] = a[i] - b[i];
  return r;
}

template <class T, class S>
PowerSeries<T> scale(const PowerSeries<T>& a, const S& s) {
  PowerSeries<T> r = a;
  for (auto& x : r.c) x = x * s;
  return r;
}

// Cauchy product truncated at min(order a, order b).
template <class T>
PowerSeries<T> mul(const PowerSeries<T>& a, const PowerSeries<T>& b) {
  long k = std::min(a.order(), b.order());
  PowerSeries<T> r = constant(zero_like(a.c[0]), k);
  for (long i = 0; i <= k; ++i) {
    T acc = zero_like(a.c[0]);
    for (long j = 0; j <= i; ++j) acc = acc + a[j] * b[i - j];
    r[i] = acc;
  }
  return r;
}

// Multiplies by x^n (drops coefficients beyond the stored order).
template <class T>
PowerSeries<T> shift_up(const PowerSeries<T>& a, long n) {
  PowerSeries<T> r = a;
  for (long i = a.order(); i >= 0; --i)
    r[i] = (i >= n) ? a[i - n] : zero_like(a.c[0]);
  return r;
}

// Divides by x^n; the dropped low coefficients must be zero.
template <class T>
PowerSeries<T> shift_down(const PowerSeries<T>& a, long n) {
  for (long i = 0; i < n && i <= a.order(); ++i)
    if (!is_exact_zero(a[i]))
      throw std::invalid_argument("series::shift_down: nonzero low coefficient");
  PowerSeries<T> r;
  r.c.assign(a.c.begin() + std::min<long>(n, a.order() + 1), a.c.end());
  if (r.c.empty()) r.c.push_back(zero_like(a.c[0]));
  return r;
}

// Reciprocal 1/a; requires a[0] != 0.
template <class T>
PowerSeries<T> inverse(const PowerSeries<T>& a) {
  if (is_exact_zero(a[0]))
    throw std::invalid_argument("series::inverse: zero constant term");
  long k = a.order();
  PowerSeries<T> r = constant(zero_like(a.c[0]), k);
  r[0] = one_like(a.c[0]) / a[0];
  for (long i = 1; i <= k; ++i) {
    T acc = zero_like(a.c[0]);
    for (long j = 0; j < i; ++j) acc = acc + r[j] * a[i - j];
    r[i] = -acc / a[0];
  }
  return r;
}

// Quotient a/b; requires b[0] != 0. Truncated at min of the two orders.
template <class T>
PowerSeries<T> div(const PowerSeries<T>& a, const PowerSeries<T>& b) {
  if (is_exact_zero(b[0]))
    throw std::invalid_argument("series::div: zero constant term in divisor");
  long k = std::min(a.order(), b.order());
  PowerSeries<T> r = constant(zero_like(a.c[0]), k);
  for (long i = 0; i <= k; ++i) {
    T acc = a[i];
    for (long j = 0; j < i; ++j) acc = acc - r[j] * b[i - j];
    r[i] = acc / b[0];
  }
  return r;
}

// Composition outer(inner(x)). The inner series must have zero constant
// term; it is treated as exact and zero-padded if shorter than the outer
// series. The result carries the outer truncation order.
template <class T>
PowerSeries<T> compose(const PowerSeries<T>& outer, const PowerSeries<T>& inner) {
  if (!is_exact_zero(inner[0]))
    throw std::invalid_argument("series::compose: inner constant term nonzero");
  long k = outer.order();
  PowerSeries<T> in = pad(inner, k);
  // Horner over coefficients: r = outer[k]; r = r*inner + outer[i].
  PowerSeries<T> r = constant(outer[k], k);
  for (long i = k - 1; i >= 0; --i) {
    r = mul(r, in);
    r[0] = r[0] + outer[i];
  }
  return r;
}

template <class T>
PowerSeries<T> derivative(const PowerSeries<T>& a) {
  if (a.order() == 0) return constant(zero_like(a.c[0]), 0L);
  PowerSeries<T> r = constant(zero_like(a.c[0]), a.order() - 1);
  T n = one_like(a.c[0]);
  for (long i = 1; i <= a.order(); ++i) {
    r[i - 1] = a[i] * n;
    n = n + one_like(a.c[0]);
  }
  return r;
}

// Compositional inverse of f, where f[0] = 0 and f[1] != 0: returns g with
// f(g(x)) = x through the truncation order. Newton iteration doubles the
// number of correct coefficients per step.
template <class T>
PowerSeries<T> reverse(const PowerSeries<T>& f) {
  if (!is_exact_zero(f[0]))
    throw std::invalid_argument("series::reverse: constant term nonzero");
  if (f.order() < 1 || is_exact_zero(f[1]))
    throw std::invalid_argument("series::reverse: vanishing linear term");
  long k = f.order();
  T one = one_like(f.c[0]);
  PowerSeries<T> g;
  g.c = {zero_like(f.c[0]), one / f[1]};
  PowerSeries<T> fp = derivative(f);
  while (g.order() < k) {
    long m = std::min(2 * g.order(), k);
    g = pad(g, m);
    PowerSeries<T> fg = compose(truncate(pad(f, m), m), g);
    fg = sub(fg, identity(f.c[0], m));          // f(g) - x
    PowerSeries<T> fpg = compose(truncate(pad(fp, m), m), g);
    g = sub(g, div(fg, fpg));
  }
  return g;
}

// Series of (1 - x)^e to the requested order; e is any field element.
template <class T>
PowerSeries<T> binomial_pow(const T& e, long order) {
  PowerSeries<T> r = constant(one_like(e), order);
  T j = one_like(e);
  for (long i = 1; i <= order; ++i) {
    // c_i = c_{i-1} * (e - (i-1)) / i * (-1)
    r[i] = -(r[i - 1] * (e - (j - one_like(e))) / j);
    j = j + one_like(e);
  }
  return r;
}

// Square root of a series with positive-constant leading term, computed via
// the binomial series of (1 - u)^{1/2} composed with u = 1 - a/a0.
inline PowerSeries<BigFloat> sqrt(const PowerSeries<BigFloat>& a) {
  if (a[0].sign() <= 0)
    throw std::domain_error("series::sqrt: constant term must be positive");
  long k = a.order();
  PowerSeries<BigFloat> u = constant(zero_like(a.c[0]), k);
  for (long i = 1; i <= k; ++i) u[i] = -(a[i] / a[0]);  // u = 1 - a/a0... sign folded below
  // (a/a0) = 1 - u with u as above, so sqrt(a/a0) = (1-u)^{1/2}.
  BigFloat half = one_like(a.c[0]) / BigFloat(2L, Precision(30));
  PowerSeries<BigFloat> bp = binomial_pow(half, k);
  PowerSeries<BigFloat> s = compose(bp, u);
  return scale(s, odmsum::sqrt(a[0]));
}

template <class T, class X>
X evaluate(const PowerSeries<T>& a, const X& x) {
  X acc = zero_like(x);
  for (long i = a.order(); i >= 0; --i) acc = acc * x + X(a[i]);
  return acc;
}

inline BigFloat evaluate_real(const PowerSeries<BigFloat>& a, const BigFloat& x) {
  BigFloat acc = zero_like(x);
  for (long i = a.order(); i >= 0; --i) acc = acc * x + a[i];
  return acc;
}

inline BigComplex evaluate_complex(const PowerSeries<BigFloat>& a,
                                   const BigComplex& x) {
  BigComplex acc = zero_like(x);
  for (long i = a.order(); i >= 0; --i) acc = acc * x + BigComplex(a[i]);
  return acc;
}

// Coefficient-type conversions.
inline PowerSeries<BigFloat> to_bigfloat(const PowerSeries<Rational>& a,
                                         Precision p) {
  PowerSeries<BigFloat> r;
  r.c.reserve(a.c.size());
  for (const auto& q : a.c) r.c.emplace_back(q, p);
  return r;
}

inline PowerSeries<BigComplex> to_complex(const PowerSeries<BigFloat>& a) {
  PowerSeries<BigComplex> r;
  r.c.reserve(a.c.size());
  for (const auto& x : a.c) r.c.emplace_back(x);
  return r;
}

}  // namespace series
}  // namespace odmsum
