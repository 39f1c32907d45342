#pragma once

#include <algorithm>
#include <stdexcept>
#include <vector>

#include "bigcomplex.hpp"
#include "bigfloat.hpp"

namespace odmsum {

// Dense polynomial helpers; coefficients are stored lowest degree first.
namespace poly {

template <class T>
long degree(const std::vector<T>& c) {
  long d = static_cast<long>(c.size()) - 1;
  while (d > 0 && is_exact_zero(c[static_cast<size_t>(d)])) --d;
  return d;
}

inline BigFloat eval(const std::vector<BigFloat>& c, const BigFloat& x) {
  BigFloat acc = zero_like(x);
  for (long i = static_cast<long>(c.size()) - 1; i >= 0; --i)
    acc = acc * x + c[static_cast<size_t>(i)];
  return acc;
}

inline BigComplex eval(const std::vector<BigFloat>& c, const BigComplex& x) {
  BigComplex acc = zero_like(x);
  for (long i = static_cast<long>(c.size()) - 1; i >= 0; --i)
    acc = acc * x + BigComplex(c[static_cast<size_t>(i)]);
  return acc;
}

inline BigComplex eval(const std::vector<BigComplex>& c, const BigComplex& x) {
  BigComplex acc = zero_like(x);
  for (long i = static_cast<long>(c.size()) - 1; i >= 0; --i)
    acc = acc * x + c[static_cast<size_t>(i)];
  return acc;
}

template <class T>
std::vector<T> derivative(const std::vector<T>& c) {
  if (c.size() <= 1) return {zero_like(c[0])};
  std::vector<T> d;
  d.reserve(c.size() - 1);
  T n = one_like(c[0]);
  for (size_t i = 1; i < c.size(); ++i) {
    d.push_back(c[i] * n);
    n = n + one_like(c[0]);
  }
  return d;
}

// Evaluates p and p' in one Horner pass.
inline void eval_with_derivative(const std::vector<BigComplex>& c,
                                 const BigComplex& x, BigComplex& p,
                                 BigComplex& dp) {
  p = zero_like(x);
  dp = zero_like(x);
  for (long i = static_cast<long>(c.size()) - 1; i >= 0; --i) {
    dp = dp * x + p;
    p = p * x + c[static_cast<size_t>(i)];
  }
}

// Scale of the coefficient vector at |x|: sum |c_i| |x|^i. Used to decide
// when a residual is at the noise floor.
inline BigFloat residual_scale(const std::vector<BigComplex>& c,
                               const BigFloat& ax) {
  BigFloat acc = zero_like(ax);
  for (long i = static_cast<long>(c.size()) - 1; i >= 0; --i)
    acc = acc * ax + abs(c[static_cast<size_t>(i)]);
  return acc;
}

}  // namespace poly

struct RootResult {
  std::vector<BigComplex> roots;
  bool converged = false;
  int iterations = 0;
};

namespace detail {

// Starting guesses on circles whose radii come from the upper convex hull of
// (i, log|c_i|) -- the standard Newton-polygon initialization, which copes
// with coefficients spanning hundreds of orders of magnitude.
inline std::vector<BigComplex> aberth_start(const std::vector<BigComplex>& c,
                                            Precision prec) {
  long n = static_cast<long>(c.size()) - 1;
  std::vector<double> lg(static_cast<size_t>(n) + 1);
  std::vector<bool> fin(static_cast<size_t>(n) + 1);
  for (long i = 0; i <= n; ++i) {
    BigFloat a = abs(c[static_cast<size_t>(i)]);
    fin[static_cast<size_t>(i)] = !a.is_zero();
    if (fin[static_cast<size_t>(i)]) {
      // log via mpfr to survive values outside double range
      lg[static_cast<size_t>(i)] = log(a).to_double();
    }
  }
  // Upper convex hull from i=0 to i=n over finite points.
  std::vector<long> hull;
  for (long i = 0; i <= n; ++i) {
    if (!fin[static_cast<size_t>(i)]) continue;
    while (hull.size() >= 2) {
      long a = hull[hull.size() - 2], b = hull[hull.size() - 1];
      double cross = (static_cast<double>(b - a)) * (lg[static_cast<size_t>(i)] - lg[static_cast<size_t>(a)]) -
                     (static_cast<double>(i - a)) * (lg[static_cast<size_t>(b)] - lg[static_cast<size_t>(a)]);
      if (cross >= 0.0)
        hull.pop_back();
      else
        break;
    }
    hull.push_back(i);
  }
  Precision p = prec;
  std::vector<BigComplex> z;
  z.reserve(static_cast<size_t>(n));
  double two_pi = 6.283185307179586;
  for (size_t e = 0; e + 1 < hull.size(); ++e) {
    long i1 = hull[e], i2 = hull[e + 1];
    long m = i2 - i1;  // number of roots attributed to this edge
    double lr = (lg[static_cast<size_t>(i1)] - lg[static_cast<size_t>(i2)]) / static_cast<double>(m);
    // clamp to keep exp() finite; extreme radii re-converge anyway
    lr = std::max(-700.0, std::min(700.0, lr));
    double r = std::exp(lr);
    for (long j = 0; j < m; ++j) {
      double th = two_pi * (static_cast<double>(j) + 0.5) / static_cast<double>(m) +
                  0.7 + 0.4 * static_cast<double>(e);
      z.emplace_back(BigFloat(r * std::cos(th), p), BigFloat(r * std::sin(th), p));
    }
  }
  while (static_cast<long>(z.size()) < n)
    z.emplace_back(BigFloat(0.3, p), BigFloat(0.9, p));
  return z;
}

}  // namespace detail

// All complex roots of a polynomial with real coefficients, via simultaneous
// Aberth-Ehrlich iteration. Exact zero roots are deflated up front. If the
// iteration cap is reached the partial result is returned with
// converged = false.
inline RootResult poly_roots(const std::vector<BigFloat>& coeffs, Precision prec,
                             int max_iter = 400) {
  long deg = poly::degree(coeffs);
  if (deg < 1)
    throw std::invalid_argument("poly_roots: degree must be at least 1");

  // Deflate zero roots (trailing zero coefficients at the constant end).
  long nzero = 0;
  while (nzero < deg && is_exact_zero(coeffs[static_cast<size_t>(nzero)])) ++nzero;

  RootResult out;
  BigFloat fzero(prec);
  for (long i = 0; i < nzero; ++i)
    out.roots.emplace_back(fzero, fzero);

  long n = deg - nzero;
  if (n == 0) {
    out.converged = true;
    return out;
  }

  std::vector<BigComplex> c;
  c.reserve(static_cast<size_t>(n) + 1);
  for (long i = nzero; i <= deg; ++i)
    c.emplace_back(BigFloat(coeffs[static_cast<size_t>(i)]));
  // Normalize by the leading coefficient.
  BigComplex lead = c.back();
  for (auto& x : c) x = x / lead;

  std::vector<BigComplex> z = detail::aberth_start(c, prec);
  std::vector<bool> done(static_cast<size_t>(n), false);

  BigFloat tol = pow10_like(BigFloat(1L, prec), -(prec.digits() - 6));
  int it = 0;
  for (; it < max_iter; ++it) {
    bool all_done = true;
    for (long i = 0; i < n; ++i) {
      if (done[static_cast<size_t>(i)]) continue;
      BigComplex p, dp;
      poly::eval_with_derivative(c, z[static_cast<size_t>(i)], p, dp);
      BigFloat scale = poly::residual_scale(c, abs(z[static_cast<size_t>(i)]));
      if (abs(p) <= scale * tol) {
        done[static_cast<size_t>(i)] = true;
        continue;
      }
      all_done = false;
      if (dp.is_zero()) {
        // nudge off a critical point
        z[static_cast<size_t>(i)] += BigComplex(tol, tol);
        continue;
      }
      BigComplex newton = p / dp;
      BigComplex s(prec);
      for (long j = 0; j < n; ++j) {
        if (j == i) continue;
        BigComplex d = z[static_cast<size_t>(i)] - z[static_cast<size_t>(j)];
        if (d.is_zero()) {
          d = BigComplex(tol, tol);
        }
        s += one_like(d) / d;
      }
      BigComplex denom = one_like(newton) - newton * s;
      if (denom.is_zero()) continue;
      BigComplex corr = newton / denom;
      z[static_cast<size_t>(i)] -= corr;
      BigFloat az = abs(z[static_cast<size_t>(i)]);
      if (abs(corr) <= (az + tol) * tol) {
        // verify via residual on the next sweep
      }
    }
    if (all_done) {
      out.converged = true;
      break;
    }
  }
  out.iterations = it;
  if (!out.converged) {
    // accept roots whose residual is already at the floor
    out.converged = true;
    for (long i = 0; i < n; ++i)
      if (!done[static_cast<size_t>(i)]) out.converged = false;
  }
  for (auto& r : z) out.roots.push_back(std::move(r));
  return out;
}

// Real roots inside [lo, hi] by dense sampling plus bisection. Used as an
// independent cross-check of the simultaneous iteration.
inline std::vector<BigFloat> real_roots_scan(const std::vector<BigFloat>& coeffs,
                                             const BigFloat& lo,
                                             const BigFloat& hi, int samples,
                                             Precision prec) {
  std::vector<BigFloat> roots;
  if (samples < 2) samples = 2;
  BigFloat width = hi - lo;
  BigFloat prev_x = lo;
  BigFloat prev_f = poly::eval(coeffs, prev_x);
  for (int i = 1; i <= samples; ++i) {
    BigFloat x = lo + width * BigFloat(static_cast<double>(i) / samples, prec);
    BigFloat f = poly::eval(coeffs, x);
    if (prev_f.is_zero()) {
      roots.push_back(prev_x);
    } else if (f.sign() * prev_f.sign() < 0) {
      BigFloat a = prev_x, b = x, fa = prev_f;
      for (int k = 0; k < static_cast<int>(3.33 * prec.digits()) + 8; ++k) {
        BigFloat m = (a + b) / BigFloat(2L, prec);
        BigFloat fm = poly::eval(coeffs, m);
        if (fm.is_zero()) {
          a = m;
          b = m;
          break;
        }
        if (fm.sign() * fa.sign() < 0) {
          b = m;
        } else {
          a = m;
          fa = fm;
        }
      }
      roots.push_back((a + b) / BigFloat(2L, prec));
    }
    prev_x = x;
    prev_f = f;
  }
  return roots;
}

}  // namespace odmsum
