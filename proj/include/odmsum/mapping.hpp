#pragma once

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "bigcomplex.hpp"
#include "polynomial.hpp"
#include "power_series.hpp"

namespace odmsum {

enum class MappingId { a, b, c };

// What function of the energy the summation machinery expands:
//  - affine: 1/3 + g*E(g), which starts at a nonzero constant and makes the
//    mapped series begin at order zero;
//  - direct: E(g) itself.
enum class Target { affine, direct };

// A change of variable g = rho * zeta(lambda) that maps the unit disk in
// lambda onto a region of the coupling plane. zeta is singular at lambda = 1
// with exponent alpha, so g -> infinity there; beta is the power of g that
// the chosen target grows like, and the product alpha*beta controls the
// prefactor (1 - lambda)^{alpha*beta} that tames that growth before the
// series is re-expanded in lambda.
struct MappingSpec {
  MappingId id;
  Rational alpha;
  Rational beta;
  Target target;
  bool prefactor;

  Rational alpha_beta() const { return alpha * beta; }

  char letter() const {
    switch (id) {
      case MappingId::a: return 'a';
      case MappingId::b: return 'b';
      case MappingId::c: return 'c';
    }
    throw std::logic_error("MappingSpec: bad id");
  }
};

inline MappingSpec mapping_a() {
  return {MappingId::a, Rational(5, 4), Rational(6, 5), Target::affine, true};
}

inline MappingSpec mapping_b() {
  return {MappingId::b, Rational(5, 2), Rational(6, 5), Target::affine, true};
}

inline MappingSpec mapping_c(bool prefactor = true) {
  return {MappingId::c, Rational(5, 2), Rational(1, 5), Target::direct,
          prefactor};
}

inline MappingSpec mapping_by_letter(char c, bool c_prefactor = true) {
  switch (c) {
    case 'a': return mapping_a();
    case 'b': return mapping_b();
    case 'c': return mapping_c(c_prefactor);
    default: throw std::invalid_argument("mapping_by_letter: unknown mapping");
  }
}

// zeta(lambda) = q(lambda) * (1 - lambda)^{-alpha} with a small polynomial q.
inline std::vector<Rational> zeta_numerator(const MappingSpec& m) {
  if (m.id == MappingId::b)
    return {Rational(0), Rational(1), Rational(-1, 2)};
  return {Rational(0), Rational(1)};
}

// zeta'(lambda) = q(lambda) * (1 - lambda)^{-alpha-1}.
inline std::vector<Rational> zeta_prime_numerator(const MappingSpec& m) {
  switch (m.id) {
    case MappingId::a: return {Rational(1), Rational(1, 4)};
    case MappingId::b: return {Rational(1), Rational(1, 2), Rational(-1, 4)};
    case MappingId::c: return {Rational(1), Rational(3, 2)};
  }
  throw std::logic_error("zeta_prime_numerator: bad id");
}

namespace detail {

inline std::vector<BigFloat> to_bigfloat_coeffs(const std::vector<Rational>& q,
                                                const BigFloat& like) {
  std::vector<BigFloat> c;
  c.reserve(q.size());
  for (const auto& r : q) c.push_back(rational_like(like, r));
  return c;
}

}  // namespace detail

inline BigFloat zeta(const MappingSpec& m, const BigFloat& lam) {
  BigFloat om = one_like(lam) - lam;
  if (om.sign() <= 0)
    throw std::domain_error("zeta: real branch needs lambda < 1");
  BigFloat num = poly::eval(detail::to_bigfloat_coeffs(zeta_numerator(m), lam), lam);
  return num * pow(om, -rational_like(lam, m.alpha));
}

inline BigFloat zeta_prime(const MappingSpec& m, const BigFloat& lam) {
  BigFloat om = one_like(lam) - lam;
  if (om.sign() <= 0)
    throw std::domain_error("zeta_prime: real branch needs lambda < 1");
  BigFloat num =
      poly::eval(detail::to_bigfloat_coeffs(zeta_prime_numerator(m), lam), lam);
  return num * pow(om, -rational_like(lam, m.alpha + Rational(1)));
}

inline BigComplex zeta(const MappingSpec& m, const BigComplex& lam) {
  BigComplex om = BigComplex(one_like(lam.real())) - lam;
  std::vector<BigFloat> q =
      detail::to_bigfloat_coeffs(zeta_numerator(m), lam.real());
  return poly::eval(q, lam) * pow(om, -rational_like(lam.real(), m.alpha));
}

inline BigComplex zeta_prime(const MappingSpec& m, const BigComplex& lam) {
  BigComplex om = BigComplex(one_like(lam.real())) - lam;
  std::vector<BigFloat> q =
      detail::to_bigfloat_coeffs(zeta_prime_numerator(m), lam.real());
  return poly::eval(q, lam) *
         pow(om, -rational_like(lam.real(), m.alpha + Rational(1)));
}

// zeta(lambda)/lambda as an exact power series in lambda (regular at 0,
// constant term 1). Needed to build the re-expansion polynomials.
inline PowerSeries<Rational> zeta_over_lambda_series(const MappingSpec& m,
                                                     long order) {
  PowerSeries<Rational> s = series::binomial_pow(-m.alpha, order);
  if (m.id == MappingId::b) {
    PowerSeries<Rational> lin{{Rational(1), Rational(-1, 2)}};
    s = series::truncate(series::mul(series::pad(lin, order), s), order);
  }
  return s;
}

// The regular factor iota(lambda) = zeta(lambda) * (1 - lambda)^{alpha},
// written at lambda = 1 - s as a polynomial in s. Drives the expansion
// around the map's singular point.
inline std::vector<Rational> iota_at_one_minus_s(const MappingSpec& m) {
  if (m.id == MappingId::b)
    return {Rational(1, 2), Rational(0), Rational(-1, 2)};
  return {Rational(1), Rational(-1)};
}

struct MappingInversion {
  BigComplex lambda;
  bool converged = false;
  long newton_steps = 0;
};

namespace detail {

inline BigComplex polar_point(const BigFloat& r, double angle) {
  BigFloat th(angle, Precision(std::max(30L, approx_digits(r))));
  return {r * cos(th), r * sin(th)};
}

// Radii (in w = g/rho units) at which zeta' vanishes on the principal
// sheet, i.e. the branch points of the inverse map, together with their
// phases. Continuation paths must not pass between a branch point and the
// target ray, or the solver lands on the wrong sheet.
struct FoldImage {
  double radius;
  double angle;
};

inline std::vector<FoldImage> fold_images(const MappingSpec& m) {
  constexpr double kPi = 3.141592653589793;
  switch (m.id) {
    case MappingId::a:
      // zeta'(-4) = 0, |zeta(-4)| = 4 * 5^{-5/4}
      return {{0.5349922439811376, kPi}};
    case MappingId::b:
      // zeta'(1 +- sqrt 5) = 0, |zeta| = 2 * 5^{-5/4} at both, one image
      // on the negative axis and a conjugate pair on the imaginary axis
      return {{0.2674961219905688, kPi},
              {0.2674961219905688, kPi / 2},
              {0.2674961219905688, -kPi / 2}};
    case MappingId::c:
      // zeta'(-2/3) = 0, |zeta(-2/3)| = (2/3) * (5/3)^{-5/2}
      return {{0.1859032006179560, kPi}};
  }
  throw std::logic_error("fold_images: bad id");
}

// One Newton solve of zeta(lambda) = w from a warm start.
inline bool newton_invert(const MappingSpec& m, const BigComplex& w,
                          BigComplex& lam, long digits, long& steps) {
  BigFloat tol = pow10_like(w.real(), -(digits > 8 ? digits - 4 : 4));
  for (int it = 0; it < 200; ++it) {
    BigComplex f = zeta(m, lam) - w;
    BigComplex dz = zeta_prime(m, lam);
    if (is_exact_zero(dz)) return false;
    BigComplex step = f / dz;
    lam = lam - step;
    ++steps;
    if (abs(step) <= tol * (abs(lam) + one_like(tol))) return true;
  }
  return false;
}

}  // namespace detail

// Solve g = rho * zeta(lambda) for lambda on the principal sheet. Tracks the
// solution along a path of growing |g| so the Newton iterate never strays to
// another branch. A coupling given exactly on the negative real axis is
// displaced into the half plane selected by the sign of its zero imaginary
// part (im = +0 means the upper side), because the map folds there and the
// two sides give complex-conjugate energies.
inline MappingInversion invert_mapping(const MappingSpec& m, BigComplex g,
                                       const BigFloat& rho) {
  long digits = approx_digits(g.real());
  MappingInversion out;
  out.lambda = zero_like(g);
  if (is_exact_zero(g)) {
    out.converged = true;
    return out;
  }
  if (g.imag().is_zero() && g.real().sign() < 0) {
    BigFloat eps = abs(g.real()) * pow10_like(g.real(), -(digits / 2));
    g.imag() = g.imag().signbit() ? -eps : eps;
  }
  BigComplex w = g / rho;
  BigFloat r = abs(w);
  BigFloat small = rational_like(r, Rational(1, 20));
  if (r <= small) {
    // Close to the origin the map is the identity; one solve suffices.
    out.lambda = w;
    out.converged = detail::newton_invert(m, w, out.lambda, digits, out.newton_steps);
    return out;
  }

  // Canonical continuation route: grow |w| along the positive real axis
  // (which carries no branch point of the inverse for any of the maps),
  // then rotate at fixed |w| to the target phase. Where the rotation would
  // pass near a branch point, take a radial detour on the side the target
  // radius already lies on, which keeps the path homotopic to the direct
  // one in the punctured plane.
  std::vector<BigComplex> path;
  const long kRamp = 32;
  BigFloat ratio = pow(r / small, rational_like(r, Rational(1, kRamp)));
  BigFloat rk = small;
  for (long k = 1; k < kRamp; ++k) {
    rk = rk * ratio;
    path.emplace_back(rk, zero_like(rk));
  }
  path.emplace_back(r, zero_like(r));

  BigFloat theta = arg(w);
  double thd = theta.to_double();
  double rd = r.to_double();
  if (!theta.is_zero()) {
    double s = (thd >= 0) ? 1.0 : -1.0;
    double span = s * thd;  // |target phase|

    // A fold on the sweep needs either a detour (crossed well before the
    // endpoint) or finer steps (endpoint sits close to it).
    double fold_angle = -1, fold_radius = 0;
    bool near_fold_radius = false;
    for (const auto& f : detail::fold_images(m)) {
      if (f.angle * s <= 0) continue;  // only folds on the swept side
      double fa = s * f.angle;
      if (rd > 0.85 * f.radius && rd < 1.18 * f.radius && fa < span + 0.25) {
        near_fold_radius = true;
        if (fa < span - 0.12 && fold_angle < 0) {
          fold_angle = fa;
          fold_radius = f.radius;
        }
      }
    }
    double step = near_fold_radius ? 0.04 : 0.1;

    auto arc = [&](double from, double to, const BigFloat& rad) {
      long n = std::max(2L, static_cast<long>(std::ceil((to - from) / step)));
      for (long k = 1; k <= n; ++k)
        path.push_back(detail::polar_point(rad, s * (from + (to - from) * k / n)));
    };
    auto radial = [&](const BigFloat& from, const BigFloat& to, double at) {
      const long n = 6;
      BigFloat q = pow(to / from, rational_like(r, Rational(1, n)));
      BigFloat rr = from;
      for (long k = 1; k <= n; ++k) {
        rr = rr * q;
        path.push_back(detail::polar_point(rr, s * at));
      }
    };

    if (fold_angle > 0) {
      double gap = 0.12;
      BigFloat rdet = r * BigFloat((rd >= fold_radius) ? 1.15 : 1.0 / 1.15,
                                   Precision(std::max(30L, digits)));
      arc(0, fold_angle - gap, r);
      radial(r, rdet, fold_angle - gap);
      arc(fold_angle - gap, fold_angle + gap, rdet);
      radial(rdet, r, fold_angle + gap);
      arc(fold_angle + gap, span, r);
    } else {
      arc(0, span, r);
    }
  }
  path.push_back(w);

  out.lambda = BigComplex(small, zero_like(small));
  bool ok = true;
  for (const auto& wk : path) {
    ok = detail::newton_invert(m, wk, out.lambda, digits, out.newton_steps);
    if (!ok) break;
  }
  if (ok) {
    BigFloat resid = abs(rho * zeta(m, out.lambda) - g);
    ok = resid <= abs(g) * pow10_like(r, -(digits > 16 ? digits - 8 : 8));
  }
  out.converged = ok;
  return out;
}

// Warm-started variant for sweeps where neighbouring calls use nearby
// couplings: one Newton solve from the supplied seed, falling back to the
// full path tracker if the seed does not converge.
inline MappingInversion invert_mapping_from(const MappingSpec& m,
                                            const BigComplex& g,
                                            const BigFloat& rho,
                                            const BigComplex& seed) {
  long digits = approx_digits(g.real());
  MappingInversion out;
  out.lambda = seed;
  out.converged =
      detail::newton_invert(m, g / rho, out.lambda, digits, out.newton_steps);
  if (!out.converged) return invert_mapping(m, g, rho);
  return out;
}

}  // namespace odmsum
