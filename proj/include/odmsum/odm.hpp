#pragma once

#include <map>
#include <stdexcept>
#include <utility>
#include <vector>

#include "mapping.hpp"
#include "polynomial.hpp"
#include "weak_series.hpp"

namespace odmsum {

// ---------------------------------------------------------------------------
// Convergence constants of a mapping: the location of the dominant saddle of
// the order-K remainder and the scales derived from it. lambda_c solves
//   zeta(l)/(l zeta'(l)) + log(-l) = 0 on the real interval (fold, 0),
// and mu_c = -l zeta'(l)/zeta(l)^2 there. R = A mu_c is the large-K scale of
// K rho_K, and C2 = R^{1/alpha} enters the strong-coupling convergence rate.
// ---------------------------------------------------------------------------
struct ConvergenceModel {
  BigFloat lambda_c;
  BigFloat mu_c;
  BigFloat R;         // A * mu_c, with A = 24/5
  BigFloat C2;        // (A * mu_c)^{1/alpha}
  double C3 = 0.0;    // fitted offset of the convergence exponent; 0 if unknown
  bool has_rate = false;
};

inline ConvergenceModel saddle_constants(const MappingSpec& m, Precision prec) {
  BigFloat one(1L, prec);
  auto h = [&](const BigFloat& lam) {
    return zeta(m, lam) / (lam * zeta_prime(m, lam)) + log(-lam);
  };
  // Bracket strictly between the fold of the map (where zeta' = 0 and h has
  // a pole) and the origin; a single sign change lives there.
  BigFloat lo(m.id == MappingId::c ? "-0.60" : "-0.95", prec);
  BigFloat hi("-0.01", prec);
  BigFloat flo = h(lo);
  if (flo.sign() <= 0 || h(hi).sign() >= 0)
    throw std::logic_error("saddle_constants: bracket does not straddle");
  long iters = static_cast<long>(3.33 * prec.digits()) + 16;
  for (long i = 0; i < iters; ++i) {
    BigFloat mid = (lo + hi) / BigFloat(2L, prec);
    if (h(mid).sign() > 0) lo = mid; else hi = mid;
  }
  ConvergenceModel out;
  out.lambda_c = (lo + hi) / BigFloat(2L, prec);
  BigFloat z = zeta(m, out.lambda_c);
  out.mu_c = -out.lambda_c * zeta_prime(m, out.lambda_c) / (z * z);
  out.R = rational_like(one, Rational(24, 5)) * out.mu_c;
  out.C2 = pow(out.R, one / rational_like(one, m.alpha));
  if (m.id == MappingId::a) {
    out.C3 = -13.8;
    out.has_rate = true;
  }
  return out;
}

// ---------------------------------------------------------------------------
// Re-expansion of the target function after the change of variable:
//   prefactor(lambda) * target(rho zeta(lambda)) = sum_L P_L(rho) lambda^L
// with P_L a polynomial of degree L. Stored as the coefficient table
// p[L][j] = coefficient of rho^j in P_L.
// ---------------------------------------------------------------------------
struct RhoPolynomials {
  MappingSpec spec;
  long order = 0;
  Precision prec{30};
  long level = 0;
  std::vector<std::vector<BigFloat>> p;
};

namespace detail {

// Shared table construction over any coefficient field.
template <class T>
std::vector<std::vector<T>> rho_poly_table(const std::vector<T>& target,
                                           const PowerSeries<T>& prefactor,
                                           const PowerSeries<T>& map_over_lambda,
                                           long K) {
  std::vector<std::vector<T>> p(static_cast<size_t>(K) + 1);
  for (long L = 0; L <= K; ++L)
    p[static_cast<size_t>(L)].assign(static_cast<size_t>(L) + 1,
                                     zero_like(target[0]));
  PowerSeries<T> cur = series::truncate(prefactor, K);
  for (long L = 0; L <= K; ++L) {
    for (long d = 0; d + L <= K && d <= cur.order(); ++d)
      p[static_cast<size_t>(d + L)][static_cast<size_t>(L)] =
          target[static_cast<size_t>(L)] * cur[d];
    if (L < K)
      cur = series::truncate(series::mul(cur, map_over_lambda), K - L - 1);
  }
  return p;
}

template <class T>
std::vector<T> target_coefficients(const WeakSeries& w, const MappingSpec& m,
                                   long K, const T& like) {
  long need = (m.target == Target::affine) ? K - 1 : K;
  if (w.order() < need)
    throw std::invalid_argument("rho polynomials: weak series shorter than requested order");
  std::vector<T> t;
  t.reserve(static_cast<size_t>(K) + 1);
  auto lift = [&](const Rational& q) {
    if constexpr (std::is_same_v<T, Rational>)
      return q;
    else
      return rational_like(like, q);
  };
  if (m.target == Target::affine) {
    t.push_back(lift(Rational(1, 3)));
    for (long L = 1; L <= K; ++L)
      t.push_back(lift(w.coeffs[static_cast<size_t>(L - 1)]));
  } else {
    for (long L = 0; L <= K; ++L)
      t.push_back(lift(w.coeffs[static_cast<size_t>(L)]));
  }
  return t;
}

}  // namespace detail

inline RhoPolynomials build_rho_polynomials(const WeakSeries& w,
                                            const MappingSpec& m, long K,
                                            Precision prec) {
  if (w.convention != Convention::paper_main)
    throw std::invalid_argument("rho polynomials: wrong series convention");
  BigFloat like(1L, prec);
  auto target = detail::target_coefficients(w, m, K, like);
  PowerSeries<BigFloat> pre =
      m.prefactor ? series::to_bigfloat(series::binomial_pow(m.alpha_beta(), K), prec)
                  : series::constant(one_like(like), K);
  PowerSeries<BigFloat> z =
      series::to_bigfloat(zeta_over_lambda_series(m, K), prec);
  RhoPolynomials out;
  out.spec = m;
  out.order = K;
  out.prec = prec;
  out.level = w.level;
  out.p = detail::rho_poly_table(target, pre, z, K);
  return out;
}

// Exact-coefficient variant for symbolic checks at small order.
inline std::vector<std::vector<Rational>> rho_polynomials_exact(
    const WeakSeries& w, const MappingSpec& m, long K) {
  if (w.convention != Convention::paper_main)
    throw std::invalid_argument("rho polynomials: wrong series convention");
  auto target = detail::target_coefficients(w, m, K, Rational(0));
  PowerSeries<Rational> pre = m.prefactor
                                  ? series::binomial_pow(m.alpha_beta(), K)
                                  : series::constant(Rational(1), K);
  PowerSeries<Rational> z = zeta_over_lambda_series(m, K);
  return detail::rho_poly_table(target, pre, z, K);
}

inline std::vector<BigFloat> rho_poly_values(const RhoPolynomials& rp,
                                             const BigFloat& rho, long K) {
  if (K > rp.order) throw std::invalid_argument("rho_poly_values: order too large");
  std::vector<BigFloat> v;
  v.reserve(static_cast<size_t>(K) + 1);
  for (long L = 0; L <= K; ++L)
    v.push_back(poly::eval(rp.p[static_cast<size_t>(L)], rho));
  return v;
}

// ---------------------------------------------------------------------------
// Per-order choice of the mapping scale rho_K.
// ---------------------------------------------------------------------------
enum class RhoRule { derivative_roots, value_roots, fitted };

inline const char* rho_rule_tag(RhoRule r) {
  switch (r) {
    case RhoRule::derivative_roots: return "roots";
    case RhoRule::value_roots: return "value-roots";
    case RhoRule::fitted: return "fitted";
  }
  throw std::logic_error("rho_rule_tag: bad rule");
}

struct RhoChoice {
  BigFloat rho;
  bool fallback = false;  // the requested rule could not be followed
};

// Closed-form schedules fitted to the root data. Only maps (a) and (b) have
// published correction terms; for (c) the leading large-K form R/K is used
// and the choice is reported as a fallback.
inline RhoChoice fitted_rho(const MappingSpec& m, const ConvergenceModel& cm,
                            long K, Precision prec) {
  if (K < 1) throw std::invalid_argument("fitted_rho: K must be positive");
  BigFloat one(1L, prec);
  BigFloat lead = to_precision(cm.R, prec) / BigFloat(K, prec);
  auto shifted_pow = [&](long shift, double c_num, double c_den) {
    BigFloat base = pow(BigFloat(K + shift, prec),
                        rational_like(one, Rational(4, 5)));
    return one - BigFloat(c_num, prec) / (base + BigFloat(c_den, prec));
  };
  switch (m.id) {
    case MappingId::a: return {lead * shifted_pow(3, 12.94, 11.97), false};
    case MappingId::b: return {lead * shifted_pow(2, 5.0, 4.6), false};
    case MappingId::c: return {lead, true};
  }
  throw std::logic_error("fitted_rho: bad id");
}

namespace detail {

inline std::vector<BigFloat> poly_derivative_real(const std::vector<BigFloat>& c) {
  std::vector<BigFloat> d;
  if (c.size() <= 1) return d;
  d.reserve(c.size() - 1);
  for (size_t i = 1; i < c.size(); ++i)
    d.push_back(BigFloat(static_cast<long>(i), Precision(30)) * c[i]);
  return d;
}

// Polish a simple real root of c to the working precision of its entries.
inline BigFloat newton_polish_root(const std::vector<BigFloat>& c, BigFloat x) {
  std::vector<BigFloat> d = poly_derivative_real(c);
  for (int it = 0; it < 16; ++it) {
    BigFloat f = poly::eval(c, x);
    BigFloat df = poly::eval(d, x);
    if (df.is_zero()) break;
    x = x - f / df;
  }
  return x;
}

}  // namespace detail

// Chooses rho_K from the polynomial table. Root modes locate real positive
// roots of P'_K (or P_K), keep those within 1% of the largest modulus and
// take the one where the companion polynomial is smallest; they fall back to
// the fitted schedule, flagged, when no real positive root exists.
inline RhoChoice select_rho(const RhoPolynomials& rp, long K, RhoRule rule,
                            const ConvergenceModel& cm) {
  if (K < 1 || K > rp.order)
    throw std::invalid_argument("select_rho: order out of range");
  if (rule == RhoRule::fitted) return fitted_rho(rp.spec, cm, K, rp.prec);

  const std::vector<BigFloat>& pk = rp.p[static_cast<size_t>(K)];
  std::vector<BigFloat> dk = detail::poly_derivative_real(pk);
  const std::vector<BigFloat>& primary =
      (rule == RhoRule::derivative_roots) ? dk : pk;
  const std::vector<BigFloat>& companion =
      (rule == RhoRule::derivative_roots) ? pk : dk;

  RhoChoice fb = fitted_rho(rp.spec, cm, K, rp.prec);
  fb.fallback = true;
  if (poly::degree(primary) < 1) return fb;

  // Locate at moderate precision, then polish the winner.
  Precision locate(48);
  std::vector<BigFloat> lowered;
  lowered.reserve(primary.size());
  for (const auto& c : primary) lowered.push_back(to_precision(c, locate));
  auto rr = poly::poly_roots(lowered, locate);

  std::vector<BigFloat> candidates;
  for (const auto& z : rr.roots) {
    double re = z.real().to_double(), im = z.imag().to_double();
    if (re > 0 && std::abs(im) <= 1e-12 * (1.0 + std::abs(re)))
      candidates.push_back(to_precision(z.real(), rp.prec));
  }
  if (candidates.empty()) return fb;

  BigFloat largest = candidates[0];
  for (const auto& c : candidates) largest = max(largest, c);
  BigFloat window = largest * BigFloat("0.99", rp.prec);
  BigFloat best = largest;
  BigFloat best_companion = abs(poly::eval(companion, largest));
  for (const auto& c : candidates) {
    if (c < window) continue;
    BigFloat side = abs(poly::eval(companion, c));
    if (side < best_companion) {
      best_companion = side;
      best = c;
    }
  }
  BigFloat polished = detail::newton_polish_root(primary, best);
  if (polished.sign() > 0) return {polished, false};
  return fb;
}

// ---------------------------------------------------------------------------
// The order-K approximant at a coupling g.
// ---------------------------------------------------------------------------
struct OdmApproximant {
  long order = 0;
  BigFloat rho;
  BigComplex lambda;
  BigComplex mapped_sum;   // sum_{L<=K} P_L(rho) lambda^L
  BigComplex value;        // E(g)
  BigFloat error_estimate; // |P_{K+1}(rho) lambda^{K+1}| carried back to E units
  bool has_error_estimate = false;
  bool converged = false;
  bool prefactor_sector_ok = true;
};

class OdmEngine {
 public:
  OdmEngine(const WeakSeries& w, MappingSpec m, long max_order, Precision prec,
            RhoRule rule)
      : spec_(m), rule_(rule), prec_(prec) {
    long build = max_order + 1;
    long capacity = (m.target == Target::affine) ? w.order() + 1 : w.order();
    if (build > capacity) build = capacity;
    if (build < max_order)
      throw std::invalid_argument("OdmEngine: weak series shorter than max order");
    polys_ = build_rho_polynomials(w, m, build, prec);
    model_ = saddle_constants(m, prec);
  }

  const MappingSpec& spec() const { return spec_; }
  const RhoPolynomials& polynomials() const { return polys_; }
  const ConvergenceModel& model() const { return model_; }
  Precision precision() const { return prec_; }
  long max_order() const { return polys_.order - 1; }

  const RhoChoice& rho(long K) {
    auto it = rho_cache_.find(K);
    if (it == rho_cache_.end())
      it = rho_cache_.emplace(K, select_rho(polys_, K, rule_, model_)).first;
    return it->second;
  }

  OdmApproximant evaluate(const BigComplex& g, long K) {
    return evaluate_impl(g, K, nullptr);
  }

  OdmApproximant evaluate_warm(const BigComplex& g, long K,
                               const BigComplex& seed) {
    return evaluate_impl(g, K, &seed);
  }

  // Approximants for K = k_lo..k_hi, warm-starting each inversion at the
  // previous lambda.
  std::vector<OdmApproximant> sweep(const BigComplex& g, long k_lo, long k_hi) {
    std::vector<OdmApproximant> out;
    out.reserve(static_cast<size_t>(k_hi - k_lo) + 1);
    const BigComplex* seed = nullptr;
    for (long K = k_lo; K <= k_hi; ++K) {
      out.push_back(evaluate_impl(g, K, seed));
      if (out.back().converged) seed = &out.back().lambda;
    }
    return out;
  }

 private:
  OdmApproximant evaluate_impl(const BigComplex& g, long K,
                               const BigComplex* seed) {
    if (K < 1 || K > polys_.order)
      throw std::invalid_argument("OdmEngine: order out of range");
    OdmApproximant out;
    out.order = K;

    BigComplex gp = promote(g);
    if (is_exact_zero(gp)) {
      // Exact zero coupling: the unperturbed level.
      BigFloat e0 = rational_like(BigFloat(1L, prec_),
                                  Rational(2 * polys_.level + 1, 2));
      out.rho = BigFloat(prec_);
      out.lambda = BigComplex(prec_);
      out.value = BigComplex(e0);
      out.mapped_sum = out.value;
      out.converged = true;
      return out;
    }

    const RhoChoice& rc = rho(K);
    out.rho = rc.rho;
    MappingInversion inv = seed ? invert_mapping_from(spec_, gp, rc.rho, *seed)
                                : invert_mapping(spec_, gp, rc.rho);
    out.lambda = inv.lambda;
    out.converged = inv.converged;
    out.prefactor_sector_ok =
        !(inv.lambda.imag().is_zero() && inv.lambda.real() >= one_like(rc.rho));

    std::vector<BigFloat> pv = rho_poly_values(polys_, rc.rho, K);
    BigComplex s(BigFloat(prec_));
    for (long L = K; L >= 0; --L)
      s = s * out.lambda + BigComplex(pv[static_cast<size_t>(L)]);
    out.mapped_sum = s;

    BigFloat ab = rational_like(out.rho, spec_.alpha_beta());
    BigComplex one_m_lam = BigComplex(one_like(out.rho)) - out.lambda;
    BigFloat undo_scale = one_like(out.rho);
    BigComplex t = s;
    if (spec_.prefactor) {
      BigComplex fac = pow(one_m_lam, -ab);
      t = s * fac;
      undo_scale = abs(fac);
    }
    if (spec_.target == Target::affine) {
      BigFloat third = rational_like(out.rho, Rational(1, 3));
      out.value = (t - BigComplex(third)) / gp;
      undo_scale = undo_scale / abs(gp);
    } else {
      out.value = t;
    }

    if (K + 1 <= polys_.order) {
      BigFloat tail =
          abs(poly::eval(polys_.p[static_cast<size_t>(K + 1)], out.rho));
      out.error_estimate =
          tail * pow(abs(out.lambda), K + 1) * undo_scale;
      out.has_error_estimate = true;
    } else {
      out.error_estimate = BigFloat(prec_);
    }
    return out;
  }

  BigComplex promote(const BigComplex& g) const {
    return {to_precision(g.real(), prec_), to_precision(g.imag(), prec_)};
  }

  MappingSpec spec_;
  RhoRule rule_;
  Precision prec_;
  RhoPolynomials polys_;
  ConvergenceModel model_;
  std::map<long, RhoChoice> rho_cache_;
};

// One-shot convenience wrapper.
inline OdmApproximant odm_sum(const WeakSeries& w, const MappingSpec& m,
                              long K, const BigComplex& g, Precision prec,
                              RhoRule rule = RhoRule::fitted) {
  OdmEngine eng(w, m, K, prec, rule);
  return eng.evaluate(g, K);
}

// ---------------------------------------------------------------------------
// Sequence acceleration. One pass of the Aitken delta-squared transform,
// applied separately to the even- and odd-index subsequences (approximant
// sequences oscillate with order parity), repeated while it stays
// numerically stable.
// ---------------------------------------------------------------------------
template <class T>
struct AcceleratedValue {
  T value;
  BigFloat uncertainty;
  long stages = 0;
};

namespace detail {

template <class T>
std::vector<T> aitken_pass(const std::vector<T>& s, const BigFloat& floor) {
  if (s.size() < 3) return s;
  std::vector<T> t;
  t.reserve(s.size() - 2);
  for (size_t i = 0; i + 2 < s.size(); ++i) {
    T d1 = s[i + 1] - s[i];
    T d2 = s[i + 2] - s[i + 1];
    T den = d2 - d1;
    if (abs(den) <= floor)
      t.push_back(s[i + 2]);
    else
      t.push_back(s[i + 2] - d2 * d2 / den);
  }
  return t;
}

template <class T>
std::pair<T, BigFloat> aitken_limit_single(std::vector<T> s,
                                           const BigFloat& floor,
                                           long max_stages, long& stages) {
  BigFloat last_correction = abs(s.back()) + one_like(floor);
  for (long st = 0; st < max_stages && s.size() >= 3; ++st) {
    std::vector<T> next = aitken_pass(s, floor);
    BigFloat corr = abs(next.back() - s.back());
    s = std::move(next);
    ++stages;
    last_correction = corr;
    if (corr <= floor * BigFloat(10L, Precision(30))) break;
  }
  return {s.back(), last_correction};
}

}  // namespace detail

// Accelerates a sequence of approximant values (indexed by order) and
// returns the extrapolated limit with a heuristic uncertainty: the spread
// between the even- and odd-index extrapolations plus the final correction.
template <class T>
AcceleratedValue<T> aitken_accelerate(const std::vector<T>& seq,
                                      Precision prec) {
  if (seq.size() < 3)
    throw std::invalid_argument("aitken_accelerate: need at least 3 terms");
  BigFloat scale(prec);
  for (const auto& v : seq) scale = max(scale, abs(v));
  BigFloat floor = scale * pow10_like(scale, -(prec.digits() - 4));

  std::vector<T> even, odd;
  for (size_t i = 0; i < seq.size(); ++i)
    (i % 2 ? odd : even).push_back(seq[i]);

  AcceleratedValue<T> out{seq.back(), BigFloat(prec), 0};
  const long kMaxStages = 6;
  if (odd.size() < 3 || even.size() < 3) {
    auto [v, corr] =
        detail::aitken_limit_single(seq, floor, kMaxStages, out.stages);
    out.value = v;
    out.uncertainty = corr;
    return out;
  }
  long st_e = 0, st_o = 0;
  auto [ve, ce] = detail::aitken_limit_single(even, floor, kMaxStages, st_e);
  auto [vo, co] = detail::aitken_limit_single(odd, floor, kMaxStages, st_o);
  out.stages = std::max(st_e, st_o);
  bool pick_even = ce < co;
  out.value = pick_even ? ve : vo;
  out.uncertainty = abs(ve - vo) + (pick_even ? ce : co);
  return out;
}

// ---------------------------------------------------------------------------
// Predicted convergence exponent of the order-K approximant: the model
// log|error| ~ (C3 + C2 Re chi) K^{1/5} with chi = g^{-4/5}, fitted for
// map (a); the associated convergence domain is Re chi > -1.351.
// ---------------------------------------------------------------------------
struct ErrorPrediction {
  double exponent = 0.0;  // natural-log error exponent
  bool in_domain = true;
  bool has_model = false;
};

inline BigComplex coupling_to_chi(const BigComplex& g) {
  Precision p(std::max(30L, approx_digits(g.real())));
  return pow(g, BigFloat(Rational(-4, 5), p));
}

inline ErrorPrediction error_model(const MappingSpec& m,
                                   const ConvergenceModel& cm,
                                   const BigComplex& g, long K) {
  ErrorPrediction out;
  if (!cm.has_rate || m.id != MappingId::a) return out;
  out.has_model = true;
  double re_chi = coupling_to_chi(g).real().to_double();
  double c2 = cm.C2.to_double();
  out.exponent = (cm.C3 - c2 * re_chi) * std::pow(static_cast<double>(K), 0.2);
  out.in_domain = re_chi > -1.351;
  return out;
}

}  // namespace odmsum
