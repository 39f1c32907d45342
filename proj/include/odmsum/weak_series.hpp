#pragma once

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "bigfloat.hpp"
#include "rational.hpp"

namespace odmsum {

// Which normalization of the cubic coupling the coefficients refer to:
//   paper_main:  perturbation i(sqrt(g)/6) x^3, series in g
//   appendix_c:  perturbation sqrt(g) x^3, series in g
// Both share the same underlying x^3 matrix data and differ by a per-order
// rational rescale.
enum class Convention { paper_main, appendix_c };

inline const char* convention_tag(Convention c) {
  return c == Convention::paper_main ? "paper-main" : "appendix-C";
}

inline Convention convention_from_tag(const std::string& s) {
  if (s == "paper-main") return Convention::paper_main;
  if (s == "appendix-C") return Convention::appendix_c;
  throw std::invalid_argument("unknown convention tag '" + s + "'");
}

// Exact weak-coupling expansion E(g) = sum_L coeffs[L] g^L for one oscillator
// level.
struct WeakSeries {
  long level = 0;
  Convention convention = Convention::paper_main;
  std::vector<Rational> coeffs;

  long order() const { return static_cast<long>(coeffs.size()) - 1; }
};

namespace detail {

// Monic eigenpolynomials of L0 = -d^2/2 + x d: h_{n+1} = x h_n - (n/2) h_{n-1}.
inline std::vector<Rational> monic_hermite(long n) {
  std::vector<Rational> prev = {Rational(1)};
  if (n == 0) return prev;
  std::vector<Rational> cur = {Rational(0), Rational(1)};
  for (long k = 1; k < n; ++k) {
    std::vector<Rational> nxt(static_cast<size_t>(k) + 2, Rational(0));
    for (size_t i = 0; i < cur.size(); ++i) nxt[i + 1] += cur[i];
    Rational f(k, 2);
    for (size_t i = 0; i < prev.size(); ++i) nxt[i] -= f * prev[i];
    prev = std::move(cur);
    cur = std::move(nxt);
  }
  return cur;
}

}  // namespace detail

struct WeakGenerationResult {
  WeakSeries series;
  bool truncated = false;  // resource cap hit before the requested order
};

// Generates the weak-coupling coefficients of level N through order K by the
// polynomial recursion in the reduced equation
//     (L0 - N) u_k = -x^3 u_{k-1} + sum_j e_j u_{k-j},
// solved degree by degree from the top; the x^N component fixes e_k and the
// gauge sets the x^N coefficient of u_k (k >= 1) to zero. All arithmetic is
// exact. A non-positive budget means "no cap".
inline WeakGenerationResult weak_coefficients_capped(long level, long orderK,
                                                     Convention conv,
                                                     double budget_seconds) {
  if (level < 0) throw std::invalid_argument("weak_coefficients: level < 0");
  if (orderK < 0) throw std::invalid_argument("weak_coefficients: order < 0");
  const long N = level;
  const long kmax = 2 * orderK;
  auto start = std::chrono::steady_clock::now();

  std::vector<std::vector<Rational>> u;
  u.reserve(static_cast<size_t>(kmax) + 1);
  u.push_back(detail::monic_hermite(N));
  std::vector<Rational> e(static_cast<size_t>(kmax) + 1, Rational(0));

  WeakGenerationResult out;
  out.series.level = level;
  out.series.convention = conv;
  const Rational scale =
      conv == Convention::paper_main ? Rational(-1, 36) : Rational(1);
  out.series.coeffs.push_back(Rational(2 * N + 1, 2));  // E_0 = N + 1/2

  Rational scale_pow(1);
  for (long k = 1; k <= kmax; ++k) {
    if (budget_seconds > 0 && (k & 7L) == 0) {
      std::chrono::duration<double> el = std::chrono::steady_clock::now() - start;
      if (el.count() > budget_seconds) {
        out.truncated = true;
        return out;
      }
    }
    const long deg = 3 * k + N;
    std::vector<Rational> rhs(static_cast<size_t>(deg) + 1, Rational(0));
    // -x^3 u_{k-1}
    const auto& up = u[static_cast<size_t>(k - 1)];
    for (size_t m = 0; m < up.size(); ++m)
      if (!up[m].is_zero()) rhs[m + 3] -= up[m];
    // + sum_{j>=1} e_j u_{k-j}; odd-order e vanish and are skipped fast
    for (long j = 2; j < k; ++j) {
      if (e[static_cast<size_t>(j)].is_zero()) continue;
      const auto& uj = u[static_cast<size_t>(k - j)];
      const Rational& ej = e[static_cast<size_t>(j)];
      for (size_t m = 0; m < uj.size(); ++m)
        if (!uj[m].is_zero()) rhs[m] += ej * uj[m];
    }

    std::vector<Rational> c(static_cast<size_t>(deg) + 1, Rational(0));
    auto tfac = [](long m) { return Rational(m * (m - 1), 2); };
    for (long m = deg; m > N; --m) {
      Rational num = rhs[static_cast<size_t>(m)];
      if (m + 2 <= deg) num += tfac(m + 2) * c[static_cast<size_t>(m + 2)];
      if (!num.is_zero()) c[static_cast<size_t>(m)] = num / Rational(m - N);
    }
    // solvability at x^N determines e_k (u_0 is monic, so the x^N component
    // of the e_k u_0 term has unit weight)
    Rational ek = -rhs[static_cast<size_t>(N)];
    if (N + 2 <= deg) ek -= tfac(N + 2) * c[static_cast<size_t>(N + 2)];
    e[static_cast<size_t>(k)] = ek;
    const auto& u0 = u[0];
    for (long m = N - 1; m >= 0; --m) {
      Rational num = rhs[static_cast<size_t>(m)];
      if (!ek.is_zero() && m < static_cast<long>(u0.size()))
        num += ek * u0[static_cast<size_t>(m)];
      if (m + 2 <= deg) num += tfac(m + 2) * c[static_cast<size_t>(m + 2)];
      if (!num.is_zero()) c[static_cast<size_t>(m)] = num / Rational(m - N);
    }
    u.push_back(std::move(c));

    if ((k & 1L) == 1) {
      // odd orders must come out exactly zero; anything else is a logic error
      if (!ek.is_zero())
        throw std::logic_error("weak_coefficients: odd-order energy nonzero");
    } else {
      scale_pow *= scale;
      out.series.coeffs.push_back(ek * scale_pow);
    }
  }
  return out;
}

inline WeakSeries weak_coefficients(long level, long orderK, Convention conv) {
  return weak_coefficients_capped(level, orderK, conv, 0.0).series;
}

// ---------------------------------------------------------------------------
// Disk cache. Format:
//   # convention=<tag> level=<N> order=<K>
//   L <numerator> <denominator>
// one line per order, ascending. Recomputation reproduces the file
// byte-for-byte, which re-reads verify.

inline std::string weak_cache_text(const WeakSeries& s) {
  std::ostringstream os;
  os << "# convention=" << convention_tag(s.convention) << " level=" << s.level
     << " order=" << s.order() << "\n";
  for (long l = 0; l <= s.order(); ++l) {
    const Rational& q = s.coeffs[static_cast<size_t>(l)];
    os << l << " " << q.numerator_string() << " " << q.denominator_string()
       << "\n";
  }
  return os.str();
}

inline std::filesystem::path weak_cache_path(const std::filesystem::path& dir,
                                             long level, long orderK,
                                             Convention conv) {
  std::ostringstream name;
  name << "weak_" << convention_tag(conv) << "_N" << level << "_K" << orderK
       << ".txt";
  return dir / name.str();
}

inline void write_weak_cache(const WeakSeries& s,
                             const std::filesystem::path& file) {
  std::filesystem::create_directories(file.parent_path());
  std::filesystem::path tmp = file;
  tmp += ".tmp";
  {
    std::ofstream os(tmp, std::ios::binary);
    if (!os) throw std::runtime_error("cannot write " + tmp.string());
    os << weak_cache_text(s);
  }
  std::filesystem::rename(tmp, file);
}

inline WeakSeries read_weak_cache(const std::filesystem::path& file) {
  std::ifstream is(file, std::ios::binary);
  if (!is) throw std::runtime_error("cannot read " + file.string());
  std::string header;
  std::getline(is, header);
  WeakSeries s;
  long order = -1;
  {
    std::istringstream hs(header);
    std::string hash, kv;
    hs >> hash;
    if (hash != "#") throw std::runtime_error("bad cache header: " + header);
    while (hs >> kv) {
      auto eq = kv.find('=');
      if (eq == std::string::npos)
        throw std::runtime_error("bad cache header field: " + kv);
      std::string key = kv.substr(0, eq), val = kv.substr(eq + 1);
      if (key == "convention")
        s.convention = convention_from_tag(val);
      else if (key == "level")
        s.level = std::stol(val);
      else if (key == "order")
        order = std::stol(val);
      else
        throw std::runtime_error("unknown cache header field: " + key);
    }
  }
  if (order < 0) throw std::runtime_error("cache header missing order");
  s.coeffs.reserve(static_cast<size_t>(order) + 1);
  long l;
  std::string num, den;
  while (is >> l >> num >> den) {
    if (l != static_cast<long>(s.coeffs.size()))
      throw std::runtime_error("cache rows out of order in " + file.string());
    s.coeffs.push_back(Rational::from_decimal_strings(num, den));
  }
  if (s.order() != order)
    throw std::runtime_error("cache row count mismatch in " + file.string());
  return s;
}

// Fetches from the cache when a file with matching metadata exists; computes
// and stores otherwise. A cached file with *more* orders than requested is
// not reused (the format pins the order in the name and header), keeping
// reads byte-verifiable.
inline WeakSeries weak_coefficients_cached(long level, long orderK,
                                           Convention conv,
                                           const std::filesystem::path& dir) {
  auto file = weak_cache_path(dir, level, orderK, conv);
  if (std::filesystem::exists(file)) {
    WeakSeries s = read_weak_cache(file);
    if (s.level == level && s.convention == conv && s.order() == orderK)
      return s;
    throw std::runtime_error("cache file " + file.string() +
                             " disagrees with its name");
  }
  WeakSeries s = weak_coefficients(level, orderK, conv);
  write_weak_cache(s, file);
  return s;
}

// ---------------------------------------------------------------------------
// Large-order behaviour. For level n the coefficients grow like
//   E_L ~ (-1)^{L+1} (6/pi^{3/2}) (288^n/n!) Gamma(L+n+1/2) A^{-(L+n+1/2)}
// with A = 24/5 (paper-main convention).

inline BigFloat large_order_asymptotic(long level, long L, Precision prec) {
  BigFloat pi = BigFloat::pi(prec);
  BigFloat a(Rational(24, 5), prec);
  BigFloat half(Rational(1, 2), prec);
  BigFloat lnh = BigFloat(L + level, prec) + half;
  BigFloat pref = BigFloat(6L, prec) / pow(pi, BigFloat(Rational(3, 2), prec));
  pref *= BigFloat(Rational(288, 1).pow(level) / Rational(1), prec);
  Rational nfact(1);
  for (long i = 2; i <= level; ++i) nfact *= Rational(i);
  pref /= BigFloat(nfact, prec);
  BigFloat val = pref * gamma_fn(lnh) / pow(a, lnh);
  if (L % 2 == 0) val = -val;  // sign (-1)^{L+1}
  return val;
}

inline BigFloat large_order_ratio(const WeakSeries& s, long L, Precision prec) {
  if (s.convention != Convention::paper_main)
    throw std::invalid_argument("large_order_ratio: paper-main series required");
  if (L > s.order()) throw std::invalid_argument("large_order_ratio: L beyond series");
  BigFloat el(s.coeffs[static_cast<size_t>(L)], prec);
  return el / large_order_asymptotic(s.level, L, prec);
}

// ---------------------------------------------------------------------------
// Exact bookkeeping for the strong-coupling change of variables obtained by
// shifting away the quadratic term: the energy picks up a linear term
// -xi/12 in the scaled variable, a constant shift, and every level shares a
// universal third-order coefficient.

struct ShiftTransform {
  Rational linear_coefficient;  // coefficient of g^{-4/5} relative to g^{1/5}
  Rational constant_shift;      // coefficient of g^{-6/5}
  Rational universal_chi3;      // level-independent chi^3 coefficient
};

inline ShiftTransform appendixC_strong_form() {
  return ShiftTransform{Rational(-1, 12), Rational(1, 180), Rational(1, 108)};
}

}  // namespace odmsum
