#include <catch2/catch_amalgamated.hpp>

#include <odmsum/bigcomplex.hpp>
#include <odmsum/bigfloat.hpp>
#include <odmsum/polynomial.hpp>
#include <odmsum/power_series.hpp>
#include <odmsum/rational.hpp>

#include "oracle_helpers.hpp"

using namespace odmsum;

namespace {

PowerSeries<Rational> make_series(std::initializer_list<Rational> cs) {
  return PowerSeries<Rational>(std::vector<Rational>(cs));
}

bool close(const BigFloat& a, const BigFloat& b, const BigFloat& tol) {
  return abs(a - b) <= tol;
}

BigFloat tol10(Precision p, long e) { return pow10_like(BigFloat(1L, p), e); }

}  // namespace

TEST_CASE("rational arithmetic is exact and canonical") {
  Rational a(6, -8);
  CHECK(a == Rational(-3, 4));
  CHECK(a.denominator_string() == "4");
  CHECK(a.numerator_string() == "-3");
  CHECK(Rational(-930, 82944) == Rational(-155, 13824));

  // order of evaluation never matters
  oracle::Rng rng(17);
  for (int t = 0; t < 200; ++t) {
    Rational x = rng.rational(), y = rng.rational(), z = rng.rational();
    CHECK((x + y) + z == x + (y + z));
    CHECK((x * y) * z == x * (y * z));
    CHECK(x * (y + z) == x * y + x * z);
  }

  CHECK(Rational(2, 3).pow(3) == Rational(8, 27));
  CHECK(Rational(2, 3).pow(-2) == Rational(9, 4));
  CHECK(Rational("11/288") == Rational(11, 288));
  CHECK_THROWS_AS(Rational(1, 0), std::invalid_argument);
  CHECK_THROWS_AS(Rational(1) / Rational(0), std::domain_error);
}

TEST_CASE("bigfloat precision propagates upward, never down") {
  Precision lo(40), hi(120);
  BigFloat a("1.5", lo), b("2.25", hi);
  CHECK((a + b).prec_bits() == BigFloat(0L, hi).prec_bits());
  CHECK((b / a).prec_bits() == BigFloat(0L, hi).prec_bits());
  // minimum 30-digit floor
  CHECK(Precision(5).digits() == 30);

  // formatting round trip at fixed digit count is deterministic
  BigFloat x("0.333333333333333333333333333", hi);
  CHECK(x.to_string(20) == x.to_string(20));
}

TEST_CASE("bigfloat elementary functions") {
  Precision p(80);
  BigFloat two(2L, p);
  CHECK(close(sqrt(two) * sqrt(two), two, tol10(p, -70)));
  CHECK(close(exp(log(two)), two, tol10(p, -70)));
  CHECK(close(pow(two, BigFloat("0.5", p)), sqrt(two), tol10(p, -70)));
  // gamma(1/2) = sqrt(pi)
  CHECK(close(gamma_fn(BigFloat("0.5", p)), sqrt(BigFloat::pi(p)), tol10(p, -70)));
  CHECK_THROWS_AS(log(BigFloat(-1L, p)), std::domain_error);
}

TEST_CASE("complex principal branch honours the side of the cut") {
  Precision p(60);
  BigFloat zero(p), four(4L, p), mfour(-4L, p);
  BigComplex above(mfour, zero);             // -4 + i0
  BigComplex below(mfour, -zero);            // -4 - i0
  CHECK(arg(above) > BigFloat(3L, p));       // +pi
  CHECK(arg(below) < BigFloat(-3L, p));      // -pi

  BigComplex ra = sqrt(above), rb = sqrt(below);
  CHECK(close(ra.imag(), BigFloat(2L, p), tol10(p, -50)));
  CHECK(close(rb.imag(), BigFloat(-2L, p), tol10(p, -50)));

  // fifth root of -1 + i0 is exp(i pi/5)
  BigComplex z(BigFloat(-1L, p), zero);
  BigComplex r = pow(z, BigFloat(1L, p) / BigFloat(5L, p));
  BigFloat pi5 = BigFloat::pi(p) / BigFloat(5L, p);
  CHECK(close(r.real(), cos(pi5), tol10(p, -50)));
  CHECK(close(r.imag(), sin(pi5), tol10(p, -50)));

  // arithmetic identity (a/b)*b = a
  BigComplex a(BigFloat("1.25", p), BigFloat("-0.5", p));
  BigComplex b(BigFloat("0.75", p), BigFloat("2.0", p));
  BigComplex q = (a / b) * b;
  CHECK(close(q.real(), a.real(), tol10(p, -50)));
  CHECK(close(q.imag(), a.imag(), tol10(p, -50)));
}

TEST_CASE("series product truncates at the smaller operand order") {
  auto a = make_series({1, 2, 3});            // order 2
  auto b = make_series({4, 5, 0});            // 4 + 5x, padded to order 2
  auto r = series::mul(a, b);
  REQUIRE(r.order() == 2);
  CHECK(r[0] == Rational(4));
  CHECK(r[1] == Rational(13));
  CHECK(r[2] == Rational(22));

  auto short_b = make_series({4, 5});         // order 1
  CHECK(series::mul(a, short_b).order() == 1);

  oracle::Rng rng(99);
  for (int t = 0; t < 40; ++t) {
    auto f = oracle::random_series(rng, rng.range(1, 9));
    auto g = oracle::random_series(rng, rng.range(1, 9));
    auto lib = series::mul(f, g);
    auto ref = oracle::mul_reference(f, g);
    REQUIRE(lib.order() == ref.order());
    for (long i = 0; i <= lib.order(); ++i) CHECK(lib[i] == ref[i]);
  }
}

TEST_CASE("series composition") {
  // 1/(1-x) to order 3, composed with x^2: 1 + x^2 through order 3
  auto geo = make_series({1, 1, 1, 1});
  PowerSeries<Rational> x2;
  x2.c = {Rational(0), Rational(0), Rational(1)};
  auto r = series::compose(geo, x2);
  REQUIRE(r.order() == 3);
  CHECK(r[0] == Rational(1));
  CHECK(r[1] == Rational(0));
  CHECK(r[2] == Rational(1));
  CHECK(r[3] == Rational(0));

  // exp-series order 4 composed with x + x^2, cross-checked against a
  // brute-force power accumulation
  auto expo = make_series({Rational(1), Rational(1), Rational(1, 2),
                           Rational(1, 6), Rational(1, 24)});
  PowerSeries<Rational> inner;
  inner.c = {Rational(0), Rational(1), Rational(1), Rational(0), Rational(0)};
  auto lib = series::compose(expo, inner);
  auto ref = oracle::compose_reference(expo, inner);
  REQUIRE(lib.order() == 4);
  for (long i = 0; i <= 4; ++i) CHECK(lib[i] == ref[i]);
  // frozen expected values of the oracle run: 1, 1, 3/2, 7/6, 25/24
  CHECK(lib[2] == Rational(3, 2));
  CHECK(lib[3] == Rational(7, 6));
  CHECK(lib[4] == Rational(25, 24));

  CHECK_THROWS_AS(series::compose(geo, geo), std::invalid_argument);
}

TEST_CASE("series reversion matches fixed-point iteration of the mapping relation") {
  // s(z) reverting z = s (1-s)^{-4/5}: equivalently lambda = 1 - z lambda^{4/5}
  // with lambda = 1 - s. Oracle: fixed-point iteration at z = 1/10.
  Precision p(70);
  long order = 6;
  BigFloat one(1L, p);
  PowerSeries<BigFloat> zs =
      series::mul(series::identity(one, order),
                  series::binomial_pow(BigFloat(-0.8, p), order));
  auto s_of_z = series::reverse(zs);

  BigFloat z = one / BigFloat(10L, p);
  BigFloat lam = one;
  for (int i = 0; i < 400; ++i)
    lam = one - z * pow(lam, BigFloat(0.8, p));
  BigFloat s_direct = one - lam;
  BigFloat s_series = series::evaluate_real(s_of_z, z);
  // order-6 truncation: error ~ |s|^7 ~ 1e-7; check at that scale
  CHECK(close(s_series, s_direct, tol10(p, -6)));

  // the first correction is -1/alpha = -4/5
  CHECK(close(s_of_z[2], BigFloat(-0.8, p), tol10(p, -60)));
}

TEST_CASE("reversion round trip is the identity") {
  oracle::Rng rng(7);
  Precision p(90);
  for (int t = 0; t < 10; ++t) {
    long order = rng.range(4, 12);
    PowerSeries<BigFloat> f;
    f.c.push_back(BigFloat(0L, p));
    f.c.push_back(BigFloat(rng.nonzero_rational(), p));
    for (long i = 2; i <= order; ++i) f.c.push_back(BigFloat(rng.rational(), p));
    auto g = series::reverse(f);
    auto id1 = series::compose(f, g);
    auto id2 = series::compose(g, f);
    for (long i = 0; i <= order; ++i) {
      BigFloat want = (i == 1) ? BigFloat(1L, p) : BigFloat(0L, p);
      CHECK(close(id1[i], want, tol10(p, -70)));
      CHECK(close(id2[i], want, tol10(p, -70)));
    }
  }
}

TEST_CASE("binomial series") {
  Precision p(60);
  auto b = series::binomial_pow(BigFloat("-1.5", p), 2L);
  CHECK(close(b[0], BigFloat(1L, p), tol10(p, -50)));
  CHECK(close(b[1], BigFloat("1.5", p), tol10(p, -50)));
  CHECK(close(b[2], BigFloat("1.875", p), tol10(p, -50)));  // 15/8

  // exponent 1: exactly 1 - x
  auto lin = series::binomial_pow(BigFloat(1L, p), 4L);
  CHECK(lin[0] == BigFloat(1L, p));
  CHECK(lin[1] == BigFloat(-1L, p));
  CHECK(lin[2].is_zero());

  // product property: (1-x)^a (1-x)^b = (1-x)^{a+b}
  oracle::Rng rng(31);
  for (int t = 0; t < 12; ++t) {
    BigFloat ea(rng.rational(9, 7), p), eb(rng.rational(9, 7), p);
    auto pa = series::binomial_pow(ea, 8L);
    auto pb = series::binomial_pow(eb, 8L);
    auto pab = series::binomial_pow(ea + eb, 8L);
    auto prod = series::mul(pa, pb);
    for (long i = 0; i <= 8; ++i) CHECK(close(prod[i], pab[i], tol10(p, -45)));
  }
}

TEST_CASE("series division and inverse") {
  oracle::Rng rng(55);
  for (int t = 0; t < 25; ++t) {
    long order = rng.range(3, 10);
    auto a = oracle::random_series(rng, order);
    auto b = oracle::random_series(rng, order);
    b[0] = rng.nonzero_rational();
    auto q = series::div(series::mul(a, b), b);
    for (long i = 0; i <= order; ++i) CHECK(q[i] == a[i]);
    auto inv = series::inverse(b);
    auto unit = series::mul(inv, b);
    CHECK(unit[0] == Rational(1));
    for (long i = 1; i <= order; ++i) CHECK(unit[i] == Rational(0));
  }
  auto bad = make_series({0, 1});
  CHECK_THROWS_AS(series::inverse(bad), std::invalid_argument);
}

TEST_CASE("series sqrt squares back") {
  Precision p(80);
  PowerSeries<BigFloat> a;
  a.c = {BigFloat(4L, p), BigFloat("1.0", p), BigFloat("-0.25", p),
         BigFloat("0.125", p), BigFloat("2.0", p)};
  auto r = series::sqrt(a);
  auto sq = series::mul(r, r);
  for (long i = 0; i <= a.order(); ++i) CHECK(close(sq[i], a[i], tol10(p, -65)));
}

TEST_CASE("polynomial roots: exact cases") {
  Precision p(60);
  // x^2 - 1
  std::vector<BigFloat> quad = {BigFloat(-1L, p), BigFloat(0L, p), BigFloat(1L, p)};
  auto rr = poly_roots(quad, p);
  REQUIRE(rr.converged);
  REQUIRE(rr.roots.size() == 2);
  std::vector<double> xs = {rr.roots[0].real().to_double(),
                            rr.roots[1].real().to_double()};
  std::sort(xs.begin(), xs.end());
  CHECK(xs[0] == Catch::Approx(-1.0).margin(1e-30));
  CHECK(xs[1] == Catch::Approx(1.0).margin(1e-30));

  // x^3: triple zero root, handled by deflation
  std::vector<BigFloat> cw = {BigFloat(0L, p), BigFloat(0L, p), BigFloat(0L, p),
                              BigFloat(1L, p)};
  auto rz = poly_roots(cw, p);
  REQUIRE(rz.converged);
  REQUIRE(rz.roots.size() == 3);
  for (const auto& z : rz.roots) CHECK(abs(z).is_zero());
}

TEST_CASE("polynomial roots reconstruct the coefficients") {
  Precision p(90);
  oracle::Rng rng(203);
  std::vector<BigFloat> coeffs;
  for (int i = 0; i <= 10; ++i) coeffs.emplace_back(rng.nonzero_rational(9, 5), p);
  auto rr = poly_roots(coeffs, p);
  REQUIRE(rr.converged);
  REQUIRE(rr.roots.size() == 10);

  // rebuild lead * prod (x - r_i) and compare coefficient by coefficient
  std::vector<BigComplex> rebuilt = {BigComplex(BigFloat(1L, p))};
  for (const auto& r : rr.roots) {
    std::vector<BigComplex> nxt(rebuilt.size() + 1, BigComplex(p));
    for (size_t i = 0; i < rebuilt.size(); ++i) {
      nxt[i + 1] += rebuilt[i];
      nxt[i] -= rebuilt[i] * r;
    }
    rebuilt = std::move(nxt);
  }
  BigFloat lead = coeffs.back();
  BigFloat tol = tol10(p, -60);
  for (size_t i = 0; i < coeffs.size(); ++i) {
    CHECK(close(rebuilt[i].real() * lead, coeffs[i], tol));
    CHECK(abs(rebuilt[i].imag() * lead) <= tol);
  }
}

TEST_CASE("real root scan agrees with the simultaneous iteration") {
  Precision p(60);
  // p(x) = (x - 1/4)(x - 1/2)(x - 3) = x^3 - 15/4 x^2 + 19/8 x - 3/8
  std::vector<BigFloat> c = {BigFloat(Rational(-3, 8), p), BigFloat(Rational(19, 8), p),
                             BigFloat(Rational(-15, 4), p), BigFloat(1L, p)};
  auto scan = real_roots_scan(c, BigFloat(0L, p), BigFloat(4L, p), 200, p);
  REQUIRE(scan.size() == 3);
  CHECK(close(scan[0], BigFloat(Rational(1, 4), p), tol10(p, -40)));
  CHECK(close(scan[1], BigFloat(Rational(1, 2), p), tol10(p, -40)));
  CHECK(close(scan[2], BigFloat(3L, p), tol10(p, -40)));

  auto rr = poly_roots(c, p);
  REQUIRE(rr.converged);
  std::vector<double> xs;
  for (const auto& z : rr.roots) xs.push_back(z.real().to_double());
  std::sort(xs.begin(), xs.end());
  CHECK(xs[0] == Catch::Approx(0.25).margin(1e-25));
  CHECK(xs[1] == Catch::Approx(0.5).margin(1e-25));
  CHECK(xs[2] == Catch::Approx(3.0).margin(1e-25));
}
