#include <catch2/catch_amalgamated.hpp>

#include <odmsum/mapping.hpp>

using namespace odmsum;

namespace {

BigComplex cplx(const char* re, const char* im, Precision p) {
  return {BigFloat(re, p), BigFloat(im, p)};
}

}  // namespace

TEST_CASE("map values at lambda = 1/2") {
  Precision p(50);
  BigFloat half("0.5", p);
  // 2^{1/4}, (3/4)*2^{3/2}, 2^{3/2}
  CHECK(std::abs(zeta(mapping_a(), half).to_double() - 1.189207115002721) < 1e-15);
  CHECK(std::abs(zeta(mapping_b(), half).to_double() - 2.121320343559642) < 1e-15);
  CHECK(std::abs(zeta(mapping_c(), half).to_double() - 2.828427124746190) < 1e-15);
}

TEST_CASE("closed-form derivative matches central differences") {
  Precision p(60);
  for (char c : {'a', 'b', 'c'}) {
    auto m = mapping_by_letter(c);
    for (const char* pt : {"0.5", "-0.3", "0.9"}) {
      BigFloat x(pt, p);
      BigFloat h = pow10_like(x, -25);
      BigFloat fd = (zeta(m, x + h) - zeta(m, x - h)) / (h + h);
      INFO("map " << c << " at " << pt);
      CHECK(abs(fd - zeta_prime(m, x)).to_double() < 1e-8);
    }
  }
}

TEST_CASE("complex evaluation restricts to the real one") {
  Precision p(50);
  BigFloat x("0.37", p);
  for (char c : {'a', 'b', 'c'}) {
    auto m = mapping_by_letter(c);
    BigComplex z = zeta(m, BigComplex(x));
    CHECK(z.imag().is_zero());
    CHECK(abs(z.real() - zeta(m, x)).to_double() < 1e-45);
  }
}

TEST_CASE("exponent bookkeeping") {
  CHECK(mapping_a().alpha_beta() == Rational(3, 2));
  CHECK(mapping_b().alpha_beta() == Rational(3));
  CHECK(mapping_c().alpha_beta() == Rational(1, 2));
  CHECK(mapping_a().target == Target::affine);
  CHECK(mapping_c().target == Target::direct);
  CHECK(mapping_c(false).prefactor == false);
  CHECK(mapping_by_letter('b').letter() == 'b');
  CHECK_THROWS_AS(mapping_by_letter('q'), std::invalid_argument);
}

TEST_CASE("series expansion of zeta/lambda") {
  auto sa = zeta_over_lambda_series(mapping_a(), 4);
  CHECK(sa[0] == Rational(1));
  CHECK(sa[1] == Rational(5, 4));
  CHECK(sa[2] == Rational(45, 32));
  auto sb = zeta_over_lambda_series(mapping_b(), 4);
  CHECK(sb[1] == Rational(2));
  CHECK(sb[2] == Rational(25, 8));
  auto sc = zeta_over_lambda_series(mapping_c(), 4);
  CHECK(sc[1] == Rational(5, 2));
  CHECK(sc[2] == Rational(35, 8));

  // partial sums approach the closed form inside the unit disk
  Precision p(60);
  BigFloat lam("0.01", p);
  for (char c : {'a', 'b', 'c'}) {
    auto m = mapping_by_letter(c);
    auto s = series::to_bigfloat(zeta_over_lambda_series(m, 30), p);
    BigFloat diff = abs(series::evaluate_real(s, lam) - zeta(m, lam) / lam);
    INFO("map " << c);
    CHECK(diff.to_double() < 1e-55);
  }
}

TEST_CASE("regular factor at the singular point") {
  Precision p(50);
  BigFloat lam("0.3", p);
  for (char c : {'a', 'b', 'c'}) {
    auto m = mapping_by_letter(c);
    auto q = iota_at_one_minus_s(m);
    // iota(1 - s) evaluated at s = 1 - lambda equals zeta * (1-lambda)^alpha
    BigFloat s = one_like(lam) - lam;
    BigFloat acc = zero_like(lam), sp = one_like(lam);
    for (const auto& r : q) {
      acc += rational_like(lam, r) * sp;
      sp *= s;
    }
    BigFloat direct = zeta(m, lam) * pow(one_like(lam) - lam, rational_like(lam, m.alpha));
    INFO("map " << c);
    CHECK(abs(acc - direct).to_double() < 1e-45);
  }
  CHECK(iota_at_one_minus_s(mapping_a()) ==
        std::vector<Rational>{Rational(1), Rational(-1)});
  CHECK(iota_at_one_minus_s(mapping_b()) ==
        std::vector<Rational>{Rational(1, 2), Rational(0), Rational(-1, 2)});
}

TEST_CASE("inversion round trips across the coupling plane") {
  Precision p(50);
  BigFloat rho("0.3", p);
  for (char c : {'a', 'b', 'c'}) {
    auto m = mapping_by_letter(c);
    for (auto [re, im] : {std::pair{"1.0", "2.0"},
                          std::pair{"100.0", "0.0"},
                          std::pair{"0.001", "0.0"},
                          std::pair{"-0.5", "3.0"},
                          std::pair{"-4.0", "-0.25"},
                          std::pair{"0.08", "-0.02"}}) {
      BigComplex g = cplx(re, im, p);
      auto inv = invert_mapping(m, g, rho);
      INFO("map " << c << " g=(" << re << "," << im << ")");
      REQUIRE(inv.converged);
      CHECK(abs(rho * zeta(m, inv.lambda) - g).to_double() < 1e-40);
    }
  }
}

TEST_CASE("positive couplings stay on the real interval (0,1)") {
  Precision p(50);
  BigFloat rho("0.12", p);
  auto m = mapping_a();
  for (const char* gs : {"0.01", "1.0", "1000.0"}) {
    BigComplex g(BigFloat(gs, p), BigFloat(p));
    auto inv = invert_mapping(m, g, rho);
    REQUIRE(inv.converged);
    CHECK(inv.lambda.imag().is_zero());
    CHECK(inv.lambda.real().to_double() > 0.0);
    CHECK(inv.lambda.real().to_double() < 1.0);
  }
}

TEST_CASE("negative axis: sides are conjugate and upper side has Im > 0") {
  Precision p(40);
  BigFloat rho("0.3", p);
  for (char c : {'a', 'b', 'c'}) {
    auto m = mapping_by_letter(c);
    BigFloat neg_zero(p);
    mpfr_set_zero(neg_zero.raw(), -1);
    BigComplex gup(BigFloat("-2.0", p), BigFloat(p));
    BigComplex gdn(BigFloat("-2.0", p), neg_zero);
    auto up = invert_mapping(m, gup, rho);
    auto dn = invert_mapping(m, gdn, rho);
    INFO("map " << c);
    REQUIRE(up.converged);
    REQUIRE(dn.converged);
    CHECK(up.lambda.imag().to_double() > 0.0);
    CHECK(abs(up.lambda - dn.lambda.conj()).to_double() < 1e-15);
    // the displacement regularizing the fold stays microscopic
    BigComplex back = rho * zeta(m, up.lambda);
    CHECK(std::abs(back.imag().to_double()) < 1e-15);
    CHECK(std::abs(back.real().to_double() + 2.0) < 1e-30);
  }
}

TEST_CASE("negative-axis branch agrees with half-plane continuation") {
  Precision p(50);
  BigFloat rho("0.3", p);
  for (char c : {'a', 'b', 'c'}) {
    auto m = mapping_by_letter(c);
    BigComplex gneg(BigFloat("-2.0", p), BigFloat(p));
    auto direct = invert_mapping(m, gneg, rho);
    REQUIRE(direct.converged);

    auto cur = invert_mapping(m, cplx("-2.0", "2.0", p), rho);
    REQUIRE(cur.converged);
    for (const char* im : {"0.5", "0.1", "0.02", "0.004", "1e-6", "1e-12", "1e-20"}) {
      cur = invert_mapping_from(m, cplx("-2.0", im, p), rho, cur.lambda);
      REQUIRE(cur.converged);
    }
    auto fin = invert_mapping_from(m, gneg, rho, cur.lambda);
    REQUIRE(fin.converged);
    INFO("map " << c);
    CHECK(abs(direct.lambda - fin.lambda).to_double() < 1e-20);
  }
}

TEST_CASE("warm starts shortcut the path tracking") {
  Precision p(50);
  BigFloat rho("0.2", p);
  auto m = mapping_b();
  auto i1 = invert_mapping(m, cplx("3.0", "0.5", p), rho);
  REQUIRE(i1.converged);
  auto i2 = invert_mapping_from(m, cplx("3.1", "0.5", p), rho, i1.lambda);
  REQUIRE(i2.converged);
  CHECK(i2.newton_steps <= 15);
  auto full = invert_mapping(m, cplx("3.1", "0.5", p), rho);
  CHECK(abs(i2.lambda - full.lambda).to_double() < 1e-40);
}

TEST_CASE("degenerate inputs") {
  Precision p(40);
  BigFloat rho("0.5", p);
  auto m = mapping_a();
  auto z = invert_mapping(m, BigComplex(p), rho);
  CHECK(z.converged);
  CHECK(is_exact_zero(z.lambda));
  CHECK_THROWS_AS(zeta(m, BigFloat("1.0", p)), std::domain_error);
  CHECK_THROWS_AS(zeta_prime(m, BigFloat("1.5", p)), std::domain_error);
}
