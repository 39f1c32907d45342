#include <catch2/catch_amalgamated.hpp>

#include <odmsum/weak_series.hpp>

#include <filesystem>
#include <fstream>

#include "matrix_rs_oracle.hpp"

using namespace odmsum;

TEST_CASE("ground level coefficients: exact low orders") {
  auto s = weak_coefficients(0, 3, Convention::paper_main);
  REQUIRE(s.order() == 3);
  CHECK(s.coeffs[0] == Rational(1, 2));
  CHECK(s.coeffs[1] == Rational(11, 288));
  CHECK(s.coeffs[2] == Rational(-930, 288 * 288));
  // frozen from the matrix oracle run
  CHECK(s.coeffs[3] == Rational(39709, 5971968));
}

TEST_CASE("first excited level starts at 3/2") {
  auto s = weak_coefficients(1, 2, Convention::paper_main);
  CHECK(s.coeffs[0] == Rational(3, 2));
  CHECK(s.coeffs[1] == Rational(71, 288));
  CHECK(s.coeffs[2] == Rational(-625, 4608));
}

TEST_CASE("generator agrees with matrix perturbation theory") {
  for (long n = 0; n <= 2; ++n) {
    auto lib = weak_coefficients(n, 6, Convention::paper_main);
    auto ref = oracle::matrix_rs_weak(n, 6);
    for (long l = 0; l <= 6; ++l) {
      INFO("level " << n << " order " << l);
      CHECK(lib.coeffs[static_cast<size_t>(l)] == ref[static_cast<size_t>(l)]);
    }
  }
}

TEST_CASE("real-cubic convention rescales the same data") {
  auto lib = weak_coefficients(0, 3, Convention::appendix_c);
  auto ref = oracle::matrix_rs_weak(0, 3, false);
  for (long l = 0; l <= 3; ++l)
    CHECK(lib.coeffs[static_cast<size_t>(l)] == ref[static_cast<size_t>(l)]);
  // classic textbook value for the real cubic: second order is -11/8
  CHECK(lib.coeffs[1] == Rational(-11, 8));
  CHECK(lib.coeffs[2] == Rational(-465, 32));
}

TEST_CASE("signs alternate as (-1)^{L+1}") {
  for (long n = 0; n <= 2; ++n) {
    auto s = weak_coefficients(n, 30, Convention::paper_main);
    for (long l = 1; l <= 30; ++l) {
      INFO("level " << n << " order " << l);
      CHECK(s.coeffs[static_cast<size_t>(l)].sign() == ((l % 2) ? 1 : -1));
    }
  }
}

TEST_CASE("large-order ratio trends toward one") {
  auto s = weak_coefficients(0, 42, Convention::paper_main);
  Precision p(60);
  BigFloat r30 = large_order_ratio(s, 30, p);
  BigFloat r42 = large_order_ratio(s, 42, p);
  // frozen from the oracle run: 0.9502 at L=30, approaching 1 from below
  CHECK(std::abs(r30.to_double() - 0.950157) < 5e-4);
  CHECK(r42.to_double() > r30.to_double());
  CHECK(r42.to_double() < 1.0);
}

TEST_CASE("cache round trip is byte identical") {
  namespace fs = std::filesystem;
  fs::path dir = fs::temp_directory_path() / "odmsum_test_cache";
  fs::remove_all(dir);

  auto s = weak_coefficients_cached(0, 8, Convention::paper_main, dir);
  auto file = weak_cache_path(dir, 0, 8, Convention::paper_main);
  REQUIRE(fs::exists(file));

  std::ifstream is(file, std::ios::binary);
  std::string bytes((std::istreambuf_iterator<char>(is)),
                    std::istreambuf_iterator<char>());
  CHECK(bytes == weak_cache_text(s));
  CHECK(bytes.rfind("# convention=paper-main level=0 order=8\n", 0) == 0);
  CHECK(bytes.find("\n1 11 288\n") != std::string::npos);

  // a second fetch reads the file and reproduces the same series
  auto s2 = weak_coefficients_cached(0, 8, Convention::paper_main, dir);
  REQUIRE(s2.order() == s.order());
  for (long l = 0; l <= s.order(); ++l)
    CHECK(s2.coeffs[static_cast<size_t>(l)] == s.coeffs[static_cast<size_t>(l)]);
  CHECK(weak_cache_text(s2) == bytes);

  // tampering with the header is caught
  {
    std::ofstream os(file, std::ios::binary);
    os << "# convention=paper-main level=3 order=8\n0 1 2\n";
  }
  CHECK_THROWS_AS(weak_coefficients_cached(0, 8, Convention::paper_main, dir),
                  std::runtime_error);
  fs::remove_all(dir);
}

TEST_CASE("resource cap yields a truncated partial series") {
  auto r = weak_coefficients_capped(0, 4000, Convention::paper_main, 0.05);
  CHECK(r.truncated);
  CHECK(r.series.order() < 4000);
  CHECK(r.series.coeffs[0] == Rational(1, 2));
}

TEST_CASE("strong-coupling shift bookkeeping is exact") {
  auto t = appendixC_strong_form();
  CHECK(t.linear_coefficient == Rational(-1, 12));
  CHECK(t.constant_shift == Rational(1, 180));
  CHECK(t.universal_chi3 == Rational(1, 108));
}
