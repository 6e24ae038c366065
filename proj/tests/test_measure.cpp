#include <doctest.h>

#include <cmath>

#include "azeta/forms.hpp"
#include "azeta/measure.hpp"

using namespace azeta;

TEST_CASE("bel bound") {
  const double l2 = std::log(2.0);
  CHECK(bel_bound(2, 1) == doctest::Approx(2.0));
  CHECK_THROWS_AS(bel_bound(1, 2), std::invalid_argument);
  CHECK_THROWS_AS(bel_bound(1, 0), std::invalid_argument);
  CHECK_THROWS_AS(bel_bound(1, 1), std::invalid_argument);
  const double mu = bel_bound(16 * l2, 8 * l2 + 5);
  CHECK(std::floor(mu * 1e6) == 20342651.0);
  CHECK(16 * l2 > 8 * l2 + 5);
}

TEST_CASE("scale valuation is 6 floor(log2 n)") {
  for (long n = 1; n <= 200; ++n) {
    CHECK(phi(n) % 2 == 1);
    const long fl = static_cast<long>(std::floor(std::log2(static_cast<double>(n)) + 1e-12));
    CHECK(vp(hat_scale(n), 2) == Valuation(6 * fl));
  }
  CHECK(hat_scale(1) == 1);
}

TEST_CASE("rates up to 64") {
  const Certificate c = empirical_rates(64, PrecisionPolicy{}, 64);
  REQUIRE(c.rows.size() == 64);
  CHECK(c.alpha_all());
  CHECK(c.nonvanishing_all());
  for (const RateRow& r : c.rows) {
    CHECK(r.v2_scale_matches);
    CHECK_FALSE(r.lower_only);
    CHECK(r.alpha_n >= r.alpha_bound_n - 1e-12);
    CHECK(r.prec == 16 * r.n + 64);
  }
  const double beta = 8 * std::log(2.0) + 5;
  CHECK(std::fabs(c.rows.back().beta_n - beta) <= 0.35);
  CHECK(c.mu_bound == doctest::Approx(20.342651).epsilon(1e-7));
}

TEST_CASE("a_n, b_n at n = 1") {
  const RateRow r = rate_row(1, PrecisionPolicy{});
  const LinearForm& f = FormTable::global().get(1);
  CHECK(Rational(r.a) == f.rho0);
  CHECK(Rational(r.b) == f.rho3);
  CHECK_THROWS_AS(rate_row(1, PrecisionPolicy{32}), std::invalid_argument);
  CHECK_THROWS_AS(rate_row(0, PrecisionPolicy{}), std::invalid_argument);
}

TEST_CASE("wedge matches the scaled determinant for n <= 200") {
  for (long n = 1; n <= 200; ++n) {
    const NonvanishingVerdict v = nonvanishing_check(n);
    CHECK_MESSAGE(v.nonzero, "n=", n);
    CHECK_MESSAGE(v.matches_det, "n=", n);
  }
}

TEST_CASE("lightened rate against 16 log 2") {
  const double a = 16 * std::log(2.0);
  // The o(n) term is still visible at n = 200; the last violation up to 20000 is n = 2864.
  CHECK(lightened_rate(200) > a);
  CHECK(lightened_rate(2864) > a);
  for (long n = 2865; n <= 4000; n += 5) CHECK_MESSAGE(lightened_rate(n) < a, "n=", n);
}
