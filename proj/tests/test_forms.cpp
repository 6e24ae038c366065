#include <doctest.h>

#include <cmath>

#include "azeta/forms.hpp"
#include "azeta/ratfun.hpp"
#include "azeta/volkenborn.hpp"

using namespace azeta;

namespace {

Padic at(const Padic& x, long prec) { return x.with_precision(std::min(prec, x.precision())); }

}  // namespace

TEST_CASE("linear forms at small n") {
  const LinearForm f0 = linear_form(0);
  CHECK(f0.rho0 == 0);
  CHECK(f0.rho3 == 768);
  const LinearForm f1 = linear_form(1);
  CHECK(f1.rho0 == -1024);
  CHECK(f1.rho3 == 73728);
  CHECK(linear_form(2).rho3 == 768 * 14944);
  CHECK(rho_doublesum(0) == 1);
  CHECK(rho_doublesum(1) == 96);
  CHECK(rho_doublesum(2) == 14944);
  CHECK(rec_extend(1, 96, 1) == 14944);
  CHECK(rec_extend(0, -1024, 1) == linear_form(2).rho0);
  CHECK_THROWS_AS(rec_extend(1, 96, 0), std::invalid_argument);
}

TEST_CASE("partial fractions, recurrence and double sum agree for n <= 60") {
  auto& table = FormTable::global();
  for (long n = 0; n <= 60; ++n) {
    const LinearForm direct = linear_form(n);
    const LinearForm& rec = table.get(n);
    CHECK(direct.rho0 == rec.rho0);
    CHECK(direct.rho3 == rec.rho3);
    CHECK(direct.rho3 == 768 * Rational(rho_doublesum(n)));
  }
}

TEST_CASE("integrality of the linear forms") {
  for (long n = 0; n <= 80; ++n) {
    const LinearForm& f = FormTable::global().get(n);
    CHECK(f.rho3 != 0);
    if (n >= 1) {
      const Integer d = d_lcm(n);
      Integer d6;
      mpz_pow_ui(d6.get_mpz_t(), d.get_mpz_t(), 6);
      CHECK(is_integer(Rational(f.rho3 * d)));
      CHECK(is_integer(Rational(f.rho0 * d6)));
    }
  }
}

TEST_CASE("determinant identity") {
  const DetVerdict v0 = det_check(0);
  CHECK(v0.pass);
  CHECK(v0.lhs == 3 * Rational(pow2(18)));
  const DetVerdict v1 = det_check(1);
  CHECK(v1.pass);
  CHECK(v1.rhs == 3 * Rational(pow2(29)));
  for (long n = 0; n <= 100; ++n) CHECK(det_check(n).pass);
}

TEST_CASE("S_eval small cases") {
  const Padic s0 = S_eval(0, 96);
  CHECK(s0 == at(zeta2(5, 96).value * Rational(768), 96));
  // R_0'(t+1/2) = -6(t+1/2)^{-4}
  CHECK(at(s0, 90) == at(volk_inverse_power(Rational(1, 2), 4, 96) * Rational(6), 90));
  CHECK(S_eval(1, 96).valuation() >= Valuation(13));
  CHECK_THROWS_AS(S_eval(5, 95), std::invalid_argument);
}

TEST_CASE("S_eval matches the term-by-term shift route") {
  for (long n = 0; n <= 10; ++n) {
    const long prec = 16 * n + 64;
    const Padic a = S_eval(n, prec);
    const Padic b = S_eval_by_shifts(n, prec);
    CHECK(a == b);
  }
}

TEST_CASE("S_eval precision contract") {
  for (long n : {0L, 3L, 9L}) {
    const long prec = 16 * n + 32;
    CHECK(S_eval(n, prec) == S_eval(n, prec + 32).with_precision(prec));
  }
}

TEST_CASE("residue sampler for R_n'(k+1/2) matches exact values") {
  for (long n = 0; n <= 4; ++n) {
    for (std::uint64_t k = 0; k < 40; ++k) {
      const Padic exact = Padic::from_rational(R_prime_half(n, static_cast<long>(k)), 2, 64);
      CHECK(exact.residue().get_ui() == R_prime_half_residue(n, k));
    }
  }
}

TEST_CASE("S_eval agrees with naive Volkenborn sums on stabilized digits") {
  for (long n : {1L, 2L}) {
    const auto f = [n](std::uint64_t k) { return R_prime_half_residue(n, k); };
    const Padic lo = -volk_naive_residue(f, 21);
    const Padic hi = -volk_naive_residue(f, 22);
    const Valuation stable = agreement(lo, hi);
    CHECK(stable >= Valuation(15));
    CHECK(agreement(S_eval(n, 96), hi) >= stable);
  }
}

TEST_CASE("v2 bound values") {
  CHECK(v2_bound(1, 3) == 13);
  CHECK(v2_bound(0, 3) == 3);
  for (long n = 0; n <= 200; ++n) {
    const double x = 16.0 * n + 3 - 6 * std::log2(static_cast<double>(n + 1));
    CHECK(v2_bound(n, 3) == static_cast<long>(std::ceil(x - 1e-9)));
  }
}

TEST_CASE("valuation audit passes for n <= 16") {
  for (long n = 0; n <= 16; ++n) {
    const V2Report r = v2_bound_audit(n, 16 * n + 64, 64);
    CHECK_MESSAGE(r.pass, "n=", n, " measured=", r.measured.to_string(), " bound=", r.bound);
    CHECK_MESSAGE(r.delta_pass, "n=", n, " delta=", r.delta_measured.to_string());
  }
  CHECK(v2_bound_audit(1, 80).bound == 13);
  CHECK_THROWS_AS(v2_bound_audit(2, 95), std::invalid_argument);
}

TEST_CASE("archimedean companion") {
  const ArchimedeanVerdict v0 = archimedean_check(0, 1e-12);
  CHECK(v0.analytic);
  CHECK(v0.pass);
  for (long n = 1; n <= 4; ++n) {
    const ArchimedeanVerdict v = archimedean_check(n, 1e-12);
    CHECK_MESSAGE(v.pass, "n=", n, " gap=", v.gap, " width=", v.width);
    CHECK(std::fabs(v.lhs - v.rhs) <= 1e-12 * v.scale);
  }
  CHECK_THROWS_AS(archimedean_check(13, 1e-12), std::invalid_argument);
  CHECK_THROWS_AS(archimedean_check(2, 1e-12, 10), std::invalid_argument);
}

TEST_CASE("zeta3 quarter-shift and half-shift forms") {
  CHECK_THROWS_AS(zeta3_coincidence(1, 50), std::invalid_argument);
  for (long n = 0; n <= 20; ++n) {
    const CoincidenceVerdict v = zeta3_coincidence(n, 6 * n + 48);
    CHECK(v.lattice.relative_precision() >= 32);
    CHECK(v.binomial.relative_precision() >= 32);
    // The two forms are proportional with factor 2.
    REQUIRE(v.ratio_known);
    CHECK(v.ratio_residue == 2);
    CHECK(at(v.lattice, v.prec) == at(v.binomial * Rational(2), v.prec));
  }
}

TEST_CASE("growth corridor around 2^8") {
  for (long n : {100L, 200L, 400L}) {
    const double g = growth_rate(n);
    CHECK(g >= 240);
    CHECK(g <= 272);
  }
}
