#include <doctest.h>

#include <cmath>

#include "azeta/denominators.hpp"
#include "azeta/ratfun.hpp"

using namespace azeta;

namespace {

long count_tuples(long N) { return (N + 1) * (N + 2) * (N + 3) * (N + 4) / 24; }

}  // namespace

TEST_CASE("integrality audit at n = 1") {
  const ValuationReport r = audit_integrality(1);
  CHECK(r.lemma.all());
  CHECK(r.conjecture.all());
  CHECK(r.witnesses.empty());
  CHECK(r.valuations.empty());  // no primes ≤ 1
}

TEST_CASE("integrality audit sweep n <= 300") {
  for (long n = 1; n <= 300; ++n) {
    const ValuationReport r = audit_integrality(n, n <= 40);
    CHECK(r.lemma.all());
    CHECK_MESSAGE(r.conjecture.all(), "n=", n);
    if (n <= 40) {
      for (unsigned long p : primes_up_to(static_cast<unsigned long>(n))) CHECK(r.valuations.count(p) == 1);
    }
  }
}

TEST_CASE("synthetic denominator 7 at n = 3 is a lemma-level failure") {
  LinearForm bad{3, Rational(1, 7), 5};
  try {
    audit_integrality(bad);
    FAIL("expected a lemma violation");
  } catch (const LemmaViolation& e) {
    const ValuationReport& r = e.report();
    CHECK_FALSE(r.lemma.d6_rho0);
    CHECK(r.lemma.d_rho3);
    CHECK(r.valuations.count(7) == 1);
    CHECK(r.valuations.at(7).first == Valuation(-1));
    CHECK(!r.witnesses.empty());
  }
  // A conjecture-only failure is a finding, not an error.
  // n = 4: d^5 = 2^10·3^5 while Ψ = 2^12·3^5, so 2^{-11} passes every lemma.
  LinearForm soft{4, Rational(1, 2048), 0};
  const ValuationReport r = audit_integrality(soft);
  CHECK(r.lemma.d6_rho0);
  CHECK_FALSE(r.conjecture.d5_rho0);
}

TEST_CASE("prime bound on rho0") {
  CHECK(vp_rho0_audit(1).pass);
  CHECK(!eligible_prime(3, 5));
  CHECK(eligible_prime(5, 5));
  CHECK(!eligible_prime(5, 13));  // 25 ≤ 26
  CHECK(eligible_prime(7, 13));
  for (long n = 1; n <= 150; ++n) {
    const PrimeBoundVerdict v = vp_rho0_audit(n);
    CHECK_MESSAGE(v.pass, "n=", n, " p=", v.witness_prime);
    CHECK(v.min_valuation >= Valuation(-5));
  }
}

TEST_CASE("prime bound cross-checked against direct valuations") {
  for (long n : {20L, 57L, 90L}) {
    const LinearForm& f = FormTable::global().get(n);
    Valuation lo = Valuation::infinity();
    for (unsigned long p : primes_up_to(static_cast<unsigned long>(3 * n))) {
      if (p > 3 && static_cast<double>(p) > std::sqrt(2.0 * static_cast<double>(n))) lo = std::min(lo, vp(f.rho0, p));
    }
    CHECK(vp_rho0_audit(n).min_valuation == lo);
  }
}

TEST_CASE("F at zero matches the closed form") {
  for (long n = 1; n <= 5; ++n) {
    for (long l = 1; l <= n; ++l) {
      const long N = n - l;
      for (long i4 = 0; i4 <= N; ++i4)
        for (long i3 = 0; i3 <= i4; ++i3)
          for (long i2 = 0; i2 <= i3; ++i2)
            for (long i1 = 0; i1 <= i2; ++i1) {
              const QuadIndex i{i1, i2, i3, i4};
              CHECK(quad_sum_F(i, n, l, 0)[0] == quad_F_closed(i, n, l));
            }
    }
  }
  CHECK_THROWS_AS(quad_sum_F({1, 0, 0, 0}, 3, 1, 3), std::invalid_argument);
  CHECK_THROWS_AS(quad_sum_F({0, 0, 0, 3}, 3, 1, 3), std::invalid_argument);
  CHECK_THROWS_AS(quad_sum_F({0, 0, 0, 0}, 3, 1, 4), std::invalid_argument);
}

TEST_CASE("nested convolution equals the brute quadruple sum") {
  for (auto [n, l] : {std::pair{3L, 1L}, {4L, 2L}, {5L, 1L}}) {
    Jet brute(3);
    const long N = n - l;
    for (long i4 = 0; i4 <= N; ++i4)
      for (long i3 = 0; i3 <= i4; ++i3)
        for (long i2 = 0; i2 <= i3; ++i2)
          for (long i1 = 0; i1 <= i2; ++i1) brute += quad_sum_F({i1, i2, i3, i4}, n, l, 3);
    CHECK(brute == quad_sum_total(n, l, 3));
  }
}

TEST_CASE("quadruple-sum identity and rho0 reconstruction") {
  const QuadVerdict v11 = quad_identity_check(1, 1);
  CHECK_MESSAGE(v11.pass(), v11.witness);
  const Jet t11 = T_nl(1, 1, 3);
  CHECK(t11 == Jet::from_coeffs({-128, 0, 256, 512}));
  const QuadVerdict v42 = quad_identity_check(4, 2);
  CHECK_MESSAGE(v42.pass(), v42.witness);
  for (long n = 1; n <= 8; ++n) {
    for (long l = 1; l <= n; ++l) {
      const QuadVerdict v = quad_identity_check(n, l);
      CHECK_MESSAGE(v.pass(), v.witness);
    }
    CHECK(rho0_from_quad_sums(n) == linear_form(n).rho0);
  }
  CHECK_THROWS_AS(quad_identity_check(13, 1), std::invalid_argument);
  CHECK_THROWS_AS(quad_identity_check(3, 4), std::invalid_argument);
}

TEST_CASE("per-term claim") {
  // p = 5 at n = 9 is the smallest interesting case: 25 > 18.
  CHECK(eligible_prime(5, 9));
  for (long n = 1; n <= 14; ++n) {
    const ClaimVerdict v = per_term_claim(n);
    CHECK_MESSAGE(v.pass, v.witness);
    CHECK(v.trivial_pass);
    long expected = 0;
    for (long l = 1; l <= n; ++l) expected += count_tuples(n - l);
    CHECK(v.tuples == expected);
  }
}

TEST_CASE("per-term valuations agree with exact closed-form values") {
  const long n = 9;
  for (long l = 1; l <= n; ++l) {
    const long N = n - l;
    for (long i4 = 0; i4 <= N; ++i4)
      for (long i3 = 0; i3 <= i4; ++i3)
        for (long i2 = 0; i2 <= i3; i2 += 2)
          for (long i1 = 0; i1 <= i2; ++i1) {
            const Rational f = quad_F_closed({i1, i2, i3, i4}, n, l);
            CHECK(vp(f, 5) >= Valuation(-2));
            CHECK(vp(f, 7) >= Valuation(-2));
          }
  }
}

TEST_CASE("lambda cascade on sampled tuples") {
  for (long n : {5L, 9L, 12L}) {
    const ClaimVerdict v = lambda_cascade(n, 40);
    CHECK_MESSAGE(v.pass, v.witness);
    CHECK(v.tuples > 0);
  }
}

TEST_CASE("very-well-poised evaluation") {
  CHECK(vwp_eval({Jet(2, 3), Jet(2, -2)}, 0, 2) == Jet(2, 1));
  for (long n : {1L, 2L, 3L, 5L, 8L}) {
    const Jet j = rho_vwp_jet(n);
    CHECK(j[0] == 0);
    CHECK(j[1] * Rational(pow2(static_cast<unsigned long>(8 * n))) == Rational(rho_doublesum(n)));
    CHECK(j[1] * Rational(pow2(static_cast<unsigned long>(8 * n))) * 768 == linear_form(n).rho3);
  }
  // (1 + a0 - a1)_k hits zero at k = 1 when a1 = a0 + 1.
  CHECK_THROWS_AS(vwp_eval({Jet(1, 2), Jet(1, 3)}, 1, 1), std::domain_error);
}
