#include <doctest.h>

#include <random>

#include "azeta/bernoulli.hpp"
#include "azeta/volkenborn.hpp"

using namespace azeta;

namespace {

Rational inverse_power(const Rational& x, long m) {
  Rational p = 1;
  for (long i = 0; i < m; ++i) p *= x;
  return 1 / p;
}

RationalSampler shifted_inverse(Rational c, long m) {
  return [c, m](long k) { return inverse_power(Rational(c + k), m); };
}

Padic at(const Padic& x, long prec) { return x.with_precision(std::min(prec, x.precision())); }

}  // namespace

TEST_CASE("series term count follows the tail bound") {
  // a = 1: need m + J - 1 >= prec
  CHECK(volk_series_terms(Rational(1, 2), 4, 64) == 61);
  // a = 2: 2(m+J) - 1 >= prec
  CHECK(volk_series_terms(Rational(1, 4), 1, 64) == 32);
  CHECK_THROWS_AS(volk_inverse_power(Rational(3), 2, 64), std::invalid_argument);
  CHECK_THROWS_AS(volk_inverse_power(Rational(1, 3), 2, 64), std::invalid_argument);
  CHECK_THROWS_AS(volk_inverse_power(Rational(1, 2), 0, 64), std::invalid_argument);
}

TEST_CASE("inverse-power integral at 1/2 with m=1 vanishes") {
  const Padic v = volk_inverse_power(Rational(1, 2), 1, 64);
  CHECK(v.is_zero_at_precision());
  CHECK(v.precision() == 64);
}

TEST_CASE("zeta2 vanishes at even arguments") {
  for (long s : {2L, 4L, 6L, 8L}) {
    const Zeta2Value z = zeta2(s, 64);
    CHECK(z.value.is_zero_at_precision());
    CHECK(z.value.precision() >= 64);
  }
  CHECK_THROWS_AS(zeta2(1, 64), std::invalid_argument);
}

TEST_CASE("half-shift integrals equal (s-1)·2^s·zeta2(s)") {
  for (long s = 2; s <= 8; ++s) {
    const Padic lhs = volk_inverse_power(Rational(1, 2), s - 1, 64) * Rational(1, s - 1);
    const Padic rhs = zeta2(s, 64).value * Rational(pow2(static_cast<unsigned long>(s)));
    const long prec = std::min({lhs.precision(), rhs.precision(), 64L});
    CHECK(at(lhs, prec) == at(rhs, prec));
  }
  const Padic z5 = zeta2(5, 200).value;
  const Padic via_half = volk_inverse_power(Rational(1, 2), 4, 200) * Rational(1, 128);
  CHECK(at(z5, 190) == at(via_half, 190));
  CHECK(!z5.is_zero_at_precision());
}

TEST_CASE("zeta2 memo serves lower precision consistently") {
  const Padic hi = zeta2(5, 400).value;
  const Padic lo = zeta2(5, 100).value;
  CHECK(lo == hi.with_precision(100));
  CHECK(hi.precision() == 400);
}

TEST_CASE("naive sums: constants, monomials and Bernoulli law") {
  const Padic one = volk_naive([](long) { return Rational(1); }, 12, 40);
  CHECK(one == Padic::from_rational(Rational(1), 2, 40));
  const Padic t1 = volk_naive([](long k) { return Rational(k); }, 20, 40);
  CHECK(agreement(t1, Padic::from_rational(Rational(-1, 2), 2, 40)) >= Valuation(19));
  const Padic t2 = volk_naive([](long k) -> Rational { return Rational(k) * k; }, 20, 40);
  CHECK(agreement(t2, Padic::from_rational(Rational(1, 6), 2, 40)) >= Valuation(18));
  for (long j = 0; j <= 6; ++j) {
    const Padic v = volk_naive(
        [j](long k) {
          Rational p = 1;
          for (long i = 0; i < j; ++i) p *= k;
          return p;
        },
        20, 40);
    CHECK(agreement(v, Padic::from_rational(bernoulli(static_cast<std::size_t>(j)), 2, 40)) >= Valuation(15));
  }
  CHECK_THROWS_AS(volk_naive([](long) { return Rational(1); }, 29, 10), std::invalid_argument);
}

TEST_CASE("series agrees with the naive oracle on every stabilized digit") {
  const auto f = shifted_inverse(Rational(1, 4), 1);
  const Padic series = volk_inverse_power(Rational(1, 4), 1, 64);
  const Padic naive19 = volk_naive(f, 19, 64);
  const Padic naive20 = volk_naive(f, 20, 64);
  const Valuation stable = agreement(naive19, naive20);
  CHECK(stable >= Valuation(10));
  CHECK(agreement(series, naive20) >= stable);
}

TEST_CASE("translation formula") {
  const Padic base = volk_inverse_power(Rational(1, 2), 3, 80);
  CHECK(translate_shift(Rational(1, 2), 3, 0, 80) == base);
  CHECK_THROWS_AS(translate_shift(Rational(1, 2), 3, -1, 80), std::invalid_argument);

  const auto f = shifted_inverse(Rational(3, 2), 4);
  const Padic shifted = translate_shift(Rational(1, 2), 4, 1, 80);
  const Padic n19 = volk_naive(f, 19, 64);
  const Padic n20 = volk_naive(f, 20, 64);
  const Valuation stable = agreement(n19, n20);
  CHECK(stable >= Valuation(10));
  CHECK(agreement(shifted, n20) >= stable);

  // i = 3, k = 2: 4·2^5·zeta2(5) - 4·Σ_{ℓ=1..2} (ℓ-1/2)^{-5}
  const long i = 3;
  const long k = 2;
  Rational finite = 0;
  for (long l = 1; l <= k; ++l) finite += inverse_power(Rational(l) - Rational(1, 2), i + 2);
  const Padic expected =
      zeta2(i + 2, 120).value * Rational((i + 1) * (1L << (i + 2))) - Rational((i + 1) * finite);
  const Padic got = translate_shift(Rational(1, 2), i + 1, k, 100);
  const long prec = std::min(expected.precision(), got.precision());
  CHECK(prec >= 90);
  CHECK(at(expected, prec) == at(got, prec));
}

TEST_CASE("naive stabilization grows with the level") {
  const std::vector<RationalSampler> integrands = {shifted_inverse(Rational(1, 4), 1),
                                                   shifted_inverse(Rational(1, 2), 4),
                                                   shifted_inverse(Rational(3, 4), 2)};
  for (const auto& f : integrands) {
    Valuation prev = stabilization_digits(f, 8, 64);
    for (long level = 10; level <= 16; level += 2) {
      const Valuation cur = stabilization_digits(f, level, 64);
      CHECK(cur > prev);
      prev = cur;
    }
  }
}

TEST_CASE("residue sampler matches the rational sampler") {
  // f(k) = (2k+1)^{-2} is a 2-adic unit for every k.
  const auto rational = [](long k) { return inverse_power(Rational(2 * k + 1), 2); };
  const auto residue = [](std::uint64_t k) {
    std::uint64_t x = 2 * k + 1;
    std::uint64_t inv = x;
    for (int i = 0; i < 6; ++i) inv *= 2 - x * inv;
    return inv * inv;
  };
  const Padic a = volk_naive(rational, 12, 52);
  const Padic b = volk_naive_residue(residue, 12);
  CHECK(b.precision() == 52);
  CHECK(a == b);
}

TEST_CASE("triangle depth") {
  CHECK(strip_leading_digit(13) == 5);
  CHECK(strip_leading_digit(1) == 0);
  CHECK(strip_leading_digit(16) == 0);
  const auto binom6 = [](long t) { return Rational(binomial(static_cast<unsigned long>(t + 6), 6)); };
  CHECK(triangle_depth(binom6, 64) >= Valuation(-2));
  const auto quad = [](long t) { return Rational(1 + t + t * t); };
  for (long K : {1L, 7L, 64L, 300L}) CHECK(triangle_depth(quad, K) >= Valuation(0));

  std::mt19937_64 rng(5);
  std::uniform_int_distribution<long> coeff(-40, 40);
  std::uniform_int_distribution<long> den(1, 16);
  for (int trial = 0; trial < 25; ++trial) {
    std::vector<Rational> a;
    std::vector<Rational> b;
    for (int i = 0; i < 5; ++i) {
      a.emplace_back(coeff(rng), den(rng));
      b.emplace_back(coeff(rng), den(rng));
      a.back().canonicalize();
      b.back().canonicalize();
    }
    const auto poly = [](const std::vector<Rational>& c) {
      return [c](long t) {
        Rational acc = 0;
        for (auto it = c.rbegin(); it != c.rend(); ++it) acc = acc * t + *it;
        return acc;
      };
    };
    const auto f = poly(a);
    const auto g = poly(b);
    Rational C(coeff(rng) == 0 ? 3 : coeff(rng), den(rng));
    if (C == 0) C = 5;
    C.canonicalize();
    Valuation prev = Valuation::infinity();
    for (long K = 1; K <= 128; K *= 2) {
      const Valuation tf = triangle_depth(f, K);
      CHECK(tf <= prev);
      prev = tf;
    }
    const Valuation tf = triangle_depth(f, 64);
    const Valuation tg = triangle_depth(g, 64);
    const Valuation tsum = triangle_depth([&](long t) { return Rational(f(t) + g(t)); }, 64);
    CHECK(tsum >= std::min(tf, tg));
    const Valuation tc = triangle_depth([&](long t) { return Rational(C * f(t)); }, 64);
    CHECK(tc == tf + vp(C, 2).value());
  }
}
