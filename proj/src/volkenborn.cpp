#include "azeta/volkenborn.hpp"

#include <bit>
#include <map>
#include <mutex>
#include <stdexcept>

#include "azeta/bernoulli.hpp"

namespace azeta {

namespace {

constexpr unsigned long kTwo = 2;

struct Shift {
  long a;        // -v_2(c) ≥ 1
  Rational inv;  // 1/c = 2^a·u
  Rational unit;
};

Shift analyse_shift(const Rational& c, long m) {
  if (m < 1) throw std::invalid_argument("volkenborn: exponent m must be >= 1");
  if (c == 0) throw std::invalid_argument("volkenborn: shift must be nonzero");
  const Valuation v = vp(c, kTwo);
  if (v.value() >= 0) throw std::invalid_argument("volkenborn: need v_2(c) <= -1");
  Shift s{-v.value(), Rational(1 / c), 0};
  Integer twoa = pow2(static_cast<unsigned long>(s.a));
  s.unit = s.inv / Rational(twoa);
  return s;
}

Integer residue_of(const Rational& q, const Integer& modulus) {
  // q is 2-integral; returns q mod modulus.
  Integer inv;
  if (mpz_invert(inv.get_mpz_t(), q.get_den().get_mpz_t(), modulus.get_mpz_t()) == 0) {
    throw std::domain_error("volkenborn: denominator not a 2-adic unit");
  }
  Integer r = q.get_num() * inv;
  mpz_mod(r.get_mpz_t(), r.get_mpz_t(), modulus.get_mpz_t());
  return r;
}

}  // namespace

long volk_series_terms(const Rational& c, long m, long prec) {
  const Shift s = analyse_shift(c, m);
  long j = 0;
  while (s.a * (m + j) - 1 < prec) ++j;
  return j;
}

Padic volk_inverse_power(const Rational& c, long m, long prec) {
  const Shift s = analyse_shift(c, m);
  const long terms = volk_series_terms(c, m, prec);
  if (prec <= 0) return Padic::zero(kTwo, prec);
  const Integer modulus = pow2(static_cast<unsigned long>(prec));
  auto& table = BernoulliTable::global();
  if (terms > 0) table.ensure(static_cast<std::size_t>(terms));

  // term_j = (-1)^j C(m+j-1, j) · u^{m+j} · 2^{a(m+j)-1} · (2 B_j); every factor 2-integral.
  const Integer u = residue_of(s.unit, modulus);
  Integer upow;
  mpz_powm_ui(upow.get_mpz_t(), u.get_mpz_t(), static_cast<unsigned long>(m), modulus.get_mpz_t());
  Integer binom = 1;
  Integer sum = 0;
  for (long j = 0; j < terms; ++j) {
    if (j > 0) {
      binom *= static_cast<unsigned long>(m + j - 1);
      binom /= static_cast<unsigned long>(j);
      upow = (upow * u) % modulus;
    }
    const Rational& b = table.get(static_cast<std::size_t>(j));
    if (b == 0) continue;
    const long shift = s.a * (m + j) - 1;
    if (shift >= prec) continue;
    Integer term = binom * upow * residue_of(Rational(2 * b), modulus);
    mpz_mul_2exp(term.get_mpz_t(), term.get_mpz_t(), static_cast<unsigned long>(shift));
    if (j % 2 == 1) term = -term;
    sum += term;
    mpz_mod(sum.get_mpz_t(), sum.get_mpz_t(), modulus.get_mpz_t());
  }
  return Padic::from_integer_mod(sum, kTwo, prec);
}

Padic translate_shift(const Padic& base, const Rational& c, long m, long k) {
  if (k < 0) throw std::invalid_argument("translate_shift: k must be >= 0");
  Rational correction = 0;
  for (long l = 0; l < k; ++l) {
    Rational x = c + l;
    Rational p = 1;
    for (long e = 0; e < m + 1; ++e) p *= x;
    correction += 1 / p;
  }
  correction *= m;
  return base - correction;
}

Padic translate_shift(const Rational& c, long m, long k, long prec) {
  return translate_shift(volk_inverse_power(c, m, prec), c, m, k);
}

Zeta2Value zeta2(long s, long prec) {
  if (s < 2) throw std::invalid_argument("zeta2: s must be >= 2");
  static std::mutex mu;
  static std::map<long, Padic> memo;
  {
    std::lock_guard lock(mu);
    auto it = memo.find(s);
    if (it != memo.end() && it->second.precision() >= prec) {
      return {s, it->second.with_precision(prec), Zeta2Method::series};
    }
  }
  // prefactor 1/(4(s-1)·4^{s-1}) has valuation -(2s + v_2(s-1)).
  const long guard = 2 * s + vp(Integer(s - 1), kTwo).value();
  const long work = prec + guard;
  const Padic sum = volk_inverse_power(Rational(1, 4), s - 1, work) +
                    volk_inverse_power(Rational(3, 4), s - 1, work);
  Integer scale = pow2(static_cast<unsigned long>(2 * (s - 1))) * 4 * (s - 1);
  Padic value = sum * Rational(Integer(1), scale);
  if (value.precision() > prec) value = value.with_precision(prec);
  {
    std::lock_guard lock(mu);
    auto it = memo.find(s);
    if (it == memo.end() || it->second.precision() < value.precision()) memo.insert_or_assign(s, value);
  }
  return {s, value, Zeta2Method::series};
}

Padic volk_naive(const RationalSampler& f, long level, long prec) {
  if (level < 0 || level > 28) throw std::invalid_argument("volk_naive: level must be in [0, 28]");
  const long work = prec + level;
  Padic sum = Padic::zero(kTwo, work);
  const long count = 1L << level;
  for (long k = 0; k < count; ++k) sum += Padic::from_rational(f(k), kTwo, work);
  return sum * Rational(Integer(1), pow2(static_cast<unsigned long>(level)));
}

Padic volk_naive_residue(const ResidueSampler& f, long level) {
  if (level < 0 || level > 28) throw std::invalid_argument("volk_naive: level must be in [0, 28]");
  std::uint64_t sum = 0;
  const std::uint64_t count = std::uint64_t{1} << level;
  for (std::uint64_t k = 0; k < count; ++k) sum += f(k);
  Integer z;
  mpz_import(z.get_mpz_t(), 1, 1, sizeof(sum), 0, 0, &sum);
  return Padic::from_integer_mod(z, kTwo, 64) * Rational(Integer(1), pow2(static_cast<unsigned long>(level)));
}

Valuation stabilization_digits(const RationalSampler& f, long level, long prec) {
  return agreement(volk_naive(f, level, prec), volk_naive(f, level + 1, prec));
}

std::uint64_t strip_leading_digit(std::uint64_t k) {
  if (k == 0) throw std::invalid_argument("strip_leading_digit: k must be >= 1");
  return k & ~std::bit_floor(k);
}

Valuation triangle_depth(const RationalSampler& f, long depth) {
  if (depth < 1) throw std::invalid_argument("triangle_depth: depth must be >= 1");
  const Rational f0 = f(0);
  Valuation best = vp(f0, kTwo) + 1;
  std::vector<Rational> values{f0};
  values.reserve(static_cast<std::size_t>(depth) + 1);
  for (long k = 1; k <= depth; ++k) values.push_back(f(k));
  for (long k = 1; k <= depth; ++k) {
    const auto uk = static_cast<std::uint64_t>(k);
    const std::uint64_t km = strip_leading_digit(uk);
    const long width = std::bit_width(uk) - 1;  // v_2(k - k_-)
    const Valuation v = vp(Rational(values[k] - values[km]), kTwo) + (-width);
    if (v < best) best = v;
  }
  return best;
}

}  // namespace azeta
