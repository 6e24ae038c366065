#include "azeta/exact.hpp"

#include <cmath>
#include <stdexcept>

namespace azeta {

long Valuation::value() const {
  if (infinite_) throw std::domain_error("valuation is +inf");
  return value_;
}

std::string Valuation::to_string() const {
  return infinite_ ? std::string("inf") : std::to_string(value_);
}

bool is_prime(unsigned long p) {
  if (p < 2) return false;
  if (p < 4) return true;
  if (p % 2 == 0) return false;
  for (unsigned long d = 3; d * d <= p; d += 2) {
    if (p % d == 0) return false;
  }
  return true;
}

std::vector<unsigned long> primes_up_to(unsigned long n) {
  std::vector<unsigned long> out;
  if (n < 2) return out;
  std::vector<bool> composite(n + 1, false);
  for (unsigned long i = 2; i <= n; ++i) {
    if (composite[i]) continue;
    out.push_back(i);
    for (unsigned long j = i * i; j <= n; j += i) composite[j] = true;
  }
  return out;
}

namespace {

void require_prime(unsigned long p) {
  if (!is_prime(p)) throw std::invalid_argument("vp: " + std::to_string(p) + " is not prime");
}

long remove_factor(const Integer& x, unsigned long p) {
  if (mpz_divisible_ui_p(x.get_mpz_t(), p) == 0) return 0;
  Integer tmp;
  Integer base(p);
  return static_cast<long>(mpz_remove(tmp.get_mpz_t(), x.get_mpz_t(), base.get_mpz_t()));
}

void require_positive(long n, const char* what) {
  if (n <= 0) throw std::invalid_argument(std::string(what) + ": n must be >= 1");
}

}  // namespace

Valuation vp(const Integer& x, unsigned long p) {
  require_prime(p);
  if (x == 0) return Valuation::infinity();
  return remove_factor(x, p);
}

Valuation vp(const Rational& x, unsigned long p) {
  require_prime(p);
  if (x == 0) return Valuation::infinity();
  return remove_factor(x.get_num(), p) - remove_factor(x.get_den(), p);
}

unsigned long vp_factorial(unsigned long n, unsigned long p) {
  unsigned long v = 0;
  for (unsigned long q = n / p; q > 0; q /= p) v += q;
  return v;
}

Integer d_lcm(long n) {
  require_positive(n, "d_lcm");
  Integer out = 1;
  const auto un = static_cast<unsigned long>(n);
  for (unsigned long p : primes_up_to(un)) {
    unsigned long pk = p;
    while (pk <= un / p) pk *= p;
    out *= pk;
  }
  return out;
}

Integer phi(long n) {
  require_positive(n, "phi");
  Integer out = 1;
  const auto un = static_cast<unsigned long>(n);
  for (unsigned long p : primes_up_to(un)) {
    // p > sqrt(2n) compared as p^2 > 2n
    if (p > 3 && p * p > 2 * un) out *= p;
  }
  return out;
}

Integer psi(long n) {
  require_positive(n, "psi");
  Integer out = 1;
  const auto un = static_cast<unsigned long>(n);
  for (unsigned long p : primes_up_to(un)) {
    unsigned long e = 0;
    for (unsigned long pk = p; pk <= un; pk *= p) {
      ++e;
      if (pk > un / p) break;
    }
    const unsigned long exponent = std::min(6 * e, 5 * vp_factorial(un, p));
    Integer pe;
    mpz_ui_pow_ui(pe.get_mpz_t(), p, exponent);
    out *= pe;
  }
  return out;
}

Integer factorial(unsigned long n) {
  Integer out;
  mpz_fac_ui(out.get_mpz_t(), n);
  return out;
}

Integer binomial(unsigned long n, unsigned long k) {
  Integer out;
  mpz_bin_uiui(out.get_mpz_t(), n, k);
  return out;
}

Integer central_binomial(unsigned long m) { return binomial(2 * m, m); }

Integer pow2(unsigned long e) {
  Integer out;
  mpz_ui_pow_ui(out.get_mpz_t(), 2, e);
  return out;
}

Rational fraction(long num, long den) {
  if (den == 0) throw std::invalid_argument("fraction: zero denominator");
  Rational q(num, den);
  q.canonicalize();
  return q;
}

bool is_integer(const Rational& q) { return q.get_den() == 1; }

double log_abs(const Integer& x) {
  if (x == 0) throw std::domain_error("log_abs of zero");
  long exp = 0;
  const double mant = mpz_get_d_2exp(&exp, x.get_mpz_t());
  return std::log(std::fabs(mant)) + static_cast<double>(exp) * std::log(2.0);
}

double log_abs(const Rational& x) { return log_abs(x.get_num()) - log_abs(x.get_den()); }

std::string to_fraction_string(const Rational& q) {
  return q.get_num().get_str() + "/" + q.get_den().get_str();
}

Rational parse_fraction(const std::string& text) {
  Rational out;
  if (out.set_str(text, 10) != 0) throw std::invalid_argument("not a fraction: " + text);
  out.canonicalize();
  return out;
}

}  // namespace azeta
