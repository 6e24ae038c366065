#pragma once

#include <gmpxx.h>

#include <compare>
#include <cstdint>
#include <string>
#include <vector>

namespace azeta {

using Integer = mpz_class;
using Rational = mpq_class;

/// An element of Z ∪ {+∞}, the codomain of a p-adic valuation.
class Valuation {
 public:
  constexpr Valuation(long v) : value_(v) {}  // NOLINT(google-explicit-constructor)

  static constexpr Valuation infinity() {
    Valuation v(0);
    v.infinite_ = true;
    return v;
  }

  constexpr bool is_infinite() const { return infinite_; }

  /// Throws std::domain_error for +∞.
  long value() const;

  std::string to_string() const;

  friend constexpr bool operator==(Valuation a, Valuation b) {
    if (a.infinite_ || b.infinite_) return a.infinite_ == b.infinite_;
    return a.value_ == b.value_;
  }

  friend constexpr std::strong_ordering operator<=>(Valuation a, Valuation b) {
    if (a.infinite_ && b.infinite_) return std::strong_ordering::equal;
    if (a.infinite_) return std::strong_ordering::greater;
    if (b.infinite_) return std::strong_ordering::less;
    return a.value_ <=> b.value_;
  }

  friend constexpr Valuation operator+(Valuation a, long shift) {
    return a.infinite_ ? a : Valuation(a.value_ + shift);
  }

 private:
  long value_ = 0;
  bool infinite_ = false;
};

bool is_prime(unsigned long p);

/// All primes p ≤ n, ascending.
std::vector<unsigned long> primes_up_to(unsigned long n);

/// p-adic valuation; +∞ for zero. Rejects non-prime p with std::invalid_argument.
Valuation vp(const Integer& x, unsigned long p);
Valuation vp(const Rational& x, unsigned long p);

/// Legendre's formula v_p(n!).
unsigned long vp_factorial(unsigned long n, unsigned long p);

/// lcm(1, ..., n).
Integer d_lcm(long n);

/// Product of the primes p with max{sqrt(2n), 3} < p <= n.
Integer phi(long n);

/// gcd(d_lcm(n)^6, (n!)^5).
Integer psi(long n);

Integer factorial(unsigned long n);
Integer binomial(unsigned long n, unsigned long k);
Integer central_binomial(unsigned long m);
Integer pow2(unsigned long e);

/// num/den in lowest terms; den ≠ 0.
Rational fraction(long num, long den);

bool is_integer(const Rational& q);

/// Natural logarithm of |x| for big values (x ≠ 0).
double log_abs(const Integer& x);
double log_abs(const Rational& x);

/// Decimal "num/den" rendering, always with an explicit denominator.
std::string to_fraction_string(const Rational& q);

/// Inverse of to_fraction_string; also accepts a bare integer.
Rational parse_fraction(const std::string& text);

}  // namespace azeta
