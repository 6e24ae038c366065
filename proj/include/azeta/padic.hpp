#pragma once

#include <string>

#include "azeta/exact.hpp"

namespace azeta {

/// Element of Q_p known modulo p^N (absolute precision N).
///
/// Nonzero values are p^v·u with v < N and u a unit stored modulo p^(N-v).
/// A value ≡ 0 mod p^N is "zero at precision N": its valuation is only
/// known to be ≥ N and is reported as +∞.
class Padic {
 public:
  static Padic from_rational(const Rational& q, unsigned long p, long prec);
  static Padic from_integer_mod(const Integer& x, unsigned long p, long prec);
  static Padic zero(unsigned long p, long prec);

  unsigned long prime() const { return p_; }
  long precision() const { return prec_; }
  bool is_zero_at_precision() const { return zero_; }
  /// +∞ when zero at precision.
  Valuation valuation() const;
  /// N - v; 0 for zero.
  long relative_precision() const;
  const Integer& unit() const { return unit_; }

  /// p^v·u mod p^N in [0, p^N); requires v ≥ 0 (or zero).
  Integer residue() const;

  /// Lower the precision; throws std::invalid_argument when raising.
  Padic with_precision(long prec) const;

  /// Throws std::domain_error for zero at precision.
  Padic inverse() const;
  Padic pow(long e) const;

  Padic operator-() const;
  friend Padic operator+(const Padic& a, const Padic& b);
  friend Padic operator-(const Padic& a, const Padic& b) { return a + (-b); }
  friend Padic operator*(const Padic& a, const Padic& b);
  friend Padic operator/(const Padic& a, const Padic& b) { return a * b.inverse(); }

  // Exact rational operands carry no precision loss.
  friend Padic operator*(const Padic& a, const Rational& q);
  friend Padic operator*(const Rational& q, const Padic& a) { return a * q; }
  friend Padic operator+(const Padic& a, const Rational& q);
  friend Padic operator+(const Rational& q, const Padic& a) { return a + q; }
  friend Padic operator-(const Padic& a, const Rational& q) { return a + Rational(-q); }

  Padic& operator+=(const Padic& o) { return *this = *this + o; }
  Padic& operator-=(const Padic& o) { return *this = *this - o; }
  Padic& operator*=(const Padic& o) { return *this = *this * o; }

  /// Identical precision and digits.
  friend bool operator==(const Padic& a, const Padic& b);

  std::string unit_hex() const { return unit_.get_str(16); }

 private:
  Padic(unsigned long p, long prec) : p_(p), prec_(prec) {}
  static Padic make(unsigned long p, long prec, long val, Integer unit_residue);
  void require_same_prime(const Padic& o) const;

  unsigned long p_ = 2;
  long prec_ = 0;
  bool zero_ = true;
  long val_ = 0;
  Integer unit_ = 0;
};

/// Integer power p^e.
Integer prime_power(unsigned long p, long e);

/// v_p(a - b), capped to +∞ when a ≡ b at min precision.
Valuation agreement(const Padic& a, const Padic& b);

}  // namespace azeta
