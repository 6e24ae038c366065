#pragma once

#include <utility>
#include <vector>

#include "azeta/exact.hpp"
#include "azeta/jet.hpp"

namespace azeta {

/// Dense univariate polynomial over Q, lowest degree first, no trailing zeros.
class Poly {
 public:
  Poly() = default;
  explicit Poly(std::vector<Rational> coeffs);

  static Poly constant(const Rational& c);
  /// c0 + c1·t
  static Poly linear(const Rational& c0, const Rational& c1);
  static Poly monomial(std::size_t degree, const Rational& c);

  /// -1 for the zero polynomial.
  long degree() const { return static_cast<long>(c_.size()) - 1; }
  bool is_zero() const { return c_.empty(); }
  const std::vector<Rational>& coeffs() const { return c_; }
  Rational coeff(std::size_t i) const { return i < c_.size() ? c_[i] : Rational(0); }
  Rational leading() const { return c_.empty() ? Rational(0) : c_.back(); }

  Rational operator()(const Rational& x) const;
  /// P(x+ε) truncated at ε^order.
  Jet taylor(const Rational& x, std::size_t order) const;

  Poly derivative() const;
  /// P(t+c).
  Poly shifted(const Rational& c) const;
  Poly monic() const;
  Poly pow(unsigned long e) const;

  Poly operator-() const;
  Poly& operator+=(const Poly& o);
  Poly& operator-=(const Poly& o);
  Poly& operator*=(const Poly& o);
  Poly& operator*=(const Rational& q);
  friend Poly operator+(Poly a, const Poly& b) { return a += b; }
  friend Poly operator-(Poly a, const Poly& b) { return a -= b; }
  friend Poly operator*(const Poly& a, const Poly& b);
  friend Poly operator*(Poly a, const Rational& q) { return a *= q; }
  friend Poly operator*(const Rational& q, Poly a) { return a *= q; }
  friend bool operator==(const Poly& a, const Poly& b) { return a.c_ == b.c_; }

  /// Multiply in place by (t + a).
  void mul_linear(const Rational& a);

  /// Quotient and remainder; throws std::domain_error on division by zero.
  static std::pair<Poly, Poly> divmod(const Poly& a, const Poly& b);

 private:
  void trim();
  std::vector<Rational> c_;
};

/// Monic gcd (zero if both are zero).
Poly gcd(Poly a, Poly b);

}  // namespace azeta
