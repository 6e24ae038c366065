#pragma once

#include <cstddef>
#include <vector>

#include "azeta/exact.hpp"

namespace azeta {

/// Truncated power series c_0 + c_1 ε + ... + c_D ε^D over Q.
/// Binary operations on jets of different order truncate to the smaller one.
class Jet {
 public:
  explicit Jet(std::size_t order);
  Jet(std::size_t order, const Rational& constant);

  /// c0 + c1·ε.
  static Jet variable(std::size_t order, const Rational& c0, const Rational& c1 = 1);
  static Jet from_coeffs(std::vector<Rational> coeffs);

  std::size_t order() const { return c_.size() - 1; }
  const Rational& operator[](std::size_t k) const { return c_.at(k); }
  Rational& operator[](std::size_t k) { return c_.at(k); }
  const std::vector<Rational>& coeffs() const { return c_; }

  /// f^{(k)}(0) = k!·c_k.
  Rational derivative_at_zero(std::size_t k) const;

  Jet truncated(std::size_t order) const;

  /// Throws std::domain_error when c_0 = 0.
  Jet inverse() const;
  Jet pow(long e) const;
  /// Requires c_0 = 0.
  Jet exp() const;
  /// Requires c_0 = 1.
  Jet log() const;

  Jet operator-() const;
  Jet& operator+=(const Jet& o);
  Jet& operator-=(const Jet& o);
  Jet& operator*=(const Jet& o);
  Jet& operator/=(const Jet& o);
  Jet& operator+=(const Rational& q);
  Jet& operator-=(const Rational& q);
  Jet& operator*=(const Rational& q);
  Jet& operator/=(const Rational& q);

  friend Jet operator+(Jet a, const Jet& b) { return a += b; }
  friend Jet operator-(Jet a, const Jet& b) { return a -= b; }
  friend Jet operator*(const Jet& a, const Jet& b);
  friend Jet operator/(const Jet& a, const Jet& b) { return a * b.inverse(); }
  friend Jet operator+(Jet a, const Rational& q) { return a += q; }
  friend Jet operator-(Jet a, const Rational& q) { return a -= q; }
  friend Jet operator*(Jet a, const Rational& q) { return a *= q; }
  friend Jet operator/(Jet a, const Rational& q) { return a /= q; }
  friend Jet operator+(const Rational& q, Jet a) { return a += q; }
  friend Jet operator*(const Rational& q, Jet a) { return a *= q; }

  friend bool operator==(const Jet& a, const Jet& b) { return a.c_ == b.c_; }

 private:
  explicit Jet(std::vector<Rational> c, int /*tag*/) : c_(std::move(c)) {}
  std::vector<Rational> c_;
};

inline Rational unit_like(const Rational&) { return Rational(1); }
inline Jet unit_like(const Jet& x) { return Jet(x.order(), Rational(1)); }

/// (x)_m = x(x+1)...(x+m-1), with (x)_0 = 1.
template <class T>
T pochhammer(const T& x, unsigned long m) {
  T out = unit_like(x);
  for (unsigned long i = 0; i < m; ++i) {
    T factor = x;
    factor += Rational(static_cast<long>(i));
    out *= factor;
  }
  return out;
}

/// C(x, j) = x(x-1)...(x-j+1)/j!.
template <class T>
T gen_binomial(const T& x, unsigned long j) {
  T base = x;
  base -= Rational(static_cast<long>(j) - 1);
  T out = pochhammer(base, j);
  out /= Rational(factorial(j));
  return out;
}

}  // namespace azeta
