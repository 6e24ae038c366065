#include "azeta/jet.hpp"

#include <algorithm>
#include <stdexcept>

namespace azeta {

Jet::Jet(std::size_t order) : c_(order + 1, Rational(0)) {}

Jet::Jet(std::size_t order, const Rational& constant) : c_(order + 1, Rational(0)) {
  c_[0] = constant;
}

Jet Jet::variable(std::size_t order, const Rational& c0, const Rational& c1) {
  Jet j(order, c0);
  if (order >= 1) j.c_[1] = c1;
  return j;
}

Jet Jet::from_coeffs(std::vector<Rational> coeffs) {
  if (coeffs.empty()) throw std::invalid_argument("Jet::from_coeffs: empty");
  return Jet(std::move(coeffs), 0);
}

Rational Jet::derivative_at_zero(std::size_t k) const {
  return Rational(c_.at(k) * factorial(k));
}

Jet Jet::truncated(std::size_t order) const {
  std::vector<Rational> c(c_.begin(), c_.begin() + static_cast<long>(std::min(order, this->order()) + 1));
  c.resize(order + 1, Rational(0));
  return Jet(std::move(c), 0);
}

Jet Jet::inverse() const {
  if (c_[0] == 0) throw std::domain_error("Jet::inverse: zero constant term");
  const std::size_t d = order();
  std::vector<Rational> r(d + 1);
  const Rational inv0 = 1 / c_[0];
  r[0] = inv0;
  for (std::size_t k = 1; k <= d; ++k) {
    Rational s = 0;
    for (std::size_t i = 1; i <= k; ++i) {
      if (c_[i] != 0) s += c_[i] * r[k - i];
    }
    r[k] = -s * inv0;
  }
  return Jet(std::move(r), 0);
}

Jet Jet::pow(long e) const {
  if (e < 0) return inverse().pow(-e);
  Jet out(order(), Rational(1));
  Jet base = *this;
  auto ue = static_cast<unsigned long>(e);
  while (ue > 0) {
    if (ue & 1UL) out *= base;
    ue >>= 1;
    if (ue > 0) base *= base;
  }
  return out;
}

Jet Jet::exp() const {
  if (c_[0] != 0) throw std::domain_error("Jet::exp: nonzero constant term");
  // E' = A' E  =>  k e_k = sum_{i=1..k} i a_i e_{k-i}
  const std::size_t d = order();
  std::vector<Rational> e(d + 1);
  e[0] = 1;
  for (std::size_t k = 1; k <= d; ++k) {
    Rational s = 0;
    for (std::size_t i = 1; i <= k; ++i) {
      if (c_[i] != 0) s += static_cast<unsigned long>(i) * c_[i] * e[k - i];
    }
    e[k] = s / static_cast<unsigned long>(k);
  }
  return Jet(std::move(e), 0);
}

Jet Jet::log() const {
  if (c_[0] != 1) throw std::domain_error("Jet::log: constant term must be 1");
  // A' = F'/F  =>  k a_k = k f_k - sum_{i=1..k-1} i a_i f_{k-i}
  const std::size_t d = order();
  std::vector<Rational> a(d + 1, Rational(0));
  for (std::size_t k = 1; k <= d; ++k) {
    Rational s = static_cast<unsigned long>(k) * c_[k];
    for (std::size_t i = 1; i < k; ++i) {
      if (a[i] != 0) s -= static_cast<unsigned long>(i) * a[i] * c_[k - i];
    }
    a[k] = s / static_cast<unsigned long>(k);
  }
  return Jet(std::move(a), 0);
}

Jet Jet::operator-() const {
  Jet r = *this;
  for (auto& x : r.c_) x = -x;
  return r;
}

Jet& Jet::operator+=(const Jet& o) {
  c_.resize(std::min(c_.size(), o.c_.size()));
  for (std::size_t i = 0; i < c_.size(); ++i) c_[i] += o.c_[i];
  return *this;
}

Jet& Jet::operator-=(const Jet& o) {
  c_.resize(std::min(c_.size(), o.c_.size()));
  for (std::size_t i = 0; i < c_.size(); ++i) c_[i] -= o.c_[i];
  return *this;
}

Jet operator*(const Jet& a, const Jet& b) {
  const std::size_t n = std::min(a.c_.size(), b.c_.size());
  std::vector<Rational> r(n, Rational(0));
  for (std::size_t i = 0; i < n; ++i) {
    if (a.c_[i] == 0) continue;
    for (std::size_t j = 0; i + j < n; ++j) {
      if (b.c_[j] != 0) r[i + j] += a.c_[i] * b.c_[j];
    }
  }
  return Jet(std::move(r), 0);
}

Jet& Jet::operator*=(const Jet& o) { return *this = *this * o; }
Jet& Jet::operator/=(const Jet& o) { return *this = *this * o.inverse(); }

Jet& Jet::operator+=(const Rational& q) {
  c_[0] += q;
  return *this;
}

Jet& Jet::operator-=(const Rational& q) {
  c_[0] -= q;
  return *this;
}

Jet& Jet::operator*=(const Rational& q) {
  for (auto& x : c_) x *= q;
  return *this;
}

Jet& Jet::operator/=(const Rational& q) {
  if (q == 0) throw std::domain_error("Jet: division by zero");
  for (auto& x : c_) x /= q;
  return *this;
}

}  // namespace azeta
