#include "azeta/poly.hpp"

#include <algorithm>
#include <stdexcept>

namespace azeta {

Poly::Poly(std::vector<Rational> coeffs) : c_(std::move(coeffs)) { trim(); }

void Poly::trim() {
  while (!c_.empty() && c_.back() == 0) c_.pop_back();
}

Poly Poly::constant(const Rational& c) { return Poly(std::vector<Rational>{c}); }

Poly Poly::linear(const Rational& c0, const Rational& c1) {
  return Poly(std::vector<Rational>{c0, c1});
}

Poly Poly::monomial(std::size_t degree, const Rational& c) {
  std::vector<Rational> v(degree + 1, Rational(0));
  v[degree] = c;
  return Poly(std::move(v));
}

Rational Poly::operator()(const Rational& x) const {
  Rational acc = 0;
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) {
    acc *= x;
    acc += *it;
  }
  return acc;
}

Jet Poly::taylor(const Rational& x, std::size_t order) const {
  // Repeated synthetic division by (t - x) yields the Taylor coefficients at x.
  std::vector<Rational> work = c_;
  std::vector<Rational> out(order + 1, Rational(0));
  for (std::size_t k = 0; k <= order && !work.empty(); ++k) {
    Rational acc = 0;
    for (std::size_t i = work.size(); i-- > 0;) {
      acc = acc * x + work[i];
      work[i] = acc;
    }
    out[k] = work[0];
    work.erase(work.begin());
  }
  return Jet::from_coeffs(std::move(out));
}

Poly Poly::derivative() const {
  if (c_.size() <= 1) return Poly();
  std::vector<Rational> d(c_.size() - 1);
  for (std::size_t i = 1; i < c_.size(); ++i) d[i - 1] = c_[i] * static_cast<unsigned long>(i);
  return Poly(std::move(d));
}

Poly Poly::shifted(const Rational& c) const {
  const Jet j = taylor(c, c_.empty() ? 0 : c_.size() - 1);
  return Poly(j.coeffs());
}

Poly Poly::monic() const {
  if (c_.empty()) return *this;
  Poly p = *this;
  const Rational lead = c_.back();
  for (auto& x : p.c_) x /= lead;
  return p;
}

Poly Poly::pow(unsigned long e) const {
  Poly out = constant(1);
  Poly base = *this;
  while (e > 0) {
    if (e & 1UL) out *= base;
    e >>= 1;
    if (e > 0) base = base * base;
  }
  return out;
}

Poly Poly::operator-() const {
  Poly p = *this;
  for (auto& x : p.c_) x = -x;
  return p;
}

Poly& Poly::operator+=(const Poly& o) {
  if (o.c_.size() > c_.size()) c_.resize(o.c_.size(), Rational(0));
  for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] += o.c_[i];
  trim();
  return *this;
}

Poly& Poly::operator-=(const Poly& o) {
  if (o.c_.size() > c_.size()) c_.resize(o.c_.size(), Rational(0));
  for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] -= o.c_[i];
  trim();
  return *this;
}

Poly operator*(const Poly& a, const Poly& b) {
  if (a.c_.empty() || b.c_.empty()) return Poly();
  std::vector<Rational> r(a.c_.size() + b.c_.size() - 1, Rational(0));
  for (std::size_t i = 0; i < a.c_.size(); ++i) {
    if (a.c_[i] == 0) continue;
    for (std::size_t j = 0; j < b.c_.size(); ++j) r[i + j] += a.c_[i] * b.c_[j];
  }
  return Poly(std::move(r));
}

Poly& Poly::operator*=(const Poly& o) { return *this = *this * o; }

Poly& Poly::operator*=(const Rational& q) {
  if (q == 0) {
    c_.clear();
    return *this;
  }
  for (auto& x : c_) x *= q;
  return *this;
}

void Poly::mul_linear(const Rational& a) {
  if (c_.empty()) return;
  c_.push_back(Rational(0));
  for (std::size_t i = c_.size() - 1; i > 0; --i) {
    c_[i] = c_[i - 1] + a * c_[i];
  }
  c_[0] *= a;
}

std::pair<Poly, Poly> Poly::divmod(const Poly& a, const Poly& b) {
  if (b.is_zero()) throw std::domain_error("Poly::divmod: division by zero");
  if (a.degree() < b.degree()) return {Poly(), a};
  std::vector<Rational> rem = a.c_;
  const std::size_t db = b.c_.size() - 1;
  std::vector<Rational> q(rem.size() - db, Rational(0));
  const Rational lead = b.c_.back();
  for (std::size_t i = q.size(); i-- > 0;) {
    const Rational f = rem[i + db] / lead;
    q[i] = f;
    if (f == 0) continue;
    for (std::size_t j = 0; j <= db; ++j) rem[i + j] -= f * b.c_[j];
  }
  rem.resize(db);
  return {Poly(std::move(q)), Poly(std::move(rem))};
}

Poly gcd(Poly a, Poly b) {
  while (!b.is_zero()) {
    Poly r = Poly::divmod(a, b).second;
    a = std::move(b);
    b = r.monic();
  }
  return a.monic();
}

}  // namespace azeta
