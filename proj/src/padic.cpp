#include "azeta/padic.hpp"

#include <algorithm>
#include <stdexcept>

namespace azeta {

Integer prime_power(unsigned long p, long e) {
  if (e < 0) throw std::invalid_argument("prime_power: negative exponent");
  Integer out;
  mpz_ui_pow_ui(out.get_mpz_t(), p, static_cast<unsigned long>(e));
  return out;
}

namespace {

Integer mod_pos(const Integer& x, const Integer& m) {
  Integer r;
  mpz_mod(r.get_mpz_t(), x.get_mpz_t(), m.get_mpz_t());
  return r;
}

Integer mod_inverse(const Integer& x, const Integer& m) {
  Integer r;
  if (mpz_invert(r.get_mpz_t(), x.get_mpz_t(), m.get_mpz_t()) == 0) {
    throw std::domain_error("Padic: unit not invertible");
  }
  return r;
}

long strip(Integer& x, unsigned long p) {
  if (mpz_divisible_ui_p(x.get_mpz_t(), p) == 0) return 0;
  Integer base(p);
  return static_cast<long>(mpz_remove(x.get_mpz_t(), x.get_mpz_t(), base.get_mpz_t()));
}

}  // namespace

Padic Padic::zero(unsigned long p, long prec) {
  if (!is_prime(p)) throw std::invalid_argument("Padic: modulus must be prime");
  return Padic(p, prec);
}

Padic Padic::make(unsigned long p, long prec, long val, Integer u) {
  // u may carry further factors of p and need reduction.
  if (u == 0) return zero(p, prec);
  val += strip(u, p);
  if (val >= prec) return zero(p, prec);
  Padic x(p, prec);
  x.zero_ = false;
  x.val_ = val;
  x.unit_ = mod_pos(u, prime_power(p, prec - val));
  return x;
}

Padic Padic::from_rational(const Rational& q, unsigned long p, long prec) {
  if (!is_prime(p)) throw std::invalid_argument("Padic: modulus must be prime");
  if (q == 0) return zero(p, prec);
  Integer num = q.get_num();
  Integer den = q.get_den();
  const long v = strip(num, p) - strip(den, p);
  if (v >= prec) return zero(p, prec);
  const Integer m = prime_power(p, prec - v);
  Padic x(p, prec);
  x.zero_ = false;
  x.val_ = v;
  x.unit_ = mod_pos(num * mod_inverse(den, m), m);
  return x;
}

Padic Padic::from_integer_mod(const Integer& x, unsigned long p, long prec) {
  return from_rational(Rational(x), p, prec);
}

Valuation Padic::valuation() const { return zero_ ? Valuation::infinity() : Valuation(val_); }

long Padic::relative_precision() const { return zero_ ? 0 : prec_ - val_; }

Integer Padic::residue() const {
  if (zero_) return 0;
  if (val_ < 0) throw std::domain_error("Padic::residue: negative valuation");
  return prime_power(p_, val_) * unit_;
}

Padic Padic::with_precision(long prec) const {
  if (prec > prec_) throw std::invalid_argument("Padic::with_precision: cannot raise precision");
  if (zero_) return zero(p_, prec);
  return make(p_, prec, val_, unit_);
}

void Padic::require_same_prime(const Padic& o) const {
  if (p_ != o.p_) throw std::invalid_argument("Padic: mismatched primes");
}

Padic Padic::inverse() const {
  if (zero_) throw std::domain_error("Padic::inverse: zero at precision");
  const long r = prec_ - val_;
  Padic x(p_, -val_ + r);
  x.zero_ = false;
  x.val_ = -val_;
  x.unit_ = mod_inverse(unit_, prime_power(p_, r));
  return x;
}

Padic Padic::pow(long e) const {
  if (e < 0) return inverse().pow(-e);
  if (zero_) {
    if (e == 0 || prec_ < 0) throw std::domain_error("Padic::pow: undefined for this zero");
    return zero(p_, prec_ * e);
  }
  const long r = prec_ - val_;
  const Integer m = prime_power(p_, r);
  Integer u;
  mpz_powm_ui(u.get_mpz_t(), unit_.get_mpz_t(), static_cast<unsigned long>(e), m.get_mpz_t());
  Padic x(p_, val_ * e + r);
  x.zero_ = false;
  x.val_ = val_ * e;
  x.unit_ = u;
  return x;
}

Padic Padic::operator-() const {
  if (zero_) return *this;
  Padic x = *this;
  x.unit_ = mod_pos(-unit_, prime_power(p_, prec_ - val_));
  return x;
}

Padic operator+(const Padic& a, const Padic& b) {
  a.require_same_prime(b);
  const long prec = std::min(a.prec_, b.prec_);
  const bool a_live = !a.zero_ && a.val_ < prec;
  const bool b_live = !b.zero_ && b.val_ < prec;
  if (!a_live && !b_live) return Padic::zero(a.p_, prec);
  if (!b_live) return a.with_precision(prec);
  if (!a_live) return b.with_precision(prec);
  const long vm = std::min(a.val_, b.val_);
  Integer s = a.unit_ * prime_power(a.p_, a.val_ - vm) + b.unit_ * prime_power(a.p_, b.val_ - vm);
  s = mod_pos(s, prime_power(a.p_, prec - vm));
  return Padic::make(a.p_, prec, vm, std::move(s));
}

Padic operator*(const Padic& a, const Padic& b) {
  a.require_same_prime(b);
  if (a.zero_ && b.zero_) return Padic::zero(a.p_, a.prec_ + b.prec_);
  if (a.zero_) return Padic::zero(a.p_, a.prec_ + b.val_);
  if (b.zero_) return Padic::zero(a.p_, b.prec_ + a.val_);
  const long r = std::min(a.prec_ - a.val_, b.prec_ - b.val_);
  const long v = a.val_ + b.val_;
  Padic x(a.p_, v + r);
  x.zero_ = false;
  x.val_ = v;
  x.unit_ = mod_pos(a.unit_ * b.unit_, prime_power(a.p_, r));
  return x;
}

Padic operator*(const Padic& a, const Rational& q) {
  if (q == 0) return Padic::zero(a.p_, a.prec_);
  const Padic qp = Padic::from_rational(q, a.p_, a.prec_ + 64);
  if (a.zero_) return Padic::zero(a.p_, a.prec_ + qp.val_);
  const long r = a.prec_ - a.val_;
  return a * Padic::from_rational(q, a.p_, qp.val_ + r);
}

Padic operator+(const Padic& a, const Rational& q) {
  return a + Padic::from_rational(q, a.p_, a.prec_);
}

bool operator==(const Padic& a, const Padic& b) {
  return a.p_ == b.p_ && a.prec_ == b.prec_ && a.zero_ == b.zero_ &&
         (a.zero_ || (a.val_ == b.val_ && a.unit_ == b.unit_));
}

Valuation agreement(const Padic& a, const Padic& b) { return (a - b).valuation(); }

}  // namespace azeta
