#include "azeta/ratfun.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace azeta {

namespace {

Rational rpow(const Rational& b, long e) {
  const auto ue = static_cast<unsigned long>(e < 0 ? -e : e);
  Integer num;
  Integer den;
  mpz_pow_ui(num.get_mpz_t(), b.get_num().get_mpz_t(), ue);
  mpz_pow_ui(den.get_mpz_t(), b.get_den().get_mpz_t(), ue);
  Rational r = e < 0 ? Rational(den, num) : Rational(num, den);
  r.canonicalize();
  return r;
}

/// Jet of coefficients offset..offset+order of a jet, i.e. division by ε^offset.
Jet drop_leading(const Jet& j, std::size_t offset, std::size_t order) {
  std::vector<Rational> c(order + 1, Rational(0));
  for (std::size_t i = 0; i <= order && offset + i <= j.order(); ++i) c[i] = j[offset + i];
  return Jet::from_coeffs(std::move(c));
}

/// Taylor jet of extra at x with leading zeros stripped; returns their count.
std::pair<long, Jet> extra_jet(const Poly& extra, const Rational& x, std::size_t order) {
  if (extra.is_zero()) throw std::invalid_argument("FactoredForm: extra factor is zero");
  const auto d = static_cast<std::size_t>(extra.degree());
  const Jet full = extra.taylor(x, order + d);
  std::size_t z = 0;
  while (full[z] == 0) ++z;
  return {static_cast<long>(z), drop_leading(full, z, order)};
}

Rational log_term(long e, long r, const Rational& b) {
  // e · (-1)^{r+1} / (r · b^r)
  Rational v = fraction(e, r) / rpow(b, r);
  if (r % 2 == 0) v = -v;
  return v;
}

bool is_nonneg_integer(const Rational& a) { return a.get_den() == 1 && a >= 0; }

std::string fmt(const Rational& q) { return q.get_str(); }

}  // namespace

// ---------------------------------------------------------------- FactoredForm

Laurent FactoredForm::laurent(const Rational& x, std::size_t order) const {
  if (scalar == 0) throw std::invalid_argument("FactoredForm: zero scalar");
  long val = 0;
  Rational c = scalar;
  std::vector<Rational> log_coeffs(order + 1, Rational(0));
  for (const auto& b : blocks) {
    for (long j = 0; j < b.length; ++j) {
      const Rational z = x + b.shift + j;
      if (z == 0) {
        val += b.exponent;
        continue;
      }
      c *= rpow(z, b.exponent);
      for (std::size_t r = 1; r <= order; ++r) log_coeffs[r] += log_term(b.exponent, static_cast<long>(r), z);
    }
  }
  auto [z, ej] = extra_jet(extra, x, order);
  val += z;
  Jet series = Jet::from_coeffs(std::move(log_coeffs)).exp() * ej;
  series *= c;
  return {val, std::move(series)};
}

Rational FactoredForm::operator()(const Rational& t) const {
  const Laurent l = laurent(t, 0);
  if (l.valuation < 0) throw std::domain_error("FactoredForm: pole at t = " + fmt(t));
  if (l.valuation > 0) return 0;
  return l.series[0];
}

std::map<Rational, long> FactoredForm::multiplicities() const {
  std::map<Rational, long> m;
  for (const auto& b : blocks) {
    for (long j = 0; j < b.length; ++j) m[Rational(b.shift + j)] += b.exponent;
  }
  std::erase_if(m, [](const auto& kv) { return kv.second == 0; });
  return m;
}

long FactoredForm::degree() const {
  long d = extra.degree();
  for (const auto& b : blocks) d += b.length * b.exponent;
  return d;
}

FactoredForm FactoredForm::shifted(const Rational& c) const {
  FactoredForm f = *this;
  f.extra = extra.shifted(c);
  for (auto& b : f.blocks) b.shift += c;
  return f;
}

// ---------------------------------------------------------------- RatFun

RatFun::RatFun(Poly num, Poly den, Unreduced) : num_(std::move(num)), den_(std::move(den)) {
  if (den_.is_zero()) throw std::invalid_argument("RatFun: zero denominator");
  const Rational lead = den_.leading();
  if (lead != 1) {
    num_ *= Rational(1 / lead);
    den_ = den_.monic();
  }
  if (num_.is_zero()) {
    den_ = Poly::constant(1);
    den_roots_ = std::map<Rational, long>{};
  }
}

RatFun::RatFun(Poly num, Poly den) {
  if (den.is_zero()) throw std::invalid_argument("RatFun: zero denominator");
  const Poly g = gcd(num, den);
  if (g.degree() > 0) {
    num = Poly::divmod(num, g).first;
    den = Poly::divmod(den, g).first;
  }
  *this = RatFun(std::move(num), std::move(den), Unreduced{});
}

RatFun RatFun::from_factored(FactoredForm f) {
  auto mult = f.multiplicities();
  Poly extra = f.extra;
  for (auto& [a, m] : mult) {
    while (m < 0 && extra(Rational(-a)) == 0) {
      extra = Poly::divmod(extra, Poly::linear(a, 1)).first;
      ++m;
    }
  }
  Poly num = extra * f.scalar;
  Poly den = Poly::constant(1);
  std::map<Rational, long> roots;
  for (const auto& [a, m] : mult) {
    for (long i = 0; i < std::abs(m); ++i) (m > 0 ? num : den).mul_linear(a);
    if (m < 0) roots[a] = -m;
  }
  RatFun r(std::move(num), std::move(den), Unreduced{});
  r.factored_ = std::move(f);
  r.den_roots_ = std::move(roots);
  return r;
}

Rational RatFun::operator()(const Rational& t) const {
  const Rational d = den_(t);
  if (d == 0) throw std::domain_error("RatFun: pole at t = " + fmt(t));
  return num_(t) / d;
}

Rational RatFun::eval_preferred(const Rational& t) const {
  return factored_ ? (*factored_)(t) : (*this)(t);
}

RatFun RatFun::derivative() const {
  if (den_roots_) {
    // With den = Π(t+a)^m the result num'·rad - num·Σ m_a Π_{b≠a}(t+b) over den·rad is reduced.
    Poly rad = Poly::constant(1);
    for (const auto& [a, m] : *den_roots_) rad.mul_linear(a);
    Poly s;
    for (const auto& [a, m] : *den_roots_) {
      Poly term = Poly::constant(Rational(m));
      for (const auto& [b, mb] : *den_roots_) {
        if (b != a) term.mul_linear(b);
      }
      s += term;
    }
    Poly num = num_.derivative() * rad - num_ * s;
    RatFun r(std::move(num), den_ * rad, Unreduced{});
    if (!r.num_.is_zero()) {
      std::map<Rational, long> roots = *den_roots_;
      for (auto& kv : roots) kv.second += 1;
      r.den_roots_ = std::move(roots);
    }
    return r;
  }
  return RatFun(num_.derivative() * den_ - num_ * den_.derivative(), den_ * den_);
}

RatFun RatFun::shifted(const Rational& c) const {
  RatFun r(num_.shifted(c), den_.shifted(c), Unreduced{});
  if (factored_) r.factored_ = factored_->shifted(c);
  if (den_roots_) {
    std::map<Rational, long> roots;
    for (const auto& [a, m] : *den_roots_) roots[Rational(a + c)] = m;
    r.den_roots_ = std::move(roots);
  }
  return r;
}

RatFun RatFun::scaled(const Rational& q) const {
  RatFun r = *this;
  r.num_ *= q;
  if (r.factored_) r.factored_->scalar *= q;
  if (q == 0) {
    r.den_ = Poly::constant(1);
    r.factored_.reset();
    r.den_roots_ = std::map<Rational, long>{};
  }
  return r;
}

// ---------------------------------------------------------------- families

Poly certificate_quartic(long n, bool printed) {
  if (n < 1) throw std::invalid_argument("certificate_quartic: n must be >= 1");
  const Integer N(n);
  const Integer c4 = 8 * (2 * N + 1);
  const Integer c3 = (printed ? 768 : 48) * N * (2 * N + 1);
  const Integer c2 = 2 * (2 * N + 1) * (48 * N * N - 6 * N - 5);
  const Integer c1 = 2 * (80 * N * N * N * N + 16 * N * N * N - 28 * N * N - 3 * N + 3);
  const Integer c0 = 48 * N * N * N * N * N - 24 * N * N * N + 3 * N * N + 4 * N - 1;
  return Poly(std::vector<Rational>{Rational(16 * c0), Rational(16 * c1), Rational(16 * c2),
                                    Rational(16 * c3), Rational(16 * c4)});
}

RecurrenceCoeffs recurrence_coeffs(long n) {
  const Integer N(n);
  const Integer n2 = N * N;
  Integer lead;
  mpz_pow_ui(lead.get_mpz_t(), Integer(N + 1).get_mpz_t(), 5);
  Integer tail;
  mpz_pow_ui(tail.get_mpz_t(), N.get_mpz_t(), 5);
  tail *= 65536;
  const Integer middle = 32 * (2 * N + 1) * (8 * n2 * n2 + 16 * n2 * N + 20 * n2 + 12 * N + 3);
  return {lead, middle, tail};
}

FactoredForm r_form(long n) {
  if (n < 0) throw std::invalid_argument("build_R: n must be >= 0");
  FactoredForm f;
  f.scalar = Rational(pow2(static_cast<unsigned long>(8 * n)));
  f.extra = Poly::linear(Rational(n), Rational(2));
  f.blocks = {{Rational(1, 2), n, 4}, {Rational(0), n + 1, -4}};
  return f;
}

namespace {
FactoredForm t_form_impl(long n, bool printed) {
  if (n < 1) throw std::invalid_argument("build_T: n must be >= 1");
  FactoredForm f;
  f.scalar = Rational(pow2(static_cast<unsigned long>(8 * n)));
  f.extra = certificate_quartic(n, printed);
  f.blocks = {{Rational(-1, 2), n, 4}, {Rational(0), n + 1, -4}};
  return f;
}
}  // namespace

FactoredForm t_form(long n) { return t_form_impl(n, false); }
FactoredForm t_printed_form(long n) { return t_form_impl(n, true); }

FactoredForm rl_form(long n) {
  if (n < 0) throw std::invalid_argument("build_RL: n must be >= 0");
  FactoredForm f;
  f.scalar = Rational(pow2(static_cast<unsigned long>(6 * n)));
  f.blocks = {{Rational(3, 4), n, 2}, {Rational(0), n + 1, -2}};
  return f;
}

FactoredForm rb_form(long n) {
  if (n < 0) throw std::invalid_argument("build_RB: n must be >= 0");
  FactoredForm f;
  f.scalar = Rational(pow2(static_cast<unsigned long>(6 * n)));
  f.extra = Poly::linear(Rational(n), Rational(2));
  f.blocks = {{Rational(1, 2), n, 3}, {Rational(0), n + 1, -3}};
  return f;
}

RatFun build_R(long n) { return RatFun::from_factored(r_form(n)); }
RatFun build_T(long n) { return RatFun::from_factored(t_form(n)); }
RatFun build_T_printed(long n) { return RatFun::from_factored(t_printed_form(n)); }
RatFun build_RL(long n) { return RatFun::from_factored(rl_form(n)); }
RatFun build_RB(long n) { return RatFun::from_factored(rb_form(n)); }

// ---------------------------------------------------------------- PFD

PFD::PFD(int max_order, long max_shift)
    : max_order_(max_order),
      max_shift_(max_shift),
      c_(static_cast<std::size_t>(max_order), std::vector<Rational>(static_cast<std::size_t>(max_shift + 1))) {
  if (max_order < 1) throw std::invalid_argument("PFD: max_order must be >= 1");
}

Rational PFD::coeff(int i, long k) const {
  if (i < 1 || i > max_order_ || k < 0 || k > max_shift_) return 0;
  return c_[static_cast<std::size_t>(i - 1)][static_cast<std::size_t>(k)];
}

void PFD::set(int i, long k, Rational value) {
  if (i < 1 || i > max_order_ || k < 0 || k > max_shift_) throw std::out_of_range("PFD::set");
  c_[static_cast<std::size_t>(i - 1)][static_cast<std::size_t>(k)] = std::move(value);
}

Rational PFD::operator()(const Rational& t) const {
  Rational acc = poly_part_(t);
  for (long k = 0; k <= max_shift_; ++k) {
    const Rational x = t + k;
    Rational xp = 1;
    for (int i = 1; i <= max_order_; ++i) {
      xp *= x;
      const Rational& c = c_[static_cast<std::size_t>(i - 1)][static_cast<std::size_t>(k)];
      if (c != 0) acc += c / xp;
    }
  }
  return acc;
}

namespace {

/// Prefix products and inverse power sums of a block's factors over all poles 0..K.
struct BlockLattice {
  long offset = 0;  // lattice index of pole k, factor j: offset - k + j
  long exponent = 0;
  std::vector<Rational> prod;                // over nonzero entries
  std::vector<long> zeros;                   // count of zero entries
  std::vector<std::vector<Rational>> power;  // power[r-1][i]: Σ z^{-r}

  BlockLattice(const PochhammerBlock& b, long K, std::size_t order) : offset(K), exponent(b.exponent) {
    const long count = K + b.length;
    prod.assign(static_cast<std::size_t>(count + 1), Rational(1));
    zeros.assign(static_cast<std::size_t>(count + 1), 0);
    power.assign(order, std::vector<Rational>(static_cast<std::size_t>(count + 1), Rational(0)));
    for (long i = 0; i < count; ++i) {
      const auto ui = static_cast<std::size_t>(i);
      const Rational z = b.shift - K + i;
      zeros[ui + 1] = zeros[ui] + (z == 0 ? 1 : 0);
      if (z == 0) {
        prod[ui + 1] = prod[ui];
        for (std::size_t r = 0; r < order; ++r) power[r][ui + 1] = power[r][ui];
        continue;
      }
      prod[ui + 1] = prod[ui] * z;
      const Rational inv = 1 / z;
      Rational ip = 1;
      for (std::size_t r = 0; r < order; ++r) {
        ip *= inv;
        power[r][ui + 1] = power[r][ui] + ip;
      }
    }
  }
};

void check_poles(const std::map<Rational, long>& mult) {
  for (const auto& [a, m] : mult) {
    if (m >= 0) continue;
    if (!is_nonneg_integer(a)) throw std::domain_error("pfd: pole outside expected set at t = " + fmt(Rational(-a)));
  }
}

void fill_poly_part(PFD& out, const RatFun& f) {
  if (!f.num().is_zero() && f.degree() >= 0) out.set_poly_part(Poly::divmod(f.num(), f.den()).first);
}

void store_laurent(PFD& out, long k, const Laurent& l, int max_order) {
  if (l.valuation >= 0) return;
  if (-l.valuation > max_order) {
    throw std::domain_error("pfd: pole of order " + std::to_string(-l.valuation) + " at t = " +
                            std::to_string(-k) + " exceeds max_order");
  }
  for (long i = 1; i <= -l.valuation; ++i) {
    out.set(static_cast<int>(i), k, l.series[static_cast<std::size_t>(-i - l.valuation)]);
  }
}

}  // namespace

PFD pfd(const FactoredForm& f, int max_order) {
  if (max_order < 1) throw std::invalid_argument("pfd: max_order must be >= 1");
  const auto mult = f.multiplicities();
  check_poles(mult);
  long K = 0;
  for (const auto& [a, m] : mult) {
    if (m < 0) K = std::max(K, a.get_num().get_si());
  }
  PFD out(max_order, K);
  const auto order = static_cast<std::size_t>(max_order - 1);
  std::vector<BlockLattice> lattices;
  lattices.reserve(f.blocks.size());
  for (const auto& b : f.blocks) lattices.emplace_back(b, K, order);

  for (const auto& [a, m] : mult) {
    if (m >= 0) continue;
    const long k = a.get_num().get_si();
    long val = 0;
    Rational c = f.scalar;
    std::vector<Rational> log_coeffs(order + 1, Rational(0));
    for (std::size_t bi = 0; bi < f.blocks.size(); ++bi) {
      const auto& lat = lattices[bi];
      const auto lo = static_cast<std::size_t>(lat.offset - k);
      const auto hi = lo + static_cast<std::size_t>(f.blocks[bi].length);
      val += (lat.zeros[hi] - lat.zeros[lo]) * lat.exponent;
      c *= rpow(Rational(lat.prod[hi] / lat.prod[lo]), lat.exponent);
      for (std::size_t r = 1; r <= order; ++r) {
        const Rational s = lat.power[r - 1][hi] - lat.power[r - 1][lo];
        Rational term = fraction(lat.exponent, static_cast<long>(r)) * s;
        if (r % 2 == 0) term = -term;
        log_coeffs[r] += term;
      }
    }
    auto [z, ej] = extra_jet(f.extra, Rational(-k), order);
    val += z;
    Jet series = Jet::from_coeffs(std::move(log_coeffs)).exp() * ej;
    series *= c;
    store_laurent(out, k, {val, std::move(series)}, max_order);
  }
  if (f.degree() >= 0) fill_poly_part(out, RatFun::from_factored(f));
  return out;
}

PFD pfd_generic(const RatFun& f, int max_order) {
  if (max_order < 1) throw std::invalid_argument("pfd: max_order must be >= 1");
  const Poly& den = f.den();
  const long dd = den.degree();
  // Scan candidate poles -k until every root of den is accounted for.
  std::vector<std::pair<long, long>> poles;  // (k, multiplicity)
  long found = 0;
  Rational bound = 1;
  for (const auto& c : den.coeffs()) bound = std::max(bound, Rational(abs(c) + 1));
  const long limit = std::min<long>(mpz_get_si(Integer(bound.get_num() / bound.get_den()).get_mpz_t()), 1'000'000);
  const auto probe = static_cast<std::size_t>(2 * max_order);
  for (long k = 0; k <= limit && found < dd; ++k) {
    if (den(Rational(-k)) != 0) continue;
    const Jet dj = den.taylor(Rational(-k), probe);
    long m = 0;
    while (static_cast<std::size_t>(m) <= probe && dj[static_cast<std::size_t>(m)] == 0) ++m;
    if (m > max_order) throw std::domain_error("pfd: pole order exceeds max_order at t = " + std::to_string(-k));
    poles.emplace_back(k, m);
    found += m;
  }
  if (found != dd) throw std::domain_error("pfd: pole outside expected set");
  long K = 0;
  for (const auto& [k, m] : poles) K = std::max(K, k);
  PFD out(max_order, K);
  const auto order = static_cast<std::size_t>(max_order - 1);
  for (const auto& [k, m] : poles) {
    const Rational x(-k);
    const Jet dj = drop_leading(den.taylor(x, order + static_cast<std::size_t>(m)), static_cast<std::size_t>(m), order);
    Jet nj = f.num().taylor(x, order + static_cast<std::size_t>(m));
    std::size_t z = 0;
    while (z <= nj.order() && nj[z] == 0) ++z;
    nj = drop_leading(nj, z, order);
    store_laurent(out, k, {static_cast<long>(z) - m, nj * dj.inverse()}, max_order);
  }
  fill_poly_part(out, f);
  return out;
}

PFD pfd(const RatFun& f, int max_order) {
  if (f.factored()) return pfd(*f.factored(), max_order);
  return pfd_generic(f, max_order);
}

// ---------------------------------------------------------------- telescoping

namespace {

struct Term {
  Rational coeff;
  RatFun f;
};

std::vector<Term> lhs_terms(long n) {
  const auto rc = recurrence_coeffs(n);
  return {{Rational(rc.lead), build_R(n + 1)}, {Rational(-rc.middle), build_R(n)}, {Rational(rc.tail), build_R(n - 1)}};
}

/// Numerator of Σ coeff·f over a common denominator.
Poly cleared_sum(const std::vector<Term>& terms, const std::map<Rational, long>& common, bool have_common,
                 const Poly& common_den) {
  Poly acc;
  for (const auto& t : terms) {
    Poly p = t.f.num() * t.coeff;
    if (have_common) {
      const auto& own = *t.f.den_roots();
      for (const auto& [a, m] : common) {
        auto it = own.find(a);
        const long have = it == own.end() ? 0 : it->second;
        for (long i = have; i < m; ++i) p.mul_linear(a);
      }
    } else {
      p = p * Poly::divmod(common_den, t.f.den()).first;
    }
    acc += p;
  }
  return acc;
}


}  // namespace

TelescopeVerdict telescope_check(long n, TelescopeMode mode, const RatFun& certificate) {
  if (n < 1) throw std::invalid_argument("telescope_check: n must be >= 1");
  TelescopeVerdict v;
  v.n = n;
  v.mode = mode;
  const std::vector<Term> lhs = lhs_terms(n);
  const std::vector<Term> rhs = {{Rational(1), certificate.shifted(Rational(1))}, {Rational(-1), certificate}};

  std::vector<const Term*> all;
  for (const auto& t : lhs) all.push_back(&t);
  for (const auto& t : rhs) all.push_back(&t);

  bool have_common = true;
  std::map<Rational, long> common;
  for (const Term* t : all) {
    if (!t->f.den_roots()) {
      have_common = false;
      break;
    }
    for (const auto& [a, m] : *t->f.den_roots()) common[a] = std::max(common[a], m);
  }
  Poly common_den = Poly::constant(1);
  if (!have_common) {
    // No factorization known: the plain product is a common multiple.
    for (const Term* t : all) common_den *= t->f.den();
  }

  if (mode == TelescopeMode::coefficients) {
    const Poly l = cleared_sum(lhs, common, have_common, common_den);
    const Poly r = cleared_sum(rhs, common, have_common, common_den);
    const long top = std::max(l.degree(), r.degree());
    for (long i = 0; i <= top; ++i) {
      const auto ui = static_cast<std::size_t>(i);
      if (l.coeff(ui) != r.coeff(ui)) {
        std::ostringstream w;
        w << "coefficient of t^" << i << ": lhs=" << l.coeff(ui).get_str() << " rhs=" << r.coeff(ui).get_str();
        v.witness = w.str();
        return v;
      }
    }
    v.pass = true;
    return v;
  }

  long common_deg = 0;
  if (have_common) {
    for (const auto& kv : common) common_deg += kv.second;
  } else {
    common_deg = common_den.degree();
  }
  long top = 0;
  for (const Term* t : all) {
    if (!t->f.num().is_zero()) top = std::max(top, t->f.degree());
  }
  const long samples = common_deg + top + 1;
  for (long j = 0; j < samples; ++j) {
    const Rational t = Rational(j) + Rational(1, 3);
    Rational l = 0;
    for (const auto& term : lhs) l += term.coeff * term.f.eval_preferred(t);
    const Rational r = certificate.eval_preferred(Rational(t + 1)) - certificate.eval_preferred(t);
    if (l != r) {
      std::ostringstream w;
      w << "t=" << t.get_str() << ": lhs=" << l.get_str() << " rhs=" << r.get_str();
      v.witness = w.str();
      return v;
    }
  }
  v.pass = true;
  return v;
}

TelescopeVerdict telescope_check(long n, TelescopeMode mode) { return telescope_check(n, mode, build_T(n)); }

bool partial_fraction_relation(long n, std::string* witness) {
  if (n < 1) throw std::invalid_argument("partial_fraction_relation: n must be >= 1");
  const auto rc = recurrence_coeffs(n);
  const PFD a = pfd(t_form(n), 4);
  const PFD up = pfd(r_form(n + 1), 4);
  const PFD mid = pfd(r_form(n), 4);
  const PFD down = pfd(r_form(n - 1), 4);
  for (int i = 1; i <= 4; ++i) {
    for (long k = 0; k <= n + 1; ++k) {
      const Rational lhs = rc.lead * up.coeff(i, k) - rc.middle * mid.coeff(i, k) + rc.tail * down.coeff(i, k);
      const Rational rhs = a.coeff(i, k - 1) - a.coeff(i, k);
      if (lhs != rhs) {
        if (witness != nullptr) {
          std::ostringstream w;
          w << "n=" << n << " i=" << i << " k=" << k << ": lhs=" << lhs.get_str() << " rhs=" << rhs.get_str();
          *witness = w.str();
        }
        return false;
      }
    }
  }
  return true;
}

}  // namespace azeta
