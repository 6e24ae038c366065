#include "azeta/denominators.hpp"

#include <algorithm>
#include <sstream>

#include "azeta/ratfun.hpp"

namespace azeta {

namespace {

Integer power(const Integer& x, unsigned long e) {
  Integer r;
  mpz_pow_ui(r.get_mpz_t(), x.get_mpz_t(), e);
  return r;
}

bool divides(const Integer& d, const Integer& x) { return mpz_divisible_p(x.get_mpz_t(), d.get_mpz_t()) != 0; }

/// Trial-divides the part of x coprime to the primes ≤ bound; returns leftover primes, then any cofactor.
std::vector<Integer> outside_primes(Integer x, unsigned long bound) {
  for (unsigned long p : primes_up_to(bound)) {
    while (mpz_divisible_ui_p(x.get_mpz_t(), p) != 0) x /= p;
  }
  std::vector<Integer> out;
  for (unsigned long p = bound + 1; x != 1 && p < 1'000'000; ++p) {
    if (!is_prime(p) || mpz_divisible_ui_p(x.get_mpz_t(), p) == 0) continue;
    out.emplace_back(p);
    while (mpz_divisible_ui_p(x.get_mpz_t(), p) != 0) x /= p;
  }
  if (x != 1) out.push_back(x);
  return out;
}

/// c + s·ε.
Jet lin(std::size_t order, const Rational& c, const Rational& s) { return Jet::variable(order, c, s); }

Jet poch(std::size_t order, const Rational& c, const Rational& s, long m) {
  return pochhammer(lin(order, c, s), static_cast<unsigned long>(m));
}

Rational cb(long m) { return Rational(central_binomial(static_cast<unsigned long>(m))); }

Rational pow2q(long e) { return e >= 0 ? Rational(pow2(static_cast<unsigned long>(e))) : Rational(Integer(1), pow2(static_cast<unsigned long>(-e))); }

void check_quad_range(long n, long l, std::size_t order) {
  if (l < 1 || l > n) throw std::invalid_argument("quad sums: need 1 <= l <= n");
  if (order > 3) throw std::invalid_argument("quad sums: order must be <= 3");
}

/// Single-index factors of F, cached per (n, ℓ).
struct QuadFactors {
  std::vector<Jet> a;  // A(i1)
  std::vector<Jet> b;  // B(i) for i2 and i3
  std::vector<Jet> e;  // E(i4)

  QuadFactors(long n, long l, std::size_t order) {
    const long N = n - l;
    const Rational half(1, 2);
    const Rational four_n = pow2q(2 * n);
    const Jet half_minus_l1 = poch(order, half, -1, l - 1);
    const Jet left = Rational(pow2q(2 * l)) * half_minus_l1 / poch(order, 1, -1, l);
    for (long i = 0; i <= N; ++i) {
      a.push_back(four_n * poch(order, half, -1, l + i) * poch(order, half, 1, n - l - i) /
                  (poch(order, 1, -1, l + i) * poch(order, 1, 1, n - l - i)));
      b.push_back(four_n * poch(order, Rational(l) + half, -1, i) * half_minus_l1 * poch(order, half, 1, n - l - i) /
                  (poch(order, 1, -1, l + i) * poch(order, 1, 1, n - l - i)));
      const long m = n - l - i;
      Jet x = lin(order, fraction(l, i + 1), fraction(-2, i + 1));
      x *= poch(order, l + 1, -2, i) / poch(order, l + 1, -1, i);
      x *= left;
      x *= pow2q(2 * m) * poch(order, half, 1, m) / poch(order, 1, 1, m);
      x *= poch(order, n - l + 1 - i, 0, i) / poch(order, n - l + 1 - i, 1, i);
      e.push_back(x);
    }
  }
};

bool sorted_index(const QuadIndex& i, long N) {
  return 0 <= i[0] && i[0] <= i[1] && i[1] <= i[2] && i[2] <= i[3] && i[3] <= N;
}

/// v_p(C(2m,m)) by Legendre's formula.
long vp_central(long m, unsigned long p) {
  long v = 0;
  for (long q = static_cast<long>(p); q <= 2 * m; q *= static_cast<long>(p)) v += (2 * m) / q - 2 * (m / q);
  return v;
}

long vp_small(long x, unsigned long p) {
  long v = 0;
  while (x != 0 && x % static_cast<long>(p) == 0) {
    x /= static_cast<long>(p);
    ++v;
  }
  return v;
}

std::string tuple_text(long n, long l, const QuadIndex& i, unsigned long p) {
  std::ostringstream os;
  os << "n=" << n << " l=" << l << " i=(" << i[0] << "," << i[1] << "," << i[2] << "," << i[3] << ") p=" << p;
  return os.str();
}

std::vector<unsigned long> eligible_primes(long n) {
  std::vector<unsigned long> out;
  for (unsigned long p : primes_up_to(static_cast<unsigned long>(2 * n))) {
    if (eligible_prime(p, n)) out.push_back(p);
  }
  return out;
}

template <class Visit>
void for_each_index(long N, Visit&& visit) {
  for (long i4 = 0; i4 <= N; ++i4)
    for (long i3 = 0; i3 <= i4; ++i3)
      for (long i2 = 0; i2 <= i3; ++i2)
        for (long i1 = 0; i1 <= i2; ++i1) visit(QuadIndex{i1, i2, i3, i4});
}

}  // namespace

LemmaViolation::LemmaViolation(ValuationReport report)
    : std::runtime_error("integrality lemma violated at n=" + std::to_string(report.n) +
                         (report.witnesses.empty() ? std::string() : ": " + report.witnesses.front())),
      report_(std::move(report)) {}

ValuationReport audit_integrality(const LinearForm& f, bool with_valuations) {
  if (f.n < 1) throw std::invalid_argument("audit_integrality: n must be >= 1");
  ValuationReport r;
  r.n = f.n;
  const Integer d = d_lcm(f.n);
  const Integer d5 = power(d, 5);
  const Integer d6 = d5 * d;
  const Integer ph = phi(f.n);
  const Integer ps = psi(f.n);
  const auto in_z = [](const Rational& q, const Integer& m) { return divides(q.get_den(), m); };
  r.lemma.d_rho3 = in_z(f.rho3, d);
  r.lemma.d6_rho0 = in_z(f.rho0, d6);
  // Φ^{-1}d^6ρ0 ∈ Z  ⇔  den·Φ | d^6·num
  r.lemma.phi_d6_rho0 = divides(Integer(f.rho0.get_den() * ph), Integer(d6 * f.rho0.get_num()));
  r.lemma.psi_rho0 = in_z(f.rho0, ps);
  r.lemma.psi_rho3 = in_z(f.rho3, ps);
  r.conjecture.rho3_integer = f.rho3.get_den() == 1;
  r.conjecture.d5_rho0 = in_z(f.rho0, d5);

  const auto note = [&](bool ok, const char* what) {
    if (!ok) r.witnesses.push_back(std::string(what) + " fails at n=" + std::to_string(f.n));
  };
  note(r.lemma.d_rho3, "d_n*rho3 in Z");
  note(r.lemma.d6_rho0, "d_n^6*rho0 in Z");
  note(r.lemma.phi_d6_rho0, "Phi_n^-1*d_n^6*rho0 in Z");
  note(r.lemma.psi_rho0, "Psi_n*rho0 in Z");
  note(r.lemma.psi_rho3, "Psi_n*rho3 in Z");
  note(r.conjecture.rho3_integer, "rho3 in Z");
  note(r.conjecture.d5_rho0, "d_n^5*rho0 in Z");

  const auto bound = static_cast<unsigned long>(f.n);
  std::vector<unsigned long> primes = primes_up_to(bound);
  for (const Integer& den : {f.rho0.get_den(), f.rho3.get_den()}) {
    for (const Integer& q : outside_primes(den, bound)) {
      r.witnesses.push_back("denominator prime " + q.get_str() + " exceeds n=" + std::to_string(f.n));
      if (q.fits_ulong_p() && is_prime(q.get_ui())) primes.push_back(q.get_ui());
    }
  }
  if (with_valuations) {
    for (unsigned long p : primes) r.valuations.insert_or_assign(p, std::pair{vp(f.rho0, p), vp(f.rho3, p)});
  }
  if (!r.lemma.all()) throw LemmaViolation(r);
  return r;
}

ValuationReport audit_integrality(long n, bool with_valuations) {
  return audit_integrality(FormTable::global().get(n), with_valuations);
}

bool eligible_prime(unsigned long p, long n) {
  return p > 3 && p * p > static_cast<unsigned long>(2 * n);
}

PrimeBoundVerdict vp_rho0_audit(long n) {
  if (n < 1) throw std::invalid_argument("vp_rho0_audit: n must be >= 1");
  const LinearForm& f = FormTable::global().get(n);
  PrimeBoundVerdict v;
  v.n = n;
  v.pass = true;
  if (f.rho0 == 0) return v;
  // Only denominator primes can push v_p below zero; those above n are scanned separately.
  Integer den = f.rho0.get_den();
  for (unsigned long p : primes_up_to(static_cast<unsigned long>(n))) {
    if (!eligible_prime(p, n)) continue;
    const Valuation val = vp(f.rho0, p);
    if (val < v.min_valuation) v.min_valuation = val;
    if (val < Valuation(-5) && v.pass) {
      v.pass = false;
      v.witness_prime = p;
    }
  }
  for (const Integer& q : outside_primes(den, static_cast<unsigned long>(n))) {
    if (q.fits_ulong_p() && eligible_prime(q.get_ui(), n)) {
      const Valuation val = vp(f.rho0, q.get_ui());
      if (val < v.min_valuation) v.min_valuation = val;
      if (val < Valuation(-5) && v.pass) {
        v.pass = false;
        v.witness_prime = q.get_ui();
      }
    }
  }
  return v;
}

Jet quad_sum_F(const QuadIndex& i, long n, long l, std::size_t order) {
  check_quad_range(n, l, order);
  if (!sorted_index(i, n - l)) throw std::invalid_argument("quad_sum_F: need 0 <= i1 <= i2 <= i3 <= i4 <= n-l");
  const QuadFactors f(n, l, order);
  const auto u = [](long x) { return static_cast<std::size_t>(x); };
  Rational binoms = Rational(-n + l - 1) * cb(i[0]) * cb(i[1] - i[0]) * cb(i[2] - i[1]) * cb(i[3] - i[2]);
  return f.a[u(i[0])] * f.b[u(i[1])] * f.b[u(i[2])] * f.e[u(i[3])] * binoms;
}

Rational quad_F_closed(const QuadIndex& i, long n, long l) {
  if (l < 1 || l > n || !sorted_index(i, n - l)) throw std::invalid_argument("quad_F_closed: index out of range");
  Rational v = fraction(-16, (2 * l - 1) * (2 * l - 1)) * fraction(n - l + 1, i[3] + 1);
  for (long k = 0; k < 3; ++k) v *= cb(l + i[static_cast<std::size_t>(k)]) * cb(n - l - i[static_cast<std::size_t>(k)]);
  v *= cb(i[0]) * cb(i[1] - i[0]) * cb(i[2] - i[1]) * cb(i[3] - i[2]);
  v *= cb(l - 1) * cb(n - l - i[3]);
  return v;
}

Jet quad_sum_total(long n, long l, std::size_t order) {
  check_quad_range(n, l, order);
  const long N = n - l;
  const QuadFactors f(n, l, order);
  const auto u = [](long x) { return static_cast<std::size_t>(x); };
  // level[j] accumulates Σ over the lower indices ending at j.
  std::vector<Jet> level1(u(N + 1), Jet(order));
  for (long i2 = 0; i2 <= N; ++i2)
    for (long i1 = 0; i1 <= i2; ++i1) level1[u(i2)] += f.a[u(i1)] * (cb(i1) * cb(i2 - i1));
  std::vector<Jet> level2(u(N + 1), Jet(order));
  for (long i3 = 0; i3 <= N; ++i3)
    for (long i2 = 0; i2 <= i3; ++i2) level2[u(i3)] += level1[u(i2)] * f.b[u(i2)] * cb(i3 - i2);
  Jet total(order);
  for (long i4 = 0; i4 <= N; ++i4) {
    Jet level3(order);
    for (long i3 = 0; i3 <= i4; ++i3) level3 += level2[u(i3)] * f.b[u(i3)] * cb(i4 - i3);
    total += level3 * f.e[u(i4)];
  }
  return total * Rational(-n + l - 1);
}

Jet T_nl(long n, long l, std::size_t order) {
  check_quad_range(n, l, order);
  const Rational half(1, 2);
  Jet sum(order);
  for (long k = l; k <= n; ++k) {
    Jet term = lin(order, n - 2 * k, 2);
    term *= (poch(order, Rational(l) + half, -1, k - l) * poch(order, half, 1, n - k)).pow(4);
    term /= (poch(order, 1, -1, k) * poch(order, 1, 1, n - k)).pow(4);
    sum += term;
  }
  Jet pre = lin(order, Rational(l) - half, -1) * pow2q(8 * n);
  pre *= poch(order, half, -1, l - 1).pow(4);
  return pre * sum;
}

QuadVerdict quad_identity_check(long n, long l) {
  if (n > 12) throw std::invalid_argument("quad_identity_check: n must be <= 12");
  check_quad_range(n, l, 3);
  QuadVerdict v;
  v.n = n;
  v.l = l;
  const Jet t = T_nl(n, l, 3);
  const Jet s = quad_sum_total(n, l, 3);
  v.jets_equal = true;
  for (std::size_t c = 0; c <= 3; ++c) {
    if (t[c] != s[c]) {
      v.jets_equal = false;
      v.witness = "n=" + std::to_string(n) + " l=" + std::to_string(l) + " coefficient " + std::to_string(c) +
                  ": T=" + to_fraction_string(t[c]) + " sumF=" + to_fraction_string(s[c]);
      break;
    }
  }
  const PFD p = pfd(r_form(n), 4);
  Rational rhs = 0;
  const Rational x(2 * l - 1, 2);
  for (long k = l; k <= n; ++k) {
    for (int i = 1; i <= 4; ++i) {
      Rational xp = 1;
      for (int e = 0; e < i + 2; ++e) xp *= x;
      rhs += Rational(i * (i + 1)) * p.coeff(i, k) / xp;
    }
  }
  // (1/3)·T'''(0) = 2·c3
  const Rational lhs = 2 * t[3];
  v.derivative_ok = lhs == rhs;
  if (!v.derivative_ok && v.witness.empty()) {
    v.witness = "n=" + std::to_string(n) + " l=" + std::to_string(l) + " coefficient 3: T'''/3=" + to_fraction_string(lhs) +
                " pfd=" + to_fraction_string(rhs);
  }
  return v;
}

Rational rho0_from_quad_sums(long n) {
  Rational total = 0;
  for (long l = 1; l <= n; ++l) total -= 2 * quad_sum_total(n, l, 3)[3];
  return total;
}

ClaimVerdict per_term_claim(long n) {
  if (n < 1) throw std::invalid_argument("per_term_claim: n must be >= 1");
  ClaimVerdict v;
  v.n = n;
  v.pass = true;
  v.trivial_pass = true;
  v.min_valuation = 0;
  const auto primes = eligible_primes(n);
  for (unsigned long p : primes) {
    std::vector<long> c(static_cast<std::size_t>(n + 1));
    for (long m = 0; m <= n; ++m) c[static_cast<std::size_t>(m)] = vp_central(m, p);
    const auto C = [&](long m) { return c[static_cast<std::size_t>(m)]; };
    for (long l = 1; l <= n; ++l) {
      // v_p(16) = 0 for p > 3.
      const long head = -2 * vp_small(2 * l - 1, p) + vp_small(n - l + 1, p) + C(l - 1);
      for_each_index(n - l, [&](const QuadIndex& i) {
        const long val = head - vp_small(i[3] + 1, p) + C(l + i[0]) + C(n - l - i[0]) + C(l + i[1]) +
                         C(n - l - i[1]) + C(l + i[2]) + C(n - l - i[2]) + C(i[0]) + C(i[1] - i[0]) +
                         C(i[2] - i[1]) + C(i[3] - i[2]) + C(n - l - i[3]);
        if (val < v.min_valuation) v.min_valuation = val;
        if (val < -2 && v.pass) {
          v.pass = false;
          v.witness = tuple_text(n, l, i, p) + " v_p=" + std::to_string(val);
        }
        if (val < -3) v.trivial_pass = false;
      });
    }
  }
  for (long l = 1; l <= n; ++l) {
    const long N = n - l;
    v.tuples += (N + 1) * (N + 2) * (N + 3) * (N + 4) / 24;
  }
  return v;
}

ClaimVerdict lambda_cascade(long n, long samples) {
  if (n < 1) throw std::invalid_argument("lambda_cascade: n must be >= 1");
  ClaimVerdict v;
  v.n = n;
  v.pass = true;
  v.trivial_pass = true;
  const auto primes = eligible_primes(n);
  const Rational fact[4] = {1, 1, 2, 6};
  for (long l = 1; l <= n; ++l) {
    const long N = n - l;
    const long count = (N + 1) * (N + 2) * (N + 3) * (N + 4) / 24;
    const long stride = std::max(1L, count / std::max(1L, samples));
    const QuadFactors f(n, l, 3);
    long index = 0;
    for_each_index(N, [&](const QuadIndex& i) {
      if (index++ % stride != 0) return;
      ++v.tuples;
      const auto u = [](long x) { return static_cast<std::size_t>(x); };
      const Jet F = f.a[u(i[0])] * f.b[u(i[1])] * f.b[u(i[2])] * f.e[u(i[3])] *
                    (Rational(-n + l - 1) * cb(i[0]) * cb(i[1] - i[0]) * cb(i[2] - i[1]) * cb(i[3] - i[2]));
      for (std::size_t lam = 0; lam <= 3; ++lam) {
        const Rational d = F[lam] * fact[lam];
        if (d == 0) continue;
        for (unsigned long p : primes) {
          const long val = vp(d, p).value();
          v.min_valuation = std::min(v.min_valuation, val + static_cast<long>(lam));
          if (val < -2 - static_cast<long>(lam) && v.pass) {
            v.pass = false;
            v.witness = tuple_text(n, l, i, p) + " lambda=" + std::to_string(lam) + " v_p=" + std::to_string(val);
          }
        }
      }
    });
  }
  return v;
}

Jet vwp_eval(const std::vector<Jet>& params, long N, std::size_t order) {
  if (params.empty()) throw std::invalid_argument("vwp_eval: need a0");
  if (N < 0) throw std::invalid_argument("vwp_eval: N must be >= 0");
  const Jet a0 = params.front().truncated(order);
  Jet total(order);
  Jet num(order, 1);  // Π_j (a_j)_k
  Jet den(order, 1);  // k!·Π_{j≥1} (1+a0-a_j)_k
  const Jet a0_inv = a0.inverse();
  for (long k = 0; k <= N; ++k) {
    if (k > 0) {
      for (const Jet& a : params) num *= a + Rational(k - 1);
      den *= Rational(k);
      for (std::size_t j = 1; j < params.size(); ++j) den *= a0 - params[j] + Rational(k);
    }
    total += (a0 + Rational(2 * k)) * a0_inv * num / den;
  }
  return total;
}

Jet rho_vwp_jet(long n) {
  if (n < 0) throw std::invalid_argument("rho_vwp_jet: n must be >= 0");
  const std::size_t order = 1;
  const Rational half(1, 2);
  const std::vector<Jet> params = {lin(order, -n, -1), lin(order, -n, -1), lin(order, half, 0), lin(order, half, 0),
                                   lin(order, half, -1), lin(order, half, -1), lin(order, -n, 0), lin(order, -n, 0)};
  const Jet series = vwp_eval(params, n, order);
  const Rational nf(factorial(static_cast<unsigned long>(n)));
  Jet pre = poch(order, half, 0, n).pow(2) * poch(order, half, 1, n).pow(2);
  pre /= poch(order, 1, 1, n).pow(2) * (nf * nf);
  return lin(order, n, 1) * pre * series;
}

}  // namespace azeta
