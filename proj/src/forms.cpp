#include "azeta/forms.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "azeta/ratfun.hpp"
#include "azeta/volkenborn.hpp"

namespace azeta {

namespace {

constexpr unsigned long kTwo = 2;

Rational inverse_power(const Rational& x, long m) {
  Rational p = 1;
  for (long i = 0; i < m; ++i) p *= x;
  return 1 / p;
}

void require_nonnegative(long n, const char* what) {
  if (n < 0) throw std::invalid_argument(std::string(what) + ": n must be >= 0");
}

/// Lowest 2-adic valuation among i·r_{i,k}; 0 when all vanish.
long min_weighted_v2(const PFD& p, bool weight_by_order) {
  long lo = 0;
  for (int i = 1; i <= p.max_order(); ++i) {
    for (long k = 0; k <= p.max_shift(); ++k) {
      const Rational c = weight_by_order ? Rational(p.coeff(i, k) * i) : p.coeff(i, k);
      if (c == 0) continue;
      lo = std::min(lo, vp(c, kTwo).value());
    }
  }
  return lo;
}

std::uint64_t odd_inverse(std::uint64_t x) {
  std::uint64_t inv = x;  // correct to 3 bits for odd x
  for (int i = 0; i < 5; ++i) inv *= 2 - x * inv;
  return inv;
}

std::uint64_t pow4(std::uint64_t x) {
  const std::uint64_t s = x * x;
  return s * s;
}

Integer floor_div(const Integer& a, const Integer& b) {
  Integer q;
  mpz_fdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return q;
}

Rational exact_from_double(double x) { return Rational(x); }

/// Smallest B ≥ 1 with 2^{-B}·count ≤ budget.
unsigned long bits_for(const Rational& budget, long count) {
  unsigned long b = 1;
  Rational unit(Integer(count), pow2(b));
  unit.canonicalize();
  while (unit > budget) {
    ++b;
    unit /= 2;
  }
  return b;
}

}  // namespace

LinearForm linear_form(long n) {
  require_nonnegative(n, "linear_form");
  const PFD p = pfd(r_form(n), 4);
  LinearForm f{n, 0, 0};
  for (long k = 0; k <= n; ++k) f.rho3 += p.coeff(3, k);
  f.rho3 *= 384;
  // H_i(k) = Σ_{ℓ=1..k} (ℓ-1/2)^{-(i+2)}, accumulated as k grows.
  std::vector<Rational> h(5, Rational(0));
  for (long k = 1; k <= n; ++k) {
    const Rational x = Rational(2 * k - 1, 2);
    for (int i = 1; i <= 4; ++i) {
      h[static_cast<std::size_t>(i)] += inverse_power(x, i + 2);
      const Rational& r = p.coeff(i, k);
      if (r != 0) f.rho0 -= Rational(i * (i + 1)) * r * h[static_cast<std::size_t>(i)];
    }
  }
  return f;
}

Integer rho_doublesum(long n) {
  require_nonnegative(n, "rho_doublesum");
  const auto N = static_cast<unsigned long>(n);
  std::vector<Integer> cb(N + 1);
  for (unsigned long m = 0; m <= N; ++m) cb[m] = central_binomial(m);
  Integer total = 0;
  for (unsigned long k = 0; k <= N; ++k) {
    Integer inner = 0;
    for (unsigned long i = 0; i <= k; ++i) inner += cb[i] * cb[i] * cb[N - i] * cb[k - i];
    total += inner * pow2(4 * (N - k)) * cb[k] * cb[k] * cb[N - k];
  }
  return total;
}

Rational rec_extend(const Rational& prev, const Rational& cur, long n) {
  if (n < 1) throw std::invalid_argument("rec_extend: n must be >= 1");
  const RecurrenceCoeffs c = recurrence_coeffs(n);
  Rational next = Rational(c.middle) * cur - Rational(c.tail) * prev;
  next /= Rational(c.lead);
  return next;
}

const LinearForm& FormTable::get(long n) {
  ensure(n);
  std::lock_guard lock(mu_);
  return forms_[static_cast<std::size_t>(n)];
}

void FormTable::ensure(long n) {
  require_nonnegative(n, "FormTable");
  std::lock_guard lock(mu_);
  while (static_cast<long>(forms_.size()) <= n) {
    const long m = static_cast<long>(forms_.size());
    if (m <= 1) {
      forms_.push_back(linear_form(m));
      continue;
    }
    const LinearForm& a = forms_[static_cast<std::size_t>(m - 2)];
    const LinearForm& b = forms_[static_cast<std::size_t>(m - 1)];
    forms_.push_back({m, rec_extend(a.rho0, b.rho0, m - 1), rec_extend(a.rho3, b.rho3, m - 1)});
  }
}

long FormTable::size() const {
  std::lock_guard lock(mu_);
  return static_cast<long>(forms_.size());
}

FormTable& FormTable::global() {
  static FormTable table;
  return table;
}

DetVerdict det_check(long n) {
  require_nonnegative(n, "det_check");
  auto& table = FormTable::global();
  const LinearForm& a = table.get(n);
  const LinearForm& b = table.get(n + 1);
  DetVerdict v;
  v.n = n;
  v.lhs = a.rho0 * b.rho3 - b.rho0 * a.rho3;
  Integer p5 = 1;
  for (int i = 0; i < 5; ++i) p5 *= n + 1;
  v.rhs = Rational(pow2(static_cast<unsigned long>(16 * n + 18)) * 3, p5);
  v.rhs.canonicalize();
  v.pass = v.lhs == v.rhs;
  return v;
}

Padic S_eval(long n, long prec) {
  require_nonnegative(n, "S_eval");
  if (prec < 16 * n + 16) throw std::invalid_argument("S_eval: precision must be >= 16n+16");
  const LinearForm& f = FormTable::global().get(n);
  const long guard = f.rho3 == 0 ? 0 : std::max(0L, -vp(f.rho3, kTwo).value());
  const Padic z = zeta2(5, prec + guard).value;
  const Padic s = z * f.rho3 + f.rho0;
  return s.with_precision(prec);
}

Padic S_eval_by_shifts(long n, long prec) {
  require_nonnegative(n, "S_eval_by_shifts");
  const PFD p = pfd(r_form(n), 4);
  const long work = prec - min_weighted_v2(p, true);
  Padic total = Padic::zero(kTwo, work);
  for (int i = 1; i <= 4; ++i) {
    const Rational c(1, 2);
    const Padic base = volk_inverse_power(c, i + 1, work);
    for (long k = 0; k <= n; ++k) {
      const Rational& r = p.coeff(i, k);
      if (r == 0) continue;
      total += translate_shift(base, c, i + 1, k) * Rational(r * i);
    }
  }
  return total.with_precision(prec);
}

Rational R_prime_half(long n, long t) {
  require_nonnegative(n, "R_prime_half");
  const Rational x = Rational(2 * t + 1, 2);
  Rational value = Rational(pow2(static_cast<unsigned long>(8 * n))) * (2 * x + n);
  Rational logd = 2 / Rational(2 * x + n);
  for (long j = 0; j < n; ++j) {
    const Rational a = x + Rational(1, 2) + j;
    value *= a * a * a * a;
    logd += 4 / a;
  }
  for (long j = 0; j <= n; ++j) {
    const Rational b = x + j;
    value /= b * b * b * b;
    logd -= 4 / b;
  }
  return value * logd;
}

std::uint64_t R_prime_half_residue(long n, std::uint64_t k) {
  require_nonnegative(n, "R_prime_half_residue");
  // At t = k+1/2: t+1/2+j = A_j = k+1+j and t+j = B_j/2 with B_j = 2k+1+2j odd, so
  // R' = 2^{12n+4}·[2P + w·P' - 8w·P·Σ 1/B_j] / Π B_j^4 with P = Π A_j^4, w = 2k+1+n.
  if (12 * n + 4 >= 64) return 0;
  const std::uint64_t w = 2 * k + 1 + static_cast<std::uint64_t>(n);
  std::uint64_t P = 1;
  std::uint64_t dP = 0;  // Σ_j 4A_j^3 Π_{i≠j} A_i^4
  for (long j = 0; j < n; ++j) {
    const std::uint64_t a = k + 1 + static_cast<std::uint64_t>(j);
    dP = dP * pow4(a) + P * 4 * a * a * a;
    P *= pow4(a);
  }
  std::uint64_t inv_prod = 1;
  std::uint64_t inv_sum = 0;
  for (long j = 0; j <= n; ++j) {
    const std::uint64_t inv = odd_inverse(2 * k + 1 + 2 * static_cast<std::uint64_t>(j));
    inv_prod *= pow4(inv);
    inv_sum += inv;
  }
  const std::uint64_t bracket = 2 * P + w * dP - 8 * w * P * inv_sum;
  return (bracket * inv_prod) << (12 * n + 4);
}

long v2_bound(long n, long c) {
  require_nonnegative(n, "v2_bound");
  // ⌈A - 6·log₂(n+1)⌉ = A - ⌊log₂((n+1)^6)⌋ for integer A.
  Integer p6 = 1;
  for (int i = 0; i < 6; ++i) p6 *= n + 1;
  const long floor_log = static_cast<long>(mpz_sizeinbase(p6.get_mpz_t(), 2)) - 1;
  return 16 * n + c - floor_log;
}

V2Report v2_bound_audit(long n, long prec, long depth) {
  require_nonnegative(n, "v2_bound_audit");
  if (prec < 16 * n + 64) throw std::invalid_argument("v2_bound_audit: precision must be >= 16n+64");
  V2Report r;
  r.n = n;
  r.prec = prec;
  r.measured = S_eval(n, prec).valuation();
  r.bound = v2_bound(n, 3);
  r.pass = r.measured >= Valuation(r.bound);
  r.delta_measured = triangle_depth([n](long t) { return R_prime_half(n, t); }, depth);
  r.delta_bound = v2_bound(n, 4);
  r.delta_pass = r.delta_measured >= Valuation(r.delta_bound);
  return r;
}

ArchimedeanVerdict archimedean_check(long n, double tol, long terms) {
  if (n < 0 || n > 12) throw std::invalid_argument("archimedean_check: n must be in [0, 12]");
  if (!(tol > 0)) throw std::invalid_argument("archimedean_check: tol must be > 0");
  const LinearForm& f = FormTable::global().get(n);
  ArchimedeanVerdict v;
  v.n = n;
  Rational scale = 1;
  scale = std::max({scale, Rational(abs(f.rho0)), Rational(abs(f.rho3))});
  v.scale = scale.get_d();
  const Rational budget = exact_from_double(tol) * scale;

  const RatFun d2 = build_R(n).derivative().derivative();
  const Poly& P = d2.num();
  const Poly& Q = d2.den();
  const long dP = P.degree();
  const long dQ = Q.degree();
  if (dQ - dP != 5) throw std::logic_error("archimedean_check: R_n'' must have degree -5");
  for (const auto& q : Q.coeffs()) {
    if (q < 0 || q.get_den() != 1) throw std::logic_error("archimedean_check: denominator not of product form");
  }
  v.analytic = n == 0 && f.rho0 == 0 && f.rho3 * Rational(31, 32) == 744 && P == Poly::constant(24);

  // Q is monic with nonnegative coefficients, so Q(x) ≥ x^{dQ}; |P(x)| ≤ C_M x^{dP} for x ≥ M.
  const auto tail_bound = [&](long M) -> Rational {
    Rational c = 0;
    Rational mpow = 1;  // M^{i - dP}, built downward from i = dP
    for (long i = dP; i >= 0; --i) {
      c += abs(P.coeffs()[static_cast<std::size_t>(i)]) * mpow;
      mpow /= M;
    }
    const Rational x = Rational(2 * M - 1, 2);
    return c / (4 * x * x * x * x);
  };
  long M = terms;
  if (M > 0) {
    if (tail_bound(M) > budget / 4) throw std::invalid_argument("archimedean_check: tol too small for chosen term count");
  } else {
    M = 64;
    while (tail_bound(M) > budget / 4) {
      M *= 2;
      if (M > (1L << 24)) throw std::invalid_argument("archimedean_check: tol unreachable");
    }
  }
  v.terms = M;
  const Rational tail = tail_bound(M);

  // Fixed point: each term floored at 2^{-B}.
  const unsigned long B = bits_for(budget / 8, M);
  Integer Lp = 1;
  for (const auto& c : P.coeffs()) mpz_lcm(Lp.get_mpz_t(), Lp.get_mpz_t(), c.get_den().get_mpz_t());
  std::vector<Integer> pi;
  for (const auto& c : P.coeffs()) pi.push_back(Integer(c.get_num() * (Lp / c.get_den())));
  std::vector<Integer> qi;
  for (const auto& c : Q.coeffs()) qi.push_back(c.get_num());
  Integer sum = 0;
  for (long m = 0; m < M; ++m) {
    const Integer X = 2 * m + 1;
    // N(X) = Σ c_i X^i 2^{d-i} = 2^d·poly(X/2)
    Integer np = 0;
    for (long i = dP; i >= 0; --i) np = np * X + pi[static_cast<std::size_t>(i)] * pow2(static_cast<unsigned long>(dP - i));
    Integer nq = 0;
    for (long i = dQ; i >= 0; --i) nq = nq * X + qi[static_cast<std::size_t>(i)] * pow2(static_cast<unsigned long>(dQ - i));
    Integer scaled = np;
    mpz_mul_2exp(scaled.get_mpz_t(), scaled.get_mpz_t(), B + static_cast<unsigned long>(dQ - dP));
    sum += floor_div(scaled, Integer(Lp * nq));
  }
  const Rational ulp(Integer(1), pow2(B));
  const Rational lhs_lo = Rational(sum) * ulp - tail;
  const Rational lhs_hi = Rational(sum + M) * ulp + tail;

  // ζ(5) by direct summation with integral tail enclosure.
  const Rational weight = abs(f.rho3) * Rational(31, 32);
  long K = 16;
  const auto zeta_width = [&](long k) -> Rational {
    const Rational a(1, 4 * k);
    const Rational b(1, 4 * (k + 1));
    return (a / k / k / k) - (b / (k + 1) / (k + 1) / (k + 1));
  };
  while (weight * zeta_width(K) > budget / 8) K *= 2;
  v.zeta_terms = K;
  const Rational zbudget = weight == 0 ? Rational(1) : Rational(budget / (8 * weight));
  const unsigned long Bz = bits_for(zbudget, K);
  Integer zsum = 0;
  for (long k = 1; k <= K; ++k) {
    Integer num = 1;
    mpz_mul_2exp(num.get_mpz_t(), num.get_mpz_t(), Bz);
    Integer k5 = k;
    mpz_pow_ui(k5.get_mpz_t(), k5.get_mpz_t(), 5);
    zsum += floor_div(num, k5);
  }
  const Rational zulp(Integer(1), pow2(Bz));
  const Rational Kq(K);
  const Rational z_lo = Rational(zsum) * zulp + 1 / (4 * (Kq + 1) * (Kq + 1) * (Kq + 1) * (Kq + 1));
  const Rational z_hi = Rational(zsum + K) * zulp + 1 / (4 * Kq * Kq * Kq * Kq);
  Rational rhs_lo = f.rho0 + f.rho3 * Rational(31, 32) * z_lo;
  Rational rhs_hi = f.rho0 + f.rho3 * Rational(31, 32) * z_hi;
  if (rhs_lo > rhs_hi) std::swap(rhs_lo, rhs_hi);

  Rational gap = 0;
  if (rhs_lo > lhs_hi) gap = rhs_lo - lhs_hi;
  if (lhs_lo > rhs_hi) gap = lhs_lo - rhs_hi;
  const Rational width = std::max(Rational(lhs_hi - lhs_lo), Rational(rhs_hi - rhs_lo));
  v.lhs = Rational((lhs_lo + lhs_hi) / 2).get_d();
  v.rhs = Rational((rhs_lo + rhs_hi) / 2).get_d();
  v.gap = Rational(gap / scale).get_d();
  v.width = Rational(width / scale).get_d();
  v.pass = gap <= budget && width <= budget;
  return v;
}

CoincidenceVerdict zeta3_coincidence(long n, long prec) {
  require_nonnegative(n, "zeta3_coincidence");
  if (prec < 6 * n + 48) throw std::invalid_argument("zeta3_coincidence: precision must be >= 6n+48");
  const PFD pl = pfd(rl_form(n), 2);
  const PFD pb = pfd(rb_form(n), 3);
  const auto integrate = [](const PFD& p, const Rational& c, long prec) {
    // -Σ r_{i,k} ∫(t+k+c)^{-i}
    const long work = prec - min_weighted_v2(p, false);
    Padic total = Padic::zero(kTwo, work);
    for (int i = 1; i <= p.max_order(); ++i) {
      const Padic base = volk_inverse_power(c, i, work);
      for (long k = 0; k <= p.max_shift(); ++k) {
        const Rational& r = p.coeff(i, k);
        if (r == 0) continue;
        total -= translate_shift(base, c, i, k) * r;
      }
    }
    return total.with_precision(prec);
  };
  CoincidenceVerdict v;
  v.n = n;
  // Both forms are 2-adically tiny; raise the precision until each carries
  // kResolvedDigits significant digits, so equality is not decided on zeros.
  constexpr long kResolvedDigits = 32;
  const long cap = 16 * n + 512;
  long work = prec;
  for (;;) {
    v.lattice = integrate(pl, Rational(1, 4), work);
    v.binomial = integrate(pb, Rational(1, 2), work);
    const long rel = std::min(v.lattice.relative_precision(), v.binomial.relative_precision());
    if (rel >= kResolvedDigits || work >= cap) break;
    work = std::min(cap, work + kResolvedDigits);
  }
  v.prec = work;
  v.agreement = agreement(v.lattice, v.binomial);
  v.pass = v.agreement.is_infinite();
  if (!v.binomial.is_zero_at_precision()) {
    const Padic ratio = v.lattice / v.binomial;
    if (!ratio.is_zero_at_precision() && ratio.valuation() >= Valuation(0)) {
      v.ratio_known = true;
      v.ratio_precision = std::min(64L, ratio.precision());
      v.ratio_residue = ratio.with_precision(v.ratio_precision).residue();
    }
  }
  return v;
}

double growth_rate(long n) {
  if (n < 1) throw std::invalid_argument("growth_rate: n must be >= 1");
  const LinearForm& f = FormTable::global().get(n);
  double lg = -INFINITY;
  if (f.rho0 != 0) lg = log_abs(f.rho0);
  if (f.rho3 != 0) lg = std::max(lg, log_abs(f.rho3));
  return std::exp(lg / static_cast<double>(n));
}

}  // namespace azeta
