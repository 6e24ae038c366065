#include "azeta/measure.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <stdexcept>

#include "azeta/forms.hpp"

namespace azeta {

namespace {

const double kLog2 = std::log(2.0);

double log_max_abs(const Integer& a, const Integer& b) {
  if (a == 0 && b == 0) return -INFINITY;
  if (a == 0) return log_abs(b);
  if (b == 0) return log_abs(a);
  return std::max(log_abs(a), log_abs(b));
}

Integer exact_integer(const Rational& q, const char* what, long n) {
  if (q.get_den() != 1) throw std::logic_error(std::string(what) + " is not an integer at n=" + std::to_string(n));
  return q.get_num();
}

}  // namespace

double bel_bound(double alpha, double beta) {
  if (!(alpha > beta && beta > 0)) throw std::invalid_argument("bel_bound: need alpha > beta > 0");
  return alpha / (alpha - beta);
}

Integer hat_scale(long n) {
  Integer d6;
  mpz_pow_ui(d6.get_mpz_t(), d_lcm(n).get_mpz_t(), 6);
  return d6 / phi(n);
}

RateRow rate_row(long n, const PrecisionPolicy& policy) {
  if (n < 1) throw std::invalid_argument("rate_row: n must be >= 1");
  if (policy.extra < 64) throw std::invalid_argument("rate_row: precision policy must give >= 16n+64 bits");
  const LinearForm& f = FormTable::global().get(n);
  RateRow r;
  r.n = n;
  r.prec = policy(n);
  const Integer s = hat_scale(n);
  r.a = exact_integer(Rational(f.rho0 * s), "a_n", n);
  r.b = exact_integer(Rational(f.rho3 * s), "b_n", n);
  r.v2_scale = vp(s, 2).value();
  const long floor_log = static_cast<long>(std::bit_width(static_cast<unsigned long>(n))) - 1;
  r.v2_scale_matches = r.v2_scale == 6 * floor_log;

  const Padic S = S_eval(n, r.prec);
  r.lower_only = S.is_zero_at_precision();
  r.v2_S = r.lower_only ? Valuation(r.prec) : S.valuation();
  r.v2_hat = r.v2_S + r.v2_scale;
  const auto dn = static_cast<double>(n);
  r.alpha_n = static_cast<double>(r.v2_hat.value()) * kLog2 / dn;
  r.alpha_bound_n = (16.0 * dn + 3 - 6 * std::log2(dn + 1)) * kLog2 / dn;
  r.alpha_ok = r.v2_hat >= Valuation(v2_bound(n, 3));
  r.beta_n = log_max_abs(r.a, r.b) / dn;
  return r;
}

NonvanishingVerdict nonvanishing_check(long n) {
  if (n < 1) throw std::invalid_argument("nonvanishing_check: n must be >= 1");
  auto& table = FormTable::global();
  const LinearForm& f = table.get(n);
  const LinearForm& g = table.get(n + 1);
  const Integer s = hat_scale(n);
  const Integer t = hat_scale(n + 1);
  const Integer a0 = exact_integer(Rational(f.rho0 * s), "a_n", n);
  const Integer b0 = exact_integer(Rational(f.rho3 * s), "b_n", n);
  const Integer a1 = exact_integer(Rational(g.rho0 * t), "a_n", n + 1);
  const Integer b1 = exact_integer(Rational(g.rho3 * t), "b_n", n + 1);
  const Integer wedge = a0 * b1 - a1 * b0;
  Integer p5 = 1;
  for (int i = 0; i < 5; ++i) p5 *= n + 1;
  Rational expected(s * t * 3 * pow2(static_cast<unsigned long>(16 * n + 18)), p5);
  expected.canonicalize();
  NonvanishingVerdict v;
  v.n = n;
  v.nonzero = wedge != 0;
  v.matches_det = Rational(wedge) == expected;
  return v;
}

bool Certificate::nonvanishing_all() const {
  return std::all_of(nonvanishing.begin(), nonvanishing.end(),
                     [](const NonvanishingVerdict& v) { return v.nonzero && v.matches_det; });
}

bool Certificate::alpha_all() const {
  return std::all_of(rows.begin(), rows.end(), [](const RateRow& r) { return r.alpha_ok; });
}

Certificate empirical_rates(long n_max, const PrecisionPolicy& policy, long nonvanishing_max) {
  if (n_max < 1) throw std::invalid_argument("empirical_rates: n_max must be >= 1");
  Certificate c;
  c.alpha = 16 * kLog2;
  c.beta = 8 * kLog2 + 5;
  c.mu_bound = bel_bound(c.alpha, c.beta);
  FormTable::global().ensure(std::max(n_max, nonvanishing_max) + 1);
  for (long n = 1; n <= n_max; ++n) c.rows.push_back(rate_row(n, policy));
  for (long n = 1; n <= nonvanishing_max; ++n) {
    c.nonvanishing.push_back(nonvanishing_check(n));
    if (!c.nonvanishing.back().nonzero) throw std::runtime_error("empirical_rates: wedge vanishes at n=" + std::to_string(n));
  }
  return c;
}

double lightened_rate(long n) {
  return log_abs(psi(n)) / static_cast<double>(n) + 8 * kLog2;
}

}  // namespace azeta
