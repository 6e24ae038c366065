// Acceptance runner: one PASS/FAIL line per criterion. Exit 0 iff every
// selected criterion passed.

#include <CLI11.hpp>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "azeta/bernoulli.hpp"
#include "azeta/denominators.hpp"
#include "azeta/forms.hpp"
#include "azeta/measure.hpp"
#include "azeta/ratfun.hpp"
#include "azeta/volkenborn.hpp"

using namespace azeta;

namespace {

// Tolerances and ranges; changing any of these changes what is being accepted.
constexpr long kRecurrenceMax = 200;
constexpr long kDeterminantMax = 100;
constexpr long kTelescopeMax = 30;
constexpr long kSmallnessMax = 64;
constexpr long kSmallnessExtraBits = 64;
constexpr std::size_t kBernoulliWarm = 600;
constexpr long kZetaBits = 64;
constexpr long kLemmaMax = 1000;
constexpr long kConjectureMax = 2000;
constexpr long kPrimeBoundMax = 500;
constexpr long kPerTermMax = 30;
constexpr long kQuadMax = 12;
constexpr long kArchimedeanMax = 12;
constexpr double kArchimedeanTol = 1e-12;
constexpr long kCoincidenceMax = 20;
constexpr long kNonvanishingMax = 200;
constexpr long kRateMax = 64;
constexpr double kBetaCorridor = 0.35;
constexpr double kMuTruncated = 20.342651;

struct Outcome {
  bool pass = true;
  std::string detail;
};

struct Criterion {
  int id;
  double budget_s;
  std::function<Outcome()> body;
};

Outcome fail(Outcome o, const std::string& why) {
  o.pass = false;
  if (!o.detail.empty()) o.detail += "; ";
  o.detail += why;
  return o;
}

Outcome ac1() {
  Outcome o;
  const std::vector<long> expected = {1, 96, 14944};
  for (long n = 0; n < 3; ++n) {
    if (rho_doublesum(n) != expected[static_cast<std::size_t>(n)] ||
        linear_form(n).rho3 != Rational(768 * expected[static_cast<std::size_t>(n)]))
      return fail(o, "initial value rho_" + std::to_string(n));
  }
  FormTable::global().ensure(kRecurrenceMax);
  for (long n = 0; n <= kRecurrenceMax; ++n) {
    const LinearForm& rec = FormTable::global().get(n);
    const LinearForm direct = linear_form(n);
    if (rec.rho0 != direct.rho0 || rec.rho3 != direct.rho3 || direct.rho3 != Rational(768 * rho_doublesum(n)))
      return fail(o, "triple agreement at n=" + std::to_string(n));
  }
  o.detail = "rho_0..2 = 1, 96, 14944; triple agreement n <= " + std::to_string(kRecurrenceMax);
  return o;
}

Outcome ac2() {
  Outcome o;
  if (det_check(0).lhs != Rational(3 * 262144)) return fail(o, "n=0 value is not 3*2^18");
  for (long n = 0; n <= kDeterminantMax; ++n)
    if (!det_check(n).pass) return fail(o, "determinant at n=" + std::to_string(n));
  o.detail = "exact for n <= " + std::to_string(kDeterminantMax) + ", n=0 value 3*2^18";
  return o;
}

Outcome ac3() {
  Outcome o;
  for (long n = 1; n <= kTelescopeMax; ++n) {
    for (TelescopeMode m : {TelescopeMode::coefficients, TelescopeMode::samples}) {
      const TelescopeVerdict v = telescope_check(n, m);
      if (!v.pass) return fail(o, "n=" + std::to_string(n) + ": " + v.witness);
    }
  }
  o.detail = "both modes, 1 <= n <= " + std::to_string(kTelescopeMax);
  return o;
}

Outcome ac4() {
  Outcome o;
  BernoulliTable::global().ensure(kBernoulliWarm);
  long tightest = 1L << 30;
  for (long n = 1; n <= kSmallnessMax; ++n) {
    const long prec = 16 * n + kSmallnessExtraBits;
    const Padic S = S_eval(n, prec);
    const long bound = v2_bound(n, 3);
    const Valuation v = S.is_zero_at_precision() ? Valuation(prec) : S.valuation();
    if (v < Valuation(bound)) return fail(o, "v_2(S_" + std::to_string(n) + ") below bound");
    tightest = std::min(tightest, v.value() - bound);
  }
  o.detail = "n <= " + std::to_string(kSmallnessMax) + " at 16n+64, smallest margin " + std::to_string(tightest);
  return o;
}

Outcome ac5() {
  Outcome o;
  for (long s : {2L, 4L}) {
    const Padic z = zeta2(s, kZetaBits).value;
    if (!z.is_zero_at_precision() || z.precision() < kZetaBits) return fail(o, "zeta_2(" + std::to_string(s) + ") not zero");
  }
  for (long s = 2; s <= 8; ++s) {
    // Inputs carry guard bits so both sides are compared at exactly 64.
    const long guard = kZetaBits + 16;
    const Padic lhs = volk_inverse_power(fraction(1, 2), s - 1, guard) * fraction(1, s - 1);
    const Padic rhs = zeta2(s, guard).value * Rational(pow2(static_cast<unsigned long>(s)));
    if (std::min(lhs.precision(), rhs.precision()) < kZetaBits)
      return fail(o, "precision below 64 at s=" + std::to_string(s));
    if (!(lhs.with_precision(kZetaBits) == rhs.with_precision(kZetaBits)))
      return fail(o, "half-shift at s=" + std::to_string(s));
  }
  o.detail = "zeta_2(2), zeta_2(4) zero at 64; half-shift identity s = 2..8";
  return o;
}

Outcome ac6() {
  Outcome o;
  FormTable::global().ensure(kConjectureMax);
  long conjecture_failures = 0;
  for (long n = 1; n <= kConjectureMax; ++n) {
    try {
      const ValuationReport r = audit_integrality(n, false);
      if (!r.conjecture.all()) ++conjecture_failures;
    } catch (const LemmaViolation& e) {
      if (n <= kLemmaMax) return fail(o, std::string("lemma at n=") + std::to_string(n) + ": " + e.what());
      return fail(o, "lemma beyond range at n=" + std::to_string(n));
    }
  }
  if (conjecture_failures > 0) return fail(o, std::to_string(conjecture_failures) + " conjecture findings");
  o.detail = "lemmas n <= " + std::to_string(kLemmaMax) + ", conjecture flags n <= " + std::to_string(kConjectureMax);
  return o;
}

Outcome ac7() {
  Outcome o;
  for (long n = 1; n <= kPrimeBoundMax; ++n) {
    const PrimeBoundVerdict v = vp_rho0_audit(n);
    if (!v.pass) return fail(o, "v_p(rho0) < -5 at n=" + std::to_string(n) + ", p=" + std::to_string(v.witness_prime));
  }
  for (long n = 1; n <= kPerTermMax; ++n) {
    const ClaimVerdict v = per_term_claim(n);
    if (!v.pass) return fail(o, "per-term claim at n=" + std::to_string(n) + ": " + v.witness);
  }
  o.detail = "prime bound n <= " + std::to_string(kPrimeBoundMax) + ", per-term claim n <= " + std::to_string(kPerTermMax);
  return o;
}

Outcome ac8() {
  Outcome o;
  for (long n = 1; n <= kQuadMax; ++n) {
    for (long l = 1; l <= n; ++l) {
      const QuadVerdict v = quad_identity_check(n, l);
      if (!v.pass()) return fail(o, "(n,l)=(" + std::to_string(n) + "," + std::to_string(l) + "): " + v.witness);
    }
    if (rho0_from_quad_sums(n) != linear_form(n).rho0) return fail(o, "rho0 reconstruction at n=" + std::to_string(n));
  }
  o.detail = "jets and rho0 reconstruction for n <= " + std::to_string(kQuadMax);
  return o;
}

Outcome ac9() {
  Outcome o;
  double worst = 0;
  for (long n = 0; n <= kArchimedeanMax; ++n) {
    const ArchimedeanVerdict v = archimedean_check(n, kArchimedeanTol);
    if (!v.pass) return fail(o, "n=" + std::to_string(n));
    if (n == 0 && !v.analytic) return fail(o, "n=0 did not close analytically");
    worst = std::max(worst, v.width);
  }
  std::ostringstream s;
  s << "n <= " << kArchimedeanMax << " at relative " << kArchimedeanTol << ", widest enclosure " << worst;
  o.detail = s.str();
  return o;
}

Outcome ac10() {
  Outcome o;
  long failures = 0;
  std::string first;
  for (long n = 1; n <= kCoincidenceMax; ++n) {
    const CoincidenceVerdict v = zeta3_coincidence(n, 6 * n + 48);
    if (!v.pass) {
      ++failures;
      if (first.empty()) {
        first = "n=" + std::to_string(n) + " agreement " + (v.agreement.is_infinite() ? std::string("inf") : std::to_string(v.agreement.value())) +
                " of " + std::to_string(v.prec) + " bits";
        if (v.ratio_known) first += ", S^L/S^B = " + v.ratio_residue.get_str() + " mod 2^" + std::to_string(v.ratio_precision);
      }
    }
  }
  if (failures > 0) return fail(o, std::to_string(failures) + " of " + std::to_string(kCoincidenceMax) + " differ; first " + first);
  o.detail = "S^L = S^B for n <= " + std::to_string(kCoincidenceMax);
  return o;
}

Outcome ac11() {
  Outcome o;
  const double l2 = std::log(2.0);
  const double mu = bel_bound(16 * l2, 8 * l2 + 5);
  if (std::floor(mu * 1e6) != std::round(kMuTruncated * 1e6)) return fail(o, "mu_bound " + std::to_string(mu));
  const Certificate c = empirical_rates(kRateMax, PrecisionPolicy{}, kNonvanishingMax);
  if (!c.nonvanishing_all()) return fail(o, "wedge check failed");
  if (!c.alpha_all()) return fail(o, "alpha_n below bound rate");
  const double beta64 = c.rows.back().beta_n;
  if (std::fabs(beta64 - c.beta) > kBetaCorridor) return fail(o, "beta_64 = " + std::to_string(beta64));
  char buf[200];
  std::snprintf(buf, sizeof buf, "mu_bound %.9f, nonvanishing n <= %ld, beta_64 = %.4f (target %.4f), alpha_n ok n <= %ld",
                mu, kNonvanishingMax, beta64, c.beta, kRateMax);
  o.detail = buf;
  return o;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Acceptance criteria AC1-AC11"};
  std::vector<int> selected;
  app.add_option("--criterion", selected, "Criterion number(s); default all")->check(CLI::Range(1, 11));
  CLI11_PARSE(app, argc, argv);

  const std::vector<Criterion> all = {
      {1, 120, ac1},  {2, 10, ac2},  {3, 120, ac3}, {4, 600, ac4},  {5, 10, ac5},  {6, 1800, ac6},
      {7, 900, ac7},  {8, 300, ac8}, {9, 60, ac9},  {10, 120, ac10}, {11, 600, ac11}};
  if (selected.empty())
    for (const Criterion& c : all) selected.push_back(c.id);

  bool ok = true;
  for (int id : selected) {
    const Criterion& c = all[static_cast<std::size_t>(id - 1)];
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.body();
    } catch (const std::exception& e) {
      o = fail(o, std::string("exception: ") + e.what());
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (secs > c.budget_s) o = fail(o, "runtime " + std::to_string(secs) + "s over budget");
    char timing[64];
    std::snprintf(timing, sizeof timing, " [%.2fs / %.0fs]", secs, c.budget_s);
    std::cout << "AC" << c.id << " " << (o.pass ? "PASS" : "FAIL") << " " << o.detail << timing << std::endl;
    ok = ok && o.pass;
  }
  return ok ? 0 : 1;
}
