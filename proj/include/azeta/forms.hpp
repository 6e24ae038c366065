#pragma once

#include <cstdint>
#include <deque>
#include <mutex>
#include <optional>
#include <string>

#include "azeta/exact.hpp"
#include "azeta/padic.hpp"

namespace azeta {

/// S_n = rho0 + rho3·ζ₂(5).
struct LinearForm {
  long n = 0;
  Rational rho0;
  Rational rho3;
};

/// Direct route through the partial fractions of R_n:
///   rho3 = 384·Σ_k r_{3,k},
///   rho0 = -Σ_i Σ_k Σ_{ℓ=1..k} i(i+1)·r_{i,k}/(ℓ-1/2)^{i+2}.
LinearForm linear_form(long n);

/// Σ_{0≤i≤k≤n} 2^{4(n-k)} C(2i,i)² C(2n-2i,n-i) C(2k-2i,k-i) C(2k,k)² C(2n-2k,n-k).
Integer rho_doublesum(long n);

/// ρ_{n+1} from ρ_{n-1} = prev and ρ_n = cur; n ≥ 1.
Rational rec_extend(const Rational& prev, const Rational& cur, long n);

/// Append-only table of linear forms. Entries 0 and 1 come from linear_form,
/// later ones from the recurrence. References returned by get stay valid.
class FormTable {
 public:
  const LinearForm& get(long n);
  void ensure(long n);
  long size() const;

  static FormTable& global();

 private:
  mutable std::mutex mu_;
  std::deque<LinearForm> forms_;
};

struct DetVerdict {
  long n = 0;
  bool pass = false;
  Rational lhs;  // ρ_{n,0}ρ_{n+1,3} - ρ_{n+1,0}ρ_{n,3}
  Rational rhs;  // 3·2^{16n+18}/(n+1)^5
};
DetVerdict det_check(long n);

/// S_n at absolute precision prec; prec ≥ 16n+16 (std::invalid_argument otherwise).
Padic S_eval(long n, long prec);

/// Same value through Σ i·r_{i,k}·∫(t+k+1/2)^{-i-1}, term by term.
Padic S_eval_by_shifts(long n, long prec);

/// R_n'(k+1/2) mod 2^64; the value is a 2-adic integer.
std::uint64_t R_prime_half_residue(long n, std::uint64_t k);
/// R_n'(t+1/2) exactly.
Rational R_prime_half(long n, long t);

struct V2Report {
  long n = 0;
  long prec = 0;
  Valuation measured = Valuation::infinity();  // +∞ reads as "≥ prec"
  long bound = 0;                              // ⌈16n + 3 - 6·log₂(n+1)⌉
  bool pass = false;
  Valuation delta_measured = Valuation::infinity();  // triangle depth of R_n'(t+1/2)
  long delta_bound = 0;                              // ⌈16n + 4 - 6·log₂(n+1)⌉
  bool delta_pass = false;
};

/// ⌈16n + c - 6·log₂(n+1)⌉, decided exactly.
long v2_bound(long n, long c);

/// prec ≥ 16n+64; `depth` is the triangle-depth sample count.
V2Report v2_bound_audit(long n, long prec, long depth = 256);

struct ArchimedeanVerdict {
  long n = 0;
  long terms = 0;        // summed m = 0..terms-1
  long zeta_terms = 0;   // direct ζ(5) summation length
  double lhs = 0;        // Σ R_n''(m+1/2)
  double rhs = 0;        // ρ0 + ρ3·(31/32)·ζ(5)
  double gap = 0;        // interval gap relative to scale
  double width = 0;      // relative enclosure width
  double scale = 1;      // max(1, |ρ0|, |ρ3|)
  bool analytic = false; // n = 0: both sides are 744·ζ(5)
  bool pass = false;
};

/// Real companion Σ_m R_n''(m+1/2) = ρ0 + ρ3·(1-2^{-5})·ζ(5), both sides as
/// certified intervals, tolerance relative to max(1,|ρ0|,|ρ3|). n ≤ 12.
/// `terms` = 0 picks the summation length; a fixed length that cannot reach
/// tol throws std::invalid_argument.
ArchimedeanVerdict archimedean_check(long n, double tol, long terms = 0);

struct CoincidenceVerdict {
  long n = 0;
  long prec = 0;        // common certified precision
  Padic lattice = Padic::zero(2, 0);   // -∫ R^L(t+1/4)
  Padic binomial = Padic::zero(2, 0);  // -∫ R^B(t+1/2)
  Valuation agreement = Valuation::infinity();
  bool pass = false;    // equal at prec
  bool ratio_known = false;
  Integer ratio_residue;  // (S^L/S^B) mod 2^min(64, ratio precision)
  long ratio_precision = 0;
};

/// prec ≥ 6n+48 is the starting precision; it is raised (up to 16n+512) until
/// both values carry 32 significant digits.
CoincidenceVerdict zeta3_coincidence(long n, long prec);

/// max(|ρ_{n,0}|, |ρ_{n,3}|)^{1/n}.
double growth_rate(long n);

}  // namespace azeta
