#pragma once

#include <array>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "azeta/exact.hpp"
#include "azeta/forms.hpp"
#include "azeta/jet.hpp"

namespace azeta {

/// Proven inclusions; a false flag contradicts a theorem.
struct LemmaFlags {
  bool d_rho3 = false;       // d_n·ρ_{n,3} ∈ Z
  bool d6_rho0 = false;      // d_n^6·ρ_{n,0} ∈ Z
  bool phi_d6_rho0 = false;  // Φ_n^{-1} d_n^6·ρ_{n,0} ∈ Z
  bool psi_rho0 = false;     // Ψ_n·ρ_{n,0} ∈ Z
  bool psi_rho3 = false;     // Ψ_n·ρ_{n,3} ∈ Z
  bool all() const { return d_rho3 && d6_rho0 && phi_d6_rho0 && psi_rho0 && psi_rho3; }
};

/// Expected but unproven inclusions; failures are findings.
struct ConjectureFlags {
  bool rho3_integer = false;  // ρ_{n,3} ∈ Z
  bool d5_rho0 = false;       // d_n^5·ρ_{n,0} ∈ Z
  bool all() const { return rho3_integer && d5_rho0; }
};

struct ValuationReport {
  long n = 0;
  /// p → (v_p(ρ_{n,0}), v_p(ρ_{n,3})) over primes ≤ n and primes of the denominators.
  std::map<unsigned long, std::pair<Valuation, Valuation>> valuations;
  LemmaFlags lemma;
  ConjectureFlags conjecture;
  std::vector<std::string> witnesses;
};

/// Thrown when a proven inclusion fails; carries the full report.
class LemmaViolation : public std::runtime_error {
 public:
  explicit LemmaViolation(ValuationReport report);
  const ValuationReport& report() const { return report_; }

 private:
  ValuationReport report_;
};

/// n ≥ 1. `with_valuations` = false skips the per-prime map (flags only).
/// Throws LemmaViolation on a lemma-level failure.
ValuationReport audit_integrality(const LinearForm& f, bool with_valuations = true);
ValuationReport audit_integrality(long n, bool with_valuations = true);

struct PrimeBoundVerdict {
  long n = 0;
  bool pass = false;
  Valuation min_valuation = Valuation::infinity();  // over eligible primes
  unsigned long witness_prime = 0;                  // set on failure
};

/// v_p(ρ_{n,0}) ≥ -5 for every prime p > max(√(2n), 3); n ≥ 1.
PrimeBoundVerdict vp_rho0_audit(long n);

/// p > 3 and p² > 2n.
bool eligible_prime(unsigned long p, long n);

using QuadIndex = std::array<long, 4>;

/// F_{i1,i2,i3,i4}(ε) as a jet; 0 ≤ i1 ≤ ... ≤ i4 ≤ n-ℓ, 1 ≤ ℓ ≤ n, order ≤ 3.
Jet quad_sum_F(const QuadIndex& i, long n, long l, std::size_t order);

/// -16/(2ℓ-1)²·(n-ℓ+1)/(i4+1) times the twelve central binomials.
Rational quad_F_closed(const QuadIndex& i, long n, long l);

/// Σ over all index tuples, by nested convolution.
Jet quad_sum_total(long n, long l, std::size_t order);

/// T_{n,ℓ}(ε) from its single-sum definition.
Jet T_nl(long n, long l, std::size_t order);

struct QuadVerdict {
  long n = 0;
  long l = 0;
  bool jets_equal = false;     // T_{n,ℓ} = Σ F as order-3 jets
  bool derivative_ok = false;  // (1/3)·T'''(0) = Σ_k Σ_i i(i+1) r_{i,k}/(ℓ-1/2)^{i+2}
  std::string witness;
  bool pass() const { return jets_equal && derivative_ok; }
};

/// 1 ≤ ℓ ≤ n ≤ 12.
QuadVerdict quad_identity_check(long n, long l);

/// -Σ_ℓ (1/3)·T_{n,ℓ}'''(0); equals ρ_{n,0}.
Rational rho0_from_quad_sums(long n);

struct ClaimVerdict {
  long n = 0;
  long tuples = 0;
  bool pass = false;          // every v_p(F(0)) ≥ -2
  bool trivial_pass = false;  // every v_p(F(0)) ≥ -3
  long min_valuation = 0;
  std::string witness;
};

/// v_p(F(0)) over all ℓ, tuples and eligible primes p ≤ 2n, via Legendre's formula
/// applied to quad_F_closed.
ClaimVerdict per_term_claim(long n);

/// v_p(d^λ/dε^λ F|₀) ≥ -2-λ for λ ≤ 3 on at most `samples` tuples per ℓ.
ClaimVerdict lambda_cascade(long n, long samples);

/// Σ_{k=0}^{N} (a0+2k)Π_{j≥0}(a_j)_k / (a0·k!·Π_{j≥1}(1+a0-a_j)_k).
Jet vwp_eval(const std::vector<Jet>& params, long N, std::size_t order);

/// (n+ε)·(1/2)_n²(1/2+ε)_n²/(n!²(1+ε)_n²)·₉V₈(-n-ε; -n-ε, ½, ½, ½-ε, ½-ε, -n, -n) to order 1.
/// Its ε¹ coefficient times 2^{8n} is ρ_n.
Jet rho_vwp_jet(long n);

}  // namespace azeta
