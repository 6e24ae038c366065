#pragma once

#include <string>
#include <vector>

#include "azeta/exact.hpp"
#include "azeta/padic.hpp"

namespace azeta {

/// α/(α-β); requires α > β > 0 (std::invalid_argument otherwise).
double bel_bound(double alpha, double beta);

/// 2-adic precision used for S_n: 16n + extra bits, extra ≥ 64.
struct PrecisionPolicy {
  long extra = 64;
  long operator()(long n) const { return 16 * n + extra; }
};

/// Φ_n^{-1} d_n^6; an integer because Φ_n | d_n.
Integer hat_scale(long n);

struct RateRow {
  long n = 0;
  long prec = 0;
  Valuation v2_S = Valuation::infinity();  // certified v_2(S_n)
  long v2_scale = 0;                       // v_2(Φ_n^{-1}d_n^6)
  bool v2_scale_matches = false;           // equals 6·⌊log₂ n⌋
  Valuation v2_hat = Valuation::infinity();
  bool lower_only = false;       // S_n vanished at precision; α_n is a lower bound
  double alpha_n = 0;            // v_2(Ŝ_n)·log2/n
  double alpha_bound_n = 0;      // (16n+3-6·log₂(n+1))·log2/n
  bool alpha_ok = false;         // v_2(Ŝ_n) ≥ ⌈16n+3-6·log₂(n+1)⌉
  double beta_n = 0;             // log max(|a_n|,|b_n|)/n
  Integer a;                     // Φ_n^{-1}d_n^6·ρ_{n,0}
  Integer b;                     // Φ_n^{-1}d_n^6·ρ_{n,3}
};

struct NonvanishingVerdict {
  long n = 0;
  bool nonzero = false;       // a_n b_{n+1} - a_{n+1} b_n ≠ 0
  bool matches_det = false;   // equals the scaled determinant closed form
};

struct Certificate {
  std::string alpha_expr = "16*log(2)";
  std::string beta_expr = "8*log(2)+5";
  double alpha = 0;
  double beta = 0;
  double mu_bound = 0;
  std::vector<RateRow> rows;  // n = 1..n_max
  std::vector<NonvanishingVerdict> nonvanishing;
  bool nonvanishing_all() const;
  bool alpha_all() const;
};

/// a_n, b_n; throws std::logic_error when either fails to be an integer.
RateRow rate_row(long n, const PrecisionPolicy& policy);

/// Exact wedge a_n b_{n+1} - a_{n+1} b_n against
/// (Φ_nΦ_{n+1})^{-1}(d_n d_{n+1})^6·3·2^{16n+18}/(n+1)^5; n ≥ 1.
NonvanishingVerdict nonvanishing_check(long n);

/// Rates for 1 ≤ n ≤ n_max and wedges for 1 ≤ n ≤ nonvanishing_max.
/// Throws std::runtime_error on a vanishing wedge.
Certificate empirical_rates(long n_max, const PrecisionPolicy& policy, long nonvanishing_max);

/// log Ψ_n / n + 8·log 2, compared against 16·log 2.
double lightened_rate(long n);

}  // namespace azeta
