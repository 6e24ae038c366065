#pragma once

#include <limits>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "azeta/exact.hpp"
#include "azeta/jet.hpp"
#include "azeta/poly.hpp"

namespace azeta {

/// (t + shift)_length raised to exponent (exponent may be negative).
struct PochhammerBlock {
  Rational shift;
  long length = 0;
  long exponent = 0;
};

/// Laurent expansion ε^valuation · series.
struct Laurent {
  long valuation = 0;
  Jet series{0};
};

/// scalar · extra(t) · Π blocks.
struct FactoredForm {
  Rational scalar{1};
  Poly extra = Poly::constant(1);
  std::vector<PochhammerBlock> blocks;

  /// Direct product evaluation; std::domain_error at a pole.
  Rational operator()(const Rational& t) const;

  /// f(x+ε) with `order` + 1 series coefficients; extra must not vanish identically.
  Laurent laurent(const Rational& x, std::size_t order) const;

  /// Net exponent of each linear factor (t + a), zeros dropped.
  std::map<Rational, long> multiplicities() const;

  long degree() const;
  /// f(t + c).
  FactoredForm shifted(const Rational& c) const;
};

/// Reduced quotient num/den with monic den.
class RatFun {
 public:
  /// Reduces by the polynomial gcd.
  RatFun(Poly num, Poly den);

  /// Expands a factored form; cancels extra-factor roots against poles.
  static RatFun from_factored(FactoredForm f);

  const Poly& num() const { return num_; }
  const Poly& den() const { return den_; }
  const std::optional<FactoredForm>& factored() const { return factored_; }
  /// den = Π (t+a)^m when known.
  const std::optional<std::map<Rational, long>>& den_roots() const { return den_roots_; }

  /// deg num - deg den; LONG_MIN for the zero function.
  long degree() const {
    return num_.is_zero() ? std::numeric_limits<long>::min() : num_.degree() - den_.degree();
  }

  /// Horner on num and den; std::domain_error at a pole.
  Rational operator()(const Rational& t) const;
  /// Factored evaluation when available, else Horner.
  Rational eval_preferred(const Rational& t) const;

  RatFun derivative() const;
  RatFun shifted(const Rational& c) const;
  RatFun scaled(const Rational& q) const;

 private:
  struct Unreduced {};
  RatFun(Poly num, Poly den, Unreduced);

  Poly num_;
  Poly den_;
  std::optional<FactoredForm> factored_;
  std::optional<std::map<Rational, long>> den_roots_;
};

FactoredForm r_form(long n);
FactoredForm t_form(long n);
FactoredForm t_printed_form(long n);
FactoredForm rl_form(long n);
FactoredForm rb_form(long n);

/// 2^{8n}(2t+n)(t+1/2)_n^4/(t)_{n+1}^4.
RatFun build_R(long n);
/// Telescoping certificate with the corrected cubic coefficient 48n(2n+1).
RatFun build_T(long n);
/// Certificate with cubic coefficient 768n(2n+1); fails the telescoping identity.
RatFun build_T_printed(long n);
/// 2^{6n}(t+3/4)_n^2/(t)_{n+1}^2.
RatFun build_RL(long n);
/// 2^{6n}(2t+n)(t+1/2)_n^3/(t)_{n+1}^3.
RatFun build_RB(long n);

/// Quartic factor of T_n (including the outer factor 16).
Poly certificate_quartic(long n, bool printed = false);

/// Recurrence coefficients A_n ρ_{n+1} - B_n ρ_n + C_n ρ_{n-1} = 0.
struct RecurrenceCoeffs {
  Integer lead;    // (n+1)^5
  Integer middle;  // 32(2n+1)(8n^4+16n^3+20n^2+12n+3)
  Integer tail;    // 2^16 n^5
};
RecurrenceCoeffs recurrence_coeffs(long n);

/// r_{i,k} for 1 ≤ i ≤ max_order, 0 ≤ k ≤ max_shift, plus polynomial part.
class PFD {
 public:
  PFD(int max_order, long max_shift);

  int max_order() const { return max_order_; }
  long max_shift() const { return max_shift_; }
  /// Zero outside the stored range.
  Rational coeff(int i, long k) const;
  void set(int i, long k, Rational value);
  const Poly& poly_part() const { return poly_part_; }
  void set_poly_part(Poly p) { poly_part_ = std::move(p); }

  Rational operator()(const Rational& t) const;

 private:
  int max_order_;
  long max_shift_;
  std::vector<std::vector<Rational>> c_;  // [i-1][k]
  Poly poly_part_;
};

/// Partial fractions; factored fast path when the hint exists.
/// Throws std::domain_error on a pole outside {0,-1,-2,...} or of order > max_order.
PFD pfd(const RatFun& f, int max_order);
PFD pfd(const FactoredForm& f, int max_order);
/// Taylor-shift path on expanded num/den only.
PFD pfd_generic(const RatFun& f, int max_order);

enum class TelescopeMode { coefficients, samples };

struct TelescopeVerdict {
  long n = 0;
  TelescopeMode mode = TelescopeMode::coefficients;
  bool pass = false;
  std::string witness;
};

/// (n+1)^5 R_{n+1} - B_n R_n + 2^16 n^5 R_{n-1} = T(t+1) - T(t) exactly.
TelescopeVerdict telescope_check(long n, TelescopeMode mode);
TelescopeVerdict telescope_check(long n, TelescopeMode mode, const RatFun& certificate);

/// Coefficientwise relation between r_{n±1,i,k} and the certificate's a_{n,i,k}, all i and k.
bool partial_fraction_relation(long n, std::string* witness = nullptr);

}  // namespace azeta
