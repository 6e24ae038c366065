#pragma once

#include <cstdint>
#include <functional>

#include "azeta/exact.hpp"
#include "azeta/padic.hpp"

namespace azeta {

/// ∫_{Z_2} (t+c)^{-m} dt by the Bernoulli series, at absolute precision prec.
/// Requires v_2(c) ≤ -1 and m ≥ 1 (std::invalid_argument otherwise).
Padic volk_inverse_power(const Rational& c, long m, long prec);

/// Number of Bernoulli terms the series needs: smallest J with a(m+J) - 1 ≥ prec.
long volk_series_terms(const Rational& c, long m, long prec);

/// ∫ (t+k+c)^{-m} dt = I(c,m) - m·Σ_{ℓ<k} (ℓ+c)^{-m-1}; k ≥ 0.
Padic translate_shift(const Rational& c, long m, long k, long prec);

/// Same, reusing a precomputed base value I(c,m).
Padic translate_shift(const Padic& base, const Rational& c, long m, long k);

enum class Zeta2Method { series, naive };

struct Zeta2Value {
  long s;
  Padic value;
  Zeta2Method method;
};

/// 2-adic zeta value from the split over residues 1 and 3 mod 4; s ≥ 2.
/// Memoized per s at the highest precision requested so far.
Zeta2Value zeta2(long s, long prec);

using RationalSampler = std::function<Rational(long)>;

/// 2^{-N} Σ_{k<2^N} f(k) in Q_2 at precision prec; N ≤ 28. Oracle only.
Padic volk_naive(const RationalSampler& f, long level, long prec);

/// Residue sampler: f(k) mod 2^64 for a 2-integral f. Result has precision 64 - N.
using ResidueSampler = std::function<std::uint64_t(std::uint64_t)>;
Padic volk_naive_residue(const ResidueSampler& f, long level);

/// v_2 of naive(level+1) - naive(level) at precision prec.
Valuation stabilization_digits(const RationalSampler& f, long level, long prec);

/// k with its leading binary digit removed (k ≥ 1).
std::uint64_t strip_leading_digit(std::uint64_t k);

/// Finite-depth upper estimate of the Δ-operator:
/// min(min_{1≤k≤K} v_2((f(k)-f(k_-))/(k-k_-)), 1 + v_2(f(0))).
Valuation triangle_depth(const RationalSampler& f, long depth);

}  // namespace azeta
