#pragma once

#include <json.hpp>

#include "azeta/denominators.hpp"
#include "azeta/measure.hpp"
#include "azeta/padic.hpp"

namespace azeta {

using Json = nlohmann::ordered_json;

// Integers and rationals are emitted as decimal strings; infinite valuations as null.
Json integer_json(const Integer& x);
Json rational_json(const Rational& q);
Json valuation_json(const Valuation& v);

/// {prime, precision, zero, valuation, unit_hex}
Json padic_json(const Padic& x);

/// {n, lemma_flags, conjecture_flags, valuations, witnesses}
Json findings_json(const ValuationReport& r);

/// {alpha, beta, mu_bound, alpha_n, beta_n, nonvanishing, ...}
Json certificate_json(const Certificate& c);

}  // namespace azeta
