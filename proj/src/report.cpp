#include "azeta/report.hpp"

namespace azeta {

Json integer_json(const Integer& x) { return x.get_str(); }

Json rational_json(const Rational& q) { return to_fraction_string(q); }

Json valuation_json(const Valuation& v) {
  if (v.is_infinite()) return nullptr;
  return v.value();
}

Json padic_json(const Padic& x) {
  Json j;
  j["prime"] = x.prime();
  j["precision"] = x.precision();
  j["zero"] = x.is_zero_at_precision();
  j["valuation"] = valuation_json(x.valuation());
  j["unit_hex"] = x.unit_hex();
  return j;
}

Json findings_json(const ValuationReport& r) {
  Json j;
  j["n"] = r.n;
  j["lemma_flags"] = {{"d_rho3", r.lemma.d_rho3},
                      {"d6_rho0", r.lemma.d6_rho0},
                      {"phi_d6_rho0", r.lemma.phi_d6_rho0},
                      {"psi_rho0", r.lemma.psi_rho0},
                      {"psi_rho3", r.lemma.psi_rho3}};
  j["conjecture_flags"] = {{"rho3_integer", r.conjecture.rho3_integer}, {"d5_rho0", r.conjecture.d5_rho0}};
  Json vals = Json::object();
  for (const auto& [p, v] : r.valuations) {
    vals[std::to_string(p)] = Json::array({valuation_json(v.first), valuation_json(v.second)});
  }
  j["valuations"] = vals;
  j["witnesses"] = r.witnesses;
  return j;
}

Json certificate_json(const Certificate& c) {
  Json j;
  j["alpha"] = {{"expr", c.alpha_expr}, {"value", c.alpha}};
  j["beta"] = {{"expr", c.beta_expr}, {"value", c.beta}};
  j["mu_bound"] = c.mu_bound;
  Json an = Json::array(), bn = Json::array(), lower = Json::array(), ok = Json::array();
  for (const RateRow& r : c.rows) {
    an.push_back(r.alpha_n);
    bn.push_back(r.beta_n);
    lower.push_back(r.lower_only);
    ok.push_back(r.alpha_ok);
  }
  j["alpha_n"] = an;
  j["beta_n"] = bn;
  j["alpha_lower_only"] = lower;
  j["alpha_bound_ok"] = ok;
  j["nonvanishing"] = c.nonvanishing_all();
  j["nonvanishing_checked"] = c.nonvanishing.size();
  return j;
}

}  // namespace azeta
