#include "azeta/cli.hpp"

#include <CLI11.hpp>

#include <cstdio>
#include <cstdlib>
#include <functional>
#include <optional>

#include "azeta/bernoulli.hpp"
#include "azeta/denominators.hpp"
#include "azeta/forms.hpp"
#include "azeta/measure.hpp"
#include "azeta/parallel.hpp"
#include "azeta/ratfun.hpp"
#include "azeta/report.hpp"
#include "azeta/volkenborn.hpp"

namespace azeta {

namespace {

struct UsageError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct RunConfig {
  std::optional<long> n_max;
  long extra_bits = 64;
  std::string format = "text";
  unsigned jobs = 1;
  std::string cache_dir;
  double tol = 1e-12;
  long per_term_max = 0;
  bool valuations = false;
  std::optional<long> nonvanishing_max;
  long s = 5;
  long bits = 64;
  long bernoulli = 600;
};

struct Row {
  long n = 0;
  bool pass = true;
  bool finding = false;  // conjecture-level; never fails the run
  Json fields = Json::object();
  std::string witness;
};

struct Sweep {
  std::string name;
  std::string identity;
  long lo = 0;
  long hi = 0;  // inclusive
  std::function<Row(long)> row;
};

std::string render(const Json& v) {
  if (v.is_string()) return v.get<std::string>();
  return v.dump();
}

std::string csv_cell(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string q = "\"";
  for (char c : s) q += c == '"' ? std::string("\"\"") : std::string(1, c);
  return q + "\"";
}

long range_max(const RunConfig& cfg, long fallback, long cap = 0) {
  const long n = cfg.n_max.value_or(fallback);
  if (n < 1) throw UsageError("--n-max must be >= 1");
  if (cap > 0 && n > cap) throw UsageError("--n-max must be <= " + std::to_string(cap) + " for this check");
  return n;
}

// Rows are computed in blocks and emitted in index order, so text and CSV
// stream while JSON is written once at the end.
int run_sweep(const Sweep& sw, const RunConfig& cfg, std::ostream& out) {
  const bool json = cfg.format == "json";
  const bool csv = cfg.format == "csv";
  if (!json) out << "# " << sw.name << ": " << sw.identity << "\n";
  Json rows = Json::array();
  long failures = 0;
  long findings = 0;
  long checked = 0;
  std::string first_witness;
  bool csv_header = false;
  const long block = static_cast<long>(cfg.jobs) * 8;
  for (long start = sw.lo; start <= sw.hi; start += block) {
    const long stop = std::min(sw.hi + 1, start + block);
    const std::vector<Row> got = parallel_map(start, stop, sw.row, cfg.jobs);
    for (const Row& r : got) {
      ++checked;
      if (!r.pass) {
        ++failures;
        if (first_witness.empty()) first_witness = "n=" + std::to_string(r.n) + ": " + r.witness;
      }
      if (r.finding) ++findings;
      if (json) {
        Json j;
        j["n"] = r.n;
        j["pass"] = r.pass;
        j["finding"] = r.finding;
        for (const auto& [k, v] : r.fields.items()) j[k] = v;
        j["witness"] = r.witness;
        rows.push_back(std::move(j));
      } else if (csv) {
        if (!csv_header) {
          out << "n,pass,finding";
          for (const auto& [k, v] : r.fields.items()) out << "," << k;
          out << ",witness\n";
          csv_header = true;
        }
        out << r.n << "," << (r.pass ? "pass" : "fail") << "," << (r.finding ? "yes" : "no");
        for (const auto& [k, v] : r.fields.items()) out << "," << csv_cell(render(v));
        out << "," << csv_cell(r.witness) << "\n";
      } else {
        out << "n=" << r.n << " " << (r.pass ? "pass" : "FAIL");
        for (const auto& [k, v] : r.fields.items()) out << " " << k << "=" << render(v);
        if (r.finding) out << " finding";
        if (!r.witness.empty()) out << " witness: " << r.witness;
        out << "\n";
      }
    }
    out.flush();
  }
  const bool ok = failures == 0;
  if (json) {
    Json doc;
    doc["check"] = sw.name;
    doc["identity"] = sw.identity;
    doc["rows"] = rows;
    doc["summary"] = {{"checked", checked}, {"failures", failures}, {"findings", findings}, {"pass", ok},
                      {"witness", first_witness}};
    out << doc.dump(2) << "\n";
  } else {
    out << "# summary: checked=" << checked << " failures=" << failures << " findings=" << findings
        << " status=" << (ok ? "pass" : "fail") << "\n";
    if (!ok) out << "# witness: " << first_witness << "\n";
  }
  return ok ? kExitOk : kExitFailure;
}

Sweep recurrence_sweep(const RunConfig& cfg) {
  const long n_max = range_max(cfg, 200);
  FormTable::global().ensure(n_max + 1);
  return {"recurrence",
          "(n+1)^5 rho_{n+1} - 32(2n+1)(8n^4+16n^3+20n^2+12n+3) rho_n + 2^16 n^5 rho_{n-1} = 0; "
          "recurrence table = partial fractions = double sum",
          0, n_max, [](long n) {
            Row r;
            r.n = n;
            const LinearForm& table = FormTable::global().get(n);
            const LinearForm direct = linear_form(n);
            const Integer ds = rho_doublesum(n);
            r.fields["rho"] = integer_json(ds);
            if (table.rho0 != direct.rho0 || table.rho3 != direct.rho3) {
              r.pass = false;
              r.witness = "recurrence table differs from partial fractions";
            } else if (direct.rho3 != Rational(768 * ds)) {
              r.pass = false;
              r.witness = "rho3/768 = " + to_fraction_string(Rational(direct.rho3 / 768)) + " but double sum = " + ds.get_str();
            }
            return r;
          }};
}

Sweep determinant_sweep(const RunConfig& cfg) {
  const long n_max = range_max(cfg, 100);
  FormTable::global().ensure(n_max + 1);
  return {"determinant", "rho_{n,0} rho_{n+1,3} - rho_{n+1,0} rho_{n,3} = 3*2^(16n+18)/(n+1)^5", 0, n_max,
          [](long n) {
            const DetVerdict v = det_check(n);
            Row r;
            r.n = n;
            r.pass = v.pass;
            r.fields["rhs"] = rational_json(v.rhs);
            if (!v.pass) r.witness = "lhs = " + to_fraction_string(v.lhs);
            return r;
          }};
}

Sweep telescoping_sweep(const RunConfig& cfg) {
  const long n_max = range_max(cfg, 30);
  return {"telescoping", "(n+1)^5 R_{n+1}(t) - B_n R_n(t) + 2^16 n^5 R_{n-1}(t) = T_n(t+1) - T_n(t)", 1, n_max,
          [](long n) {
            const TelescopeVerdict a = telescope_check(n, TelescopeMode::coefficients);
            const TelescopeVerdict b = telescope_check(n, TelescopeMode::samples);
            Row r;
            r.n = n;
            r.pass = a.pass && b.pass;
            r.fields["coefficients"] = a.pass;
            r.fields["samples"] = b.pass;
            r.witness = !a.pass ? a.witness : (!b.pass ? b.witness : "");
            return r;
          }};
}

Sweep double_sum_sweep(const RunConfig& cfg) {
  const long n_max = range_max(cfg, 200);
  return {"double-sum",
          "rho_{n,3}/768 = sum_{0<=i<=k<=n} 2^(4(n-k)) C(2i,i)^2 C(2n-2i,n-i) C(2k-2i,k-i) C(2k,k)^2 C(2n-2k,n-k) "
          "= 2^(8n) [eps^1] (n+eps) 9V8",
          0, n_max, [](long n) {
            Row r;
            r.n = n;
            const Integer ds = rho_doublesum(n);
            const Rational rho3 = linear_form(n).rho3;
            r.fields["rho"] = integer_json(ds);
            if (rho3 != Rational(768 * ds)) {
              r.pass = false;
              r.witness = "partial fractions give rho3 = " + to_fraction_string(rho3);
              return r;
            }
            if (n == 0) return r;  // the very-well-poised series needs a0 = -n-eps invertible
            const Jet vwp = rho_vwp_jet(n);
            const Rational from_vwp = vwp[1] * Rational(pow2(static_cast<unsigned long>(8 * n)));
            if (vwp[0] != 0 || from_vwp != Rational(ds)) {
              r.pass = false;
              r.witness = "very-well-poised side gives " + to_fraction_string(from_vwp);
            }
            return r;
          }};
}

Sweep quad_sum_sweep(const RunConfig& cfg) {
  const long n_max = range_max(cfg, 12, 12);
  return {"quad-sum", "T_{n,l}(eps) = sum_{i1<=i2<=i3<=i4<=n-l} F_{i1,i2,i3,i4}(eps); rho_{n,0} = -sum_l T_{n,l}'''(0)/3",
          1, n_max, [](long n) {
            Row r;
            r.n = n;
            for (long l = 1; l <= n && r.pass; ++l) {
              const QuadVerdict v = quad_identity_check(n, l);
              if (!v.pass()) {
                r.pass = false;
                r.witness = "l=" + std::to_string(l) + ": " + v.witness;
              }
            }
            const Rational rho0 = rho0_from_quad_sums(n);
            r.fields["rho0"] = rational_json(rho0);
            if (r.pass && rho0 != linear_form(n).rho0) {
              r.pass = false;
              r.witness = "reconstructed rho0 differs";
            }
            return r;
          }};
}

Sweep denominators_sweep(const RunConfig& cfg) {
  const long n_max = range_max(cfg, 1000);
  FormTable::global().ensure(n_max + 1);
  const long per_term_max = cfg.per_term_max;
  const bool valuations = cfg.valuations;
  return {"denominators",
          "d_n rho_{n,3}, Phi_n^-1 d_n^6 rho_{n,0}, Psi_n rho_{n,i} integral; v_p(rho_{n,0}) >= -5 for p > max(sqrt(2n),3); "
          "findings: rho_{n,3}, d_n^5 rho_{n,0} integral",
          1, n_max, [per_term_max, valuations](long n) {
            Row r;
            r.n = n;
            try {
              const ValuationReport rep = audit_integrality(n, valuations);
              r.finding = !rep.conjecture.all();
              r.fields["lemma"] = true;
              r.fields["conjecture"] = rep.conjecture.all();
              if (valuations) r.fields["findings"] = findings_json(rep);
              if (r.finding) r.fields["finding_detail"] = rep.witnesses.empty() ? "" : rep.witnesses.front();
            } catch (const LemmaViolation& e) {
              r.pass = false;
              r.fields["lemma"] = false;
              r.witness = e.report().witnesses.empty() ? e.what() : e.report().witnesses.front();
            }
            const PrimeBoundVerdict pb = vp_rho0_audit(n);
            r.fields["min_vp_rho0"] = valuation_json(pb.min_valuation);
            if (!pb.pass && r.pass) {
              r.pass = false;
              r.witness = "v_p(rho0) < -5 at p=" + std::to_string(pb.witness_prime);
            }
            if (n <= per_term_max) {
              const ClaimVerdict c = per_term_claim(n);
              r.fields["per_term"] = c.pass;
              if (!c.pass && r.pass) {
                r.pass = false;
                r.witness = c.witness;
              }
            }
            return r;
          }};
}

Sweep valuation_bound_sweep(const RunConfig& cfg) {
  const long n_max = range_max(cfg, 64);
  if (cfg.extra_bits < 64) throw UsageError("--extra-bits must be >= 64");
  const long extra = cfg.extra_bits;
  return {"valuation-bound", "v_2(S_n) >= ceil(16n + 3 - 6 log2(n+1)) at precision 16n + extra", 1, n_max,
          [extra](long n) {
            const V2Report v = v2_bound_audit(n, 16 * n + extra);
            Row r;
            r.n = n;
            r.pass = v.pass && v.delta_pass;
            r.fields["v2"] = valuation_json(v.measured);
            r.fields["bound"] = v.bound;
            r.fields["delta"] = valuation_json(v.delta_measured);
            r.fields["delta_bound"] = v.delta_bound;
            if (!v.pass) r.witness = "v_2(S_n) below bound";
            else if (!v.delta_pass) r.witness = "triangle depth below bound";
            return r;
          }};
}

Sweep archimedean_sweep(const RunConfig& cfg) {
  const long n_max = range_max(cfg, 12, 12);
  if (!(cfg.tol > 0)) throw UsageError("--tol must be > 0");
  const double tol = cfg.tol;
  return {"archimedean", "sum_{m>=0} R_n''(m+1/2) = rho_{n,0} + rho_{n,3} (31/32) zeta(5)", 0, n_max, [tol](long n) {
            const ArchimedeanVerdict v = archimedean_check(n, tol);
            Row r;
            r.n = n;
            r.pass = v.pass;
            r.fields["lhs"] = v.lhs;
            r.fields["rhs"] = v.rhs;
            r.fields["gap"] = v.gap;
            r.fields["analytic"] = v.analytic;
            if (!v.pass) r.witness = "enclosures separated by " + std::to_string(v.gap);
            return r;
          }};
}

Sweep zeta3_sweep(const RunConfig& cfg) {
  const long n_max = range_max(cfg, 20);
  return {"zeta3-coincidence", "-int R^L_n(t+1/4) dt = -int R^B_n(t+1/2) dt in Q_2", 1, n_max, [](long n) {
            const CoincidenceVerdict v = zeta3_coincidence(n, 6 * n + 48);
            Row r;
            r.n = n;
            r.pass = v.pass;
            r.fields["prec"] = v.prec;
            r.fields["agreement"] = valuation_json(v.agreement);
            if (v.ratio_known) r.fields["ratio_mod_2^" + std::to_string(v.ratio_precision)] = integer_json(v.ratio_residue);
            if (!v.pass) {
              r.witness = "sides differ at precision " + std::to_string(v.prec);
              if (v.ratio_known) r.witness += "; S^L/S^B = " + v.ratio_residue.get_str() + " mod 2^" + std::to_string(v.ratio_precision);
            }
            return r;
          }};
}

int zeta_compute(const RunConfig& cfg, std::ostream& out) {
  if (cfg.s < 2) throw UsageError("--s must be >= 2");
  if (cfg.bits < 1) throw UsageError("--bits must be >= 1");
  const Zeta2Value z = zeta2(cfg.s, cfg.bits);
  const Padic v = z.value.with_precision(std::min(cfg.bits, z.value.precision()));
  if (cfg.format == "json") {
    Json j;
    j["s"] = cfg.s;
    j["bits"] = cfg.bits;
    j["value"] = padic_json(v);
    j["residue"] = v.valuation() >= Valuation(0) ? integer_json(v.residue()) : Json(nullptr);
    out << j.dump(2) << "\n";
  } else if (cfg.format == "csv") {
    out << "s,bits,zero,valuation,unit_hex\n";
    out << cfg.s << "," << cfg.bits << "," << (v.is_zero_at_precision() ? "yes" : "no") << ","
        << render(valuation_json(v.valuation())) << "," << v.unit_hex() << "\n";
  } else {
    out << "# zeta: zeta_2(s) = L_2(s, omega^(1-s)); vanishes for even s\n";
    if (v.is_zero_at_precision()) {
      out << "zeta_2(" << cfg.s << ") = 0 at precision " << v.precision() << " (zero-at-precision)\n";
    } else {
      out << "zeta_2(" << cfg.s << ") = 2^" << v.valuation().value() << " * 0x" << v.unit_hex() << " mod 2^"
          << v.precision() << "\n";
    }
  }
  return kExitOk;
}

int forms_table(const RunConfig& cfg, std::ostream& out) {
  const long n_max = range_max(cfg, 20);
  auto& table = FormTable::global();
  table.ensure(n_max);
  if (cfg.format == "json") {
    Json rows = Json::array();
    for (long n = 0; n <= n_max; ++n) {
      const LinearForm& f = table.get(n);
      rows.push_back({{"n", n}, {"rho0", rational_json(f.rho0)}, {"rho3", rational_json(f.rho3)}});
    }
    out << Json{{"table", "forms"}, {"identity", "S_n = rho_{n,0} + rho_{n,3} zeta_2(5)"}, {"rows", rows}}.dump(2) << "\n";
    return kExitOk;
  }
  if (cfg.format == "csv") {
    out << "n,rho0,rho3\n";
  } else {
    out << "# forms: S_n = rho_{n,0} + rho_{n,3} zeta_2(5)\n";
  }
  for (long n = 0; n <= n_max; ++n) {
    const LinearForm& f = table.get(n);
    if (cfg.format == "csv") {
      out << n << "," << to_fraction_string(f.rho0) << "," << to_fraction_string(f.rho3) << "\n";
    } else {
      out << "n=" << n << " rho0=" << to_fraction_string(f.rho0) << " rho3=" << to_fraction_string(f.rho3) << "\n";
    }
  }
  return kExitOk;
}

int measure_report(const RunConfig& cfg, std::ostream& out) {
  const long n_max = range_max(cfg, 64);
  const long nv_max = cfg.nonvanishing_max.value_or(n_max);
  if (nv_max < 0) throw UsageError("--nonvanishing-max must be >= 0");
  if (cfg.extra_bits < 64) throw UsageError("--extra-bits must be >= 64");
  const Certificate c = empirical_rates(n_max, PrecisionPolicy{cfg.extra_bits}, nv_max);
  const bool ok = c.alpha_all() && c.nonvanishing_all();
  if (cfg.format == "json") {
    Json j = certificate_json(c);
    j["pass"] = ok;
    out << j.dump(2) << "\n";
  } else if (cfg.format == "csv") {
    out << "n,alpha_n,alpha_bound_n,alpha_ok,lower_only,beta_n\n";
    for (const RateRow& r : c.rows) {
      out << r.n << "," << render(Json(r.alpha_n)) << "," << render(Json(r.alpha_bound_n)) << ","
          << (r.alpha_ok ? "yes" : "no") << "," << (r.lower_only ? "yes" : "no") << "," << render(Json(r.beta_n))
          << "\n";
    }
  } else {
    out << "# measure: mu <= alpha/(alpha-beta), alpha = 16 log 2, beta = 8 log 2 + 5\n";
    for (const RateRow& r : c.rows) {
      out << "n=" << r.n << " " << (r.alpha_ok ? "pass" : "FAIL") << " alpha_n=" << render(Json(r.alpha_n))
          << " bound=" << render(Json(r.alpha_bound_n)) << " beta_n=" << render(Json(r.beta_n))
          << (r.lower_only ? " lower-bound-only" : "") << "\n";
    }
    char buf[128];
    std::snprintf(buf, sizeof buf, "%.9f", c.mu_bound);
    out << "# alpha=" << render(Json(c.alpha)) << " beta=" << render(Json(c.beta)) << " mu_bound=" << buf << "\n";
    out << "# nonvanishing checked for n=1.." << nv_max << ": " << (c.nonvanishing_all() ? "pass" : "FAIL") << "\n";
    out << "# summary: status=" << (ok ? "pass" : "fail") << "\n";
  }
  return ok ? kExitOk : kExitFailure;
}

int cache_warm(const RunConfig& cfg, std::ostream& out) {
  if (cfg.bernoulli < 0) throw UsageError("--bernoulli must be >= 0");
  auto& table = BernoulliTable::global();
  table.ensure(static_cast<std::size_t>(cfg.bernoulli));
  table.flush();
  const char* dir = std::getenv("AZETA_CACHE_DIR");
  out << "# cache: B_j for j <= " << cfg.bernoulli << "\n";
  out << "bernoulli entries=" << table.size() << " cache=" << (dir ? dir : "(none; AZETA_CACHE_DIR unset)") << "\n";
  return kExitOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  RunConfig cfg;
  CLI::App app{"Verification engine for rational approximations to zeta_2(5)", "azeta"};
  app.fallthrough();
  app.require_subcommand(1);
  app.set_config("--config", "", "key=value file overriding defaults");
  app.add_option("--n-max", cfg.n_max, "Largest index checked");
  app.add_option("--format", cfg.format, "Output format")->check(CLI::IsMember({"json", "csv", "text"}));
  app.add_option("--jobs", cfg.jobs, "Worker threads")->check(CLI::Range(1u, 256u));
  app.add_option("--extra-bits", cfg.extra_bits, "2-adic precision 16n + extra-bits");
  app.add_option("--cache-dir", cfg.cache_dir, "Cache directory (default: $AZETA_CACHE_DIR)");
  app.add_option("--tol", cfg.tol, "Relative tolerance for the archimedean check");
  app.add_option("--per-term-max", cfg.per_term_max, "Also run the per-term valuation claim for n <= this");
  app.add_flag("--valuations", cfg.valuations, "Include per-prime valuations in denominator findings");
  app.add_option("--nonvanishing-max", cfg.nonvanishing_max, "Wedge check range for measure report");
  app.add_option("--s", cfg.s, "Zeta argument");
  app.add_option("--bits", cfg.bits, "2-adic precision in bits");
  app.add_option("--bernoulli", cfg.bernoulli, "Largest Bernoulli index to cache");

  auto* zeta = app.add_subcommand("zeta", "2-adic zeta values");
  zeta->require_subcommand(1);
  auto* zeta_c = zeta->add_subcommand("compute", "zeta_2(s) at the given precision");
  auto* forms = app.add_subcommand("forms", "Linear forms");
  forms->require_subcommand(1);
  auto* forms_t = forms->add_subcommand("table", "rho_{n,0}, rho_{n,3} for n <= n-max");
  auto* verify = app.add_subcommand("verify", "Exact identity and bound checks");
  verify->require_subcommand(1);
  const std::vector<std::pair<std::string, std::function<Sweep(const RunConfig&)>>> checks = {
      {"recurrence", recurrence_sweep},     {"determinant", determinant_sweep},
      {"telescoping", telescoping_sweep},   {"double-sum", double_sum_sweep},
      {"quad-sum", quad_sum_sweep},         {"denominators", denominators_sweep},
      {"valuation-bound", valuation_bound_sweep}, {"archimedean", archimedean_sweep},
      {"zeta3-coincidence", zeta3_sweep}};
  std::vector<CLI::App*> check_cmds;
  for (const auto& [name, make] : checks) check_cmds.push_back(verify->add_subcommand(name));
  auto* measure = app.add_subcommand("measure", "Irrationality measure certificate");
  measure->require_subcommand(1);
  auto* measure_r = measure->add_subcommand("report", "Empirical rates and the mu bound");
  auto* cache = app.add_subcommand("cache", "Persistent caches");
  cache->require_subcommand(1);
  auto* cache_w = cache->add_subcommand("warm", "Precompute Bernoulli numbers");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }
  if (!cfg.cache_dir.empty()) ::setenv("AZETA_CACHE_DIR", cfg.cache_dir.c_str(), 1);

  try {
    if (zeta_c->parsed()) return zeta_compute(cfg, out);
    if (forms_t->parsed()) return forms_table(cfg, out);
    if (measure_r->parsed()) return measure_report(cfg, out);
    if (cache_w->parsed()) return cache_warm(cfg, out);
    for (std::size_t i = 0; i < checks.size(); ++i) {
      if (check_cmds[i]->parsed()) return run_sweep(checks[i].second(cfg), cfg, out);
    }
  } catch (const std::invalid_argument& e) {
    err << "usage error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "failure: " << e.what() << "\n";
    return kExitFailure;
  }
  err << "usage error: no command\n";
  return kExitUsage;
}

}  // namespace azeta
