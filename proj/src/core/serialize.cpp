#include "serialize.hpp"

#include <json.hpp>

#include <cstdio>

namespace monodyn {

namespace {

using nlohmann::json;

// Reals in reports are modest (degrees travel as decimal strings), so the
// shortest double round-trip is the stable, consumer-friendly encoding.
double to_double(const Real& r) { return r.convert_to<double>(); }

json real_json(const Real& r) { return json(to_double(r)); }

json values_json(const std::vector<Real>& values) {
  json arr = json::array();
  for (const auto& v : values) arr.push_back(real_json(v));
  return arr;
}

json checks_json(const std::vector<CheckOutcome>& checks) {
  json arr = json::array();
  for (const auto& c : checks) {
    json entry{{"name", c.name}, {"pass", c.pass}};
    if (!c.detail.empty()) entry["detail"] = c.detail;
    arr.push_back(std::move(entry));
  }
  return arr;
}

}  // namespace

std::string real_to_string(const Real& r) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", to_double(r));
  return buf;
}

std::string eigen_moduli_to_json(const EigenModuli& em) {
  json j;
  j["moduli"] = values_json(em.moduli);
  j["error_radius"] = real_json(em.error_radius);
  json coeffs = json::array();
  for (const auto& c : em.source_poly.coeffs) coeffs.push_back(c.str());
  j["char_poly"] = std::move(coeffs);
  return j.dump();
}

std::string dyndeg_to_json(const DynDegReport& report) {
  json j;
  j["n"] = report.n;
  j["lambda"] = values_json(report.lambda);
  j["error_radius"] = real_json(report.error_radius);
  j["detM"] = report.det_m.str();
  j["detN"] = report.det_n.str();
  return j.dump();
}

std::string candidates_to_json(const CandidateSet& set) {
  json j;
  j["candidates"] = values_json(set.values);
  j["merge_radius"] = real_json(set.merge_radius);
  return j.dump();
}

std::string char_poly_to_json(const IntPolynomial& p) {
  json coeffs = json::array();
  for (const auto& c : p.coeffs) coeffs.push_back(c.str());
  return json{{"coefficients_ascending", std::move(coeffs)}}.dump();
}

std::string degree_table_to_json(const DegreeTable& table, int only_k) {
  json entries = json::array();
  for (unsigned p = 1; p <= table.p_max; ++p)
    for (int k = 0; k <= table.n; ++k) {
      if (only_k >= 0 && k != only_k) continue;
      entries.push_back(json{{"p", p}, {"k", k}, {"deg", table.deg(k, p).str()}});
    }
  json j;
  j["n"] = table.n;
  j["p_max"] = table.p_max;
  j["detM"] = table.det_m.str();
  j["detN"] = table.det_n.str();
  j["entries"] = std::move(entries);
  return j.dump();
}

std::string degree_table_to_csv(const DegreeTable& table, int only_k) {
  std::string out = "p,k,deg\n";
  for (unsigned p = 1; p <= table.p_max; ++p)
    for (int k = 0; k <= table.n; ++k) {
      if (only_k >= 0 && k != only_k) continue;
      out += std::to_string(p) + "," + std::to_string(k) + "," + table.deg(k, p).str() + "\n";
    }
  return out;
}

std::string asymptotics_to_json(const AsymptoticsReport& report) {
  json j;
  j["l"] = report.l;
  j["lambda_l"] = real_json(report.lambda_l);
  j["c_estimates"] = values_json(report.c_estimates);
  j["c_final"] = real_json(report.c_final);
  j["q_theory"] = real_json(report.q_theory);
  j["q_measured"] = real_json(report.q_measured);
  j["r_fit"] = report.r_fit;
  j["burn_in"] = report.burn_in;
  j["precision_bits"] = report.bits_used;
  switch (report.verdict) {
    case AsymptoticsVerdict::Converged: j["verdict"] = "converged"; break;
    case AsymptoticsVerdict::NotStrict: j["verdict"] = "not-strict"; break;
    case AsymptoticsVerdict::InsufficientP: j["verdict"] = "insufficient-p"; break;
  }
  return j.dump();
}

std::string height_series_to_json(const HeightSeries& series) {
  json j;
  j["heights"] = values_json(series.values);
  j["alpha"] = real_json(series.alpha);
  j["candidate"] = series.matched_candidate ? real_json(*series.matched_candidate) : json();
  j["flag"] = series.torsion_orbit ? json("torsion-orbit") : json();
  j["candidates"] = values_json(series.candidates);
  j["precision_bits"] = series.bits_used;
  return j.dump();
}

std::string height_series_to_csv(const HeightSeries& series) {
  std::string out = "p,height\n";
  for (size_t i = 0; i < series.values.size(); ++i)
    out += std::to_string(i + 1) + "," + real_to_string(series.values[i]) + "\n";
  return out;
}

std::string orbit_check_to_json(const HeightSeries& fast, const HeightSeries& brute, unsigned bits) {
  PrecisionGuard guard(bits);
  Real worst(0);
  for (size_t i = 0; i < fast.values.size(); ++i) {
    Real dev = abs(fast.values[i] - brute.values[i]) / std::max(Real(abs(fast.values[i])), Real(1));
    worst = std::max(worst, dev);
  }
  bool holds = worst <= Real(1) / Real(1000000000);
  json j;
  j["fast"] = json::parse(height_series_to_json(fast));
  j["bruteforce"] = json::parse(height_series_to_json(brute));
  j["identity_max_rel_err"] = real_json(worst);
  j["identity_holds"] = holds;
  return j.dump();
}

std::string ensemble_to_json(const EnsembleReport& report) {
  json samples = json::array();
  for (const auto& s : report.samples) {
    json entry;
    entry["index"] = s.index;
    entry["M"] = s.m_text;
    entry["N"] = s.n_text;
    entry["pass"] = s.pass();
    entry["checks"] = checks_json(s.checks);
    if (!s.findings.empty()) entry["findings"] = s.findings;
    samples.push_back(std::move(entry));
  }
  json j;
  j["config"] = json{{"dim", report.config.dim},
                     {"count", report.config.count},
                     {"bound", report.config.bound},
                     {"seed", report.config.seed},
                     {"p_max", report.config.p_max},
                     {"orbit_p_max", report.config.orbit_p_max},
                     {"precision_bits", report.config.bits}};
  j["samples"] = std::move(samples);
  j["failed"] = report.failed;
  j["all_pass"] = report.all_pass;
  return j.dump();
}

std::string check_to_json(const CheckReport& report) {
  json j;
  j["checks"] = checks_json(report.checks);
  j["all_pass"] = report.all_pass;
  return j.dump();
}

}  // namespace monodyn
