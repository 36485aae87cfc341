#pragma once

#include <cstddef>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include <gmpxx.h>
#include <nlohmann/json.hpp>

#include "multislice/certificate.hpp"
#include "multislice/core/composition.hpp"
#include "multislice/core/graph.hpp"
#include "multislice/spectral/gap.hpp"
#include "multislice/spectral/operator_spectra.hpp"
#include "multislice/spectral/spectrum.hpp"

namespace multislice {

inline std::string to_string(const mpq_class& q) { return q.get_str(); }

inline nlohmann::json to_json(const Spectrum& s) {
  nlohmann::json values = nlohmann::json::array();
  for (const auto& e : s.eigenvalues) {
    nlohmann::json v = {{"value", e.value}, {"multiplicity", e.multiplicity}};
    if (e.exact) v["exact"] = e.exact->get_str();
    values.push_back(std::move(v));
  }
  return {{"source", to_string(s.source)},
          {"arithmetic", s.exact ? "exact" : "float"},
          {"tolerance", s.tolerance},
          {"dimension", s.dimension()},
          {"eigenvalues", std::move(values)}};
}

inline nlohmann::json to_json(const std::vector<Certificate>& cs) {
  nlohmann::json out = nlohmann::json::array();
  for (const auto& c : cs) out.push_back(to_json(c));
  return out;
}

/// Spectral report for one composition. Gamma and Delta always appear
/// together with their relation.
inline nlohmann::json spectral_report(const GapCertificate& gc) {
  nlohmann::json j;
  j["composition"] = to_json(gc.composition);
  j["reduced"] = to_json(gc.reduced);
  j["cardinality"] = gc.cardinality;
  j["degree"] = gc.degree;
  j["trivial"] = gc.trivial;
  j["relation"] = "delta = 2/(N-1) * gap";
  if (gc.trivial) {
    j["status"] = "skipped_trivial";
    j["gap"] = nullptr;
    j["gap_multiplicity"] = nullptr;
    j["delta"] = nullptr;
    j["certificates"] = nlohmann::json::array();
    return j;
  }
  j["status"] = gc.passed() ? "pass" : "fail";
  j["gap"] = gc.gap;
  j["gap_exact"] = gc.gap_exact().get_str();
  auto cert = gc.certified_multiplicity();
  j["gap_multiplicity"] = cert ? nlohmann::json(*cert) : nlohmann::json(nullptr);
  j["expected_multiplicity"] = gc.expected_multiplicity;
  j["delta"] = 2.0 * gc.gap / static_cast<double>(gc.composition.total() - 1);
  j["delta_exact"] = gc.delta_exact().get_str();
  j["certificates"] = to_json(gc.certificates);
  return j;
}

inline nlohmann::json to_json(const InductionAudit& a) {
  nlohmann::json children = nlohmann::json::array();
  for (std::size_t i = 0; i < a.children.size(); ++i)
    children.push_back({{"composition", to_json(a.children[i])},
                        {"delta", a.child_delta[i] ? nlohmann::json(*a.child_delta[i])
                                                   : nlohmann::json(nullptr)}});
  return {{"composition", to_json(a.composition)},
          {"delta", a.delta},
          {"children", std::move(children)},
          {"min_child_delta", a.min_child},
          {"factor", a.factor},
          {"indlong_rhs", a.indlong_rhs},
          {"lambda", a.lambda},
          {"pinduct_rhs", a.pinduct_rhs},
          {"indlong_holds", a.indlong_holds},
          {"pinduct_holds", a.pinduct_holds},
          {"equality", a.equality}};
}

/// Uniform output envelope. Timing is null when the run must be
/// reproducible byte for byte.
inline nlohmann::json envelope(const std::string& command, nlohmann::json config,
                               nlohmann::json results,
                               const std::vector<Certificate>& certificates,
                               std::optional<double> seconds) {
  nlohmann::json j;
  j["command"] = command;
  j["config"] = std::move(config);
  j["results"] = std::move(results);
  j["certificates"] = to_json(certificates);
  j["passed"] = all_passed(certificates);
  j["timing"] = seconds ? nlohmann::json({{"seconds", *seconds}})
                        : nlohmann::json(nullptr);
  return j;
}

inline void write_sweep_csv_header(std::ostream& os) {
  os << "composition,N,r_eff,cardinality,degree,gap,gap_multiplicity,delta,status\n";
}

inline void write_sweep_csv_row(std::ostream& os, const GapCertificate& gc) {
  os << '"' << gc.composition.to_string() << '"' << ',' << gc.composition.total()
     << ',' << gc.composition.active_levels() << ',' << gc.cardinality << ','
     << gc.degree << ',';
  if (gc.trivial) {
    os << ",,,skipped_trivial\n";
    return;
  }
  auto cert = gc.certified_multiplicity();
  os << gc.gap << ',' << (cert ? std::to_string(*cert) : std::string()) << ','
     << gc.delta_exact().get_str() << ',' << (gc.passed() ? "pass" : "fail")
     << '\n';
}

}  // namespace multislice
