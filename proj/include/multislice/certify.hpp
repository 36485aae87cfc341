#pragma once

// The full per-composition certification run behind `multislice verify`.

#include <cstddef>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include <gmpxx.h>
#include <nlohmann/json.hpp>

#include "multislice/certificate.hpp"
#include "multislice/core/composition.hpp"
#include "multislice/core/vertex.hpp"
#include "multislice/operators/dirichlet.hpp"
#include "multislice/operators/kmatrix.hpp"
#include "multislice/report.hpp"
#include "multislice/spectral/gap.hpp"
#include "multislice/spectral/operator_spectra.hpp"

namespace multislice {

struct CertifyOptions {
  /// Random rational functions used for the form identities.
  std::size_t identity_samples = 5;
  std::uint64_t seed = 1;
  /// Exact positive semi-definite gap bound (the costliest check).
  bool lower_bound = true;
  /// Brute-force K form only on slices up to this size.
  std::size_t k_form_limit = 10'000;
};

/// Expected K spectrum: 1 once and -1/(N-1) with multiplicity r_eff - 1.
inline Certificate check_k_spectrum(const Composition& k, const Limits& limits) {
  const std::size_t n = k.total();
  const std::size_t r = k.active_levels();
  Spectrum s = k_spectrum(k, limits);
  const mpq_class neg = -inverse_of(n - 1);
  bool ok = s.dimension() == r;
  for (const auto& e : s.eigenvalues) {
    if (*e.exact == 1) {
      ok = ok && e.multiplicity == 1;
    } else if (*e.exact == neg) {
      ok = ok && e.multiplicity == r - 1;
    } else {
      ok = false;
    }
  }
  ok = ok && k_eigenvectors_check(k) && k_self_adjoint(k);
  return {"k_spectrum", ok, "exact",
          "{1 x1, " + neg.get_str() + " x" + std::to_string(r - 1) + "}"};
}

/// nu_a K_{a,b} against the sum over V of [x_1 = a][x_N = b] mu(x).
inline Certificate check_k_form(const VertexSet& vs) {
  bool ok = k_form(vs.composition()) == k_form_by_enumeration(vs);
  return {"k_quadratic_form", ok, "exact",
          "brute force over " + std::to_string(vs.size()) + " vertices"};
}

/// Spectrum of P within {0, 1/(N-1), 1}, 1 simple with a constant
/// eigenvector, and 1/(N-1) of the gap multiplicity.
inline Certificate check_p_spectrum(const VertexSet& vs, const Limits& limits) {
  const auto& k = vs.composition();
  const std::size_t n = k.total();
  const double third = 1.0 / static_cast<double>(n - 1);
  PEigen pe = p_eigen(vs, limits);
  const Spectrum& s = pe.spectrum;
  bool ok = true;
  for (const auto& e : s.eigenvalues)
    ok = ok && (s.close(e.value, 0.0) || s.close(e.value, third) ||
                s.close(e.value, 1.0));
  ok = ok && s.multiplicity_of(1.0) == 1;
  ok = ok && s.multiplicity_of(third) == (n - 1) * (k.active_levels() - 1);
  // Eigenvector of the top eigenvalue is constant.
  const Eigen::Index top = pe.values.size() - 1;
  const Eigen::VectorXd v = pe.vectors.col(top);
  ok = ok && (v.array() - v.mean()).abs().maxCoeff() <= 1e-6 * v.cwiseAbs().maxCoeff();
  return {"p_spectrum", ok, "float",
          "lambda = " + std::to_string(second_largest(s)) + ", multiplicity of 1/(N-1) = " +
              std::to_string(s.multiplicity_of(third))};
}

/// Averaging, shift and decomposition identities on random rational
/// functions, each with zero rational residual.
inline std::vector<Certificate> check_form_identities(const VertexSet& vs,
                                                      std::size_t samples,
                                                      std::uint64_t seed) {
  const auto& k = vs.composition();
  std::mt19937_64 rng(seed);
  bool ave = true, shift = true, split = true, ratio = true;
  for (std::size_t s = 0; s < samples; ++s) {
    auto f = random_function(vs, rng);
    ave = ave && sgn(averaging_residual(vs, f)) == 0;
    split = split && sgn(decomposition_residual(vs, f)) == 0;
    for (std::size_t l = 0; l < k.total(); ++l)
      for (std::size_t m = 0; m < k.levels(); ++m)
        if (k.count(m) > 0) shift = shift && sgn(shift_residual(vs, f, l, m)) == 0;
    mpq_class lhs = dirichlet_scaled(vs, f);
    mpq_class rhs = mpq_class(2) / static_cast<unsigned long>(k.total() - 1) *
                    dirichlet_graph(vs, f);
    ratio = ratio && lhs == rhs;
  }
  const std::string detail = std::to_string(samples) + " random rational functions";
  return {{"averaging_identity", ave, "exact", detail},
          {"shift_identity", shift, "exact", detail},
          {"measure_decomposition", measure_decomposition_check(k), "exact",
           "mu = sum_m (k_m/N) mu_{N-1,k^(m)}"},
          {"dirichlet_decomposition", split, "exact", detail},
          {"dirichlet_scaling", ratio, "exact", detail}};
}

struct Verification {
  GapCertificate gap;
  std::vector<Certificate> certificates;  // gap certificates included
  std::optional<InductionAudit> induction;
  bool passed() const { return gap.trivial || all_passed(certificates); }
};

/// Everything `verify` checks for one composition. Trivial slices are
/// skipped; operators are evaluated on the reduced composition.
inline Verification verify_composition(const Composition& k,
                                       const Limits& limits = {},
                                       const CertifyOptions& opt = {}) {
  Verification out;
  out.gap = certify_gap(k, limits, {opt.lower_bound});
  if (out.gap.trivial) return out;
  out.certificates = out.gap.certificates;
  auto& cs = out.certificates;
  const Composition red = out.gap.reduced;
  const std::size_t n = red.total();
  const VertexSet vs(red, limits);

  cs.push_back(check_k_spectrum(red, limits));
  if (vs.size() <= opt.k_form_limit) cs.push_back(check_k_form(vs));
  if (n >= 3) {
    Spectrum mk = mk_tensor_spectrum(red, limits);
    cs.push_back({"mk_tensor_spectrum", mk.dimension() == n * red.levels(), "exact",
                  std::to_string(mk.eigenvalues.size()) + " distinct eigenvalues"});
    if (vs.size() <= limits.dense_cap) {
      cs.push_back(check_p_spectrum(vs, limits));
      out.induction = induction_audit(red, limits);
      cs.push_back({"induction_bound",
                    out.induction->indlong_holds && out.induction->pinduct_holds,
                    "float",
                    "delta " + std::to_string(out.induction->delta) + " >= " +
                        std::to_string(out.induction->indlong_rhs)});
    }
    for (auto& c : check_form_identities(vs, opt.identity_samples, opt.seed))
      cs.push_back(std::move(c));
  }
  return out;
}

inline nlohmann::json to_json(const Verification& v) {
  nlohmann::json j = spectral_report(v.gap);
  if (!v.gap.trivial) {
    j["certificates"] = to_json(v.certificates);
    j["status"] = v.passed() ? "pass" : "fail";
  }
  if (v.induction) j["induction"] = to_json(*v.induction);
  return j;
}

}  // namespace multislice
