// multislice: command line front end.

#include <atomic>
#include <chrono>
#include <cmath>
#include <fstream>
#include <functional>
#include <iostream>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "multislice/multislice.hpp"

namespace ms = multislice;
using nlohmann::json;

namespace {

struct Global {
  std::string format;
  double tolerance = ms::Limits{}.tolerance;
  std::size_t dense_cap = ms::Limits{}.dense_cap;
  std::uint64_t budget = ms::Limits{}.enumeration_budget;
  std::uint64_t seed = 1;
  bool float_mode = false;
  std::string out;
  unsigned jobs = 1;

  ms::Limits limits() const {
    ms::Limits l;
    l.tolerance = tolerance;
    l.dense_cap = dense_cap;
    l.enumeration_budget = budget;
    return l;
  }

  json config() const {
    return {{"arithmetic", float_mode ? "float" : "exact"},
            {"tolerance", tolerance},
            {"dense_cap", dense_cap},
            {"budget", budget},
            {"seed", seed}};
  }
};

/// Output sink: the -o path or stdout.
class Output {
 public:
  explicit Output(const std::string& path) {
    if (!path.empty()) {
      file_.open(path);
      ms::require(file_.good(), ms::ErrorCode::InvalidArgument,
                  "cannot open output file " + path);
    }
  }
  std::ostream& stream() { return file_.is_open() ? file_ : std::cout; }

 private:
  std::ofstream file_;
};

using Clock = std::chrono::steady_clock;

std::optional<double> elapsed(const Global& g, Clock::time_point start) {
  // Exact mode output is reproducible byte for byte, so it carries no timing.
  if (!g.float_mode) return std::nullopt;
  return std::chrono::duration<double>(Clock::now() - start).count();
}

void emit_json(const Global& g, const json& j) {
  Output out(g.out);
  out.stream() << j.dump(2) << '\n';
}

std::string format_or(const Global& g, const std::string& fallback) {
  return g.format.empty() ? fallback : g.format;
}

void require_format(const std::string& f, std::initializer_list<const char*> allowed) {
  for (const char* a : allowed)
    if (f == a) return;
  std::string list;
  for (const char* a : allowed) list += std::string(list.empty() ? "" : ", ") + a;
  ms::fail(ms::ErrorCode::InvalidArgument,
           "format '" + f + "' is not available here (use " + list + ")");
}

/// "N=2..6", "2..6" or "5".
std::pair<std::size_t, std::size_t> parse_sweep(std::string text) {
  if (text.rfind("N=", 0) == 0) text = text.substr(2);
  auto dots = text.find("..");
  try {
    std::size_t lo, hi;
    if (dots == std::string::npos) {
      lo = hi = std::stoul(text);
    } else {
      lo = std::stoul(text.substr(0, dots));
      hi = std::stoul(text.substr(dots + 2));
    }
    ms::require(lo >= 1 && lo <= hi, ms::ErrorCode::InvalidArgument,
                "sweep range must satisfy 1 <= lo <= hi");
    return {lo, hi};
  } catch (const std::logic_error&) {
    ms::fail(ms::ErrorCode::Parse, "malformed sweep '" + text + "'");
  }
}

std::string spectrum_text(const ms::Spectrum& s) {
  std::ostringstream os;
  bool first = true;
  for (const auto& e : s.eigenvalues) {
    if (!first) os << ' ';
    first = false;
    if (e.exact)
      os << e.exact->get_str();
    else
      os << e.value;
    os << ':' << e.multiplicity;
  }
  return os.str();
}

/// Runs fn(i) for i in [0, n) on a small pool. Results are written by index,
/// so output order never depends on scheduling.
void parallel_for(std::size_t n, unsigned jobs, const std::function<void(std::size_t)>& fn) {
  if (jobs <= 1 || n <= 1) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::thread> pool;
  for (unsigned t = 0; t < jobs && t < n; ++t)
    pool.emplace_back([&] {
      for (std::size_t i; (i = next.fetch_add(1)) < n;) fn(i);
    });
  for (auto& th : pool) th.join();
}

// ---------------------------------------------------------------- info

int cmd_info(const Global& g, const std::string& text) {
  const auto start = Clock::now();
  const auto k = ms::Composition::parse(text);
  const auto red = ms::reduce(k);
  const auto card = ms::cardinality(k);
  const auto deg = ms::degree(k);
  std::optional<bool> connected;
  if (card <= g.budget) connected = ms::is_connected(k, g.limits());

  json r;
  r["composition"] = ms::to_json(k);
  r["N"] = k.total();
  r["levels"] = k.levels();
  r["active_levels"] = k.active_levels();
  r["cardinality"] = card.get_str();
  r["degree"] = deg;
  r["trivial"] = k.trivial();
  r["reduced"] = ms::to_json(red.reduced);
  r["is_reduced"] = k.is_reduced();
  r["level_map"] = red.level_map;
  r["connected"] = connected ? json(*connected) : json(nullptr);

  const std::string fmt = format_or(g, "text");
  require_format(fmt, {"text", "json"});
  if (fmt == "json") {
    emit_json(g, ms::envelope("info", g.config(), r, {}, elapsed(g, start)));
    return 0;
  }
  Output out(g.out);
  auto& os = out.stream();
  os << "composition   " << k.to_string() << '\n'
     << "N             " << k.total() << '\n'
     << "levels        " << k.levels() << " (" << k.active_levels() << " active)\n"
     << "cardinality   " << card.get_str() << '\n'
     << "degree        " << deg << '\n'
     << "trivial       " << (k.trivial() ? "yes" : "no") << '\n'
     << "reduced       " << red.reduced.to_string()
     << (k.is_reduced() ? " (already reduced)" : "") << '\n'
     << "connected     "
     << (connected ? (*connected ? "yes" : "no") : "not checked (budget)") << '\n';
  return 0;
}

// ---------------------------------------------------------------- verify

struct VerifyJob {
  ms::Composition k{1};
  std::optional<ms::Verification> result;
  std::optional<ms::Error> error;
};

int cmd_verify(const Global& g, const std::vector<std::string>& ks,
               const std::string& sweep, std::size_t samples, bool lower_bound) {
  const auto start = Clock::now();
  std::vector<VerifyJob> jobs;
  for (const auto& t : ks) jobs.push_back({ms::Composition::parse(t), {}, {}});
  if (!sweep.empty()) {
    auto [lo, hi] = parse_sweep(sweep);
    for (std::size_t n = lo; n <= hi; ++n)
      for (auto& k : ms::reduced_compositions(n)) jobs.push_back({k, {}, {}});
  }
  ms::require(!jobs.empty(), ms::ErrorCode::InvalidArgument,
              "verify needs -k or --sweep");

  ms::CertifyOptions opt;
  opt.identity_samples = samples;
  opt.seed = g.seed;
  opt.lower_bound = lower_bound;
  const ms::Limits limits = g.limits();
  parallel_for(jobs.size(), g.jobs, [&](std::size_t i) {
    try {
      jobs[i].result = ms::verify_composition(jobs[i].k, limits, opt);
    } catch (const ms::Error& e) {
      jobs[i].error = e;
    }
  });

  bool ok = true;
  std::vector<ms::Certificate> summary;
  json results = json::array();
  for (const auto& j : jobs) {
    if (j.error) {
      ok = false;
      results.push_back({{"composition", ms::to_json(j.k)},
                         {"status", "error"},
                         {"error", {{"code", std::string(ms::to_string(j.error->code()))},
                                    {"message", j.error->what()}}}});
      summary.push_back({j.k.to_string(), false, "error", j.error->what()});
      continue;
    }
    const auto& v = *j.result;
    results.push_back(ms::to_json(v));
    if (v.gap.trivial) continue;
    ok = ok && v.passed();
    summary.push_back({j.k.to_string(), v.passed(), "suite",
                       std::to_string(v.certificates.size()) + " certificates"});
  }

  const std::string fmt = format_or(g, "json");
  require_format(fmt, {"json", "csv", "text"});
  if (fmt == "json") {
    json cfg = g.config();
    cfg["samples"] = samples;
    cfg["lower_bound"] = lower_bound;
    if (!sweep.empty()) cfg["sweep"] = sweep;
    emit_json(g, ms::envelope("verify", cfg, results, summary, elapsed(g, start)));
  } else {
    Output out(g.out);
    auto& os = out.stream();
    if (fmt == "csv") ms::write_sweep_csv_header(os);
    for (const auto& j : jobs) {
      if (fmt == "csv") {
        if (j.result)
          ms::write_sweep_csv_row(os, j.result->gap);
        else
          os << '"' << j.k.to_string() << "\"," << j.k.total() << ','
             << j.k.active_levels() << ",,,,,,error\n";
        continue;
      }
      os << j.k.to_string() << ": ";
      if (j.error) {
        os << "error (" << ms::to_string(j.error->code()) << ") " << j.error->what() << '\n';
      } else if (j.result->gap.trivial) {
        os << "skipped (trivial slice)\n";
      } else {
        const auto& gc = j.result->gap;
        auto mult = gc.certified_multiplicity();
        os << (j.result->passed() ? "pass" : "FAIL") << "  gap " << gc.gap_exact().get_str()
           << " x" << (mult ? std::to_string(*mult) : std::string("?"))
           << "  delta " << gc.delta_exact().get_str() << " (delta = 2/(N-1) * gap)\n";
        for (const auto& c : j.result->certificates)
          if (!c.passed) os << "    failed " << c.name << ": " << c.detail << '\n';
      }
    }
  }
  return ok ? 0 : 1;
}

// ---------------------------------------------------------------- spectrum

int cmd_spectrum(const Global& g, const std::string& text, const std::string& op) {
  const auto start = Clock::now();
  const auto k = ms::Composition::parse(text);
  const ms::Limits limits = g.limits();
  const auto red = ms::reduce(k).reduced;
  const bool exact = !g.float_mode;
  ms::Spectrum s;
  std::vector<ms::Certificate> certs;

  auto total_check = [&](std::size_t expected) {
    certs.push_back({"spectrum_complete", s.dimension() == expected,
                     exact ? "exact" : "float",
                     std::to_string(s.dimension()) + " of " + std::to_string(expected)});
  };

  if (op == "laplacian") {
    const ms::VertexSet vs(red, limits);
    s = exact ? ms::exact_laplacian_spectrum(vs, limits)
              : ms::laplacian_spectrum(vs, limits);
    total_check(vs.size());
  } else if (op == "p") {
    const ms::VertexSet vs(red, limits);
    if (exact) {
      const std::size_t n = red.total();
      ms::require(n >= 3, ms::ErrorCode::Precondition,
                  "the spectrum of P is characterized for N >= 3");
      s = ms::exact_spectrum(ms::p_matrix_exact(vs, limits.exact_cap),
                             {mpq_class(0), ms::inverse_of(n - 1), mpq_class(1)},
                             limits, ms::OperatorKind::P);
    } else {
      s = ms::p_eigen(vs, limits).spectrum;
    }
    total_check(vs.size());
  } else if (op == "k") {
    s = ms::k_spectrum(red, limits);
    total_check(red.levels());
  } else if (op == "mk") {
    s = ms::mk_tensor_spectrum(red, limits);
    total_check(red.total() * red.levels());
  } else {
    ms::fail(ms::ErrorCode::InvalidArgument, "unknown operator '" + op + "'");
  }

  const std::string fmt = format_or(g, "text");
  require_format(fmt, {"text", "json"});
  if (fmt == "json") {
    json r = {{"composition", ms::to_json(k)},
              {"reduced", ms::to_json(red)},
              {"operator", op},
              {"spectrum", ms::to_json(s)}};
    emit_json(g, ms::envelope("spectrum", g.config(), r, certs, elapsed(g, start)));
  } else {
    Output out(g.out);
    out.stream() << spectrum_text(s) << '\n';
  }
  return ms::all_passed(certs) ? 0 : 1;
}

// ---------------------------------------------------------------- coarsen

std::vector<int> parse_table(const std::string& text) {
  std::vector<int> t;
  std::stringstream ss(text);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    try {
      std::size_t used = 0;
      t.push_back(std::stoi(tok, &used));
      ms::require(used == tok.size(), ms::ErrorCode::Parse, "malformed map '" + text + "'");
    } catch (const std::logic_error&) {
      ms::fail(ms::ErrorCode::Parse, "malformed map '" + text + "'");
    }
  }
  return t;
}

int cmd_coarsen(const Global& g, const std::string& from, const std::string& to,
                const std::string& map, std::size_t samples) {
  const auto start = Clock::now();
  const ms::Limits limits = g.limits();
  const auto fine = ms::Composition::parse(from);
  std::optional<ms::CoarseningMap> phi;
  if (!map.empty()) {
    phi = ms::CoarseningMap(parse_table(map));
    ms::require(phi->source_levels() == fine.levels(), ms::ErrorCode::DimensionMismatch,
                "map length must equal the number of levels of --from");
  }
  ms::Composition coarse = phi ? ms::coarsen_composition(*phi, fine) : fine;
  if (!to.empty()) {
    const auto target = ms::Composition::parse(to);
    if (phi) {
      ms::require(target == coarse, ms::ErrorCode::DimensionMismatch,
                  "map sends " + fine.to_string() + " to " + coarse.to_string() +
                      ", not " + target.to_string());
    } else {
      phi = ms::is_coarser(target, fine);
      ms::require(phi.has_value(), ms::ErrorCode::Precondition,
                  target.to_string() + " is not a coarsening of " + fine.to_string());
      coarse = target;
    }
  }
  ms::require(phi.has_value(), ms::ErrorCode::InvalidArgument,
              "coarsen needs --to or --map");

  const ms::VertexSet vf(fine, limits), vc(coarse, limits);
  std::vector<ms::Certificate> certs;
  certs.push_back({"surjective", ms::coarsening_surjective(*phi, vf, vc), "exact",
                   std::to_string(vf.size()) + " -> " + std::to_string(vc.size()) +
                       " vertices"});

  std::mt19937_64 rng(g.seed);
  bool inter = true;
  for (std::size_t i = 0; i < samples; ++i) {
    auto f = ms::random_function(vc, rng);
    if (g.float_mode)
      inter = inter && ms::intertwine_check(*phi, vf, vc, ms::to_double(f));
    else
      inter = inter && ms::intertwine_check(*phi, vf, vc, f);
  }
  certs.push_back({"intertwining", inter, g.float_mode ? "float" : "exact",
                   std::to_string(samples) + " random functions on the coarse slice"});

  // Lifted gap eigenfunctions of the coarse slice are gap eigenfunctions of
  // the fine slice.
  if (!coarse.trivial()) {
    const auto basis = ms::gap_eigenbasis(vc);
    const mpq_class lambda(static_cast<unsigned long>(coarse.total()));
    bool lift = true;
    for (const auto& f : basis.functions) {
      auto lifted = ms::pull_back(*phi, vf, vc, f);
      lift = lift && ms::verify_eigenpair(vf, lifted, lambda).passed;
    }
    certs.push_back({"eigenfunction_lift", lift, "exact",
                     std::to_string(basis.size()) + " coarse gap eigenfunctions"});
  }

  const auto rep = ms::spectrum_containment(*phi, fine, limits);
  certs.push_back({"spectrum_containment", rep.contained && rep.multiplicities_dominated,
                   "float", "coarse spectrum " + spectrum_text(rep.coarse_spectrum)});
  certs.push_back({"gap_monotone", rep.gap_monotone, "float",
                   "coarse gap " +
                       (rep.coarse_gap ? std::to_string(*rep.coarse_gap) : "none") +
                       ", fine gap " +
                       (rep.fine_gap ? std::to_string(*rep.fine_gap) : "none")});

  const std::string fmt = format_or(g, "text");
  require_format(fmt, {"text", "json"});
  if (fmt == "json") {
    json r = {{"fine", ms::to_json(fine)},
              {"coarse", ms::to_json(coarse)},
              {"map", ms::to_json(*phi)},
              {"fine_spectrum", ms::to_json(rep.fine_spectrum)},
              {"coarse_spectrum", ms::to_json(rep.coarse_spectrum)}};
    json cfg = g.config();
    cfg["samples"] = samples;
    emit_json(g, ms::envelope("coarsen", cfg, r, certs, elapsed(g, start)));
  } else {
    Output out(g.out);
    auto& os = out.stream();
    os << fine.to_string() << " -> " << coarse.to_string() << " via " << phi->to_string()
       << '\n';
    for (const auto& c : certs)
      os << "  " << (c.passed ? "pass " : "FAIL ") << c.name << "  " << c.detail << '\n';
  }
  return ms::all_passed(certs) ? 0 : 1;
}

// ---------------------------------------------------------------- walk

struct WalkArgs {
  std::string composition;
  double steps = 1e6;
  std::uint64_t burn_in = 1000;
  std::size_t lags = 20;
  std::size_t batches = 20;
  std::size_t thin = 10;
  std::string observable = "0,0";
  std::string trajectory;
  std::size_t max_trajectory = 100'000;
};

int cmd_walk(const Global& g, const WalkArgs& a) {
  const auto start = Clock::now();
  ms::require(std::isfinite(a.steps) && a.steps >= 1 && a.steps <= 1e12,
              ms::ErrorCode::InvalidArgument, "steps must lie in [1, 1e12]");
  ms::require(std::floor(a.steps) == a.steps, ms::ErrorCode::InvalidArgument,
              "steps must be an integer");
  ms::WalkConfig cfg;
  cfg.composition = ms::Composition::parse(a.composition);
  cfg.steps = static_cast<std::uint64_t>(a.steps);
  cfg.seed = g.seed;
  cfg.burn_in = a.burn_in;
  cfg.max_lag = a.lags;
  cfg.batches = a.batches;
  cfg.thin = a.thin;
  auto obs = parse_table(a.observable);
  ms::require(obs.size() == 2 && obs[0] >= 0 && obs[1] >= 0, ms::ErrorCode::Parse,
              "observable must be 'generator,position'");
  cfg.observable = ms::GapObservable{static_cast<std::size_t>(obs[0]),
                                     static_cast<std::size_t>(obs[1])};
  const auto st = ms::simulate(cfg);
  const auto est = ms::relaxation_estimate(st);
  const std::size_t n = cfg.composition.total();
  const double target = 1.0 - 2.0 / static_cast<double>(n - 1);

  std::vector<ms::Certificate> certs;
  const double z = est.standard_error > 0 ? std::fabs(est.ratio - target) / est.standard_error
                                          : (est.ratio == target ? 0.0 : INFINITY);
  certs.push_back({"decay_ratio", z <= 3.0, "statistical",
                   "ratio " + std::to_string(est.ratio) + " +- " +
                       std::to_string(est.standard_error) + " vs target " +
                       std::to_string(target)});
  std::optional<ms::ChiSquareResult> chi;
  if (st.tracks_occupation() && st.thinned.size() >= 2) {
    chi = ms::stationarity_test(st);
    certs.push_back({"stationarity", chi->passed, "statistical",
                     "chi2 " + std::to_string(chi->statistic) + " <= " +
                         std::to_string(chi->critical) + " (df " +
                         std::to_string(chi->degrees_of_freedom) + ")"});
  }

  if (!a.trajectory.empty()) {
    std::ofstream tf(a.trajectory);
    ms::require(tf.good(), ms::ErrorCode::InvalidArgument,
                "cannot open trajectory file " + a.trajectory);
    ms::write_trajectory(tf, st, a.max_trajectory);
  }

  const std::string fmt = format_or(g, "json");
  require_format(fmt, {"json", "csv", "text"});
  if (fmt == "csv") {
    Output out(g.out);
    ms::write_autocorrelation_csv(out.stream(), st);
  } else if (fmt == "text") {
    Output out(g.out);
    auto& os = out.stream();
    os << "walk on " << cfg.composition.to_string() << ", " << st.steps << " steps, seed "
       << st.seed << " (" << st.rng_algorithm << ")\n"
       << "decay ratio " << est.ratio << " +- " << est.standard_error << " ("
       << est.method << ", " << est.lags_used << " lags), target " << target << '\n';
    for (const auto& c : certs)
      os << (c.passed ? "pass " : "FAIL ") << c.name << "  " << c.detail << '\n';
  } else {
    json r;
    r["composition"] = ms::to_json(cfg.composition);
    r["rng_algorithm"] = st.rng_algorithm;
    r["steps"] = st.steps;
    r["burn_in"] = st.burn_in;
    r["observable"] = {{"generator", obs[0]}, {"position", obs[1]}};
    r["mean"] = st.mean;
    r["variance"] = st.variance;
    r["autocorrelation"] = st.autocorrelation;
    r["autocorrelation_stderr"] = st.autocorrelation_stderr;
    r["decay_ratio"] = est.ratio;
    r["decay_ratio_stderr"] = est.standard_error;
    r["fit_method"] = est.method;
    r["lags_used"] = est.lags_used;
    r["target"] = target;
    if (chi)
      r["chi_square"] = {{"statistic", chi->statistic},
                         {"degrees_of_freedom", chi->degrees_of_freedom},
                         {"critical", chi->critical},
                         {"p_value", chi->p_value},
                         {"samples", chi->samples}};
    json c = g.config();
    c["burn_in"] = a.burn_in;
    c["lags"] = a.lags;
    c["batches"] = a.batches;
    c["thin"] = a.thin;
    emit_json(g, ms::envelope("walk", c, r, certs, elapsed(g, start)));
  }
  return ms::all_passed(certs) ? 0 : 1;
}

// ---------------------------------------------------------------- export

int cmd_export(const Global& g, const std::string& text, std::string fmt) {
  const auto k = ms::Composition::parse(text);
  const ms::Limits limits = g.limits();
  const ms::VertexSet vs(k, limits);
  if (fmt.empty()) fmt = format_or(g, "edgelist");
  require_format(fmt, {"edgelist", "dot", "coo", "json"});
  Output out(g.out);
  auto& os = out.stream();
  if (fmt == "edgelist") {
    ms::write_edge_list(os, vs);
  } else if (fmt == "dot") {
    ms::write_dot(os, vs);
  } else if (fmt == "coo") {
    ms::laplacian(k, limits).write_coordinate(os);
  } else {
    json vertices = json::array();
    for (std::size_t v = 0; v < vs.size(); ++v) {
      auto x = vs[v];
      vertices.push_back(std::vector<int>(x.begin(), x.end()));
    }
    json edges = json::array();
    for (auto [u, v] : ms::edges(vs)) edges.push_back({u, v});
    json r = {{"composition", ms::to_json(k)},
              {"degree", ms::degree(k)},
              {"vertices", std::move(vertices)},
              {"edges", std::move(edges)}};
    os << ms::envelope("export", g.config(), r, {}, std::nullopt).dump(2) << '\n';
  }
  return 0;
}

// ---------------------------------------------------------------- level-sets

int cmd_level_sets(const Global& g, std::size_t n, const std::string& energies,
                   const std::string& target) {
  std::vector<mpq_class> values;
  std::stringstream ss(energies);
  std::string tok;
  auto parse_q = [](const std::string& t) {
    mpq_class q;
    ms::require(!t.empty() && q.set_str(t, 10) == 0, ms::ErrorCode::Parse,
                "malformed rational '" + t + "'");
    q.canonicalize();
    return q;
  };
  while (std::getline(ss, tok, ',')) values.push_back(parse_q(tok));
  const ms::EnergyTable table(std::move(values));
  const mpq_class e = parse_q(target);
  const auto sets = ms::level_sets(n, table, e);

  const std::string fmt = format_or(g, "text");
  require_format(fmt, {"text", "json"});
  if (fmt == "json") {
    json r = json::array();
    for (const auto& k : sets) r.push_back(ms::to_json(k));
    json c = g.config();
    c["N"] = n;
    c["energies"] = energies;
    c["energy"] = e.get_str();
    emit_json(g, ms::envelope("level-sets", c, {{"compositions", r}}, {}, std::nullopt));
  } else {
    Output out(g.out);
    for (const auto& k : sets) out.stream() << k.to_string() << '\n';
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Multislice graphs: spectra, certificates, coarsenings and walks"};
  app.require_subcommand(1);
  app.fallthrough();
  Global g;
  app.add_option("--format", g.format, "json | csv | text | dot | edgelist | coo");
  app.add_option("--tolerance", g.tolerance, "relative clustering tolerance")
      ->check(CLI::PositiveNumber);
  app.add_option("--dense-cap", g.dense_cap, "largest dense eigensolve")
      ->check(CLI::PositiveNumber);
  app.add_option("--budget", g.budget, "largest enumerated vertex set")
      ->check(CLI::PositiveNumber);
  app.add_option("--seed", g.seed, "random seed");
  auto* exact_flag = app.add_flag("--exact", "rational arithmetic (default)");
  auto* float_flag = app.add_flag("--float", g.float_mode, "floating arithmetic");
  exact_flag->excludes(float_flag);
  app.add_option("-o,--out", g.out, "write output to this file");
  app.add_option("--jobs", g.jobs, "worker threads for sweeps")->check(CLI::Range(1u, 256u));

  std::function<int()> run;

  std::string k_text;
  auto* info = app.add_subcommand("info", "cardinality, degree and reduction of a slice");
  info->add_option("-k,--composition", k_text, "counts such as 2,1,1")->required();
  info->callback([&] { run = [&] { return cmd_info(g, k_text); }; });

  std::vector<std::string> verify_ks;
  std::string sweep;
  std::size_t samples = 5;
  bool no_lower = false;
  auto* verify = app.add_subcommand("verify", "run the certification suite");
  verify->add_option("-k,--composition", verify_ks, "counts such as 2,1,1");
  verify->add_option("--sweep", sweep, "all reduced compositions, e.g. N=2..6");
  verify->add_option("--samples", samples, "random functions per identity check");
  verify->add_flag("--no-lower-bound", no_lower, "skip the exact PSD gap bound");
  verify->callback([&] {
    run = [&] { return cmd_verify(g, verify_ks, sweep, samples, !no_lower); };
  });

  std::string op = "laplacian";
  auto* spectrum = app.add_subcommand("spectrum", "eigenvalues with multiplicities");
  spectrum->add_option("-k,--composition", k_text, "counts such as 2,1,1")->required();
  spectrum->add_option("--operator", op, "laplacian | p | k | mk")
      ->check(CLI::IsMember({"laplacian", "p", "k", "mk"}));
  spectrum->callback([&] { run = [&] { return cmd_spectrum(g, k_text, op); }; });

  std::string from, to, map;
  std::size_t coarse_samples = 100;
  auto* coarsen = app.add_subcommand("coarsen", "audit a coarsening map");
  coarsen->add_option("--from", from, "fine composition")->required();
  coarsen->add_option("--to", to, "coarse composition");
  coarsen->add_option("--map", map, "level table such as 0,0,1");
  coarsen->add_option("--samples", coarse_samples, "random functions for intertwining");
  coarsen->callback([&] {
    run = [&] { return cmd_coarsen(g, from, to, map, coarse_samples); };
  });

  WalkArgs wa;
  auto* walk = app.add_subcommand("walk", "simulate the random transposition walk");
  walk->add_option("-k,--composition", wa.composition, "counts such as 2,2,2")->required();
  walk->add_option("--steps", wa.steps, "number of steps (1e6 accepted)");
  walk->add_option("--burn-in", wa.burn_in, "discarded initial steps");
  walk->add_option("--lags", wa.lags, "largest autocorrelation lag");
  walk->add_option("--batches", wa.batches, "batches for standard errors");
  walk->add_option("--thin", wa.thin, "occupation sampling interval");
  walk->add_option("--observable", wa.observable, "gap observable 'generator,position'");
  walk->add_option("--trajectory", wa.trajectory, "write the observable trajectory here");
  walk->add_option("--max-trajectory", wa.max_trajectory, "rows written to --trajectory");
  walk->callback([&] { run = [&] { return cmd_walk(g, wa); }; });

  std::string export_fmt;
  auto* exp = app.add_subcommand("export", "write the graph");
  exp->add_option("-k,--composition", k_text, "counts such as 2,1,1")->required();
  exp->add_option("--as", export_fmt, "edgelist | dot | coo | json")
      ->check(CLI::IsMember({"edgelist", "dot", "coo", "json"}));
  exp->callback([&] { run = [&] { return cmd_export(g, k_text, export_fmt); }; });

  std::size_t ls_n = 0;
  std::string energies, energy;
  auto* ls = app.add_subcommand("level-sets", "compositions with a given total energy");
  ls->add_option("-n", ls_n, "number of particles")->required();
  ls->add_option("--energies", energies, "per-level energies such as 0,1,2")->required();
  ls->add_option("--energy", energy, "total energy")->required();
  ls->callback([&] { run = [&] { return cmd_level_sets(g, ls_n, energies, energy); }; });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : static_cast<int>(ms::ErrorCode::InvalidArgument);
  }

  try {
    return run();
  } catch (const ms::Error& e) {
    std::cerr << "error (" << ms::to_string(e.code()) << "): " << e.what() << '\n';
    return static_cast<int>(e.code());
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return static_cast<int>(ms::ErrorCode::InvalidArgument);
  }
}
