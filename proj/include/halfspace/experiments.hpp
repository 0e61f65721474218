#pragma once

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <future>
#include <limits>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "halfspace/genfunc.hpp"
#include "halfspace/normest.hpp"
#include "halfspace/svg.hpp"

namespace halfspace {

struct PowerIterationConfig {
  double tol = 1e-4;
  int max_iter = 1500;
  int restarts = 2;
};

/// One convergence study: a theorem case swept over an h-list and a z-list.
struct ExperimentConfig {
  TheoremCase theorem = TheoremCase::dirichlet;
  int d = 1;
  double L = 16.0;
  std::vector<double> h_list;  // strictly decreasing, at least 3 entries
  std::vector<cplx> z_list;    // defaults depend on the case
  std::string genfunc = "shannon";
  EvenVariant even_variant = EvenVariant::half_plane;
  std::string potential = "cos-gauss";
  double psi_s = 1.0;
  std::optional<double> psi_alpha; // optional declared parameters overriding
  std::optional<double> psi_beta;  // the ones derived from s
  double oversample = 3.0;
  std::optional<int> M_override;
  std::uint64_t seed = 1;
  PowerIterationConfig powerit;
  PotentialSolveOptions solve_opts;
  std::optional<std::pair<double, double>> expected_band;
  std::string name; // label used in outputs; defaults to the case name
};

struct CellResult {
  double h = 0.0;
  cplx z{};
  double norm_estimate = 0.0;
  int iterations = 0;
  double residual_max = 0.0;
  std::uint64_t seed = 0;
  bool ok = false;
  std::string error;
};

struct RateRow {
  cplx z{};
  double slope = 0.0;
  double intercept = 0.0;
  double r2 = 0.0;
  double expected = 0.0;
  bool pass = false;
  std::string error;
};

struct RateReport {
  TheoremCase theorem = TheoremCase::dirichlet;
  int d = 1;
  std::string name;
  double expected_rate = 0.0;
  std::pair<double, double> band{0.0, 0.0};
  std::vector<CellResult> cells; // z-major, h-minor order
  std::vector<RateRow> rates;
  bool all_pass = false;
};

// ---------------------------------------------------------------------------
// Rate fitting
// ---------------------------------------------------------------------------

struct RateFit {
  double slope = 0.0;
  double intercept = 0.0;
  double r2 = 0.0;
};

/// Ordinary least squares of log(value) against log(h). Requires at least
/// three points with positive values.
inline RateFit fit_rate(const std::vector<std::pair<double, double>>& points) {
  if (points.size() < 3) throw Error("fit_rate: need at least 3 points");
  std::vector<double> lx, ly;
  for (const auto& [h, v] : points) {
    if (!(v > 0.0))
      throw Error("fit_rate: nonpositive value at h = " + std::to_string(h));
    lx.push_back(std::log(h));
    ly.push_back(std::log(v));
  }
  RateFit f;
  detail::ols(lx, ly, f.slope, f.intercept, f.r2);
  return f;
}

// ---------------------------------------------------------------------------
// Expected rates and default bands
// ---------------------------------------------------------------------------

/// theta' from 1/theta' = 1/theta + 1/(tau - d).
inline double potential_rate(double theta, double tau, int d) {
  if (!(tau > d)) throw Error("potential_rate: decay exponent must exceed d");
  return 1.0 / (1.0 / theta + 1.0 / (tau - static_cast<double>(d)));
}

inline double expected_rate_for(const ExperimentConfig& cfg) {
  if (is_psi_case(cfg.theorem)) {
    if (cfg.psi_alpha && cfg.psi_beta) {
      SpectralFunction f;
      f.alpha = *cfg.psi_alpha;
      f.beta = *cfg.psi_beta;
      return f.gamma();
    }
    return derive_psi_params(cfg.psi_s).gamma;
  }
  if (is_potential_case(cfg.theorem)) {
    GeneratingFunction g = make_genfunc(cfg.genfunc);
    PotentialSpec pot = make_potential(cfg.potential);
    return potential_rate(pot.theta, g.decay_exponent, cfg.d);
  }
  return 2.0;
}

/// Slope acceptance band. Quadratic cases use [1.8, 2.2] in d = 1 and
/// [1.7, 2.3] in d = 2; psi cases use [gamma - 0.2, gamma + 0.3]; the
/// potential case is one sided, slope >= theta' - 0.1.
inline std::pair<double, double> default_band_for(const ExperimentConfig& cfg,
                                                  double expected) {
  if (is_potential_case(cfg.theorem))
    return {expected - 0.1, std::numeric_limits<double>::infinity()};
  if (is_psi_case(cfg.theorem)) return {expected - 0.2, expected + 0.3};
  return cfg.d >= 2 ? std::pair<double, double>{1.7, 2.3}
                    : std::pair<double, double>{1.8, 2.2};
}

inline std::vector<cplx> default_z_list(TheoremCase c) {
  if (is_potential_case(c)) return {cplx(-1.0, 2.0), cplx(-1.0, -2.0)};
  return {cplx(-1.0, 0.0), cplx(-4.0, 0.0), cplx(-1.0, 2.0)};
}

// ---------------------------------------------------------------------------
// Case runner
// ---------------------------------------------------------------------------

namespace detail {

inline int lattice_extent_for(double L, double h) {
  const double ratio = L / h;
  const int N = static_cast<int>(std::llround(ratio));
  if (std::abs(ratio - N) > 1e-9 || N < 2)
    throw Error("run_case: L/h must be an integer >= 2 (L = " + std::to_string(L) +
                ", h = " + std::to_string(h) + ")");
  return N;
}

inline void validate(const ExperimentConfig& cfg) {
  if (cfg.h_list.size() < 3) throw Error("config: h_list needs at least 3 entries");
  for (std::size_t i = 0; i + 1 < cfg.h_list.size(); ++i)
    if (!(cfg.h_list[i] > cfg.h_list[i + 1]))
      throw Error("config: h_list must be strictly decreasing");
  if (cfg.z_list.empty()) throw Error("config: z_list must not be empty");
  if (is_potential_case(cfg.theorem))
    for (cplx z : cfg.z_list)
      if (z.imag() == 0.0) throw Error("config: potential cases need Im z != 0");
}

inline SpectralFunction psi_for(const ExperimentConfig& cfg) {
  SpectralFunction f = make_power_function(cfg.psi_s);
  if (cfg.psi_alpha) f.alpha = *cfg.psi_alpha;
  if (cfg.psi_beta) f.beta = *cfg.psi_beta;
  return f;
}

}  // namespace detail

/// Reference grid shared by the whole sweep: sized for the smallest h.
inline ReferenceGrid reference_grid_for(const ExperimentConfig& cfg) {
  const int n_max = detail::lattice_extent_for(cfg.L, cfg.h_list.back());
  int M = cfg.M_override ? *cfg.M_override
                         : next_fast_even(static_cast<int>(
                               std::ceil(cfg.oversample * static_cast<double>(n_max))));
  return ReferenceGrid(cfg.d, cfg.L, M);
}

/// Estimate the error-operator norm for one (h, z) cell.
inline CellResult run_cell(const ExperimentConfig& cfg, const ReferenceGrid& ref, double h,
                           cplx z, std::uint64_t cell_seed) {
  CellResult cell;
  cell.h = h;
  cell.z = z;
  cell.seed = cell_seed;
  try {
    ErrorOperatorSpec spec;
    spec.theorem = cfg.theorem;
    spec.lattice = LatticeGrid(cfg.d, h, detail::lattice_extent_for(cfg.L, h));
    spec.reference = ref;
    spec.genfunc = make_genfunc(cfg.genfunc);
    spec.z = z;
    spec.even_variant = cfg.even_variant;
    spec.solve_opts = cfg.solve_opts;
    if (is_potential_case(cfg.theorem)) spec.potential = make_potential(cfg.potential);
    if (is_psi_case(cfg.theorem)) spec.psi = detail::psi_for(cfg);
    ErrorOperator op(spec);
    NormEstimate est = operator_norm(op, cfg.powerit.tol, cfg.powerit.max_iter,
                                     cfg.powerit.restarts, cell_seed);
    op.probe_residual(cell_seed);
    cell.norm_estimate = est.value;
    cell.iterations = est.iterations;
    cell.residual_max = op.max_inner_residual();
    cell.ok = true;
    if (!est.converged) cell.error = "power iteration not converged (best estimate kept)";
  } catch (const Error& e) {
    cell.ok = false;
    cell.error = e.what();
  }
  return cell;
}

/// Run the full study: estimate || E(h, z) || over the grid of cells, fit
/// log-log slopes per z, compare with the expected band.
inline RateReport run_case(const ExperimentConfig& cfg, int threads = 1) {
  detail::validate(cfg);
  RateReport rep;
  rep.theorem = cfg.theorem;
  rep.d = cfg.d;
  rep.name = cfg.name.empty() ? to_string(cfg.theorem) : cfg.name;
  rep.expected_rate = expected_rate_for(cfg);
  rep.band = cfg.expected_band ? *cfg.expected_band : default_band_for(cfg, rep.expected_rate);

  const ReferenceGrid ref = reference_grid_for(cfg);
  const std::size_t n_cells = cfg.z_list.size() * cfg.h_list.size();
  rep.cells.resize(n_cells);

  auto cell_job = [&](std::size_t zi, std::size_t hi) {
    const std::uint64_t cell_seed =
        mix_seed(cfg.seed ^ (0x100000001b3ULL * (zi * 1000003ULL + hi + 1ULL)));
    rep.cells[zi * cfg.h_list.size() + hi] =
        run_cell(cfg, ref, cfg.h_list[hi], cfg.z_list[zi], cell_seed);
  };

  if (threads <= 1) {
    for (std::size_t zi = 0; zi < cfg.z_list.size(); ++zi)
      for (std::size_t hi = 0; hi < cfg.h_list.size(); ++hi) cell_job(zi, hi);
  } else {
    std::vector<std::pair<std::size_t, std::size_t>> jobs;
    for (std::size_t zi = 0; zi < cfg.z_list.size(); ++zi)
      for (std::size_t hi = 0; hi < cfg.h_list.size(); ++hi) jobs.emplace_back(zi, hi);
    std::atomic<std::size_t> next{0};
    auto worker = [&]() {
      while (true) {
        const std::size_t i = next.fetch_add(1);
        if (i >= jobs.size()) break;
        cell_job(jobs[i].first, jobs[i].second);
      }
    };
    std::vector<std::future<void>> pool;
    for (int t = 0; t < threads; ++t) pool.push_back(std::async(std::launch::async, worker));
    for (auto& f : pool) f.get();
  }

  rep.all_pass = true;
  for (std::size_t zi = 0; zi < cfg.z_list.size(); ++zi) {
    RateRow row;
    row.z = cfg.z_list[zi];
    row.expected = rep.expected_rate;
    std::vector<std::pair<double, double>> pts;
    for (std::size_t hi = 0; hi < cfg.h_list.size(); ++hi) {
      const CellResult& c = rep.cells[zi * cfg.h_list.size() + hi];
      if (c.ok) pts.emplace_back(c.h, c.norm_estimate);
    }
    try {
      RateFit fit = fit_rate(pts);
      row.slope = fit.slope;
      row.intercept = fit.intercept;
      row.r2 = fit.r2;
      row.pass = row.slope >= rep.band.first && row.slope <= rep.band.second;
    } catch (const Error& e) {
      row.error = e.what();
      row.pass = false;
    }
    rep.all_pass = rep.all_pass && row.pass;
    rep.rates.push_back(row);
  }
  return rep;
}

/// Surrogate control: re-estimate the smallest-h cells on a reference grid
/// with doubled density and return the largest relative change.
inline double surrogate_control(const ExperimentConfig& cfg) {
  detail::validate(cfg);
  const ReferenceGrid ref = reference_grid_for(cfg);
  const ReferenceGrid ref2(cfg.d, cfg.L, 2 * ref.M);
  const double h_min = cfg.h_list.back();
  double worst = 0.0;
  for (std::size_t zi = 0; zi < cfg.z_list.size(); ++zi) {
    const std::uint64_t cell_seed = mix_seed(
        cfg.seed ^ (0x100000001b3ULL * (zi * 1000003ULL + (cfg.h_list.size() - 1) + 1ULL)));
    CellResult a = run_cell(cfg, ref, h_min, cfg.z_list[zi], cell_seed);
    CellResult b = run_cell(cfg, ref2, h_min, cfg.z_list[zi], cell_seed);
    if (!a.ok || !b.ok) throw Error("surrogate_control: cell failed: " + a.error + b.error);
    worst = std::max(worst, std::abs(b.norm_estimate - a.norm_estimate) /
                                std::max(a.norm_estimate, 1e-300));
  }
  return worst;
}

// ---------------------------------------------------------------------------
// CSV / SVG emission
// ---------------------------------------------------------------------------

namespace detail {

inline std::string fmt_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

inline std::string rates_path_for(const std::string& path) {
  const std::string suffix = ".csv";
  if (path.size() >= suffix.size() &&
      path.compare(path.size() - suffix.size(), suffix.size(), suffix) == 0)
    return path.substr(0, path.size() - suffix.size()) + ".rates.csv";
  return path + ".rates.csv";
}

}  // namespace detail

/// Write the per-cell data CSV at `path` and the per-z rate CSV alongside it
/// (suffix .rates.csv). Deterministic: no timestamps, fixed float format.
inline void emit_csv(const RateReport& rep, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw Error("emit_csv: cannot open " + path);
  out << "case,d,h,z_re,z_im,norm_estimate,residual_max,iterations,seed\n";
  for (const CellResult& c : rep.cells) {
    out << rep.name << ',' << rep.d << ',' << detail::fmt_double(c.h) << ','
        << detail::fmt_double(c.z.real()) << ',' << detail::fmt_double(c.z.imag()) << ','
        << detail::fmt_double(c.ok ? c.norm_estimate
                                   : std::numeric_limits<double>::quiet_NaN())
        << ',' << detail::fmt_double(c.residual_max) << ',' << c.iterations << ',' << c.seed
        << '\n';
  }
  if (!out.good()) throw Error("emit_csv: write failed for " + path);
  out.close();

  const std::string rpath = detail::rates_path_for(path);
  std::ofstream rout(rpath);
  if (!rout) throw Error("emit_csv: cannot open " + rpath);
  rout << "case,d,z_re,z_im,slope,intercept,r2,expected,pass\n";
  for (const RateRow& r : rep.rates) {
    rout << rep.name << ',' << rep.d << ',' << detail::fmt_double(r.z.real()) << ','
         << detail::fmt_double(r.z.imag()) << ',' << detail::fmt_double(r.slope) << ','
         << detail::fmt_double(r.intercept) << ',' << detail::fmt_double(r.r2) << ','
         << detail::fmt_double(r.expected) << ',' << (r.pass ? 1 : 0) << '\n';
  }
  if (!rout.good()) throw Error("emit_csv: write failed for " + rpath);
}

/// One log-log panel per z with the fitted line.
inline void emit_svg(const RateReport& rep, const std::string& path) {
  std::vector<SvgPanel> panels;
  const std::size_t nh = rep.rates.empty() ? 0 : rep.cells.size() / rep.rates.size();
  for (std::size_t zi = 0; zi < rep.rates.size(); ++zi) {
    const RateRow& r = rep.rates[zi];
    SvgPanel p;
    std::ostringstream title;
    title << rep.name << " (d=" << rep.d << "), z = " << r.z.real();
    if (r.z.imag() != 0.0) title << (r.z.imag() > 0 ? " + " : " - ") << std::abs(r.z.imag())
                                 << "i";
    p.title = title.str();
    std::ostringstream sub;
    sub.setf(std::ios::fixed);
    sub.precision(3);
    sub << "slope " << r.slope << ", expected " << r.expected << ", R2 " << r.r2
        << (r.pass ? "  [pass]" : "  [fail]");
    p.subtitle = sub.str();
    p.slope = r.slope;
    p.intercept = r.intercept;
    for (std::size_t hi = 0; hi < nh; ++hi) {
      const CellResult& c = rep.cells[zi * nh + hi];
      if (c.ok) {
        p.x.push_back(c.h);
        p.y.push_back(c.norm_estimate);
      }
    }
    panels.push_back(std::move(p));
  }
  write_svg_panels(panels, path);
}

// ---------------------------------------------------------------------------
// JSON configuration
// ---------------------------------------------------------------------------

namespace detail {

inline int byte_to_line(const std::string& text, std::size_t byte) {
  int line = 1;
  for (std::size_t i = 0; i < std::min(byte, text.size()); ++i)
    if (text[i] == '\n') ++line;
  return line;
}

}  // namespace detail

/// Parse an ExperimentConfig from JSON text. Malformed JSON is reported with
/// a line number.
inline ExperimentConfig parse_config(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw Error("config parse error at line " +
                std::to_string(detail::byte_to_line(text, e.byte)) + ": " + e.what());
  }
  try {
    ExperimentConfig cfg;
    cfg.theorem = theorem_case_from_string(j.at("case").get<std::string>());
    cfg.d = j.value("d", 1);
    cfg.L = j.value("L", 16.0);
    cfg.h_list = j.at("h_list").get<std::vector<double>>();
    if (j.contains("z_list")) {
      for (const auto& zz : j["z_list"]) {
        if (zz.is_array() && zz.size() == 2)
          cfg.z_list.emplace_back(zz[0].get<double>(), zz[1].get<double>());
        else if (zz.is_number())
          cfg.z_list.emplace_back(zz.get<double>(), 0.0);
        else
          throw Error("config: z_list entries must be numbers or [re, im] pairs");
      }
    } else {
      cfg.z_list = default_z_list(cfg.theorem);
    }
    cfg.genfunc = j.value("genfunc", std::string("shannon"));
    if (j.contains("even_variant")) {
      const std::string v = j["even_variant"].get<std::string>();
      if (v == "half-plane")
        cfg.even_variant = EvenVariant::half_plane;
      else if (v == "paper-literal")
        cfg.even_variant = EvenVariant::paper_literal;
      else
        throw Error("config: even_variant must be 'half-plane' or 'paper-literal'");
    }
    if (j.contains("potential")) {
      const auto& p = j["potential"];
      cfg.potential = p.is_string() ? p.get<std::string>() : p.at("name").get<std::string>();
    }
    if (j.contains("psi")) {
      const auto& p = j["psi"];
      if (p.is_number()) {
        cfg.psi_s = p.get<double>();
      } else {
        cfg.psi_s = p.value("s", 1.0);
        if (p.contains("alpha")) cfg.psi_alpha = p["alpha"].get<double>();
        if (p.contains("beta")) cfg.psi_beta = p["beta"].get<double>();
      }
    }
    if (j.contains("reference")) {
      const auto& r = j["reference"];
      cfg.oversample = r.value("oversample", 3.0);
      if (r.contains("M")) cfg.M_override = r["M"].get<int>();
    }
    cfg.seed = j.value("seed", 1ULL);
    if (j.contains("power_iteration")) {
      const auto& p = j["power_iteration"];
      cfg.powerit.tol = p.value("tol", cfg.powerit.tol);
      cfg.powerit.max_iter = p.value("max_iter", cfg.powerit.max_iter);
      cfg.powerit.restarts = p.value("restarts", cfg.powerit.restarts);
    }
    if (j.contains("solver")) {
      const auto& s = j["solver"];
      cfg.solve_opts.tol = s.value("tol", cfg.solve_opts.tol);
      cfg.solve_opts.certify_tol = s.value("certify_tol", cfg.solve_opts.certify_tol);
      cfg.solve_opts.max_iter = s.value("max_iter", cfg.solve_opts.max_iter);
      cfg.solve_opts.restart = s.value("restart", cfg.solve_opts.restart);
    }
    if (j.contains("expected_band")) {
      const auto& b = j["expected_band"];
      cfg.expected_band = std::make_pair(b.at(0).get<double>(), b.at(1).get<double>());
    }
    cfg.name = j.value("name", std::string());
    detail::validate(cfg);
    return cfg;
  } catch (const nlohmann::json::exception& e) {
    throw Error(std::string("config error: ") + e.what());
  }
}

inline ExperimentConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open config file: " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str());
}

}  // namespace halfspace
