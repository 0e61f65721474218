// hslab: command-line front end for the half-space Laplacian laboratory.
//
// Subcommands:
//   validate-genfunc   certify a generating function (orthonormality,
//                      support, lower bound, decay)
//   rate               run a convergence study from a JSON config
//   spectrum           print truncated eigenvalues of a named operator
//   compare-fractional sweep the reflection vs zero-extension fractional
//                      Laplacian difference
//
// Exit codes: 0 success / rate passed, 2 rate-test failure, 1 error.

#include <cstdio>
#include <filesystem>
#include <fstream>

#include <CLI11.hpp>

#include "halfspace/halfspace.hpp"

namespace hs = halfspace;

namespace {

int cmd_validate_genfunc(const std::string& which, int d) {
  hs::GeneratingFunction g = hs::make_genfunc(which);
  const int pts = d == 1 ? 1001 : 101;
  const double dev = hs::validate_orthonormality(g, d, pts);
  hs::SupportBoundReport sup = hs::validate_support_and_lower_bound(g, d);
  const double tau = hs::estimate_decay(g);
  std::printf("generating function: %s (d = %d)\n", g.name.c_str(), d);
  std::printf("  orthonormality deviation (%d^%d samples): %.3e\n", pts, d, dev);
  std::printf("  support radius: %.6f (within 3*pi/2: %s)\n", g.support_radius,
              g.support_radius <= 1.5 * hs::pi ? "yes" : "NO");
  std::printf("  lower bound on [-pi/2, pi/2]^d: c0 = %.12f (claimed %.12f)\n",
              sup.c0_measured, g.c0(d));
  std::printf("  measured decay exponent tau: %.3f (claimed %.1f)\n", tau, g.decay_exponent);
  std::printf("  decay assumption tau > d for the potential theorem: %s\n",
              g.meets_decay_assumption(d) ? "satisfied" : "NOT satisfied");
  const bool ok = dev <= 1e-12 && sup.ok;
  std::printf("certificate: %s\n", ok ? "PASS" : "FAIL");
  return ok ? 0 : 1;
}

int cmd_rate(const std::string& config_path, const std::string& out_dir, int threads,
             std::optional<std::uint64_t> seed_override) {
  hs::ExperimentConfig cfg = hs::load_config(config_path);
  if (seed_override) cfg.seed = *seed_override;
  hs::RateReport rep = hs::run_case(cfg, threads);

  std::filesystem::create_directories(out_dir);
  const std::string base =
      out_dir + "/" + rep.name + "_d" + std::to_string(rep.d);
  hs::emit_csv(rep, base + ".csv");
  hs::emit_svg(rep, base + ".svg");

  std::printf("case %s (d = %d), expected rate %.4f, band [%.3f, %.3f]\n", rep.name.c_str(),
              rep.d, rep.expected_rate, rep.band.first, rep.band.second);
  for (const hs::RateRow& r : rep.rates) {
    if (r.error.empty())
      std::printf("  z = %+.3f%+.3fi  slope %.4f  R2 %.6f  %s\n", r.z.real(), r.z.imag(),
                  r.slope, r.r2, r.pass ? "pass" : "FAIL");
    else
      std::printf("  z = %+.3f%+.3fi  error: %s\n", r.z.real(), r.z.imag(), r.error.c_str());
  }
  for (const hs::CellResult& c : rep.cells)
    if (!c.ok) std::printf("  cell h = %g, z = %+.3f%+.3fi failed: %s\n", c.h, c.z.real(),
                           c.z.imag(), c.error.c_str());
  std::printf("wrote %s.csv, %s.rates.csv, %s.svg\n", base.c_str(), base.c_str(), base.c_str());
  return rep.all_pass ? 0 : 2;
}

int cmd_spectrum(const std::string& op, int d, double h, int N, int count) {
  hs::LatticeGrid g(d, h, N);
  std::vector<double> eigs;
  if (op == "full") {
    hs::LatticeSpectrum sp(g);
    eigs = sp.symbol;
    std::sort(eigs.begin(), eigs.end());
  } else if (op == "dirichlet") {
    eigs = hs::half_spectrum(hs::HalfLatticeGrid(g, hs::BoundaryKind::dirichlet));
  } else if (op == "neumann") {
    eigs = hs::half_spectrum(hs::HalfLatticeGrid(g, hs::BoundaryKind::neumann));
  } else {
    throw hs::Error("spectrum: operator must be full, dirichlet or neumann");
  }
  std::printf("%s operator, d = %d, h = %g, N = %d: %zu eigenvalues\n", op.c_str(), d, h, N,
              eigs.size());
  const int n = std::min<int>(count, static_cast<int>(eigs.size()));
  for (int i = 0; i < n; ++i) std::printf("  lambda_%d = %.15g\n", i, eigs[i]);
  return 0;
}

int cmd_compare_fractional(double s, int d, double L, int M, const std::string& out_dir) {
  hs::ReferenceGrid g(d, L, M);
  hs::ReferenceSpectrum sp(g);

  std::printf("fractional comparison, s = %g, d = %d, box L = %g, M = %d\n", s, d, L, M);
  std::printf("  reflection route vs zero-extension route for Psi_s\n");
  std::printf("  %-26s %-14s %-14s\n", "test function", "difference", "relative");

  std::filesystem::create_directories(out_dir);
  std::ofstream csv(out_dir + "/compare_fractional.csv");
  csv << "label,offset,s,difference,relative\n";

  // odd-symmetric bumps about x1 = a, marching away from the wall
  for (double a : {2.0, 3.0, 4.0, 5.0, 6.0}) {
    auto fn = [a, d](const double* x) {
      double r2 = (x[0] - a) * (x[0] - a);
      for (int j = 1; j < d; ++j) r2 += x[j] * x[j];
      return hs::cplx((x[0] - a) * std::exp(-r2));
    };
    hs::HalfContinuumField f = hs::sample_half_continuum(g, fn);
    const double diff = hs::compare_zero_extension(sp, s, f);
    const double rel = diff / f.norm();
    std::printf("  odd bump at x1 = %-10.1f %-14.6e %-14.6e\n", a, diff, rel);
    csv << "odd-bump," << a << ',' << s << ',' << diff << ',' << rel << '\n';
  }
  // a generic bump
  {
    auto fn = [d](const double* x) {
      double r2 = (x[0] - 3.0) * (x[0] - 3.0);
      for (int j = 1; j < d; ++j) r2 += x[j] * x[j];
      return hs::cplx(std::exp(-r2));
    };
    hs::HalfContinuumField f = hs::sample_half_continuum(g, fn);
    const double diff = hs::compare_zero_extension(sp, s, f);
    const double rel = diff / f.norm();
    std::printf("  %-26s %-14.6e %-14.6e\n", "generic bump at x1 = 3", diff, rel);
    csv << "generic-bump,3," << s << ',' << diff << ',' << rel << '\n';
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"hslab: half-space discrete Laplacian laboratory"};
  app.require_subcommand(1);

  std::string out_dir = "out";
  int threads = 1;
  std::optional<std::uint64_t> seed;
  std::uint64_t seed_value = 0;
  app.add_option("--out-dir", out_dir, "output directory")->capture_default_str();
  app.add_option("--threads", threads, "worker threads for sweeps")->capture_default_str();
  auto* seed_opt = app.add_option("--seed", seed_value, "override the config seed");

  auto* vg = app.add_subcommand("validate-genfunc", "certify a generating function");
  std::string which = "shannon";
  int vg_d = 1;
  vg->add_option("--which", which, "shannon or meyer")->required();
  vg->add_option("--d", vg_d, "dimension")->capture_default_str();

  auto* rate = app.add_subcommand("rate", "run a convergence study from a JSON config");
  std::string config_path;
  rate->add_option("--config", config_path, "JSON config file")->required();

  auto* spec = app.add_subcommand("spectrum", "print truncated eigenvalues");
  std::string op = "dirichlet";
  int sd = 1, sN = 8, scount = 16;
  double sh = 1.0;
  spec->add_option("--operator", op, "full, dirichlet or neumann")->capture_default_str();
  spec->add_option("--d", sd, "dimension")->capture_default_str();
  spec->add_option("--mesh", sh, "mesh size")->capture_default_str();
  spec->add_option("--N", sN, "half extent")->capture_default_str();
  spec->add_option("--count", scount, "how many eigenvalues to print")->capture_default_str();

  auto* cf = app.add_subcommand("compare-fractional",
                                "reflection vs zero-extension fractional sweep");
  double cs = 1.0, cL = 16.0;
  int cd = 1, cM = 512;
  cf->add_option("--s", cs, "power s of Psi_s")->capture_default_str();
  cf->add_option("--d", cd, "dimension")->capture_default_str();
  cf->add_option("--L", cL, "box half length")->capture_default_str();
  cf->add_option("--M", cM, "reference samples per axis")->capture_default_str();

  CLI11_PARSE(app, argc, argv);
  if (seed_opt->count() > 0) seed = seed_value;

  try {
    if (vg->parsed()) return cmd_validate_genfunc(which, vg_d);
    if (rate->parsed()) return cmd_rate(config_path, out_dir, threads, seed);
    if (spec->parsed()) return cmd_spectrum(op, sd, sh, sN, scount);
    if (cf->parsed()) return cmd_compare_fractional(cs, cd, cL, cM, out_dir);
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
  return 1;
}
