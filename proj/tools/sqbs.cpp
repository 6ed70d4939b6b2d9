// Command-line front end: each subcommand evaluates one family of results
// (disentangling sweep, output-port distributions, dark-port statistics,
// kappa curves, optimal squeezing, oracle cross-check) and writes a CSV
// dataset with the full parameter set recorded in "# " header lines.

#include <CLI11.hpp>

#include <cmath>
#include <complex>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "sqbs/csv.hpp"
#include "sqbs/darkport.hpp"
#include "sqbs/disentangle.hpp"
#include "sqbs/distribution.hpp"
#include "sqbs/fock_oracle.hpp"
#include "sqbs/svg_plot.hpp"

namespace {

constexpr int kExitValidation = 2;
constexpr int kExitTolerance = 3;

struct CommonOpts {
  std::string out;
  std::string svg;
  double norm_tol = 1e-6;
  int threads = 0;
};

void add_common(CLI::App* cmd, CommonOpts* c, const std::string& default_out) {
  c->out = default_out;
  cmd->add_option("--out", c->out, "Output CSV path")->capture_default_str();
  cmd->add_option("--svg", c->svg, "Also render a simple SVG plot to this path");
  cmd->add_option("--norm-tol", c->norm_tol,
                  "Normalization tolerance for truncated distributions")
      ->capture_default_str();
  cmd->add_option("--threads", c->threads, "Worker threads (0 = all cores)")
      ->capture_default_str();
}

void apply_threads(const CommonOpts& c) {
#ifdef _OPENMP
  if (c.threads > 0) omp_set_num_threads(c.threads);
#endif
}

std::ofstream open_out(const std::string& path) {
  std::ofstream os(path, std::ios::binary);  // "\n" line endings everywhere
  if (!os) throw std::invalid_argument("cannot open output file: " + path);
  return os;
}

std::string list_to_string(const std::vector<double>& xs) {
  std::string s;
  for (size_t i = 0; i < xs.size(); ++i) {
    if (i) s += ' ';
    s += sqbs::format_g15(xs[i]);
  }
  return s;
}

// Grid bound that keeps the truncation defect well below 1e-6 for the
// parameter ranges of interest (checked again downstream by full_grid).
int auto_grid_bound(double alpha_sq, double r) {
  const double mean = alpha_sq + std::sinh(r) * std::sinh(r);
  return static_cast<int>(std::ceil(mean + 8.0 * std::sqrt(mean) + 16.0));
}

int auto_dark_bound(double alpha_delta_sq, double r) {
  const double mean = alpha_delta_sq + std::sinh(r) * std::sinh(r);
  const double er = std::exp(2.0 * r);
  return static_cast<int>(std::ceil(mean + 10.0 * std::sqrt(mean + 1.0) * er + 32.0));
}

// ---------------------------------------------------------------- sweep ----

int cmd_disentangle_sweep(int gamma_steps, int r_steps, double r_max,
                          const CommonOpts& common) {
  if (gamma_steps < 2 || r_steps < 2) {
    throw std::invalid_argument("disentangle-sweep: need at least 2 steps per axis");
  }
  apply_threads(common);

  const int rows = gamma_steps * r_steps;
  std::vector<sqbs::DisentangleCoeffs> coeffs(rows);
  std::vector<double> residuals(rows);
#pragma omp parallel for schedule(dynamic)
  for (int i = 0; i < gamma_steps; ++i) {
    const double gamma = (M_PI / 2.0) * i / (gamma_steps - 1);
    for (int j = 0; j < r_steps; ++j) {
      const double r = r_max * j / (r_steps - 1);
      const sqbs::BeamSplitterAngle g(gamma);
      const auto c = sqbs::solve_disentangling(g, r);
      coeffs[i * r_steps + j] = c;
      residuals[i * r_steps + j] = sqbs::reconstruct_residual(c, g, r);
    }
  }

  auto os = open_out(common.out);
  sqbs::CsvWriter w(os);
  w.comment("sqbs disentangle-sweep version=" + std::string(sqbs::kArtifactVersion));
  w.comment("gamma_steps=" + std::to_string(gamma_steps) +
            ", r_steps=" + std::to_string(r_steps) +
            ", gamma_range=[0," + sqbs::format_g15(M_PI / 2.0) +
            "], r_range=[0," + sqbs::format_g15(r_max) + "]");
  w.comment("columns: gamma,r,sigma1,sigma2,sigmaS,sigmaT,residual");
  double worst = 0.0;
  for (int i = 0; i < gamma_steps; ++i) {
    const double gamma = (M_PI / 2.0) * i / (gamma_steps - 1);
    for (int j = 0; j < r_steps; ++j) {
      const double r = r_max * j / (r_steps - 1);
      const auto& c = coeffs[i * r_steps + j];
      const double res = residuals[i * r_steps + j];
      worst = std::max(worst, res);
      w.row(gamma, r, c.sigma1, c.sigma2, c.sigmaS, c.sigmaT, res);
    }
  }
  os.close();

  if (!common.svg.empty()) {
    std::vector<sqbs::PlotSeries> series(4);
    const char* names[4] = {"sigma1", "sigma2", "sigmaS", "sigmaT"};
    for (int s = 0; s < 4; ++s) series[s].label = std::string(names[s]) + " (r=r_max)";
    for (int i = 0; i < gamma_steps; ++i) {
      const double gamma = (M_PI / 2.0) * i / (gamma_steps - 1);
      const auto& c = coeffs[i * r_steps + (r_steps - 1)];
      const double vals[4] = {c.sigma1, c.sigma2, c.sigmaS, c.sigmaT};
      for (int s = 0; s < 4; ++s) {
        series[s].x.push_back(gamma);
        series[s].y.push_back(vals[s]);
      }
    }
    sqbs::write_svg_plot(common.svg, "disentangling coefficients", "gamma",
                         "sigma", series);
  }

  if (worst > 1e-10) {
    std::cerr << "disentangle-sweep: worst residual " << worst << " > 1e-10\n";
    return kExitTolerance;
  }
  std::cout << "disentangle-sweep: " << rows << " rows, worst residual "
            << sqbs::format_g15(worst) << "\n";
  return 0;
}

// ----------------------------------------------------------------- dist ----

int cmd_dist(double alpha_sq, double gamma, std::vector<double> r_list,
             double theta, double phi, int n_max, bool baseline,
             const CommonOpts& common) {
  if (alpha_sq < 0.0) throw std::invalid_argument("dist: --alpha-sq must be >= 0");
  apply_threads(common);

  const sqbs::CoherentParam alpha(std::sqrt(alpha_sq), phi);
  auto os = open_out(common.out);
  sqbs::CsvWriter w(os);
  w.comment("sqbs dist version=" + std::string(sqbs::kArtifactVersion));
  w.comment("alpha_sq=" + sqbs::format_g15(alpha_sq) +
            ", gamma=" + sqbs::format_g15(gamma) +
            ", theta=" + sqbs::format_g15(theta) +
            ", phi=" + sqbs::format_g15(phi) +
            ", r_list=" + list_to_string(r_list) +
            ", norm_tol=" + sqbs::format_g15(common.norm_tol) +
            ", baseline=" + std::string(baseline ? "1" : "0"));
  w.comment("distribution rows: dist,r,n,probability (port-1 marginal)");
  w.comment(baseline
                ? "summary rows: summary,r,mean,variance,mean_noentangle,variance_noentangle"
                : "summary rows: summary,r,mean,variance");

  struct Summary {
    double r, mean, var, mean_base, var_base;
  };
  std::vector<Summary> summaries;
  std::vector<sqbs::PlotSeries> series;

  for (double r : r_list) {
    const auto params = sqbs::DistributionParams::make(
        alpha, sqbs::SqueezeParam(r, theta), gamma);
    const int bound = n_max > 0 ? n_max : auto_grid_bound(alpha_sq, r);
    const auto joint = sqbs::full_grid(params, bound, bound, common.norm_tol);
    const auto port1 = sqbs::marginal(joint, 1);
    for (size_t n = 0; n < port1.probs.size(); ++n) {
      w.row("dist", r, static_cast<int>(n), port1.probs[n]);
    }
    Summary s{r, port1.mean, port1.variance, 0.0, 0.0};
    if (baseline) {
      const auto base = sqbs::no_entangle_grid(params, bound, bound, common.norm_tol);
      const auto bport = sqbs::marginal(base, 1);
      s.mean_base = bport.mean;
      s.var_base = bport.variance;
    }
    summaries.push_back(s);

    sqbs::PlotSeries ps;
    ps.label = "r=" + sqbs::format_g15(r);
    for (size_t n = 0; n < port1.probs.size(); ++n) {
      ps.x.push_back(static_cast<double>(n));
      ps.y.push_back(port1.probs[n]);
    }
    series.push_back(std::move(ps));
  }
  for (const auto& s : summaries) {
    if (baseline) {
      w.row("summary", s.r, s.mean, s.var, s.mean_base, s.var_base);
    } else {
      w.row("summary", s.r, s.mean, s.var);
    }
  }
  os.close();

  if (!common.svg.empty()) {
    sqbs::write_svg_plot(common.svg, "port-1 photon distribution", "n", "P(n)",
                         series);
  }
  std::cout << "dist: wrote " << summaries.size() << " distributions\n";
  return 0;
}

// ------------------------------------------------------------- darkport ----

int cmd_darkport(double alpha_delta_sq, std::vector<double> r_list, double angle,
                 int n_max, const CommonOpts& common) {
  if (alpha_delta_sq < 0.0) {
    throw std::invalid_argument("darkport: --alpha-delta-sq must be >= 0");
  }
  apply_threads(common);

  auto os = open_out(common.out);
  sqbs::CsvWriter w(os);
  w.comment("sqbs darkport version=" + std::string(sqbs::kArtifactVersion));
  w.comment("alpha_delta_sq=" + sqbs::format_g15(alpha_delta_sq) +
            ", angle=" + sqbs::format_g15(angle) +
            ", r_list=" + list_to_string(r_list) +
            ", norm_tol=" + sqbs::format_g15(common.norm_tol));
  w.comment("distribution rows: dist,r,n,probability");
  w.comment("moment rows: moments,r,mean_summed,variance_summed,mean_analytic,variance_analytic");

  std::vector<sqbs::PlotSeries> series;
  struct Row {
    double r, mean_s, var_s, mean_a, var_a;
  };
  std::vector<Row> moments;
  double worst_rel = 0.0;

  for (double r : r_list) {
    sqbs::DarkPortParams p;
    p.alpha_delta_sq = alpha_delta_sq;
    p.squeeze = sqbs::SqueezeParam(r, angle);  // phi = 0, so theta - 2 phi = angle
    p.phi = 0.0;
    const int bound = n_max > 0 ? n_max : auto_dark_bound(alpha_delta_sq, r);
    const auto dist = sqbs::dark_distribution(p, bound, common.norm_tol);
    const auto mom = sqbs::dark_moments(p);
    for (size_t n = 0; n < dist.probs.size(); ++n) {
      w.row("dist", r, static_cast<int>(n), dist.probs[n]);
    }
    moments.push_back({r, dist.mean, dist.variance, mom.mean, mom.variance});
    worst_rel = std::max(worst_rel,
                         std::fabs(dist.mean - mom.mean) / std::fabs(mom.mean));
    worst_rel = std::max(worst_rel, std::fabs(dist.variance - mom.variance) /
                                        std::fabs(mom.variance));

    sqbs::PlotSeries ps;
    ps.label = "r=" + sqbs::format_g15(r);
    for (size_t n = 0; n < dist.probs.size(); ++n) {
      ps.x.push_back(static_cast<double>(n));
      ps.y.push_back(dist.probs[n]);
    }
    series.push_back(std::move(ps));
  }
  for (const auto& m : moments) {
    w.row("moments", m.r, m.mean_s, m.var_s, m.mean_a, m.var_a);
  }
  os.close();

  if (!common.svg.empty()) {
    sqbs::write_svg_plot(common.svg, "dark-port photon distribution", "n",
                         "P(n)", series);
  }
  if (worst_rel > 1e-6) {
    std::cerr << "darkport: summed vs analytic moments disagree by " << worst_rel
              << " (relative), above 1e-6\n";
    return kExitTolerance;
  }
  std::cout << "darkport: wrote " << moments.size()
            << " distributions, moment agreement " << sqbs::format_g15(worst_rel)
            << "\n";
  return 0;
}

// ---------------------------------------------------------------- kappa ----

int cmd_kappa(double r_max, int r_steps, std::vector<double> angles,
              const CommonOpts& common) {
  if (r_steps < 2) throw std::invalid_argument("kappa: need at least 2 r steps");
  auto os = open_out(common.out);
  sqbs::CsvWriter w(os);
  w.comment("sqbs kappa version=" + std::string(sqbs::kArtifactVersion));
  w.comment("r_range=[0," + sqbs::format_g15(r_max) +
            "], r_steps=" + std::to_string(r_steps) +
            ", angles=" + list_to_string(angles));
  w.comment("columns: angle,r,kappa_mod,lambda");
  std::vector<sqbs::PlotSeries> series;
  for (double angle : angles) {
    sqbs::PlotSeries ps;
    ps.label = "angle=" + sqbs::format_g15(angle);
    for (int j = 0; j < r_steps; ++j) {
      const double r = r_max * j / (r_steps - 1);
      const auto k = sqbs::kappa(r, angle);
      w.row(angle, r, k.modulus, k.phase);
      ps.x.push_back(r);
      ps.y.push_back(k.modulus);
    }
    series.push_back(std::move(ps));
  }
  os.close();
  if (!common.svg.empty()) {
    sqbs::write_svg_plot(common.svg, "|kappa| vs squeezing factor", "r",
                         "|kappa|", series);
  }
  std::cout << "kappa: wrote " << angles.size() * r_steps << " rows\n";
  return 0;
}

// -------------------------------------------------------------- optimal ----

int cmd_optimal(double ad_min, double ad_max, int points, const CommonOpts& common) {
  if (!(ad_min > 0.0) || !(ad_max > ad_min) || points < 2) {
    throw std::invalid_argument("optimal: need 0 < min < max and points >= 2");
  }
  auto os = open_out(common.out);
  sqbs::CsvWriter w(os);
  w.comment("sqbs optimal version=" + std::string(sqbs::kArtifactVersion));
  w.comment("alpha_delta_sq_range=[" + sqbs::format_g15(ad_min) + "," +
            sqbs::format_g15(ad_max) + "], points=" + std::to_string(points) +
            " (log-spaced)");
  w.comment("columns: alpha_delta_sq,r_opt");
  sqbs::PlotSeries ps;
  ps.label = "r_opt";
  double prev = -1.0;
  bool monotone = true;
  for (int i = 0; i < points; ++i) {
    const double t = static_cast<double>(i) / (points - 1);
    const double a = ad_min * std::pow(ad_max / ad_min, t);
    const double r = sqbs::optimal_r(a);
    w.row(a, r);
    ps.x.push_back(std::log10(a));
    ps.y.push_back(r);
    if (r < prev - 1e-9) monotone = false;
    prev = r;
  }
  os.close();
  if (!common.svg.empty()) {
    sqbs::write_svg_plot(common.svg, "optimal squeezing factor",
                         "log10 |alpha delta|^2", "r_opt", {ps});
  }
  if (!monotone) {
    std::cerr << "optimal: r_opt is not monotone nondecreasing\n";
    return kExitTolerance;
  }
  std::cout << "optimal: wrote " << points << " rows\n";
  return 0;
}

// --------------------------------------------------------- oracle-check ----

int cmd_oracle_check(double alpha_sq, double phi, double r, double theta,
                     double gamma, int cutoff, double tol,
                     const CommonOpts& common) {
  if (alpha_sq < 0.0 || cutoff < 1 || !(tol > 0.0)) {
    throw std::invalid_argument("oracle-check: invalid parameters");
  }
  apply_threads(common);

  const sqbs::CoherentParam alpha(std::sqrt(alpha_sq), phi);
  const sqbs::SqueezeParam zeta(r, theta);
  const auto oracle = sqbs::simulate(alpha, zeta, gamma, cutoff);
  const auto params = sqbs::DistributionParams::make(alpha, zeta, gamma);
  const auto engine = sqbs::full_grid(params, cutoff, cutoff, 1e-8);

  double max_dev = 0.0;
  int worst_n1 = 0, worst_n2 = 0;
  for (int n1 = 0; n1 <= cutoff; ++n1) {
    for (int n2 = 0; n2 <= cutoff; ++n2) {
      const double d = std::fabs(engine.at(n1, n2) - oracle.at(n1, n2));
      if (d > max_dev) {
        max_dev = d;
        worst_n1 = n1;
        worst_n2 = n2;
      }
    }
  }

  if (!common.out.empty()) {
    auto os = open_out(common.out);
    sqbs::CsvWriter w(os);
    w.comment("sqbs oracle-check version=" + std::string(sqbs::kArtifactVersion));
    w.comment("alpha_sq=" + sqbs::format_g15(alpha_sq) +
              ", phi=" + sqbs::format_g15(phi) + ", r=" + sqbs::format_g15(r) +
              ", theta=" + sqbs::format_g15(theta) +
              ", gamma=" + sqbs::format_g15(gamma) +
              ", cutoff=" + std::to_string(cutoff) +
              ", tol=" + sqbs::format_g15(tol));
    w.comment("columns: n1,n2,engine,oracle,abs_deviation");
    for (int n1 = 0; n1 <= cutoff; ++n1) {
      for (int n2 = 0; n2 <= cutoff; ++n2) {
        w.row(n1, n2, engine.at(n1, n2), oracle.at(n1, n2),
              std::fabs(engine.at(n1, n2) - oracle.at(n1, n2)));
      }
    }
  }

  std::cout << "oracle-check: alpha_sq=" << sqbs::format_g15(alpha_sq)
            << " r=" << sqbs::format_g15(r) << " theta=" << sqbs::format_g15(theta)
            << " gamma=" << sqbs::format_g15(gamma) << " cutoff=" << cutoff
            << "\n"
            << "oracle-check: oracle truncation defect "
            << sqbs::format_g15(oracle.truncation_defect) << "\n"
            << "oracle-check: max |engine - oracle| = "
            << sqbs::format_g15(max_dev) << " at (" << worst_n1 << ","
            << worst_n2 << "), tolerance " << sqbs::format_g15(tol) << "\n";
  if (max_dev <= tol) {
    std::cout << "oracle-check: PASS\n";
    return 0;
  }
  std::cout << "oracle-check: FAIL\n";
  return kExitTolerance;
}

std::vector<double> default_r_list() { return {0.0, 0.3, 0.6, 0.9, 1.2, 1.5}; }

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"photon statistics of a beam splitter fed by a coherent state "
               "and a squeezed vacuum"};
  app.require_subcommand(1);
  app.set_config("--config", "", "Read defaults from a key=value file");
  app.set_version_flag("--version", sqbs::kArtifactVersion);

  // disentangle-sweep
  auto* sweep = app.add_subcommand(
      "disentangle-sweep", "Disentangling coefficients over a (gamma, r) grid");
  int gamma_steps = 101, r_steps = 61;
  double sweep_r_max = 1.5;
  CommonOpts sweep_common;
  sweep->add_option("--gamma-steps", gamma_steps, "Grid points along gamma")
      ->capture_default_str();
  sweep->add_option("--r-steps", r_steps, "Grid points along r")
      ->capture_default_str();
  sweep->add_option("--r-max", sweep_r_max, "Largest squeezing factor")
      ->capture_default_str();
  add_common(sweep, &sweep_common, "disentangle_sweep.csv");

  // dist
  auto* dist = app.add_subcommand(
      "dist", "Output-port photon distributions for a squeezed-vacuum input");
  double d_alpha_sq = 20.0, d_gamma = M_PI / 4.0, d_theta = 0.0, d_phi = 0.0;
  std::vector<double> d_r = default_r_list();
  int d_nmax = 0;
  bool d_baseline = false;
  CommonOpts dist_common;
  dist->add_option("--alpha-sq", d_alpha_sq, "|alpha|^2 of the coherent input")
      ->capture_default_str();
  dist->add_option("--gamma", d_gamma, "Beam-splitter angle")->capture_default_str();
  dist->add_option("--r", d_r, "Squeezing factors (list)")->capture_default_str();
  dist->add_option("--theta", d_theta, "Squeezing phase")->capture_default_str();
  dist->add_option("--phi", d_phi, "Coherent phase")->capture_default_str();
  dist->add_option("--n-max", d_nmax, "Grid bound per port (0 = automatic)")
      ->capture_default_str();
  dist->add_flag("--baseline", d_baseline,
                 "Also tabulate the entangling-factor-off baseline");
  add_common(dist, &dist_common, "dist.csv");

  // darkport
  auto* dark = app.add_subcommand("darkport",
                                  "Dark-port distribution and moments");
  double k_ad_sq = 20.0, k_angle = 0.0;
  std::vector<double> k_r = default_r_list();
  int k_nmax = 0;
  CommonOpts dark_common;
  dark->add_option("--alpha-delta-sq", k_ad_sq, "|alpha delta|^2")
      ->capture_default_str();
  dark->add_option("--r", k_r, "Squeezing factors (list)")->capture_default_str();
  dark->add_option("--angle", k_angle, "theta - 2 phi")->capture_default_str();
  dark->add_option("--n-max", k_nmax, "Photon-number bound (0 = automatic)")
      ->capture_default_str();
  add_common(dark, &dark_common, "darkport.csv");

  // kappa
  auto* kap = app.add_subcommand("kappa", "Modulus and phase of kappa(r, angle)");
  double kp_rmax = 1.5;
  int kp_steps = 151;
  std::vector<double> kp_angles = {0.0, M_PI / 4.0, M_PI / 2.0, 3.0 * M_PI / 4.0,
                                   M_PI};
  CommonOpts kappa_common;
  kap->add_option("--r-max", kp_rmax, "Largest squeezing factor")
      ->capture_default_str();
  kap->add_option("--r-steps", kp_steps, "Grid points along r")
      ->capture_default_str();
  kap->add_option("--angles", kp_angles, "Angles theta - 2 phi (list)")
      ->capture_default_str();
  add_common(kap, &kappa_common, "kappa.csv");

  // optimal
  auto* opt = app.add_subcommand("optimal",
                                 "Variance-minimizing squeezing factor");
  double o_min = 1.0, o_max = 1e4;
  int o_points = 50;
  CommonOpts optimal_common;
  opt->add_option("--min", o_min, "Smallest |alpha delta|^2")->capture_default_str();
  opt->add_option("--max", o_max, "Largest |alpha delta|^2")->capture_default_str();
  opt->add_option("--points", o_points, "Log-spaced sample count")
      ->capture_default_str();
  add_common(opt, &optimal_common, "optimal.csv");

  // oracle-check
  auto* chk = app.add_subcommand(
      "oracle-check", "Cross-check the closed-form engine against brute force");
  double c_alpha_sq = 1.0, c_phi = 0.0, c_r = 0.3, c_theta = 0.0,
         c_gamma = M_PI / 8.0, c_tol = 1e-6;
  int c_cutoff = 24;
  CommonOpts check_common;
  chk->add_option("--alpha-sq", c_alpha_sq, "|alpha|^2")->capture_default_str();
  chk->add_option("--phi", c_phi, "Coherent phase")->capture_default_str();
  chk->add_option("--r", c_r, "Squeezing factor")->capture_default_str();
  chk->add_option("--theta", c_theta, "Squeezing phase")->capture_default_str();
  chk->add_option("--gamma", c_gamma, "Beam-splitter angle")->capture_default_str();
  chk->add_option("--cutoff", c_cutoff, "Fock cutoff per mode")
      ->capture_default_str();
  chk->add_option("--tol", c_tol, "Max allowed per-bin deviation")
      ->capture_default_str();
  check_common.out.clear();
  chk->add_option("--out", check_common.out, "Optional per-bin deviation CSV");
  chk->add_option("--norm-tol", check_common.norm_tol, "(unused, accepted)");
  chk->add_option("--threads", check_common.threads, "Worker threads")
      ->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitValidation;
  }

  try {
    if (sweep->parsed()) {
      return cmd_disentangle_sweep(gamma_steps, r_steps, sweep_r_max, sweep_common);
    }
    if (dist->parsed()) {
      return cmd_dist(d_alpha_sq, d_gamma, d_r, d_theta, d_phi, d_nmax,
                      d_baseline, dist_common);
    }
    if (dark->parsed()) {
      return cmd_darkport(k_ad_sq, k_r, k_angle, k_nmax, dark_common);
    }
    if (kap->parsed()) {
      return cmd_kappa(kp_rmax, kp_steps, kp_angles, kappa_common);
    }
    if (opt->parsed()) {
      return cmd_optimal(o_min, o_max, o_points, optimal_common);
    }
    if (chk->parsed()) {
      return cmd_oracle_check(c_alpha_sq, c_phi, c_r, c_theta, c_gamma, c_cutoff,
                              c_tol, check_common);
    }
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitValidation;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitTolerance;
  }
  return 0;
}
