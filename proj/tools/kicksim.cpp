// kicksim: delta-kicked cold-atom simulator.
//
// Subcommands: tau-scan, distribution, reproduce, stationary.
// Exit codes: 0 success, 2 usage error, 3 numerical failure.

#include <cstdio>
#include <exception>
#include <string>

#include <CLI11.hpp>

#include "kicksim/analytic.hpp"
#include "kicksim/constants.hpp"
#include "kicksim/errors.hpp"
#include "kicksim/io.hpp"
#include "kicksim/scan.hpp"

namespace {

using namespace kicksim;

struct GlobalFlags {
  std::string config_path;
  std::uint64_t seed = 0;
  long atoms = 0;
  int threads = 0;
  std::string out_dir = ".";
  bool seed_set = false;
  bool atoms_set = false;
};

Settings load_settings(const GlobalFlags& g) {
  Settings s;
  if (!g.config_path.empty()) s = apply_config(read_config_file(g.config_path));
  if (g.seed_set) s.params.seed = g.seed;
  if (g.atoms_set) s.params.n_atoms = g.atoms;
  return s;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"delta-kicked cold-atom simulator"};
  app.require_subcommand(1);

  GlobalFlags g;
  app.add_option("--config", g.config_path, "flat key = value parameter file");
  auto* seed_opt = app.add_option("--seed", g.seed, "master RNG seed");
  auto* atoms_opt = app.add_option("--atoms", g.atoms, "ensemble size");
  app.add_option("--threads", g.threads, "worker threads (0 = all cores)");
  app.add_option("--out-dir", g.out_dir, "output directory");

  // tau-scan
  auto* scan_cmd = app.add_subcommand("tau-scan", "mean energy vs kicking period");
  double scan_lo = 0.19 * constants::pi;
  double scan_hi = 6.31 * constants::pi;
  int scan_steps = 100;
  scan_cmd->add_option("--lo", scan_lo, "first tau");
  scan_cmd->add_option("--hi", scan_hi, "last tau");
  scan_cmd->add_option("--steps", scan_steps, "scan nodes");

  // distribution
  auto* dist_cmd = app.add_subcommand("distribution", "momentum distribution at fixed parameters");
  std::vector<int> record_at;
  std::string dump_state_path;
  double dump_p0 = 0.0;
  dist_cmd->add_option("--record", record_at, "kick indices to record histograms at");
  dist_cmd->add_option("--dump-state", dump_state_path,
                       "CSV dump of a single coherently evolved Bloch state");
  dist_cmd->add_option("--dump-p0", dump_p0, "initial momentum for --dump-state");

  // reproduce
  auto* repro_cmd = app.add_subcommand("reproduce", "canned experiment recipes");
  std::string figure_id;
  repro_cmd->add_option("figure", figure_id, "fig1a | fig1b | fig2a | fig2b")->required();

  // stationary
  auto* stat_cmd = app.add_subcommand("stationary", "analytic asymptotic distribution");
  double stat_phi_d = 0.8 * constants::pi;
  int stat_range = 60;
  int stat_nodes = 512;
  double stat_fwhm = 0.0;
  stat_cmd->add_option("--phi-d", stat_phi_d, "kick strength");
  stat_cmd->add_option("--n-range", stat_range, "report P_s on |n| <= n_range");
  stat_cmd->add_option("--nodes", stat_nodes, "quadrature nodes per axis");
  stat_cmd->add_option("--fwhm", stat_fwhm, "gaussian h FWHM; 0 = delta h");

  // overridable model flags shared by tau-scan and distribution
  double flag_tau = -1.0, flag_phi_d = -1.0, flag_nse = -1.0;
  int flag_kicks = -1, flag_nmax = -1;
  double flag_fwhm = -1.0;
  double win_min = 0.0, win_max = 0.0, win_threshold = -1.0;
  bool win_renormalize = false;
  for (auto* cmd : {scan_cmd, dist_cmd}) {
    cmd->add_option("--tau", flag_tau, "kicking period");
    cmd->add_option("--phi-d", flag_phi_d, "kick strength");
    cmd->add_option("--n-kicks", flag_kicks, "number of kicks");
    cmd->add_option("--n-se-mean", flag_nse, "mean SE events per kick");
    cmd->add_option("--n-max", flag_nmax, "ladder half-width (0 = auto)");
    cmd->add_option("--fwhm", flag_fwhm, "initial momentum FWHM [hbar G]");
    cmd->add_option("--window-min", win_min, "detection window lower edge");
    cmd->add_option("--window-max", win_max, "detection window upper edge");
    cmd->add_option("--threshold", win_threshold, "detection signal threshold");
    cmd->add_flag("--renormalize", win_renormalize, "renormalize after cuts");
  }

  CLI11_PARSE(app, argc, argv);
  g.seed_set = seed_opt->count() > 0;
  g.atoms_set = atoms_opt->count() > 0;

  try {
    Settings s = load_settings(g);
    if (flag_tau >= 0.0) s.params.tau = flag_tau;
    if (flag_phi_d >= 0.0) s.params.phi_d = flag_phi_d;
    if (flag_kicks >= 0) s.params.n_kicks = flag_kicks;
    if (flag_nse >= 0.0) {
      s.params.n_se_mean = flag_nse;
      s.se.n_se_mean = flag_nse;
    }
    if (flag_nmax >= 0) s.params.n_max = flag_nmax;
    if (flag_fwhm >= 0.0) {
      s.params.initial_fwhm = flag_fwhm;
      s.dist.fwhm = flag_fwhm;
    }
    if (scan_cmd->count("--window-min") || dist_cmd->count("--window-min"))
      s.window.p_min = win_min;
    if (scan_cmd->count("--window-max") || dist_cmd->count("--window-max"))
      s.window.p_max = win_max;
    if (win_threshold >= 0.0) s.window.threshold = win_threshold;
    if (win_renormalize) s.window.renormalize = true;

    CmdOptions cmd_opts;
    cmd_opts.out_dir = g.out_dir;
    cmd_opts.run.threads = g.threads;

    if (*scan_cmd) {
      ScanSpec spec;
      spec.param = ScanParam::tau;
      spec.lo = scan_lo;
      spec.hi = scan_hi;
      spec.steps = scan_steps;
      spec.base = s.params;
      cmd_tau_scan(spec, s.dist, s.se, s.window, cmd_opts);
    } else if (*dist_cmd) {
      cmd_opts.run.record_hist_at = record_at;
      cmd_distribution(s.params, s.dist, s.se, s.window, cmd_opts, dump_state_path,
                       dump_p0);
    } else if (*repro_cmd) {
      cmd_reproduce(figure_id, s.params.seed, g.atoms_set ? g.atoms : 0, cmd_opts);
    } else if (*stat_cmd) {
      QuadratureSpec qspec;
      qspec.nodes_xi = stat_nodes;
      qspec.nodes_alpha = stat_nodes;
      const InitialDistribution h = stat_fwhm > 0.0
                                        ? InitialDistribution::gaussian(stat_fwhm)
                                        : InitialDistribution::delta(0.0);
      cmd_stationary(stat_phi_d, h, stat_range, qspec, cmd_opts);
    }
  } catch (const ValidationError& e) {
    std::fprintf(stderr, "usage error: %s\n", e.what());
    return 2;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "numerical failure: %s\n", e.what());
    return 3;
  }
  return 0;
}
