#pragma once

#include <string>
#include <vector>

#include "kicksim/analytic.hpp"
#include "kicksim/detection.hpp"
#include "kicksim/ensemble.hpp"
#include "kicksim/io.hpp"

namespace kicksim {

enum class ScanParam { tau, phi_d, n_se_mean, n_kicks };

/// One-parameter sweep at otherwise fixed settings. Each node gets a fresh
/// master seed derived from (seed, node index), so nodes are statistically
/// independent yet reproducible.
struct ScanSpec {
  ScanParam param = ScanParam::tau;
  double lo = 0.0;
  double hi = 1.0;
  int steps = 2;
  DimensionlessParams base;

  void validate() const;  ///< lo < hi, steps >= 2
};

struct ScanRow {
  double value = 0.0;
  double e_true = 0.0;
  double e_meas = 0.0;
  double e_stderr = 0.0;
  bool ok = false;
  std::string error;
};

std::vector<ScanRow> run_scan(const ScanSpec& spec, const InitialDistribution& dist,
                              const SEModel& se, const DetectionWindow& window,
                              const RunOptions& opts = {});

struct CmdOptions {
  std::string out_dir = ".";
  RunOptions run;
};

/// tau-scan subcommand: scan.csv (tau, e_true, e_meas, e_stderr, status)
/// plus metadata.json.
void cmd_tau_scan(const ScanSpec& spec, const InitialDistribution& dist,
                  const SEModel& se, const DetectionWindow& window,
                  const CmdOptions& cmd);

/// distribution subcommand: histogram.csv and energy.csv at fixed
/// parameters, an analytic stationary.csv overlay when tau is resonant,
/// and optionally a single-state debug dump.
void cmd_distribution(const DimensionlessParams& params, const InitialDistribution& dist,
                      const SEModel& se, const DetectionWindow& window,
                      const CmdOptions& cmd, const std::string& dump_state_path = {},
                      double dump_p0 = 0.0);

/// reproduce subcommand: canned recipes fig1a, fig1b, fig2a, fig2b with the
/// published operating point (phi_d = 0.8 pi, N = 30, FWHM 6, window
/// [-60, 60]). Writes a bundle directory with data, metadata, and a
/// pass/fail summary. Unknown ids are a usage error (ValidationError).
void cmd_reproduce(const std::string& figure_id, std::uint64_t seed, long n_atoms,
                   const CmdOptions& cmd);

/// stationary subcommand: analytic-only P_s as CSV plus a JSON sidecar
/// describing the quadrature.
void cmd_stationary(double phi_d, const InitialDistribution& h, int n_range,
                    const QuadratureSpec& spec, const CmdOptions& cmd);

}  // namespace kicksim
