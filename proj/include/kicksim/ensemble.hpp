#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "kicksim/bloch.hpp"
#include "kicksim/decoherence.hpp"
#include "kicksim/histogram.hpp"
#include "kicksim/initial.hpp"
#include "kicksim/params.hpp"
#include "kicksim/rng.hpp"

namespace kicksim {

/// Draw one initial momentum from the thermal distribution.
double sample_atom(RandomStream& rng, const InitialDistribution& dist);

/// Unit-bin coarse-graining of one Bloch state in total momentum p = n + beta.
MomentumHistogram coarse_grain(const BlochState& state);

/// Per-atom observables from evolve_atom. Snapshots are probability-per-bin
/// arrays over bins [-bins_half, bins_half], aligned with the record_at list.
struct AtomObservables {
  std::vector<double> energies;  ///< exact second-moment energies, kick 0..N
  std::vector<std::vector<double>> snapshots;
  int bins_half = 0;
};

/// Evolves one atom from the plane wave at p0 through N periods of
/// {kick; spontaneous emission; free propagation}. The RNG stream must be
/// the atom's own; the initial momentum must already have been drawn from
/// it so paired runs with different SE settings share their atoms.
/// Throws LadderOverflowError when truncation health fails.
AtomObservables evolve_atom(double p0, const DimensionlessParams& params,
                            const SEModel& se, RandomStream& rng,
                            const std::vector<int>& record_at);

struct RunOptions {
  std::vector<int> record_hist_at;  ///< kick indices; empty = final kick only
  int threads = 0;                  ///< 0 = hardware concurrency
  int chunk_atoms = 256;            ///< fixed reduction unit (not a tuning knob:
                                    ///< changing it changes summation order)
};

struct EnsembleResult {
  std::vector<int> hist_kicks;
  std::vector<MomentumHistogram> histograms;
  std::vector<double> energy;         ///< mean energy at kick 0..N
  std::vector<double> energy_stderr;  ///< Monte Carlo standard errors
  std::uint64_t seed = 0;
  long n_atoms = 0;
  long n_failed = 0;
  std::string fingerprint;
  double wall_seconds = 0.0;
};

/// Monte Carlo average over n_atoms independent atoms. Deterministic for a
/// fixed master seed regardless of thread count: per-atom streams are
/// derived from (seed, atom index) and results are reduced in fixed chunk
/// order. Runs where more than 0.1% of atoms overflow the ladder fail.
EnsembleResult run_ensemble(const DimensionlessParams& params,
                            const InitialDistribution& dist, const SEModel& se,
                            const RunOptions& opts = {});

/// Ladder half-width actually used by run_ensemble: the explicit n_max, or
/// the ballistic headroom rule applied to the distribution's reach.
int effective_n_max(const DimensionlessParams& params, const InitialDistribution& dist);

/// One-line parameter fingerprint embedded in every output file.
std::string parameter_fingerprint(const DimensionlessParams& params,
                                  const InitialDistribution& dist, const SEModel& se);

}  // namespace kicksim
