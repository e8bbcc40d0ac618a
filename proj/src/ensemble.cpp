#include "kicksim/ensemble.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <thread>

#include "kicksim/errors.hpp"

namespace kicksim {

double sample_atom(RandomStream& rng, const InitialDistribution& dist) {
  return dist.sample(rng);
}

namespace {

// Adds one state's coarse-grained probabilities into a dense bin buffer
// covering [-bins_half, bins_half]. With beta in [0, 1), component n lands
// in bin n when beta < 1/2 and bin n+1 otherwise.
void accumulate_coarse(const BlochState& state, std::vector<double>& bins,
                       int bins_half) {
  const int shift = state.beta < 0.5 ? 0 : 1;
  for (int n = -state.n_max; n <= state.n_max; ++n) {
    const double w = std::norm(state.at(n));
    if (w == 0.0) continue;
    const int b = n + shift;
    bins[b + bins_half] += w;
  }
}

}  // namespace

MomentumHistogram coarse_grain(const BlochState& state) {
  const int bins_half = state.n_max + 1;
  std::vector<double> bins(2 * bins_half + 1, 0.0);
  accumulate_coarse(state, bins, bins_half);
  MomentumHistogram h;
  h.n_min = -bins_half;
  h.prob = std::move(bins);
  h.n_atoms = 1;
  return h;
}

AtomObservables evolve_atom(double p0, const DimensionlessParams& params,
                            const SEModel& se, RandomStream& rng,
                            const std::vector<int>& record_at) {
  const int n_kicks = params.n_kicks;
  const int bins_half = params.n_max + 1;

  AtomObservables obs;
  obs.bins_half = bins_half;
  obs.energies.resize(n_kicks + 1);
  obs.snapshots.assign(record_at.size(), {});

  BlochState state = BlochState::plane_wave(params.n_max, p0);
  FreeEvolver free_prop;

  const auto record = [&](int kick_index) {
    obs.energies[kick_index] = energy(state);
    for (std::size_t i = 0; i < record_at.size(); ++i) {
      if (record_at[i] != kick_index) continue;
      obs.snapshots[i].assign(2 * bins_half + 1, 0.0);
      accumulate_coarse(state, obs.snapshots[i], bins_half);
    }
  };

  record(0);
  for (int k = 1; k <= n_kicks; ++k) {
    kick(state, params.phi_d);
    decohere_between_kicks(state, se, rng);
    free_prop.apply(state, params.tau);
    record(k);
  }
  return obs;
}

int effective_n_max(const DimensionlessParams& params, const InitialDistribution& dist) {
  if (params.n_max > 0) return params.n_max;
  return std::max(1, required_n_max(dist.max_abs_momentum(), params.n_kicks,
                                    params.phi_d));
}

std::string parameter_fingerprint(const DimensionlessParams& params,
                                  const InitialDistribution& dist, const SEModel& se) {
  char buf[512];
  const char* dist_name = dist.kind == InitialDistribution::Kind::gaussian ? "gaussian"
                          : dist.kind == InitialDistribution::Kind::delta  ? "delta"
                                                                           : "table";
  std::snprintf(buf, sizeof(buf),
                "tau=%.17g phi_d=%.17g n_kicks=%d n_se_mean=%.17g recoil=%s "
                "n_max=%d n_atoms=%ld seed=%llu dist=%s fwhm=%.17g center=%.17g",
                params.tau, params.phi_d, params.n_kicks, se.n_se_mean,
                se.recoil_law == RecoilLaw::uniform ? "uniform" : "two_point",
                params.n_max, params.n_atoms,
                static_cast<unsigned long long>(params.seed), dist_name, dist.fwhm,
                dist.center);
  return buf;
}

EnsembleResult run_ensemble(const DimensionlessParams& params_in,
                            const InitialDistribution& dist, const SEModel& se,
                            const RunOptions& opts) {
  const auto t0 = std::chrono::steady_clock::now();

  DimensionlessParams params = params_in;
  params.n_max = effective_n_max(params_in, dist);
  params.validate();
  dist.validate();
  se.validate();

  const int needed = required_n_max(dist.max_abs_momentum(), params.n_kicks,
                                    params.phi_d);
  if (params.n_max < needed)
    throw ValidationError("n_max " + std::to_string(params.n_max) +
                          " below ballistic headroom requirement " +
                          std::to_string(needed));

  std::vector<int> record_at = opts.record_hist_at;
  if (record_at.empty()) record_at = {params.n_kicks};
  std::sort(record_at.begin(), record_at.end());
  record_at.erase(std::unique(record_at.begin(), record_at.end()), record_at.end());
  for (int k : record_at)
    if (k < 0 || k > params.n_kicks)
      throw ValidationError("record_hist_at index outside [0, n_kicks]");

  const long n_atoms = params.n_atoms;
  const int n_kicks = params.n_kicks;
  const int bins_half = params.n_max + 1;
  const int n_bins = 2 * bins_half + 1;
  const int chunk = std::max(1, opts.chunk_atoms);
  const long n_chunks = (n_atoms + chunk - 1) / chunk;

  struct ChunkAccum {
    std::vector<std::vector<double>> hist;  // per recorded kick
    std::vector<double> e_sum, e2_sum;
    long failed = 0;
    bool used = false;
  };
  std::vector<ChunkAccum> accums(static_cast<std::size_t>(n_chunks));

  std::atomic<long> next_chunk{0};
  const auto worker = [&]() {
    for (;;) {
      const long c = next_chunk.fetch_add(1);
      if (c >= n_chunks) return;
      ChunkAccum& acc = accums[static_cast<std::size_t>(c)];
      acc.hist.assign(record_at.size(), std::vector<double>(n_bins, 0.0));
      acc.e_sum.assign(n_kicks + 1, 0.0);
      acc.e2_sum.assign(n_kicks + 1, 0.0);
      acc.used = true;

      const long lo = c * chunk;
      const long hi = std::min(n_atoms, lo + chunk);
      for (long atom = lo; atom < hi; ++atom) {
        RandomStream rng(derive_seed(params.seed, kAtomStreamTag,
                                     static_cast<std::uint64_t>(atom)));
        const double p0 = sample_atom(rng, dist);
        try {
          const AtomObservables obs = evolve_atom(p0, params, se, rng, record_at);
          for (int k = 0; k <= n_kicks; ++k) {
            acc.e_sum[k] += obs.energies[k];
            acc.e2_sum[k] += obs.energies[k] * obs.energies[k];
          }
          for (std::size_t i = 0; i < record_at.size(); ++i)
            for (int b = 0; b < n_bins; ++b) acc.hist[i][b] += obs.snapshots[i][b];
        } catch (const LadderOverflowError&) {
          ++acc.failed;
        } catch (const ValidationError&) {
          // initial sample outside the ladder; counted like an overflow
          ++acc.failed;
        }
      }
    }
  };

  int n_threads = opts.threads > 0
                      ? opts.threads
                      : static_cast<int>(std::thread::hardware_concurrency());
  if (n_threads < 1) n_threads = 1;
  n_threads = static_cast<int>(std::min<long>(n_threads, n_chunks));
  if (n_threads <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(n_threads));
    for (int t = 0; t < n_threads; ++t) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }

  // Fixed-order reduction: bitwise identical results for any thread count.
  EnsembleResult result;
  result.seed = params.seed;
  result.n_atoms = n_atoms;
  result.fingerprint = parameter_fingerprint(params, dist, se);
  result.energy.assign(n_kicks + 1, 0.0);
  result.energy_stderr.assign(n_kicks + 1, 0.0);
  std::vector<double> e2(n_kicks + 1, 0.0);
  std::vector<std::vector<double>> hist(record_at.size(),
                                        std::vector<double>(n_bins, 0.0));
  long failed = 0;
  for (const ChunkAccum& acc : accums) {
    if (!acc.used) continue;
    failed += acc.failed;
    for (int k = 0; k <= n_kicks; ++k) {
      result.energy[k] += acc.e_sum[k];
      e2[k] += acc.e2_sum[k];
    }
    for (std::size_t i = 0; i < record_at.size(); ++i)
      for (int b = 0; b < n_bins; ++b) hist[i][b] += acc.hist[i][b];
  }

  result.n_failed = failed;
  if (failed * 1000 > n_atoms)
    throw LadderOverflowError(std::to_string(failed) + " of " +
                              std::to_string(n_atoms) +
                              " atoms overflowed the ladder (> 0.1%)");
  const long n_ok = n_atoms - failed;
  if (n_ok < 1) throw LadderOverflowError("no atoms survived");

  for (int k = 0; k <= n_kicks; ++k) {
    const double mean = result.energy[k] / n_ok;
    result.energy[k] = mean;
    if (n_ok > 1) {
      const double var = std::max(0.0, (e2[k] - n_ok * mean * mean) / (n_ok - 1));
      result.energy_stderr[k] = std::sqrt(var / n_ok);
    }
  }

  result.hist_kicks = record_at;
  result.histograms.reserve(record_at.size());
  for (std::size_t i = 0; i < record_at.size(); ++i) {
    MomentumHistogram h;
    h.n_min = -bins_half;
    h.prob = std::move(hist[i]);
    for (double& v : h.prob) v /= n_ok;
    h.kick_index = record_at[i];
    h.n_atoms = n_ok;
    h.fingerprint = result.fingerprint;
    result.histograms.push_back(std::move(h));
  }

  result.wall_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return result;
}

}  // namespace kicksim
