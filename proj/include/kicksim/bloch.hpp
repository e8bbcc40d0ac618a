#pragma once

#include <complex>
#include <iosfwd>
#include <vector>

namespace kicksim {

/// One Bloch component of the kicked atom: complex amplitudes c_n on the
/// truncated integer momentum ladder n in [-n_max, n_max] at fixed
/// quasimomentum beta in [0, 1). Physical momentum of component n is
/// p = n + beta.
///
/// Operations keep sum |c_n|^2 = 1 to 1e-10 and never touch beta; the kick
/// and recoil operations throw LadderOverflowError when significant
/// amplitude reaches the truncation edge.
struct BlochState {
  double beta = 0.0;
  int n_max = 0;
  std::vector<std::complex<double>> amplitudes;  ///< index i holds n = i - n_max

  static BlochState plane_wave(int n_max, double p0);

  int index_of(int n) const { return n + n_max; }
  std::complex<double>& at(int n) { return amplitudes[index_of(n)]; }
  const std::complex<double>& at(int n) const { return amplitudes[index_of(n)]; }
  int ladder_size() const { return 2 * n_max + 1; }

  double norm_squared() const;
  /// |c_{-n_max}|^2 + |c_{+n_max}|^2, the truncation health indicator.
  double edge_occupation() const;
};

/// Kick phase operator exp(-i phi_d cos x) applied spectrally: DFT of
/// length 2 n_max + 1 to the angle grid, pointwise phase, inverse DFT.
/// Owns the FFTW plans for one ladder size; not shareable across threads.
class KickOperator {
 public:
  explicit KickOperator(int n_max);
  ~KickOperator();
  KickOperator(const KickOperator&) = delete;
  KickOperator& operator=(const KickOperator&) = delete;

  /// Applies the kick in place. Throws LadderOverflowError if the edge
  /// occupation exceeds 1e-8 afterwards.
  void apply(BlochState& state, double phi_d);

  int n_max() const;

 private:
  struct Impl;
  Impl* impl_;
};

/// Convenience kick using a per-thread KickOperator cache keyed on ladder
/// size. phi_d = 0 is an exact identity.
void kick(BlochState& state, double phi_d);

/// Free propagation over one period: c_n *= exp(-i tau (n + beta)^2 / 2).
void free_evolve(BlochState& state, double tau);

/// Cached free-propagation phases for a fixed (tau, beta); rebuilt only
/// when either changes (spontaneous emission shifts beta mid-run).
class FreeEvolver {
 public:
  void apply(BlochState& state, double tau);

 private:
  double tau_ = -1.0;
  double beta_ = -1.0;
  std::vector<std::complex<double>> phase_;
};

/// One kicking period: kick, then free propagation.
void step(BlochState& state, double phi_d, double tau);

/// Mean kinetic energy sum (n + beta)^2 |c_n|^2 / 2.
double energy(const BlochState& state);

/// |c_n|^2 over the ladder, front() holding n = -n_max.
std::vector<double> momentum_distribution(const BlochState& state);

/// Debug dump, one "n,re,im" row per ladder site.
void dump_state_csv(const BlochState& state, std::ostream& os);

/// Edge-occupation threshold shared by kick and recoil overflow checks.
inline constexpr double kEdgeOccupationLimit = 1e-8;

}  // namespace kicksim
