#include "kicksim/bloch.hpp"

#include <fftw3.h>

#include <cmath>
#include <cstdio>
#include <limits>
#include <memory>
#include <mutex>
#include <ostream>
#include <string>
#include <unordered_map>

#include "kicksim/constants.hpp"
#include "kicksim/errors.hpp"

namespace kicksim {

namespace {
// FFTW planning is not thread-safe; execution on distinct buffers is.
std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}
}  // namespace

BlochState BlochState::plane_wave(int n_max, double p0) {
  if (n_max < 1) throw ValidationError("n_max must be >= 1");
  const double f = std::floor(p0);
  const int n0 = static_cast<int>(f);
  if (std::abs(n0) > n_max)
    throw ValidationError("plane_wave: |floor(p0)| exceeds n_max");
  BlochState s;
  s.beta = p0 - f;
  s.n_max = n_max;
  s.amplitudes.assign(2 * n_max + 1, {0.0, 0.0});
  s.at(n0) = {1.0, 0.0};
  return s;
}

double BlochState::norm_squared() const {
  double s = 0.0;
  for (const auto& c : amplitudes) s += std::norm(c);
  return s;
}

double BlochState::edge_occupation() const {
  return std::norm(amplitudes.front()) + std::norm(amplitudes.back());
}

struct KickOperator::Impl {
  int n_max;
  int len;
  fftw_complex* buf;
  fftw_plan to_angle;     // momentum -> angle, exponent +i
  fftw_plan to_momentum;  // angle -> momentum, exponent -i
  std::vector<double> cos_x;
  double cached_phi = std::numeric_limits<double>::quiet_NaN();
  std::vector<std::complex<double>> kick_phase;

  explicit Impl(int n_max_in) : n_max(n_max_in), len(2 * n_max_in + 1) {
    buf = fftw_alloc_complex(static_cast<std::size_t>(len));
    {
      std::lock_guard<std::mutex> lock(planner_mutex());
      // FFTW_ESTIMATE: plan choice must not depend on runtime timing, or
      // bitwise reproducibility across runs would be lost.
      to_angle = fftw_plan_dft_1d(len, buf, buf, FFTW_BACKWARD, FFTW_ESTIMATE);
      to_momentum = fftw_plan_dft_1d(len, buf, buf, FFTW_FORWARD, FFTW_ESTIMATE);
    }
    cos_x.resize(len);
    for (int j = 0; j < len; ++j)
      cos_x[j] = std::cos(2.0 * constants::pi * j / len);
    kick_phase.resize(len);
  }

  ~Impl() {
    std::lock_guard<std::mutex> lock(planner_mutex());
    fftw_destroy_plan(to_angle);
    fftw_destroy_plan(to_momentum);
    fftw_free(buf);
  }

  void set_strength(double phi_d) {
    if (phi_d == cached_phi) return;
    for (int j = 0; j < len; ++j)
      kick_phase[j] = std::polar(1.0, -phi_d * cos_x[j]);
    cached_phi = phi_d;
  }
};

KickOperator::KickOperator(int n_max) {
  if (n_max < 1) throw ValidationError("n_max must be >= 1");
  impl_ = new Impl(n_max);
}

KickOperator::~KickOperator() { delete impl_; }

int KickOperator::n_max() const { return impl_->n_max; }

void KickOperator::apply(BlochState& state, double phi_d) {
  if (phi_d == 0.0) return;
  if (state.n_max != impl_->n_max)
    throw ValidationError("KickOperator ladder size mismatch");
  const int len = impl_->len;
  const int n_max = impl_->n_max;
  impl_->set_strength(phi_d);

  // Momentum slot m = n mod len, so exp(+2 pi i m j / len) = exp(i n x_j)
  // on the angle grid x_j = 2 pi j / len.
  auto* buf = reinterpret_cast<std::complex<double>*>(impl_->buf);
  for (int n = 0; n <= n_max; ++n) buf[n] = state.at(n);
  for (int n = -n_max; n < 0; ++n) buf[n + len] = state.at(n);

  fftw_execute(impl_->to_angle);
  for (int j = 0; j < len; ++j) buf[j] *= impl_->kick_phase[j];
  fftw_execute(impl_->to_momentum);

  const double scale = 1.0 / len;
  for (int n = 0; n <= n_max; ++n) state.at(n) = buf[n] * scale;
  for (int n = -n_max; n < 0; ++n) state.at(n) = buf[n + len] * scale;

  const double edge = state.edge_occupation();
  if (edge > kEdgeOccupationLimit)
    throw LadderOverflowError("kick: edge occupation " + std::to_string(edge) +
                              " at n_max " + std::to_string(n_max));
}

void kick(BlochState& state, double phi_d) {
  if (phi_d == 0.0) return;
  thread_local std::unordered_map<int, std::unique_ptr<KickOperator>> cache;
  auto& op = cache[state.n_max];
  if (!op) op = std::make_unique<KickOperator>(state.n_max);
  op->apply(state, phi_d);
}

void free_evolve(BlochState& state, double tau) {
  if (tau == 0.0) return;
  for (int n = -state.n_max; n <= state.n_max; ++n) {
    const double p = n + state.beta;
    state.at(n) *= std::polar(1.0, -0.5 * tau * p * p);
  }
}

void FreeEvolver::apply(BlochState& state, double tau) {
  if (tau == 0.0) return;
  if (tau != tau_ || state.beta != beta_ ||
      phase_.size() != state.amplitudes.size()) {
    tau_ = tau;
    beta_ = state.beta;
    phase_.resize(state.amplitudes.size());
    for (int n = -state.n_max; n <= state.n_max; ++n) {
      const double p = n + state.beta;
      phase_[state.index_of(n)] = std::polar(1.0, -0.5 * tau * p * p);
    }
  }
  for (std::size_t i = 0; i < phase_.size(); ++i) state.amplitudes[i] *= phase_[i];
}

void step(BlochState& state, double phi_d, double tau) {
  kick(state, phi_d);
  free_evolve(state, tau);
}

double energy(const BlochState& state) {
  double e = 0.0;
  for (int n = -state.n_max; n <= state.n_max; ++n) {
    const double p = n + state.beta;
    e += p * p * std::norm(state.at(n));
  }
  return 0.5 * e;
}

std::vector<double> momentum_distribution(const BlochState& state) {
  std::vector<double> d(state.amplitudes.size());
  for (std::size_t i = 0; i < d.size(); ++i) d[i] = std::norm(state.amplitudes[i]);
  return d;
}

void dump_state_csv(const BlochState& state, std::ostream& os) {
  os << "n,re,im\n";
  char line[80];
  for (int n = -state.n_max; n <= state.n_max; ++n) {
    const auto& c = state.at(n);
    std::snprintf(line, sizeof(line), "%d,%.17g,%.17g\n", n, c.real(), c.imag());
    os << line;
  }
}

}  // namespace kicksim
