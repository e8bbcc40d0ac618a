#include "kicksim/initial.hpp"

#include <algorithm>
#include <cmath>

#include "kicksim/errors.hpp"
#include "kicksim/histogram.hpp"

namespace kicksim {

namespace {
constexpr double kFwhmToSigma = 2.354820045030949;  // 2 sqrt(2 ln 2)
}

InitialDistribution InitialDistribution::custom(
    std::vector<std::pair<int, double>> table) {
  InitialDistribution d;
  d.kind = Kind::custom_table;
  d.table = std::move(table);
  double total = 0.0;
  for (auto& [n, w] : d.table) {
    if (w < 0.0) throw ValidationError("custom table weights must be >= 0");
    total += w;
  }
  if (total <= 0.0) throw ValidationError("custom table must have positive mass");
  for (auto& [n, w] : d.table) w /= total;
  return d;
}

double InitialDistribution::sigma() const { return fwhm / kFwhmToSigma; }

void InitialDistribution::validate() const {
  switch (kind) {
    case Kind::gaussian:
      if (!(fwhm > 0.0)) throw ValidationError("gaussian fwhm must be > 0");
      break;
    case Kind::delta:
      break;
    case Kind::custom_table:
      if (table.empty()) throw ValidationError("custom table is empty");
      break;
  }
}

double InitialDistribution::sample(RandomStream& rng) const {
  switch (kind) {
    case Kind::delta:
      return center;
    case Kind::gaussian:
      return center + sigma() * rng.normal();
    case Kind::custom_table: {
      double u = rng.uniform();
      for (const auto& [n, w] : table) {
        if (u < w) return static_cast<double>(n) + rng.uniform();
        u -= w;
      }
      // u landed in the roundoff sliver past the last bin
      return static_cast<double>(table.back().first) + rng.uniform();
    }
  }
  return center;
}

double InitialDistribution::bin_mass(int n) const {
  switch (kind) {
    case Kind::delta:
      return momentum_bin(center) == n ? 1.0 : 0.0;
    case Kind::gaussian: {
      const double s = sigma();
      const double lo = (n - 0.5 - center) / (s * std::sqrt(2.0));
      const double hi = (n + 0.5 - center) / (s * std::sqrt(2.0));
      return 0.5 * (std::erf(hi) - std::erf(lo));
    }
    case Kind::custom_table: {
      for (const auto& [m, w] : table)
        if (m == n) return w;
      return 0.0;
    }
  }
  return 0.0;
}

int InitialDistribution::support_half_width() const {
  switch (kind) {
    case Kind::delta:
      return static_cast<int>(std::ceil(std::abs(center))) + 1;
    case Kind::gaussian:
      return static_cast<int>(std::ceil(std::abs(center) + 8.0 * sigma())) + 1;
    case Kind::custom_table: {
      int w = 0;
      for (const auto& [n, weight] : table) w = std::max(w, std::abs(n) + 1);
      return w;
    }
  }
  return 1;
}

double InitialDistribution::max_abs_momentum() const {
  switch (kind) {
    case Kind::delta:
      return std::abs(center);
    case Kind::gaussian:
      return std::abs(center) + 6.0 * sigma();
    case Kind::custom_table: {
      double m = 0.0;
      for (const auto& [n, w] : table)
        m = std::max(m, std::abs(static_cast<double>(n)) + 1.0);
      return m;
    }
  }
  return std::abs(center);
}

}  // namespace kicksim
