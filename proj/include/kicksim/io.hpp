#pragma once

#include <iosfwd>
#include <map>
#include <string>

#include "kicksim/detection.hpp"
#include "kicksim/ensemble.hpp"

namespace kicksim {

/// Everything a run needs, as assembled from config file plus flag overrides.
struct Settings {
  DimensionlessParams params;
  InitialDistribution dist;
  SEModel se;
  DetectionWindow window;
};

/// Flat key = value file; '#' starts a comment, blank lines ignored.
std::map<std::string, std::string> parse_flat_config(std::istream& in);
std::map<std::string, std::string> read_config_file(const std::string& path);

/// Builds Settings from config entries. Physical keys (SI units) are
/// converted through to_dimensionless first; dimensionless keys override
/// the converted values. Unknown keys are an error.
Settings apply_config(const std::map<std::string, std::string>& kv);

/// CSV emitters. All floats are written with %.17g so reruns are
/// byte-identical; every file carries the fingerprint and seed as comment
/// lines.
void write_histograms_csv(const std::string& path, const EnsembleResult& r);
void write_energy_csv(const std::string& path, const EnsembleResult& r);
void write_histogram_csv(const std::string& path, const MomentumHistogram& h,
                         const std::string& fingerprint);
void write_metadata_json(const std::string& path, const EnsembleResult& r);

std::string format_double(double v);

}  // namespace kicksim
