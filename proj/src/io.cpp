#include "kicksim/io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "kicksim/errors.hpp"

namespace kicksim {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

double to_double(const std::string& key, const std::string& v) {
  try {
    std::size_t pos = 0;
    const double d = std::stod(v, &pos);
    if (pos != v.size()) throw std::invalid_argument(v);
    return d;
  } catch (const std::exception&) {
    throw ValidationError("config key '" + key + "': bad number '" + v + "'");
  }
}

long to_long(const std::string& key, const std::string& v) {
  try {
    std::size_t pos = 0;
    const long d = std::stol(v, &pos);
    if (pos != v.size()) throw std::invalid_argument(v);
    return d;
  } catch (const std::exception&) {
    throw ValidationError("config key '" + key + "': bad integer '" + v + "'");
  }
}

}  // namespace

std::map<std::string, std::string> parse_flat_config(std::istream& in) {
  std::map<std::string, std::string> kv;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw ValidationError("config line " + std::to_string(lineno) +
                            ": expected key = value");
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key.empty() || value.empty())
      throw ValidationError("config line " + std::to_string(lineno) +
                            ": empty key or value");
    kv[key] = value;
  }
  return kv;
}

std::map<std::string, std::string> read_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open config file: " + path);
  return parse_flat_config(in);
}

Settings apply_config(const std::map<std::string, std::string>& kv) {
  Settings s;

  // Physical block first, so dimensionless keys can override the conversion.
  PhysicalConfig phys;
  bool any_physical = false;
  const auto phys_key = [&](const char* name, double& field) {
    const auto it = kv.find(name);
    if (it == kv.end()) return;
    field = to_double(name, it->second);
    any_physical = true;
  };
  phys_key("lambda_l", phys.lambda_L);
  phys_key("mass", phys.mass);
  phys_key("period", phys.period);
  phys_key("pulse_duration", phys.pulse_duration);
  phys_key("rabi_frequency", phys.rabi_frequency);
  phys_key("detuning", phys.detuning);
  phys_key("temperature_fwhm", phys.temperature_fwhm);
  if (any_physical) {
    const DimensionlessParams converted = to_dimensionless(phys);
    s.params.tau = converted.tau;
    if (converted.phi_d > 0.0) s.params.phi_d = converted.phi_d;
    s.params.initial_fwhm = converted.initial_fwhm;
    s.dist.fwhm = converted.initial_fwhm;
  }

  static const char* known[] = {
      "lambda_l",   "mass",         "period",       "pulse_duration",
      "rabi_frequency", "detuning", "temperature_fwhm",
      "tau",        "phi_d",        "n_kicks",      "n_se_mean",
      "n_max",      "n_atoms",      "seed",         "initial_fwhm",
      "initial_kind", "initial_center", "recoil_law",
      "window_min", "window_max",   "threshold",    "renormalize"};
  for (const auto& [key, value] : kv) {
    bool ok = false;
    for (const char* k : known) ok = ok || key == k;
    if (!ok) throw ValidationError("unknown config key: " + key);
  }

  const auto get = [&](const char* name) -> const std::string* {
    const auto it = kv.find(name);
    return it == kv.end() ? nullptr : &it->second;
  };

  if (const auto* v = get("tau")) s.params.tau = to_double("tau", *v);
  if (const auto* v = get("phi_d")) s.params.phi_d = to_double("phi_d", *v);
  if (const auto* v = get("n_kicks"))
    s.params.n_kicks = static_cast<int>(to_long("n_kicks", *v));
  if (const auto* v = get("n_se_mean")) {
    s.params.n_se_mean = to_double("n_se_mean", *v);
    s.se.n_se_mean = s.params.n_se_mean;
  }
  if (const auto* v = get("n_max"))
    s.params.n_max = static_cast<int>(to_long("n_max", *v));
  if (const auto* v = get("n_atoms")) s.params.n_atoms = to_long("n_atoms", *v);
  if (const auto* v = get("seed"))
    s.params.seed = static_cast<std::uint64_t>(std::stoull(*v));
  if (const auto* v = get("initial_fwhm")) {
    s.params.initial_fwhm = to_double("initial_fwhm", *v);
    s.dist.fwhm = s.params.initial_fwhm;
  }
  if (const auto* v = get("initial_center")) s.dist.center = to_double("initial_center", *v);
  if (const auto* v = get("initial_kind")) {
    if (*v == "gaussian")
      s.dist.kind = InitialDistribution::Kind::gaussian;
    else if (*v == "delta")
      s.dist.kind = InitialDistribution::Kind::delta;
    else
      throw ValidationError("initial_kind must be gaussian or delta");
  }
  if (const auto* v = get("recoil_law")) {
    if (*v == "uniform")
      s.se.recoil_law = RecoilLaw::uniform;
    else if (*v == "two_point")
      s.se.recoil_law = RecoilLaw::two_point;
    else
      throw ValidationError("recoil_law must be uniform or two_point");
  }
  if (const auto* v = get("window_min")) s.window.p_min = to_double("window_min", *v);
  if (const auto* v = get("window_max")) s.window.p_max = to_double("window_max", *v);
  if (const auto* v = get("threshold")) s.window.threshold = to_double("threshold", *v);
  if (const auto* v = get("renormalize"))
    s.window.renormalize = to_long("renormalize", *v) != 0;
  return s;
}

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

namespace {

std::ofstream open_out(const std::string& path) {
  std::ofstream out(path);
  if (!out) throw ValidationError("cannot open output file: " + path);
  return out;
}

void write_header(std::ofstream& out, const std::string& fingerprint) {
  out << "# " << fingerprint << "\n";
}

}  // namespace

void write_histograms_csv(const std::string& path, const EnsembleResult& r) {
  auto out = open_out(path);
  write_header(out, r.fingerprint);
  out << "kick,n,probability\n";
  for (std::size_t i = 0; i < r.histograms.size(); ++i) {
    const MomentumHistogram& h = r.histograms[i];
    for (std::size_t j = 0; j < h.prob.size(); ++j) {
      const int n = h.n_min + static_cast<int>(j);
      out << h.kick_index << ',' << n << ',' << format_double(h.prob[j]) << '\n';
    }
  }
}

void write_energy_csv(const std::string& path, const EnsembleResult& r) {
  auto out = open_out(path);
  write_header(out, r.fingerprint);
  out << "kick,energy,stderr\n";
  for (std::size_t k = 0; k < r.energy.size(); ++k)
    out << k << ',' << format_double(r.energy[k]) << ','
        << format_double(r.energy_stderr[k]) << '\n';
}

void write_histogram_csv(const std::string& path, const MomentumHistogram& h,
                         const std::string& fingerprint) {
  auto out = open_out(path);
  write_header(out, fingerprint);
  out << "n,probability\n";
  for (std::size_t j = 0; j < h.prob.size(); ++j) {
    const int n = h.n_min + static_cast<int>(j);
    out << n << ',' << format_double(h.prob[j]) << '\n';
  }
}

void write_metadata_json(const std::string& path, const EnsembleResult& r) {
  nlohmann::json j;
  j["fingerprint"] = r.fingerprint;
  j["seed"] = r.seed;
  j["n_atoms"] = r.n_atoms;
  j["n_failed"] = r.n_failed;
  j["wall_seconds"] = r.wall_seconds;
  auto out = open_out(path);
  out << j.dump(2) << '\n';
}

}  // namespace kicksim
