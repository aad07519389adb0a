#pragma once

#include <optional>
#include <string>
#include <vector>

#include "cubicsplit/splitting.hpp"

namespace cubicsplit {

inline constexpr const char* kVersion = "0.1.0";

struct AnalysisConfig {
  std::string preset;  // empty for a custom field
  FieldSpec field;
  double rho = 1;
  unsigned precision_digits = kDefaultPrecisionDigits;
  long norm_cap = 64;
  double gamma_cut = 6;
  long k_max = 200;
  std::optional<double> zeta_min;  // defaults to zeta0
  std::optional<double> zeta_max;  // defaults to zeta_min + 22
  double zeta_step = 1e-3;
  int torus_resolution = 1024;
  std::optional<double> delta_override;
  WindowSemantics window = WindowSemantics::Ceil;
  double eps = 1e-6;
  double mu = 1e-20;
  std::string out_dir = "out";
};

/// "cubic-golden" or "cubic-golden-delta0"; throws UnknownPreset.
AnalysisConfig preset_config(const std::string& name);
std::vector<std::string> preset_names();

/// JSON config: field keys r0..a2 as "p/q" strings plus optional analysis keys.
AnalysisConfig parse_config(const std::string& text);
AnalysisConfig load_config(const std::string& path);
/// Throws ConfigParseError on an invalid value.
void validate(const AnalysisConfig& config);

std::string canonical_json(const AnalysisConfig& config);
/// FNV-1a 64 of the canonical JSON, as 16 hex digits.
std::string config_hash(const AnalysisConfig& config);
std::string fnv1a_hex(const std::string& data);

struct Pipeline {
  AnalysisConfig config;
  KochData koch;
  OscillationConstants osc;
  std::vector<PrimitiveRecord> primitives;
  ResonanceConstants rc;
  HarmonicParams params;
  std::optional<SplittingModel> model;
};

/// field -> koch -> resonances -> splitting; stops at the first error.
Pipeline build_pipeline(const AnalysisConfig& config);
/// Stops after the resonance stage (no splitting model).
Pipeline build_resonances(const AnalysisConfig& config);

std::string koch_json(const Pipeline& p);
std::string constants_json(const Pipeline& p);
std::string primitives_csv(const Pipeline& p);
std::string scan_csv(const ScanReport& scan);
std::string profile_csv(const SplittingProfile& profile);
std::string torus_csv(const TorusGrid& grid);
std::string estimate_json(const Estimate& e, const AnalysisConfig& config);
std::string plot_script();

struct ReportFile {
  std::string name;
  std::string precision;  // how the numbers in the file were computed
  std::string hash;
};

struct ReportBundle {
  std::string out_dir;
  std::string config_hash;
  std::vector<ReportFile> files;
  Estimate estimate;
  J1Star j1_star;
};

ReportBundle run_analyze(const AnalysisConfig& config);

void write_file(const std::string& path, const std::string& content);

}  // namespace cubicsplit
