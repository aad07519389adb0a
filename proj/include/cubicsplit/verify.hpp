#pragma once

#include <string>
#include <vector>

namespace cubicsplit {

struct CriterionResult {
  std::string id;
  std::string title;
  bool applicable = true;
  bool passed = false;
  // Headline check: the first failing sub-check, else the first one.
  std::string check;
  double measured = 0;
  double expected = 0;
  double tolerance = 0;
  double runtime_s = 0;
  std::vector<std::string> details;
};

struct VerifyOptions {
  double tolerance_scale = 1;  // 0 turns every approximate comparison into an exact one
  int torus_resolution = 1024;
  long k_max = 200;
};

/// Replays the acceptance suite for a preset; throws UnknownPreset.
std::vector<CriterionResult> run_verify(const std::string& preset, const VerifyOptions& options = {});

std::string verify_json(const std::string& preset, const std::vector<CriterionResult>& results);
/// "PASS  3  Primitive table  gamma_minus(0,0,1)=0.345858 expected 0.345858 tol 1e-05"
std::string format_line(const CriterionResult& r);
bool all_passed(const std::vector<CriterionResult>& results);

}  // namespace cubicsplit
