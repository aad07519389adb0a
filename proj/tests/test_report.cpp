#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "cubicsplit/error.hpp"
#include "cubicsplit/report.hpp"

using namespace cubicsplit;

namespace {

ErrorCode code_of(const std::string& text) {
  try {
    parse_config(text);
  } catch (const Error& e) {
    return e.code();
  }
  return ErrorCode::InternalFault;
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

TEST_CASE("presets") {
  CHECK(preset_names().size() == 2);
  CHECK_FALSE(preset_config("cubic-golden").delta_override.has_value());
  CHECK(*preset_config("cubic-golden-delta0").delta_override == 0.0);
  CHECK_THROWS_AS(preset_config("golden"), Error);
}

TEST_CASE("config parsing") {
  AnalysisConfig c = parse_config(R"({"r0":"1","r1":"-1","r2":"0","a0":"0","a1":"0","a2":"1","eps":1e-8,"window":"floor"})");
  CHECK(c.preset.empty());
  CHECK(c.eps == 1e-8);
  CHECK(c.window == WindowSemantics::Floor);
  CHECK(parse_config(R"({"preset":"cubic-golden","torus_resolution":64})").torus_resolution == 64);

  CHECK(code_of("{") == ErrorCode::ConfigParseError);
  CHECK(code_of("[1]") == ErrorCode::ConfigParseError);
  CHECK(code_of(R"({"r0":"1"})") == ErrorCode::ConfigParseError);
  CHECK(code_of(R"({"preset":"cubic-golden","colour":1})") == ErrorCode::ConfigParseError);
  CHECK(code_of(R"({"preset":"cubic-golden","eps":-1})") == ErrorCode::ConfigParseError);
  CHECK(code_of(R"({"preset":"cubic-golden","delta_override":1.5})") == ErrorCode::ConfigParseError);
  CHECK(code_of(R"({"preset":"cubic-golden","window":"round"})") == ErrorCode::ConfigParseError);
  CHECK(code_of(R"({"preset":"nope"})") == ErrorCode::UnknownPreset);
}

TEST_CASE("config hash") {
  AnalysisConfig a = preset_config("cubic-golden");
  AnalysisConfig b = parse_config(R"({"preset":"cubic-golden"})");
  CHECK(config_hash(a) == config_hash(b));
  CHECK(config_hash(a).size() == 16);
  b.eps = 1e-7;
  CHECK(config_hash(a) != config_hash(b));
  CHECK(fnv1a_hex("") == "cbf29ce484222325");
  CHECK(fnv1a_hex("a") == "af63dc4c8601ec8c");
}

TEST_CASE("pipeline surfaces field errors") {
  AnalysisConfig c = preset_config("cubic-golden");
  c.preset.clear();
  c.field = {Rational(-1), Rational(3), Rational(0), Rational(0), Rational(0), Rational(1)};
  try {
    build_pipeline(c);
    FAIL("expected NonNegativeDiscriminant");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::NonNegativeDiscriminant);
    CHECK(is_input_error(e.code()));
  }
}

TEST_CASE("report tables") {
  AnalysisConfig c = preset_config("cubic-golden");
  Pipeline p = build_pipeline(c);
  std::string prim = primitives_csv(p);
  CHECK(std::count(prim.begin(), prim.end(), '\n') == 9);

  double z0 = p.model->zeta0();
  std::string prof = profile_csv(p.model->h_profile(z0, z0 + 1, 0.01));
  CHECK(prof.rfind("zeta,", 0) == 0);
  CHECK(profile_csv(p.model->h_profile(z0, z0 + 1, 0.01)) == prof);

  std::string torus = torus_csv(p.model->torus_grid(8));
  CHECK(torus.rfind("x,y,value,region_n\n", 0) == 0);
  CHECK(std::count(torus.begin(), torus.end(), '\n') == 65);
}

TEST_CASE("analyze is reproducible") {
  namespace fs = std::filesystem;
  AnalysisConfig c = preset_config("cubic-golden");
  c.k_max = 40;
  c.torus_resolution = 16;
  c.zeta_step = 0.05;
  fs::path root = fs::temp_directory_path() / "cubicsplit_test_report";
  fs::remove_all(root);
  c.out_dir = (root / "a").string();
  ReportBundle a = run_analyze(c);
  c.out_dir = (root / "b").string();
  ReportBundle b = run_analyze(c);
  REQUIRE(a.files.size() == b.files.size());
  for (std::size_t i = 0; i < a.files.size(); ++i) {
    CHECK(a.files[i].hash == b.files[i].hash);
    CHECK(slurp(root / "a" / a.files[i].name) == slurp(root / "b" / b.files[i].name));
  }
  CHECK(fs::exists(root / "a" / "manifest.json"));
  fs::remove_all(root);
}
