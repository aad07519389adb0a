#include <cstdio>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "cubicsplit/error.hpp"
#include "cubicsplit/report.hpp"
#include "cubicsplit/verify.hpp"
#include "json.hpp"

using namespace cubicsplit;
using ojson = nlohmann::ordered_json;

namespace {

struct Globals {
  std::string config_path;
  std::string preset;
  std::optional<unsigned> precision;
  std::string out_dir;
  bool json = false;
};

AnalysisConfig resolve(const Globals& g) {
  AnalysisConfig c;
  if (!g.config_path.empty())
    c = load_config(g.config_path);
  else
    c = preset_config(g.preset.empty() ? "cubic-golden" : g.preset);
  if (!g.config_path.empty() && !g.preset.empty())
    throw Error(ErrorCode::ConfigParseError, "use either --config or --preset");
  if (g.precision) c.precision_digits = *g.precision;
  if (!g.out_dir.empty()) c.out_dir = g.out_dir;
  validate(c);
  return c;
}

void emit(const std::string& path, const std::string& body) {
  if (path.empty() || path == "-") {
    std::cout << body;
    return;
  }
  auto parent = std::filesystem::path(path).parent_path();
  if (!parent.empty()) std::filesystem::create_directories(parent);
  write_file(path, body);
  std::cerr << "wrote " << path << "\n";
}

std::string fmt(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.10g", x);
  return buf;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Koch matrices, resonances and splitting exponents for complex cubic frequency vectors"};
  app.require_subcommand(1);
  app.fallthrough();
  Globals g;
  app.add_option("--config", g.config_path, "JSON analysis config");
  app.add_option("--preset", g.preset, "cubic-golden | cubic-golden-delta0");
  app.add_option("--precision", g.precision, "working precision in decimal digits (>= 17)");
  app.add_option("--out", g.out_dir, "output directory for analyze/verify");
  app.add_flag("--json", g.json, "machine-readable output");

  auto* koch = app.add_subcommand("koch", "principal Koch matrix and spectral data");

  auto* prim = app.add_subcommand("primitives", "primitive table");
  std::optional<double> cut;
  std::string prim_out;
  prim->add_option("--cut", cut, "gamma_minus cut");
  prim->add_option("-o,--out", prim_out, "CSV path (stdout if omitted)");

  auto* scan = app.add_subcommand("scan", "brute-force quasi-resonance scan");
  long kmax = 0;
  std::string scan_out;
  scan->add_option("--kmax", kmax, "scan radius in k");
  scan->add_option("-o,--out", scan_out, "CSV path for the scatter points");

  auto* profile = app.add_subcommand("profile", "h1 / h2 profile in zeta");
  std::optional<double> zmin, zmax, step;
  std::string prof_out;
  profile->add_option("--zeta-min", zmin);
  profile->add_option("--zeta-max", zmax);
  profile->add_option("--step", step);
  profile->add_option("-o,--out", prof_out, "CSV path (stdout if omitted)");

  auto* torus = app.add_subcommand("torus", "Upsilon on the torus");
  std::optional<int> res;
  std::string torus_out;
  torus->add_option("--res", res, "grid resolution per axis");
  torus->add_option("-o,--out", torus_out, "CSV path (stdout if omitted)");

  auto* estimate = app.add_subcommand("estimate", "maximal splitting estimate");
  std::optional<double> eps, mu;
  bool sharp = false;
  estimate->add_option("--eps", eps);
  estimate->add_option("--mu", mu);
  estimate->add_flag("--sharp", sharp, "replace h1 by J1*");

  auto* analyze = app.add_subcommand("analyze", "run the full pipeline and write every report");

  auto* verify = app.add_subcommand("verify", "replay the acceptance suite");
  double tol_scale = 1;
  verify->add_option("--tolerance-scale", tol_scale, "multiplies every tolerance (0 = exact)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  try {
    if (*verify) {
      std::string preset = g.preset.empty() ? "cubic-golden" : g.preset;
      VerifyOptions opt;
      opt.tolerance_scale = tol_scale;
      auto results = run_verify(preset, opt);
      std::string report = verify_json(preset, results);
      if (g.json) {
        std::cout << report;
      } else {
        for (const auto& r : results) std::cout << format_line(r) << "\n";
      }
      if (!g.out_dir.empty()) {
        std::filesystem::create_directories(g.out_dir);
        write_file(g.out_dir + "/verify.json", report);
      }
      return all_passed(results) ? 0 : 1;
    }

    AnalysisConfig cfg = resolve(g);

    if (*koch) {
      Pipeline p = build_resonances(cfg);
      if (g.json) {
        std::cout << koch_json(p);
      } else {
        PrecisionScope scope(p.koch.field.precision());
        std::cout << "T      = ";
        for (const auto& row : p.koch.T) std::cout << "[" << row[0] << " " << row[1] << " " << row[2] << "]";
        std::cout << "\nU      = ";
        for (const auto& row : p.koch.U) std::cout << "[" << row[0] << " " << row[1] << " " << row[2] << "]";
        std::cout << "\nlambda = " << to_string(p.koch.lambda, cfg.precision_digits) << "  (" << to_string(p.koch.lambda_exact)
                  << ")\nphi    = " << to_string(p.koch.phi, cfg.precision_digits)
                  << "\ndelta  = " << to_string(p.osc.delta, cfg.precision_digits)
                  << "\ntheta  = " << to_string(p.osc.theta, cfg.precision_digits) << "\nkappa  = " << fmt(p.koch.kappa)
                  << "\n";
      }
      return 0;
    }
    if (*prim) {
      if (cut) cfg.gamma_cut = *cut;
      Pipeline p = build_resonances(cfg);
      emit(prim_out, primitives_csv(p));
      return 0;
    }
    if (*scan) {
      if (kmax > 0) cfg.k_max = kmax;
      Pipeline p = build_resonances(cfg);
      ScanReport rep = brute_scan(p.koch, p.osc, cfg.k_max);
      if (!scan_out.empty()) emit(scan_out, scan_csv(rep));
      ojson j;
      j["k_max"] = rep.k_max;
      j["points"] = rep.points.size();
      j["coverage_ok"] = rep.coverage_ok;
      j["unmatched"] = rep.unmatched.size();
      j["min_gamma"] = rep.min_gamma;
      j["primary_exceptions_n"] = rep.primary_exception_n;
      j["line_minus_intercept"] = rep.line_minus_intercept;
      j["line_plus_intercept"] = rep.line_plus_intercept;
      std::cout << j.dump(g.json ? 2 : -1) << "\n";
      return rep.coverage_ok ? 0 : 1;
    }
    if (*profile) {
      Pipeline p = build_pipeline(cfg);
      double a = zmin ? *zmin : (cfg.zeta_min ? *cfg.zeta_min : p.model->zeta0());
      double b = zmax ? *zmax : (cfg.zeta_max ? *cfg.zeta_max : a + 22);
      emit(prof_out, profile_csv(p.model->h_profile(a, b, step ? *step : cfg.zeta_step)));
      return 0;
    }
    if (*torus) {
      Pipeline p = build_pipeline(cfg);
      TorusGrid grid = p.model->torus_grid(res ? *res : cfg.torus_resolution);
      emit(torus_out, torus_csv(grid));
      J1Star j = p.model->j1_star(grid);
      std::cerr << "min " << fmt(grid.min_value) << "  J1* " << fmt(j.value) << " at (" << fmt(j.x) << ", "
                << fmt(j.y) << ")\n";
      return 0;
    }
    if (*estimate) {
      if (eps) cfg.eps = *eps;
      if (mu) cfg.mu = *mu;
      validate(cfg);
      Pipeline p = build_pipeline(cfg);
      Estimate e = p.model->estimate(cfg.eps, cfg.mu);
      if (sharp) e = p.model->estimate_sharp(cfg.eps, cfg.mu, p.model->j1_star(cfg.torus_resolution).value);
      std::cout << estimate_json(e, cfg);
      return 0;
    }
    if (*analyze) {
      ReportBundle b = run_analyze(cfg);
      if (g.json) {
        std::cout << estimate_json(b.estimate, cfg);
      } else {
        std::cout << "config " << b.config_hash << " -> " << b.out_dir << "\n";
        for (const auto& f : b.files) std::cout << "  " << f.name << "  " << f.hash << "\n";
        std::cout << "J1* = " << fmt(b.j1_star.value) << ", eta21(eps) = " << fmt(b.estimate.eta21) << "\n";
      }
      return 0;
    }
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return is_input_error(e.code()) ? 2 : 3;
  } catch (const std::exception& e) {
    std::cerr << "error: InternalFault: " << e.what() << "\n";
    return 3;
  }
  return 0;
}
