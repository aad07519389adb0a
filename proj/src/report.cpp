#include "cubicsplit/report.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "cubicsplit/error.hpp"
#include "json.hpp"

namespace cubicsplit {

using ojson = nlohmann::ordered_json;

namespace {

std::string num(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

std::string real_str(const Real& x, unsigned digits) { return to_string(x, digits); }

ojson coords(const FieldElement& x) { return ojson::array({to_string(x.c[0]), to_string(x.c[1]), to_string(x.c[2])}); }

ojson int_matrix(const IntMatrix3& m) {
  ojson out = ojson::array();
  for (const auto& row : m) out.push_back({row[0].convert_to<long long>(), row[1].convert_to<long long>(), row[2].convert_to<long long>()});
  return out;
}

std::string window_name(WindowSemantics w) { return w == WindowSemantics::Ceil ? "ceil" : "floor"; }

[[noreturn]] void bad(const std::string& what) { throw Error(ErrorCode::ConfigParseError, what); }

double get_number(const ojson& j, const char* key) {
  if (!j.is_number()) bad(std::string("'") + key + "' must be a number");
  return j.get<double>();
}

long get_integer(const ojson& j, const char* key) {
  if (!j.is_number_integer()) bad(std::string("'") + key + "' must be an integer");
  return j.get<long>();
}

Rational get_rational(const ojson& j, const char* key) {
  if (j.is_string()) return parse_rational(j.get<std::string>());
  if (j.is_number_integer()) return Rational(j.get<long long>());
  bad(std::string("'") + key + "' must be a \"p/q\" string");
}

}  // namespace

AnalysisConfig preset_config(const std::string& name) {
  AnalysisConfig c;
  c.field = {Rational(1), Rational(-1), Rational(0), Rational(0), Rational(0), Rational(1)};
  c.preset = name;
  if (name == "cubic-golden") return c;
  if (name == "cubic-golden-delta0") {
    c.delta_override = 0.0;
    return c;
  }
  throw Error(ErrorCode::UnknownPreset, "unknown preset '" + name + "'");
}

std::vector<std::string> preset_names() { return {"cubic-golden", "cubic-golden-delta0"}; }

AnalysisConfig parse_config(const std::string& text) {
  ojson j;
  try {
    j = ojson::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    bad(std::string("invalid JSON: ") + e.what());
  }
  if (!j.is_object()) bad("config must be a JSON object");
  AnalysisConfig c;
  if (j.contains("preset")) {
    if (!j["preset"].is_string()) bad("'preset' must be a string");
    c = preset_config(j["preset"].get<std::string>());
  }
  static const char* field_keys[] = {"r0", "r1", "r2", "a0", "a1", "a2"};
  int present = 0;
  for (const char* k : field_keys) present += j.contains(k) ? 1 : 0;
  if (present != 0 && present != 6) bad("field needs all of r0, r1, r2, a0, a1, a2");
  if (present == 0 && c.preset.empty()) bad("config needs a field (r0..a2) or a preset");
  if (present == 6) {
    c.preset.clear();
    c.field = {get_rational(j["r0"], "r0"), get_rational(j["r1"], "r1"), get_rational(j["r2"], "r2"),
               get_rational(j["a0"], "a0"), get_rational(j["a1"], "a1"), get_rational(j["a2"], "a2")};
  }
  for (auto it = j.begin(); it != j.end(); ++it) {
    const std::string& k = it.key();
    const ojson& v = it.value();
    if (k == "preset" || k == "r0" || k == "r1" || k == "r2" || k == "a0" || k == "a1" || k == "a2") continue;
    if (k == "rho") c.rho = get_number(v, "rho");
    else if (k == "precision_digits") c.precision_digits = static_cast<unsigned>(get_integer(v, "precision_digits"));
    else if (k == "norm_cap") c.norm_cap = get_integer(v, "norm_cap");
    else if (k == "gamma_cut") c.gamma_cut = get_number(v, "gamma_cut");
    else if (k == "k_max") c.k_max = get_integer(v, "k_max");
    else if (k == "zeta_min") c.zeta_min = get_number(v, "zeta_min");
    else if (k == "zeta_max") c.zeta_max = get_number(v, "zeta_max");
    else if (k == "zeta_step") c.zeta_step = get_number(v, "zeta_step");
    else if (k == "torus_resolution") c.torus_resolution = static_cast<int>(get_integer(v, "torus_resolution"));
    else if (k == "delta_override") c.delta_override = get_number(v, "delta_override");
    else if (k == "eps") c.eps = get_number(v, "eps");
    else if (k == "mu") c.mu = get_number(v, "mu");
    else if (k == "out_dir") {
      if (!v.is_string()) bad("'out_dir' must be a string");
      c.out_dir = v.get<std::string>();
    } else if (k == "window") {
      std::string w = v.is_string() ? v.get<std::string>() : "";
      if (w == "ceil") c.window = WindowSemantics::Ceil;
      else if (w == "floor") c.window = WindowSemantics::Floor;
      else bad("'window' must be \"ceil\" or \"floor\"");
    } else {
      bad("unknown key '" + k + "'");
    }
  }
  validate(c);
  return c;
}

AnalysisConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) bad("cannot read config '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str());
}

void validate(const AnalysisConfig& c) {
  if (!(c.rho > 0)) bad("rho must be positive");
  if (c.precision_digits < 17) bad("precision_digits must be at least 17");
  if (c.norm_cap < 1) bad("norm_cap must be positive");
  if (!(c.gamma_cut > 0)) bad("gamma_cut must be positive");
  if (c.k_max < 1) bad("k_max must be positive");
  if (!(c.zeta_step > 0)) bad("zeta_step must be positive");
  if (c.zeta_min && c.zeta_max && !(*c.zeta_max > *c.zeta_min)) bad("zeta range is empty");
  if (c.torus_resolution < 2) bad("torus_resolution must be at least 2");
  if (c.delta_override && !(*c.delta_override >= 0 && *c.delta_override < 1)) bad("delta_override must lie in [0, 1)");
  if (!(c.eps > 0) || !(c.mu > 0)) bad("eps and mu must be positive");
}

std::string canonical_json(const AnalysisConfig& c) {
  ojson j;
  j["preset"] = c.preset;
  j["r0"] = to_string(c.field.r0);
  j["r1"] = to_string(c.field.r1);
  j["r2"] = to_string(c.field.r2);
  j["a0"] = to_string(c.field.a0);
  j["a1"] = to_string(c.field.a1);
  j["a2"] = to_string(c.field.a2);
  j["rho"] = num(c.rho);
  j["precision_digits"] = c.precision_digits;
  j["norm_cap"] = c.norm_cap;
  j["gamma_cut"] = num(c.gamma_cut);
  j["k_max"] = c.k_max;
  j["zeta_min"] = c.zeta_min ? ojson(num(*c.zeta_min)) : ojson(nullptr);
  j["zeta_max"] = c.zeta_max ? ojson(num(*c.zeta_max)) : ojson(nullptr);
  j["zeta_step"] = num(c.zeta_step);
  j["torus_resolution"] = c.torus_resolution;
  j["delta_override"] = c.delta_override ? ojson(num(*c.delta_override)) : ojson(nullptr);
  j["window"] = window_name(c.window);
  j["eps"] = num(c.eps);
  j["mu"] = num(c.mu);
  return j.dump();
}

std::string fnv1a_hex(const std::string& data) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char ch : data) {
    h ^= ch;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

std::string config_hash(const AnalysisConfig& c) { return fnv1a_hex(canonical_json(c)); }

Pipeline build_resonances(const AnalysisConfig& config) {
  validate(config);
  Pipeline p;
  p.config = config;
  CubicField field = CubicField::create(config.field, config.precision_digits);
  p.koch = principal_koch(field, KochSearchOptions{config.norm_cap});
  p.osc = oscillation_constants(p.koch);
  p.primitives = enumerate_primitives(p.koch, p.osc, config.gamma_cut);
  p.rc = classify(p.koch, p.osc, p.primitives);
  return p;
}

Pipeline build_pipeline(const AnalysisConfig& config) {
  Pipeline p = build_resonances(config);
  p.params = make_params(p.koch, p.osc, p.rc, config.rho, config.delta_override);
  p.model.emplace(p.koch, p.params, p.primitives, SplittingOptions{config.window, config.gamma_cut});
  return p;
}

std::string koch_json(const Pipeline& p) {
  const KochData& k = p.koch;
  unsigned d = p.config.precision_digits;
  PrecisionScope scope(k.field.precision());
  ojson j;
  j["T"] = int_matrix(k.T);
  j["U"] = int_matrix(k.U);
  j["lambda"] = {{"coords", coords(k.lambda_exact)}, {"decimal", real_str(k.lambda, d)}};
  j["phi"] = real_str(k.phi, d);
  j["mu2"] = real_str(k.mu2, d);
  j["mu3"] = real_str(k.mu3, d);
  j["kappa"] = num(k.kappa);
  j["t_norm"] = num(k.t_norm);
  j["sign_s"] = k.field.sign_s();
  j["discriminant"] = to_string(k.field.discriminant());
  PhiReport rep = phi_rationality_report(k.phi, Integer(1000000));
  ojson conv = ojson::array();
  for (const auto& [a, b] : rep.convergents) conv.push_back(to_string(a) + "/" + to_string(b));
  ojson pq = ojson::array();
  for (const auto& a : rep.partial_quotients) pq.push_back(to_string(a));
  j["phi_partial_quotients"] = pq;
  j["phi_convergents"] = conv;
  j["precision_digits"] = d;
  return j.dump(2) + "\n";
}

std::string constants_json(const Pipeline& p) {
  unsigned d = p.config.precision_digits;
  PrecisionScope scope(p.koch.field.precision());
  ojson j;
  j["delta"] = real_str(p.osc.delta, d);
  j["delta_sq_exact"] = coords(p.osc.delta_sq_exact);
  j["theta"] = real_str(p.osc.theta, d);
  j["Q0"] = real_str(p.osc.Q0, d);
  j["q_hat"] = {p.rc.q_hat[0].convert_to<long long>(), p.rc.q_hat[1].convert_to<long long>()};
  j["q_hathat"] = {p.rc.q_hathat[0].convert_to<long long>(), p.rc.q_hathat[1].convert_to<long long>()};
  j["primary_tie"] = p.rc.primary_tie;
  j["gamma_star"] = real_str(p.rc.gamma_star, d);
  j["gamma_star_exact"] = coords(p.primitives[0].inv.gamma_star_exact);
  j["gamma_minus"] = real_str(p.rc.gamma_minus, d);
  j["gamma_plus"] = real_str(p.rc.gamma_plus, d);
  j["K_hat"] = real_str(p.rc.K_hat, d);
  j["psi_hat"] = real_str(p.rc.psi_hat, d);
  j["J0_plus"] = real_str(p.rc.J0_plus, d);
  j["B0_minus"] = real_str(p.rc.B0_minus, d);
  j["weak_sep"] = p.rc.weak_sep;
  if (p.model) {
    const HarmonicParams& h = p.params;
    ojson s;
    s["precision"] = "double";
    s["delta_used"] = num(h.delta);
    s["rho"] = num(h.rho);
    s["C0"] = num(h.C0);
    s["D0"] = num(h.D0);
    s["xi0"] = num(h.xi0);
    s["J1_0"] = num(h.J1_0);
    s["J0_minus"] = num(p.model->J0_minus());
    s["J1_plus"] = num(p.model->J1_plus());
    s["N_minus"] = num(h.N_minus);
    s["N_plus"] = num(h.N_plus);
    s["zeta0"] = num(p.model->zeta0());
    s["strong_sep"] = p.model->strong_sep();
    s["window"] = window_name(p.config.window);
    j["splitting"] = s;
  }
  j["precision_digits"] = d;
  return j.dump(2) + "\n";
}

std::string primitives_csv(const Pipeline& p) {
  unsigned d = p.config.precision_digits;
  PrecisionScope scope(p.koch.field.precision());
  std::string out = "q1,q2,p,k0_1,k0_2,k0_3,essential,r,gamma_minus,gamma_star,gamma_plus,gamma_star_norm,K,psi\n";
  for (const PrimitiveRecord& r : p.primitives) {
    out += to_string(r.q[0]) + "," + to_string(r.q[1]) + "," + to_string(r.p) + "," + to_string(r.k0[0]) + "," +
           to_string(r.k0[1]) + "," + to_string(r.k0[2]) + "," + (r.essential ? "1" : "0") + "," + real_str(r.r, d) +
           "," + real_str(r.gamma_minus, d) + "," + real_str(r.inv.gamma_star, d) + "," + real_str(r.gamma_plus, d) +
           "," + real_str(r.gamma_star_norm, d) + "," + real_str(r.inv.K, d) + "," + real_str(r.inv.psi, d) + "\n";
  }
  return out;
}

std::string scan_csv(const ScanReport& scan) {
  std::string out = "k1,k2,k3,ln_norm,neg_ln_divisor,gamma,q1,q2,n,sign,is_primary\n";
  for (const ScanPoint& s : scan.points) {
    out += to_string(s.k[0]) + "," + to_string(s.k[1]) + "," + to_string(s.k[2]) + "," + num(s.ln_norm) + "," +
           num(s.neg_ln_divisor) + "," + num(s.gamma) + "," + to_string(s.q[0]) + "," + to_string(s.q[1]) + "," +
           std::to_string(s.n) + "," + std::to_string(s.sign) + "," + (s.is_primary ? "1" : "0") + "\n";
  }
  return out;
}

std::string profile_csv(const SplittingProfile& prof) {
  std::string out = "zeta,eps,F1,F1_bar,h2,S1_q1,S1_q2,S1_n,is_corner\n";
  for (const ProfileRow& r : prof.rows) {
    out += num(r.zeta) + "," + num(r.eps) + "," + num(r.F1) + "," + num(r.F1_bar) + "," + num(r.h2) + "," +
           to_string(r.S1.q[0]) + "," + to_string(r.S1.q[1]) + "," + std::to_string(r.S1.n) + "," +
           (r.is_corner ? "1" : "0") + "\n";
  }
  return out;
}

std::string torus_csv(const TorusGrid& g) {
  std::string out = "x,y,value,region_n\n";
  out.reserve(out.size() + g.values.size() * 48);
  char buf[96];
  for (int iy = 0; iy < g.resolution; ++iy)
    for (int ix = 0; ix < g.resolution; ++ix) {
      std::size_t i = static_cast<std::size_t>(iy) * g.resolution + ix;
      std::snprintf(buf, sizeof buf, "%.17g,%.17g,%.17g,%d\n", static_cast<double>(ix) / g.resolution,
                    static_cast<double>(iy) / g.resolution, g.values[i], g.labels[i]);
      out += buf;
    }
  return out;
}

std::string estimate_json(const Estimate& e, const AnalysisConfig& c) {
  ojson j;
  j["eps"] = num(c.eps);
  j["mu"] = num(c.mu);
  j["zeta"] = num(e.zeta);
  j["h1"] = num(e.h1);
  j["h2"] = num(e.h2);
  j["estimate"] = num(e.estimate);
  j["log_estimate"] = num(e.log_estimate);
  j["eta21"] = num(e.eta21);
  j["near_corner"] = e.near_corner;
  j["r"] = num(e.r);
  j["r_condition_met"] = e.r_condition_met;
  return j.dump(2) + "\n";
}

std::string plot_script() {
  return R"(# Plots the CSV files written by `cubicsplit analyze`.
import sys

import matplotlib.pyplot as plt
import pandas as pd

out = sys.argv[1] if len(sys.argv) > 1 else "."

prof = pd.read_csv(f"{out}/profile.csv")
fig, ax = plt.subplots(figsize=(9, 3))
ax.plot(prof.zeta, prof.F1, lw=1, label="F1")
ax.plot(prof.zeta, prof.h2, lw=0.6, label="h2")
ax.set_xlabel("zeta")
ax.legend()
fig.savefig(f"{out}/profile.png", dpi=150)

scan = pd.read_csv(f"{out}/scan.csv")
fig, ax = plt.subplots(figsize=(5, 5))
ax.scatter(scan.ln_norm, scan.neg_ln_divisor, s=1, c=scan.is_primary, cmap="coolwarm")
ax.set_xlabel("ln|k|")
ax.set_ylabel("-ln|<k,omega>|")
fig.savefig(f"{out}/scan.png", dpi=150)

tor = pd.read_csv(f"{out}/torus.csv")
n = int(round(len(tor) ** 0.5))
fig, ax = plt.subplots(figsize=(5, 5))
ax.imshow(tor.value.to_numpy().reshape(n, n), origin="lower", extent=(0, 1, 0, 1))
fig.savefig(f"{out}/torus.png", dpi=150)
)";
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::ConfigParseError, "cannot write '" + path + "'");
  out << content;
}

ReportBundle run_analyze(const AnalysisConfig& config) {
  Pipeline p = build_pipeline(config);
  const SplittingModel& m = *p.model;
  ReportBundle b;
  b.out_dir = config.out_dir;
  b.config_hash = config_hash(config);
  std::filesystem::create_directories(config.out_dir);
  std::string hp = "mpfr " + std::to_string(config.precision_digits) + " digits";
  auto emit = [&](const std::string& name, const std::string& precision, const std::string& body) {
    write_file(config.out_dir + "/" + name, body);
    b.files.push_back({name, precision, fnv1a_hex(body)});
  };
  emit("koch.json", hp, koch_json(p));
  emit("constants.json", hp + "; splitting block in double", constants_json(p));
  emit("primitives.csv", hp, primitives_csv(p));
  emit("scan.csv", "double from " + hp + " divisors", scan_csv(brute_scan(p.koch, p.osc, config.k_max)));
  double z0 = config.zeta_min ? *config.zeta_min : m.zeta0();
  double z1 = config.zeta_max ? *config.zeta_max : z0 + 22;
  emit("profile.csv", "double", profile_csv(m.h_profile(z0, z1, config.zeta_step)));
  TorusGrid grid = m.torus_grid(config.torus_resolution);
  emit("torus.csv", "double", torus_csv(grid));
  b.j1_star = m.j1_star(grid);
  ojson ext;
  ext["resolution"] = grid.resolution;
  ext["grid_min"] = num(grid.min_value);
  ext["grid_max"] = num(grid.max_value);
  ext["J1_star"] = num(b.j1_star.value);
  ext["argmax"] = {num(b.j1_star.x), num(b.j1_star.y)};
  ext["confluence"] = b.j1_star.confluence;
  emit("torus_extrema.json", "double", ext.dump(2) + "\n");
  b.estimate = m.estimate(config.eps, config.mu);
  emit("estimate.json", "double", estimate_json(b.estimate, config));
  emit("plot_figures.py", "n/a", plot_script());

  ojson man;
  man["version"] = kVersion;
  man["config_hash"] = b.config_hash;
  man["config"] = ojson::parse(canonical_json(config));
  std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  char ts[32];
  std::strftime(ts, sizeof ts, "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&now));
  man["timestamp"] = ts;
  ojson files = ojson::array();
  for (const ReportFile& f : b.files) files.push_back({{"name", f.name}, {"precision", f.precision}, {"fnv1a", f.hash}});
  man["files"] = files;
  write_file(config.out_dir + "/manifest.json", man.dump(2) + "\n");
  return b;
}

}  // namespace cubicsplit
