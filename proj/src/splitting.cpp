#include "cubicsplit/splitting.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <map>

#include "cubicsplit/error.hpp"

namespace cubicsplit {

namespace mp = boost::multiprecision;

namespace {

constexpr double kTwoPi = 6.283185307179586476925286766559;
constexpr double kPi = 3.141592653589793238462643383280;

double to_d(const Real& x) { return x.convert_to<double>(); }

long ceil_or_floor(double x, WindowSemantics s) {
  return static_cast<long>(s == WindowSemantics::Ceil ? std::ceil(x) : std::floor(x));
}

bool same_label(const Descriptor& a, const Descriptor& b) { return a.q == b.q && a.n == b.n; }

double bisect(const std::function<double(double)>& f, double a, double b) {
  double fa = f(a);
  for (int it = 0; it < 200 && b - a > 1e-15 * std::max(1.0, std::abs(a)); ++it) {
    double m = 0.5 * (a + b);
    double fm = f(m);
    if ((fm < 0) == (fa < 0)) {
      a = m;
      fa = fm;
    } else {
      b = m;
    }
  }
  return 0.5 * (a + b);
}

}  // namespace

HarmonicParams make_params(const KochData& koch, const OscillationConstants& osc, const ResonanceConstants& rc,
                           double rho, std::optional<double> delta_override) {
  if (!(rho > 0)) throw Error(ErrorCode::NonPositiveInputs, "rho must be positive");
  HarmonicParams p;
  p.rho = rho;
  p.lambda = to_d(koch.lambda);
  p.delta = delta_override ? *delta_override : to_d(osc.delta);
  if (!(p.delta >= 0 && p.delta < 1)) throw Error(ErrorCode::DeltaOutOfRange, "delta must lie in [0, 1)");
  p.theta = to_d(osc.theta);
  p.psi_hat = to_d(rc.psi_hat);
  p.gamma_star = to_d(rc.gamma_star);
  p.K_hat = to_d(rc.K_hat);
  p.C0 = 1.5 * std::cbrt(kPi * rho * rho * p.gamma_star);
  p.D0 = std::pow(kPi * p.gamma_star / rho, 2);
  p.xi0 = xi0_of(p.lambda);
  p.J1_0 = j1_unperturbed(p.lambda);
  Window w = dominance_window(p.lambda, p.delta, p.xi0);
  p.N_minus = w.N_minus;
  p.N_plus = w.N_plus;
  p.phi = koch.phi;
  return p;
}

double lg(double x, double lambda) { return std::log(x) / (3 * std::log(lambda)); }

double c0_function(double t, double lambda) {
  double l = std::log(lambda);
  return (2 * std::exp(-0.5 * t * l) + std::exp(t * l)) / 3;
}

double cc(double zeta, double Z, double Y, double lambda) { return std::cbrt(Y) * c0_function(zeta - Z, lambda); }

double xi0_of(double lambda) { return 2 * lg(2 * lambda / (std::sqrt(lambda) + 1), lambda); }

double j1_unperturbed(double lambda) { return c0_function(xi0_of(lambda), lambda); }

Window dominance_window(double lambda, double delta, double xi0) {
  double ratio = (1 + delta) / (1 - delta);
  double sp = std::sqrt(1 + delta), sm = std::sqrt(1 - delta);
  double am = 2 * sp * std::pow(lambda, 1.5 * (1 - xi0)) + 1;
  double ap = std::pow((std::pow(lambda, 1.5 * xi0) + 2 * sp) / (2 * sm), 2);
  double l = std::log(lambda);
  return {std::log(std::max(ratio, am)) / l, std::log(std::max(ratio, ap)) / l};
}

std::optional<double> intersect(double Z1, double Y1, double Z2, double Y2, double lambda) {
  double z = Z2 - Z1;
  double w = std::cbrt(Y2 / Y1);
  if (z == 0 && w == 1) throw Error(ErrorCode::CoincidentDescriptors, "identical C-functions");
  double L = std::pow(lambda, z);
  double num = w * std::pow(lambda, z / 2) - 1;
  double den = L - w;
  auto diff = [&](double zeta) { return cc(zeta, Z1, Y1, lambda) - cc(zeta, Z2, Y2, lambda); };
  if (std::abs(den) > 1e-14) {
    double u3 = 2 * L * num / den;
    if (!(u3 > 0)) return std::nullopt;
    return Z1 + 2 * lg(u3, lambda);
  }
  // Nearly parallel branches: the closed form loses all digits.
  if (!(num / den > 0) && std::abs(num) > 1e-15) return std::nullopt;
  double a = std::min(Z1, Z2) - 50, b = std::max(Z1, Z2) + 50;
  if ((diff(a) < 0) == (diff(b) < 0)) return std::nullopt;
  return bisect(diff, a, b);
}

MelnikovCoeff melnikov_coeff(double norm_k, double divisor, double eps, const HarmonicParams& p) {
  if (!(eps > 0)) throw Error(ErrorCode::NonPositiveEps, "eps must be positive");
  if (!(norm_k > 0) || divisor == 0) throw Error(ErrorCode::NonPositiveInputs, "k must be a nonzero non-resonant vector");
  double se = std::sqrt(eps);
  double x = std::abs(divisor) / se;
  double gamma = std::abs(divisor) * norm_k * norm_k;
  MelnikovCoeff m;
  m.alpha = 4 * kPi * gamma / (norm_k * norm_k * se);
  m.beta = p.rho * norm_k + kPi * gamma / (2 * norm_k * norm_k * se);
  double y = kPi * x / 2;
  double log_sinh = y + std::log1p(-std::exp(-2 * y)) - std::log(2.0);
  m.log_L_exact = std::log(2 * kPi * x) - p.rho * norm_k - log_sinh;
  m.log_L_approx = std::log(m.alpha) - m.beta;
  m.L_exact = std::exp(m.log_L_exact);
  m.L_approx = std::exp(m.log_L_approx);
  return m;
}

double eps_min(double gamma_tilde, double norm_k, const HarmonicParams& p) {
  if (!(gamma_tilde > 0) || !(norm_k > 0)) throw Error(ErrorCode::NonPositiveInputs, "gamma and |k| must be positive");
  return p.D0 * gamma_tilde * gamma_tilde / std::pow(norm_k, 6);
}

double g_of_eps(double gamma_tilde, double norm_k, double eps, const HarmonicParams& p) {
  if (!(eps > 0)) throw Error(ErrorCode::NonPositiveEps, "eps must be positive");
  double ek = eps_min(gamma_tilde, norm_k, p);
  return std::cbrt(gamma_tilde) / 3 * (2 * std::pow(eps / ek, 1.0 / 6) + std::cbrt(ek / eps));
}

double zeta_of_eps(const HarmonicParams& p, double eps) {
  if (!(eps > 0)) throw Error(ErrorCode::NonPositiveEps, "eps must be positive");
  return lg(p.D0 / std::pow(p.K_hat, 3), p.lambda) - lg(eps, p.lambda);
}

double eps_of_zeta(const HarmonicParams& p, double zeta) {
  return p.D0 / std::pow(p.K_hat, 3) * std::exp(-3 * std::log(p.lambda) * zeta);
}

double frac_n_phi(const Real& phi, long n) {
  PrecisionScope scope(std::max(phi.precision(), 30u));
  Real v = phi * n;
  return to_d(v - mp::floor(v));
}

SplittingModel::SplittingModel(const KochData& koch, const HarmonicParams& params,
                               const std::vector<PrimitiveRecord>& primitives, const SplittingOptions& options)
    : koch_(koch), p_(params), opt_(options), primitives_(primitives) {
  if (primitives_.empty()) throw Error(ErrorCode::EmptyPrimitiveSet, "no primitive below the cut");
  if (primitives_.size() < 2)
    throw Error(ErrorCode::InsufficientPrimitiveCut, "the cut must admit a second primitive");
  double needed = p_.gamma_star * std::pow(J1_plus(), 3);
  if (opt_.gamma_cut < needed)
    throw Error(ErrorCode::InsufficientPrimitiveCut,
                "primitive cut " + std::to_string(opt_.gamma_cut) + " below gamma* (J1+)^3 = " + std::to_string(needed));
  q_hat_ = primitives_[0].q;
  k0_hat_ = primitives_[0].k0;
  b_shift_ = 2 * p_.psi_hat - p_.theta;
  double l3 = 3 * std::log(p_.lambda);
  for (std::size_t i = 1; i < primitives_.size(); ++i) {
    const PrimitiveRecord& r = primitives_[i];
    if (!r.essential) continue;
    Secondary s;
    s.rec = i;
    s.gamma_norm = to_d(r.gamma_star_norm);
    s.shift = std::log(to_d(r.inv.K) / p_.K_hat) / std::log(p_.lambda) - 2 * std::log(s.gamma_norm) / l3;
    s.psi = to_d(r.inv.psi);
    s.lower = std::cbrt(s.gamma_norm * (1 - p_.delta));
    secondaries_.push_back(s);
  }
  std::sort(secondaries_.begin(), secondaries_.end(),
            [](const Secondary& a, const Secondary& b) { return a.lower < b.lower; });
  b0_minus_ = secondaries_.empty() ? std::numeric_limits<double>::infinity() : secondaries_[0].lower;
  strong_sep_ = b0_minus_ > J1_plus();
}

double SplittingModel::J1_plus() const { return p_.J1_0 * std::cbrt(1 + p_.delta); }
double SplittingModel::J0_minus() const { return std::cbrt(1 - p_.delta); }

double SplittingModel::b_bar(long n) const {
  return 1 + p_.delta * std::cos(kTwoPi * frac_n_phi(p_.phi, n) + b_shift_);
}

Descriptor SplittingModel::primary(long n) const {
  double b = b_bar(n);
  return {static_cast<double>(n) + lg(b, p_.lambda), b, q_hat_, n};
}

Descriptor SplittingModel::secondary(std::size_t index, long n) const {
  const Secondary& s = secondaries_.at(index);
  double b = 1 + p_.delta * std::cos(kTwoPi * frac_n_phi(p_.phi, n) + 2 * s.psi - p_.theta);
  return {static_cast<double>(n) + s.shift + lg(b, p_.lambda), s.gamma_norm * b, primitives_[s.rec].q, n};
}

std::pair<long, long> SplittingModel::window(double zeta, WindowSemantics semantics) const {
  long n0 = static_cast<long>(std::ceil(zeta - p_.xi0));
  long lo = n0 - ceil_or_floor(p_.N_minus, semantics);
  long hi = n0 + ceil_or_floor(p_.N_plus, semantics);
  return {std::max(lo, 0L), std::max(hi, 0L)};
}

double SplittingModel::f1_bar(double zeta, long* arg) const { return f1_bar(zeta, opt_.semantics, arg); }

double SplittingModel::f1_bar(double zeta, WindowSemantics semantics, long* arg) const {
  auto [lo, hi] = window(zeta, semantics);
  double best = std::numeric_limits<double>::infinity();
  long best_n = lo;
  for (long n = lo; n <= hi; ++n) {
    Descriptor d = primary(n);
    double v = cc(zeta, d.Z, d.Y, p_.lambda);
    if (v < best) {
      best = v;
      best_n = n;
    }
  }
  if (arg) *arg = best_n;
  return best;
}

void SplittingModel::collect(double zeta, std::vector<Descriptor>* out, double cap) const {
  long em = static_cast<long>(std::ceil(p_.N_minus)) + 2;
  long ep = static_cast<long>(std::ceil(p_.N_plus)) + 2;
  for (std::size_t i = 0; i < secondaries_.size(); ++i) {
    const Secondary& s = secondaries_[i];
    if (s.lower >= cap) break;
    long n0 = static_cast<long>(std::ceil(zeta - s.shift - p_.xi0));
    for (long n = std::max(n0 - em, 0L); n <= std::max(n0 + ep, 0L); ++n) out->push_back(secondary(i, n));
  }
}

Evaluation SplittingModel::evaluate(double zeta) const {
  Evaluation e;
  e.zeta = zeta;
  e.F1_bar = f1_bar(zeta, &e.F1_bar_n);
  std::vector<Descriptor> ds;
  long n0 = static_cast<long>(std::ceil(zeta - p_.xi0));
  long lo = std::max(n0 - static_cast<long>(std::ceil(p_.N_minus)) - 2, 0L);
  long hi = std::max(n0 + static_cast<long>(std::ceil(p_.N_plus)) + 2, 0L);
  for (long n = lo; n <= hi; ++n) ds.push_back(primary(n));

  auto two_smallest = [&](std::vector<Descriptor>& v) {
    std::partial_sort(v.begin(), v.begin() + std::min<std::size_t>(2, v.size()), v.end(),
                      [&](const Descriptor& a, const Descriptor& b) {
                        return cc(zeta, a.Z, a.Y, p_.lambda) < cc(zeta, b.Z, b.Y, p_.lambda);
                      });
  };
  two_smallest(ds);
  double h2_primary = ds.size() > 1 ? cc(zeta, ds[1].Z, ds[1].Y, p_.lambda) : std::numeric_limits<double>::infinity();
  std::vector<Descriptor> all(ds.begin(), ds.begin() + std::min<std::size_t>(2, ds.size()));
  collect(zeta, &all, h2_primary);
  two_smallest(all);
  e.S1 = all[0];
  e.F1 = cc(zeta, all[0].Z, all[0].Y, p_.lambda);
  if (all.size() > 1) {
    e.S2 = all[1];
    e.h2 = cc(zeta, all[1].Z, all[1].Y, p_.lambda);
  } else {
    e.h2 = std::numeric_limits<double>::infinity();
  }
  return e;
}

double SplittingModel::harmonic_norm(const Descriptor& d) const {
  const PrimitiveRecord* rec = nullptr;
  for (const PrimitiveRecord& r : primitives_)
    if (r.q == d.q) rec = &r;
  if (!rec) throw Error(ErrorCode::InternalFault, "descriptor without a primitive");
  if (d.n < 0) throw Error(ErrorCode::NonPositiveInputs, "negative sequence index");
  IntVec3 k = rec->k0;
  for (long i = 0; i < d.n; ++i) k = cubicsplit::apply(koch_.U, k);
  return std::sqrt(norm_sq(k).convert_to<double>());
}

SplittingProfile SplittingModel::h_profile(double zeta_min, double zeta_max, double step) const {
  if (!(step > 0) || !(zeta_max >= zeta_min)) throw Error(ErrorCode::NonPositiveInputs, "bad zeta grid");
  SplittingProfile prof;
  prof.strong_sep = strong_sep_;
  prof.semantics = opt_.semantics;
  prof.zeta0 = zeta0();
  std::map<std::pair<IntVec2, long>, double> norms;
  auto norm_of = [&](const Descriptor& d) {
    auto key = std::make_pair(d.q, d.n);
    auto it = norms.find(key);
    if (it != norms.end()) return it->second;
    double v = harmonic_norm(d);
    norms.emplace(key, v);
    return v;
  };
  auto row_at = [&](double z, bool corner) {
    Evaluation e = evaluate(z);
    return ProfileRow{z, eps_of_zeta(p_, z), e.F1, e.F1_bar, e.h2, e.S1, corner, z >= prof.zeta0, norm_of(e.S1)};
  };

  long count = static_cast<long>(std::floor((zeta_max - zeta_min) / step + 1e-9));
  std::optional<ProfileRow> prev;
  for (long i = 0; i <= count; ++i) {
    double z = zeta_min + i * step;
    ProfileRow row = row_at(z, false);
    if (prev && !same_label(prev->S1, row.S1)) {
      const Descriptor& a = prev->S1;
      const Descriptor& b = row.S1;
      std::optional<double> zc = intersect(a.Z, a.Y, b.Z, b.Y, p_.lambda);
      if (!zc || *zc < prev->zeta - step || *zc > z + step) {
        zc = bisect([&](double t) { return cc(t, a.Z, a.Y, p_.lambda) - cc(t, b.Z, b.Y, p_.lambda); }, prev->zeta, z);
      }
      ProfileRow cr = row_at(*zc, true);
      prof.corners.push_back({*zc, a, b, std::abs(cr.h2 - cr.F1)});
      prof.rows.push_back(cr);
    }
    prof.rows.push_back(row);
    prev = row;
  }
  return prof;
}

std::pair<long, long> SplittingModel::upsilon_range() const {
  return {-static_cast<long>(std::ceil(p_.N_minus)) - 1, static_cast<long>(std::ceil(p_.N_plus)) + 2};
}

double SplittingModel::chi(long n, double x, double y) const {
  double beta = 1 + p_.delta * std::cos(kTwoPi * (y - p_.phi.convert_to<double>() * x + frac_n_phi(p_.phi, n)) + b_shift_);
  return cc(x, static_cast<double>(n) + lg(beta, p_.lambda), beta, p_.lambda);
}

namespace {

struct ChiTable {
  double phi;
  double lambda_log;
  double delta;
  double shift;
  long lo;
  std::vector<double> frac;

  double chi(long n, double x, double y) const {
    double beta = 1 + delta * std::cos(kTwoPi * (y - phi * x + frac[n - lo]) + shift);
    double t = x - static_cast<double>(n);
    // cbrt(beta) * C0(t - Lg beta) with Lg beta folded into the exponentials.
    double a = std::exp(-0.5 * t * lambda_log), b = std::exp(t * lambda_log);
    double cb = std::cbrt(beta);
    return cb * (2 * a * std::sqrt(cb) + b / cb) / 3;
  }
};

ChiTable make_table(const HarmonicParams& p, long lo, long hi) {
  ChiTable t{p.phi.convert_to<double>(), std::log(p.lambda), p.delta, 0, lo, {}};
  for (long n = lo; n <= hi; ++n) t.frac.push_back(frac_n_phi(p.phi, n));
  return t;
}

double wrap(double v) { return v - std::floor(v); }

}  // namespace

double SplittingModel::upsilon(double x, double y, long* label) const {
  auto [lo, hi] = upsilon_range();
  ChiTable t = make_table(p_, lo, hi);
  t.shift = b_shift_;
  // Upsilon is 1-periodic in both arguments.
  double xs = wrap(x), ys = wrap(y);
  double best = std::numeric_limits<double>::infinity();
  long arg = lo;
  for (long n = lo; n <= hi; ++n) {
    double v = t.chi(n, xs, ys);
    if (v < best) {
      best = v;
      arg = n;
    }
  }
  if (label) *label = arg;
  return best;
}

TorusGrid SplittingModel::torus_grid(int resolution) const {
  if (resolution < 2) throw Error(ErrorCode::NonPositiveInputs, "torus resolution must be at least 2");
  auto [lo, hi] = upsilon_range();
  ChiTable t = make_table(p_, lo, hi);
  t.shift = b_shift_;
  TorusGrid g;
  g.resolution = resolution;
  g.values.resize(static_cast<std::size_t>(resolution) * resolution);
  g.labels.resize(g.values.size());
  g.min_value = std::numeric_limits<double>::infinity();
  g.max_value = -g.min_value;
  for (int iy = 0; iy < resolution; ++iy) {
    double y = static_cast<double>(iy) / resolution;
    for (int ix = 0; ix < resolution; ++ix) {
      double x = static_cast<double>(ix) / resolution;
      double best = std::numeric_limits<double>::infinity();
      long arg = lo;
      for (long n = lo; n <= hi; ++n) {
        double v = t.chi(n, x, y);
        if (v < best) {
          best = v;
          arg = n;
        }
      }
      std::size_t idx = static_cast<std::size_t>(iy) * resolution + ix;
      g.values[idx] = best;
      g.labels[idx] = static_cast<int>(arg);
      g.min_value = std::min(g.min_value, best);
      if (best > g.max_value) {
        g.max_value = best;
        g.argmax_x = x;
        g.argmax_y = y;
      }
    }
  }
  return g;
}

J1Star SplittingModel::j1_star(int resolution) const { return j1_star(torus_grid(resolution)); }

J1Star SplittingModel::j1_star(const TorusGrid& g) const {
  int resolution = g.resolution;
  auto [lo, hi] = upsilon_range();
  ChiTable t = make_table(p_, lo, hi);
  t.shift = b_shift_;
  auto ups = [&](double x, double y) {
    double best = std::numeric_limits<double>::infinity();
    for (long n = lo; n <= hi; ++n) best = std::min(best, t.chi(n, x, y));
    return best;
  };
  J1Star out;
  out.grid_value = g.max_value;
  out.value = g.max_value;
  out.x = g.argmax_x;
  out.y = g.argmax_y;
  double cell = 1.0 / resolution;

  // Confluence of three chi functions: solve chi_a = chi_b = chi_c by Newton.
  std::vector<std::pair<double, long>> vals;
  for (long n = lo; n <= hi; ++n) vals.emplace_back(t.chi(n, out.x, out.y), n);
  std::sort(vals.begin(), vals.end());
  std::size_t m = std::min<std::size_t>(4, vals.size());
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = i + 1; j < m; ++j)
      for (std::size_t k = j + 1; k < m; ++k) {
        long a = vals[i].second, b = vals[j].second, c = vals[k].second;
        double x = g.argmax_x, y = g.argmax_y;
        bool ok = false;
        for (int it = 0; it < 60; ++it) {
          double f1 = t.chi(a, x, y) - t.chi(b, x, y);
          double f2 = t.chi(a, x, y) - t.chi(c, x, y);
          const double h = 1e-7;
          double f1x = (t.chi(a, x + h, y) - t.chi(b, x + h, y) - f1) / h;
          double f1y = (t.chi(a, x, y + h) - t.chi(b, x, y + h) - f1) / h;
          double f2x = (t.chi(a, x + h, y) - t.chi(c, x + h, y) - f2) / h;
          double f2y = (t.chi(a, x, y + h) - t.chi(c, x, y + h) - f2) / h;
          double d = f1x * f2y - f1y * f2x;
          if (d == 0) break;
          double dx = (f1 * f2y - f2 * f1y) / d, dy = (f1x * f2 - f2x * f1) / d;
          x -= dx;
          y -= dy;
          if (std::abs(dx) + std::abs(dy) < 1e-15) {
            ok = true;
            break;
          }
        }
        if (!ok) {
          double r1 = t.chi(a, x, y) - t.chi(b, x, y), r2 = t.chi(a, x, y) - t.chi(c, x, y);
          ok = std::abs(r1) + std::abs(r2) < 1e-13;
        }
        if (!ok || std::abs(x - g.argmax_x) > 4 * cell || std::abs(y - g.argmax_y) > 4 * cell) continue;
        double v = t.chi(a, x, y);
        if (ups(x, y) < v - 1e-12) continue;  // another chi lies below the confluence
        if (v > out.value) {
          out.value = v;
          out.x = x;
          out.y = y;
        }
      }

  // Pattern search from the best point so far catches two-function ridges.
  double step = cell;
  double x = out.x, y = out.y, v = ups(x, y);
  while (step > 1e-13) {
    bool moved = false;
    for (auto [dx, dy] : {std::pair{1, 0}, {-1, 0}, {0, 1}, {0, -1}, {1, 1}, {1, -1}, {-1, 1}, {-1, -1}}) {
      double nx = x + dx * step, ny = y + dy * step;
      double nv = ups(nx, ny);
      if (nv > v) {
        x = nx;
        y = ny;
        v = nv;
        moved = true;
      }
    }
    if (!moved) step /= 2;
  }
  if (v > out.value) {
    out.value = v;
    out.x = x;
    out.y = y;
  }
  out.x = wrap(out.x);
  out.y = wrap(out.y);
  for (long n = lo; n <= hi; ++n)
    if (std::abs(t.chi(n, out.x, out.y) - out.value) < 1e-6) out.confluence.push_back(n);
  return out;
}

Estimate SplittingModel::estimate(double eps, double mu) const {
  if (!(eps > 0)) throw Error(ErrorCode::NonPositiveEps, "eps must be positive");
  if (!(mu > 0)) throw Error(ErrorCode::NonPositiveInputs, "mu must be positive");
  Estimate est;
  est.zeta = zeta_of_eps(p_, eps);
  Evaluation e = evaluate(est.zeta);
  est.h1 = e.F1;
  est.h2 = e.h2;
  double s = p_.C0 / std::pow(eps, 1.0 / 6);
  est.log_estimate = std::log(mu) - std::log(eps) / 3 - s * est.h1;
  est.estimate = std::exp(est.log_estimate);
  est.eta21 = std::exp(-s * (est.h2 - est.h1));
  est.near_corner = est.eta21 > 0.1;
  est.r = std::log(mu) / std::log(eps);
  est.r_condition_met = est.r > 3;
  return est;
}

Estimate SplittingModel::estimate_sharp(double eps, double mu, double j1_star) const {
  Estimate est = estimate(eps, mu);
  est.h1 = j1_star;
  est.log_estimate = std::log(mu) - std::log(eps) / 3 - p_.C0 / std::pow(eps, 1.0 / 6) * j1_star;
  est.estimate = std::exp(est.log_estimate);
  return est;
}

}  // namespace cubicsplit
