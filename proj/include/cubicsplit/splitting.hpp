#pragma once

#include <optional>
#include <vector>

#include "cubicsplit/resonances.hpp"

namespace cubicsplit {

struct HarmonicParams {
  double rho = 1;
  double lambda = 0;
  double delta = 0;
  double theta = 0;
  double psi_hat = 0;
  double gamma_star = 0;
  double K_hat = 0;
  double C0 = 0;
  double D0 = 0;
  double xi0 = 0;
  double J1_0 = 0;
  double N_minus = 0;
  double N_plus = 0;
  Real phi;  // kept at full precision for {n phi}
};

/// delta_override replaces delta (the delta = 0 diagnostic mode uses 0).
HarmonicParams make_params(const KochData& koch, const OscillationConstants& osc, const ResonanceConstants& rc,
                           double rho, std::optional<double> delta_override = std::nullopt);

/// Lg x = ln x / (3 ln lambda).
double lg(double x, double lambda);
/// (2 lambda^{-t/2} + lambda^t) / 3
double c0_function(double t, double lambda);
double cc(double zeta, double Z, double Y, double lambda);
double xi0_of(double lambda);
double j1_unperturbed(double lambda);

struct Window {
  double N_minus;
  double N_plus;
};
Window dominance_window(double lambda, double delta, double xi0);

/// C-function descriptor: minimum at Z with value Y^{1/3}.
struct Descriptor {
  double Z = 0;
  double Y = 1;
  IntVec2 q{};
  long n = 0;
};

/// Crossing of two C-functions; nullopt when they do not meet.
std::optional<double> intersect(double Z1, double Y1, double Z2, double Y2, double lambda);

struct MelnikovCoeff {
  double alpha;
  double beta;
  double L_exact;   // 2 pi |x| e^{-rho|k|} / sinh(pi|x|/2), x = <k,omega>/sqrt(eps)
  double L_approx;  // alpha e^{-beta}
  double log_L_exact;
  double log_L_approx;
};

MelnikovCoeff melnikov_coeff(double norm_k, double divisor, double eps, const HarmonicParams& p);
/// g_k(eps) for a harmonic with normalized numerator gamma_tilde and norm |k|.
double g_of_eps(double gamma_tilde, double norm_k, double eps, const HarmonicParams& p);
double eps_min(double gamma_tilde, double norm_k, const HarmonicParams& p);

double zeta_of_eps(const HarmonicParams& p, double eps);
double eps_of_zeta(const HarmonicParams& p, double zeta);

/// {x} for x = n * phi, computed at the precision of phi.
double frac_n_phi(const Real& phi, long n);

enum class WindowSemantics { Ceil, Floor };

struct Evaluation {
  double zeta = 0;
  double F1 = 0;
  double F1_bar = 0;
  double h2 = 0;
  Descriptor S1;
  Descriptor S2;
  long F1_bar_n = 0;
};

struct ProfileRow {
  double zeta;
  double eps;
  double F1;
  double F1_bar;
  double h2;
  Descriptor S1;
  bool is_corner;
  bool valid;  // zeta >= zeta0
  double S1_norm;
};

struct Corner {
  double zeta;
  Descriptor left;
  Descriptor right;
  double gap;  // |h1 - h2| at the corner
};

struct SplittingProfile {
  std::vector<ProfileRow> rows;
  std::vector<Corner> corners;
  bool strong_sep = false;
  WindowSemantics semantics = WindowSemantics::Ceil;
  double zeta0 = 0;
};

struct TorusGrid {
  int resolution = 0;
  std::vector<double> values;  // row-major, index iy * resolution + ix
  std::vector<int> labels;
  double min_value = 0;
  double max_value = 0;
  double argmax_x = 0, argmax_y = 0;
};

struct J1Star {
  double value = 0;
  double x = 0, y = 0;
  std::vector<long> confluence;  // n with chi_n within tolerance of the max
  double grid_value = 0;
};

struct Estimate {
  double estimate = 0;
  double log_estimate = 0;
  double h1 = 0;
  double h2 = 0;
  double eta21 = 0;
  bool near_corner = false;
  double r = 0;
  bool r_condition_met = false;
  double zeta = 0;
};

struct SplittingOptions {
  WindowSemantics semantics = WindowSemantics::Ceil;
  /// Primitive cut the caller enumerated with (in gamma_minus units).
  double gamma_cut = 0;
};

class SplittingModel {
 public:
  SplittingModel(const KochData& koch, const HarmonicParams& params, const std::vector<PrimitiveRecord>& primitives,
                 const SplittingOptions& options);

  const HarmonicParams& params() const { return p_; }
  bool strong_sep() const { return strong_sep_; }
  double J1_plus() const;
  double J0_minus() const;
  double B0_minus() const { return b0_minus_; }
  double zeta0() const { return p_.N_minus + p_.xi0; }

  double b_bar(long n) const;
  Descriptor primary(long n) const;
  Descriptor secondary(std::size_t index, long n) const;
  /// Index range [lo, hi] scanned for the primary envelope at zeta.
  std::pair<long, long> window(double zeta, WindowSemantics semantics) const;
  std::pair<long, long> window(double zeta) const { return window(zeta, opt_.semantics); }

  /// Minimum of the primary descriptors over the dominance window; n in *arg.
  double f1_bar(double zeta, long* arg = nullptr) const;
  double f1_bar(double zeta, WindowSemantics semantics, long* arg) const;
  Evaluation evaluate(double zeta) const;
  SplittingProfile h_profile(double zeta_min, double zeta_max, double step) const;
  /// |s(q,n)| from exact integer iteration.
  double harmonic_norm(const Descriptor& d) const;

  double chi(long n, double x, double y) const;
  std::pair<long, long> upsilon_range() const;
  double upsilon(double x, double y, long* label = nullptr) const;
  TorusGrid torus_grid(int resolution) const;
  J1Star j1_star(int resolution) const;
  /// Refines the maximum of an already computed grid.
  J1Star j1_star(const TorusGrid& grid) const;

  Estimate estimate(double eps, double mu) const;
  /// Sharp lower-bound mode: h1 replaced by J1*.
  Estimate estimate_sharp(double eps, double mu, double j1_star) const;

 private:
  struct Secondary {
    std::size_t rec;  // index into primitives_
    double shift;  // 3 Lg(K_q/K_hat) - 2 Lg gamma~*_q
    double gamma_norm;
    double psi;
    double lower;  // (gamma~*_q (1 - delta))^{1/3}
  };

  void collect(double zeta, std::vector<Descriptor>* out, double cap) const;

  KochData koch_;
  HarmonicParams p_;
  SplittingOptions opt_;
  std::vector<PrimitiveRecord> primitives_;
  std::vector<Secondary> secondaries_;
  IntVec2 q_hat_;
  IntVec3 k0_hat_;
  bool strong_sep_ = false;
  double b0_minus_ = 0;
  double b_shift_ = 0;  // 2 psi_hat - theta
};

}  // namespace cubicsplit
