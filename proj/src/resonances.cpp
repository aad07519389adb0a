#include "cubicsplit/resonances.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "cubicsplit/error.hpp"

namespace cubicsplit {

namespace mp = boost::multiprecision;

namespace {

FieldElement abs_elem(const CubicField& f, const FieldElement& x) { return f.sign(x) < 0 ? -x : x; }

// |sigma(x)|^2 = Norm(x) / x.
FieldElement conj_mod_sq(const CubicField& f, const FieldElement& x) {
  if (x.is_zero()) return x;
  return f.norm(x) * f.inv(x);
}

// u1 as exact field elements: B u1^(0), B = (A^-1)^t.
std::array<FieldElement, 3> u1_exact(const CubicField& f) {
  RatMatrix3 a = identity_rat();
  a[2] = {f.a(0), f.a(1), f.a(2)};
  RatMatrix3 b = transpose(inverse(a));
  FieldElement w = f.omega_elem();
  std::array<FieldElement, 3> u0{FieldElement::rational(f.r(0)), f.mul(w, w) - f.r(2) * w, w};
  std::array<FieldElement, 3> out;
  for (int i = 0; i < 3; ++i) out[i] = b[i][0] * u0[0] + b[i][1] * u0[1] + b[i][2] * u0[2];
  return out;
}

FieldElement w_exact(const CubicField& f) {
  auto x = u1_exact(f);
  FieldElement acc;
  for (int i = 0; i < 3; ++i) acc = acc + f.mul(f.omega_component(i), x[i]);
  return acc;
}

}  // namespace

QuasiResonance quasi_resonance(const CubicField& field, const IntVec3& k) {
  QuasiResonance qr;
  qr.k = k;
  qr.divisor_exact = field.dot(k);
  FieldElement half = FieldElement::rational(Rational(1, 2));
  if (field.compare(abs_elem(field, qr.divisor_exact), half) >= 0)
    throw Error(ErrorCode::NonPositiveInputs, "not a quasi-resonance");
  PrecisionScope scope(field.precision());
  qr.divisor = field.embed_real(qr.divisor_exact);
  qr.norm_sq = norm_sq(k);
  qr.gamma_k = mp::abs(qr.divisor) * Real(qr.norm_sq);
  return qr;
}

OscillationConstants oscillation_constants(const KochData& koch) {
  const CubicField& f = koch.field;
  OscillationConstants o;
  auto x = u1_exact(f);
  FieldElement z1;
  FieldElement big_x;
  for (int i = 0; i < 3; ++i) {
    z1 = z1 + conj_mod_sq(f, x[i]);
    big_x = big_x + f.mul(x[i], x[i]);
  }
  o.Z1_exact = Rational(1, 2) * z1;
  o.W_exact = w_exact(f);
  o.W_norm = f.norm(o.W_exact);
  FieldElement z2_sq = Rational(1, 4) * conj_mod_sq(f, big_x);
  o.delta_sq_exact = f.mul(z2_sq, f.inv(f.mul(o.Z1_exact, o.Z1_exact)));
  if (f.sign(o.delta_sq_exact) <= 0 || f.compare(o.delta_sq_exact, f.one()) >= 0)
    throw Error(ErrorCode::DeltaOutOfRange, "delta^2 = " + to_string(o.delta_sq_exact) + " is outside (0,1)");

  PrecisionScope scope(f.precision());
  Real n2 = dot(koch.u2, koch.u2), n3 = dot(koch.u3, koch.u3), m23 = dot(koch.u2, koch.u3);
  o.Z1 = (n2 + n3) / 2;
  Real c = (n2 - n3) / 2;
  o.Z2 = mp::sqrt(c * c + m23 * m23);
  o.theta = mp::atan2(m23, c);
  o.delta = o.Z2 / o.Z1;
  if (!(o.delta > 0 && o.delta < 1))
    throw Error(ErrorCode::DeltaOutOfRange, "numerical delta outside (0,1)");
  o.Q0 = norm(koch.u1) / (2 * mp::abs(dot(koch.u1, koch.omega)));

  const Rational &r0 = f.r(0), &r1 = f.r(1), &r2 = f.r(2);
  const Rational &a0 = f.a(0), &a1 = f.a(1), &a2 = f.a(2);
  Rational s = (a0 * a0 + a1 * a1 + 1) / (a2 * a2);
  Rational c0 = r0 * r0 - (a0 / a2 + Rational(1, 2)) * r0 * r2 - 2 * a1 / a2 * r0 + r1 * r1 - a1 / a2 * r1 * r2 +
                s * (r1 + r2 * r2 / 2);
  Rational c1 = (a0 / a2 - Rational(1, 2)) * r0 + (r2 / 2 + a1 / a2) * r1;
  Rational c2 = -r1 / 2 - s / 2;
  Rational d0 = -(c1 + r2 * c2), d1 = c2;
  Real w = f.omega();
  Real lhs1 = to_real(c0) + to_real(c1) * w + to_real(c2) * w * w;
  Real lhs2 = (to_real(d0) + to_real(d1) * w) * f.sigma3();
  o.cd_residual = mp::max(mp::abs(lhs1 - (n2 - n3)), mp::abs(lhs2 - m23));
  return o;
}

SequenceInvariants sequence_invariants(const KochData& koch, const OscillationConstants& osc,
                                       const IntVec3& k0, const FieldElement& r_exact) {
  const CubicField& f = koch.field;
  SequenceInvariants s;
  if (osc.W_exact.is_zero() || r_exact.is_zero())
    throw Error(ErrorCode::DegenerateProjection, "vanishing projection for k0 " + to_string(k0[0]));
  FieldElement ratio = f.mul(osc.W_exact, f.inv(r_exact));
  s.E_sq_exact = (4 * f.norm(r_exact) / osc.W_norm) * ratio;
  s.gamma_star_exact = f.mul(f.mul(abs_elem(f, r_exact), s.E_sq_exact), osc.Z1_exact);

  PrecisionScope scope(f.precision());
  s.y = dot(k0, koch.v2);
  s.z = dot(k0, koch.v3);
  Real a = dot(koch.v2, koch.u2), b = dot(koch.v2, koch.u3);
  Real den = a * a + b * b;
  Real ec = (a * s.y + b * s.z) / den;
  Real es = (b * s.y - a * s.z) / den;
  s.E = mp::sqrt(ec * ec + es * es);
  if (s.E == 0) throw Error(ErrorCode::DegenerateProjection, "E_q vanishes");
  s.psi = mp::atan2(es, ec);
  s.K = s.E * s.E * osc.Z1;
  s.gamma_star = mp::abs(f.embed_real(r_exact)) * s.K;
  return s;
}

QuasiResonance k0_of(const CubicField& field, const IntVec2& q) {
  if (q[0] == 0 && q[1] == 0) throw Error(ErrorCode::NonPositiveInputs, "q must be nonzero");
  FieldElement t = Rational(q[0]) * field.omega_elem() + Rational(q[1]) * field.omega_tilde_elem();
  Integer p = field.round(t);
  return quasi_resonance(field, IntVec3{Integer(-p), q[0], q[1]});
}

bool is_primitive(const CubicField& field, const FieldElement& lambda, const IntVec3& k) {
  FieldElement d = abs_elem(field, field.dot(k));
  if (field.compare(d, FieldElement::rational(Rational(1, 2))) >= 0) return false;
  return field.compare(Rational(2) * field.mul(lambda, d), field.one()) > 0;
}

bool in_half_plane(const IntVec2& q) { return q[0] >= 1 || (q[0] == 0 && q[1] >= 1); }

bool in_half_space(const IntVec3& k) {
  return k[1] >= 1 || (k[1] == 0 && k[2] >= 1) || (k[1] == 0 && k[2] == 0 && k[0] >= 0);
}

double primitive_radius(const KochData& koch, const OscillationConstants& osc, double gamma_cut) {
  double lam = koch.lambda.convert_to<double>();
  double delta = osc.delta.convert_to<double>();
  return osc.Q0.convert_to<double>() + std::sqrt(gamma_cut * 2 * lam * (1 + delta) / (1 - delta)) + 2;
}

namespace {

double numeric_gamma_minus(const KochData& koch, const OscillationConstants& osc, const QuasiResonance& qr) {
  PrecisionScope scope(koch.field.precision());
  Real a = dot(koch.v2, koch.u2), b = dot(koch.v2, koch.u3);
  Real y = dot(qr.k, koch.v2), z = dot(qr.k, koch.v3);
  Real gm = mp::abs(qr.divisor) * (y * y + z * z) / (a * a + b * b) * osc.Z1 * (1 - osc.delta);
  return gm.convert_to<double>();
}

PrimitiveRecord make_record(const KochData& koch, const OscillationConstants& osc, const IntVec2& q) {
  const CubicField& f = koch.field;
  QuasiResonance qr = k0_of(f, q);
  PrimitiveRecord rec;
  rec.q = q;
  rec.k0 = qr.k;
  rec.p = -qr.k[0];
  rec.r_exact = qr.divisor_exact;
  rec.r = qr.divisor;
  rec.essential = gcd3(qr.k) == 1;
  rec.inv = sequence_invariants(koch, osc, qr.k, qr.divisor_exact);
  PrecisionScope scope(f.precision());
  rec.gamma_minus = rec.inv.gamma_star * (1 - osc.delta);
  rec.gamma_plus = rec.inv.gamma_star * (1 + osc.delta);
  return rec;
}

}  // namespace

std::vector<PrimitiveRecord> enumerate_primitives(const KochData& koch, const OscillationConstants& osc,
                                                  double gamma_cut) {
  if (!(gamma_cut > 0)) throw Error(ErrorCode::NonPositiveInputs, "gamma cut must be positive");
  const CubicField& f = koch.field;
  double qmax = primitive_radius(koch, osc, gamma_cut);
  long qm = static_cast<long>(std::ceil(qmax));
  std::vector<PrimitiveRecord> out;
  for (long q1 = 0; q1 <= qm; ++q1) {
    for (long q2 = -qm; q2 <= qm; ++q2) {
      if (static_cast<double>(q1 * q1 + q2 * q2) > qmax * qmax) continue;
      IntVec2 q{q1, q2};
      if (!in_half_plane(q)) continue;
      QuasiResonance qr = k0_of(f, q);
      if (!is_primitive(f, koch.lambda_exact, qr.k)) continue;
      if (numeric_gamma_minus(koch, osc, qr) > gamma_cut * (1 + 1e-9)) continue;
      PrimitiveRecord rec = make_record(koch, osc, q);
      if (rec.gamma_minus > gamma_cut) continue;
      out.push_back(std::move(rec));
    }
  }
  {
    PrecisionScope scope(f.precision());
    Real tol = mp::pow(Real(10), -static_cast<int>(f.precision()) + 8);
    std::sort(out.begin(), out.end(), [&](const PrimitiveRecord& a, const PrimitiveRecord& b) {
      Real diff = a.inv.gamma_star - b.inv.gamma_star;
      int c;
      if (mp::abs(diff) > tol * (1 + mp::abs(a.inv.gamma_star)))
        c = diff < 0 ? -1 : 1;
      else
        c = f.compare(a.inv.gamma_star_exact, b.inv.gamma_star_exact);
      if (c != 0) return c < 0;
      return a.q < b.q;
    });
  }
  if (!out.empty()) {
    FieldElement base_inv = f.inv(out.front().inv.gamma_star_exact);
    PrecisionScope scope(f.precision());
    for (auto& rec : out) {
      rec.gamma_star_norm_exact = f.mul(rec.inv.gamma_star_exact, base_inv);
      rec.gamma_star_norm = f.embed_real(rec.gamma_star_norm_exact);
    }
  }
  return out;
}

Real b_model(const KochData& koch, const OscillationConstants& osc, const SequenceInvariants& inv, long n) {
  PrecisionScope scope(koch.field.precision());
  return 1 + osc.delta * mp::cos(2 * pi() * Real(n) * koch.phi + 2 * inv.psi - osc.theta);
}

std::vector<SequenceSample> sequence(const KochData& koch, const OscillationConstants& osc,
                                     const PrimitiveRecord& rec, long n_max) {
  PrecisionScope scope(koch.field.precision());
  std::vector<SequenceSample> out;
  IntVec3 k = rec.k0;
  Real lam_pow = 1;
  Real r = mp::abs(rec.r);
  for (long n = 0; n <= n_max; ++n) {
    SequenceSample s;
    s.n = n;
    s.k = k;
    s.norm_sq = norm_sq(k);
    s.gamma = r / lam_pow * Real(s.norm_sq);
    s.b_model = b_model(koch, osc, rec.inv, n);
    out.push_back(std::move(s));
    k = cubicsplit::apply(koch.U, k);
    lam_pow *= koch.lambda;
  }
  return out;
}

ResonanceConstants classify(const KochData& koch, const OscillationConstants& osc,
                            const std::vector<PrimitiveRecord>& primitives) {
  if (primitives.empty()) throw Error(ErrorCode::EmptyPrimitiveSet, "no primitive below the cut");
  if (primitives.size() < 2)
    throw Error(ErrorCode::InsufficientPrimitiveCut, "the cut must admit a second primitive");
  const CubicField& f = koch.field;
  const PrimitiveRecord& hat = primitives[0];
  const PrimitiveRecord& hathat = primitives[1];
  ResonanceConstants c;
  c.q_hat = hat.q;
  c.q_hathat = hathat.q;
  c.primary_tie = f.compare(hat.inv.gamma_star_exact, hathat.inv.gamma_star_exact) == 0;
  PrecisionScope scope(f.precision());
  c.gamma_star = hat.inv.gamma_star;
  c.gamma_minus = hat.gamma_minus;
  c.gamma_plus = hat.gamma_plus;
  c.K_hat = hat.inv.K;
  c.psi_hat = hat.inv.psi;
  c.gamma_star_norm_hathat = hathat.gamma_star_norm;
  c.J0_plus = mp::cbrt(1 + osc.delta);
  c.B0_minus = mp::cbrt(hathat.gamma_star_norm * (1 - osc.delta));
  c.weak_sep = c.B0_minus > c.J0_plus;
  return c;
}

ScanReport brute_scan(const KochData& koch, const OscillationConstants& osc, long k_max) {
  if (k_max < 1) throw Error(ErrorCode::NonPositiveInputs, "k_max must be at least 1");
  const CubicField& f = koch.field;
  PrecisionScope scope(f.precision());
  ScanReport rep;
  rep.k_max = k_max;
  IntMatrix3 back = transpose(koch.T);  // U^-1
  double om = f.omega().convert_to<double>();
  double omt = f.omega_tilde().convert_to<double>();
  Real lam = koch.lambda;
  Real window = 1 / (2 * lam);
  long kk = k_max * k_max;

  struct Raw {
    IntVec3 k;
    double gamma;
    IntVec2 q;
    long n;
    int sign;
  };
  std::vector<Raw> raws;
  std::map<IntVec2, bool> seen_q;

  for (long k2 = 0; k2 <= k_max; ++k2) {
    for (long k3 = -k_max; k3 <= k_max; ++k3) {
      if (k2 == 0 && k3 <= 0) continue;
      if (k2 * k2 + k3 * k3 > kk) continue;
      double t = k2 * om + k3 * omt;
      double fl = std::floor(t);
      long k1;
      if (std::abs(t - fl - 0.5) < 1e-6) {
        FieldElement te = Rational(k2) * f.omega_elem() + Rational(k3) * f.omega_tilde_elem();
        k1 = -f.round(te).convert_to<long>();
      } else {
        k1 = -std::lround(t);
      }
      if (k1 * k1 + k2 * k2 + k3 * k3 > kk) continue;
      IntVec3 k{k1, k2, k3};
      FieldElement de = f.dot(k);
      Real d = mp::abs(f.embed_real(de));
      // Walk back with T^t; each step multiplies the divisor by lambda.
      long n = 0;
      Real dm = d;
      IntVec3 ks = k;
      while (true) {
        if (dm > window * (1 + Real(1e-20)) ) break;
        if (dm > window * (1 - Real(1e-20))) {
          if (is_primitive(f, koch.lambda_exact, ks)) break;
        }
        dm *= lam;
        ks = cubicsplit::apply(back, ks);
        ++n;
        if (n > 4000) throw Error(ErrorCode::InternalFault, "backward iteration did not reach a primitive");
      }
      IntVec2 q{ks[1], ks[2]};
      int sign = 1;
      if (!in_half_plane(q)) {
        q = {Integer(-q[0]), Integer(-q[1])};
        sign = -1;
      }
      seen_q[q] = true;
      raws.push_back({k, (d * Real(norm_sq(k))).convert_to<double>(), q, n, sign});
    }
  }

  // Coverage: every seed found must appear in an enumeration whose cut
  // includes all of them.
  double cut = 0;
  for (const auto& [q, unused] : seen_q) {
    (void)unused;
    cut = std::max(cut, numeric_gamma_minus(koch, osc, k0_of(f, q)));
  }
  rep.primitives = enumerate_primitives(koch, osc, cut * (1 + 1e-9) + 1e-9);
  std::map<IntVec2, long> index;
  for (std::size_t i = 0; i < rep.primitives.size(); ++i) index[rep.primitives[i].q] = static_cast<long>(i);
  rep.coverage_ok = true;
  for (const auto& [q, unused] : seen_q) {
    (void)unused;
    if (!index.count(q)) {
      rep.coverage_ok = false;
      rep.unmatched.push_back(q);
    }
  }

  const PrimitiveRecord& hat = rep.primitives.front();
  double gm = hat.gamma_minus.convert_to<double>();
  double gp = hat.gamma_plus.convert_to<double>();
  rep.line_minus_intercept = -std::log(gm);
  rep.line_plus_intercept = -std::log(gp);
  rep.min_gamma = std::numeric_limits<double>::infinity();
  rep.min_primary_gamma = std::numeric_limits<double>::infinity();
  for (const Raw& r : raws) {
    ScanPoint p;
    p.k = r.k;
    double nk = std::sqrt(norm_sq(r.k).convert_to<double>());
    p.ln_norm = std::log(nk);
    p.gamma = r.gamma;
    p.neg_ln_divisor = 2 * p.ln_norm - std::log(r.gamma);
    p.q = r.q;
    p.n = r.n;
    p.sign = r.sign;
    auto it = index.find(r.q);
    p.sequence_id = it == index.end() ? -1 : it->second;
    p.is_primary = r.q == hat.q;
    if (r.gamma < rep.min_gamma) {
      rep.min_gamma = r.gamma;
      rep.min_gamma_k = r.k;
    }
    if (p.is_primary) {
      rep.min_primary_gamma = std::min(rep.min_primary_gamma, r.gamma);
      if (r.gamma < gm || r.gamma > gp) {
        ++rep.primary_exceptions;
        rep.primary_exception_n.push_back(r.n);
      }
    }
    rep.points.push_back(p);
  }
  std::sort(rep.primary_exception_n.begin(), rep.primary_exception_n.end());
  return rep;
}

}  // namespace cubicsplit
