#pragma once

#include <array>
#include <optional>
#include <vector>

#include "cubicsplit/koch.hpp"

namespace cubicsplit {

using IntVec2 = std::array<Integer, 2>;

struct QuasiResonance {
  IntVec3 k;
  FieldElement divisor_exact;
  Real divisor;
  Real gamma_k;
  Integer norm_sq;
};

/// Divisor and numerator of k; throws NonPositiveInputs unless |<k,omega>| < 1/2.
QuasiResonance quasi_resonance(const CubicField& field, const IntVec3& k);

struct OscillationConstants {
  Real Z1, Z2, theta, delta;
  FieldElement Z1_exact;
  FieldElement delta_sq_exact;
  FieldElement W_exact;  // <omega, u1>
  Rational W_norm;
  Real Q0;
  // |u2|^2 - |u3|^2 and <u2,u3> recomputed from the closed-form c_j, d_j.
  Real cd_residual;
};

OscillationConstants oscillation_constants(const KochData& koch);

struct SequenceInvariants {
  Real y, z;
  Real E, psi, K;
  Real gamma_star;
  FieldElement E_sq_exact;
  FieldElement gamma_star_exact;
};

SequenceInvariants sequence_invariants(const KochData& koch, const OscillationConstants& osc,
                                       const IntVec3& k0, const FieldElement& r_exact);

struct PrimitiveRecord {
  IntVec2 q;
  Integer p;
  IntVec3 k0;
  FieldElement r_exact;
  Real r;
  bool essential = false;
  SequenceInvariants inv;
  Real gamma_minus, gamma_plus;
  FieldElement gamma_star_norm_exact;
  Real gamma_star_norm;
};

/// k0(q) = (-p, q1, q2) with p the nearest integer to q1*Omega + q2*Omega~.
QuasiResonance k0_of(const CubicField& field, const IntVec2& q);

bool is_primitive(const CubicField& field, const FieldElement& lambda, const IntVec3& k);
bool in_half_plane(const IntVec2& q);
/// Half-space of integer vectors used to pick one of +-k.
bool in_half_space(const IntVec3& k);

/// All primitives with gamma_minus <= gamma_cut, sorted by gamma_star (exact)
/// then lexicographically by q. gamma_star_norm is relative to the first.
std::vector<PrimitiveRecord> enumerate_primitives(const KochData& koch, const OscillationConstants& osc,
                                                  double gamma_cut);

/// Radius in q beyond which no primitive can have gamma_minus <= gamma_cut.
double primitive_radius(const KochData& koch, const OscillationConstants& osc, double gamma_cut);

struct SequenceSample {
  long n = 0;
  IntVec3 k;
  Real gamma;
  Real b_model;
  Integer norm_sq;
};

/// s(q,n) = U^n k0(q) for n = 0..n_max.
std::vector<SequenceSample> sequence(const KochData& koch, const OscillationConstants& osc,
                                     const PrimitiveRecord& rec, long n_max);

Real b_model(const KochData& koch, const OscillationConstants& osc, const SequenceInvariants& inv, long n);

struct ResonanceConstants {
  IntVec2 q_hat;
  IntVec2 q_hathat;
  bool primary_tie = false;
  Real gamma_star;
  Real gamma_minus;
  Real gamma_plus;
  Real K_hat;
  Real psi_hat;
  Real gamma_star_norm_hathat;
  Real J0_plus;
  Real B0_minus;
  bool weak_sep = false;
};

ResonanceConstants classify(const KochData& koch, const OscillationConstants& osc,
                            const std::vector<PrimitiveRecord>& primitives);

struct ScanPoint {
  IntVec3 k;
  double ln_norm;
  double neg_ln_divisor;
  double gamma;
  IntVec2 q;
  long n;
  int sign;  // k = sign * s(q, n)
  long sequence_id;
  bool is_primary;
};

struct ScanReport {
  long k_max = 0;
  std::vector<ScanPoint> points;
  std::vector<PrimitiveRecord> primitives;  // sequence_id indexes this list
  bool coverage_ok = false;
  std::vector<IntVec2> unmatched;
  double min_gamma = 0;
  IntVec3 min_gamma_k;
  double min_primary_gamma = 0;
  long primary_exceptions = 0;  // primary points outside the gamma-/gamma+ band
  std::vector<long> primary_exception_n;
  double line_minus_intercept = 0;  // y = 2x - ln(gamma-)
  double line_plus_intercept = 0;   // y = 2x - ln(gamma+)
};

ScanReport brute_scan(const KochData& koch, const OscillationConstants& osc, long k_max);

}  // namespace cubicsplit
