#pragma once

#include <utility>
#include <vector>

#include "cubicsplit/cubic_field.hpp"

namespace cubicsplit {

struct KochData {
  CubicField field;  // sign_s fixed so that 0 < phi < 1
  IntMatrix3 T;
  IntMatrix3 U;  // (T^-1)^t
  FieldElement lambda_exact;
  Real lambda;
  Real mu2, mu3;
  Real phi;
  RealVec3 omega, v2, v3;
  RealVec3 u1, u2, u3;
  double kappa = 0;
  double t_norm = 0;  // operator norm |T|
};

struct KochSearchOptions {
  long norm_cap = 64;  // bound on the Euclidean norm of the first row
};

/// Unique matrix with first row t1 having omega as an eigenvector.
RatMatrix3 matrix_from_first_row(const CubicField& field, const RatVec3& t1);

/// Shortcut matrix r0 A R^{+-1} A^{-1}, defined when r_j, a_j are integers
/// and |r0| = |a2| = 1.
bool shortcut_koch(const CubicField& field, IntMatrix3* t);

KochData principal_koch(const CubicField& field, const KochSearchOptions& options = {});

/// Full data for a given unimodular T with omega as eigenvector.
KochData spectral_data(const CubicField& field, const IntMatrix3& t);

struct KochCandidate {
  IntMatrix3 T;
  FieldElement lambda;
};

/// Every unimodular integer matrix with |first row|^2 <= max_row_norm_sq that
/// has omega as an eigenvector with eigenvalue of modulus > 1.
std::vector<KochCandidate> koch_candidates(const CubicField& field, long max_row_norm_sq);

/// Real root of x^3 - x^2 - gamma/(4 kappa^2) above 1.
double lambda_floor(double gamma_lower, double kappa);

struct PhiReport {
  std::vector<Integer> partial_quotients;
  std::vector<std::pair<Integer, Integer>> convergents;  // (p, q), 0/1 omitted
  bool terminated = false;
};

PhiReport phi_rationality_report(const Real& phi, const Integer& max_denominator);

}  // namespace cubicsplit
