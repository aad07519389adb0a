#pragma once

#include <string>

#include "cubicsplit/numeric.hpp"

namespace cubicsplit {

/// Element c0 + c1*Omega + c2*Omega^2 of Q(Omega).
struct FieldElement {
  RatVec3 c{};

  static FieldElement rational(const Rational& q) { return {{q, Rational(0), Rational(0)}}; }
  bool is_zero() const { return c[0] == 0 && c[1] == 0 && c[2] == 0; }
  bool is_rational() const { return c[1] == 0 && c[2] == 0; }
  friend bool operator==(const FieldElement& a, const FieldElement& b) { return a.c == b.c; }
};

FieldElement operator+(const FieldElement& a, const FieldElement& b);
FieldElement operator-(const FieldElement& a, const FieldElement& b);
FieldElement operator-(const FieldElement& a);
FieldElement operator*(const Rational& s, const FieldElement& a);
std::string to_string(const FieldElement& x);

/// Omega^3 = r0 + r1*Omega + r2*Omega^2, Omega~ = a0 + a1*Omega + a2*Omega^2.
struct FieldSpec {
  Rational r0, r1, r2;
  Rational a0, a1, a2;
};

class CubicField {
 public:
  /// Empty placeholder; only create() yields a usable field.
  CubicField() = default;

  /// Validates the polynomial (a2 != 0, irreducible, negative discriminant)
  /// and computes the embeddings to `precision_digits` (Omega is kept to
  /// twice that).
  static CubicField create(const FieldSpec& spec, unsigned precision_digits = kDefaultPrecisionDigits);

  CubicField with_sign(int s) const;

  const FieldSpec& spec() const { return spec_; }
  const Rational& r(int i) const;
  const Rational& a(int i) const;
  const Rational& discriminant() const { return discriminant_; }
  unsigned precision() const { return precision_; }
  int sign_s() const { return sign_s_; }

  Real omega() const;
  Real omega_tilde() const;
  Real sigma2() const;
  Real sigma3() const;
  /// Omega to at least `digits` significant digits (Newton refinement of the
  /// stored root when more than the stored precision is requested).
  Real omega_at(unsigned digits) const;

  FieldElement one() const { return FieldElement::rational(1); }
  FieldElement omega_elem() const { return {{Rational(0), Rational(1), Rational(0)}}; }
  FieldElement omega_tilde_elem() const { return {{spec_.a0, spec_.a1, spec_.a2}}; }
  /// Component i (0-based) of the frequency vector (1, Omega, Omega~).
  FieldElement omega_component(int i) const;
  /// <k, omega> = k1 + k2*Omega + k3*Omega~.
  FieldElement dot(const IntVec3& k) const;
  RealVec3 omega_vec() const;

  FieldElement mul(const FieldElement& x, const FieldElement& y) const;
  FieldElement inv(const FieldElement& x) const;
  FieldElement div(const FieldElement& x, const FieldElement& y) const { return mul(x, inv(y)); }
  FieldElement pow(const FieldElement& x, long n) const;
  /// Columns are the coordinates of x, x*Omega, x*Omega^2.
  RatMatrix3 mult_matrix(const FieldElement& x) const;
  Rational norm(const FieldElement& x) const;
  Rational trace(const FieldElement& x) const;
  /// Minimal polynomial applied to x.
  FieldElement min_poly(const FieldElement& x) const;

  Real embed_real(const FieldElement& x) const;
  ComplexReal embed_complex(const FieldElement& x) const;

  /// Exact sign of the real embedding (adaptive precision, never guesses).
  int sign(const FieldElement& x) const;
  int compare(const FieldElement& x, const FieldElement& y) const { return sign(x - y); }
  /// Nearest integer to the real embedding; throws HalfIntegerTie on an exact
  /// half-integer.
  Integer round(const FieldElement& x) const;
  Integer floor(const FieldElement& x) const;

 private:
  Real eval_at(const FieldElement& x, const Real& omega) const;

  FieldSpec spec_;
  Rational discriminant_;
  unsigned precision_ = kDefaultPrecisionDigits;
  int sign_s_ = 1;
  Real omega_;
  double omega_double_ = 0;
  Real sigma2_;
  Real sigma3_abs_;
};

Rational discriminant(const Rational& r0, const Rational& r1, const Rational& r2);
/// A rational root of x^3 - r2 x^2 - r1 x - r0 if one exists.
bool find_rational_root(const Rational& r0, const Rational& r1, const Rational& r2, Rational* root);

}  // namespace cubicsplit
