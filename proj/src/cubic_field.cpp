#include "cubicsplit/cubic_field.hpp"

#include <cmath>

#include "cubicsplit/error.hpp"

namespace cubicsplit {

namespace mp = boost::multiprecision;

FieldElement operator+(const FieldElement& a, const FieldElement& b) {
  return {{a.c[0] + b.c[0], a.c[1] + b.c[1], a.c[2] + b.c[2]}};
}

FieldElement operator-(const FieldElement& a, const FieldElement& b) {
  return {{a.c[0] - b.c[0], a.c[1] - b.c[1], a.c[2] - b.c[2]}};
}

FieldElement operator-(const FieldElement& a) {
  return {{Rational(-a.c[0]), Rational(-a.c[1]), Rational(-a.c[2])}};
}

FieldElement operator*(const Rational& s, const FieldElement& a) {
  return {{s * a.c[0], s * a.c[1], s * a.c[2]}};
}

std::string to_string(const FieldElement& x) {
  return "(" + to_string(x.c[0]) + ", " + to_string(x.c[1]) + ", " + to_string(x.c[2]) + ")";
}

Rational discriminant(const Rational& r0, const Rational& r1, const Rational& r2) {
  return 4 * r1 * r1 * r1 + r1 * r1 * r2 * r2 - 27 * r0 * r0 - 18 * r0 * r1 * r2 -
         4 * r0 * r2 * r2 * r2;
}

namespace {

Integer lcm(const Integer& a, const Integer& b) { return a / mp::gcd(a, b) * b; }

struct IntCubic {
  Integer b2, b1, b0;
  Integer operator()(const Integer& y) const { return ((y + b2) * y + b1) * y + b0; }
};

bool search_monotone(const IntCubic& f, Integer lo, Integer hi, Integer* root) {
  if (lo > hi) return false;
  Integer flo = f(lo), fhi = f(hi);
  if (flo == 0) { *root = lo; return true; }
  if (fhi == 0) { *root = hi; return true; }
  if ((flo > 0) == (fhi > 0)) return false;
  while (hi - lo > 1) {
    Integer mid = (lo + hi) / 2;
    Integer fm = f(mid);
    if (fm == 0) { *root = mid; return true; }
    if ((fm > 0) == (flo > 0)) lo = mid; else hi = mid;
  }
  return false;
}

}  // namespace

bool find_rational_root(const Rational& r0, const Rational& r1, const Rational& r2, Rational* root) {
  // Substituting x = y/L gives a monic integer cubic whose rational roots are
  // integers; they are located exactly on the monotone pieces.
  Integer L = lcm(lcm(denominator(r0), denominator(r1)), denominator(r2));
  Rational Lq(L);
  IntCubic f{numerator(Rational(-Lq * r2)), numerator(Rational(-Lq * Lq * r1)),
             numerator(Rational(-Lq * Lq * Lq * r0))};
  Integer bound = 1 + mp::max(mp::abs(f.b2), mp::max(mp::abs(f.b1), mp::abs(f.b0)));
  Integer y;
  auto found = [&](const Integer& v) {
    *root = Rational(v, L);
    return true;
  };
  Integer d = f.b2 * f.b2 - 3 * f.b1;
  if (d <= 0) {
    if (search_monotone(f, -bound, bound, &y)) return found(y);
    return false;
  }
  Integer s = mp::sqrt(d);
  Integer c1 = (-f.b2 - s) / 3, c2 = (-f.b2 + s) / 3;
  for (const Integer& c : {c1, c2})
    for (int k = -3; k <= 3; ++k)
      if (f(c + k) == 0) return found(c + k);
  if (search_monotone(f, -bound, c1 - 3, &y)) return found(y);
  if (search_monotone(f, c1 + 3, c2 - 3, &y)) return found(y);
  if (search_monotone(f, c2 + 3, bound, &y)) return found(y);
  return false;
}

namespace {

Real cubic_value(const FieldSpec& s, const Real& x) {
  return ((x - to_real(s.r2)) * x - to_real(s.r1)) * x - to_real(s.r0);
}

Real cubic_slope(const FieldSpec& s, const Real& x) {
  return (3 * x - 2 * to_real(s.r2)) * x - to_real(s.r1);
}

double cardano_seed(const FieldSpec& s) {
  double a = -s.r2.convert_to<double>();
  double b = -s.r1.convert_to<double>();
  double c = -s.r0.convert_to<double>();
  double p = b - a * a / 3.0;
  double q = 2.0 * a * a * a / 27.0 - a * b / 3.0 + c;
  double disc = q * q / 4.0 + p * p * p / 27.0;
  double sq = std::sqrt(std::max(disc, 0.0));
  return std::cbrt(-q / 2.0 + sq) + std::cbrt(-q / 2.0 - sq) - a / 3.0;
}

// Safeguarded Newton on the unique real root; runs at the current default
// precision.
Real refine_root(const FieldSpec& s, const Real& seed, unsigned digits) {
  Real bound = 1 + mp::max(mp::abs(to_real(s.r0)), mp::max(mp::abs(to_real(s.r1)), mp::abs(to_real(s.r2))));
  Real lo = -bound, hi = bound;
  Real x = seed;
  if (!(x > lo && x < hi)) x = 0;
  Real tol = mp::pow(Real(10), -static_cast<int>(digits));
  int settled = 0;
  for (int it = 0; it < 4000 && settled < 2; ++it) {
    Real fx = cubic_value(s, x);
    if (fx == 0) break;
    if (fx < 0) lo = x; else hi = x;
    Real dfx = cubic_slope(s, x);
    Real next;
    if (dfx != 0) next = x - fx / dfx;
    if (dfx == 0 || !(next > lo && next < hi)) next = (lo + hi) / 2;
    if (mp::abs(next - x) <= tol * mp::max(Real(1), mp::abs(x))) ++settled; else settled = 0;
    x = next;
  }
  return x;
}

}  // namespace

CubicField CubicField::create(const FieldSpec& spec, unsigned precision_digits) {
  if (spec.a2 == 0) throw Error(ErrorCode::ZeroA2, "a2 must be nonzero");
  Rational root;
  if (find_rational_root(spec.r0, spec.r1, spec.r2, &root))
    throw Error(ErrorCode::RationalRootFound,
                "minimal polynomial has the rational root " + to_string(root));
  Rational disc = cubicsplit::discriminant(spec.r0, spec.r1, spec.r2);
  if (disc >= 0)
    throw Error(ErrorCode::NonNegativeDiscriminant, "discriminant " + to_string(disc) + " is not negative");

  CubicField f;
  f.spec_ = spec;
  f.discriminant_ = disc;
  f.precision_ = std::max(precision_digits, 10u);
  unsigned stored = 2 * f.precision_ + 10;
  PrecisionScope scope(stored);
  double seed = cardano_seed(spec);
  f.omega_ = refine_root(spec, std::isfinite(seed) ? Real(seed) : Real(0), stored);
  f.omega_double_ = f.omega_.convert_to<double>();
  const Real& w = f.omega_;
  Real r2 = to_real(spec.r2), r1 = to_real(spec.r1);
  f.sigma2_ = (r2 - w) / 2;
  Real s3sq = (-(4 * r1 + r2 * r2) - 2 * r2 * w + 3 * w * w) / 4;
  if (s3sq <= 0) throw Error(ErrorCode::InternalFault, "imaginary part of the complex root vanished");
  f.sigma3_abs_ = mp::sqrt(s3sq);
  return f;
}

CubicField CubicField::with_sign(int s) const {
  CubicField f = *this;
  f.sign_s_ = s < 0 ? -1 : 1;
  return f;
}

const Rational& CubicField::r(int i) const {
  return i == 0 ? spec_.r0 : i == 1 ? spec_.r1 : spec_.r2;
}

const Rational& CubicField::a(int i) const {
  return i == 0 ? spec_.a0 : i == 1 ? spec_.a1 : spec_.a2;
}

Real CubicField::omega() const {
  PrecisionScope scope(precision_);
  return Real(omega_);
}

Real CubicField::omega_tilde() const { return embed_real(omega_tilde_elem()); }

Real CubicField::sigma2() const {
  PrecisionScope scope(precision_);
  return Real(sigma2_);
}

Real CubicField::sigma3() const {
  PrecisionScope scope(precision_);
  return sign_s_ * sigma3_abs_;
}

Real CubicField::omega_at(unsigned digits) const {
  unsigned stored = 2 * precision_ + 10;
  if (digits <= stored) return omega_;
  PrecisionScope scope(digits + 10);
  return refine_root(spec_, Real(omega_), digits + 5);
}

FieldElement CubicField::omega_component(int i) const {
  if (i == 0) return one();
  if (i == 1) return omega_elem();
  return omega_tilde_elem();
}

FieldElement CubicField::dot(const IntVec3& k) const {
  return FieldElement::rational(Rational(k[0])) + Rational(k[1]) * omega_elem() +
         Rational(k[2]) * omega_tilde_elem();
}

RealVec3 CubicField::omega_vec() const {
  PrecisionScope scope(precision_);
  return {Real(1), Real(omega_), omega_tilde()};
}

FieldElement CubicField::mul(const FieldElement& x, const FieldElement& y) const {
  const auto& a = x.c;
  const auto& b = y.c;
  Rational p0 = a[0] * b[0];
  Rational p1 = a[0] * b[1] + a[1] * b[0];
  Rational p2 = a[0] * b[2] + a[1] * b[1] + a[2] * b[0];
  Rational p3 = a[1] * b[2] + a[2] * b[1];
  Rational p4 = a[2] * b[2];
  const Rational &r0 = spec_.r0, &r1 = spec_.r1, &r2 = spec_.r2;
  // Omega^3 = r0 + r1 W + r2 W^2, Omega^4 = r2 r0 + (r0 + r2 r1) W + (r1 + r2^2) W^2.
  return {{p0 + p3 * r0 + p4 * r2 * r0, p1 + p3 * r1 + p4 * (r0 + r2 * r1),
           p2 + p3 * r2 + p4 * (r1 + r2 * r2)}};
}

RatMatrix3 CubicField::mult_matrix(const FieldElement& x) const {
  RatMatrix3 m{};
  FieldElement col = x;
  for (int j = 0; j < 3; ++j) {
    for (int i = 0; i < 3; ++i) m[i][j] = col.c[i];
    col = mul(col, omega_elem());
  }
  return m;
}

FieldElement CubicField::inv(const FieldElement& x) const {
  if (x.is_zero()) throw Error(ErrorCode::ZeroElement, "inverse of zero");
  return {solve(mult_matrix(x), {Rational(1), Rational(0), Rational(0)})};
}

FieldElement CubicField::pow(const FieldElement& x, long n) const {
  FieldElement base = n < 0 ? inv(x) : x;
  unsigned long e = n < 0 ? static_cast<unsigned long>(-n) : static_cast<unsigned long>(n);
  FieldElement acc = one();
  while (e) {
    if (e & 1) acc = mul(acc, base);
    e >>= 1;
    if (e) base = mul(base, base);
  }
  return acc;
}

Rational CubicField::norm(const FieldElement& x) const { return det(mult_matrix(x)); }

Rational CubicField::trace(const FieldElement& x) const {
  RatMatrix3 m = mult_matrix(x);
  return m[0][0] + m[1][1] + m[2][2];
}

FieldElement CubicField::min_poly(const FieldElement& x) const {
  FieldElement x2 = mul(x, x);
  FieldElement x3 = mul(x2, x);
  return x3 - spec_.r2 * x2 - spec_.r1 * x - FieldElement::rational(spec_.r0);
}

Real CubicField::eval_at(const FieldElement& x, const Real& w) const {
  return to_real(x.c[0]) + (to_real(x.c[1]) + to_real(x.c[2]) * w) * w;
}

Real CubicField::embed_real(const FieldElement& x) const {
  PrecisionScope scope(precision_);
  return eval_at(x, omega_);
}

ComplexReal CubicField::embed_complex(const FieldElement& x) const {
  PrecisionScope scope(precision_);
  ComplexReal w{sigma2_, sign_s_ * sigma3_abs_};
  ComplexReal acc{to_real(x.c[2]), Real(0)};
  acc = acc * w + ComplexReal{to_real(x.c[1]), Real(0)};
  acc = acc * w + ComplexReal{to_real(x.c[0]), Real(0)};
  return acc;
}

int CubicField::sign(const FieldElement& x) const {
  if (x.is_zero()) return 0;
  if (x.is_rational()) return x.c[0] > 0 ? 1 : -1;
  {
    // Double evaluation with a generous rounding bound settles most cases.
    double w = omega_double_;
    double t0 = x.c[0].convert_to<double>(), t1 = x.c[1].convert_to<double>() * w,
           t2 = x.c[2].convert_to<double>() * w * w;
    double v = t0 + t1 + t2;
    double bound = 1e-13 * (std::abs(t0) + std::abs(t1) + std::abs(t2));
    if (std::isfinite(v) && std::isfinite(bound) && std::abs(v) > bound && bound > 0) return v > 0 ? 1 : -1;
  }
  for (unsigned digits = precision_; digits <= 4096; digits *= 2) {
    Real w = omega_at(digits + 10);
    PrecisionScope scope(digits + 10);
    Real v = eval_at(x, w);
    Real scale = 1 + mp::abs(to_real(x.c[0])) + mp::abs(to_real(x.c[1])) + mp::abs(to_real(x.c[2]));
    Real wmag = 1 + mp::abs(w);
    Real bound = scale * wmag * wmag * mp::pow(Real(10), -static_cast<int>(digits));
    if (mp::abs(v) > bound) return v > 0 ? 1 : -1;
  }
  throw Error(ErrorCode::InternalFault, "sign undecided at 4096 digits for " + to_string(x));
}

Integer CubicField::floor(const FieldElement& x) const {
  // Start from a float estimate and correct by exact comparisons.
  Integer n;
  {
    PrecisionScope scope(precision_ + 10);
    Real v = eval_at(x, omega_);
    n = mp::floor(v).convert_to<Integer>();
  }
  while (sign(x - FieldElement::rational(Rational(n))) < 0) --n;
  while (sign(x - FieldElement::rational(Rational(n + 1))) >= 0) ++n;
  return n;
}

Integer CubicField::round(const FieldElement& x) const {
  FieldElement shifted = x + FieldElement::rational(Rational(1, 2));
  if (x.is_rational() && denominator(shifted.c[0]) == 1)
    throw Error(ErrorCode::HalfIntegerTie, "value " + to_string(x) + " is a half-integer");
  return floor(shifted);
}

}  // namespace cubicsplit
