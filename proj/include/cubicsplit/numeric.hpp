#pragma once

#include <array>
#include <string>
#include <string_view>

#include <boost/multiprecision/gmp.hpp>
#include <boost/multiprecision/mpfr.hpp>

namespace cubicsplit {

using Integer = boost::multiprecision::mpz_int;
using Rational = boost::multiprecision::mpq_rational;
using Real = boost::multiprecision::mpfr_float;

using IntVec3 = std::array<Integer, 3>;
using IntMatrix3 = std::array<IntVec3, 3>;
using RatVec3 = std::array<Rational, 3>;
using RatMatrix3 = std::array<RatVec3, 3>;
using RealVec3 = std::array<Real, 3>;

inline constexpr unsigned kDefaultPrecisionDigits = 30;

// mpfr_float temporaries take the process-wide default precision. Every
// public entry point that does Real arithmetic opens one of these.
class PrecisionScope {
 public:
  explicit PrecisionScope(unsigned digits10);
  ~PrecisionScope();
  PrecisionScope(const PrecisionScope&) = delete;
  PrecisionScope& operator=(const PrecisionScope&) = delete;

 private:
  unsigned saved_;
};

/// Parses "p/q", "p" or a terminating decimal such as "-0.25".
Rational parse_rational(std::string_view text);
std::string to_string(const Rational& value);
std::string to_string(const Integer& value);
/// Decimal rendering with `digits` significant digits.
std::string to_string(const Real& value, unsigned digits);

Real to_real(const Rational& value);
Real pi();

struct ComplexReal {
  Real re;
  Real im;
};

ComplexReal operator+(const ComplexReal& a, const ComplexReal& b);
ComplexReal operator*(const ComplexReal& a, const ComplexReal& b);
ComplexReal operator*(const Real& s, const ComplexReal& a);
ComplexReal inverse(const ComplexReal& a);
Real abs(const ComplexReal& a);
/// Argument in (-pi, pi].
Real arg(const ComplexReal& a);

Real dot(const RealVec3& a, const RealVec3& b);
Real norm(const RealVec3& a);
Real dot(const IntVec3& k, const RealVec3& v);

Integer norm_sq(const IntVec3& k);
Integer gcd3(const IntVec3& k);
IntVec3 negate(const IntVec3& k);

// Small exact 3x3 linear algebra.
RatMatrix3 identity_rat();
RatMatrix3 mul(const RatMatrix3& a, const RatMatrix3& b);
RatMatrix3 add(const RatMatrix3& a, const RatMatrix3& b);
RatMatrix3 scale(const Rational& s, const RatMatrix3& a);
RatMatrix3 transpose(const RatMatrix3& a);
Rational det(const RatMatrix3& a);
/// Throws ZeroElement when singular.
RatMatrix3 inverse(const RatMatrix3& a);
/// Solves a x = b by exact Gaussian elimination.
RatVec3 solve(const RatMatrix3& a, const RatVec3& b);
bool is_integral(const RatMatrix3& a);

IntMatrix3 identity_int();
IntMatrix3 to_integer(const RatMatrix3& a);
RatMatrix3 to_rational(const IntMatrix3& a);
IntMatrix3 mul(const IntMatrix3& a, const IntMatrix3& b);
IntMatrix3 transpose(const IntMatrix3& a);
IntMatrix3 negate(const IntMatrix3& a);
Integer det(const IntMatrix3& a);
IntVec3 apply(const IntMatrix3& a, const IntVec3& k);
RealVec3 apply(const RatMatrix3& a, const RealVec3& v);

/// Operator norm subordinate to the Euclidean vector norm.
double operator_norm(const IntMatrix3& a);

}  // namespace cubicsplit
