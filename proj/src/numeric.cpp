#include "cubicsplit/numeric.hpp"

#include <cctype>

#include <Eigen/Dense>

#include "cubicsplit/error.hpp"

namespace cubicsplit {

PrecisionScope::PrecisionScope(unsigned digits10) : saved_(Real::default_precision()) {
  Real::default_precision(digits10);
}

PrecisionScope::~PrecisionScope() { Real::default_precision(saved_); }

namespace {

Integer parse_integer(std::string_view s, std::string_view whole) {
  if (s.empty()) throw Error(ErrorCode::ConfigParseError, "empty number in '" + std::string(whole) + "'");
  std::size_t i = 0;
  if (s[0] == '+' || s[0] == '-') ++i;
  if (i == s.size()) throw Error(ErrorCode::ConfigParseError, "bad number '" + std::string(whole) + "'");
  for (std::size_t j = i; j < s.size(); ++j)
    if (!std::isdigit(static_cast<unsigned char>(s[j])))
      throw Error(ErrorCode::ConfigParseError, "bad number '" + std::string(whole) + "'");
  // Leading zeros would switch the Boost string parser to octal.
  bool negative = s[0] == '-';
  std::size_t first = s.find_first_not_of('0', i);
  if (first == std::string_view::npos) return Integer(0);
  Integer v(std::string(s.substr(first)));
  return negative ? Integer(-v) : v;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

}  // namespace

Rational parse_rational(std::string_view text) {
  std::string_view s = trim(text);
  if (auto slash = s.find('/'); slash != std::string_view::npos) {
    Integer p = parse_integer(trim(s.substr(0, slash)), text);
    Integer q = parse_integer(trim(s.substr(slash + 1)), text);
    if (q == 0) throw Error(ErrorCode::ConfigParseError, "zero denominator in '" + std::string(text) + "'");
    return Rational(p, q);
  }
  if (auto dot = s.find('.'); dot != std::string_view::npos) {
    std::string_view head = s.substr(0, dot);
    std::string_view tail = s.substr(dot + 1);
    bool negative = !head.empty() && head[0] == '-';
    std::string_view mag = (!head.empty() && (head[0] == '-' || head[0] == '+')) ? head.substr(1) : head;
    std::string joined = std::string(mag) + std::string(tail);
    if (joined.empty()) throw Error(ErrorCode::ConfigParseError, "bad number '" + std::string(text) + "'");
    Integer num = parse_integer(joined, text);
    Integer den = boost::multiprecision::pow(Integer(10), static_cast<unsigned>(tail.size()));
    Rational r(num, den);
    return negative ? Rational(-r) : r;
  }
  return Rational(parse_integer(s, text));
}

std::string to_string(const Rational& value) {
  if (denominator(value) == 1) return numerator(value).str();
  return numerator(value).str() + "/" + denominator(value).str();
}

std::string to_string(const Integer& value) { return value.str(); }

std::string to_string(const Real& value, unsigned digits) {
  return value.str(static_cast<std::streamsize>(digits), std::ios_base::scientific);
}

Real to_real(const Rational& value) {
  Real r;
  mpfr_set_q(r.backend().data(), value.backend().data(), MPFR_RNDN);
  return r;
}

Real pi() {
  Real r;
  mpfr_const_pi(r.backend().data(), MPFR_RNDN);
  return r;
}

ComplexReal operator+(const ComplexReal& a, const ComplexReal& b) {
  return {a.re + b.re, a.im + b.im};
}

ComplexReal operator*(const ComplexReal& a, const ComplexReal& b) {
  return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
}

ComplexReal operator*(const Real& s, const ComplexReal& a) { return {s * a.re, s * a.im}; }

ComplexReal inverse(const ComplexReal& a) {
  Real d = a.re * a.re + a.im * a.im;
  return {a.re / d, -a.im / d};
}

Real abs(const ComplexReal& a) { return boost::multiprecision::hypot(a.re, a.im); }

Real arg(const ComplexReal& a) { return boost::multiprecision::atan2(a.im, a.re); }

Real dot(const RealVec3& a, const RealVec3& b) { return a[0] * b[0] + a[1] * b[1] + a[2] * b[2]; }

Real norm(const RealVec3& a) { return boost::multiprecision::sqrt(dot(a, a)); }

Real dot(const IntVec3& k, const RealVec3& v) {
  return Real(k[0]) * v[0] + Real(k[1]) * v[1] + Real(k[2]) * v[2];
}

Integer norm_sq(const IntVec3& k) { return k[0] * k[0] + k[1] * k[1] + k[2] * k[2]; }

Integer gcd3(const IntVec3& k) {
  Integer g = boost::multiprecision::gcd(k[0], k[1]);
  return boost::multiprecision::gcd(g, k[2]);
}

IntVec3 negate(const IntVec3& k) { return {Integer(-k[0]), Integer(-k[1]), Integer(-k[2])}; }

RatMatrix3 identity_rat() {
  RatMatrix3 m{};
  for (int i = 0; i < 3; ++i) m[i][i] = 1;
  return m;
}

RatMatrix3 mul(const RatMatrix3& a, const RatMatrix3& b) {
  RatMatrix3 c{};
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      for (int k = 0; k < 3; ++k) c[i][j] += a[i][k] * b[k][j];
  return c;
}

RatMatrix3 add(const RatMatrix3& a, const RatMatrix3& b) {
  RatMatrix3 c{};
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) c[i][j] = a[i][j] + b[i][j];
  return c;
}

RatMatrix3 scale(const Rational& s, const RatMatrix3& a) {
  RatMatrix3 c{};
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) c[i][j] = s * a[i][j];
  return c;
}

RatMatrix3 transpose(const RatMatrix3& a) {
  RatMatrix3 c{};
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) c[i][j] = a[j][i];
  return c;
}

template <class M>
static auto det3(const M& a) {
  return a[0][0] * (a[1][1] * a[2][2] - a[1][2] * a[2][1]) -
         a[0][1] * (a[1][0] * a[2][2] - a[1][2] * a[2][0]) +
         a[0][2] * (a[1][0] * a[2][1] - a[1][1] * a[2][0]);
}

Rational det(const RatMatrix3& a) { return Rational(det3(a)); }

RatMatrix3 inverse(const RatMatrix3& a) {
  Rational d = det(a);
  if (d == 0) throw Error(ErrorCode::ZeroElement, "singular matrix");
  RatMatrix3 c{};
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) {
      int r0 = (j + 1) % 3, r1 = (j + 2) % 3;
      int c0 = (i + 1) % 3, c1 = (i + 2) % 3;
      c[i][j] = (a[r0][c0] * a[r1][c1] - a[r0][c1] * a[r1][c0]) / d;
    }
  }
  return c;
}

RatVec3 solve(const RatMatrix3& a, const RatVec3& b) {
  RatMatrix3 m = a;
  RatVec3 x = b;
  for (int col = 0; col < 3; ++col) {
    int piv = col;
    while (piv < 3 && m[piv][col] == 0) ++piv;
    if (piv == 3) throw Error(ErrorCode::ZeroElement, "singular system");
    std::swap(m[piv], m[col]);
    std::swap(x[piv], x[col]);
    for (int r = 0; r < 3; ++r) {
      if (r == col || m[r][col] == 0) continue;
      Rational f = m[r][col] / m[col][col];
      for (int c = col; c < 3; ++c) m[r][c] -= f * m[col][c];
      x[r] -= f * x[col];
    }
  }
  for (int i = 0; i < 3; ++i) x[i] /= m[i][i];
  return x;
}

bool is_integral(const RatMatrix3& a) {
  for (const auto& row : a)
    for (const auto& v : row)
      if (denominator(v) != 1) return false;
  return true;
}

IntMatrix3 identity_int() {
  IntMatrix3 m{};
  for (int i = 0; i < 3; ++i) m[i][i] = 1;
  return m;
}

IntMatrix3 to_integer(const RatMatrix3& a) {
  IntMatrix3 c{};
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      if (denominator(a[i][j]) != 1) throw Error(ErrorCode::InternalFault, "matrix entry is not an integer");
      c[i][j] = numerator(a[i][j]);
    }
  return c;
}

RatMatrix3 to_rational(const IntMatrix3& a) {
  RatMatrix3 c{};
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) c[i][j] = Rational(a[i][j]);
  return c;
}

IntMatrix3 mul(const IntMatrix3& a, const IntMatrix3& b) {
  IntMatrix3 c{};
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      for (int k = 0; k < 3; ++k) c[i][j] += a[i][k] * b[k][j];
  return c;
}

IntMatrix3 transpose(const IntMatrix3& a) {
  IntMatrix3 c{};
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) c[i][j] = a[j][i];
  return c;
}

IntMatrix3 negate(const IntMatrix3& a) {
  IntMatrix3 c{};
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) c[i][j] = -a[i][j];
  return c;
}

Integer det(const IntMatrix3& a) { return Integer(det3(a)); }

IntVec3 apply(const IntMatrix3& a, const IntVec3& k) {
  IntVec3 r{};
  for (int i = 0; i < 3; ++i) r[i] = a[i][0] * k[0] + a[i][1] * k[1] + a[i][2] * k[2];
  return r;
}

RealVec3 apply(const RatMatrix3& a, const RealVec3& v) {
  RealVec3 r{};
  for (int i = 0; i < 3; ++i)
    r[i] = to_real(a[i][0]) * v[0] + to_real(a[i][1]) * v[1] + to_real(a[i][2]) * v[2];
  return r;
}

double operator_norm(const IntMatrix3& a) {
  Eigen::Matrix3d m;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) m(i, j) = a[i][j].convert_to<double>();
  Eigen::JacobiSVD<Eigen::Matrix3d> svd(m);
  return svd.singularValues()(0);
}

}  // namespace cubicsplit
