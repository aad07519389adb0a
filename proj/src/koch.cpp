#include "cubicsplit/koch.hpp"

#include <cmath>

#include <Eigen/Dense>

#include "cubicsplit/error.hpp"

namespace cubicsplit {

namespace mp = boost::multiprecision;

namespace {

RatMatrix3 matrix_a(const CubicField& f) {
  RatMatrix3 a = identity_rat();
  a[2] = {f.a(0), f.a(1), f.a(2)};
  return a;
}

RatMatrix3 matrix_r(const CubicField& f) {
  RatMatrix3 r{};
  r[0][1] = 1;
  r[1][2] = 1;
  r[2] = {f.r(0), f.r(1), f.r(2)};
  return r;
}

// Conjugates of R and of a0 + a1 R + a2 R^2 by A: T = t11 I + t12 P1 + t13 P2.
struct RowBasis {
  RatMatrix3 p1, p2;

  explicit RowBasis(const CubicField& f) {
    RatMatrix3 a = matrix_a(f), ainv = inverse(a), r = matrix_r(f);
    RatMatrix3 tl = add(add(scale(f.a(0), identity_rat()), scale(f.a(1), r)), scale(f.a(2), mul(r, r)));
    p1 = mul(mul(a, r), ainv);
    p2 = mul(mul(a, tl), ainv);
  }

  RatMatrix3 build(const RatVec3& t1) const {
    return add(add(scale(t1[0], identity_rat()), scale(t1[1], p1)), scale(t1[2], p2));
  }
};

FieldElement row_dot(const CubicField& f, const RatVec3& row) {
  return row[0] * f.one() + row[1] * f.omega_elem() + row[2] * f.omega_tilde_elem();
}

// Calls visit(row) for every integer vector with |row|^2 == n in lexicographic order.
template <class Visit>
bool for_each_in_shell(long n, Visit&& visit) {
  long r = static_cast<long>(std::sqrt(static_cast<double>(n))) + 1;
  for (long x = -r; x <= r; ++x) {
    for (long y = -r; y <= r; ++y) {
      long rem = n - x * x - y * y;
      if (rem < 0) continue;
      long z = static_cast<long>(std::llround(std::sqrt(static_cast<double>(rem))));
      while (z * z > rem) --z;
      while ((z + 1) * (z + 1) <= rem) ++z;
      if (z * z != rem) continue;
      if (z == 0) {
        if (visit(IntVec3{x, y, 0})) return true;
      } else {
        if (visit(IntVec3{x, y, -z})) return true;
        if (visit(IntVec3{x, y, z})) return true;
      }
    }
  }
  return false;
}

RatVec3 to_rat(const IntVec3& v) { return {Rational(v[0]), Rational(v[1]), Rational(v[2])}; }

bool lex_less(const IntMatrix3& a, const IntMatrix3& b) { return a[0] < b[0]; }

double condition_number(const RealVec3& c0, const RealVec3& c1, const RealVec3& c2) {
  Eigen::Matrix3d m;
  for (int i = 0; i < 3; ++i) {
    m(i, 0) = c0[i].convert_to<double>();
    m(i, 1) = c1[i].convert_to<double>();
    m(i, 2) = c2[i].convert_to<double>();
  }
  Eigen::JacobiSVD<Eigen::Matrix3d> svd(m);
  auto s = svd.singularValues();
  return s(0) / s(2);
}

}  // namespace

RatMatrix3 matrix_from_first_row(const CubicField& field, const RatVec3& t1) {
  return RowBasis(field).build(t1);
}

bool shortcut_koch(const CubicField& field, IntMatrix3* t) {
  for (int i = 0; i < 3; ++i)
    if (denominator(field.r(i)) != 1 || denominator(field.a(i)) != 1) return false;
  if (mp::abs(field.r(0)) != 1 || mp::abs(field.a(2)) != 1) return false;
  RatMatrix3 a = matrix_a(field), ainv = inverse(a), r = matrix_r(field);
  FieldElement abs_omega = field.sign(field.omega_elem()) < 0 ? -field.omega_elem() : field.omega_elem();
  RatMatrix3 core = field.compare(abs_omega, field.one()) > 0 ? r : inverse(r);
  RatMatrix3 m = scale(field.r(0), mul(mul(a, core), ainv));
  if (!is_integral(m)) return false;
  *t = to_integer(m);
  return true;
}

namespace {

struct Best {
  bool found = false;
  IntMatrix3 t;
  FieldElement lambda;
};

void consider(const CubicField& f, const IntMatrix3& t, Best* best) {
  if (det(t) != 1) return;
  FieldElement lam = row_dot(f, to_rat(t[0]));
  if (f.compare(lam, f.one()) <= 0) return;
  // Eigenvector check: every row must satisfy <T_i, omega> = lambda omega_i.
  for (int i = 1; i < 3; ++i)
    if (!(row_dot(f, to_rat(t[i])) == f.mul(lam, f.omega_component(i)))) return;
  if (!best->found) {
    *best = {true, t, lam};
    return;
  }
  int c = f.compare(lam, best->lambda);
  if (c < 0 || (c == 0 && lex_less(t, best->t))) *best = {true, t, lam};
}

}  // namespace

KochData principal_koch(const CubicField& field, const KochSearchOptions& options) {
  RowBasis basis(field);
  Best best;
  IntMatrix3 sc;
  double limit_sq = -1;
  if (shortcut_koch(field, &sc)) {
    consider(field, sc, &best);
    if (best.found) limit_sq = std::pow(operator_norm(best.t), 2);
  }
  long cap_sq = options.norm_cap * options.norm_cap;
  for (long n = 1; n <= cap_sq; ++n) {
    if (limit_sq >= 0 && static_cast<double>(n) > limit_sq + 1e-9) break;
    for_each_in_shell(n, [&](const IntVec3& row) {
      RatMatrix3 m = basis.build(to_rat(row));
      if (!is_integral(m)) return false;
      bool had = best.found;
      consider(field, to_integer(m), &best);
      if (!had && best.found) limit_sq = std::pow(operator_norm(best.t), 2);
      return false;
    });
  }
  if (!best.found)
    throw Error(ErrorCode::SearchBudgetExceeded,
                "no Koch matrix with first-row norm <= " + std::to_string(options.norm_cap));
  return spectral_data(field, best.t);
}

std::vector<KochCandidate> koch_candidates(const CubicField& field, long max_row_norm_sq) {
  RowBasis basis(field);
  std::vector<KochCandidate> out;
  for (long n = 1; n <= max_row_norm_sq; ++n) {
    for_each_in_shell(n, [&](const IntVec3& row) {
      RatMatrix3 m = basis.build(to_rat(row));
      if (!is_integral(m)) return false;
      IntMatrix3 t = to_integer(m);
      Integer d = det(t);
      if (d != 1 && d != -1) return false;
      FieldElement lam = row_dot(field, to_rat(row));
      if (field.compare(lam, field.one()) > 0 || field.compare(lam, -field.one()) < 0)
        out.push_back({t, lam});
      return false;
    });
  }
  return out;
}

KochData spectral_data(const CubicField& field_in, const IntMatrix3& t) {
  KochData k;
  k.T = t;
  k.U = transpose(to_integer(inverse(to_rational(t))));
  k.lambda_exact = row_dot(field_in, to_rat(t[0]));
  CubicField field = field_in.with_sign(1);
  if (field.embed_complex(k.lambda_exact).im < 0) field = field_in.with_sign(-1);
  k.field = field;

  PrecisionScope scope(field.precision());
  k.lambda = field.embed_real(k.lambda_exact);
  ComplexReal l2 = field.embed_complex(k.lambda_exact);
  if (l2.im == 0) throw Error(ErrorCode::InternalFault, "conjugate eigenvalue is real");
  k.mu2 = l2.re;
  k.mu3 = l2.im;
  k.phi = arg(l2) / pi();

  k.omega = field.omega_vec();
  for (int i = 0; i < 3; ++i) {
    ComplexReal c = field.embed_complex(field.omega_component(i));
    k.v2[i] = c.re;
    k.v3[i] = c.im;
  }

  Real w = field.omega(), s2 = field.sigma2(), s3 = field.sigma3();
  Real r0 = to_real(field.r(0)), r2 = to_real(field.r(2));
  RealVec3 u1{r0, -r2 * w + w * w, w};
  RealVec3 u2{r0, -r2 * s2 + s2 * s2 - s3 * s3, s2};
  RealVec3 u3{Real(0), s3 * (-r2 + 2 * s2), s3};
  RatMatrix3 b = transpose(inverse(matrix_a(field)));
  k.u1 = cubicsplit::apply(b, u1);
  k.u2 = cubicsplit::apply(b, u2);
  k.u3 = cubicsplit::apply(b, u3);

  k.kappa = condition_number(k.omega, k.v2, k.v3);
  k.t_norm = operator_norm(t);
  return k;
}

double lambda_floor(double gamma_lower, double kappa) {
  if (!(gamma_lower > 0)) throw Error(ErrorCode::NonPositiveGamma, "gamma lower bound must be positive");
  double c = gamma_lower / (4 * kappa * kappa);
  double x = 1 + c;
  for (int it = 0; it < 200; ++it) {
    double fx = x * x * x - x * x - c;
    double step = fx / (3 * x * x - 2 * x);
    x -= step;
    if (std::abs(step) <= 1e-16 * x) break;
  }
  return x;
}

PhiReport phi_rationality_report(const Real& phi, const Integer& max_denominator) {
  PhiReport rep;
  unsigned digits = phi.precision();
  PrecisionScope scope(digits);
  Real tiny = mp::pow(Real(10), -static_cast<int>(digits) + 5);
  Integer p1 = 1, q1 = 0, p2 = 0, q2 = 1;
  Real x = phi;
  for (int i = 0; i < 200; ++i) {
    Integer a = mp::floor(x).convert_to<Integer>();
    Integer p = a * p1 + p2, q = a * q1 + q2;
    if (q > max_denominator) break;
    rep.partial_quotients.push_back(a);
    if (!(p == 0 && q == 1)) rep.convergents.emplace_back(p, q);
    p2 = p1;
    q2 = q1;
    p1 = p;
    q1 = q;
    Real frac = x - Real(a);
    if (frac <= tiny) {
      rep.terminated = true;
      break;
    }
    x = 1 / frac;
  }
  return rep;
}

}  // namespace cubicsplit
