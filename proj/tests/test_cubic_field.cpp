#include "doctest.h"

#include <random>

#include "cubicsplit/cubic_field.hpp"
#include "cubicsplit/error.hpp"

using namespace cubicsplit;
namespace mp = boost::multiprecision;

namespace {

FieldSpec golden_spec() {
  return {Rational(1), Rational(-1), Rational(0), Rational(0), Rational(0), Rational(1)};
}

FieldElement elem(long a, long b, long c) { return {{Rational(a), Rational(b), Rational(c)}}; }

double rel(const Real& a, const Real& b) {
  Real d = mp::abs(a - b) / mp::max(Real(1e-300), mp::max(mp::abs(a), mp::abs(b)));
  return d.convert_to<double>();
}

FieldElement random_elem(std::mt19937_64& rng) {
  std::uniform_int_distribution<int> num(-50, 50), den(1, 12);
  FieldElement x;
  for (auto& c : x.c) c = Rational(num(rng), den(rng));
  return x;
}

}  // namespace

TEST_CASE("golden field construction") {
  PrecisionScope scope(60);
  CubicField f = CubicField::create(golden_spec());
  CHECK(f.discriminant() == -31);
  CHECK(f.omega().convert_to<double>() == doctest::Approx(0.682327803828019327).epsilon(1e-15));
  CHECK(f.omega_tilde().convert_to<double>() == doctest::Approx(0.465571231876768026).epsilon(1e-15));
  CHECK(rel(f.omega(), Real("0.68232780382801932736948373971104825689")) < 1e-28);
}

TEST_CASE("field_new rejects invalid polynomials") {
  FieldSpec reducible{Rational(0), Rational(1), Rational(0), Rational(0), Rational(0), Rational(1)};
  CHECK_THROWS_WITH_AS(CubicField::create(reducible), doctest::Contains("RationalRootFound"), Error);
  FieldSpec zero_a2 = golden_spec();
  zero_a2.a2 = 0;
  try {
    CubicField::create(zero_a2);
    FAIL("expected ZeroA2");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::ZeroA2);
  }
  // x^3 - 3x + 1 is irreducible with three real roots.
  FieldSpec totally_real{Rational(-1), Rational(3), Rational(0), Rational(0), Rational(0), Rational(1)};
  try {
    CubicField::create(totally_real);
    FAIL("expected NonNegativeDiscriminant");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::NonNegativeDiscriminant);
  }
  // Rational root 3/2 behind denominators: (x - 3/2)(x^2 + 1).
  FieldSpec hidden{Rational(3, 2), Rational(-1), Rational(3, 2), Rational(0), Rational(0), Rational(1)};
  Rational root;
  CHECK(find_rational_root(hidden.r0, hidden.r1, hidden.r2, &root));
  CHECK(root == Rational(3, 2));
}

TEST_CASE("rational root search on a large integer root") {
  // (x - 1000003)(x^2 + x + 1)
  Rational r = 1000003;
  Rational r2 = r - 1, r1 = r - 1, r0 = r;
  Rational root;
  CHECK(find_rational_root(r0, r1, r2, &root));
  CHECK(root == r);
  CHECK_FALSE(find_rational_root(Rational(1), Rational(-1), Rational(0), &root));
}

TEST_CASE("golden multiplication and inverse") {
  CubicField f = CubicField::create(golden_spec());
  FieldElement w = f.omega_elem();
  CHECK(f.mul(w, elem(0, 0, 1)) == elem(1, -1, 0));
  CHECK(f.mul(elem(1, 1, 0), elem(1, -1, 0)) == elem(1, 0, -1));
  CHECK(f.mul(elem(3, 2, 1), f.one()) == elem(3, 2, 1));
  CHECK(f.inv(w) == elem(1, 0, 1));
  CHECK(f.inv(f.one()) == f.one());
  FieldElement x = elem(1, -1, 0);
  CHECK(f.mul(x, f.inv(x)) == f.one());
  CHECK_THROWS_AS(f.inv(elem(0, 0, 0)), Error);
  CHECK(f.min_poly(w).is_zero());
  CHECK(f.pow(w, -3) == f.inv(f.pow(w, 3)));
}

TEST_CASE("golden embeddings") {
  PrecisionScope scope(60);
  CubicField f = CubicField::create(golden_spec()).with_sign(-1);
  FieldElement lam = elem(1, 0, 1);
  CHECK(f.embed_real(lam).convert_to<double>() == doctest::Approx(1.46557123187676802665).epsilon(1e-15));
  CHECK(rel(f.embed_real(FieldElement::rational(Rational(2, 7))), Real(2) / 7) < 1e-29);
  ComplexReal w2 = f.embed_complex(f.omega_elem());
  CHECK(w2.re.convert_to<double>() == doctest::Approx(-0.341163901914009664).epsilon(1e-14));
  CHECK(w2.im.convert_to<double>() == doctest::Approx(-1.16154139999725194).epsilon(1e-14));
  ComplexReal q = f.embed_complex(FieldElement::rational(Rational(5, 3)));
  CHECK(q.im == 0);
  ComplexReal l2 = f.embed_complex(lam);
  Real m = abs(l2);
  CHECK(rel(m * m * f.embed_real(lam), Real(1)) < 1e-28);
  CHECK(m.convert_to<double>() == doctest::Approx(0.826031357654186956).epsilon(1e-14));
}

TEST_CASE("conjugate symmetric-function identities") {
  PrecisionScope scope(60);
  for (const FieldSpec& s : {golden_spec(), FieldSpec{Rational(2), Rational(1, 3), Rational(-1), Rational(1),
                                                       Rational(0), Rational(-2)}}) {
    CubicField f = CubicField::create(s);
    Real w = f.omega(), s2 = f.sigma2(), s3 = f.sigma3();
    CHECK(mp::abs(w + 2 * s2 - to_real(s.r2)).convert_to<double>() < 1e-25);
    CHECK(mp::abs(-(2 * w * s2 + s2 * s2 + s3 * s3) - to_real(s.r1)).convert_to<double>() < 1e-25);
  }
}

TEST_CASE("embeddings are multiplicative on random pairs") {
  PrecisionScope scope(60);
  CubicField f = CubicField::create(golden_spec()).with_sign(-1);
  std::mt19937_64 rng(20240611);
  for (int i = 0; i < 1000; ++i) {
    FieldElement x = random_elem(rng), y = random_elem(rng);
    FieldElement xy = f.mul(x, y);
    Real ex = f.embed_real(x), ey = f.embed_real(y);
    CHECK(rel(f.embed_real(xy), ex * ey) < 1e-12);
    ComplexReal cx = f.embed_complex(x), cy = f.embed_complex(y), cxy = f.embed_complex(xy);
    ComplexReal prod = cx * cy;
    Real scale = abs(prod) + 1e-30;
    CHECK(((abs(ComplexReal{cxy.re - prod.re, cxy.im - prod.im})) / scale).convert_to<double>() < 1e-12);
    if (!x.is_zero()) CHECK(f.mul(f.inv(x), x) == f.one());
  }
}

TEST_CASE("exact sign agrees with ordering and resolves near-cancellation") {
  CubicField f = CubicField::create(golden_spec());
  std::mt19937_64 rng(7);
  for (int i = 0; i < 300; ++i) {
    FieldElement x = random_elem(rng);
    double v = f.embed_real(x).convert_to<double>();
    if (std::abs(v) > 1e-9) CHECK(f.sign(x) == (v > 0 ? 1 : -1));
  }
  // lambda^60 is huge and lambda^-60 tiny; their difference from an integer
  // combination must still be decided exactly.
  FieldElement lam = elem(1, 0, 1);
  FieldElement tiny = f.pow(lam, -60);
  CHECK(f.sign(tiny) == 1);
  CHECK(f.sign(-tiny) == -1);
  CHECK(f.sign(f.pow(lam, -200)) == 1);
  CHECK(f.round(f.omega_elem()) == 1);
  CHECK(f.floor(f.omega_elem()) == 0);
  CHECK(f.floor(-f.omega_elem()) == -1);
  CHECK_THROWS_AS(f.round(FieldElement::rational(Rational(5, 2))), Error);
  CHECK(f.norm(lam) == 1);
  CHECK(f.trace(f.omega_elem()) == 0);
}
