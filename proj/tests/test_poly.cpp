#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "screwmob/poly.hpp"
#include "screwmob/screw.hpp"

using namespace screwmob;

namespace {
// (1 + 2 x1 - x2)
Poly sample_a() {
  Poly p = Poly::constant(3, 1.0);
  p = p + Poly::variable(3, 0).scaled(2.0);
  p = p - Poly::variable(3, 1);
  return p;
}
// (x1 x3 + 0.5 x2^2)
Poly sample_b() {
  Poly p = Poly::variable(3, 0) * Poly::variable(3, 2);
  p = p + (Poly::variable(3, 1) * Poly::variable(3, 1)).scaled(0.5);
  return p;
}
}  // namespace

TEST_CASE("arithmetic agrees with pointwise evaluation") {
  Poly a = sample_a(), b = sample_b();
  Eigen::VectorXd x(3);
  x << 0.3, -1.1, 0.7;
  CHECK((a + b).eval(x) == doctest::Approx(a.eval(x) + b.eval(x)));
  CHECK((a - b).eval(x) == doctest::Approx(a.eval(x) - b.eval(x)));
  CHECK((a * b).eval(x) == doctest::Approx(a.eval(x) * b.eval(x)));
  CHECK(a.scaled(-2.5).eval(x) == doctest::Approx(-2.5 * a.eval(x)));
}

TEST_CASE("degree, truncation and homogeneous components") {
  Poly p = sample_a() * sample_b();  // degrees 2 and 3 mixed
  CHECK(p.degree() == 3);
  CHECK(p.truncated(2).degree() == 2);
  Poly rebuilt(3);
  for (int k = 0; k <= 3; ++k) rebuilt = rebuilt + p.homogeneous_component(k);
  CHECK(p.coeff_distance(rebuilt) < 1e-15);
  CHECK(p.homogeneous_component(2).is_zero() == false);
  CHECK(p.homogeneous_component(5).is_zero());
}

TEST_CASE("truncating multiplication matches truncated full product") {
  Poly a = sample_a() * sample_a();
  Poly b = sample_b();
  Poly full = (a * b).truncated(3);
  Poly trunc = a.mul(b, 3);
  CHECK(full.coeff_distance(trunc) < 1e-15);
}

TEST_CASE("derivative") {
  Poly p = sample_b();  // x1 x3 + 0.5 x2^2
  Eigen::VectorXd x(3);
  x << 0.4, 1.2, -0.9;
  CHECK(p.derivative(0).eval(x) == doctest::Approx(x(2)));
  CHECK(p.derivative(1).eval(x) == doctest::Approx(x(1)));
  CHECK(p.derivative(2).eval(x) == doctest::Approx(x(0)));
  CHECK(Poly::constant(3, 4.0).derivative(1).is_zero());
}

TEST_CASE("zero coefficients are pruned") {
  Poly p = sample_a() - sample_a();
  CHECK(p.is_zero());
  CHECK(p.degree() == -1);
  Poly q = Poly::variable(2, 0);
  q.add_term(Monomial{1, 0}, -1.0);  // cancels
  CHECK(q.is_zero());
}

TEST_CASE("to_string canonical ordering") {
  Poly p(2);
  p.add_term(Monomial{0, 1}, 1.0);
  p.add_term(Monomial{1, 0}, 2.0);
  p.add_term(Monomial{2, 0}, -1.0);
  std::string s = p.to_string();
  // degree-1 terms first (x1 before x2), then the degree-2 term
  CHECK(s.find("x1") < s.find("x2"));
  CHECK(s.find("x1^2") > s.find("x2"));
}

TEST_CASE("PolyMatrix product and determinant match numeric evaluation") {
  const int n = 2;
  PolyMatrix A(2, 2, n), B(2, 2, n);
  A.at(0, 0) = Poly::constant(n, 1.0) + Poly::variable(n, 0);
  A.at(0, 1) = Poly::variable(n, 1);
  A.at(1, 0) = Poly::variable(n, 0) * Poly::variable(n, 1);
  A.at(1, 1) = Poly::constant(n, 2.0);
  B.at(0, 0) = Poly::variable(n, 1);
  B.at(0, 1) = Poly::constant(n, -1.0);
  B.at(1, 0) = Poly::constant(n, 0.5);
  B.at(1, 1) = Poly::variable(n, 0) + Poly::variable(n, 1);

  Eigen::VectorXd x(2);
  x << 0.7, -0.4;
  Eigen::MatrixXd prod = A.mul(B, Poly::kNoTruncation).eval(x);
  CHECK((prod - A.eval(x) * B.eval(x)).norm() < 1e-13);
  CHECK(A.det(Poly::kNoTruncation).eval(x) ==
        doctest::Approx(A.eval(x).determinant()));
}

TEST_CASE("determinant truncation drops high-degree terms only") {
  const int n = 1;
  PolyMatrix A(2, 2, n);
  A.at(0, 0) = Poly::variable(n, 0);
  A.at(0, 1) = Poly::constant(n, 1.0);
  A.at(1, 0) = Poly::constant(n, -1.0);
  A.at(1, 1) = Poly::variable(n, 0);
  // det = x^2 + 1
  Poly d1 = A.det(1);
  CHECK(d1.coeff_distance(Poly::constant(n, 1.0)) < 1e-15);
  Poly d2 = A.det(2);
  CHECK(d2.coeff_distance(A.det(Poly::kNoTruncation)) < 1e-15);
}

TEST_CASE("pv6 bracket matches numeric lie_bracket on constant screws") {
  Vec6 a = make_screw(0.1, -0.4, 0.9, 1.2, 0.3, -0.7);
  Vec6 b = make_screw(-0.6, 0.2, 0.5, -0.1, 0.8, 0.4);
  PolyVec6 pa = pv6_from_numeric(0, a), pb = pv6_from_numeric(0, b);
  PolyVec6 br = pv6_bracket(pa, pb, Poly::kNoTruncation);
  Vec6 expect = lie_bracket(a, b);
  Eigen::VectorXd empty(0);
  for (int i = 0; i < 6; ++i)
    CHECK(br[i].eval(empty) == doctest::Approx(expect(i)).epsilon(1e-13));
}

TEST_CASE("pv6 helpers: zero, add, scale, hat") {
  PolyVec6 z = pv6_zero(2);
  CHECK(pv6_is_zero(z));
  Vec6 a = make_screw(1, 0, 2, -1, 0.5, 0);
  PolyVec6 pa = pv6_from_numeric(2, a);
  PolyVec6 sum = pv6_add(pa, pv6_scale(pa, -1.0));
  CHECK(pv6_is_zero(sum));
  Eigen::VectorXd x = Eigen::VectorXd::Zero(2);
  CHECK((pv6_hat(pa).eval(x) - hat(a)).norm() < 1e-15);
}
