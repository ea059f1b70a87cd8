#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <Eigen/Dense>
#include <unsupported/Eigen/MatrixFunctions>

#include "screwmob/screw.hpp"

using namespace screwmob;

namespace {
Vec6 random_screw(unsigned seed) {
  std::srand(seed);
  Vec6 s = Vec6::Random();
  return s;
}
}  // namespace

TEST_CASE("hat / unhat round trip") {
  Vec6 s = make_screw(0.3, -1.2, 0.8, 2.0, -0.5, 0.1);
  CHECK((unhat(hat(s)) - s).norm() == doctest::Approx(0.0).epsilon(1e-15));
  Eigen::Matrix4d m = hat(s);
  CHECK(m.row(3).norm() == 0.0);
  CHECK((m.topLeftCorner<3, 3>() + m.topLeftCorner<3, 3>().transpose()).norm() ==
        doctest::Approx(0.0));
}

TEST_CASE("exp_twist matches matrix exponential") {
  for (unsigned seed : {1u, 2u, 3u, 4u, 5u}) {
    Vec6 Y = random_screw(seed);
    for (double q : {-1.3, -0.2, 0.0, 0.7, 2.9}) {
      Transform g = exp_twist(Y, q);
      Eigen::Matrix4d ref = (q * hat(Y)).exp();
      CHECK((g.matrix() - ref).norm() < 1e-10);
    }
  }
}

TEST_CASE("exp_twist pure rotation and translation") {
  Transform rz = exp_twist(make_screw(0, 0, 1, 0, 0, 0), M_PI / 2);
  CHECK((rz.R * Eigen::Vector3d::UnitX() - Eigen::Vector3d::UnitY()).norm() < 1e-14);
  CHECK(rz.p.norm() < 1e-15);

  Transform tx = exp_twist(make_screw(0, 0, 0, 1, 0, 0), 0.8);
  CHECK((tx.R - Eigen::Matrix3d::Identity()).norm() < 1e-15);
  CHECK((tx.p - Eigen::Vector3d(0.8, 0, 0)).norm() < 1e-15);
}

TEST_CASE("exp_twist near-zero angle is smooth") {
  Vec6 Y = make_screw(0, 0, 1, 0.2, -0.1, 0.5);
  Transform g = exp_twist(Y, 1e-10);
  CHECK(g.deviation_from_identity() < 1e-9);
  CHECK((g.matrix() - (Eigen::Matrix4d::Identity() + 1e-10 * hat(Y))).norm() < 1e-18);
}

TEST_CASE("transform inverse and composition") {
  Transform a = exp_twist(random_screw(7), 0.9);
  Transform b = exp_twist(random_screw(8), -1.4);
  CHECK((a * a.inverse()).deviation_from_identity() < 1e-14);
  CHECK(((a * b).matrix() - a.matrix() * b.matrix()).norm() < 1e-13);
}

TEST_CASE("adjoint respects composition and conjugation") {
  Transform a = exp_twist(random_screw(11), 0.6);
  Transform b = exp_twist(random_screw(12), -0.8);
  CHECK((adjoint(a * b) - adjoint(a) * adjoint(b)).norm() < 1e-12);

  // Ad_g Y == unhat(g hat(Y) g^-1)
  Vec6 Y = random_screw(13);
  Eigen::Matrix4d conj = a.matrix() * hat(Y) * a.inverse().matrix();
  CHECK((adjoint(a) * Y - unhat(conj)).norm() < 1e-12);
}

TEST_CASE("lie_bracket matches matrix commutator and is antisymmetric") {
  Vec6 a = random_screw(21), b = random_screw(22), c = random_screw(23);
  Eigen::Matrix4d comm = hat(a) * hat(b) - hat(b) * hat(a);
  CHECK((lie_bracket(a, b) - unhat(comm)).norm() < 1e-13);
  CHECK((lie_bracket(a, b) + lie_bracket(b, a)).norm() < 1e-13);
  // Jacobi identity
  Vec6 jac = lie_bracket(a, lie_bracket(b, c)) +
             lie_bracket(b, lie_bracket(c, a)) +
             lie_bracket(c, lie_bracket(a, b));
  CHECK(jac.norm() < 1e-12);
}

TEST_CASE("involutive_closure of planar rotations is the planar algebra") {
  // Two parallel z-axes generate se(2): dimension 3.
  std::vector<Vec6> s{make_screw(0, 0, 1, 0, 0, 0), make_screw(0, 0, 1, 0, -1, 0)};
  auto cl = involutive_closure(s);
  CHECK(cl.dimension == 3);
  for (const auto& b : cl.basis) {
    CHECK(b(0) == doctest::Approx(0.0));
    CHECK(b(1) == doctest::Approx(0.0));
    CHECK(b(5) == doctest::Approx(0.0));
  }
}

TEST_CASE("involutive_closure of generic screws fills se(3)") {
  std::vector<Vec6> s{random_screw(31), random_screw(32)};
  auto cl = involutive_closure(s);
  CHECK(cl.dimension == 6);
}

TEST_CASE("involutive_closure of a single screw is one-dimensional") {
  auto cl = involutive_closure({make_screw(0, 0, 1, 0.5, 0, 0)});
  CHECK(cl.dimension == 1);
}
