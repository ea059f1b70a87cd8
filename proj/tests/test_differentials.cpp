#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "screwmob/differentials.hpp"

using namespace screwmob;

namespace {
const std::string kFixtures = SCREWMOB_FIXTURE_DIR;

struct Lcg {
  uint64_t s;
  explicit Lcg(uint64_t seed) : s(seed) {}
  double uni() {  // (-1, 1)
    s = s * 6364136223846793005ULL + 1442695040888963407ULL;
    return 2.0 * (double((s >> 11) & ((1ULL << 53) - 1)) / double(1ULL << 53)) - 1.0;
  }
};

// Polynomial trajectory q(t) = sum_u coef.col(u) t^u; returns position and
// the jets matrix (col u-1 = q^(u)) at time t.
struct Trajectory {
  Eigen::MatrixXd coef;  // n x (deg+1)
  Eigen::VectorXd at(double t) const {
    Eigen::VectorXd q = Eigen::VectorXd::Zero(coef.rows());
    double tp = 1.0;
    for (int u = 0; u < coef.cols(); ++u, tp *= t) q += coef.col(u) * tp;
    return q;
  }
  Eigen::MatrixXd jets(double t, int ord) const {
    Eigen::MatrixXd J = Eigen::MatrixXd::Zero(coef.rows(), ord);
    for (int m = 1; m <= ord; ++m) {
      double tp = 1.0;
      for (int u = m; u < coef.cols(); ++u, tp *= t) {
        double c = 1.0;
        for (int r = 0; r < m; ++r) c *= double(u - r);
        J.col(m - 1) += coef.col(u) * (c * tp);
      }
    }
    return J;
  }
};

Trajectory random_trajectory(int n, int deg, uint64_t seed) {
  Lcg rng(seed);
  Trajectory tr;
  tr.coef.resize(n, deg + 1);
  for (int i = 0; i < n; ++i)
    for (int u = 0; u <= deg; ++u) tr.coef(i, u) = 0.5 * rng.uni();
  return tr;
}
}  // namespace

TEST_CASE("binomial and factorial") {
  CHECK(binomial(0, 0) == 1);
  CHECK(binomial(5, 2) == 10);
  CHECK(binomial(12, 6) == 924);
  CHECK(factorial(0) == 1);
  CHECK(factorial(6) == 720);
  CHECK(factorial(12) == 479001600LL);
}

TEST_CASE("screw time derivatives match finite differences along trajectories") {
  Linkage lk = load_linkage(kFixtures + "/double_watt.json");
  const double h = 1e-5;
  for (uint64_t seed : {1u, 2u, 3u}) {
    Trajectory tr = random_trajectory(lk.n(), 4, seed);
    for (int c = 1; c <= lk.num_cycles(); ++c) {
      const double t0 = 0.1;
      auto jets = screw_time_derivatives(lk, c, tr.at(t0), tr.jets(t0, 3), 3);
      // S^(m)(t0) == d/dt S^(m-1) via central difference
      for (int m = 1; m <= 3; ++m) {
        auto jp = screw_time_derivatives(lk, c, tr.at(t0 + h), tr.jets(t0 + h, 3), m - 1);
        auto jm = screw_time_derivatives(lk, c, tr.at(t0 - h), tr.jets(t0 - h, 3), m - 1);
        Eigen::MatrixXd fd = (jp[m - 1] - jm[m - 1]) / (2 * h);
        CHECK((fd - jets[m]).norm() < 1e-5 * std::max(1.0, jets[m].norm()));
      }
    }
  }
}

TEST_CASE("constraint derivatives: H^(1) exact, higher orders vs FD, B split") {
  Linkage lk = load_linkage(kFixtures + "/double_watt.json");
  const double h = 1e-5;
  for (uint64_t seed = 10; seed < 30; ++seed) {
    Trajectory tr = random_trajectory(lk.n(), 5, seed);
    const double t0 = 0.05;
    auto cd = constraint_time_derivatives(lk, tr.at(t0), tr.jets(t0, 4), 4);
    Eigen::MatrixXd J = stacked_jacobian(lk, tr.at(t0));
    CHECK((cd.H[0] - J * tr.jets(t0, 1).col(0)).norm() < 1e-12);
    for (int k = 2; k <= 4; ++k) {
      auto cp = constraint_time_derivatives(lk, tr.at(t0 + h), tr.jets(t0 + h, k - 1), k - 1);
      auto cm = constraint_time_derivatives(lk, tr.at(t0 - h), tr.jets(t0 - h, k - 1), k - 1);
      Eigen::VectorXd fd = (cp.H[k - 2] - cm.H[k - 2]) / (2 * h);
      CHECK((fd - cd.H[k - 1]).norm() < 1e-5 * std::max(1.0, cd.H[k - 1].norm()));
    }
    for (int k = 1; k <= 4; ++k) {
      Eigen::MatrixXd jets = tr.jets(t0, k);
      CHECK((cd.H[k - 1] - J * jets.col(k - 1) - cd.B[k - 1]).norm() < 1e-11);
    }
  }
}

TEST_CASE("minor time derivatives vs FD") {
  Linkage lk = load_linkage(kFixtures + "/fourbar.json");
  std::vector<int> rows{2, 3, 4};  // planar support rows of the single cycle
  std::vector<int> cols{0, 1, 2};
  const double h = 1e-5;
  for (uint64_t seed : {41u, 42u, 43u}) {
    Trajectory tr = random_trajectory(4, 4, seed);
    const double t0 = 0.07;
    auto M = minor_time_derivatives(lk, tr.at(t0), tr.jets(t0, 3), rows, cols, 3);
    Eigen::MatrixXd J = stacked_jacobian(lk, tr.at(t0));
    Eigen::Matrix3d sub;
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) sub(i, j) = J(rows[i], cols[j]);
    CHECK(M[0] == doctest::Approx(sub.determinant()).epsilon(1e-12));
    for (int m = 1; m <= 3; ++m) {
      auto Mp = minor_time_derivatives(lk, tr.at(t0 + h), tr.jets(t0 + h, 3), rows, cols, m - 1);
      auto Mm = minor_time_derivatives(lk, tr.at(t0 - h), tr.jets(t0 - h, 3), rows, cols, m - 1);
      double fd = (Mp[m - 1] - Mm[m - 1]) / (2 * h);
      CHECK(std::abs(fd - M[m]) < 1e-5 * std::max(1.0, std::abs(M[m])));
    }
  }
}

TEST_CASE("recursion table agrees with direct expansion") {
  for (const char* fix : {"/fourbar.json", "/double_watt.json"}) {
    Linkage lk = load_linkage(kFixtures + fix);
    Eigen::VectorXd q0 = Eigen::VectorXd::Zero(lk.n());
    for (int c = 1; c <= lk.num_cycles(); ++c) {
      DifferentialTable tab = differential_table(lk, c, q0, 4);
      for (int k = 1; k <= 4; ++k) {
        PolyMatrix direct = differential_direct(lk, c, q0, k);
        double dist = 0.0;
        for (int i = 0; i < 4; ++i)
          for (int j = 0; j < 4; ++j)
            dist = std::max(dist, tab.df[k].at(i, j).coeff_distance(direct.at(i, j)));
        CHECK(dist < 1e-10);
      }
    }
  }
}

TEST_CASE("differentials are homogeneous of their order") {
  Linkage lk = load_linkage(kFixtures + "/fourbar.json");
  DifferentialTable tab = differential_table(lk, 1, Eigen::VectorXd::Zero(4), 4);
  for (int k = 1; k <= 4; ++k) {
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j) {
        const Poly& p = tab.df[k].at(i, j);
        CHECK(p.coeff_distance(p.homogeneous_component(k)) < 1e-14);
        const Poly& pi = tab.dfinv[k].at(i, j);
        CHECK(pi.coeff_distance(pi.homogeneous_component(k)) < 1e-14);
      }
    for (int j = 0; j < 4; ++j)
      for (int r = 0; r < 6; ++r) {
        const Poly& p = tab.dS[k][j][r];
        CHECK(p.coeff_distance(p.homogeneous_component(k)) < 1e-14);
      }
  }
}

TEST_CASE("Taylor remainder decays at the expected order") {
  Linkage lk = load_linkage(kFixtures + "/fourbar.json");
  Eigen::VectorXd q0 = Eigen::VectorXd::Zero(4);
  DifferentialTable tab = differential_table(lk, 1, q0, 4);
  Eigen::VectorXd x(4);
  x << 0.9, -0.3, 0.5, 0.2;
  for (int nu = 1; nu <= 4; ++nu) {
    std::vector<double> eps{1e-1, 1e-2, 1e-3, 1e-4};
    std::vector<double> err;
    for (double e : eps) {
      Eigen::Matrix4d taylor = Eigen::Matrix4d::Identity();
      double ek = 1.0;
      for (int k = 1; k <= nu; ++k) {
        ek *= e;
        taylor += (ek / double(factorial(k))) * tab.df[k].eval(x);
      }
      Eigen::Matrix4d exact = cycle_map(lk, 1, q0 + e * x).matrix();
      err.push_back(std::max((exact - taylor).norm(), 1e-300));
    }
    // slope of log err vs log eps over the first decades above noise
    double slope = (std::log(err[0]) - std::log(err[1])) /
                   (std::log(eps[0]) - std::log(eps[1]));
    CHECK(slope >= nu + 0.7);
  }
}

TEST_CASE("Taylor series of f and f^{-1} are mutually inverse") {
  Linkage lk = load_linkage(kFixtures + "/double_watt.json");
  Eigen::VectorXd q0 = Eigen::VectorXd::Zero(10);
  for (int c = 1; c <= 3; ++c) {
    DifferentialTable tab = differential_table(lk, c, q0, 4);
    PolyMatrix F(4, 4, 10), G(4, 4, 10);
    F = PolyMatrix::identity(4, 10);
    G = PolyMatrix::identity(4, 10);
    for (int k = 1; k <= 4; ++k) {
      F = F + tab.df[k].scaled(1.0 / double(factorial(k)));
      G = G + tab.dfinv[k].scaled(1.0 / double(factorial(k)));
    }
    PolyMatrix P = F.mul(G, 4);
    PolyMatrix I = PolyMatrix::identity(4, 10);
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j)
        CHECK(P.at(i, j).coeff_distance(I.at(i, j)) < 1e-10);
  }
}

TEST_CASE("taylor_jacobian order zero is the stacked jacobian") {
  Linkage lk = load_linkage(kFixtures + "/double_watt.json");
  Eigen::VectorXd q0 = Eigen::VectorXd::Zero(10);
  std::vector<DifferentialTable> tabs;
  for (int c = 1; c <= 3; ++c) tabs.push_back(differential_table(lk, c, q0, 2));
  PolyMatrix TJ = taylor_jacobian(lk, tabs, 2);
  Eigen::MatrixXd at0 = TJ.eval(Eigen::VectorXd::Zero(10));
  CHECK((at0 - stacked_jacobian(lk, q0)).norm() < 1e-13);
}

TEST_CASE("four-bar minor differentials: frozen first and third order values") {
  Linkage lk = load_linkage(kFixtures + "/fourbar.json");
  Eigen::VectorXd q0 = Eigen::VectorXd::Zero(4);
  std::vector<DifferentialTable> tabs{differential_table(lk, 1, q0, 3)};
  std::vector<int> rows{2, 3, 4};
  const int n = 4;
  auto x = [&](int i) { return Poly::variable(n, i); };

  struct Case {
    std::vector<int> cols;
    Poly d1, d3;
  };
  std::vector<Case> cases;
  cases.push_back({{0, 1, 2}, -x(1), x(1) * x(1) * x(1)});
  cases.push_back({{0, 1, 3}, -(x(1).scaled(2.0) + x(2)),
                   (x(1) * x(1) * x(1)).scaled(2.0) +
                       (x(1) * x(1) * x(2)).scaled(3.0) +
                       (x(1) * x(2) * x(2)).scaled(3.0) + x(2) * x(2) * x(2)});
  cases.push_back({{0, 2, 3}, -x(1),
                   x(1) * (x(1) * x(1) + (x(1) * x(2)).scaled(3.0) +
                           (x(2) * x(2)).scaled(3.0))});
  cases.push_back({{1, 2, 3}, x(2), -(x(2) * x(2) * x(2))});

  for (const auto& c : cases) {
    Poly d1 = minor_differential(lk, tabs, rows, c.cols, 1);
    Poly d2 = minor_differential(lk, tabs, rows, c.cols, 2);
    Poly d3 = minor_differential(lk, tabs, rows, c.cols, 3);
    CHECK(d1.coeff_distance(c.d1) < 1e-12);
    CHECK(d2.is_zero());
    CHECK(d3.coeff_distance(c.d3) < 1e-10);
  }
}

TEST_CASE("error paths: excessive order and violated closure") {
  Linkage lk = load_linkage(kFixtures + "/fourbar.json");
  Eigen::VectorXd q0 = Eigen::VectorXd::Zero(4);
  CHECK_THROWS_AS(differential_table(lk, 1, q0, kMaxOrder + 1),
                  std::invalid_argument);
  Eigen::VectorXd bad(4);
  bad << 0.3, 0, 0, 0;
  CHECK_THROWS_AS(differential_table(lk, 1, bad, 2), LinkageError);
}
