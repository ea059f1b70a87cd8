#include "screwmob/screw.hpp"

#include <cmath>

namespace screwmob {

Transform exp_twist(const Vec6& Y, double q) {
  const Eigen::Vector3d w = Y.head<3>();
  const Eigen::Vector3d v = Y.tail<3>();
  const double wn = w.norm();

  Transform g;
  if (wn < 1e-12) {
    g.R.setIdentity();
    g.p = v * q;
    return g;
  }

  const double theta = wn * q;
  const Eigen::Vector3d u = w / wn;
  const Eigen::Matrix3d U = hat3(u);

  // Rodrigues with series fallback for small theta to avoid cancellation
  // in the (1-cos) terms.
  double s, c1, tms;  // sin, 1-cos, theta-sin
  if (std::abs(theta) < 1e-6) {
    const double t2 = theta * theta;
    s = theta * (1.0 - t2 / 6.0);
    c1 = t2 * (0.5 - t2 / 24.0);
    tms = theta * t2 * (1.0 / 6.0 - t2 / 120.0);
  } else {
    s = std::sin(theta);
    c1 = 1.0 - std::cos(theta);
    tms = theta - s;
  }
  g.R = Eigen::Matrix3d::Identity() + s * U + c1 * (U * U);

  // p = (I + (1-cos)/theta U + (theta-sin)/theta U^2) (v q)
  const Eigen::Vector3d vq = v * q;
  if (std::abs(theta) < 1e-12) {
    g.p = vq;
  } else {
    g.p = vq + (c1 / theta) * (U * vq) + (tms / theta) * (U * (U * vq));
  }
  return g;
}

Mat6 adjoint(const Transform& g) {
  Mat6 ad = Mat6::Zero();
  ad.topLeftCorner<3, 3>() = g.R;
  ad.bottomRightCorner<3, 3>() = g.R;
  ad.bottomLeftCorner<3, 3>() = hat3(g.p) * g.R;
  return ad;
}

namespace {

int span_rank(const std::vector<Vec6>& vs, double tol,
              std::vector<Vec6>* basis_out) {
  Eigen::MatrixXd m(6, static_cast<int>(vs.size()));
  for (int i = 0; i < static_cast<int>(vs.size()); ++i) m.col(i) = vs[i];
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(m, Eigen::ComputeThinU);
  const auto& sv = svd.singularValues();
  if (sv.size() == 0 || sv(0) == 0.0) return 0;
  int r = 0;
  for (int i = 0; i < sv.size(); ++i)
    if (sv(i) > tol * sv(0)) ++r;
  if (basis_out) {
    basis_out->clear();
    for (int i = 0; i < r; ++i) basis_out->push_back(svd.matrixU().col(i));
  }
  return r;
}

}  // namespace

ClosureResult involutive_closure(const std::vector<Vec6>& screws,
                                 double tol_rank) {
  std::vector<Vec6> basis;
  int rank = span_rank(screws, tol_rank, &basis);
  while (rank < 6) {
    std::vector<Vec6> next = basis;
    for (size_t i = 0; i < basis.size(); ++i)
      for (size_t j = i + 1; j < basis.size(); ++j)
        next.push_back(lie_bracket(basis[i], basis[j]));
    std::vector<Vec6> new_basis;
    const int new_rank = span_rank(next, tol_rank, &new_basis);
    if (new_rank == rank) break;
    rank = new_rank;
    basis = std::move(new_basis);
  }
  return ClosureResult{rank, basis};
}

}  // namespace screwmob
