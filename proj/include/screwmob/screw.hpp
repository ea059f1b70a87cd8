#ifndef SCREWMOB_SCREW_HPP
#define SCREWMOB_SCREW_HPP

// Rigid-body screw algebra: twists, the SE(3) exponential, adjoints and
// Lie brackets. Screws are 6-vectors (angular part w; linear part v).

#include <Eigen/Dense>
#include <vector>

namespace screwmob {

using Vec6 = Eigen::Matrix<double, 6, 1>;
using Mat6 = Eigen::Matrix<double, 6, 6>;

inline Vec6 make_screw(double wx, double wy, double wz,
                       double vx, double vy, double vz) {
  Vec6 s;
  s << wx, wy, wz, vx, vy, vz;
  return s;
}

/// Rigid-body displacement stored as rotation + translation.
struct Transform {
  Eigen::Matrix3d R = Eigen::Matrix3d::Identity();
  Eigen::Vector3d p = Eigen::Vector3d::Zero();

  static Transform Identity() { return Transform{}; }

  Transform operator*(const Transform& o) const {
    return Transform{R * o.R, R * o.p + p};
  }
  Transform inverse() const {
    return Transform{R.transpose(), -(R.transpose() * p)};
  }
  Eigen::Matrix4d matrix() const {
    Eigen::Matrix4d m = Eigen::Matrix4d::Identity();
    m.topLeftCorner<3, 3>() = R;
    m.topRightCorner<3, 1>() = p;
    return m;
  }
  /// Frobenius distance to the identity displacement.
  double deviation_from_identity() const {
    return std::sqrt((R - Eigen::Matrix3d::Identity()).squaredNorm() +
                     p.squaredNorm());
  }
};

inline Eigen::Matrix3d hat3(const Eigen::Vector3d& w) {
  Eigen::Matrix3d m;
  m << 0, -w.z(), w.y(), w.z(), 0, -w.x(), -w.y(), w.x(), 0;
  return m;
}

/// 4x4 twist matrix [[w^, v],[0,0]] of a screw.
inline Eigen::Matrix4d hat(const Vec6& s) {
  Eigen::Matrix4d m = Eigen::Matrix4d::Zero();
  m.topLeftCorner<3, 3>() = hat3(s.head<3>());
  m.topRightCorner<3, 1>() = s.tail<3>();
  return m;
}

inline Vec6 unhat(const Eigen::Matrix4d& m) {
  Vec6 s;
  s << m(2, 1), m(0, 2), m(1, 0), m(0, 3), m(1, 3), m(2, 3);
  return s;
}

/// Closed-form exponential of q * hat(Y), exact for pure rotations and
/// translations; series form near |q*w| = 0.
Transform exp_twist(const Vec6& Y, double q);

/// 6x6 adjoint [[R,0],[p^ R, R]] of a displacement.
Mat6 adjoint(const Transform& g);

/// Screw commutator (wA x wB ; wA x vB - wB x vA).
inline Vec6 lie_bracket(const Vec6& a, const Vec6& b) {
  Vec6 r;
  r.head<3>() = a.head<3>().cross(b.head<3>());
  r.tail<3>() = a.head<3>().cross(b.tail<3>()) - b.head<3>().cross(a.tail<3>());
  return r;
}

struct ClosureResult {
  int dimension = 0;
  std::vector<Vec6> basis;  // orthonormal spanning set
};

/// Smallest Lie subalgebra of se(3) containing the given screws; dimension
/// is the numeric rank of the accumulated span (tol relative to sigma_max).
ClosureResult involutive_closure(const std::vector<Vec6>& screws,
                                 double tol_rank = 1e-9);

}  // namespace screwmob

#endif
