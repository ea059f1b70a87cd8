#ifndef SCREWMOB_SOLVER_HPP
#define SCREWMOB_SOLVER_HPP

// Numerical toolkit for the polynomial systems: Gauss-Newton refinement with
// minimum-norm (pseudo-inverse) steps, deterministic seeded sampling,
// one-parameter coordinate sweeps for 2-D sections, and limiting-tangent
// estimation per branch.

#include <cstdint>
#include <functional>

#include "screwmob/system.hpp"

namespace screwmob {

struct NewtonConfig {
  int max_iter = 50;
  double step_tol = 1e-12;
  double residual_tol = 1e-10;
  double damping = 1.0;
  double tol_rank = 1e-8;  // pseudo-inverse truncation, relative to sigma_max
};

struct NewtonResult {
  Eigen::VectorXd x;
  double residual = 0.0;
  int iterations = 0;
  bool converged = false;
};

using ResidualFn = std::function<Eigen::VectorXd(const Eigen::VectorXd&)>;
using JacobianFn = std::function<Eigen::MatrixXd(const Eigen::VectorXd&)>;

/// Generic Gauss-Newton with SVD minimum-norm steps.
NewtonResult gauss_newton(const ResidualFn& F, const JacobianFn& J,
                          const Eigen::VectorXd& x0,
                          const NewtonConfig& cfg = {});

/// Gauss-Newton with a forward-difference Jacobian.
NewtonResult gauss_newton_fd(const ResidualFn& F, const Eigen::VectorXd& x0,
                             const NewtonConfig& cfg = {}, double fd_step = 1e-7);

NewtonResult newton_project(const PolySystem& sys, const Eigen::VectorXd& x0,
                            const NewtonConfig& cfg = {});

struct SectionSpec {
  int abscissa = 0;  // swept variable, 0-based
  int ordinate = 1;  // plotted second coordinate, 0-based
  double lo = -0.3;
  double hi = 0.3;
  int steps = 200;
  int multistart = 8;
};

struct CloudPoint {
  Eigen::VectorXd x;
  double residual = 0.0;
  int branch = -1;
};

struct PointCloud {
  std::vector<CloudPoint> points;
  int num_branches = 0;
};

/// Points with norm below this are discarded everywhere: the singular point
/// itself carries no branch information.
inline constexpr double kRadiusFloor = 1e-3;

/// Deterministic 64-bit-seeded sampler; same seed => identical stream on any
/// platform (does not rely on std distribution internals).
class SeededSampler {
 public:
  explicit SeededSampler(uint64_t seed) : state_(seed ? seed : 0x9e3779b97f4a7c15ULL) {}
  double uniform();   // [0, 1)
  double gaussian();  // Box-Muller, standard normal
  Eigen::VectorXd gaussian_vector(int n);
  Eigen::VectorXd sphere_point(int n, double radius);

 private:
  uint64_t next();
  uint64_t state_;
  bool have_spare_ = false;
  double spare_ = 0.0;
};

PointCloud sweep_section(const PolySystem& sys, const SectionSpec& spec,
                         uint64_t seed, const NewtonConfig& cfg = {});

struct TangentEstimate {
  int branch = -1;
  Eigen::VectorXd direction;  // unit vector
  double fit_residual = 0.0;
  int support = 0;  // points used for the fit
  bool ok = false;
};

std::vector<TangentEstimate> limiting_tangents(const PointCloud& cloud,
                                               double max_radius = 0.1);

/// CSV with header `branch,residual,x1,...,xn`, 17 significant digits.
std::string cloud_to_csv(const PointCloud& cloud, int nvars);

}  // namespace screwmob

#endif
