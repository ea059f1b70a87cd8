#ifndef SCREWMOB_LOCAL_ANALYSIS_HPP
#define SCREWMOB_LOCAL_ANALYSIS_HPP

// The four local objects at an admissible configuration q0, and the
// classification built on them:
//   K^i      tangent cone to smooth motions (order-by-order jet conditions)
//   K^{k,i}  tangent cone restricted to the rank-(< k) stratum
//   V^nu     truncated-Taylor c-space approximation
//   L_k^nu   truncated-Taylor rank-stratum approximation

#include <optional>

#include "screwmob/differentials.hpp"
#include "screwmob/solver.hpp"
#include "screwmob/system.hpp"

namespace screwmob {

PolySystem build_cspace_system(const Linkage& lk, const Eigen::VectorXd& q0,
                               int nu);
PolySystem build_stratum_system(const Linkage& lk, const Eigen::VectorXd& q0,
                                int k, int nu);

/// Minor index pairs that survive structural pruning: rows restricted to the
/// coordinate support of each cycle's involutive closure, minors that are
/// identically zero dropped. Throws if the surviving count exceeds max_pairs.
struct MinorIndex {
  std::vector<int> rows;  // into the stacked 6*gamma Jacobian
  std::vector<int> cols;  // joints, 0-based
};
std::vector<MinorIndex> enumerate_minors(const Linkage& lk, int k,
                                         int max_pairs = 20000);

enum class ConeMode { Exact, Sampled };

struct ConeResult {
  int order_reached = 1;
  bool stabilized = false;
  bool is_zero = false;            // cone = {0}
  int kernel_dim = 0;              // dim K^1
  bool full_kernel = false;        // cone = all of K^1
  // exact mode: one unit vector per 1-dimensional branch
  std::vector<Eigen::VectorXd> branch_directions;
  std::vector<int> branch_dims;
  // sampled mode: membership residual per sampled direction of K^1
  std::vector<Eigen::VectorXd> sample_directions;
  std::vector<double> sample_residuals;
  double min_residual = 0.0;
  std::string diagnostic;
};

struct ConeConfig {
  double tol_cone = 1e-6;
  double tol_rank = 1e-8;
  int sphere_samples = 721;      // grid/sample count over the K^1 sphere
  int max_kernel_dim_exact = 2;  // blowup guard for exact mode
  uint64_t seed = 1;
};

ConeResult tangent_cone(const Linkage& lk, const Eigen::VectorXd& q0,
                        int max_order, ConeMode mode, const ConeConfig& cfg = {});
ConeResult tangent_cone_stratum(const Linkage& lk, const Eigen::VectorXd& q0,
                                int k, int max_order, ConeMode mode,
                                const ConeConfig& cfg = {});

/// Jet-feasibility residual of direction x at the given order: the minimum
/// over intermediate jets of the stacked |H^(2..order)| (plus |M^(1..order)|
/// of each minor when minors are supplied). Zero residual = member of K^order.
double cone_membership_residual(const Linkage& lk, const Eigen::VectorXd& q0,
                                const Eigen::VectorXd& x, int order,
                                const std::vector<MinorIndex>& minors = {},
                                double tol_rank = 1e-8);

struct LocalDimensionResult {
  int dim = -1;
  bool conclusive = false;
  bool consistent_across_radii = false;
  double convergence_rate = 0.0;  // converged starts / total starts
  std::vector<Eigen::VectorXd> samples;  // retained regular points (outer radius)
};

LocalDimensionResult local_dimension(const PolySystem& sys, double radius,
                                     int samples, uint64_t seed,
                                     double tol_rank = 1e-8,
                                     const NewtonConfig& cfg = {});

struct ClassificationReport {
  std::string linkage_name;
  int n = 0;
  int gamma = 0;
  int rank = 0;
  int delta_diff = 0;
  int d_max = 0;            // involutive-closure mobility bound
  int delta_loc = -1;       // dim V^nu; -1 when undecided
  int order_used = 0;
  int cone_order = 0;
  int branch_count = 0;
  bool constraint_singularity = false;
  bool kinematic_singularity = false;
  bool cspace_singularity = false;
  bool cusp = false;
  bool decided = true;
  std::string diagnosis;  // human-readable summary line
};

struct ClassifyConfig {
  int nu_max = 3;
  double radius = 0.05;
  int samples = 100;
  uint64_t seed = 1;
  double tol_rank = 1e-8;
  double tol_cone = 1e-6;
};

ClassificationReport classify(const Linkage& lk, const Eigen::VectorXd& q0,
                              const ClassifyConfig& cfg = {});

std::string report_to_json(const ClassificationReport& r);
std::string report_to_text(const ClassificationReport& r);
std::string system_to_text(const PolySystem& sys);

}  // namespace screwmob

#endif
