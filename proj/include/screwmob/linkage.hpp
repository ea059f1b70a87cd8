#ifndef SCREWMOB_LINKAGE_HPP
#define SCREWMOB_LINKAGE_HPP

// Linkage description (joints, reference screws, fundamental cycles) and
// first-order kinematics: cycle closure maps, instantaneous screws, stacked
// Jacobian and numerical rank.

#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "screwmob/screw.hpp"

namespace screwmob {

enum class JointKind { Revolute, Prismatic, Helical };

struct Joint {
  int id = 0;  // 1..n
  JointKind kind = JointKind::Revolute;
  Vec6 Y = Vec6::Zero();  // reference screw, world frame, q = 0
};

struct CycleStep {
  int joint = 0;  // joint id
  int sign = +1;  // orientation of the joint within this cycle
};

struct FundamentalCycle {
  int id = 0;  // 1..gamma
  std::vector<CycleStep> steps;
};

class LinkageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Linkage {
  std::string name;
  std::vector<Joint> joints;           // ordered by id
  std::vector<FundamentalCycle> cycles;  // ordered by id

  int n() const { return static_cast<int>(joints.size()); }
  int num_cycles() const { return static_cast<int>(cycles.size()); }
  const Joint& joint(int id) const { return joints.at(id - 1); }
  const FundamentalCycle& cycle(int id) const { return cycles.at(id - 1); }
};

/// Load and validate a linkage JSON file. `parameter_overrides` replaces
/// values of the file's named parameters before screw expressions are
/// evaluated. Throws LinkageError with field-level diagnostics.
Linkage load_linkage(const std::string& path,
                     const std::map<std::string, double>& parameter_overrides = {});

/// Same, from an in-memory JSON string.
Linkage parse_linkage(const std::string& json_text,
                      const std::map<std::string, double>& parameter_overrides = {});

/// Ordered product of exp(sign * q_j * Y_j) along the cycle's steps.
Transform cycle_map(const Linkage& lk, int cycle_id, const Eigen::VectorXd& q);

/// 6 x n matrix of instantaneous screws for one cycle, with the cycle sign
/// folded into each column; joints absent from the cycle give zero columns.
Eigen::MatrixXd instantaneous_screws(const Linkage& lk, int cycle_id,
                                     const Eigen::VectorXd& q);

/// 6*gamma x n matrix with cycle blocks stacked.
Eigen::MatrixXd stacked_jacobian(const Linkage& lk, const Eigen::VectorXd& q);

struct RankResult {
  int rank = 0;
  Eigen::MatrixXd kernel;    // n x (n-rank), orthonormal columns
  Eigen::MatrixXd cokernel;  // m x (m-rank), orthonormal columns
  Eigen::VectorXd singular_values;
};

/// Rank as the count of singular values > tol * sigma_max, plus orthonormal
/// kernel and cokernel bases.
RankResult numeric_rank(const Eigen::MatrixXd& m, double tol_rank = 1e-8);

}  // namespace screwmob

#endif
