#ifndef SCREWMOB_DIFFERENTIALS_HPP
#define SCREWMOB_DIFFERENTIALS_HPP

// Higher-order differentials of the loop closure maps.
//
// Two parallel machineries:
//  * numeric time jets along a joint trajectory q(t): screw derivatives
//    S_i^(m), constraint derivatives H^(k) = d^{k-1}/dt^{k-1} (J qdot) and
//    their affine split H^(k) = J q^(k) + B_k, and minor derivatives M^(m);
//  * symbolic directional differentials at an admissible configuration q0:
//    d^k f, d^k f^{-1}, d^k S_i as homogeneous degree-k polynomials in the
//    direction variables x1..xn, and minor differentials d^nu m.

#include <vector>

#include "screwmob/linkage.hpp"
#include "screwmob/poly.hpp"

namespace screwmob {

/// Exact binomial coefficient. Orders are capped at kMaxOrder so all the
/// factorial ratios stay exactly representable.
inline constexpr int kMaxOrder = 12;
long long binomial(int n, int k);
long long factorial(int n);

// ---- numeric time jets -------------------------------------------------

/// qjets is n x ord with column u holding q^(u+1). Returns jets[m] = 6 x n
/// matrix of S_i^(m) for m = 0..max_order (jets[0] = instantaneous screws),
/// columns zero for joints absent from the cycle.
std::vector<Eigen::MatrixXd> screw_time_derivatives(const Linkage& lk,
                                                    int cycle_id,
                                                    const Eigen::VectorXd& q,
                                                    const Eigen::MatrixXd& qjets,
                                                    int max_order);

struct ConstraintDerivatives {
  std::vector<Eigen::VectorXd> H;  // H[k-1] = H^(k), 6*gamma rows, k = 1..ord
  std::vector<Eigen::VectorXd> B;  // B[k-1] = B_k = H^(k) - J q^(k)
};

ConstraintDerivatives constraint_time_derivatives(const Linkage& lk,
                                                  const Eigen::VectorXd& q,
                                                  const Eigen::MatrixXd& qjets,
                                                  int ord);

/// M^(m), m = 0..ord, of det(J[rows, cols]) along the trajectory jets.
/// rows index the stacked 6*gamma Jacobian, cols the joints (0-based).
std::vector<double> minor_time_derivatives(const Linkage& lk,
                                           const Eigen::VectorXd& q,
                                           const Eigen::MatrixXd& qjets,
                                           const std::vector<int>& rows,
                                           const std::vector<int>& cols,
                                           int ord);

// ---- polynomial differentials at an admissible q0 ----------------------

struct DifferentialTable {
  int order = 0;
  int nvars = 0;
  std::vector<PolyMatrix> df;     // df[k] = d^k f, 4x4, df[0] = I
  std::vector<PolyMatrix> dfinv;  // dfinv[k] = d^k f^{-1}
  // dS[k][j] = d^k S_{j+1}; zero for joints absent from the cycle.
  std::vector<std::vector<PolyVec6>> dS;
};

/// Recursion-based table for one cycle. Throws LinkageError if q0 does not
/// satisfy the cycle's closure within closure_tol, or std::invalid_argument
/// if order exceeds kMaxOrder.
DifferentialTable differential_table(const Linkage& lk, int cycle_id,
                                     const Eigen::VectorXd& q0, int order,
                                     double closure_tol = 1e-9);

/// Independent direct-expansion evaluation of d^k f (multi-index sum over
/// ordered hat-matrix powers). Used to cross-check the recursion.
PolyMatrix differential_direct(const Linkage& lk, int cycle_id,
                               const Eigen::VectorXd& q0, int k);

/// Truncated Taylor matrix of the stacked Jacobian: entry (row, j) is
/// sum_{k=0..order} d^k S_{j+1}|_row / k!, rows blocked 6 per cycle.
/// tables must hold one DifferentialTable per cycle, in cycle order.
PolyMatrix taylor_jacobian(const Linkage& lk,
                           const std::vector<DifferentialTable>& tables,
                           int order);

/// d^nu m for the minor on (rows, cols) of the stacked Jacobian:
/// nu! times the degree-nu homogeneous component of the truncated
/// polynomial determinant of the Taylor Jacobian submatrix.
Poly minor_differential(const Linkage& lk,
                        const std::vector<DifferentialTable>& tables,
                        const std::vector<int>& rows,
                        const std::vector<int>& cols, int nu);

}  // namespace screwmob

#endif
