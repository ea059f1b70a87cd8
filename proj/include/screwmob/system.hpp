#ifndef SCREWMOB_SYSTEM_HPP
#define SCREWMOB_SYSTEM_HPP

// A polynomial system in the direction variables x1..xn, with per-equation
// provenance strings. All systems built here vanish at x = 0.

#include <string>
#include <vector>

#include "screwmob/poly.hpp"

namespace screwmob {

struct PolySystem {
  enum class Kind { CSpace, Stratum, ConeCondition };

  int nvars = 0;
  Eigen::VectorXd origin;  // base configuration q0
  int order = 0;           // truncation order nu
  Kind kind = Kind::CSpace;
  std::vector<Poly> equations;
  std::vector<std::string> provenance;  // one label per equation

  void add(const Poly& p, const std::string& label) {
    if (p.is_zero()) return;
    equations.push_back(p);
    provenance.push_back(label);
    jac_.clear();
  }

  Eigen::VectorXd eval(const Eigen::VectorXd& x) const {
    Eigen::VectorXd r(equations.size());
    for (size_t i = 0; i < equations.size(); ++i) r(i) = equations[i].eval(x);
    return r;
  }

  Eigen::MatrixXd jacobian(const Eigen::VectorXd& x) const {
    ensure_jacobian();
    Eigen::MatrixXd J(equations.size(), nvars);
    for (size_t i = 0; i < equations.size(); ++i)
      for (int j = 0; j < nvars; ++j) J(i, j) = jac_[i][j].eval(x);
    return J;
  }

  /// Coefficient matrix of the degree-1 part (the system's linearization
  /// at the origin).
  Eigen::MatrixXd linear_part() const {
    return jacobian(Eigen::VectorXd::Zero(nvars));
  }

 private:
  void ensure_jacobian() const {
    if (jac_.size() == equations.size()) return;
    jac_.clear();
    for (const auto& e : equations) {
      std::vector<Poly> row;
      for (int j = 0; j < nvars; ++j) row.push_back(e.derivative(j));
      jac_.push_back(std::move(row));
    }
  }
  mutable std::vector<std::vector<Poly>> jac_;
};

}  // namespace screwmob

#endif
