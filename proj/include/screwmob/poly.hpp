#ifndef SCREWMOB_POLY_HPP
#define SCREWMOB_POLY_HPP

// Sparse multivariate polynomials over the direction variables x1..xn and
// matrices with polynomial entries. Terms are kept in graded-lexicographic
// order; coefficients below the pruning threshold are dropped after every
// arithmetic operation.

#include <Eigen/Dense>
#include <array>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace screwmob {

using Monomial = std::vector<uint8_t>;  // exponent multi-index, length n

inline int monomial_degree(const Monomial& m) {
  int d = 0;
  for (uint8_t e : m) d += e;
  return d;
}

/// Graded-lex: lower total degree first, then lexicographic on exponents.
struct GrlexLess {
  bool operator()(const Monomial& a, const Monomial& b) const {
    const int da = monomial_degree(a), db = monomial_degree(b);
    if (da != db) return da < db;
    return a > b;  // x1 before x2 within a degree
  }
};

class Poly {
 public:
  static constexpr double kPruneTol = 1e-14;
  static constexpr int kNoTruncation = -1;

  Poly() : nvars_(0) {}
  explicit Poly(int nvars) : nvars_(nvars) {}

  static Poly constant(int nvars, double c);
  static Poly variable(int nvars, int index);  // x_{index}, 0-based

  int nvars() const { return nvars_; }
  bool is_zero() const { return terms_.empty(); }
  int degree() const;  // -1 for the zero polynomial
  const std::map<Monomial, double, GrlexLess>& terms() const { return terms_; }

  void add_term(const Monomial& m, double c);
  double coeff(const Monomial& m) const;
  double constant_term() const;

  Poly operator+(const Poly& o) const;
  Poly operator-(const Poly& o) const;
  Poly operator-() const;
  Poly operator*(const Poly& o) const { return mul(o, kNoTruncation); }
  Poly scaled(double c) const;

  /// Product discarding all monomials of degree > truncate_at
  /// (kNoTruncation keeps everything).
  Poly mul(const Poly& o, int truncate_at) const;

  Poly homogeneous_component(int k) const;
  Poly truncated(int max_degree) const;
  Poly derivative(int var) const;

  double eval(const Eigen::VectorXd& x) const;

  /// Canonical text form "c * x1^a1*x2^a2 + ..." in graded-lex order.
  std::string to_string() const;

  /// Largest |coefficient| difference; polynomials must share nvars.
  double coeff_distance(const Poly& o) const;

 private:
  void prune();
  int nvars_;
  std::map<Monomial, double, GrlexLess> terms_;
};

inline Poly operator*(double c, const Poly& p) { return p.scaled(c); }

class PolyMatrix {
 public:
  PolyMatrix() : rows_(0), cols_(0), nvars_(0) {}
  PolyMatrix(int rows, int cols, int nvars);

  static PolyMatrix identity(int n, int nvars);

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  int nvars() const { return nvars_; }

  Poly& at(int i, int j) { return e_[i * cols_ + j]; }
  const Poly& at(int i, int j) const { return e_[i * cols_ + j]; }

  PolyMatrix operator+(const PolyMatrix& o) const;
  PolyMatrix operator-(const PolyMatrix& o) const;
  PolyMatrix scaled(double c) const;
  PolyMatrix mul(const PolyMatrix& o, int truncate_at) const;
  /// Entrywise product with a scalar polynomial.
  PolyMatrix mul_poly(const Poly& p, int truncate_at) const;

  /// Determinant by cofactor expansion with degree truncation; size <= 6.
  Poly det(int truncate_at) const;

  Eigen::MatrixXd eval(const Eigen::VectorXd& x) const;
  bool is_zero() const;
  bool row_is_zero(int i) const;
  bool col_is_zero(int j) const;

 private:
  int rows_, cols_, nvars_;
  std::vector<Poly> e_;
};

/// Screw with polynomial coordinates (the d^k S_i objects).
using PolyVec6 = std::array<Poly, 6>;

PolyVec6 pv6_zero(int nvars);
PolyVec6 pv6_from_numeric(int nvars, const Eigen::Matrix<double, 6, 1>& s);
PolyVec6 pv6_add(const PolyVec6& a, const PolyVec6& b);
PolyVec6 pv6_scale(const PolyVec6& a, double c);
PolyVec6 pv6_mul(const PolyVec6& a, const Poly& p, int truncate_at);
bool pv6_is_zero(const PolyVec6& a);

/// Screw bracket with Poly coordinates.
PolyVec6 pv6_bracket(const PolyVec6& a, const PolyVec6& b, int truncate_at);

/// 4x4 twist matrix [[w^, v],[0,0]] with Poly entries.
PolyMatrix pv6_hat(const PolyVec6& s);

}  // namespace screwmob

#endif
