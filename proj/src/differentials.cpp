#include "screwmob/differentials.hpp"

#include <functional>
#include <stdexcept>

namespace screwmob {

long long factorial(int n) {
  if (n < 0 || n > 2 * kMaxOrder)
    throw std::invalid_argument("factorial: argument out of range");
  long long f = 1;
  for (int i = 2; i <= n; ++i) f *= i;
  return f;
}

long long binomial(int n, int k) {
  if (k < 0 || k > n) return 0;
  if (n > 2 * kMaxOrder) throw std::invalid_argument("binomial: n out of range");
  long long b = 1;
  for (int i = 0; i < k; ++i) b = b * (n - i) / (i + 1);
  return b;
}

namespace {

void check_order(int ord) {
  if (ord < 0 || ord > kMaxOrder)
    throw std::invalid_argument("differential order must be in [0, " +
                                std::to_string(kMaxOrder) + "]");
}

// Chain positions (0-based joint indices) of the cycle's steps, in order.
std::vector<int> cycle_chain(const Linkage& lk, int cycle_id) {
  std::vector<int> chain;
  for (const auto& st : lk.cycle(cycle_id).steps) chain.push_back(st.joint - 1);
  return chain;
}

}  // namespace

std::vector<Eigen::MatrixXd> screw_time_derivatives(const Linkage& lk,
                                                    int cycle_id,
                                                    const Eigen::VectorXd& q,
                                                    const Eigen::MatrixXd& qjets,
                                                    int max_order) {
  check_order(max_order);
  if (qjets.rows() != lk.n() || qjets.cols() < max_order)
    throw std::invalid_argument("screw_time_derivatives: qjets must be n x (>= max_order)");
  const auto chain = cycle_chain(lk, cycle_id);
  std::vector<Eigen::MatrixXd> jets(max_order + 1,
                                    Eigen::MatrixXd::Zero(6, lk.n()));
  jets[0] = instantaneous_screws(lk, cycle_id, q);

  // S_i^(m) = sum_{j before i} sum_{r+s+u=m-1} (m-1)!/(r!s!u!)
  //           [S_j^(r), S_i^(s)] q_j^(u+1)
  for (int m = 1; m <= max_order; ++m) {
    for (size_t ci = 0; ci < chain.size(); ++ci) {
      const int i = chain[ci];
      Vec6 acc = Vec6::Zero();
      for (size_t cj = 0; cj < ci; ++cj) {
        const int j = chain[cj];
        for (int r = 0; r <= m - 1; ++r) {
          for (int s = 0; s <= m - 1 - r; ++s) {
            const int u = m - 1 - r - s;
            const double c =
                static_cast<double>(factorial(m - 1)) /
                (factorial(r) * factorial(s) * factorial(u));
            acc += c * qjets(j, u) *
                   lie_bracket(jets[r].col(j), jets[s].col(i));
          }
        }
      }
      jets[m].col(i) = acc;
    }
  }
  return jets;
}

ConstraintDerivatives constraint_time_derivatives(const Linkage& lk,
                                                  const Eigen::VectorXd& q,
                                                  const Eigen::MatrixXd& qjets,
                                                  int ord) {
  check_order(ord);
  const int n = lk.n();
  const int gamma = lk.num_cycles();
  ConstraintDerivatives out;
  out.H.assign(ord, Eigen::VectorXd::Zero(6 * gamma));
  out.B.assign(ord, Eigen::VectorXd::Zero(6 * gamma));
  const Eigen::MatrixXd J = stacked_jacobian(lk, q);
  for (int l = 1; l <= gamma; ++l) {
    const auto jets = screw_time_derivatives(lk, l, q, qjets, ord - 1);
    // H^(k) = sum_i sum_{r+u=k-1} C(k-1,r) S_i^(r) q_i^(u+1)
    for (int k = 1; k <= ord; ++k) {
      Vec6 h = Vec6::Zero();
      for (int i = 0; i < n; ++i)
        for (int r = 0; r <= k - 1; ++r)
          h += static_cast<double>(binomial(k - 1, r)) * qjets(i, k - 1 - r) *
               jets[r].col(i);
      out.H[k - 1].segment<6>(6 * (l - 1)) = h;
    }
  }
  for (int k = 1; k <= ord; ++k)
    out.B[k - 1] = out.H[k - 1] - J * qjets.col(k - 1);
  return out;
}

std::vector<double> minor_time_derivatives(const Linkage& lk,
                                           const Eigen::VectorXd& q,
                                           const Eigen::MatrixXd& qjets,
                                           const std::vector<int>& rows,
                                           const std::vector<int>& cols,
                                           int ord) {
  check_order(ord);
  if (rows.size() != cols.size())
    throw std::invalid_argument("minor_time_derivatives: minor must be square");
  // Stack the jets of all cycles, then take a truncated univariate
  // determinant in t of the submatrix's Taylor expansion.
  std::vector<Eigen::MatrixXd> stacked(ord + 1,
                                       Eigen::MatrixXd::Zero(6 * lk.num_cycles(), lk.n()));
  for (int l = 1; l <= lk.num_cycles(); ++l) {
    const auto jets = screw_time_derivatives(lk, l, q, qjets, ord);
    for (int m = 0; m <= ord; ++m)
      stacked[m].middleRows(6 * (l - 1), 6) = jets[m];
  }
  const int k = static_cast<int>(rows.size());
  PolyMatrix T(k, k, 1);  // entries are truncated polynomials in t
  for (int a = 0; a < k; ++a)
    for (int b = 0; b < k; ++b) {
      Poly p(1);
      for (int m = 0; m <= ord; ++m) {
        const double c = stacked[m](rows[a], cols[b]) / factorial(m);
        if (c != 0.0) p.add_term(Monomial{static_cast<uint8_t>(m)}, c);
      }
      T.at(a, b) = p;
    }
  const Poly d = T.det(ord);
  std::vector<double> M(ord + 1);
  for (int m = 0; m <= ord; ++m)
    M[m] = factorial(m) * d.coeff(Monomial{static_cast<uint8_t>(m)});
  return M;
}

DifferentialTable differential_table(const Linkage& lk, int cycle_id,
                                     const Eigen::VectorXd& q0, int order,
                                     double closure_tol) {
  check_order(order);
  if (cycle_map(lk, cycle_id, q0).deviation_from_identity() > closure_tol)
    throw LinkageError("differential_table: q0 violates closure of cycle " +
                       std::to_string(cycle_id));
  const int n = lk.n();
  const auto chain = cycle_chain(lk, cycle_id);

  DifferentialTable T;
  T.order = order;
  T.nvars = n;
  T.df.assign(order + 1, PolyMatrix::identity(4, n));
  T.dfinv.assign(order + 1, PolyMatrix::identity(4, n));
  T.dS.assign(order + 1, std::vector<PolyVec6>(n, pv6_zero(n)));

  // Re-rooting at an admissible q0: the closure map factors as a product of
  // exponentials in the current instantaneous screws, so d^0 S_i = S_i(q0).
  const Eigen::MatrixXd S0 = instantaneous_screws(lk, cycle_id, q0);
  for (int i = 0; i < n; ++i) T.dS[0][i] = pv6_from_numeric(n, S0.col(i));

  for (int k = 1; k <= order; ++k) {
    // d^k S_i = sum_{j before i} x_j sum_r C(k-1,r) [d^r S_j, d^{k-1-r} S_i]
    for (size_t ci = 0; ci < chain.size(); ++ci) {
      const int i = chain[ci];
      PolyVec6 acc = pv6_zero(n);
      for (size_t cj = 0; cj < ci; ++cj) {
        const int j = chain[cj];
        PolyVec6 inner = pv6_zero(n);
        for (int r = 0; r <= k - 1; ++r)
          inner = pv6_add(inner,
                          pv6_scale(pv6_bracket(T.dS[r][j], T.dS[k - 1 - r][i], k - 1),
                                    static_cast<double>(binomial(k - 1, r))));
        acc = pv6_add(acc, pv6_mul(inner, Poly::variable(n, j), k));
      }
      T.dS[k][i] = acc;
    }
    // h^(k) = sum_i x_i hat(d^{k-1} S_i)
    PolyMatrix h(4, 4, n);
    for (int i : chain)
      h = h + pv6_hat(T.dS[k - 1][i]).mul_poly(Poly::variable(n, i), k);
    // d^k f = h^(k) - sum_{i=1..k-1} C(k-1,i-1) d^i f d^{k-i} f^{-1}
    PolyMatrix dkf = h;
    for (int i = 1; i <= k - 1; ++i)
      dkf = dkf - T.df[i].mul(T.dfinv[k - i], k)
                     .scaled(static_cast<double>(binomial(k - 1, i - 1)));
    T.df[k] = dkf;
    // d^k f^{-1} = -sum_{i=1..k} C(k,i) d^i f d^{k-i} f^{-1}
    PolyMatrix dkfi(4, 4, n);
    for (int i = 1; i <= k; ++i)
      dkfi = dkfi - T.df[i].mul(T.dfinv[k - i], k)
                       .scaled(static_cast<double>(binomial(k, i)));
    T.dfinv[k] = dkfi;
  }
  return T;
}

PolyMatrix differential_direct(const Linkage& lk, int cycle_id,
                               const Eigen::VectorXd& q0, int k) {
  check_order(k);
  const int n = lk.n();
  const auto chain = cycle_chain(lk, cycle_id);
  const Eigen::MatrixXd S0 = instantaneous_screws(lk, cycle_id, q0);
  const int m = static_cast<int>(chain.size());

  // d^k f = sum_{|a|=k} (k!/a!) x^a  Yt_1^{a_1} ... Yt_m^{a_m}
  // with Yt the hat matrices of the (signed, re-rooted) screws in chain order.
  std::vector<Eigen::Matrix4d> Yt(m);
  for (int c = 0; c < m; ++c) Yt[c] = hat(S0.col(chain[c]));

  PolyMatrix out(4, 4, n);
  std::vector<int> a(m, 0);
  // enumerate compositions of k into m nonnegative parts
  std::function<void(int, int, const Eigen::Matrix4d&, long long)> rec =
      [&](int pos, int rem, const Eigen::Matrix4d& prod, long long afact) {
        if (pos == m) {
          if (rem != 0) return;
          Monomial mono(n, 0);
          for (int c = 0; c < m; ++c)
            mono[chain[c]] += static_cast<uint8_t>(a[c]);
          const double coef = static_cast<double>(factorial(k)) / afact;
          for (int i = 0; i < 4; ++i)
            for (int j = 0; j < 4; ++j)
              if (prod(i, j) != 0.0) out.at(i, j).add_term(mono, coef * prod(i, j));
          return;
        }
        Eigen::Matrix4d p = prod;
        for (int e = 0; e <= rem; ++e) {
          a[pos] = e;
          rec(pos + 1, rem - e, p, afact * factorial(e));
          p = p * Yt[pos];
        }
        a[pos] = 0;
      };
  rec(0, k, Eigen::Matrix4d::Identity(), 1);
  return out;
}

PolyMatrix taylor_jacobian(const Linkage& lk,
                           const std::vector<DifferentialTable>& tables,
                           int order) {
  if (static_cast<int>(tables.size()) != lk.num_cycles())
    throw std::invalid_argument("taylor_jacobian: one table per cycle required");
  const int n = lk.n();
  PolyMatrix P(6 * lk.num_cycles(), n, n);
  for (int l = 0; l < lk.num_cycles(); ++l)
    for (int j = 0; j < n; ++j)
      for (int row = 0; row < 6; ++row) {
        Poly p(n);
        for (int k = 0; k <= std::min(order, tables[l].order); ++k)
          p = p + tables[l].dS[k][j][row].scaled(1.0 / factorial(k));
        P.at(6 * l + row, j) = p;
      }
  return P;
}

Poly minor_differential(const Linkage& lk,
                        const std::vector<DifferentialTable>& tables,
                        const std::vector<int>& rows,
                        const std::vector<int>& cols, int nu) {
  check_order(nu);
  if (rows.size() != cols.size())
    throw std::invalid_argument("minor_differential: minor must be square");
  const PolyMatrix P = taylor_jacobian(lk, tables, nu);
  const int k = static_cast<int>(rows.size());
  PolyMatrix sub(k, k, lk.n());
  for (int a = 0; a < k; ++a)
    for (int b = 0; b < k; ++b) sub.at(a, b) = P.at(rows[a], cols[b]);
  return sub.det(nu).homogeneous_component(nu).scaled(
      static_cast<double>(factorial(nu)));
}

}  // namespace screwmob
