#include "screwmob/poly.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace screwmob {

Poly Poly::constant(int nvars, double c) {
  Poly p(nvars);
  p.add_term(Monomial(nvars, 0), c);
  return p;
}

Poly Poly::variable(int nvars, int index) {
  if (index < 0 || index >= nvars)
    throw std::invalid_argument("Poly::variable: index out of range");
  Poly p(nvars);
  Monomial m(nvars, 0);
  m[index] = 1;
  p.add_term(m, 1.0);
  return p;
}

int Poly::degree() const {
  if (terms_.empty()) return -1;
  return monomial_degree(terms_.rbegin()->first);
}

void Poly::add_term(const Monomial& m, double c) {
  if (static_cast<int>(m.size()) != nvars_)
    throw std::invalid_argument("Poly::add_term: wrong variable count");
  auto it = terms_.find(m);
  if (it == terms_.end()) {
    if (std::abs(c) > kPruneTol) terms_.emplace(m, c);
  } else {
    it->second += c;
    if (std::abs(it->second) <= kPruneTol) terms_.erase(it);
  }
}

double Poly::coeff(const Monomial& m) const {
  auto it = terms_.find(m);
  return it == terms_.end() ? 0.0 : it->second;
}

double Poly::constant_term() const { return coeff(Monomial(nvars_, 0)); }

void Poly::prune() {
  for (auto it = terms_.begin(); it != terms_.end();) {
    if (std::abs(it->second) <= kPruneTol)
      it = terms_.erase(it);
    else
      ++it;
  }
}

Poly Poly::operator+(const Poly& o) const {
  if (nvars_ != o.nvars_)
    throw std::invalid_argument("Poly: variable count mismatch");
  Poly r = *this;
  for (const auto& [m, c] : o.terms_) r.add_term(m, c);
  return r;
}

Poly Poly::operator-(const Poly& o) const { return *this + o.scaled(-1.0); }
Poly Poly::operator-() const { return scaled(-1.0); }

Poly Poly::scaled(double c) const {
  Poly r(nvars_);
  for (const auto& [m, v] : terms_) {
    const double cv = v * c;
    if (std::abs(cv) > kPruneTol) r.terms_.emplace(m, cv);
  }
  return r;
}

Poly Poly::mul(const Poly& o, int truncate_at) const {
  if (nvars_ != o.nvars_)
    throw std::invalid_argument("Poly: variable count mismatch");
  Poly r(nvars_);
  for (const auto& [ma, ca] : terms_) {
    const int da = monomial_degree(ma);
    for (const auto& [mb, cb] : o.terms_) {
      if (truncate_at != kNoTruncation &&
          da + monomial_degree(mb) > truncate_at)
        continue;
      Monomial m(nvars_);
      for (int i = 0; i < nvars_; ++i)
        m[i] = static_cast<uint8_t>(ma[i] + mb[i]);
      r.add_term(m, ca * cb);
    }
  }
  r.prune();
  return r;
}

Poly Poly::homogeneous_component(int k) const {
  Poly r(nvars_);
  for (const auto& [m, c] : terms_)
    if (monomial_degree(m) == k) r.terms_.emplace(m, c);
  return r;
}

Poly Poly::truncated(int max_degree) const {
  Poly r(nvars_);
  for (const auto& [m, c] : terms_)
    if (monomial_degree(m) <= max_degree) r.terms_.emplace(m, c);
  return r;
}

Poly Poly::derivative(int var) const {
  Poly r(nvars_);
  for (const auto& [m, c] : terms_) {
    if (m[var] == 0) continue;
    Monomial d = m;
    d[var] -= 1;
    r.add_term(d, c * m[var]);
  }
  return r;
}

double Poly::eval(const Eigen::VectorXd& x) const {
  if (x.size() != nvars_)
    throw std::invalid_argument("Poly::eval: wrong point dimension");
  double acc = 0.0;
  for (const auto& [m, c] : terms_) {
    double t = c;
    for (int i = 0; i < nvars_; ++i)
      for (int e = 0; e < m[i]; ++e) t *= x(i);
    acc += t;
  }
  return acc;
}

std::string Poly::to_string() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  os.precision(15);
  bool first = true;
  for (const auto& [m, c] : terms_) {
    if (!first) os << (c < 0 ? " - " : " + ");
    if (first && c < 0) os << "-";
    first = false;
    os << std::abs(c);
    for (int i = 0; i < nvars_; ++i) {
      if (m[i] == 0) continue;
      os << "*x" << (i + 1);
      if (m[i] > 1) os << "^" << static_cast<int>(m[i]);
    }
  }
  return os.str();
}

double Poly::coeff_distance(const Poly& o) const {
  if (nvars_ != o.nvars_)
    throw std::invalid_argument("Poly: variable count mismatch");
  double d = 0.0;
  for (const auto& [m, c] : terms_) d = std::max(d, std::abs(c - o.coeff(m)));
  for (const auto& [m, c] : o.terms_) d = std::max(d, std::abs(c - coeff(m)));
  return d;
}

PolyMatrix::PolyMatrix(int rows, int cols, int nvars)
    : rows_(rows), cols_(cols), nvars_(nvars),
      e_(static_cast<size_t>(rows) * cols, Poly(nvars)) {}

PolyMatrix PolyMatrix::identity(int n, int nvars) {
  PolyMatrix m(n, n, nvars);
  for (int i = 0; i < n; ++i) m.at(i, i) = Poly::constant(nvars, 1.0);
  return m;
}

PolyMatrix PolyMatrix::operator+(const PolyMatrix& o) const {
  if (rows_ != o.rows_ || cols_ != o.cols_)
    throw std::invalid_argument("PolyMatrix: dimension mismatch");
  PolyMatrix r(rows_, cols_, nvars_);
  for (size_t i = 0; i < e_.size(); ++i) r.e_[i] = e_[i] + o.e_[i];
  return r;
}

PolyMatrix PolyMatrix::operator-(const PolyMatrix& o) const {
  return *this + o.scaled(-1.0);
}

PolyMatrix PolyMatrix::scaled(double c) const {
  PolyMatrix r(rows_, cols_, nvars_);
  for (size_t i = 0; i < e_.size(); ++i) r.e_[i] = e_[i].scaled(c);
  return r;
}

PolyMatrix PolyMatrix::mul_poly(const Poly& p, int truncate_at) const {
  PolyMatrix r(rows_, cols_, nvars_);
  for (size_t i = 0; i < e_.size(); ++i) r.e_[i] = e_[i].mul(p, truncate_at);
  return r;
}

PolyMatrix PolyMatrix::mul(const PolyMatrix& o, int truncate_at) const {
  if (cols_ != o.rows_)
    throw std::invalid_argument("PolyMatrix::mul: inner dimension mismatch");
  PolyMatrix r(rows_, o.cols_, nvars_);
  for (int i = 0; i < rows_; ++i)
    for (int k = 0; k < cols_; ++k) {
      const Poly& a = at(i, k);
      if (a.is_zero()) continue;
      for (int j = 0; j < o.cols_; ++j) {
        const Poly& b = o.at(k, j);
        if (b.is_zero()) continue;
        r.at(i, j) = r.at(i, j) + a.mul(b, truncate_at);
      }
    }
  return r;
}

namespace {

Poly det_recursive(const PolyMatrix& m, std::vector<int>& rows,
                   std::vector<int>& cols, int truncate_at) {
  const int k = static_cast<int>(rows.size());
  if (k == 1) return m.at(rows[0], cols[0]).truncated(
      truncate_at == Poly::kNoTruncation ? 127 : truncate_at);

  // expand along the column with the most zero entries
  int best_c = 0, best_zeros = -1;
  for (int cj = 0; cj < k; ++cj) {
    int z = 0;
    for (int ri = 0; ri < k; ++ri)
      if (m.at(rows[ri], cols[cj]).is_zero()) ++z;
    if (z > best_zeros) {
      best_zeros = z;
      best_c = cj;
    }
  }
  if (best_zeros == k) return Poly(m.nvars());

  Poly acc(m.nvars());
  const int col = cols[best_c];
  cols.erase(cols.begin() + best_c);
  for (int ri = 0; ri < k; ++ri) {
    const Poly& pivot = m.at(rows[ri], col);
    if (pivot.is_zero()) continue;
    const int row = rows[ri];
    rows.erase(rows.begin() + ri);
    Poly sub = det_recursive(m, rows, cols, truncate_at);
    rows.insert(rows.begin() + ri, row);
    if (!sub.is_zero()) {
      const double sign = ((ri + best_c) % 2 == 0) ? 1.0 : -1.0;
      acc = acc + pivot.mul(sub, truncate_at).scaled(sign);
    }
  }
  cols.insert(cols.begin() + best_c, col);
  return acc;
}

}  // namespace

Poly PolyMatrix::det(int truncate_at) const {
  if (rows_ != cols_)
    throw std::invalid_argument("PolyMatrix::det: non-square input");
  std::vector<int> rows(rows_), cols(cols_);
  for (int i = 0; i < rows_; ++i) rows[i] = i;
  for (int j = 0; j < cols_; ++j) cols[j] = j;
  return det_recursive(*this, rows, cols, truncate_at);
}

Eigen::MatrixXd PolyMatrix::eval(const Eigen::VectorXd& x) const {
  Eigen::MatrixXd r(rows_, cols_);
  for (int i = 0; i < rows_; ++i)
    for (int j = 0; j < cols_; ++j) r(i, j) = at(i, j).eval(x);
  return r;
}

bool PolyMatrix::is_zero() const {
  for (const auto& p : e_)
    if (!p.is_zero()) return false;
  return true;
}

bool PolyMatrix::row_is_zero(int i) const {
  for (int j = 0; j < cols_; ++j)
    if (!at(i, j).is_zero()) return false;
  return true;
}

bool PolyMatrix::col_is_zero(int j) const {
  for (int i = 0; i < rows_; ++i)
    if (!at(i, j).is_zero()) return false;
  return true;
}

PolyVec6 pv6_zero(int nvars) {
  PolyVec6 s;
  s.fill(Poly(nvars));
  return s;
}

PolyVec6 pv6_from_numeric(int nvars, const Eigen::Matrix<double, 6, 1>& v) {
  PolyVec6 s = pv6_zero(nvars);
  for (int i = 0; i < 6; ++i)
    if (v(i) != 0.0) s[i] = Poly::constant(nvars, v(i));
  return s;
}

PolyVec6 pv6_add(const PolyVec6& a, const PolyVec6& b) {
  PolyVec6 r;
  for (int i = 0; i < 6; ++i) r[i] = a[i] + b[i];
  return r;
}

PolyVec6 pv6_scale(const PolyVec6& a, double c) {
  PolyVec6 r;
  for (int i = 0; i < 6; ++i) r[i] = a[i].scaled(c);
  return r;
}

PolyVec6 pv6_mul(const PolyVec6& a, const Poly& p, int truncate_at) {
  PolyVec6 r;
  for (int i = 0; i < 6; ++i) r[i] = a[i].mul(p, truncate_at);
  return r;
}

bool pv6_is_zero(const PolyVec6& a) {
  for (const auto& p : a)
    if (!p.is_zero()) return false;
  return true;
}

PolyVec6 pv6_bracket(const PolyVec6& a, const PolyVec6& b, int truncate_at) {
  auto mul = [&](const Poly& p, const Poly& q) { return p.mul(q, truncate_at); };
  PolyVec6 r;
  // w = wa x wb
  r[0] = mul(a[1], b[2]) - mul(a[2], b[1]);
  r[1] = mul(a[2], b[0]) - mul(a[0], b[2]);
  r[2] = mul(a[0], b[1]) - mul(a[1], b[0]);
  // v = wa x vb - wb x va
  r[3] = mul(a[1], b[5]) - mul(a[2], b[4]) - (mul(b[1], a[5]) - mul(b[2], a[4]));
  r[4] = mul(a[2], b[3]) - mul(a[0], b[5]) - (mul(b[2], a[3]) - mul(b[0], a[5]));
  r[5] = mul(a[0], b[4]) - mul(a[1], b[3]) - (mul(b[0], a[4]) - mul(b[1], a[3]));
  return r;
}

PolyMatrix pv6_hat(const PolyVec6& s) {
  const int nv = s[0].nvars();
  PolyMatrix m(4, 4, nv);
  m.at(0, 1) = -s[2];
  m.at(0, 2) = s[1];
  m.at(1, 0) = s[2];
  m.at(1, 2) = -s[0];
  m.at(2, 0) = -s[1];
  m.at(2, 1) = s[0];
  m.at(0, 3) = s[3];
  m.at(1, 3) = s[4];
  m.at(2, 3) = s[5];
  return m;
}

}  // namespace screwmob
