#include "screwmob/solver.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>

namespace screwmob {

namespace {

Eigen::VectorXd pinv_solve(const Eigen::MatrixXd& J, const Eigen::VectorXd& b,
                           double tol_rank) {
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(J, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const auto& s = svd.singularValues();
  const double smax = s.size() ? s(0) : 0.0;
  Eigen::VectorXd t = svd.matrixU().transpose() * b;
  for (int i = 0; i < s.size(); ++i)
    t(i) = (smax > 0.0 && s(i) > tol_rank * smax) ? t(i) / s(i) : 0.0;
  return svd.matrixV() * t;
}

}  // namespace

NewtonResult gauss_newton(const ResidualFn& F, const JacobianFn& J,
                          const Eigen::VectorXd& x0, const NewtonConfig& cfg) {
  NewtonResult r;
  r.x = x0;
  for (int it = 0; it < cfg.max_iter; ++it) {
    const Eigen::VectorXd f = F(r.x);
    r.residual = f.norm();
    r.iterations = it;
    if (r.residual < cfg.residual_tol) {
      r.converged = true;
      return r;
    }
    const Eigen::VectorXd dx = pinv_solve(J(r.x), -f, cfg.tol_rank);
    r.x += cfg.damping * dx;
    if (dx.norm() < cfg.step_tol) break;
  }
  r.residual = F(r.x).norm();
  r.converged = r.residual < cfg.residual_tol;
  return r;
}

NewtonResult gauss_newton_fd(const ResidualFn& F, const Eigen::VectorXd& x0,
                             const NewtonConfig& cfg, double fd_step) {
  JacobianFn J = [&F, fd_step](const Eigen::VectorXd& x) {
    const Eigen::VectorXd f0 = F(x);
    Eigen::MatrixXd Jm(f0.size(), x.size());
    for (int j = 0; j < x.size(); ++j) {
      Eigen::VectorXd xp = x;
      const double h = fd_step * std::max(1.0, std::abs(x(j)));
      xp(j) += h;
      Jm.col(j) = (F(xp) - f0) / h;
    }
    return Jm;
  };
  return gauss_newton(F, J, x0, cfg);
}

NewtonResult newton_project(const PolySystem& sys, const Eigen::VectorXd& x0,
                            const NewtonConfig& cfg) {
  return gauss_newton([&sys](const Eigen::VectorXd& x) { return sys.eval(x); },
                      [&sys](const Eigen::VectorXd& x) { return sys.jacobian(x); },
                      x0, cfg);
}

uint64_t SeededSampler::next() {
  // splitmix64: stable across platforms and standard libraries
  state_ += 0x9e3779b97f4a7c15ULL;
  uint64_t z = state_;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

double SeededSampler::uniform() {
  return static_cast<double>(next() >> 11) * 0x1.0p-53;
}

double SeededSampler::gaussian() {
  if (have_spare_) {
    have_spare_ = false;
    return spare_;
  }
  double u1 = uniform(), u2 = uniform();
  while (u1 <= 1e-300) u1 = uniform();
  const double m = std::sqrt(-2.0 * std::log(u1));
  spare_ = m * std::sin(2.0 * M_PI * u2);
  have_spare_ = true;
  return m * std::cos(2.0 * M_PI * u2);
}

Eigen::VectorXd SeededSampler::gaussian_vector(int n) {
  Eigen::VectorXd v(n);
  for (int i = 0; i < n; ++i) v(i) = gaussian();
  return v;
}

Eigen::VectorXd SeededSampler::sphere_point(int n, double radius) {
  Eigen::VectorXd v = gaussian_vector(n);
  const double nn = v.norm();
  return nn > 0 ? Eigen::VectorXd(v * (radius / nn)) : sphere_point(n, radius);
}

PointCloud sweep_section(const PolySystem& sys, const SectionSpec& spec,
                         uint64_t seed, const NewtonConfig& cfg) {
  PointCloud cloud;
  if (spec.steps <= 0 || spec.lo >= spec.hi) return cloud;
  const int n = sys.nvars;
  const double span = spec.hi - spec.lo;
  const double step = span / spec.steps;

  // kernel of the linearization: randomized starts live there
  const Eigen::MatrixXd L = sys.linear_part();
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(L, Eigen::ComputeFullV);
  const auto& s = svd.singularValues();
  const double smax = s.size() ? s(0) : 0.0;
  int rank = 0;
  for (int i = 0; i < s.size(); ++i)
    if (smax > 0.0 && s(i) > cfg.tol_rank * smax) ++rank;
  const Eigen::MatrixXd K = svd.matrixV().rightCols(n - rank);

  SeededSampler rng(seed);
  struct Branch {
    Eigen::VectorXd last;
    Eigen::VectorXd prev;  // empty until the branch has two points
    int last_step = 0;
  };
  std::vector<Branch> branches;
  constexpr int kMaxGap = 3;  // steps a branch may skip before it goes stale

  for (int si = 0; si <= spec.steps; ++si) {
    const double a = spec.lo + si * step;

    PolySystem aug = sys;
    Poly pin = Poly::variable(n, spec.abscissa);
    pin.add_term(Monomial(n, 0), -a);
    aug.add(pin, "section pin x" + std::to_string(spec.abscissa + 1));

    std::vector<Eigen::VectorXd> starts;
    for (const auto& b : branches) {
      if (si - b.last_step > kMaxGap) continue;
      Eigen::VectorXd p = b.last;
      if (b.prev.size() == n) p += b.last - b.prev;  // linear predictor
      p(spec.abscissa) = a;
      starts.push_back(p);
      p = b.last;
      p(spec.abscissa) = a;
      starts.push_back(p);
    }
    for (int ms = 0; ms < spec.multistart; ++ms) {
      Eigen::VectorXd x0;
      if (K.cols() > 0) {
        Eigen::VectorXd z = rng.gaussian_vector(static_cast<int>(K.cols()));
        x0 = K * (z * (2.0 * std::abs(a) + step));
        x0 += 0.05 * step * rng.gaussian_vector(n);
      } else {
        x0 = 0.1 * span * rng.gaussian_vector(n);
      }
      x0(spec.abscissa) = a;
      starts.push_back(x0);
    }

    std::vector<Eigen::VectorXd> accepted;
    std::vector<double> residuals;
    for (const auto& x0 : starts) {
      const NewtonResult nr = newton_project(aug, x0, cfg);
      if (!nr.converged) continue;
      if (nr.x.norm() < kRadiusFloor) continue;
      bool dup = false;
      for (const auto& y : accepted)
        if ((y - nr.x).norm() < 1e-6) {
          dup = true;
          break;
        }
      if (!dup) {
        accepted.push_back(nr.x);
        residuals.push_back(nr.residual);
      }
    }
    // canonical order for deterministic branch assignment
    std::vector<size_t> order(accepted.size());
    for (size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::sort(order.begin(), order.end(), [&](size_t lhs, size_t rhs) {
      return accepted[lhs](spec.ordinate) < accepted[rhs](spec.ordinate);
    });

    // one-to-one greedy matching against each branch's previous-step point;
    // a branch may bridge up to kMaxGap missing steps at a padded threshold
    struct Cand {
      double dist;
      size_t point;
      size_t branch;
    };
    std::vector<Cand> cands;
    for (size_t pi : order)
      for (size_t b = 0; b < branches.size(); ++b) {
        const int gap = si - branches[b].last_step;
        if (gap > kMaxGap) continue;
        const Eigen::VectorXd& p = branches[b].last;
        const Eigen::VectorXd& q = accepted[pi];
        // never link across the excluded ball around the singular point:
        // branch identities are meaningless through it
        const Eigen::VectorXd dseg = q - p;
        double t = dseg.squaredNorm() > 0 ? -p.dot(dseg) / dseg.squaredNorm() : 0.0;
        t = std::clamp(t, 0.0, 1.0);
        if ((p + t * dseg).norm() < std::max(kRadiusFloor, 2.0 * step)) continue;
        const double d = dseg.norm();
        if (d < 6.0 * step * gap) cands.push_back({d, pi, b});
      }
    std::sort(cands.begin(), cands.end(), [](const Cand& lhs, const Cand& rhs) {
      return lhs.dist != rhs.dist ? lhs.dist < rhs.dist
                                  : std::tie(lhs.point, lhs.branch) <
                                        std::tie(rhs.point, rhs.branch);
    });
    std::vector<int> assign(accepted.size(), -1);
    std::vector<char> used(branches.size(), 0);
    for (const auto& c : cands) {
      if (assign[c.point] >= 0 || used[c.branch]) continue;
      assign[c.point] = static_cast<int>(c.branch);
      used[c.branch] = 1;
    }
    for (size_t pi : order) {
      int b = assign[pi];
      if (b < 0) {
        branches.push_back({accepted[pi], Eigen::VectorXd(), si});
        b = static_cast<int>(branches.size()) - 1;
      } else {
        branches[b].prev = branches[b].last;
        branches[b].last = accepted[pi];
        branches[b].last_step = si;
      }
      cloud.points.push_back({accepted[pi], residuals[pi], b});
    }
  }
  cloud.num_branches = static_cast<int>(branches.size());
  return cloud;
}

std::vector<TangentEstimate> limiting_tangents(const PointCloud& cloud,
                                               double max_radius) {
  std::vector<TangentEstimate> out;
  for (int b = 0; b < cloud.num_branches; ++b) {
    std::vector<const CloudPoint*> pts;
    for (const auto& p : cloud.points)
      if (p.branch == b && p.x.norm() < max_radius) pts.push_back(&p);
    TangentEstimate te;
    te.branch = b;
    te.support = static_cast<int>(pts.size());
    std::set<long> radii;
    for (auto* p : pts) radii.insert(std::lround(p->x.norm() * 1e6));
    if (pts.size() < 3 || radii.size() < 3) {
      out.push_back(te);
      continue;
    }
    const int n = static_cast<int>(pts[0]->x.size());
    // fit u(r) = u0 + c r per component over the unit directions, signs
    // aligned to the innermost point; u0 is the limiting direction
    std::sort(pts.begin(), pts.end(), [](const CloudPoint* a, const CloudPoint* c) {
      return a->x.norm() < c->x.norm();
    });
    const Eigen::VectorXd ref = pts[0]->x.normalized();
    Eigen::MatrixXd A(pts.size(), 2);
    Eigen::MatrixXd Y(pts.size(), n);
    for (size_t i = 0; i < pts.size(); ++i) {
      const double r = pts[i]->x.norm();
      Eigen::VectorXd u = pts[i]->x.normalized();
      if (u.dot(ref) < 0) u = -u;
      A(i, 0) = 1.0;
      A(i, 1) = r;
      Y.row(i) = u.transpose();
    }
    const Eigen::MatrixXd C = A.colPivHouseholderQr().solve(Y);
    te.direction = C.row(0).transpose().normalized();
    te.fit_residual = (A * C - Y).norm() / std::sqrt(static_cast<double>(pts.size()));
    te.ok = true;
    out.push_back(te);
  }
  return out;
}

std::string cloud_to_csv(const PointCloud& cloud, int nvars) {
  std::ostringstream os;
  os.precision(17);
  os << "branch,residual";
  for (int j = 1; j <= nvars; ++j) os << ",x" << j;
  os << "\n";
  for (const auto& p : cloud.points) {
    os << p.branch << "," << p.residual;
    for (int j = 0; j < nvars; ++j) os << "," << p.x(j);
    os << "\n";
  }
  return os.str();
}

}  // namespace screwmob
