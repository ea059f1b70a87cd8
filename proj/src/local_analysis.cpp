#include "screwmob/local_analysis.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace screwmob {

namespace {

std::vector<DifferentialTable> all_tables(const Linkage& lk,
                                          const Eigen::VectorXd& q0, int nu) {
  std::vector<DifferentialTable> t;
  for (int l = 1; l <= lk.num_cycles(); ++l)
    t.push_back(differential_table(lk, l, q0, nu));
  return t;
}

void combinations(int n, int k, const std::function<void(const std::vector<int>&)>& fn) {
  std::vector<int> idx(k);
  std::function<void(int, int)> rec = [&](int start, int depth) {
    if (depth == k) {
      fn(idx);
      return;
    }
    for (int i = start; i <= n - (k - depth); ++i) {
      idx[depth] = i;
      rec(i + 1, depth + 1);
    }
  };
  if (k >= 0 && k <= n) rec(0, 0);
}

}  // namespace

PolySystem build_cspace_system(const Linkage& lk, const Eigen::VectorXd& q0,
                               int nu) {
  const auto tables = all_tables(lk, q0, nu);
  PolySystem sys;
  sys.nvars = lk.n();
  sys.origin = q0;
  sys.order = nu;
  sys.kind = PolySystem::Kind::CSpace;
  for (int l = 0; l < lk.num_cycles(); ++l)
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 4; ++j) {
        Poly p(lk.n());
        for (int k = 1; k <= nu; ++k)
          p = p + tables[l].df[k].at(i, j).scaled(1.0 / factorial(k));
        sys.add(p, "cycle " + std::to_string(l + 1) + " entry (" +
                       std::to_string(i + 1) + "," + std::to_string(j + 1) + ")");
      }
  return sys;
}

std::vector<MinorIndex> enumerate_minors(const Linkage& lk, int k,
                                         int max_pairs) {
  if (k < 1 || k > std::min(6 * lk.num_cycles(), lk.n()))
    throw std::invalid_argument("enumerate_minors: k out of range");
  // Rows outside the coordinate support of a cycle's involutive closure are
  // identically zero in the stacked Jacobian; skip them up front.
  std::vector<int> active_rows;
  for (int l = 1; l <= lk.num_cycles(); ++l) {
    std::vector<Vec6> screws;
    for (const auto& st : lk.cycle(l).steps) screws.push_back(lk.joint(st.joint).Y);
    const ClosureResult cl = involutive_closure(screws);
    for (int row = 0; row < 6; ++row) {
      bool nonzero = false;
      for (const auto& b : cl.basis)
        if (std::abs(b(row)) > 1e-9) nonzero = true;
      if (nonzero) active_rows.push_back(6 * (l - 1) + row);
    }
  }
  if (static_cast<int>(active_rows.size()) < k) return {};

  std::vector<MinorIndex> out;
  std::vector<std::vector<int>> row_sets, col_sets;
  combinations(static_cast<int>(active_rows.size()), k,
               [&](const std::vector<int>& idx) {
                 std::vector<int> rows;
                 for (int i : idx) rows.push_back(active_rows[i]);
                 row_sets.push_back(rows);
               });
  combinations(lk.n(), k, [&](const std::vector<int>& idx) { col_sets.push_back(idx); });
  if (row_sets.size() * col_sets.size() > static_cast<size_t>(max_pairs))
    throw std::runtime_error("enumerate_minors: " +
                             std::to_string(row_sets.size() * col_sets.size()) +
                             " minor pairs exceed limit " + std::to_string(max_pairs));
  for (const auto& r : row_sets)
    for (const auto& c : col_sets) out.push_back({r, c});
  return out;
}

PolySystem build_stratum_system(const Linkage& lk, const Eigen::VectorXd& q0,
                                int k, int nu) {
  PolySystem sys = build_cspace_system(lk, q0, nu);
  sys.kind = PolySystem::Kind::Stratum;
  const auto tables = all_tables(lk, q0, nu);
  for (const auto& mi : enumerate_minors(lk, k)) {
    Poly p(lk.n());
    for (int v = 1; v <= nu; ++v)
      p = p + minor_differential(lk, tables, mi.rows, mi.cols, v)
                  .scaled(1.0 / factorial(v));
    std::ostringstream label;
    label << "minor rows(";
    for (size_t i = 0; i < mi.rows.size(); ++i)
      label << (i ? "," : "") << mi.rows[i] + 1;
    label << ") cols(";
    for (size_t i = 0; i < mi.cols.size(); ++i)
      label << (i ? "," : "") << mi.cols[i] + 1;
    label << ")";
    sys.add(p, label.str());
  }
  return sys;
}

double cone_membership_residual(const Linkage& lk, const Eigen::VectorXd& q0,
                                const Eigen::VectorXd& x, int order,
                                const std::vector<MinorIndex>& minors,
                                double tol_rank) {
  const int n = lk.n();
  const Eigen::MatrixXd J = stacked_jacobian(lk, q0);

  auto residual_for = [&](const Eigen::VectorXd& jets) {
    Eigen::MatrixXd qjets(n, order);
    qjets.col(0) = x;
    for (int m = 2; m <= order; ++m)
      qjets.col(m - 1) = jets.segment(n * (m - 2), n);
    const auto cd = constraint_time_derivatives(lk, q0, qjets, order);
    std::vector<double> parts;
    for (int m = 1; m <= order; ++m)
      for (int i = 0; i < cd.H[m - 1].size(); ++i) parts.push_back(cd.H[m - 1](i));
    for (const auto& mi : minors) {
      const auto M = minor_time_derivatives(lk, q0, qjets, mi.rows, mi.cols, order);
      for (int m = 1; m <= order; ++m) parts.push_back(M[m]);
    }
    return Eigen::Map<Eigen::VectorXd>(parts.data(), parts.size()).eval();
  };

  if (order <= 1) return residual_for(Eigen::VectorXd::Zero(0)).norm();

  // Sequential least-squares seed for the intermediate jets.
  Eigen::MatrixXd qjets = Eigen::MatrixXd::Zero(n, order);
  qjets.col(0) = x;
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(J, Eigen::ComputeThinU | Eigen::ComputeThinV);
  for (int m = 2; m <= order; ++m) {
    const auto cd = constraint_time_derivatives(lk, q0, qjets, m);
    const Eigen::VectorXd Bm = cd.B[m - 1];
    Eigen::VectorXd t = svd.matrixU().transpose() * (-Bm);
    const auto& s = svd.singularValues();
    for (int i = 0; i < s.size(); ++i)
      t(i) = (s(i) > tol_rank * s(0)) ? t(i) / s(i) : 0.0;
    qjets.col(m - 1) = svd.matrixV() * t;
  }
  Eigen::VectorXd seed(n * (order - 1));
  for (int m = 2; m <= order; ++m)
    seed.segment(n * (m - 2), n) = qjets.col(m - 1);

  NewtonConfig cfg;
  cfg.max_iter = 40;
  cfg.residual_tol = 1e-13;
  cfg.tol_rank = tol_rank;
  double best = residual_for(seed).norm();
  SeededSampler rng(0x5eedf00dULL);
  for (int attempt = 0; attempt < 3; ++attempt) {
    Eigen::VectorXd x0 = seed;
    if (attempt > 0) x0 += 0.1 * x.norm() * rng.gaussian_vector(static_cast<int>(seed.size()));
    const NewtonResult nr = gauss_newton_fd(residual_for, x0, cfg);
    best = std::min(best, nr.residual);
    best = std::min(best, residual_for(nr.x).norm());
  }
  return best;
}

namespace {

Eigen::VectorXd sign_normalized(Eigen::VectorXd v) {
  for (int c = 0; c < v.size(); ++c) {
    if (std::abs(v(c)) > 1e-9) {
      if (v(c) < 0) v = -v;
      break;
    }
  }
  return v;
}

double golden_min(const std::function<double(double)>& f, double a, double b,
                  int iters = 60) {
  const double phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double x1 = b - phi * (b - a), x2 = a + phi * (b - a);
  double f1 = f(x1), f2 = f(x2);
  for (int i = 0; i < iters && b - a > 1e-12; ++i) {
    if (f1 < f2) {
      b = x2;
      x2 = x1;
      f2 = f1;
      x1 = b - phi * (b - a);
      f1 = f(x1);
    } else {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + phi * (b - a);
      f2 = f(x2);
    }
  }
  return f1 < f2 ? x1 : x2;
}

ConeResult cone_impl(const Linkage& lk, const Eigen::VectorXd& q0, int max_order,
                     ConeMode mode, const ConeConfig& cfg,
                     const std::vector<MinorIndex>& minors) {
  if (max_order < 2) throw std::invalid_argument("tangent_cone: max_order >= 2 required");
  const Eigen::MatrixXd J = stacked_jacobian(lk, q0);
  const RankResult rr = numeric_rank(J, cfg.tol_rank);
  const Eigen::MatrixXd K = rr.kernel;
  const int d = static_cast<int>(K.cols());

  ConeResult res;
  res.kernel_dim = d;
  if (d == 0) {
    res.is_zero = true;
    res.stabilized = true;
    res.order_reached = 1;
    res.diagnostic = "kernel of J is trivial";
    return res;
  }
  if (mode == ConeMode::Exact && d > cfg.max_kernel_dim_exact)
    throw std::runtime_error(
        "tangent_cone: exact mode supports kernel dimension <= " +
        std::to_string(cfg.max_kernel_dim_exact) + ", got " + std::to_string(d) +
        "; use sampled mode");

  // J surjective onto the closure coordinates: every kernel direction admits
  // jets of all orders, the cone is the whole kernel.
  if (rr.rank == J.rows() && minors.empty()) {
    res.full_kernel = true;
    res.stabilized = true;
    res.order_reached = 1;
    res.branch_dims = {d};
    for (int i = 0; i < d; ++i) res.branch_directions.push_back(K.col(i));
    return res;
  }

  const int first_order = minors.empty() ? 2 : 1;

  if (mode == ConeMode::Exact) {
    auto rho = [&](double th, int ord) {
      const Eigen::VectorXd dir =
          d == 1 ? Eigen::VectorXd(K.col(0))
                 : Eigen::VectorXd(K.col(0) * std::cos(th) + K.col(1) * std::sin(th));
      return cone_membership_residual(lk, q0, dir, ord, minors, cfg.tol_rank);
    };

    // Consecutive-order agreement is no proof of termination: a jet
    // obstruction can first appear two orders later (cusps only obstruct at
    // even orders), so the sequence is always driven to max_order; only the
    // empty cone allows an early stop since K can never grow again.
    std::vector<double> roots, prev_roots;
    bool full_now = false, prev_full = false, have_prev = false;
    int order = first_order;
    double minres = 0.0;
    const double win = 2.0 * M_PI / cfg.sphere_samples;  // polish window
    auto polish = [&](double lo, double hi, int ord) {
      const double th = golden_min([&](double t) { return rho(t, ord); }, lo, hi);
      const double r = rho(th, ord);
      minres = std::min(minres, r);
      if (r < cfg.tol_cone) {
        double thn = std::fmod(th + M_PI, M_PI);
        if (thn < 0) thn += M_PI;
        bool dup = false;
        for (double t0 : roots) {
          const double dd = std::abs(t0 - thn);
          if (std::min(dd, M_PI - dd) < 1e-4) dup = true;
        }
        if (!dup) roots.push_back(thn);
      }
    };
    for (; order <= max_order; ++order) {
      const std::vector<double> carried = roots;
      const bool carried_full = full_now;
      roots.clear();
      full_now = false;
      minres = 1e300;
      if (d == 1) {
        const double r = rho(0.0, order);
        minres = r;
        if (r < cfg.tol_cone) roots.push_back(0.0);
      } else if (!have_prev || carried_full) {
        // full grid scan + golden-section polish of every local minimum
        const int m = cfg.sphere_samples;
        std::vector<double> g(m);
        for (int i = 0; i < m; ++i) g[i] = rho(M_PI * i / m, order);
        minres = *std::min_element(g.begin(), g.end());
        if (*std::max_element(g.begin(), g.end()) < cfg.tol_cone) {
          full_now = true;
        } else {
          for (int i = 0; i < m; ++i) {
            const double gl = g[(i + m - 1) % m], gr = g[(i + 1) % m];
            if (g[i] <= gl && g[i] <= gr && g[i] < 1e4 * cfg.tol_cone)
              polish(M_PI * (i - 1) / m, M_PI * (i + 1) / m, order);
          }
        }
      } else {
        // K^order is contained in K^{order-1}: only revisit previous roots
        for (double t0 : carried) polish(t0 - win, t0 + win, order);
      }
      std::sort(roots.begin(), roots.end());
      const bool same = have_prev && full_now == prev_full &&
                        roots.size() == prev_roots.size() &&
                        [&] {
                          for (size_t i = 0; i < roots.size(); ++i) {
                            const double dd = std::abs(roots[i] - prev_roots[i]);
                            if (std::min(dd, M_PI - dd) > 1e-4) return false;
                          }
                          return true;
                        }();
      res.stabilized = same;
      prev_roots = roots;
      prev_full = full_now;
      have_prev = true;
      if (roots.empty() && !full_now) {
        res.stabilized = true;
        break;
      }
    }
    res.order_reached = std::min(order, max_order);
    res.min_residual = minres;
    res.full_kernel = full_now;
    res.is_zero = roots.empty() && !full_now;
    if (res.full_kernel) {
      res.branch_dims = {d};
      for (int i = 0; i < d; ++i) res.branch_directions.push_back(K.col(i));
    } else {
      for (double th : roots) {
        const Eigen::VectorXd dir =
            d == 1 ? Eigen::VectorXd(K.col(0))
                   : Eigen::VectorXd(K.col(0) * std::cos(th) + K.col(1) * std::sin(th));
        res.branch_directions.push_back(sign_normalized(dir));
        res.branch_dims.push_back(1);
      }
    }
    return res;
  }

  // Sampled mode: sublevel set of the membership residual over seeded sphere
  // samples of ker J.
  std::vector<Eigen::VectorXd> dirs;
  if (d == 1) {
    dirs.push_back(K.col(0));
  } else if (d == 2) {
    for (int i = 0; i < cfg.sphere_samples; ++i) {
      const double th = M_PI * i / cfg.sphere_samples;
      dirs.push_back(K.col(0) * std::cos(th) + K.col(1) * std::sin(th));
    }
  } else {
    SeededSampler rng(cfg.seed);
    for (int i = 0; i < cfg.sphere_samples; ++i) {
      Eigen::VectorXd z = rng.gaussian_vector(d);
      dirs.push_back((K * z).normalized());
    }
  }
  std::vector<char> prev_member(dirs.size(), 1);
  std::vector<double> residuals(dirs.size(), 0.0);
  bool have_prev = false;
  int order = first_order;
  for (; order <= max_order; ++order) {
    std::vector<char> member(dirs.size());
    for (size_t i = 0; i < dirs.size(); ++i) {
      residuals[i] = prev_member[i]
                         ? cone_membership_residual(lk, q0, dirs[i], order,
                                                    minors, cfg.tol_rank)
                         : std::max(residuals[i], 1.0);  // excluded earlier
      member[i] = residuals[i] < cfg.tol_cone;
    }
    const bool empty = std::none_of(member.begin(), member.end(),
                                    [](char c) { return c != 0; });
    res.stabilized = have_prev && member == prev_member;
    prev_member = member;
    have_prev = true;
    if (empty) {
      // monotonicity: the empty cone is final
      res.stabilized = true;
      break;
    }
  }
  res.order_reached = std::min(order, max_order);
  res.sample_directions = dirs;
  res.sample_residuals = residuals;
  res.min_residual = *std::min_element(residuals.begin(), residuals.end());
  const int members = static_cast<int>(
      std::count(prev_member.begin(), prev_member.end(), char(1)));
  res.is_zero = members == 0;
  res.full_kernel = members == static_cast<int>(dirs.size());
  return res;
}

}  // namespace

ConeResult tangent_cone(const Linkage& lk, const Eigen::VectorXd& q0,
                        int max_order, ConeMode mode, const ConeConfig& cfg) {
  return cone_impl(lk, q0, max_order, mode, cfg, {});
}

ConeResult tangent_cone_stratum(const Linkage& lk, const Eigen::VectorXd& q0,
                                int k, int max_order, ConeMode mode,
                                const ConeConfig& cfg) {
  return cone_impl(lk, q0, max_order, mode, cfg, enumerate_minors(lk, k));
}

LocalDimensionResult local_dimension(const PolySystem& sys, double radius,
                                     int samples, uint64_t seed,
                                     double tol_rank, const NewtonConfig& cfg) {
  LocalDimensionResult out;
  std::vector<int> dims_per_radius;
  for (int ri = 0; ri < 3; ++ri) {
    const double r = radius / (1 << ri);
    SeededSampler rng(seed + ri);
    int converged = 0;
    std::map<int, int> hist;
    std::vector<Eigen::VectorXd> retained;
    for (int s = 0; s < samples; ++s) {
      const Eigen::VectorXd x0 = rng.sphere_point(sys.nvars, r);
      const NewtonResult nr = newton_project(sys, x0, cfg);
      if (!nr.converged) continue;
      ++converged;
      if (nr.x.norm() < kRadiusFloor) continue;
      const RankResult jr = numeric_rank(sys.jacobian(nr.x), tol_rank);
      ++hist[sys.nvars - jr.rank];
      retained.push_back(nr.x);
    }
    // every converged start collapsing into the origin floor means the local
    // solution set is the point itself: dimension zero
    const bool origin_only = converged > 0 && retained.empty();
    if (ri == 0) {
      out.convergence_rate = static_cast<double>(converged) / samples;
      out.samples = retained;
      out.conclusive = static_cast<int>(retained.size()) >= samples / 10 ||
                       (origin_only && converged >= (4 * samples) / 5);
    }
    int modal = origin_only ? 0 : -1, best = 0;
    for (const auto& [dim, count] : hist)
      if (count > best) {
        best = count;
        modal = dim;
      }
    dims_per_radius.push_back(modal);
  }
  out.dim = dims_per_radius[0];
  out.consistent_across_radii = dims_per_radius[0] == dims_per_radius[1] &&
                                dims_per_radius[1] == dims_per_radius[2];
  return out;
}

ClassificationReport classify(const Linkage& lk, const Eigen::VectorXd& q0,
                              const ClassifyConfig& cfg) {
  ClassificationReport rep;
  rep.linkage_name = lk.name;
  rep.n = lk.n();
  rep.gamma = lk.num_cycles();
  rep.order_used = cfg.nu_max;

  const Eigen::MatrixXd J = stacked_jacobian(lk, q0);
  const RankResult rr = numeric_rank(J, cfg.tol_rank);
  rep.rank = rr.rank;
  rep.delta_diff = lk.n() - rr.rank;

  int closure_sum = 0;
  for (int l = 1; l <= lk.num_cycles(); ++l) {
    std::vector<Vec6> screws;
    for (const auto& st : lk.cycle(l).steps) screws.push_back(lk.joint(st.joint).Y);
    closure_sum += involutive_closure(screws).dimension;
  }
  rep.d_max = std::min({closure_sum, lk.n(), 6 * lk.num_cycles()});
  rep.constraint_singularity = rep.rank < rep.d_max;

  ConeConfig ccfg;
  ccfg.tol_cone = cfg.tol_cone;
  ccfg.tol_rank = cfg.tol_rank;
  ccfg.seed = cfg.seed;
  const ConeMode mode =
      rr.kernel.cols() <= 2 ? ConeMode::Exact : ConeMode::Sampled;
  const ConeResult cone =
      tangent_cone(lk, q0, std::max(cfg.nu_max + 1, 4), mode, ccfg);
  rep.cone_order = cone.order_reached;
  rep.branch_count = static_cast<int>(cone.branch_directions.size());
  if (cone.full_kernel) rep.branch_count = 1;

  // Gauss-Newton converges only linearly this close to the rank-deficient
  // origin; sampling needs a larger iteration budget than refinement.
  NewtonConfig ncfg;
  ncfg.max_iter = 200;

  const PolySystem V = build_cspace_system(lk, q0, cfg.nu_max);
  const LocalDimensionResult ld =
      local_dimension(V, cfg.radius, cfg.samples, cfg.seed, cfg.tol_rank, ncfg);
  rep.delta_loc = ld.conclusive ? ld.dim : (cone.is_zero ? 0 : -1);
  if (cone.is_zero && !ld.conclusive) rep.delta_loc = 0;

  rep.cusp = cone.is_zero && rep.delta_loc >= 1;

  int cone_dim = 0;
  if (cone.full_kernel)
    cone_dim = cone.kernel_dim;
  else if (!cone.branch_dims.empty())
    cone_dim = *std::max_element(cone.branch_dims.begin(), cone.branch_dims.end());
  rep.cspace_singularity = rep.branch_count >= 2 || rep.cusp ||
                           (rep.delta_loc >= 0 && cone_dim != rep.delta_loc);

  // Kinematic singularity: motion exists but the rank-(rank+1) stratum is
  // locally just the point, i.e. the rank jumps on every nearby motion.
  bool stratum_trivial = false;
  if (rep.rank + 1 <= std::min(6 * lk.num_cycles(), lk.n())) {
    const PolySystem Lk =
        build_stratum_system(lk, q0, rep.rank + 1, std::min(cfg.nu_max, 2));
    const LocalDimensionResult sld = local_dimension(
        Lk, cfg.radius, cfg.samples, cfg.seed + 17, cfg.tol_rank, ncfg);
    stratum_trivial = sld.samples.empty();
  }
  rep.kinematic_singularity = rep.delta_loc >= 1 && stratum_trivial;

  // implication chain: c-space => kinematic => constraint
  if (rep.cspace_singularity) rep.kinematic_singularity = true;
  if (rep.kinematic_singularity) rep.constraint_singularity = true;

  rep.decided = cone.stabilized && (ld.conclusive || cone.is_zero);
  std::ostringstream d;
  if (!rep.decided) {
    d << "undecided at order " << cfg.nu_max;
  } else if (rep.cusp) {
    d << "cusp: tangent cone {0} with dim V = " << rep.delta_loc;
  } else if (rep.branch_count >= 2) {
    d << "bifurcation: " << rep.branch_count << " smooth branches through q0";
  } else if (!rep.cspace_singularity && !rep.constraint_singularity) {
    d << "regular point, local dof " << rep.delta_loc;
  } else {
    d << "constraint singularity, local dof " << rep.delta_loc;
  }
  rep.diagnosis = d.str();
  return rep;
}

std::string report_to_json(const ClassificationReport& r) {
  nlohmann::json j;
  j["schema_version"] = 1;
  j["linkage"] = r.linkage_name;
  j["n"] = r.n;
  j["gamma"] = r.gamma;
  j["rank"] = r.rank;
  j["delta_diff"] = r.delta_diff;
  j["d_max"] = r.d_max;
  j["delta_loc"] = r.delta_loc;
  j["order_used"] = r.order_used;
  j["cone_order"] = r.cone_order;
  j["branch_count"] = r.branch_count;
  j["flags"]["constraint_singularity"] = r.constraint_singularity;
  j["flags"]["kinematic_singularity"] = r.kinematic_singularity;
  j["flags"]["cspace_singularity"] = r.cspace_singularity;
  j["flags"]["cusp"] = r.cusp;
  j["decided"] = r.decided;
  j["diagnosis"] = r.diagnosis;
  return j.dump(2);
}

std::string report_to_text(const ClassificationReport& r) {
  std::ostringstream os;
  os << "linkage:        " << r.linkage_name << "\n"
     << "joints n:       " << r.n << "\n"
     << "cycles gamma:   " << r.gamma << "\n"
     << "rank J(q0):     " << r.rank << "\n"
     << "delta_diff:     " << r.delta_diff << "\n"
     << "d_max bound:    " << r.d_max << "\n"
     << "delta_loc:      " << (r.delta_loc >= 0 ? std::to_string(r.delta_loc) : "undecided")
     << "\n"
     << "branches:       " << r.branch_count << "\n"
     << "cone order:     " << r.cone_order << "\n"
     << "constraint singularity: " << (r.constraint_singularity ? "yes" : "no") << "\n"
     << "kinematic singularity:  " << (r.kinematic_singularity ? "yes" : "no") << "\n"
     << "c-space singularity:    " << (r.cspace_singularity ? "yes" : "no") << "\n"
     << "cusp:                   " << (r.cusp ? "yes" : "no") << "\n"
     << "diagnosis: " << r.diagnosis << "\n";
  return os.str();
}

std::string system_to_text(const PolySystem& sys) {
  std::ostringstream os;
  os << "# variables: " << sys.nvars << ", order: " << sys.order << ", equations: "
     << sys.equations.size() << "\n";
  for (size_t i = 0; i < sys.equations.size(); ++i) {
    os << "# " << sys.provenance[i] << "\n";
    os << sys.equations[i].to_string() << " = 0\n";
  }
  return os.str();
}

}  // namespace screwmob
