#include "screwmob/screwmob_c.h"

#include <cstdlib>
#include <cstring>
#include <new>
#include <string>

#include "screwmob/linkage.hpp"
#include "screwmob/local_analysis.hpp"
#include "screwmob/solver.hpp"

#include "json.hpp"

using nlohmann::json;

struct sm_linkage {
  screwmob::Linkage lk;
};

namespace {

char* dup_string(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (out) std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

void put(char** slot, const std::string& s) {
  if (slot) *slot = dup_string(s);
}

void put_error(char** slot, const std::string& msg) {
  json j;
  j["error"] = msg;
  put(slot, j.dump(2) + "\n");
}

int validate_options(const sm_linkage* lk, const sm_options* o,
                     char** json_out) {
  if (!lk || !o) {
    put_error(json_out, "null linkage or options");
    return SM_ERR_VALIDATION;
  }
  const int n = lk->lk.n();
  if (o->order < 1 || o->order > screwmob::kMaxOrder) {
    put_error(json_out, "order out of range");
    return SM_ERR_VALIDATION;
  }
  if (o->k < 0 || o->k > n) {
    put_error(json_out, "k out of range");
    return SM_ERR_VALIDATION;
  }
  if (!(o->tol_rank > 0) || !(o->tol_cone > 0)) {
    put_error(json_out, "tolerances must be positive");
    return SM_ERR_VALIDATION;
  }
  if (o->section_abscissa < 1 || o->section_abscissa > n ||
      o->section_ordinate < 1 || o->section_ordinate > n ||
      o->section_abscissa == o->section_ordinate) {
    put_error(json_out, "section variable indices out of range");
    return SM_ERR_VALIDATION;
  }
  if (!(o->range_lo < o->range_hi) || o->range_steps < 2) {
    put_error(json_out, "invalid sweep range");
    return SM_ERR_VALIDATION;
  }
  if (!(o->radius > 0) || o->samples < 1) {
    put_error(json_out, "invalid sampling radius/count");
    return SM_ERR_VALIDATION;
  }
  return SM_OK;
}

json cone_to_json(const screwmob::ConeResult& c) {
  json j;
  j["order_reached"] = c.order_reached;
  j["stabilized"] = c.stabilized;
  j["is_zero"] = c.is_zero;
  j["kernel_dim"] = c.kernel_dim;
  j["full_kernel"] = c.full_kernel;
  j["min_residual"] = c.min_residual;
  j["diagnostic"] = c.diagnostic;
  json dirs = json::array();
  for (const auto& d : c.branch_directions) {
    json v = json::array();
    for (int i = 0; i < d.size(); ++i) v.push_back(d(i));
    dirs.push_back(v);
  }
  j["branch_directions"] = dirs;
  j["branch_dims"] = c.branch_dims;
  return j;
}

json dim_to_json(const screwmob::LocalDimensionResult& r) {
  json j;
  j["dim"] = r.dim;
  j["conclusive"] = r.conclusive;
  j["consistent_across_radii"] = r.consistent_across_radii;
  j["convergence_rate"] = r.convergence_rate;
  j["retained_samples"] = static_cast<int>(r.samples.size());
  return j;
}

template <typename Fn>
int guarded(char** json_out, Fn&& fn) {
  try {
    return fn();
  } catch (const screwmob::LinkageError& e) {
    put_error(json_out, e.what());
    return SM_ERR_VALIDATION;
  } catch (const std::invalid_argument& e) {
    put_error(json_out, e.what());
    return SM_ERR_VALIDATION;
  } catch (const std::exception& e) {
    put_error(json_out, std::string("internal error: ") + e.what());
    return SM_ERR_INTERNAL;
  }
}

screwmob::ConeConfig cone_cfg(const sm_options* o) {
  screwmob::ConeConfig c;
  c.tol_cone = o->tol_cone;
  c.tol_rank = o->tol_rank;
  c.seed = o->seed;
  return c;
}

int run_cone(const sm_linkage* lk, const sm_options* opts, char** json_out,
             int stratum_k) {
  if (int rc = validate_options(lk, opts, json_out)) return rc;
  return guarded(json_out, [&]() {
    const screwmob::Linkage& L = lk->lk;
    Eigen::VectorXd q0 = Eigen::VectorXd::Zero(L.n());
    auto base = screwmob::numeric_rank(screwmob::stacked_jacobian(L, q0),
                                       opts->tol_rank);
    int k = stratum_k;
    if (stratum_k > 0 && opts->k > 0) k = opts->k;
    screwmob::ConeConfig cfg = cone_cfg(opts);
    int kernel_dim = L.n() - base.rank;
    screwmob::ConeMode mode = kernel_dim <= cfg.max_kernel_dim_exact
                                  ? screwmob::ConeMode::Exact
                                  : screwmob::ConeMode::Sampled;
    screwmob::ConeResult c =
        stratum_k > 0
            ? screwmob::tangent_cone_stratum(L, q0, k, opts->order, mode, cfg)
            : screwmob::tangent_cone(L, q0, opts->order, mode, cfg);
    json j;
    j["linkage"] = L.name;
    j["rank"] = base.rank;
    if (stratum_k > 0) j["k"] = k;
    j["mode"] = mode == screwmob::ConeMode::Exact ? "exact" : "sampled";
    j["cone"] = cone_to_json(c);
    put(json_out, j.dump(2) + "\n");
    return SM_OK;
  });
}

int run_variety(const sm_linkage* lk, const sm_options* opts, char** json_out,
                char** system_out, bool stratum) {
  if (int rc = validate_options(lk, opts, json_out)) return rc;
  return guarded(json_out, [&]() {
    const screwmob::Linkage& L = lk->lk;
    Eigen::VectorXd q0 = Eigen::VectorXd::Zero(L.n());
    auto base = screwmob::numeric_rank(screwmob::stacked_jacobian(L, q0),
                                       opts->tol_rank);
    int k = opts->k > 0 ? opts->k : base.rank + 1;
    screwmob::PolySystem sys =
        stratum ? screwmob::build_stratum_system(L, q0, k, opts->order)
                : screwmob::build_cspace_system(L, q0, opts->order);
    screwmob::NewtonConfig ncfg;
    ncfg.max_iter = 200;
    ncfg.tol_rank = opts->tol_rank;
    auto dim = screwmob::local_dimension(sys, opts->radius, opts->samples,
                                         opts->seed, opts->tol_rank, ncfg);
    json j;
    j["linkage"] = L.name;
    j["order"] = opts->order;
    j["rank"] = base.rank;
    if (stratum) j["k"] = k;
    j["equations"] = static_cast<int>(sys.equations.size());
    j["local_dimension"] = dim_to_json(dim);
    put(json_out, j.dump(2) + "\n");
    put(system_out, screwmob::system_to_text(sys));
    return dim.conclusive ? SM_OK : SM_ERR_INCONCLUSIVE;
  });
}

}  // namespace

extern "C" {

void sm_options_init(sm_options* o) {
  if (!o) return;
  o->order = 3;
  o->k = 0;
  o->tol_rank = 1e-8;
  o->tol_cone = 1e-6;
  o->seed = 1;
  o->section_abscissa = 1;
  o->section_ordinate = 2;
  o->range_lo = -0.3;
  o->range_hi = 0.3;
  o->range_steps = 200;
  o->radius = 0.05;
  o->samples = 100;
}

sm_linkage* sm_linkage_load(const char* path, char** err_out) {
  if (err_out) *err_out = nullptr;
  if (!path) {
    if (err_out) *err_out = dup_string("null path");
    return nullptr;
  }
  try {
    auto* h = new sm_linkage{screwmob::load_linkage(path)};
    return h;
  } catch (const std::exception& e) {
    if (err_out) *err_out = dup_string(e.what());
    return nullptr;
  }
}

void sm_linkage_free(sm_linkage* lk) { delete lk; }

int sm_linkage_num_joints(const sm_linkage* lk) { return lk ? lk->lk.n() : 0; }
int sm_linkage_num_cycles(const sm_linkage* lk) {
  return lk ? lk->lk.num_cycles() : 0;
}

int sm_rank(const sm_linkage* lk, const sm_options* opts, char** json_out) {
  if (int rc = validate_options(lk, opts, json_out)) return rc;
  return guarded(json_out, [&]() {
    const screwmob::Linkage& L = lk->lk;
    Eigen::VectorXd q0 = Eigen::VectorXd::Zero(L.n());
    Eigen::MatrixXd J = screwmob::stacked_jacobian(L, q0);
    auto r = screwmob::numeric_rank(J, opts->tol_rank);
    json j;
    j["linkage"] = L.name;
    j["joints"] = L.n();
    j["cycles"] = L.num_cycles();
    j["rank"] = r.rank;
    j["kernel_dim"] = L.n() - r.rank;
    json sv = json::array();
    for (int i = 0; i < r.singular_values.size(); ++i)
      sv.push_back(r.singular_values(i));
    j["singular_values"] = sv;
    json ker = json::array();
    for (int c = 0; c < r.kernel.cols(); ++c) {
      json v = json::array();
      for (int i = 0; i < r.kernel.rows(); ++i) v.push_back(r.kernel(i, c));
      ker.push_back(v);
    }
    j["kernel_basis"] = ker;
    put(json_out, j.dump(2) + "\n");
    return SM_OK;
  });
}

int sm_cone(const sm_linkage* lk, const sm_options* opts, char** json_out) {
  return run_cone(lk, opts, json_out, 0);
}

int sm_cone_stratum(const sm_linkage* lk, const sm_options* opts,
                    char** json_out) {
  if (int rc = validate_options(lk, opts, json_out)) return rc;
  int k = opts->k;
  if (k == 0) {
    try {
      Eigen::VectorXd q0 = Eigen::VectorXd::Zero(lk->lk.n());
      auto base = screwmob::numeric_rank(screwmob::stacked_jacobian(lk->lk, q0),
                                         opts->tol_rank);
      k = base.rank + 1;
    } catch (const std::exception& e) {
      put_error(json_out, e.what());
      return SM_ERR_INTERNAL;
    }
  }
  sm_options o = *opts;
  o.k = k;
  return run_cone(lk, &o, json_out, k);
}

int sm_cspace(const sm_linkage* lk, const sm_options* opts, char** json_out,
              char** system_out) {
  return run_variety(lk, opts, json_out, system_out, false);
}

int sm_stratum(const sm_linkage* lk, const sm_options* opts, char** json_out,
               char** system_out) {
  return run_variety(lk, opts, json_out, system_out, true);
}

int sm_classify(const sm_linkage* lk, const sm_options* opts, char** json_out,
                char** text_out) {
  if (int rc = validate_options(lk, opts, json_out)) return rc;
  return guarded(json_out, [&]() {
    const screwmob::Linkage& L = lk->lk;
    Eigen::VectorXd q0 = Eigen::VectorXd::Zero(L.n());
    screwmob::ClassifyConfig cfg;
    cfg.nu_max = opts->order;
    cfg.radius = opts->radius;
    cfg.samples = opts->samples;
    cfg.seed = opts->seed;
    cfg.tol_rank = opts->tol_rank;
    cfg.tol_cone = opts->tol_cone;
    auto report = screwmob::classify(L, q0, cfg);
    put(json_out, screwmob::report_to_json(report));
    put(text_out, screwmob::report_to_text(report));
    return report.decided ? SM_OK : SM_ERR_INCONCLUSIVE;
  });
}

int sm_section(const sm_linkage* lk, const sm_options* opts, char** json_out,
               char** csv_out) {
  if (int rc = validate_options(lk, opts, json_out)) return rc;
  return guarded(json_out, [&]() {
    const screwmob::Linkage& L = lk->lk;
    Eigen::VectorXd q0 = Eigen::VectorXd::Zero(L.n());
    screwmob::PolySystem sys =
        screwmob::build_cspace_system(L, q0, opts->order);
    screwmob::SectionSpec spec;
    spec.abscissa = opts->section_abscissa - 1;
    spec.ordinate = opts->section_ordinate - 1;
    spec.lo = opts->range_lo;
    spec.hi = opts->range_hi;
    spec.steps = opts->range_steps;
    screwmob::NewtonConfig ncfg;
    ncfg.max_iter = 200;
    ncfg.tol_rank = opts->tol_rank;
    screwmob::PointCloud cloud =
        screwmob::sweep_section(sys, spec, opts->seed, ncfg);
    auto tangents = screwmob::limiting_tangents(cloud);
    json j;
    j["linkage"] = L.name;
    j["order"] = opts->order;
    j["abscissa"] = opts->section_abscissa;
    j["ordinate"] = opts->section_ordinate;
    j["points"] = static_cast<int>(cloud.points.size());
    j["branches"] = cloud.num_branches;
    json tj = json::array();
    for (const auto& t : tangents) {
      if (!t.ok) continue;
      json e;
      e["branch"] = t.branch;
      e["support"] = t.support;
      e["fit_residual"] = t.fit_residual;
      json v = json::array();
      for (int i = 0; i < t.direction.size(); ++i) v.push_back(t.direction(i));
      e["direction"] = v;
      tj.push_back(e);
    }
    j["limiting_tangents"] = tj;
    put(json_out, j.dump(2) + "\n");
    put(csv_out, screwmob::cloud_to_csv(cloud, L.n()));
    return SM_OK;
  });
}

void sm_string_free(char* s) { std::free(s); }

}  // extern "C"
