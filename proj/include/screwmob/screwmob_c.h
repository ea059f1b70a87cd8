#ifndef SCREWMOB_C_H
#define SCREWMOB_C_H

/* C interface to the screwmob library. All analysis entry points return a
 * status code and hand results back as malloc'd strings the caller releases
 * with sm_string_free. */

#include <stddef.h>
#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

#define SM_OK 0
#define SM_ERR_INTERNAL 1
#define SM_ERR_VALIDATION 2
#define SM_ERR_INCONCLUSIVE 3

typedef struct sm_linkage sm_linkage;

typedef struct sm_options {
  int order;            /* truncation order nu (default 3) */
  int k;                /* stratum minor size; 0 = rank+1 (default 0) */
  double tol_rank;      /* relative rank tolerance (default 1e-8) */
  double tol_cone;      /* cone membership tolerance (default 1e-6) */
  uint64_t seed;        /* sampling seed (default 1) */
  int section_abscissa; /* 1-based variable index (default 1) */
  int section_ordinate; /* 1-based variable index (default 2) */
  double range_lo;      /* sweep range (default -0.3) */
  double range_hi;      /* (default 0.3) */
  int range_steps;      /* (default 200) */
  double radius;        /* sampling radius (default 0.05) */
  int samples;          /* sample count (default 100) */
} sm_options;

void sm_options_init(sm_options* opts);

/* Loads and validates a linkage JSON file. Returns NULL on failure; if
 * err_out is non-NULL it receives a malloc'd message. */
sm_linkage* sm_linkage_load(const char* path, char** err_out);
void sm_linkage_free(sm_linkage* lk);

int sm_linkage_num_joints(const sm_linkage* lk);
int sm_linkage_num_cycles(const sm_linkage* lk);

/* Every analysis runs at the zero configuration of the loaded linkage and
 * writes a JSON result to *json_out (malloc'd). Extra artifacts:
 *   sm_cspace / sm_stratum: *system_out  = polynomial system text
 *   sm_classify:            *text_out    = human-readable report
 *   sm_section:             *csv_out     = point cloud CSV
 * Any out pointer may be NULL to skip that artifact. On a non-zero return
 * *json_out (when non-NULL) carries an error/status message; inconclusive
 * analyses return SM_ERR_INCONCLUSIVE with the full report still written. */
int sm_rank(const sm_linkage* lk, const sm_options* opts, char** json_out);
int sm_cone(const sm_linkage* lk, const sm_options* opts, char** json_out);
int sm_cone_stratum(const sm_linkage* lk, const sm_options* opts, char** json_out);
int sm_cspace(const sm_linkage* lk, const sm_options* opts, char** json_out,
              char** system_out);
int sm_stratum(const sm_linkage* lk, const sm_options* opts, char** json_out,
               char** system_out);
int sm_classify(const sm_linkage* lk, const sm_options* opts, char** json_out,
                char** text_out);
int sm_section(const sm_linkage* lk, const sm_options* opts, char** json_out,
               char** csv_out);

void sm_string_free(char* s);

#ifdef __cplusplus
}
#endif

#endif
