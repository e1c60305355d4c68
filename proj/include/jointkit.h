/*
 * jointkit - exact-arithmetic toolkit for joints and multijoints of line and
 * plane families: Hasse-derivative polynomial calculus, joint detection with
 * multiplicities, Kakeya-type sums, vanishing-polynomial construction, and
 * planar-structure certification.
 *
 * C API over an opaque-handle shared library. All functions return a
 * jk_status; on failure jk_last_error() describes the problem (thread-local).
 * Strings returned through char** are heap-allocated and must be released
 * with jk_string_free(). Documents are UTF-8 JSON (CSV for sweeps).
 */
#ifndef JOINTKIT_H
#define JOINTKIT_H

#ifdef __cplusplus
extern "C" {
#endif

typedef enum jk_status {
  JK_OK = 0,
  JK_ERR_INVALID = 1,    /* bad arguments, preconditions, mixed fields */
  JK_ERR_PARSE = 2,      /* malformed JSON or polynomial text */
  JK_ERR_ASSERTION = 3,  /* an exact assertion requested by the run failed */
  JK_ERR_CAP = 4,        /* a central size cap was exceeded */
  JK_ERR_DEGREE = 5,     /* annihilator degree budget exhausted */
  JK_ERR_NOMEM = 6,
  JK_ERR_INTERNAL = 7
} jk_status;

const char* jk_version(void);

/* Message for the most recent failure on this thread; empty when none. */
const char* jk_last_error(void);

void jk_string_free(char* s);

/* Central caps: "max_lines", "max_tuples", "max_degree", "max_field_enum".
 * Environment variables JOINTKIT_MAX_* provide the initial values. Returns
 * JK_ERR_INVALID for unknown names or non-positive values. */
jk_status jk_set_cap(const char* name, long long value);
long long jk_get_cap(const char* name); /* -1 for unknown names */

/* ---- configurations -------------------------------------------------------
 * A jk_family holds a line family or a multijoint (k-planes plus n-k line
 * families) configuration, plus any partition hint the generator supplies.
 */
typedef struct jk_family jk_family;

/* kinds: "axis-grid" (n, N), "loomis-whitney" (N), "bush" (M, coplanar,
 * transverse), "ff-counterexample" (p), "random" (n, count, seed),
 * "multijoint-grid" (n, k, N). params_json also takes "field": "Q" or "F_p".
 */
jk_status jk_family_generate(const char* kind, const char* params_json, jk_family** out);
jk_status jk_family_parse(const char* document_json, jk_family** out);
jk_status jk_family_to_json(const jk_family* fam, char** out_json);
void jk_family_free(jk_family* fam);

/* ---- analyses --------------------------------------------------------------
 * options_json: {"analyses": ["joints","kakeya","levels","st","multijoints",
 *                "structure-verify","structure-search","nearly-verify",
 *                "plane-kakeya","dichotomy"],
 *                "constants": {"c":"1","C":"10","epsilon":"1/4","c1":"1/2",
 *                              "c2":"1/2","A":1,"B":1,"D_max":16},
 *                "kakeya_s": ["3/2"], "certificate": {...},
 *                "level_subsets": {...}, "assert": {...}}
 * The report is returned even when JK_ERR_ASSERTION is raised.
 */
jk_status jk_analyze(const jk_family* fam, const char* options_json, char** out_report_json);

/* Exact planar / nearly planar structure verification against a partition
 * document {"planes":[...],"joints_per_plane":[[...]]}. options_json takes
 * "c1", "c2", "nearly" (bool) and "level_subsets". */
jk_status jk_verify_structure(const jk_family* fam, const char* partition_json,
                              const char* options_json, char** out_json);

/* Annihilator construction for a vanishing spec document; options_json takes
 * "D_max". */
jk_status jk_vanish(const char* spec_json, const char* options_json, char** out_json);

/* Critical/flat line census over a factored variety document
 * {"field":...,"factors":[{"poly":"...","mult":1}]} with candidate lines
 * [{"x0":...,"dirs":[...]}...]. */
jk_status jk_census(const char* variety_json, const char* candidates_json, char** out_json);

/* Full experiment config (generator or inline input + analyses + constants +
 * assertions). Returns JK_ERR_ASSERTION when any exact assertion failed; the
 * report is still produced. */
jk_status jk_run(const char* config_json, char** out_report_json);

/* Parameter sweep; out receives CSV. Cap-exceeded rows are marked "skipped"
 * and the sweep continues. */
jk_status jk_sweep(const char* config_json, char** out_csv);

#ifdef __cplusplus
} /* extern "C" */
#endif

#endif /* JOINTKIT_H */
