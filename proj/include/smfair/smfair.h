/* C interface to the smfair stable-matching library.
 *
 * Agents and matchings are 1-based at this boundary: a matching is an array
 * of n woman indices in man order. Every function returns an smf_status;
 * on failure smf_last_error() describes the problem for the calling thread.
 * Strings returned through char** are owned by the caller and released with
 * smf_free_string.
 */
#ifndef SMFAIR_SMFAIR_H
#define SMFAIR_SMFAIR_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#  if defined(SMF_BUILDING_LIBRARY)
#    define SMF_API __declspec(dllexport)
#  else
#    define SMF_API __declspec(dllimport)
#  endif
#else
#  define SMF_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum smf_status {
    SMF_OK = 0,
    SMF_ERR_INVALID_ARGUMENT = 1,
    SMF_ERR_INVALID_AGENT = 2,
    SMF_ERR_INVALID_MATCHING = 3,
    SMF_ERR_PARSE = 4,
    SMF_ERR_IO = 5,
    SMF_ERR_ESTIMATION = 6,
    SMF_ERR_BUDGET_EXCEEDED = 7,
    SMF_ERR_ROTATION_NOT_EXPOSED = 8,
    SMF_ERR_DEGENERATE = 9,
    SMF_ERR_INTERNAL = 99
} smf_status;

typedef enum smf_side { SMF_SIDE_MEN = 0, SMF_SIDE_WOMEN = 1 } smf_side;

typedef enum smf_format { SMF_FORMAT_JSON = 0, SMF_FORMAT_SOC = 1 } smf_format;

typedef struct smf_profile smf_profile;
typedef struct smf_lattice smf_lattice;

SMF_API const char* smf_version(void);
SMF_API const char* smf_status_name(smf_status status);
/* Message of the last failed call on this thread; empty after success. */
SMF_API const char* smf_last_error(void);
SMF_API void smf_free_string(char* s);

/* ---- profiles ---- */

/* men_prefs and women_prefs hold n*n 1-based entries, one list per row. */
SMF_API smf_status smf_profile_create(int32_t n, const int32_t* men_prefs, const int32_t* women_prefs,
                                      smf_profile** out);
/* Mallows profile around identity references. The generator is seeded
 * from (seed, stream); both are recorded in the metadata. */
SMF_API smf_status smf_profile_generate(int32_t n, double phi_m, double phi_w, uint64_t seed, uint64_t stream,
                                        smf_profile** out);
/* Format chosen by extension: .soc or JSON. */
SMF_API smf_status smf_profile_load(const char* path, smf_profile** out);
SMF_API smf_status smf_profile_save(const smf_profile* profile, const char* path);
SMF_API smf_status smf_profile_from_string(const char* text, smf_format format, smf_profile** out);
SMF_API smf_status smf_profile_to_string(const smf_profile* profile, smf_format format, char** out);
SMF_API void smf_profile_destroy(smf_profile* profile);

SMF_API int32_t smf_profile_size(const smf_profile* profile);

typedef struct smf_metadata {
    int32_t has_phi_m;
    double phi_m;
    int32_t has_phi_w;
    double phi_w;
    int32_t has_seed;
    uint64_t seed;
    int32_t has_stream;
    uint64_t stream;
} smf_metadata;

SMF_API smf_status smf_profile_metadata(const smf_profile* profile, smf_metadata* out);

/* Copies the preference list of agent (1-based) into out[0..n). */
SMF_API smf_status smf_profile_list(const smf_profile* profile, smf_side side, int32_t agent, int32_t* out);

/* 1-based rank of agent `target` (opposite side) in the list of `agent`. */
SMF_API smf_status smf_profile_rank(const smf_profile* profile, smf_side side, int32_t agent, int32_t target,
                                    int32_t* out_rank);

/* ---- matchings ---- */

typedef struct smf_welfare {
    int64_t s_m;
    int64_t s_w;
    int64_t cost;
    int64_t egalitarian;
} smf_welfare;

SMF_API smf_status smf_matching_welfare(const smf_profile* profile, const int32_t* partners, smf_welfare* out);

/* Blocking pairs as (man, woman) in lexicographic order. out_pairs holds
 * 2*capacity entries; *count receives the full number of pairs even when
 * it exceeds capacity. */
SMF_API smf_status smf_matching_blocking_pairs(const smf_profile* profile, const int32_t* partners,
                                               int32_t* out_pairs, size_t capacity, size_t* count);

typedef struct smf_solve_result {
    smf_welfare welfare;
    uint64_t proposals;
    smf_side side_used;
    double phi_m;
    double phi_w;
} smf_solve_result;

SMF_API smf_status smf_deferred_acceptance(const smf_profile* profile, smf_side proposers, int32_t* out_partners,
                                           smf_solve_result* out);
/* The side with the smaller dispersion proposes; men on a tie. */
SMF_API smf_status smf_da_star(const smf_profile* profile, double phi_m, double phi_w, int32_t* out_partners,
                               smf_solve_result* out);
/* As smf_da_star with both dispersions estimated against identity
 * references. Fails with SMF_ERR_ESTIMATION when no estimate exists. */
SMF_API smf_status smf_da_star_estimated(const smf_profile* profile, int32_t* out_partners, smf_solve_result* out);

/* ---- lattices ---- */

typedef struct smf_lattice_options {
    uint64_t max_matchings;
    double max_seconds;
    uint64_t max_downset_states;
} smf_lattice_options;

SMF_API smf_lattice_options smf_lattice_options_default(void);

/* On SMF_ERR_BUDGET_EXCEEDED *out still receives the partial lattice. */
SMF_API smf_status smf_lattice_enumerate(const smf_profile* profile, const smf_lattice_options* options,
                                         smf_lattice** out);
SMF_API void smf_lattice_destroy(smf_lattice* lattice);

SMF_API uint64_t smf_lattice_size(const smf_lattice* lattice);
SMF_API int32_t smf_lattice_complete(const smf_lattice* lattice);
SMF_API smf_status smf_lattice_matching(const smf_lattice* lattice, uint64_t index, int32_t* out_partners);

typedef struct smf_lattice_stats {
    uint64_t size;
    int32_t complete;
    int32_t has_poset;
    int32_t r;
    int32_t h;
    int32_t width;
    int32_t downset_check;
    int32_t has_downsets;
    uint64_t downsets;
    int32_t has_bound;
    uint64_t max_downsets_bound;
} smf_lattice_stats;

SMF_API smf_status smf_lattice_stats_get(const smf_lattice* lattice, smf_lattice_stats* out);
SMF_API smf_status smf_lattice_to_json(const smf_lattice* lattice, char** out);
SMF_API smf_status smf_lattice_to_dot(const smf_lattice* lattice, char** out);

/* ---- fairness ---- */

typedef enum smf_lemma_case {
    SMF_CASE_MEN_OPTIMAL = 0,
    SMF_CASE_WOMEN_OPTIMAL = 1,
    SMF_CASE_INTERIOR = 2
} smf_lemma_case;

typedef struct smf_classification {
    smf_lemma_case lemma_case;
    smf_welfare men_optimal;
    smf_welfare women_optimal;
    int64_t gap_m;
    int64_t gap_w;
} smf_classification;

SMF_API smf_status smf_classify(const smf_profile* profile, smf_classification* out);

typedef enum smf_fair_method {
    SMF_FAIR_EXHAUSTIVE = 0,
    SMF_FAIR_IBILS = 1,
    SMF_FAIR_DA_STAR = 2
} smf_fair_method;

typedef struct smf_fair_options {
    smf_fair_method method;
    int32_t depth; /* 0 selects 2n */
    int32_t width;
    uint64_t max_matchings;
    double max_seconds;
    int32_t has_phi; /* da-star: use phi_m/phi_w instead of estimating */
    double phi_m;
    double phi_w;
} smf_fair_options;

SMF_API smf_fair_options smf_fair_options_default(void);

typedef struct smf_search_result {
    smf_welfare welfare;
    int32_t optimal;
    uint64_t visited;
} smf_search_result;

/* Exhaustive search that runs out of budget returns SMF_OK with the best
 * matching seen and optimal == 0. */
SMF_API smf_status smf_fair_search(const smf_profile* profile, const smf_fair_options* options,
                                   int32_t* out_partners, smf_search_result* out);

/* ---- experiments ---- */

typedef void (*smf_progress_fn)(uint64_t done, uint64_t total, void* user);

typedef struct smf_experiment_summary {
    uint64_t records;
    uint64_t censored;
    uint64_t plots;
} smf_experiment_summary;

SMF_API smf_status smf_experiment_validate(const char* config_json);

/* Runs the configured experiment and writes records.csv and summary.csv
 * (plus SVG plots under plots/ when plots is nonzero) into out_dir, creating it. */
SMF_API smf_status smf_experiment_run(const char* config_json, const char* out_dir, int32_t workers, int32_t plots,
                                      smf_progress_fn progress, void* user, smf_experiment_summary* out);

#ifdef __cplusplus
}
#endif

#endif
