/* ncagm - noncommutative AGM inequality toolkit.
 *
 * C interface to the core library: set-partition lattice and Moebius values,
 * Hermitian operator families, symmetric operator products (P_d, restricted
 * and full partition sums) by independent algorithms, inequality checkers,
 * and Monte Carlo ensemble experiments.
 *
 * Conventions:
 *  - Every function returns an ncagm_status; NCAGM_OK is 0.
 *  - On failure, ncagm_last_error() returns a thread-local message.
 *  - Objects returned through out-parameters are owned by the caller and are
 *    released with the matching _free function; strings with
 *    ncagm_string_free.
 *  - Matrices cross the boundary as row-major double arrays (re, im), or as
 *    JSON {"m": int, "re": [...], "im": [...]}. Families are JSON
 *    {"n": int, "m": int, "members": [matrix, ...]}.
 *  - High-level runs take a JSON config and return a report_v1 JSON document
 *    (see schemas/report_v1.schema.json in the source tree).
 */
#ifndef NCAGM_H
#define NCAGM_H

#include <stddef.h>
#include <stdint.h>

#if defined _WIN32
#define NCAGM_API __declspec(dllexport)
#else
#define NCAGM_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum ncagm_status {
  NCAGM_OK = 0,
  NCAGM_ERR_INVALID_ARGUMENT = 1,
  NCAGM_ERR_ORDER_VIOLATION = 2,
  NCAGM_ERR_PRECONDITION = 3,
  NCAGM_ERR_RESOURCE_LIMIT = 4,
  NCAGM_ERR_NUMERIC = 5,
  NCAGM_ERR_PARSE = 6,
  NCAGM_ERR_IO = 7,
  NCAGM_ERR_INTERNAL = 8
} ncagm_status;

NCAGM_API const char* ncagm_status_name(ncagm_status s);

/* Message for the most recent failure on this thread; never NULL. */
NCAGM_API const char* ncagm_last_error(void);

NCAGM_API void ncagm_string_free(char* s);

/* ------------------------------------------------------------------ */
/* Partition lattice                                                    */

typedef struct ncagm_partition ncagm_partition;
typedef struct ncagm_mobius_cache ncagm_mobius_cache;

/* Parse "1,2|3" (blocks '|'-separated, elements ','-separated, 1-indexed). */
NCAGM_API ncagm_status ncagm_partition_parse(const char* text, ncagm_partition** out);
/* rgs is a restricted-growth string of length d: rgs[0]=0, rgs[k] <= 1+max. */
NCAGM_API ncagm_status ncagm_partition_from_rgs(const int* rgs, int d, ncagm_partition** out);
NCAGM_API ncagm_status ncagm_partition_format(const ncagm_partition* p, char** out);
NCAGM_API int ncagm_partition_ground_size(const ncagm_partition* p);
NCAGM_API int ncagm_partition_block_count(const ncagm_partition* p);
NCAGM_API void ncagm_partition_free(ncagm_partition* p);

/* All partitions of {1..d} in lexicographic restricted-growth order. The
 * array and its elements are released with ncagm_partition_list_free. */
NCAGM_API ncagm_status ncagm_enumerate_partitions(int d, ncagm_partition*** out_list, size_t* out_len);
NCAGM_API void ncagm_partition_list_free(ncagm_partition** list, size_t len);

/* *out = 1 iff sigma <= pi (sigma finer). */
NCAGM_API ncagm_status ncagm_refines_leq(const ncagm_partition* sigma, const ncagm_partition* pi, int* out);

/* mu(all-singletons, pi) by the closed product formula. */
NCAGM_API ncagm_status ncagm_mobius_zero_to(const ncagm_partition* pi, int64_t* out);

NCAGM_API ncagm_status ncagm_mobius_cache_create(int d, ncagm_mobius_cache** out);
NCAGM_API void ncagm_mobius_cache_free(ncagm_mobius_cache* c);
/* mu(pi, sigma) by the defining recursion; requires pi <= sigma. */
NCAGM_API ncagm_status ncagm_mobius(ncagm_mobius_cache* c, const ncagm_partition* pi,
                                    const ncagm_partition* sigma, int64_t* out);

/* ------------------------------------------------------------------ */
/* Matrices and operator families                                       */

typedef struct ncagm_matrix ncagm_matrix;
typedef struct ncagm_family ncagm_family;

/* Hermitizes the input: stores (A + A*)/2. im may be NULL for real input. */
NCAGM_API ncagm_status ncagm_matrix_create(int m, const double* re, const double* im, ncagm_matrix** out);
NCAGM_API int ncagm_matrix_dim(const ncagm_matrix* a);
/* Copies the entries into caller buffers of m*m doubles (either may be NULL). */
NCAGM_API ncagm_status ncagm_matrix_entries(const ncagm_matrix* a, double* re, double* im);
NCAGM_API ncagm_status ncagm_matrix_to_json(const ncagm_matrix* a, char** out);
NCAGM_API void ncagm_matrix_free(ncagm_matrix* a);

NCAGM_API ncagm_status ncagm_family_from_json(const char* json, ncagm_family** out);
/* Builds a family from n hermitized matrices of equal dimension. */
NCAGM_API ncagm_status ncagm_family_create(const ncagm_matrix* const* members, int n, ncagm_family** out);
NCAGM_API int ncagm_family_size(const ncagm_family* f);
NCAGM_API int ncagm_family_dim(const ncagm_family* f);
NCAGM_API ncagm_status ncagm_family_to_json(const ncagm_family* f, char** out);
NCAGM_API void ncagm_family_free(ncagm_family* f);

/* Eigenvalues ascending into a caller buffer of dim doubles. The matrix must
 * be Hermitian to machine precision (NCAGM_ERR_PRECONDITION otherwise). */
NCAGM_API ncagm_status ncagm_eigenvalues(const ncagm_matrix* a, double* out);
/* Operator norm (largest singular value; max |eigenvalue| when Hermitian). */
NCAGM_API ncagm_status ncagm_op_norm(const ncagm_matrix* a, double* out);
/* *out = 1 iff a <= b up to tol * max(1, ||a||, ||b||); Hermitian input. */
NCAGM_API ncagm_status ncagm_loewner_leq(const ncagm_matrix* a, const ncagm_matrix* b, double tol, int* out);
/* ||(sum_i x_i^2)^{1/2}||. */
NCAGM_API ncagm_status ncagm_sq_sum_norm(const ncagm_family* f, double* out);

/* ------------------------------------------------------------------ */
/* Symmetric products                                                   */

/* P_d by direct enumeration of injective tuples. */
NCAGM_API ncagm_status ncagm_pd_bruteforce(const ncagm_family* f, int d, ncagm_matrix** out);
/* P_d by Moebius decomposition over full partition sums. */
NCAGM_API ncagm_status ncagm_pd_mobius(const ncagm_family* f, int d, ncagm_matrix** out);
/* <sigma>: indices with equality pattern exactly sigma. Returns the zero
 * matrix when sigma has more blocks than the family has members. */
NCAGM_API ncagm_status ncagm_restricted_sum(const ncagm_family* f, const ncagm_partition* sigma,
                                            ncagm_matrix** out);
/* [sigma]: indices constant on sigma's blocks, by direct enumeration. */
NCAGM_API ncagm_status ncagm_full_sum_direct(const ncagm_family* f, const ncagm_partition* sigma,
                                             ncagm_matrix** out);
/* [sigma] via the matrix-unit tensor embedding. */
NCAGM_API ncagm_status ncagm_full_sum_embedded(const ncagm_family* f, const ncagm_partition* sigma,
                                               ncagm_matrix** out);

/* ------------------------------------------------------------------ */
/* High-level runs (JSON in, report_v1 JSON out)                        */

NCAGM_API ncagm_status ncagm_run_partitions(int d, char** report_json);
NCAGM_API ncagm_status ncagm_run_products(const char* config_json, char** report_json);
NCAGM_API ncagm_status ncagm_run_check(const char* config_json, char** report_json);
NCAGM_API ncagm_status ncagm_run_ensemble(const char* config_json, char** report_json);

#ifdef __cplusplus
}
#endif

#endif /* NCAGM_H */
