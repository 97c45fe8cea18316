/* Public C interface for the relative-perturbation-bound library.
 *
 * All functions return rb_status; RB_OK is zero. On failure a human-readable
 * message is available from rb_last_error() (thread-local). Handles and
 * strings returned through out-parameters are owned by the caller and must be
 * released with rb_matrix_free / rb_string_free.
 */
#ifndef RELBOUND_H
#define RELBOUND_H

#include <stddef.h>
#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef enum rb_status {
  RB_OK = 0,
  RB_ERR_DIMENSION = 1,
  RB_ERR_NO_CONVERGENCE = 2,
  RB_ERR_K_TOO_LARGE = 3,
  RB_ERR_NOT_PSD = 4,
  RB_ERR_FACTORIZATION = 5,
  RB_ERR_POLAR_CONDITION = 6,
  RB_ERR_SINGULAR_INPUT = 7,
  RB_ERR_INDEX = 8,
  RB_ERR_ZERO_MATRIX = 9,
  RB_ERR_NOT_INVERTIBLE = 10,
  RB_ERR_NOT_ADMISSIBLE = 11,
  RB_ERR_NOT_SQUARE = 12,
  RB_ERR_ORIENTATION = 13,
  RB_ERR_PARSE = 14,
  RB_ERR_SYMMETRY = 15,
  RB_ERR_SPEC = 16,
  RB_ERR_IO = 17,
  RB_ERR_ARGUMENT = 18,
  RB_ERR_INTERNAL = 99
} rb_status;

/* Opaque dense complex matrix handle. */
typedef struct rb_matrix rb_matrix;

/* Last error message for the calling thread; empty string when none. */
const char* rb_last_error(void);

/* ---- matrix lifecycle ---- */

/* Reads a Matrix Market file. */
rb_status rb_matrix_read(const char* path, rb_matrix** out);

/* Writes a Matrix Market file (array format). */
rb_status rb_matrix_write(const rb_matrix* m, const char* path);

/* Builds a matrix from column-major interleaved (re, im) doubles of length
 * 2 * rows * cols. */
rb_status rb_matrix_from_parts(size_t rows, size_t cols, const double* data,
                               rb_matrix** out);

size_t rb_matrix_rows(const rb_matrix* m);
size_t rb_matrix_cols(const rb_matrix* m);

void rb_matrix_free(rb_matrix* m);
void rb_string_free(char* s);

/* ---- report builders (JSON documents, identical to the CLI output) ---- */

/* Eigenvalue bounds. k_formula: "sqrt", "pinv", or "general" (a1/a2 required
 * for "general", ignored otherwise; may be NULL). */
rb_status rb_eig_report(const rb_matrix* a, const rb_matrix* e,
                        const char* k_formula, const rb_matrix* a1,
                        const rb_matrix* a2, int psd_mode, char** json_out);

/* Singular value bounds; polar_k selects the square-matrix polar constant. */
rb_status rb_sv_report(const rb_matrix* a, const rb_matrix* e, int polar_k,
                       char** json_out);

/* Per-index sharpness verdicts versus the classical intervals. */
rb_status rb_sharp_report(const rb_matrix* a, const rb_matrix* e,
                          char** json_out);

/* Congruence admissibility and invariance of the bound constant. */
rb_status rb_cong_report(const rb_matrix* a, const rb_matrix* e,
                         const rb_matrix* d, char** json_out);

/* ---- generators and the property suite ---- */

/* Generates a Hermitian instance and perturbation from a JSON spec:
 * {"n", "rank", "spectrum": {...}, "target_k", "psd", "seed"}. */
rb_status rb_gen_instance(const char* spec_json, rb_matrix** a_out,
                          rb_matrix** e_out);

/* Runs the property suite from a JSON config; returns the summary document.
 * all_passed_out may be NULL. */
rb_status rb_suite_run(const char* config_json, char** json_out,
                       int* all_passed_out);

/* True (1) when a report document contains no failed check. */
rb_status rb_report_all_checks_pass(const char* json_text, int* pass_out);

/* Per-index CSV table for an eig, sv, or sharp report document. */
rb_status rb_report_csv(const char* json_text, char** csv_out);

#ifdef __cplusplus
}
#endif

#endif /* RELBOUND_H */
