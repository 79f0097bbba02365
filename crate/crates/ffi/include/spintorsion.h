#ifndef SPINTORSION_H
#define SPINTORSION_H

/* Generated by cbindgen from src/lib.rs. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Representation used to generate the holonomy algebra.
 */
typedef enum StRepMode {
  /**
   * so(n) acting on R^n; 3-forms only.
   */
  ST_REP_MODE_VECTOR = 0,
  /**
   * Clifford action on the spinor module.
   */
  ST_REP_MODE_SPINOR = 1,
} StRepMode;

/**
 * Result code of every fallible call.
 */
typedef enum StStatus {
  ST_STATUS_OK = 0,
  ST_STATUS_NULL_POINTER = 1,
  ST_STATUS_INVALID_UTF8 = 2,
  ST_STATUS_PARSE = 3,
  ST_STATUS_DIMENSION = 4,
  ST_STATUS_GRADE = 5,
  ST_STATUS_INVALID_INPUT = 6,
  ST_STATUS_PRECONDITION = 7,
  ST_STATUS_NO_SOLUTION = 8,
  ST_STATUS_IO = 9,
  ST_STATUS_PANIC = 10,
} StStatus;

/**
 * A k-form on R^n with exact coefficients.
 */
typedef struct StForm StForm;

/**
 * Result of a torsion solve on the Aloff-Wallach space.
 */
typedef struct StSolution StSolution;

/**
 * Structure data of a generated Lie algebra.
 */
typedef struct StHolonomy {
  size_t dim;
  size_t derived_dim;
  size_t center_dim;
  size_t rank;
  bool semisimple;
  bool compact;
  bool irreducible;
} StHolonomy;

/**
 * Flags of a Veronese torsion solve.
 */
typedef struct StVeronese {
  bool unique;
  bool matches_closed_form;
  bool residual_zero;
} StVeronese;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Library version as a static nul-terminated string.
 */
const char *st_version(void);

/**
 * Message of the last failure on this thread, or null. Valid until the next failing call.
 */
const char *st_last_error(void);

/**
 * Frees a string returned by this library. Null is ignored.
 *
 * # Safety
 * `s` must come from this library and not have been freed.
 */
void st_string_free(char *s);

/**
 * Parses a form from the text format, one `i j k : coefficient` term per line.
 * `dim = 0` takes the largest index as the dimension.
 *
 * # Safety
 * `text` must be a nul-terminated string and `out` a valid pointer.
 */
enum StStatus st_form_parse(const char *text_in, size_t dim, struct StForm **out);

/**
 * Frees a form handle. Null is ignored.
 *
 * # Safety
 * `f` must come from this library and not have been freed.
 */
void st_form_free(struct StForm *f);

/**
 * Dimension n of the underlying space; 0 for null.
 *
 * # Safety
 * `f` must be null or a live handle.
 */
size_t st_form_dim(const struct StForm *f);

/**
 * Degree k of the form; 0 for null.
 *
 * # Safety
 * `f` must be null or a live handle.
 */
size_t st_form_grade(const struct StForm *f);

/**
 * The form in the text format accepted by [`st_form_parse`]. Free with [`st_string_free`].
 *
 * # Safety
 * `f` must be a live handle and `out` a valid pointer.
 */
enum StStatus st_form_to_string(const struct StForm *f, char **out);

/**
 * Coefficient of the blade with the given (1-based) indices, as an exact string.
 *
 * # Safety
 * `f` must be a live handle, `idx` must point to `len` values and `out` must be valid.
 */
enum StStatus st_form_coeff(const struct StForm *f, const size_t *idx, size_t len, char **out);

/**
 * Generates the holonomy algebra of the form's contractions and reports its structure.
 *
 * # Safety
 * `f` must be a live handle and `out` a valid pointer.
 */
enum StStatus st_holonomy(const struct StForm *f, enum StRepMode mode, struct StHolonomy *out);

/**
 * Torsion 3-form of the 3-Sasakian model for the spinor with coordinates `point[0..4]`.
 *
 * # Safety
 * `point` must hold four nul-terminated strings; `form` and `flags` must be valid.
 */
enum StStatus st_sasakian_veronese(const char *const *point_in,
                                   struct StForm **form,
                                   struct StVeronese *flags);

/**
 * Solves for an invariant torsion form (3-form, or 4-form when `four_form`) on the
 * Aloff-Wallach space with metric parameters `s`, `y` making the spinor `point` parallel.
 *
 * # Safety
 * `s`, `y` and the four `point` entries must be nul-terminated strings; `out` must be valid.
 */
enum StStatus st_aw_solve(const char *s,
                          const char *y,
                          const char *const *point_in,
                          bool four_form,
                          struct StSolution **out);

/**
 * Frees a solution handle. Null is ignored.
 *
 * # Safety
 * `sol` must come from this library and not have been freed.
 */
void st_solution_free(struct StSolution *sol);

/**
 * A new form handle holding the solved torsion form.
 *
 * # Safety
 * `sol` must be a live handle and `out` a valid pointer.
 */
enum StStatus st_solution_form(const struct StSolution *sol, struct StForm **out);

/**
 * Whether the solution is the only one inside the Ansatz; false for null.
 *
 * # Safety
 * `sol` must be null or a live handle.
 */
bool st_solution_unique(const struct StSolution *sol);

/**
 * Whether substituting the solution back leaves an exactly zero residual; false for null.
 *
 * # Safety
 * `sol` must be null or a live handle.
 */
bool st_solution_residual_zero(const struct StSolution *sol);

/**
 * Runs the full spin(9) consistency check; `pass` receives the verdict.
 *
 * # Safety
 * `pass` must be a valid pointer.
 */
enum StStatus st_spin9_check(bool *pass);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* SPINTORSION_H */
