#ifndef SLMC_H
#define SLMC_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#define SLMC_API __declspec(dllexport)
#else
#define SLMC_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

/* Status codes double as CLI exit codes. */
typedef enum slmc_status {
  SLMC_OK = 0,
  SLMC_CHECK_FAILED = 1, /* mathematical failure or violated precondition */
  SLMC_INPUT_ERROR = 2,
  SLMC_RESOURCE_ERROR = 3,
  SLMC_INTERNAL_ERROR = 4
} slmc_status;

typedef struct slmc_model slmc_model;
typedef struct slmc_report slmc_report;

typedef struct slmc_caps {
  int max_word_length;
  int max_arity;
  int max_poly_degree;
} slmc_caps;

/* Message of the last failing call on this thread; "" if none. */
SLMC_API const char* slmc_last_error(void);

SLMC_API slmc_caps slmc_default_caps(void);
/* Defaults overridden by SLMC_CAPS ("word=12,arity=8,poly=6"). */
SLMC_API slmc_status slmc_caps_from_env(slmc_caps* out);

SLMC_API slmc_status slmc_model_parse(const char* text, slmc_model** out);
SLMC_API slmc_status slmc_model_load(const char* path, slmc_model** out);
/* Algebras of `context` may be referenced by name. */
SLMC_API slmc_status slmc_model_load_with_context(const char* path, const slmc_model* context, slmc_model** out);
SLMC_API slmc_status slmc_model_render(const slmc_model* model, slmc_report** out);
SLMC_API size_t slmc_model_block_count(const slmc_model* model);
SLMC_API void slmc_model_free(slmc_model* model);

/* Text of a report; valid until slmc_report_free. */
SLMC_API const char* slmc_report_text(const slmc_report* report);
SLMC_API void slmc_report_free(slmc_report* report);

/*
 * Commands. On SLMC_OK and SLMC_CHECK_FAILED a report is stored in *out
 * (PASS/FAIL lines, witnesses for failures). On any other status *out is
 * NULL and slmc_last_error() describes the problem. caps may be NULL.
 */

/* max_arity <= 0 selects the default (nilpotency + 1, capped). */
SLMC_API slmc_status slmc_check_algebra(const slmc_model* model, int max_arity, const slmc_caps* caps,
                                        slmc_report** out);
SLMC_API slmc_status slmc_check_morphism(const slmc_model* model, const slmc_caps* caps, slmc_report** out);
SLMC_API slmc_status slmc_curvature(const slmc_model* model, const char* element, slmc_report** out);
SLMC_API slmc_status slmc_twist(const slmc_model* model, const char* mc, slmc_report** out);
/* g o f, with f the first (enhanced) morphism of `f` and g that of `g`. */
SLMC_API slmc_status slmc_compose(const slmc_model* f, const slmc_model* g, int enhanced, const slmc_caps* caps,
                                  slmc_report** out);
SLMC_API slmc_status slmc_push(const slmc_model* model, const char* element, const slmc_caps* caps, slmc_report** out);
SLMC_API slmc_status slmc_mc_system(const slmc_model* model, int dim, int poly_degree, const slmc_caps* caps,
                                    slmc_report** out);
/* `simplices` is usually loaded with `model` as context. */
SLMC_API slmc_status slmc_mc_check(const slmc_model* model, const slmc_model* simplices, const slmc_caps* caps,
                                   slmc_report** out);
/* faces[k] is the k-th given face in increasing face index order (dim of them). */
SLMC_API slmc_status slmc_fill_horn(const slmc_model* model, int dim, int index, const slmc_model* const* faces,
                                    size_t face_count, int poly_degree, const slmc_caps* caps, slmc_report** out);
SLMC_API slmc_status slmc_pi0(const slmc_model* model, const slmc_model* const* points, size_t point_count,
                              int poly_degree, const slmc_caps* caps, slmc_report** out);
SLMC_API slmc_status slmc_properties(uint64_t seed, int trials, const slmc_caps* caps, slmc_report** out);

#ifdef __cplusplus
}
#endif

#endif
