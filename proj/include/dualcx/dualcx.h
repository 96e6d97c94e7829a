#ifndef DUALCX_DUALCX_H
#define DUALCX_DUALCX_H

/* C interface of the dualcx library. All inputs and outputs are UTF-8 JSON
 * (or CSV / OFF-like text where a format is requested). Strings returned
 * through `out` parameters are owned by the caller and released with
 * dcx_string_free. On failure dcx_last_error() describes the problem as a
 * JSON object {"status": ..., "errors": [{"code": ..., "message": ...}]}. */

#include <stddef.h>
#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

#if defined(DUALCX_BUILD)
#define DCX_API __attribute__((visibility("default")))
#else
#define DCX_API
#endif

typedef enum dcx_status {
  DCX_OK = 0,
  DCX_ERR_PARSE = 1,      /* malformed JSON */
  DCX_ERR_VALIDATION = 2, /* schema or axiom violation */
  DCX_ERR_DOMAIN = 3,     /* well-formed input outside an operation's domain */
  DCX_ERR_ARGUMENT = 4,   /* misuse of the API (null pointers, wrong document kind) */
  DCX_ERR_INTERNAL = 5
} dcx_status;

typedef enum dcx_mode { DCX_MODE_STANDARD = 0, DCX_MODE_CLOSURE = 1 } dcx_mode;

typedef enum dcx_format { DCX_FORMAT_JSON = 0, DCX_FORMAT_CSV = 1, DCX_FORMAT_OFF = 2 } dcx_format;

typedef enum dcx_kind { DCX_KIND_DESCRIPTOR = 0, DCX_KIND_DESCENT = 1 } dcx_kind;

/* A validated pair descriptor (standard, abstract or lattice form) or a
 * descent datum together with its quotient. */
typedef struct dcx_document dcx_document;

DCX_API const char* dcx_version(void);

DCX_API dcx_status dcx_document_parse(const char* text, size_t length, dcx_document** out);
DCX_API void dcx_document_free(dcx_document* doc);
DCX_API dcx_kind dcx_document_kind(const dcx_document* doc);
/* Number of strata, or of glued faces for a descent document. */
DCX_API size_t dcx_document_size(const dcx_document* doc);

/* Strata table; JSON or CSV. */
DCX_API dcx_status dcx_strata(const dcx_document* doc, dcx_format format, char** out);
/* Face lattice as JSON, or the OFF-like dump. */
DCX_API dcx_status dcx_complex(const dcx_document* doc, dcx_format format, char** out);
/* Quotient lattice of a descent document. */
DCX_API dcx_status dcx_glue(const dcx_document* doc, char** out);

/* op is one of trop, sigma, tau, flow, reduce, eval. The request carries
 * "model" plus "point", "w", "poly", "tau" or "samples" as the op needs.
 * CSV output is available for flow trajectories. */
DCX_API dcx_status dcx_skeleton(const char* op, const char* request, size_t length, dcx_mode mode,
                                uint64_t seed, dcx_format format, char** out);
/* Closure membership for the listed points, or for sampled points when the
 * request has none. */
DCX_API dcx_status dcx_closure(const char* request, size_t length, uint64_t seed, char** out);
/* Descriptor input: abstract JSON (json) or OFF-like dump (off).
 * Flow request input: trajectory CSV (csv). */
DCX_API dcx_status dcx_export(const char* text, size_t length, dcx_mode mode, dcx_format format,
                              char** out);

DCX_API const char* dcx_last_error(void);
DCX_API void dcx_string_free(char* s);

#ifdef __cplusplus
}
#endif

#endif
