/* Public C interface of the orbitkit shared library.
 *
 * All functionality is reached through a single entry point, okt_run, which
 * takes an operation name (e.g. "heis mul", "jacobi table", "theta eval")
 * and a JSON request document, and produces a JSON response document.  The
 * request/response schemas are documented in the repository README.
 *
 * Memory contract: every string returned through an out-parameter is newly
 * allocated and must be released with okt_buffer_free.  Strings returned
 * directly (okt_version, okt_op_name, okt_last_error) are owned by the
 * library or the context and must not be freed.
 *
 * A context is not thread-safe; use one context per thread.
 */
#ifndef ORBITKIT_H
#define ORBITKIT_H

#ifdef __cplusplus
extern "C" {
#endif

/* Opaque handle carrying per-context state (the last error message). */
typedef struct okt_ctx okt_ctx;

/* Status codes returned by okt_run. */
enum {
  OKT_OK = 0,           /* success; response holds the result document   */
  OKT_DOMAIN_ERROR = 2, /* precondition violated (bad math, bad shapes)  */
  OKT_PARSE_ERROR = 3,  /* malformed JSON or missing/ill-typed fields    */
  OKT_UNKNOWN_OP = 64   /* operation name not in the table               */
};

/* Creates a fresh context.  Returns NULL only on allocation failure. */
okt_ctx* okt_ctx_new(void);

/* Releases a context; NULL is ignored. */
void okt_ctx_free(okt_ctx* ctx);

/* Executes the named operation on the JSON request text.
 *
 * On success, *response_json receives the response document and OKT_OK is
 * returned.  On failure, *response_json receives a structured error
 * document {"error":{"kind":…,"detail":…}} and the matching status code is
 * returned.  response_json may be NULL when the caller only wants the
 * status.  ctx may be NULL, in which case no error message is recorded.
 */
int okt_run(okt_ctx* ctx, const char* op, const char* request_json,
            char** response_json);

/* The detail message of the most recent failing okt_run on this context,
 * or an empty string.  Owned by the context; valid until the next call. */
const char* okt_last_error(const okt_ctx* ctx);

/* Releases a buffer obtained from okt_run; NULL is ignored. */
void okt_buffer_free(char* buffer);

/* Library version as "major.minor.patch". */
const char* okt_version(void);

/* Number of operations in the table. */
int okt_op_count(void);

/* Name of the operation at the given index (0-based, stable sorted order),
 * or NULL when the index is out of range. */
const char* okt_op_name(int index);

#ifdef __cplusplus
}
#endif

#endif /* ORBITKIT_H */
