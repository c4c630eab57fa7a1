/* C interface to the polarity-labelling engine.
 *
 * All functions are thread-compatible: one engine per thread. Strings
 * returned by the library stay owned by the engine and are valid until the
 * next call on the same engine or its destruction.
 */
#ifndef PLSTREAM_H
#define PLSTREAM_H

#include <stddef.h>
#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

#if defined(_WIN32)
#define PLS_API __declspec(dllexport)
#else
#define PLS_API __attribute__((visibility("default")))
#endif

/* Exit/status codes shared with the CLI. */
#define PLS_OK 0
#define PLS_ERR_CONFIG 1
#define PLS_ERR_RUNTIME 2

typedef struct pls_engine pls_engine;

PLS_API const char* pls_version(void);

/* Creates an engine from a JSON run configuration (the same document the CLI
 * echoes at startup). Returns NULL only on allocation failure; configuration
 * errors surface from pls_engine_run. */
PLS_API pls_engine* pls_engine_create(const char* config_json);
PLS_API void pls_engine_destroy(pls_engine* engine);

/* Runs the pipeline to completion. Returns PLS_OK, PLS_ERR_CONFIG or
 * PLS_ERR_RUNTIME. */
PLS_API int pls_engine_run(pls_engine* engine);

/* Last error message, or an empty string. */
PLS_API const char* pls_engine_error(const pls_engine* engine);

/* Final metrics summary of the last run as JSON, or an empty string before
 * any run. */
PLS_API const char* pls_engine_summary(const pls_engine* engine);

/* Counters from the last run. */
PLS_API uint64_t pls_engine_ingested(const pls_engine* engine);
PLS_API uint64_t pls_engine_malformed(const pls_engine* engine);
PLS_API uint64_t pls_engine_labelled(const pls_engine* engine);
PLS_API double pls_engine_elapsed_seconds(const pls_engine* engine);

/* Requests cooperative shutdown of any running engine (signal-safe). */
PLS_API void pls_request_stop(void);

/* Rewrites a labelled dataset to the given positive fraction.
 * format: "sentiment140" or "yelp". Returns a status code; on error a
 * message is written to errbuf (if non-NULL). */
PLS_API int pls_regen_skew(const char* in_path, const char* out_path,
                           const char* format, double pos_fraction,
                           uint64_t seed, char* errbuf, size_t errbuf_len);

/* Splits a dataset into length buckets. bounds is an array of inclusive
 * upper bounds (post-filter token counts), ascending; the last bucket is
 * open-ended, so n_out_paths == n_bounds + 1. */
PLS_API int pls_regen_by_length(const char* in_path, const char* format,
                                const size_t* bounds, size_t n_bounds,
                                const char* const* out_paths, char* errbuf,
                                size_t errbuf_len);

/* Reads a model snapshot header. Returns a status code. */
PLS_API int pls_snapshot_info(const char* path, uint32_t* version, uint32_t* dim,
                              uint64_t* vocab_size, char* errbuf, size_t errbuf_len);

#ifdef __cplusplus
} /* extern "C" */
#endif

#endif /* PLSTREAM_H */
