/*
 * aggrekin — 1-D nonlocal aggregation-equation solver suite.
 *
 * C interface to the shared library: opaque handles, integer status codes,
 * and a thread-local error message. All heavy lifting (config parsing, run
 * orchestration, CSV emission) happens behind these calls.
 */
#ifndef AGGREKIN_H
#define AGGREKIN_H

#include <stddef.h>

#if defined(_WIN32)
#define AGGREKIN_API __declspec(dllexport)
#else
#define AGGREKIN_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum aggrekin_status {
    AGGREKIN_OK = 0,
    AGGREKIN_ERR_PARSE = 1,     /* malformed config text */
    AGGREKIN_ERR_CONFIG = 2,    /* valid syntax, invalid settings */
    AGGREKIN_ERR_CFL = 3,       /* stability condition violated */
    AGGREKIN_ERR_INVARIANT = 4, /* a monitored run invariant failed */
    AGGREKIN_ERR_IO = 5,        /* file system trouble */
    AGGREKIN_ERR_INTERNAL = 6
} aggrekin_status;

/* Opaque parsed-and-validated run configuration. */
typedef struct aggrekin_config aggrekin_config;

AGGREKIN_API const char* aggrekin_version(void);

/* Message for the most recent failing call on this thread ("" if none). */
AGGREKIN_API const char* aggrekin_last_error(void);

AGGREKIN_API aggrekin_status aggrekin_config_parse_text(const char* text,
                                                        aggrekin_config** out);
AGGREKIN_API aggrekin_status aggrekin_config_parse_file(const char* path,
                                                        aggrekin_config** out);
AGGREKIN_API void aggrekin_config_free(aggrekin_config* cfg);

/* Deterministic echo of the effective settings; returns the number of bytes
 * (excluding the terminator) that the full text requires. buf may be NULL
 * when size is 0. */
AGGREKIN_API size_t aggrekin_config_describe(const aggrekin_config* cfg, char* buf,
                                             size_t size);

/* Executes a run; output_dir may be NULL to use the configured directory.
 * The AGGREKIN_OUTPUT environment variable overrides both. On
 * AGGREKIN_ERR_INVARIANT the failing step report is in aggrekin_last_error().
 */
AGGREKIN_API aggrekin_status aggrekin_run(const aggrekin_config* cfg,
                                          const char* output_dir);

/* kind: "refinement" or "ap_sweep". */
AGGREKIN_API aggrekin_status aggrekin_study(const aggrekin_config* cfg,
                                            const char* kind,
                                            const char* output_dir);

AGGREKIN_API size_t aggrekin_preset_count(void);
AGGREKIN_API const char* aggrekin_preset_name(size_t index);
AGGREKIN_API size_t aggrekin_preset_describe(const char* name, char* buf, size_t size);

#ifdef __cplusplus
}
#endif

#endif /* AGGREKIN_H */
