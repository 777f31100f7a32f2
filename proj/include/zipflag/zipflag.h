#ifndef ZIPFLAG_H
#define ZIPFLAG_H

#ifdef __cplusplus
extern "C" {
#endif

#if defined(_WIN32)
#define ZF_API __declspec(dllexport)
#else
#define ZF_API __attribute__((visibility("default")))
#endif

typedef enum zf_status {
  ZF_OK = 0,
  ZF_MISMATCH = 1,        /* golden mismatch or internal failure */
  ZF_INVALID_CONFIG = 2,  /* config or datum rejected */
  ZF_INFEASIBLE = 3,      /* requested witness does not exist */
  ZF_INVALID_ARGUMENT = 4 /* null pointer, unknown option, bad label */
} zf_status;

typedef struct zf_config zf_config;
typedef struct zf_options zf_options;
typedef struct zf_datum zf_datum;

/* Message of the last failed call on this thread; never NULL. */
ZF_API const char* zf_last_error(void);
ZF_API const char* zf_version(void);
/* Frees strings returned through char** out parameters. */
ZF_API void zf_string_free(char* s);

/* Config from JSON text; source names the file in diagnostics. */
ZF_API zf_status zf_config_parse(const char* json_text, const char* source, zf_config** out);
ZF_API void zf_config_free(zf_config* c);

/* Keys: format (json|text|dot), lattice (torus|levi|levi0), box, workers,
   mutate (closure-transposed or a reading name; may be set repeatedly). */
ZF_API zf_options* zf_options_new(void);
ZF_API zf_status zf_options_set(zf_options* o, const char* key, const char* value);
ZF_API void zf_options_free(zf_options* o);

/* Runs a subcommand. The report (possibly empty) is stored in *out even when
   the status is not ZF_OK. */
ZF_API zf_status zf_run(const zf_config* c, const char* subcommand, const zf_options* o, char** out);
ZF_API zf_status zf_golden(const zf_options* o, char** out);

/* Direct access to the zip datum described by a config. */
ZF_API zf_status zf_datum_new(const zf_config* c, zf_datum** out);
ZF_API void zf_datum_free(zf_datum* d);
ZF_API int zf_datum_num_strata(const zf_datum* d);
/* Label of the i-th stratum in (length, word) order. */
ZF_API zf_status zf_datum_stratum_label(const zf_datum* d, int i, char** out);
/* n_alpha values over E_w as a JSON array of decimal strings; verdict is 1 when all are positive. */
ZF_API zf_status zf_datum_n_alpha(const zf_datum* d, const char* label, const long long* chi, int len, char** out,
                                  int* verdict);

#ifdef __cplusplus
}
#endif

#endif
