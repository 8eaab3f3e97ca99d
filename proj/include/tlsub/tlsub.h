#ifndef TLSUB_TLSUB_H
#define TLSUB_TLSUB_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#  if defined(TLSUB_BUILDING)
#    define TLSUB_API __declspec(dllexport)
#  else
#    define TLSUB_API __declspec(dllimport)
#  endif
#else
#  define TLSUB_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum tls_status {
    TLS_OK = 0,
    TLS_INVALID_ARGUMENT,
    TLS_SINGULAR_MATRIX,
    TLS_NOT_TEMPERLEY_LIEB,
    TLS_TRACE_TOO_SMALL,
    TLS_CANONICALIZATION_FAILED,
    TLS_BUDGET_EXCEEDED,
    TLS_RANK_AMBIGUOUS,
    TLS_REQUIRES_ANTIDIAGONAL,
    TLS_LEVEL_OUT_OF_RANGE,
    TLS_WINDOW_TOO_SMALL,
    TLS_INVALID_Q,
    TLS_IO,
    TLS_PARSE,
    TLS_INTERNAL
} tls_status;

typedef struct tls_data tls_data;
typedef struct tls_fock tls_fock;

typedef struct tls_config {
    const char* input_path; /* NULL or path to a JSON matrix */
    const char* preset;     /* NULL or a preset name */
    int levels;
    double tol;
    int window_k0;
    int window_L;
    int ell_max;
    int trunc_K;
    int text_format;        /* 0: JSON, 1: text */
    uint64_t memory_budget;
    const char* cache_path; /* NULL for no cache */
    int corrupt_iota;       /* test hook, 0 disables */
} tls_config;

TLSUB_API void tls_config_init(tls_config* cfg);

TLSUB_API const char* tls_status_string(tls_status s);
/* Message of the last failure on the calling thread. */
TLSUB_API const char* tls_last_error(void);
TLSUB_API void tls_string_free(char* s);

/* entries are row-major, interleaved (re, im) pairs, 2*m*m doubles */
TLSUB_API tls_status tls_data_from_matrix(const double* entries, int m, double tol, tls_data** out);
TLSUB_API tls_status tls_data_from_json(const char* json, double tol, tls_data** out);
TLSUB_API tls_status tls_data_from_preset(const char* name, double tol, tls_data** out);
TLSUB_API int tls_data_m(const tls_data* d);
TLSUB_API double tls_data_q(const tls_data* d);
TLSUB_API void tls_data_free(tls_data* d);

TLSUB_API tls_status tls_fock_build(const tls_data* d, int levels, uint64_t memory_budget,
                                    tls_fock** out);
TLSUB_API tls_status tls_fock_load(const tls_data* d, int levels, const char* path,
                                   tls_fock** out);
TLSUB_API tls_status tls_fock_save(const tls_fock* f, const char* path);
/* writes levels+1 dimensions into dims */
TLSUB_API tls_status tls_fock_dims(const tls_fock* f, int64_t* dims, size_t capacity);
TLSUB_API int tls_fock_levels(const tls_fock* f);
TLSUB_API tls_status tls_fock_corrupt_iota(tls_fock* f, int level, double eps);
/* relation reports for a built instance, as JSON; *passed set to 1 if all pass */
TLSUB_API tls_status tls_fock_verify_json(const tls_fock* f, double tolerance, char** json,
                                          int* passed);
TLSUB_API void tls_fock_free(tls_fock* f);

/* Commands. *report receives a string owned by the caller (tls_string_free);
 * *exit_code follows 0 pass / 1 verification failure / 2 invalid input. */
TLSUB_API tls_status tls_analyze(const tls_config* cfg, char** report, int* exit_code);
TLSUB_API tls_status tls_verify(const tls_config* cfg, char** report, int* exit_code);
TLSUB_API tls_status tls_fusion(const tls_config* cfg, int k, int l, int k2, int l2,
                                char** report, int* exit_code);
TLSUB_API tls_status tls_ktheory(const tls_config* cfg, char** report, int* exit_code);
TLSUB_API tls_status tls_uq2(const tls_config* cfg, char** report, int* exit_code);

#ifdef __cplusplus
}
#endif

#endif
