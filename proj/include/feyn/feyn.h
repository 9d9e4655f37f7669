/* C interface to the Feynman diagram library. All handles are opaque; every
 * function returns a status and leaves a message for feyn_last_error() on
 * failure. Strings returned through char** are owned by the caller and
 * released with feyn_string_free(). */
#ifndef FEYN_FEYN_H
#define FEYN_FEYN_H

#include <stddef.h>
#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef enum feyn_status {
  FEYN_OK = 0,
  FEYN_ERR_INVALID_ARGUMENT = 1,
  FEYN_ERR_PARSE = 2,
  FEYN_ERR_ARITY = 3,
  FEYN_ERR_LIMIT = 4,
  FEYN_ERR_IO = 5,
  FEYN_ERR_INCOMPATIBLE = 6,
  FEYN_ERR_UNKNOWN_COLOUR = 7,
  FEYN_ERR_INTERNAL = 99
} feyn_status;

typedef enum feyn_format {
  FEYN_FORMAT_TEXT = 0, /* human-readable; series as "c * x[..]^k + ..." */
  FEYN_FORMAT_TSV = 1,
  FEYN_FORMAT_JSON = 2
} feyn_format;

typedef enum feyn_numeric {
  FEYN_NUMERIC_AUTO = 0, /* exact when the algebra is exact */
  FEYN_NUMERIC_EXACT = 1,
  FEYN_NUMERIC_REAL = 2
} feyn_numeric;

typedef struct feyn_table feyn_table;
typedef struct feyn_diagram feyn_diagram;
typedef struct feyn_algebra feyn_algebra;

/* Message of the last failure on this thread, "" if none. */
const char* feyn_last_error(void);
void feyn_string_free(char* s);
const char* feyn_version(void);

/* Colour tables. The open table accepts every colour. */
feyn_status feyn_table_open(feyn_table** out);
feyn_status feyn_table_parse(const char* text, feyn_table** out);
feyn_status feyn_table_load(const char* path, feyn_table** out);
void feyn_table_free(feyn_table* t);

/* Diagrams, typed or untyped, in the diagram language. table may be NULL
 * for the open table. */
feyn_status feyn_diagram_parse(const char* text, const feyn_table* table, feyn_diagram** out);
feyn_status feyn_diagram_load(const char* path, const feyn_table* table, feyn_diagram** out);
void feyn_diagram_free(feyn_diagram* d);
int feyn_diagram_is_typed(const feyn_diagram* d);
feyn_status feyn_diagram_serialize(const feyn_diagram* d, char** out);
feyn_status feyn_diagram_info(const feyn_diagram* d, int* vertices, int* legs, int* degree,
                              int* components);

/* Automorphism group order and canonical code (lowercase hex). */
feyn_status feyn_aut(const feyn_diagram* d, uint64_t* order, char** code);
feyn_status feyn_aut_bruteforce(const feyn_diagram* d, uint64_t* order);
feyn_status feyn_isomorphic(const feyn_diagram* a, const feyn_diagram* b, int* result);

/* PROP operations on typed diagrams; untyped inputs are read as (0, n). */
feyn_status feyn_compose(const feyn_diagram* g, const feyn_diagram* f, feyn_diagram** out);
feyn_status feyn_tensor(const feyn_diagram* a, const feyn_diagram* b, feyn_diagram** out);
feyn_status feyn_braiding(int m, int n, feyn_diagram** out);
feyn_status feyn_pairing_count(int k, uint64_t* count);
/* Closure classes with multiplicities. */
feyn_status feyn_closures(const feyn_diagram* d, feyn_format format, char** out);

/* Iso-classes of closed diagrams; root may be NULL. */
feyn_status feyn_enumerate(const feyn_table* table, const feyn_diagram* root, int max_degree,
                           int connected, int reduced, feyn_format format, char** out);

/* Algebra specifications (JSON). */
feyn_status feyn_algebra_parse(const char* text, feyn_algebra** out);
feyn_status feyn_algebra_load(const char* path, feyn_algebra** out);
void feyn_algebra_free(feyn_algebra* a);
int feyn_algebra_is_exact(const feyn_algebra* a);

/* Partition function and free energy; with algebra NULL the weights are 1. */
feyn_status feyn_partition(const feyn_algebra* algebra, const feyn_table* table, int max_degree,
                           feyn_numeric numeric, feyn_format format, char** out);
feyn_status feyn_free_energy(const feyn_algebra* algebra, const feyn_table* table, int max_degree,
                             feyn_numeric numeric, feyn_format format, char** out);
/* <<d>>, or <<d>>_x up to max_degree when with_potential is set. */
feyn_status feyn_expect(const feyn_diagram* d, const feyn_algebra* algebra, const feyn_table* table,
                        int with_potential, int max_degree, feyn_numeric numeric,
                        feyn_format format, char** out);

typedef struct feyn_verify_args {
  const feyn_table* table;     /* expfz, derivative, reduced, fubini, frt */
  const feyn_algebra* algebra; /* frt; optional for derivative and fubini */
  const feyn_diagram* diagram; /* frt subject, reduced root */
  int max_degree;
  int with_potential;          /* frt */
  feyn_numeric numeric;        /* frt */
  int dim;                     /* wick, taylor: largest dimension */
  int count;                   /* wick: pairings per dimension; taylor: polynomials */
  int max_vertices;            /* fubini */
  uint64_t seed;
} feyn_verify_args;

void feyn_verify_args_init(feyn_verify_args* args);

/* name is one of wick, frt, expfz, fubini, taylor, derivative, reduced.
 * passed is set to 1 or 0 and report holds one line per check. */
feyn_status feyn_verify(const char* name, const feyn_verify_args* args, int* passed, char** report);

#ifdef __cplusplus
}
#endif

#endif
