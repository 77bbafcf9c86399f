#ifndef VGRAPH_VGRAPH_H
#define VGRAPH_VGRAPH_H

#include <stddef.h>
#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef enum {
  VG_OK = 0,
  VG_ERR_ARGUMENT = 1,
  VG_ERR_PARSE = 2,
  VG_ERR_CAPACITY = 3,
  VG_ERR_PRECONDITION = 4,
  VG_ERR_STRUCTURE = 5,
  VG_ERR_RANK = 6,
  VG_ERR_MEMORY = 7,
  VG_ERR_INTERNAL = 8
} vg_status;

typedef enum { VG_SPACE_BB = 0, VG_SPACE_B = 1 } vg_space;
typedef enum { VG_ALGEBRA_GL = 0, VG_ALGEBRA_SO = 1 } vg_algebra;
typedef enum { VG_MU_COMPUTED = 0, VG_MU_ASSUMED_ZERO = 1, VG_MU_SUPPLIED = 2 } vg_mu_source;

typedef struct vg_context vg_context;
typedef struct vg_diagram vg_diagram;
typedef struct vg_mu_table vg_mu_table;

/* Message of the last failing call on this thread; never NULL. */
const char* vg_last_error(void);
const char* vg_status_name(vg_status s);
/* Releases strings and arrays returned by this library. */
void vg_free(void* p);

/* A context owns the enumeration caches and the relation corpus. data_dir
   holds schemas/ (B and BB relations), feynman/ (Feynman graph relations)
   and patterns/ (forbidden cycle patterns). */
vg_status vg_context_create(const char* data_dir, vg_context** out);
void vg_context_destroy(vg_context* ctx);
/* Bounds on generated diagrams and relation vectors per cell. */
vg_status vg_context_set_capacity(vg_context* ctx, size_t diagrams, size_t relations);
/* Hash of the loaded corpus; changes whenever any relation file changes. */
uint64_t vg_context_digest(const vg_context* ctx);
size_t vg_schema_count(const vg_context* ctx);
const char* vg_schema_name(const vg_context* ctx, size_t i);

typedef struct {
  uint64_t diagrams;
  uint64_t relations;
  uint64_t rank;
  uint64_t dim;
} vg_dim_result;

/* dim BB(m,u) (IHX) or dim B(m,u) (IHX and x). */
vg_status vg_dim(vg_context* ctx, int m, int u, vg_space space, vg_dim_result* out);

typedef struct {
  int f, o, e;
  uint64_t diagrams; /* diagrams with exactly this (f,o,e) */
  uint64_t dim_f;
  uint64_t dim_g;
} vg_filtration_row;

typedef struct {
  int f, o, e;
} vg_delta;

/* Admissible (f,o,e) for degree (m,u), increasing. */
vg_status vg_t_set(int m, int u, vg_delta** out, size_t* count);

/* Ladder filtration of B(m,u), one row per admissible (f,o,e), increasing. */
vg_status vg_filtration(vg_context* ctx, int m, int u, vg_filtration_row** rows, size_t* count);

typedef struct {
  uint64_t graphs;  /* non-degenerate Feynman graphs */
  uint64_t allowed; /* of which free of forbidden cycles */
  uint64_t relations;
  uint64_t rank;
  uint64_t value;
} vg_mu_result;

/* mu(m,u,o,e): dimension of the Feynman graph quotient with p = o, q = e. */
vg_status vg_mu(vg_context* ctx, int m, int u, int o, int e, vg_mu_result* out);

int64_t vg_sqnum(int64_t n);
vg_status vg_closed_form_bb(int m, int u, int64_t* out);

vg_status vg_mu_table_create(vg_mu_table** out);
void vg_mu_table_destroy(vg_mu_table* t);
vg_status vg_mu_table_set(vg_mu_table* t, int m, int u, int o, int e, int64_t value, vg_mu_source source);
/* Parses "m,u,o,e,value,provenance" rows into t (entries are replaced). */
vg_status vg_mu_table_load(vg_mu_table* t, const char* text);
vg_status vg_mu_table_rows(const vg_mu_table* t, char** text);

typedef struct {
  int m, u, o, e;
  int64_t coefficient;
} vg_bound_term;

/* The mu indices the bound for (m,u) depends on, with their coefficients. */
vg_status vg_bound_terms(int m, int u, vg_bound_term** terms, size_t* count);
vg_status vg_bb_bound(int m, int u, const vg_mu_table* t, int64_t* out);

typedef struct {
  int m, u, o, e;
  int64_t coefficient;
  int64_t upper;
  int64_t forced; /* least value keeping the bound >= exact */
} vg_sandwich_row;

typedef struct {
  int64_t bound;
  int64_t exact;
  int feasible; /* 0 flags bound < exact */
} vg_sandwich_summary;

vg_status vg_sandwich(int m, int u, int64_t exact, const vg_mu_table* t, vg_sandwich_summary* summary,
                      vg_sandwich_row** rows, size_t* count);

/* Diagrams and Feynman graphs in the text exchange format. */
vg_status vg_diagram_parse(const char* text, vg_diagram** out);
/* Every record of a text; release each with vg_diagram_destroy and the
   array with vg_free. */
vg_status vg_diagram_parse_all(const char* text, vg_diagram*** out, size_t* count);
/* From a lowercase hex canonical code. */
vg_status vg_diagram_from_code(const char* hex, vg_diagram** out);
void vg_diagram_destroy(vg_diagram* d);
vg_status vg_diagram_text(const vg_diagram* d, char** text);
/* Canonical code; sign is 0 for AS-degenerate graphs, else +1 or -1. */
vg_status vg_diagram_code(const vg_diagram* d, char** hex, int* sign);
vg_status vg_diagram_degree(const vg_diagram* d, int* m, int* u);
/* Free squares, odd and even maximal ladders. */
vg_status vg_diagram_delta(const vg_diagram* d, int* f, int* o, int* e);

/* Weight summed over every order of the legs on the circle, as text. */
vg_status vg_weight(const vg_diagram* d, vg_algebra a, char** poly);
/* Certificate text when a gl or so weight is nonzero; *found = 0 otherwise. */
vg_status vg_certify(const vg_diagram* d, int* found, char** certificate);

#ifdef __cplusplus
}
#endif

#endif
