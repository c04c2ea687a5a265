/* C interface to the sop library: opaque handles, integer status codes.
 * Every function returning sop_status leaves its outputs untouched on
 * failure; sop_last_error() describes the most recent failure in the
 * calling thread. Handles are freed with the matching *_free call. */

#ifndef SOP_C_H
#define SOP_C_H

#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef enum sop_status {
    SOP_OK = 0,
    SOP_EINVAL = 1, /* invalid argument or configuration */
    SOP_EDIM = 2,   /* basis/dimension mismatch */
    SOP_EPSD = 3,   /* operator not positive semidefinite */
    SOP_EGUARD = 4, /* polynomial degree beyond the truncation guard */
    SOP_EIO = 5,    /* file input/output failure */
    SOP_EFAIL = 6   /* internal failure */
} sop_status;

typedef struct sop_basis sop_basis; /* truncated number basis */
typedef struct sop_op sop_op;       /* dense operator on the basis */
typedef struct sop_grid sop_grid;   /* uniform phase-space grid */
typedef struct sop_gfn sop_gfn;     /* complex samples on a grid */
typedef struct sop_table sop_table; /* column-labelled result rows */

const char* sop_version(void);
const char* sop_last_error(void);
uint64_t sop_config_hash(const char* text);

/* ---- basis ---- */
sop_status sop_basis_create(int modes, int cutoff, sop_basis** out);
void sop_basis_free(sop_basis* b);
long sop_basis_dim(const sop_basis* b);
double sop_default_extent(const sop_basis* b);

/* ---- operators ---- */
/* kind: "ground" (no params), "number" (params = one occupation per mode),
 * "thermal" (params = lambda), "coherent" (params = q per mode, p per mode) */
sop_status sop_op_state(const sop_basis* b, const char* kind, const double* params, int nparams,
                        sop_op** out);
/* kind: 0 general, 1 hermitian, 2 normalized PSD state; entries fill the
 * block of indices <= max_index */
sop_status sop_op_random(const sop_basis* b, int max_index, uint64_t seed, int kind, sop_op** out);
void sop_op_free(sop_op* t);
long sop_op_dim(const sop_op* t);
sop_status sop_op_entry(const sop_op* t, long row, long col, double* re, double* im);
sop_status sop_op_trace(const sop_op* t, double* re, double* im);
sop_status sop_op_hs_norm(const sop_op* t, double* out);
/* meta_kv: nmeta (key, value) string pairs written into the artifact header */
sop_status sop_op_write_json(const sop_op* t, const char* path, const char* const* meta_kv,
                             int nmeta);
sop_status sop_op_read_json(const char* path, sop_op** out);

/* ---- grids and grid functions ---- */
sop_status sop_grid_create(double extent, int points, sop_grid** out);
void sop_grid_free(sop_grid* g);
void sop_gfn_free(sop_gfn* f);
int sop_gfn_points(const sop_gfn* f);
sop_status sop_gfn_sample(const sop_gfn* f, int iq, int ip, double* re, double* im);
sop_status sop_gfn_integral(const sop_gfn* f, double* re, double* im);
sop_status sop_gfn_write_csv(const sop_gfn* f, const char* path, const char* const* meta_kv,
                             int nmeta);
sop_status sop_gfn_write_json(const sop_gfn* f, const char* path, const char* const* meta_kv,
                              int nmeta);
/* amplitude * exp(-((q-q0)^2 + (p-p0)^2) * inv_width) sampled on the grid */
sop_status sop_gaussian_symbol(const sop_grid* g, double amplitude, double inv_width, double q0,
                               double p0, sop_gfn** out);

/* ---- phase-space maps ---- */
sop_status sop_wigner(const sop_op* t, const sop_grid* g, sop_gfn** out);
sop_status sop_wigner_at(const sop_op* t, double q, double p, double* out);
/* path: 0 trace formula, 1 kernel factorization */
sop_status sop_weyl_transform(const sop_op* t, const sop_grid* g, int path, sop_gfn** out);
sop_status sop_weyl_quantize(const sop_gfn* f, const sop_basis* b, sop_op** out);
sop_status sop_inverse_weyl(const sop_gfn* f, const sop_basis* b, sop_op** out);
sop_status sop_symplectic_fourier(const sop_gfn* f, sop_gfn** out);

/* ---- convolutions ---- */
sop_status sop_conv_fn_op(const sop_gfn* f, const sop_op* t, sop_op** out);
sop_status sop_conv_op_op(const sop_op* s, const sop_op* t, const sop_grid* g, sop_gfn** out);
sop_status sop_husimi(const sop_op* t, const sop_grid* g, sop_gfn** out);
sop_status sop_coherent_quantize(const sop_gfn* f, const sop_basis* b, sop_op** out);

/* ---- tables and studies ---- */
void sop_table_free(sop_table* t);
long sop_table_rows(const sop_table* t);
int sop_table_cols(const sop_table* t);
const char* sop_table_column(const sop_table* t, int col);
/* formatted cell text (12 significant digits for numbers) */
sop_status sop_table_cell(const sop_table* t, long row, int col, char* buf, int buflen);
sop_status sop_table_write_csv(const sop_table* t, const char* path, const char* const* meta_kv,
                               int nmeta);
sop_status sop_table_write_json(const sop_table* t, const char* path, const char* const* meta_kv,
                                int nmeta);

/* columns alpha, beta, re, im for |alpha| + |beta| <= degree */
sop_status sop_moment_table(const sop_op* t, int degree, sop_table** out);
/* family: "h" (Hilbert-Schmidt H-power), "qp" (operator norm), "qp-hs" */
sop_status sop_seminorm_report(const sop_op* t, const char* family, int max_order,
                               sop_table** out);
/* fitted constants plus one row per word length */
sop_status sop_analyticity(const sop_op* t, int max_length, double* c, double* k, sop_table** out);
/* columns k, schmidt_value */
sop_status sop_purify_schmidt(const sop_op* t, sop_table** out);
/* delta-quantization checks at the given phase-space points (2*npoints
 * doubles, q/p interleaved) against n_ops seeded test operators */
sop_status sop_delta_quantize_study(const sop_basis* b, const double* points, int npoints,
                                    int n_ops, uint64_t seed, sop_table** out);
/* fspec: "1", "q2", "p2", "qp+pq", "q4" */
sop_status sop_fluct_moments(const sop_op* state, const char* fspec, const int* spins, int nspins,
                             sop_table** out);
sop_status sop_fluct_spectral(const sop_op* state, const int* spins, int nspins, double a,
                              double b, sop_table** out);
sop_status sop_rescaled_projections(const sop_op* state, double q, int steps, sop_table** out);
/* approximate-identity study at the given cutoff: columns eps, trace,
 * hs_norm, second_singular_value */
sop_status sop_delta_approx(int cutoff, const double* eps, int neps, sop_table** out);

#ifdef __cplusplus
}
#endif

#endif /* SOP_C_H */
