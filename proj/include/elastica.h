/* elastica - approximate geodesics between closed planar shapes under the
 * two-parameter elastic metrics, computed by path straightening.
 *
 * C interface to the shared library. All objects are opaque handles created
 * and destroyed through these functions; every fallible call returns an
 * elastica_status and leaves a human-readable message in elastica_last_error()
 * (thread local, valid until the next failing call on the same thread).
 */
#ifndef ELASTICA_H
#define ELASTICA_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#define ELASTICA_API __declspec(dllexport)
#else
#define ELASTICA_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum elastica_status {
  ELASTICA_OK = 0,
  ELASTICA_ERR_INVALID_ARGUMENT = 1,
  ELASTICA_ERR_DEGENERATE_INPUT = 2,
  ELASTICA_ERR_NUMERICAL = 3,
  ELASTICA_ERR_IO = 4
} elastica_status;

ELASTICA_API const char* elastica_last_error(void);

typedef struct elastica_chain elastica_chain;
typedef struct elastica_path elastica_path;
typedef struct elastica_gradient elastica_gradient;
typedef struct elastica_report elastica_report;
typedef struct elastica_gradcheck elastica_gradcheck;

/* ---- closed chains (n vertices, equal rods of length 1/n, perimeter 1) --- */

typedef enum elastica_shape_kind {
  ELASTICA_SHAPE_CIRCLE = 0,
  ELASTICA_SHAPE_ELLIPSE = 1,      /* p1 = eccentricity in [0,1) */
  ELASTICA_SHAPE_SUPERELLIPSE = 2, /* p1 = exponent >= 2 */
  ELASTICA_SHAPE_FAMILY = 3        /* p1 = u in [0,1], p2 = v in [0,1] */
} elastica_shape_kind;

ELASTICA_API elastica_status elastica_shape_generate(int kind, double p1, double p2,
                                                     size_t n, elastica_chain** out);
/* Resample an arbitrary closed polygon (m >= 3 points, row-major x,y pairs)
 * to an n-vertex chain with equal rods, scaled to perimeter 1. */
ELASTICA_API elastica_status elastica_chain_from_polygon(const double* xy, size_t m,
                                                         size_t n, elastica_chain** out);
ELASTICA_API elastica_status elastica_chain_resample(const elastica_chain* c, size_t n,
                                                     elastica_chain** out);
ELASTICA_API size_t elastica_chain_size(const elastica_chain* c);
ELASTICA_API void elastica_chain_vertices(const elastica_chain* c, double* xy_out);
ELASTICA_API double elastica_chain_rod_deviation(const elastica_chain* c);
ELASTICA_API double elastica_chain_perimeter(const elastica_chain* c);
ELASTICA_API double elastica_chain_eccentricity(const elastica_chain* c);
ELASTICA_API elastica_status elastica_chain_rotation_number(const elastica_chain* c, int* out);
ELASTICA_API elastica_status elastica_chain_load(const char* file, elastica_chain** out);
ELASTICA_API elastica_status elastica_chain_save(const elastica_chain* c, const char* file);
ELASTICA_API void elastica_chain_free(elastica_chain* c);

/* ---- paths of chains (N_t+1 time slices, fixed endpoints) ---------------- */

ELASTICA_API elastica_status elastica_path_linear(const elastica_chain* from,
                                                  const elastica_chain* to, size_t nt,
                                                  int resample_slices, elastica_path** out);
/* Bump path: base -> peak -> base. profile 0 selects the default tent profile
 * 1-|2t-1|; profile 1 selects sin^2(pi t). */
ELASTICA_API elastica_status elastica_path_bump(const elastica_chain* base,
                                                const elastica_chain* peak, size_t nt,
                                                int profile, elastica_path** out);
ELASTICA_API size_t elastica_path_slice_count(const elastica_path* p); /* = N_t + 1 */
ELASTICA_API size_t elastica_path_chain_size(const elastica_path* p);
ELASTICA_API elastica_status elastica_path_slice(const elastica_path* p, size_t j,
                                                 elastica_chain** out);
ELASTICA_API void elastica_path_params(const elastica_path* p, double* a, double* b);
ELASTICA_API void elastica_path_set_params(elastica_path* p, double a, double b);
ELASTICA_API elastica_status elastica_path_load(const char* file, elastica_path** out);
ELASTICA_API elastica_status elastica_path_save(const elastica_path* p, const char* file);
ELASTICA_API void elastica_path_free(elastica_path* p);

/* ---- energy and gradient ------------------------------------------------- */

/* per_slice may be NULL, otherwise it receives N_t+1 integrand values. */
ELASTICA_API elastica_status elastica_path_energy(const elastica_path* p, double a, double b,
                                                  double* energy_out, double* per_slice);
ELASTICA_API elastica_status elastica_path_gradient(const elastica_path* p, double a, double b,
                                                    elastica_gradient** out);
ELASTICA_API size_t elastica_gradient_slice_count(const elastica_gradient* g);
ELASTICA_API size_t elastica_gradient_chain_size(const elastica_gradient* g);
/* Arrays are n entries per slice; z is n x,y pairs. */
ELASTICA_API void elastica_gradient_z(const elastica_gradient* g, size_t j, double* xy_out);
ELASTICA_API void elastica_gradient_beta(const elastica_gradient* g, size_t j, double* out);
ELASTICA_API void elastica_gradient_xi(const elastica_gradient* g, size_t j, double* out);
ELASTICA_API void elastica_gradient_m(const elastica_gradient* g, size_t j, double* out);
ELASTICA_API void elastica_gradient_h(const elastica_gradient* g, size_t j, double* out);
ELASTICA_API double elastica_gradient_slice_norm(const elastica_gradient* g, size_t j);
ELASTICA_API double elastica_gradient_path_norm(const elastica_gradient* g);
ELASTICA_API elastica_status elastica_gradient_save(const elastica_gradient* g, const char* file);
ELASTICA_API elastica_status elastica_gradient_load(const char* file, elastica_gradient** out);
ELASTICA_API void elastica_gradient_free(elastica_gradient* g);

/* ---- path straightening --------------------------------------------------- */

typedef struct elastica_straighten_config {
  double a;
  double b;
  double step;          /* descent step; <= 0 requests automatic scaling */
  double step_fraction; /* auto step: first move = step_fraction * rod length */
  long max_iters;
  double grad_tol;      /* terminate when the path gradient norm falls below */
  long reproject_every; /* re-resample slices to equal rods; 0 = never */
  int line_search;      /* backtracking halving until the energy decreases */
  long trace_every;     /* record energy/gradient trace every k iterations */
} elastica_straighten_config;

ELASTICA_API void elastica_straighten_config_init(elastica_straighten_config* cfg);

typedef enum elastica_straighten_status {
  ELASTICA_STRAIGHTEN_CONVERGED = 0,
  ELASTICA_STRAIGHTEN_MAX_ITERS = 1,
  ELASTICA_STRAIGHTEN_DIVERGED = 2
} elastica_straighten_status;

ELASTICA_API elastica_status elastica_straighten(const elastica_path* initial,
                                                 const elastica_straighten_config* cfg,
                                                 elastica_report** out);
ELASTICA_API int elastica_report_status(const elastica_report* r);
ELASTICA_API long elastica_report_iterations(const elastica_report* r);
ELASTICA_API size_t elastica_report_trace_size(const elastica_report* r);
ELASTICA_API void elastica_report_trace(const elastica_report* r, long* iter_out,
                                        double* energy_out, double* grad_out,
                                        double* rod_dev_out);
ELASTICA_API elastica_status elastica_report_final_path(const elastica_report* r,
                                                        elastica_path** out);
ELASTICA_API void elastica_report_free(elastica_report* r);

ELASTICA_API elastica_status elastica_auto_step(const elastica_path* p, double a, double b,
                                                double target_rel_change, double* delta_out);

/* ---- experiments ---------------------------------------------------------- */

/* Energies of bump paths through the two-parameter shape family on a
 * grid_u x grid_v grid of (u,v) in [0,1]^2; row-major with v as rows. */
ELASTICA_API elastica_status elastica_landscape(size_t n, size_t nt, size_t grid_u,
                                                size_t grid_v, double a, double b,
                                                double* energies_out);

ELASTICA_API elastica_status elastica_gradcheck_run(uint64_t seed, size_t n, size_t nt,
                                                    double a, double b, int corrupt_xi,
                                                    elastica_gradcheck** out);
ELASTICA_API size_t elastica_gradcheck_count(const elastica_gradcheck* g);
ELASTICA_API const char* elastica_gradcheck_name(const elastica_gradcheck* g, size_t i);
ELASTICA_API double elastica_gradcheck_error(const elastica_gradcheck* g, size_t i);
ELASTICA_API double elastica_gradcheck_tolerance(const elastica_gradcheck* g, size_t i);
ELASTICA_API int elastica_gradcheck_passed(const elastica_gradcheck* g, size_t i);
ELASTICA_API void elastica_gradcheck_free(elastica_gradcheck* g);

/* ---- plot emission --------------------------------------------------------- */

ELASTICA_API elastica_status elastica_path_write_svg(const elastica_path* p, const char* file);
/* Negative-gradient arrows at the vertices of every slice. uniform_scale != 0
 * scales all slices by one shared factor, otherwise per slice. */
ELASTICA_API elastica_status elastica_gradient_write_svg(const elastica_path* p,
                                                         const elastica_gradient* g,
                                                         const char* file, int uniform_scale);

#ifdef __cplusplus
}
#endif

#endif /* ELASTICA_H */
