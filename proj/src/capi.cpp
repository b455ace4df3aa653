// C API over the core library: opaque handles, status codes, thread-local
// error messages. Exceptions never cross this boundary.

#include "elastica.h"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <new>
#include <string>

#include "core/experiments.hpp"
#include "core/gradcheck.hpp"
#include "core/io.hpp"
#include "core/straighten.hpp"
#include "core/svg.hpp"

using namespace elastica;

struct elastica_chain {
  Chain impl;
};
struct elastica_path {
  PathOfChains impl;
};
struct elastica_gradient {
  GradientField impl;
};
struct elastica_report {
  StraightenReport impl;
};
struct elastica_gradcheck {
  GradCheckReport impl;
};

namespace {

thread_local std::string t_last_error;

void set_error(const std::string& msg) { t_last_error = msg; }

template <typename Fn>
elastica_status guarded(Fn&& fn) {
  try {
    fn();
    return ELASTICA_OK;
  } catch (const InvalidArgument& e) {
    set_error(e.what());
    return ELASTICA_ERR_INVALID_ARGUMENT;
  } catch (const DegenerateInput& e) {
    set_error(e.what());
    return ELASTICA_ERR_DEGENERATE_INPUT;
  } catch (const IoError& e) {
    set_error(e.what());
    return ELASTICA_ERR_IO;
  } catch (const SolverError& e) {
    set_error(e.what());
    return ELASTICA_ERR_NUMERICAL;
  } catch (const std::invalid_argument& e) {
    set_error(e.what());
    return ELASTICA_ERR_INVALID_ARGUMENT;
  } catch (const std::bad_alloc&) {
    set_error("out of memory");
    return ELASTICA_ERR_NUMERICAL;
  } catch (const std::exception& e) {
    set_error(e.what());
    return ELASTICA_ERR_NUMERICAL;
  }
}

elastica_status require(bool ok, const char* msg) {
  if (!ok) {
    set_error(msg);
    return ELASTICA_ERR_INVALID_ARGUMENT;
  }
  return ELASTICA_OK;
}

}  // namespace

extern "C" {

const char* elastica_last_error(void) { return t_last_error.c_str(); }

/* ---- chains -------------------------------------------------------------- */

elastica_status elastica_shape_generate(int kind, double p1, double p2, size_t n,
                                        elastica_chain** out) {
  if (auto s = require(out != nullptr, "null output handle")) return s;
  return guarded([&] {
    ShapeKind sk;
    switch (kind) {
      case ELASTICA_SHAPE_CIRCLE: sk = ShapeKind::Circle; break;
      case ELASTICA_SHAPE_ELLIPSE: sk = ShapeKind::Ellipse; break;
      case ELASTICA_SHAPE_SUPERELLIPSE: sk = ShapeKind::Superellipse; break;
      case ELASTICA_SHAPE_FAMILY: sk = ShapeKind::Family; break;
      default: throw InvalidArgument("unknown shape kind " + std::to_string(kind));
    }
    *out = new elastica_chain{generate_shape(sk, p1, p2, n)};
  });
}

elastica_status elastica_chain_from_polygon(const double* xy, size_t m, size_t n,
                                            elastica_chain** out) {
  if (auto s = require(out && xy, "null argument")) return s;
  return guarded([&] {
    std::vector<Vec2> poly(m);
    for (size_t i = 0; i < m; ++i) poly[i] = {xy[2 * i], xy[2 * i + 1]};
    *out = new elastica_chain{resample_arclength(poly, n)};
  });
}

elastica_status elastica_chain_resample(const elastica_chain* c, size_t n,
                                        elastica_chain** out) {
  if (auto s = require(c && out, "null argument")) return s;
  return guarded([&] { *out = new elastica_chain{resample_arclength(c->impl, n)}; });
}

size_t elastica_chain_size(const elastica_chain* c) { return c ? c->impl.size() : 0; }

void elastica_chain_vertices(const elastica_chain* c, double* xy_out) {
  if (!c || !xy_out) return;
  for (size_t k = 0; k < c->impl.size(); ++k) {
    xy_out[2 * k] = c->impl.vertex(k).x;
    xy_out[2 * k + 1] = c->impl.vertex(k).y;
  }
}

double elastica_chain_rod_deviation(const elastica_chain* c) {
  return c ? c->impl.rod_deviation() : 0.0;
}

double elastica_chain_perimeter(const elastica_chain* c) {
  return c ? c->impl.perimeter() : 0.0;
}

double elastica_chain_eccentricity(const elastica_chain* c) {
  return c ? measure_eccentricity(c->impl) : 0.0;
}

elastica_status elastica_chain_rotation_number(const elastica_chain* c, int* out) {
  if (auto s = require(c && out, "null argument")) return s;
  return guarded([&] { *out = angles_from_chain(c->impl).rotation_number; });
}

elastica_status elastica_chain_load(const char* file, elastica_chain** out) {
  if (auto s = require(file && out, "null argument")) return s;
  return guarded([&] { *out = new elastica_chain{load_curve(file)}; });
}

elastica_status elastica_chain_save(const elastica_chain* c, const char* file) {
  if (auto s = require(c && file, "null argument")) return s;
  return guarded([&] { save_curve(c->impl, file); });
}

void elastica_chain_free(elastica_chain* c) { delete c; }

/* ---- paths --------------------------------------------------------------- */

elastica_status elastica_path_linear(const elastica_chain* from, const elastica_chain* to,
                                     size_t nt, int resample_slices, elastica_path** out) {
  if (auto s = require(from && to && out, "null argument")) return s;
  return guarded([&] {
    *out = new elastica_path{
        build_linear_path(from->impl, to->impl, nt, resample_slices != 0)};
  });
}

elastica_status elastica_path_bump(const elastica_chain* base, const elastica_chain* peak,
                                   size_t nt, int profile, elastica_path** out) {
  if (auto s = require(base && peak && out, "null argument")) return s;
  return guarded([&] {
    const BumpProfile prof = (profile == 1) ? BumpProfile(sin2_profile)
                                            : BumpProfile(tent_profile);
    if (profile != 0 && profile != 1)
      throw InvalidArgument("unknown bump profile " + std::to_string(profile));
    *out = new elastica_path{build_bump_path(base->impl, peak->impl, nt, prof)};
  });
}

size_t elastica_path_slice_count(const elastica_path* p) {
  return p ? p->impl.slice_count() : 0;
}

size_t elastica_path_chain_size(const elastica_path* p) {
  return p ? p->impl.chain_size() : 0;
}

elastica_status elastica_path_slice(const elastica_path* p, size_t j, elastica_chain** out) {
  if (auto s = require(p && out, "null argument")) return s;
  if (auto s = require(j < p->impl.slice_count(), "slice index out of range")) return s;
  return guarded([&] { *out = new elastica_chain{p->impl.slice(j)}; });
}

void elastica_path_params(const elastica_path* p, double* a, double* b) {
  if (!p) return;
  if (a) *a = p->impl.param_a();
  if (b) *b = p->impl.param_b();
}

void elastica_path_set_params(elastica_path* p, double a, double b) {
  if (p) p->impl.set_params(a, b);
}

elastica_status elastica_path_load(const char* file, elastica_path** out) {
  if (auto s = require(file && out, "null argument")) return s;
  return guarded([&] { *out = new elastica_path{load_path(file)}; });
}

elastica_status elastica_path_save(const elastica_path* p, const char* file) {
  if (auto s = require(p && file, "null argument")) return s;
  return guarded([&] { save_path(p->impl, file); });
}

void elastica_path_free(elastica_path* p) { delete p; }

/* ---- energy and gradient -------------------------------------------------- */

elastica_status elastica_path_energy(const elastica_path* p, double a, double b,
                                     double* energy_out, double* per_slice) {
  if (auto s = require(p && energy_out, "null argument")) return s;
  return guarded([&] {
    std::vector<double> slices;
    *energy_out = path_energy(p->impl, ElasticParams(a, b), per_slice ? &slices : nullptr);
    if (per_slice)
      std::memcpy(per_slice, slices.data(), slices.size() * sizeof(double));
  });
}

elastica_status elastica_path_gradient(const elastica_path* p, double a, double b,
                                       elastica_gradient** out) {
  if (auto s = require(p && out, "null argument")) return s;
  return guarded([&] {
    *out = new elastica_gradient{path_gradient(p->impl, ElasticParams(a, b))};
  });
}

size_t elastica_gradient_slice_count(const elastica_gradient* g) {
  return g ? g->impl.slices.size() : 0;
}

size_t elastica_gradient_chain_size(const elastica_gradient* g) { return g ? g->impl.n : 0; }

void elastica_gradient_z(const elastica_gradient* g, size_t j, double* xy_out) {
  if (!g || !xy_out || j >= g->impl.slices.size()) return;
  for (size_t k = 0; k < g->impl.n; ++k) {
    xy_out[2 * k] = g->impl.slices[j].z[k].x;
    xy_out[2 * k + 1] = g->impl.slices[j].z[k].y;
  }
}

#define ELASTICA_GRAD_ARRAY(name, member)                                            \
  void elastica_gradient_##name(const elastica_gradient* g, size_t j, double* out) { \
    if (!g || !out || j >= g->impl.slices.size()) return;                            \
    std::memcpy(out, g->impl.slices[j].member.data(), g->impl.n * sizeof(double));   \
  }
ELASTICA_GRAD_ARRAY(beta, beta)
ELASTICA_GRAD_ARRAY(xi, xi)
ELASTICA_GRAD_ARRAY(m, m)
ELASTICA_GRAD_ARRAY(h, h)
#undef ELASTICA_GRAD_ARRAY

double elastica_gradient_slice_norm(const elastica_gradient* g, size_t j) {
  if (!g || j >= g->impl.slices.size()) return 0.0;
  return std::sqrt(std::max(0.0, g->impl.slices[j].quotient_norm2));
}

double elastica_gradient_path_norm(const elastica_gradient* g) {
  return g ? g->impl.path_norm() : 0.0;
}

elastica_status elastica_gradient_save(const elastica_gradient* g, const char* file) {
  if (auto s = require(g && file, "null argument")) return s;
  return guarded([&] { save_gradient(g->impl, file); });
}

elastica_status elastica_gradient_load(const char* file, elastica_gradient** out) {
  if (auto s = require(file && out, "null argument")) return s;
  return guarded([&] { *out = new elastica_gradient{load_gradient(file)}; });
}

void elastica_gradient_free(elastica_gradient* g) { delete g; }

/* ---- straightening --------------------------------------------------------- */

void elastica_straighten_config_init(elastica_straighten_config* cfg) {
  if (!cfg) return;
  cfg->a = 1.0;
  cfg->b = 1.0;
  cfg->step = 0.0;
  cfg->step_fraction = 0.05;
  cfg->max_iters = 1000;
  cfg->grad_tol = 1e-3;
  cfg->reproject_every = 50;
  cfg->line_search = 1;
  cfg->trace_every = 1;
}

elastica_status elastica_straighten(const elastica_path* initial,
                                    const elastica_straighten_config* cfg,
                                    elastica_report** out) {
  if (auto s = require(initial && cfg && out, "null argument")) return s;
  return guarded([&] {
    StraightenConfig c;
    c.params = ElasticParams(cfg->a, cfg->b);
    c.step = cfg->step;
    c.step_fraction = cfg->step_fraction;
    c.max_iters = cfg->max_iters;
    c.grad_tol = cfg->grad_tol;
    c.reproject_every = cfg->reproject_every;
    c.line_search = cfg->line_search != 0;
    c.trace_every = cfg->trace_every;
    *out = new elastica_report{straighten(initial->impl, c)};
  });
}

int elastica_report_status(const elastica_report* r) {
  if (!r) return ELASTICA_STRAIGHTEN_DIVERGED;
  switch (r->impl.status) {
    case StraightenStatus::Converged: return ELASTICA_STRAIGHTEN_CONVERGED;
    case StraightenStatus::MaxIters: return ELASTICA_STRAIGHTEN_MAX_ITERS;
    case StraightenStatus::Diverged: break;
  }
  return ELASTICA_STRAIGHTEN_DIVERGED;
}

long elastica_report_iterations(const elastica_report* r) {
  return r ? r->impl.iterations : 0;
}

size_t elastica_report_trace_size(const elastica_report* r) {
  return r ? r->impl.trace.size() : 0;
}

void elastica_report_trace(const elastica_report* r, long* iter_out, double* energy_out,
                           double* grad_out, double* rod_dev_out) {
  if (!r) return;
  for (size_t i = 0; i < r->impl.trace.size(); ++i) {
    if (iter_out) iter_out[i] = r->impl.trace[i].iter;
    if (energy_out) energy_out[i] = r->impl.trace[i].energy;
    if (grad_out) grad_out[i] = r->impl.trace[i].grad_norm;
    if (rod_dev_out) rod_dev_out[i] = r->impl.trace[i].rod_deviation;
  }
}

elastica_status elastica_report_final_path(const elastica_report* r, elastica_path** out) {
  if (auto s = require(r && out, "null argument")) return s;
  return guarded([&] { *out = new elastica_path{r->impl.final_path}; });
}

void elastica_report_free(elastica_report* r) { delete r; }

elastica_status elastica_auto_step(const elastica_path* p, double a, double b,
                                   double target_rel_change, double* delta_out) {
  if (auto s = require(p && delta_out, "null argument")) return s;
  return guarded(
      [&] { *delta_out = auto_step(p->impl, ElasticParams(a, b), target_rel_change); });
}

/* ---- experiments ------------------------------------------------------------ */

elastica_status elastica_landscape(size_t n, size_t nt, size_t grid_u, size_t grid_v,
                                   double a, double b, double* energies_out) {
  if (auto s = require(energies_out != nullptr, "null output array")) return s;
  return guarded([&] {
    const std::vector<double> e =
        landscape_energies(n, nt, grid_u, grid_v, ElasticParams(a, b));
    std::memcpy(energies_out, e.data(), e.size() * sizeof(double));
  });
}

elastica_status elastica_gradcheck_run(uint64_t seed, size_t n, size_t nt, double a, double b,
                                       int corrupt_xi, elastica_gradcheck** out) {
  if (auto s = require(out != nullptr, "null output handle")) return s;
  return guarded([&] {
    *out = new elastica_gradcheck{
        run_gradient_checks(seed, n, nt, ElasticParams(a, b), corrupt_xi != 0)};
  });
}

size_t elastica_gradcheck_count(const elastica_gradcheck* g) {
  return g ? g->impl.entries.size() : 0;
}

const char* elastica_gradcheck_name(const elastica_gradcheck* g, size_t i) {
  return (g && i < g->impl.entries.size()) ? g->impl.entries[i].name.c_str() : "";
}

double elastica_gradcheck_error(const elastica_gradcheck* g, size_t i) {
  return (g && i < g->impl.entries.size()) ? g->impl.entries[i].max_rel_error : 0.0;
}

double elastica_gradcheck_tolerance(const elastica_gradcheck* g, size_t i) {
  return (g && i < g->impl.entries.size()) ? g->impl.entries[i].tolerance : 0.0;
}

int elastica_gradcheck_passed(const elastica_gradcheck* g, size_t i) {
  return (g && i < g->impl.entries.size()) ? (g->impl.entries[i].passed ? 1 : 0) : 0;
}

void elastica_gradcheck_free(elastica_gradcheck* g) { delete g; }

/* ---- plot emission ----------------------------------------------------------- */

elastica_status elastica_path_write_svg(const elastica_path* p, const char* file) {
  if (auto s = require(p && file, "null argument")) return s;
  return guarded([&] { write_path_svg(p->impl, file); });
}

elastica_status elastica_gradient_write_svg(const elastica_path* p, const elastica_gradient* g,
                                            const char* file, int uniform_scale) {
  if (auto s = require(p && g && file, "null argument")) return s;
  return guarded([&] { write_gradient_svg(p->impl, g->impl, file, uniform_scale != 0); });
}

}  // extern "C"
