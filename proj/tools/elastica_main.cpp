// elastica command line tool. Links the shared C API only.

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <memory>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "elastica.h"

namespace fs = std::filesystem;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitNumerical = 2;

struct Failure {
  int code;
  std::string message;
};

void check(elastica_status s, const std::string& what) {
  if (s == ELASTICA_OK) return;
  const int code = (s == ELASTICA_ERR_INVALID_ARGUMENT) ? kExitUsage : kExitNumerical;
  throw Failure{code, what + ": " + elastica_last_error()};
}

// outputs must never overwrite inputs
void guard_overwrite(const std::vector<std::string>& inputs, const std::string& output) {
  if (output.empty()) return;
  std::error_code ec;
  for (const std::string& in : inputs) {
    if (!in.empty() && fs::exists(output, ec) && fs::equivalent(in, output, ec))
      throw Failure{kExitUsage, "output '" + output + "' would overwrite input '" + in + "'"};
  }
}

using ChainPtr = std::unique_ptr<elastica_chain, decltype(&elastica_chain_free)>;
using PathPtr = std::unique_ptr<elastica_path, decltype(&elastica_path_free)>;
using GradPtr = std::unique_ptr<elastica_gradient, decltype(&elastica_gradient_free)>;
using ReportPtr = std::unique_ptr<elastica_report, decltype(&elastica_report_free)>;

ChainPtr load_chain(const std::string& file) {
  elastica_chain* c = nullptr;
  check(elastica_chain_load(file.c_str(), &c), "loading " + file);
  return ChainPtr(c, elastica_chain_free);
}

PathPtr load_path_file(const std::string& file) {
  elastica_path* p = nullptr;
  check(elastica_path_load(file.c_str(), &p), "loading " + file);
  return PathPtr(p, elastica_path_free);
}

// ---- generate --------------------------------------------------------------

int cmd_generate(const std::string& shape, double e, double p, double u, double v,
                 const std::string& in, size_t n, const std::string& out) {
  guard_overwrite({in}, out);
  elastica_chain* chain = nullptr;
  if (shape == "circle") {
    check(elastica_shape_generate(ELASTICA_SHAPE_CIRCLE, 0, 0, n, &chain), "generate circle");
  } else if (shape == "ellipse") {
    check(elastica_shape_generate(ELASTICA_SHAPE_ELLIPSE, e, 0, n, &chain),
          "generate ellipse");
  } else if (shape == "superellipse") {
    check(elastica_shape_generate(ELASTICA_SHAPE_SUPERELLIPSE, p, 0, n, &chain),
          "generate superellipse");
  } else if (shape == "family") {
    check(elastica_shape_generate(ELASTICA_SHAPE_FAMILY, u, v, n, &chain), "generate family");
  } else if (shape == "file") {
    if (in.empty()) throw Failure{kExitUsage, "generate file: --in is required"};
    ChainPtr loaded = load_chain(in);
    check(elastica_chain_resample(loaded.get(), n, &chain), "resampling " + in);
  } else {
    throw Failure{kExitUsage, "unknown shape '" + shape + "'"};
  }
  ChainPtr holder(chain, elastica_chain_free);
  if (out.empty()) {
    const size_t m = elastica_chain_size(chain);
    std::vector<double> xy(2 * m);
    elastica_chain_vertices(chain, xy.data());
    for (size_t k = 0; k < m; ++k) std::printf("%.17g,%.17g\n", xy[2 * k], xy[2 * k + 1]);
  } else {
    check(elastica_chain_save(chain, out.c_str()), "writing " + out);
    std::printf("wrote %s (%zu vertices, rod deviation %.3g)\n", out.c_str(),
                elastica_chain_size(chain), elastica_chain_rod_deviation(chain));
  }
  return kExitOk;
}

// ---- interp ----------------------------------------------------------------

int cmd_interp(const std::string& from, const std::string& to, const std::string& via,
               size_t nt, bool no_resample, const std::string& profile, double a, double b,
               const std::string& out) {
  guard_overwrite({from, to, via}, out);
  if (out.empty()) throw Failure{kExitUsage, "interp: --out is required"};
  ChainPtr ca = load_chain(from);
  ChainPtr cb = load_chain(to);
  elastica_path* path = nullptr;
  if (!via.empty()) {
    ChainPtr cv = load_chain(via);
    const int prof = (profile == "sin2") ? 1 : 0;
    check(elastica_path_bump(ca.get(), cv.get(), nt, prof, &path), "building bump path");
  } else {
    check(elastica_path_linear(ca.get(), cb.get(), nt, no_resample ? 0 : 1, &path),
          "building linear path");
  }
  PathPtr holder(path, elastica_path_free);
  elastica_path_set_params(path, a, b);
  check(elastica_path_save(path, out.c_str()), "writing " + out);
  std::printf("wrote %s (%zu slices of %zu vertices)\n", out.c_str(),
              elastica_path_slice_count(path), elastica_path_chain_size(path));
  return kExitOk;
}

// ---- energy ----------------------------------------------------------------

int cmd_energy(const std::string& file, double a, double b, bool use_flags) {
  PathPtr path = load_path_file(file);
  if (!use_flags) elastica_path_params(path.get(), &a, &b);
  const size_t slices = elastica_path_slice_count(path.get());
  std::vector<double> per(slices);
  double energy = 0.0;
  check(elastica_path_energy(path.get(), a, b, &energy, per.data()), "energy");
  std::printf("E = %.17g   (a = %g, b = %g)\n", energy, a, b);
  const size_t nt = slices - 1;
  for (size_t j = 0; j < slices; ++j)
    std::printf("  t = %-8.5g integrand = %.17g\n",
                static_cast<double>(j) / static_cast<double>(nt), per[j]);
  return kExitOk;
}

// ---- gradient ----------------------------------------------------------------

int cmd_gradient(const std::string& file, double a, double b, bool use_flags,
                 const std::string& out, const std::string& svg, bool per_slice_scale) {
  guard_overwrite({file}, out);
  guard_overwrite({file}, svg);
  PathPtr path = load_path_file(file);
  if (!use_flags) elastica_path_params(path.get(), &a, &b);
  elastica_gradient* grad = nullptr;
  check(elastica_path_gradient(path.get(), a, b, &grad), "gradient");
  GradPtr holder(grad, elastica_gradient_free);
  std::printf("path gradient norm = %.17g   (a = %g, b = %g)\n",
              elastica_gradient_path_norm(grad), a, b);
  for (size_t j = 0; j < elastica_gradient_slice_count(grad); ++j)
    std::printf("  slice %-3zu |grad| = %.10g\n", j, elastica_gradient_slice_norm(grad, j));
  if (!out.empty()) {
    check(elastica_gradient_save(grad, out.c_str()), "writing " + out);
    std::printf("wrote %s\n", out.c_str());
  }
  if (!svg.empty()) {
    check(elastica_gradient_write_svg(path.get(), grad, svg.c_str(), per_slice_scale ? 0 : 1),
          "writing " + svg);
    std::printf("wrote %s\n", svg.c_str());
  }
  return kExitOk;
}

// ---- straighten -----------------------------------------------------------------

int cmd_straighten(const std::string& file, double a, double b, bool use_flags, double delta,
                   long max_iters, double tol, long reproject_every, bool line_search,
                   long trace_every, long snapshot_every, const std::string& out_dir) {
  PathPtr path = load_path_file(file);
  if (!use_flags) elastica_path_params(path.get(), &a, &b);

  elastica_straighten_config cfg;
  elastica_straighten_config_init(&cfg);
  cfg.a = a;
  cfg.b = b;
  cfg.step = delta;
  cfg.max_iters = max_iters;
  cfg.grad_tol = tol;
  cfg.reproject_every = reproject_every;
  cfg.line_search = line_search ? 1 : 0;
  cfg.trace_every = trace_every;

  elastica_report* report = nullptr;
  check(elastica_straighten(path.get(), &cfg, &report), "straighten");
  ReportPtr holder(report, elastica_report_free);

  const char* status = "max-iters";
  switch (elastica_report_status(report)) {
    case ELASTICA_STRAIGHTEN_CONVERGED: status = "converged"; break;
    case ELASTICA_STRAIGHTEN_DIVERGED: status = "diverged"; break;
    default: break;
  }
  const size_t rows = elastica_report_trace_size(report);
  std::vector<long> iters(rows);
  std::vector<double> energy(rows), gnorm(rows), roddev(rows);
  elastica_report_trace(report, iters.data(), energy.data(), gnorm.data(), roddev.data());
  std::printf("status: %s after %ld iterations\n", status,
              elastica_report_iterations(report));
  if (rows > 0)
    std::printf("energy: %.10g -> %.10g   gradient norm: %.4g -> %.4g\n", energy.front(),
                energy.back(), gnorm.front(), gnorm.back());

  if (!out_dir.empty()) {
    fs::create_directories(out_dir);
    elastica_path* final_path = nullptr;
    check(elastica_report_final_path(report, &final_path), "final path");
    PathPtr fp(final_path, elastica_path_free);
    const std::string path_file = (fs::path(out_dir) / "final_path.txt").string();
    guard_overwrite({file}, path_file);
    check(elastica_path_save(final_path, path_file.c_str()), "writing " + path_file);

    const std::string trace_file = (fs::path(out_dir) / "energy_trace.csv").string();
    std::ofstream trace(trace_file);
    trace << "iter,E\n";
    for (size_t i = 0; i < rows; ++i)
      trace << iters[i] << ',' << std::scientific << energy[i] << '\n';

    const std::string svg_file = (fs::path(out_dir) / "final_path.svg").string();
    check(elastica_path_write_svg(final_path, svg_file.c_str()), "writing " + svg_file);
    std::printf("wrote %s, %s, %s\n", path_file.c_str(), trace_file.c_str(),
                svg_file.c_str());
    if (snapshot_every > 0)
      std::printf("note: snapshots are sampled from the trace every %ld iterations\n",
                  snapshot_every);
  }
  return kExitOk;
}

// ---- landscape --------------------------------------------------------------------

int cmd_landscape(size_t n, size_t nt, size_t grid_u, size_t grid_v, double a, double b,
                  const std::string& out) {
  std::vector<double> energies(grid_u * grid_v);
  check(elastica_landscape(n, nt, grid_u, grid_v, a, b, energies.data()), "landscape");
  auto coord = [](size_t i, size_t count) {
    return count == 1 ? 0.0 : static_cast<double>(i) / static_cast<double>(count - 1);
  };
  std::string csv = "uv";
  char buf[64];
  for (size_t c = 0; c < grid_u; ++c) {
    std::snprintf(buf, sizeof buf, ",%.17g", coord(c, grid_u));
    csv += buf;
  }
  csv += '\n';
  for (size_t r = 0; r < grid_v; ++r) {
    std::snprintf(buf, sizeof buf, "%.17g", coord(r, grid_v));
    csv += buf;
    for (size_t c = 0; c < grid_u; ++c) {
      std::snprintf(buf, sizeof buf, ",%.17g", energies[r * grid_u + c]);
      csv += buf;
    }
    csv += '\n';
  }
  if (out.empty()) {
    std::fputs(csv.c_str(), stdout);
  } else {
    std::ofstream f(out);
    if (!f) throw Failure{kExitNumerical, "cannot write " + out};
    f << csv;
    std::printf("wrote %s (%zux%zu grid)\n", out.c_str(), grid_u, grid_v);
  }
  return kExitOk;
}

// ---- gradcheck ---------------------------------------------------------------------

int cmd_gradcheck(uint64_t seed, size_t n, size_t nt, double a, double b, bool corrupt_xi) {
  elastica_gradcheck* gc = nullptr;
  check(elastica_gradcheck_run(seed, n, nt, a, b, corrupt_xi ? 1 : 0, &gc), "gradcheck");
  std::unique_ptr<elastica_gradcheck, decltype(&elastica_gradcheck_free)> holder(
      gc, elastica_gradcheck_free);
  bool all = true;
  double worst = 0.0;
  for (size_t i = 0; i < elastica_gradcheck_count(gc); ++i) {
    const bool ok = elastica_gradcheck_passed(gc, i) != 0;
    all = all && ok;
    worst = std::max(worst, elastica_gradcheck_error(gc, i));
    std::printf("%-28s %s   max rel error %.3g (tol %.1g)\n", elastica_gradcheck_name(gc, i),
                ok ? "PASS" : "FAIL", elastica_gradcheck_error(gc, i),
                elastica_gradcheck_tolerance(gc, i));
  }
  std::printf("%s (worst relative error %.3g)\n", all ? "all checks passed" : "CHECKS FAILED",
              worst);
  return all ? kExitOk : kExitNumerical;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"geodesics between closed planar shapes under elastic metrics"};
  app.require_subcommand(1);

  // generate
  auto* gen = app.add_subcommand("generate", "generate a shape as a curve file");
  std::string gen_shape, gen_in, gen_out;
  double gen_e = 0.8, gen_p = 4.0, gen_u = 0.0, gen_v = 0.0;
  size_t gen_n = 100;
  gen->add_option("shape", gen_shape, "circle|ellipse|superellipse|family|file")->required();
  gen->add_option("--e", gen_e, "ellipse eccentricity in [0,1)");
  gen->add_option("--p", gen_p, "superellipse exponent >= 2");
  gen->add_option("--u", gen_u, "family stretch coordinate in [0,1]");
  gen->add_option("--v", gen_v, "family bend coordinate in [0,1]");
  gen->add_option("--in", gen_in, "input curve file (shape = file)");
  gen->add_option("--n", gen_n, "vertex count");
  gen->add_option("--out", gen_out, "output curve file (stdout when omitted)");

  // interp
  auto* interp = app.add_subcommand("interp", "build an initial path between two curves");
  std::string in_from, in_to, in_via, in_profile = "tent", in_out;
  size_t in_nt = 20;
  bool in_no_resample = false;
  double in_a = 1.0, in_b = 1.0;
  interp->add_option("from", in_from, "start curve file")->required();
  interp->add_option("to", in_to, "end curve file")->required();
  interp->add_option("--via", in_via, "peak curve: build a bump path through it");
  interp->add_option("--nt", in_nt, "number of time steps");
  interp->add_flag("--no-resample", in_no_resample, "skip per-slice resampling");
  interp->add_option("--profile", in_profile, "bump profile: tent|sin2");
  interp->add_option("--a", in_a, "stretch weight stored in the manifest");
  interp->add_option("--b", in_b, "bend weight stored in the manifest");
  interp->add_option("--out", in_out, "output path file")->required();

  // energy
  auto* energy = app.add_subcommand("energy", "print the path energy");
  std::string en_file;
  double en_a = 1.0, en_b = 1.0;
  energy->add_option("path", en_file, "path file")->required();
  auto* en_a_opt = energy->add_option("--a", en_a, "stretch weight");
  auto* en_b_opt = energy->add_option("--b", en_b, "bend weight");

  // gradient
  auto* gradient = app.add_subcommand("gradient", "compute and dump the energy gradient");
  std::string gr_file, gr_out, gr_svg;
  double gr_a = 1.0, gr_b = 1.0;
  bool gr_per_slice = false;
  gradient->add_option("path", gr_file, "path file")->required();
  auto* gr_a_opt = gradient->add_option("--a", gr_a, "stretch weight");
  auto* gr_b_opt = gradient->add_option("--b", gr_b, "bend weight");
  gradient->add_option("--out", gr_out, "gradient dump file");
  gradient->add_option("--svg", gr_svg, "negative-gradient arrow plot");
  gradient->add_flag("--per-slice-scale", gr_per_slice,
                     "normalize arrows per slice instead of one shared scale");

  // straighten
  auto* str = app.add_subcommand("straighten", "run path straightening");
  std::string st_file, st_out;
  double st_a = 1.0, st_b = 1.0, st_delta = 0.0, st_tol = 1e-3;
  long st_iters = 1000, st_reproject = 50, st_trace = 1, st_snapshot = 0;
  bool st_line_search = false, st_fixed_delta = false;
  str->add_option("path", st_file, "initial path file")->required();
  auto* st_a_opt = str->add_option("--a", st_a, "stretch weight");
  auto* st_b_opt = str->add_option("--b", st_b, "bend weight");
  auto* st_d_opt = str->add_option("--delta", st_delta, "fixed descent step (default 1e-9)");
  str->add_option("--max-iters", st_iters, "iteration budget");
  str->add_option("--tol", st_tol, "gradient norm tolerance");
  str->add_option("--reproject-every", st_reproject, "re-resample slices every k iterations");
  str->add_flag("--line-search", st_line_search, "backtracking line search");
  str->add_flag("--fixed-delta", st_fixed_delta, "use the paper step 1e-9 unless --delta");
  str->add_option("--trace-every", st_trace, "record the trace every k iterations");
  str->add_option("--snapshot-every", st_snapshot, "note snapshots every k iterations");
  str->add_option("--out", st_out, "output directory");

  // landscape
  auto* land = app.add_subcommand("landscape", "energy grid over the shape family");
  size_t la_n = 100, la_nt = 20, la_gu = 5, la_gv = 5;
  double la_a = 1.0, la_b = 1.0;
  std::string la_out;
  land->add_option("--n", la_n, "vertex count");
  land->add_option("--nt", la_nt, "time steps");
  land->add_option("--grid-u", la_gu, "grid points in the stretch direction");
  land->add_option("--grid-v", la_gv, "grid points in the bend direction");
  land->add_option("--a", la_a, "stretch weight");
  land->add_option("--b", la_b, "bend weight");
  land->add_option("--out", la_out, "output CSV (stdout when omitted)");

  // gradcheck
  auto* gch = app.add_subcommand("gradcheck", "finite-difference checks of the gradient");
  uint64_t gc_seed = 1;
  size_t gc_n = 60, gc_nt = 16;
  double gc_a = 1.0, gc_b = 1.0;
  bool gc_corrupt = false;
  gch->add_option("--seed", gc_seed, "random seed");
  gch->add_option("--n", gc_n, "vertex count");
  gch->add_option("--nt", gc_nt, "time steps");
  gch->add_option("--a", gc_a, "stretch weight");
  gch->add_option("--b", gc_b, "bend weight");
  gch->add_flag("--corrupt-xi", gc_corrupt, "negative control: inject an error into xi");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return (e.get_exit_code() == 0) ? kExitOk : kExitUsage;
  }

  try {
    if (gen->parsed())
      return cmd_generate(gen_shape, gen_e, gen_p, gen_u, gen_v, gen_in, gen_n, gen_out);
    if (interp->parsed())
      return cmd_interp(in_from, in_to, in_via, in_nt, in_no_resample, in_profile, in_a, in_b,
                        in_out);
    if (energy->parsed())
      return cmd_energy(en_file, en_a, en_b, en_a_opt->count() || en_b_opt->count());
    if (gradient->parsed())
      return cmd_gradient(gr_file, gr_a, gr_b, gr_a_opt->count() || gr_b_opt->count(), gr_out,
                          gr_svg, gr_per_slice);
    if (str->parsed()) {
      if (st_fixed_delta && !st_d_opt->count()) st_delta = 1e-9;
      return cmd_straighten(st_file, st_a, st_b, st_a_opt->count() || st_b_opt->count(),
                            st_delta, st_iters, st_tol, st_reproject, st_line_search,
                            st_trace, st_snapshot, st_out);
    }
    if (land->parsed()) return cmd_landscape(la_n, la_nt, la_gu, la_gv, la_a, la_b, la_out);
    if (gch->parsed()) return cmd_gradcheck(gc_seed, gc_n, gc_nt, gc_a, gc_b, gc_corrupt);
  } catch (const Failure& f) {
    std::fprintf(stderr, "error: %s\n", f.message.c_str());
    return f.code;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitNumerical;
  }
  return kExitUsage;
}
