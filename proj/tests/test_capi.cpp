// Exercises the shared-library C interface end to end: handles, error codes,
// array accessors, file round trips. Built against include/elastica.h only.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <cstring>
#include <filesystem>
#include <random>
#include <string>
#include <vector>

#include "elastica.h"

namespace fs = std::filesystem;

namespace {

struct TempDir {
  fs::path dir;
  TempDir() {
    dir = fs::temp_directory_path() /
          ("elastica_capi_" + std::to_string(std::random_device{}()));
    fs::create_directories(dir);
  }
  ~TempDir() { fs::remove_all(dir); }
  std::string file(const std::string& name) const { return (dir / name).string(); }
};

}  // namespace

TEST_CASE("shape generation and accessors") {
  elastica_chain* c = nullptr;
  REQUIRE(elastica_shape_generate(ELASTICA_SHAPE_CIRCLE, 0, 0, 64, &c) == ELASTICA_OK);
  CHECK(elastica_chain_size(c) == 64);
  CHECK(elastica_chain_perimeter(c) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(elastica_chain_rod_deviation(c) <= 1e-12);
  CHECK(elastica_chain_eccentricity(c) <= 1e-6);
  int rot = 0;
  CHECK(elastica_chain_rotation_number(c, &rot) == ELASTICA_OK);
  CHECK(rot == 1);
  std::vector<double> xy(128);
  elastica_chain_vertices(c, xy.data());
  CHECK(std::isfinite(xy[0]));
  elastica_chain_free(c);
}

TEST_CASE("errors come back as codes with messages") {
  elastica_chain* c = nullptr;
  CHECK(elastica_shape_generate(ELASTICA_SHAPE_ELLIPSE, 1.5, 0, 64, &c) ==
        ELASTICA_ERR_INVALID_ARGUMENT);
  CHECK(std::strlen(elastica_last_error()) > 0);
  CHECK(elastica_shape_generate(99, 0, 0, 64, &c) == ELASTICA_ERR_INVALID_ARGUMENT);
  CHECK(elastica_shape_generate(ELASTICA_SHAPE_CIRCLE, 0, 0, 64, nullptr) ==
        ELASTICA_ERR_INVALID_ARGUMENT);
  CHECK(elastica_chain_load("/nonexistent/file.curve", &c) == ELASTICA_ERR_IO);
  // degenerate polygon
  const double flat[6] = {0, 0, 1e-14, 0, 0, 1e-14};
  CHECK(elastica_chain_from_polygon(flat, 3, 8, &c) == ELASTICA_ERR_DEGENERATE_INPUT);
}

TEST_CASE("polygon resampling through the C surface") {
  const double square[8] = {0, 0, 1, 0, 1, 1, 0, 1};
  elastica_chain* c = nullptr;
  REQUIRE(elastica_chain_from_polygon(square, 4, 8, &c) == ELASTICA_OK);
  CHECK(elastica_chain_size(c) == 8);
  CHECK(elastica_chain_rod_deviation(c) <= 1e-12);
  elastica_chain* finer = nullptr;
  REQUIRE(elastica_chain_resample(c, 16, &finer) == ELASTICA_OK);
  CHECK(elastica_chain_size(finer) == 16);
  elastica_chain_free(finer);
  elastica_chain_free(c);
}

TEST_CASE("path construction, energy, gradient, files") {
  TempDir tmp;
  elastica_chain* circle = nullptr;
  elastica_chain* peak = nullptr;
  REQUIRE(elastica_shape_generate(ELASTICA_SHAPE_CIRCLE, 0, 0, 48, &circle) == ELASTICA_OK);
  REQUIRE(elastica_shape_generate(ELASTICA_SHAPE_ELLIPSE, 0.7, 0, 48, &peak) == ELASTICA_OK);

  elastica_path* path = nullptr;
  REQUIRE(elastica_path_bump(circle, peak, 10, 0, &path) == ELASTICA_OK);
  CHECK(elastica_path_slice_count(path) == 11);
  CHECK(elastica_path_chain_size(path) == 48);

  double energy = 0.0;
  std::vector<double> per(11);
  REQUIRE(elastica_path_energy(path, 1.0, 1.0, &energy, per.data()) == ELASTICA_OK);
  CHECK(energy > 0.0);
  CHECK(per[3] > 0.0);  // the peak slice itself sits on the tent kink (zero speed)

  elastica_gradient* grad = nullptr;
  REQUIRE(elastica_path_gradient(path, 1.0, 1.0, &grad) == ELASTICA_OK);
  CHECK(elastica_gradient_slice_count(grad) == 11);
  CHECK(elastica_gradient_path_norm(grad) > 0.0);
  CHECK(elastica_gradient_slice_norm(grad, 0) == 0.0);
  std::vector<double> beta(48), z(96);
  elastica_gradient_beta(grad, 5, beta.data());
  elastica_gradient_z(grad, 5, z.data());
  CHECK(std::isfinite(beta[0]));
  CHECK(z[0] == 0.0);  // anchored at the base vertex
  CHECK(z[1] == 0.0);

  const std::string gfile = tmp.file("grad.txt");
  REQUIRE(elastica_gradient_save(grad, gfile.c_str()) == ELASTICA_OK);
  elastica_gradient* gback = nullptr;
  REQUIRE(elastica_gradient_load(gfile.c_str(), &gback) == ELASTICA_OK);
  std::vector<double> beta2(48);
  elastica_gradient_beta(gback, 5, beta2.data());
  CHECK(std::memcmp(beta.data(), beta2.data(), 48 * sizeof(double)) == 0);
  elastica_gradient_free(gback);

  const std::string pfile = tmp.file("path.txt");
  REQUIRE(elastica_path_save(path, pfile.c_str()) == ELASTICA_OK);
  elastica_path* pback = nullptr;
  REQUIRE(elastica_path_load(pfile.c_str(), &pback) == ELASTICA_OK);
  double e2 = 0.0;
  REQUIRE(elastica_path_energy(pback, 1.0, 1.0, &e2, nullptr) == ELASTICA_OK);
  CHECK(e2 == energy);

  const std::string svg1 = tmp.file("grad.svg");
  REQUIRE(elastica_gradient_write_svg(path, grad, svg1.c_str(), 1) == ELASTICA_OK);
  CHECK(fs::file_size(svg1) > 200);
  const std::string svg2 = tmp.file("path.svg");
  REQUIRE(elastica_path_write_svg(path, svg2.c_str()) == ELASTICA_OK);

  elastica_path_free(pback);
  elastica_gradient_free(grad);
  elastica_path_free(path);
  elastica_chain_free(peak);
  elastica_chain_free(circle);
}

TEST_CASE("straightening through the C surface") {
  elastica_chain* circle = nullptr;
  elastica_chain* peak = nullptr;
  REQUIRE(elastica_shape_generate(ELASTICA_SHAPE_CIRCLE, 0, 0, 32, &circle) == ELASTICA_OK);
  REQUIRE(elastica_shape_generate(ELASTICA_SHAPE_ELLIPSE, 0.5, 0, 32, &peak) == ELASTICA_OK);
  elastica_path* path = nullptr;
  REQUIRE(elastica_path_bump(circle, peak, 8, 0, &path) == ELASTICA_OK);

  double delta = 0.0;
  REQUIRE(elastica_auto_step(path, 1.0, 1.0, 0.05, &delta) == ELASTICA_OK);
  CHECK(delta > 0.0);

  elastica_straighten_config cfg;
  elastica_straighten_config_init(&cfg);
  cfg.max_iters = 20;
  cfg.trace_every = 5;
  elastica_report* report = nullptr;
  REQUIRE(elastica_straighten(path, &cfg, &report) == ELASTICA_OK);
  const size_t rows = elastica_report_trace_size(report);
  REQUIRE(rows >= 2);
  std::vector<long> iters(rows);
  std::vector<double> e(rows), g(rows), rd(rows);
  elastica_report_trace(report, iters.data(), e.data(), g.data(), rd.data());
  CHECK(e.back() < e.front());
  elastica_path* final_path = nullptr;
  REQUIRE(elastica_report_final_path(report, &final_path) == ELASTICA_OK);
  CHECK(elastica_path_slice_count(final_path) == 9);
  elastica_path_free(final_path);
  elastica_report_free(report);
  elastica_path_free(path);
  elastica_chain_free(peak);
  elastica_chain_free(circle);
}

TEST_CASE("landscape and gradcheck through the C surface") {
  std::vector<double> grid(9);
  REQUIRE(elastica_landscape(32, 8, 3, 3, 1.0, 1.0, grid.data()) == ELASTICA_OK);
  CHECK(grid[0] == 0.0);
  CHECK(grid[8] > 0.0);

  elastica_gradcheck* gc = nullptr;
  REQUIRE(elastica_gradcheck_run(7, 32, 12, 1.0, 1.0, 0, &gc) == ELASTICA_OK);
  REQUIRE(elastica_gradcheck_count(gc) == 5);
  for (size_t i = 0; i < 5; ++i) {
    CHECK(elastica_gradcheck_passed(gc, i) == 1);
    CHECK(std::strlen(elastica_gradcheck_name(gc, i)) > 0);
    CHECK(elastica_gradcheck_error(gc, i) <= elastica_gradcheck_tolerance(gc, i));
  }
  elastica_gradcheck_free(gc);

  // negative control
  elastica_gradcheck* bad = nullptr;
  REQUIRE(elastica_gradcheck_run(7, 32, 12, 1.0, 1.0, 1, &bad) == ELASTICA_OK);
  bool failed_one = false;
  for (size_t i = 0; i < elastica_gradcheck_count(bad); ++i)
    if (!elastica_gradcheck_passed(bad, i)) failed_one = true;
  CHECK(failed_one);
  elastica_gradcheck_free(bad);
}
