#include "experiments.hpp"

#include <atomic>
#include <exception>
#include <mutex>
#include <thread>

namespace elastica {

std::vector<double> grid_coords(size_t count) {
  std::vector<double> out(count);
  for (size_t i = 0; i < count; ++i)
    out[i] = (count == 1) ? 0.0 : static_cast<double>(i) / static_cast<double>(count - 1);
  return out;
}

std::vector<double> landscape_energies(size_t n, size_t nt, size_t grid_u, size_t grid_v,
                                       ElasticParams params) {
  if (grid_u < 3 || grid_v < 3)
    throw InvalidArgument("landscape grid must be at least 3x3");
  const std::vector<double> us = grid_coords(grid_u);
  const std::vector<double> vs = grid_coords(grid_v);
  const Chain circle = generate_circle(n);
  std::vector<double> energies(grid_u * grid_v, 0.0);

  std::atomic<size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto worker = [&]() {
    while (true) {
      const size_t cell = next.fetch_add(1);
      if (cell >= energies.size()) return;
      const size_t r = cell / grid_u, c = cell % grid_u;
      try {
        if (us[c] == 0.0 && vs[r] == 0.0) {
          energies[cell] = 0.0;  // constant path at the circle
          continue;
        }
        const Chain peak = generate_shape(ShapeKind::Family, us[c], vs[r], n);
        const PathOfChains path = build_bump_path(circle, peak, nt);
        energies[cell] = path_energy(path, params);
      } catch (const std::exception& e) {
        std::lock_guard<std::mutex> lock(failure_mutex);
        if (!failure)
          failure = std::make_exception_ptr(SolverError(
              "landscape cell (u=" + std::to_string(us[c]) + ", v=" + std::to_string(vs[r]) +
              "): " + e.what()));
        next.store(energies.size());
        return;
      }
    }
  };
  const size_t hw = std::max<size_t>(1, std::thread::hardware_concurrency());
  const size_t workers = std::min(hw, energies.size());
  std::vector<std::thread> pool;
  for (size_t i = 0; i < workers; ++i) pool.emplace_back(worker);
  for (std::thread& t : pool) t.join();
  if (failure) std::rethrow_exception(failure);
  return energies;
}

}  // namespace elastica
