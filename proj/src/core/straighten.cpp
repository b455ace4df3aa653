#include "straighten.hpp"

#include <algorithm>
#include <cmath>

namespace elastica {

void StraightenConfig::validate() const {
  if (max_iters < 1) throw InvalidArgument("straighten: max_iters must be >= 1");
  if (!(grad_tol > 0.0)) throw InvalidArgument("straighten: grad_tol must be positive");
  if (step_fraction <= 0.0)
    throw InvalidArgument("straighten: step_fraction must be positive");
  if (reproject_every < 0) throw InvalidArgument("straighten: reproject_every must be >= 0");
  if (trace_every < 1) throw InvalidArgument("straighten: trace_every must be >= 1");
  (void)params;  // ElasticParams validated on construction
}

namespace {

double max_rod_deviation(const PathOfChains& path) {
  double worst = 0.0;
  for (size_t j = 0; j < path.slice_count(); ++j)
    worst = std::max(worst, path.slice(j).rod_deviation());
  return worst;
}

// interior update: slices j = 1..nt-1 move by -delta z_j, then each slice is
// rescaled to perimeter 1 (Algorithm step: gamma <- gamma / L)
PathOfChains stepped(const PathOfChains& path, const GradientField& grad, double delta) {
  PathOfChains out = path;
  const size_t n = path.chain_size();
  for (size_t j = 1; j + 1 < path.slice_count(); ++j) {
    std::vector<Vec2> verts = path.slice(j).vertices();
    for (size_t k = 0; k < n; ++k) verts[k] -= grad.slices[j].z[k] * delta;
    Chain c(std::move(verts));
    const double per = c.perimeter();
    if (!(per > 1e-12)) throw SolverError("straighten: slice collapsed during update");
    for (Vec2& v : c.vertices()) v = v / per;
    out.set_interior_slice(j, std::move(c));
  }
  return out;
}

void reproject(PathOfChains& path) {
  for (size_t j = 1; j + 1 < path.slice_count(); ++j)
    path.set_interior_slice(j, resample_arclength(path.slice(j), path.chain_size()));
}

}  // namespace

double auto_step(const PathOfChains& path, ElasticParams params, double target_rel_change) {
  if (!(target_rel_change > 0.0))
    throw InvalidArgument("auto_step: target relative change must be positive");
  const GradientField grad = path_gradient(path, params);
  const double zmax = grad.max_displacement();
  if (!(zmax > 0.0)) throw SolverError("auto_step: gradient vanishes, already converged");
  return target_rel_change / (static_cast<double>(path.chain_size()) * zmax);
}

StraightenReport straighten(const PathOfChains& initial, const StraightenConfig& config) {
  config.validate();
  StraightenReport report;
  PathOfChains path = initial;
  const ElasticParams p = config.params;

  double energy = path_energy(path, p);
  GradientField grad = path_gradient(path, p);
  double grad_norm = grad.path_norm();
  const double initial_energy = energy;

  double delta = config.step;
  if (delta <= 0.0) {
    const double zmax = grad.max_displacement();
    delta = (zmax > 0.0)
                ? config.step_fraction / (static_cast<double>(path.chain_size()) * zmax)
                : 0.0;
  }

  long iter = 0;
  report.status = StraightenStatus::MaxIters;
  while (true) {
    if (!std::isfinite(energy) || energy > 10.0 * std::max(initial_energy, 1e-300)) {
      report.status = StraightenStatus::Diverged;
      break;
    }
    if (iter % config.trace_every == 0 || iter == config.max_iters)
      report.trace.push_back({iter, energy, grad_norm, max_rod_deviation(path)});
    if (grad_norm <= config.grad_tol) {
      report.status = StraightenStatus::Converged;
      break;
    }
    if (iter >= config.max_iters) {
      report.status = StraightenStatus::MaxIters;
      break;
    }

    bool accepted = false;
    PathOfChains next = path;
    double next_energy = energy;
    if (config.line_search) {
      double trial = delta;
      for (int halving = 0; halving < 30; ++halving) {
        try {
          next = stepped(path, grad, trial);
          next_energy = path_energy(next, p);
        } catch (const std::exception&) {
          trial *= 0.5;
          continue;
        }
        if (std::isfinite(next_energy) && next_energy < energy) {
          accepted = true;
          delta = trial * 1.5;  // let the accepted step grow again
          break;
        }
        trial *= 0.5;
      }
      if (!accepted) {
        // no decrease within 30 halvings: descent has stalled at this resolution
        report.status = StraightenStatus::MaxIters;
        break;
      }
    } else {
      try {
        next = stepped(path, grad, delta);
        next_energy = path_energy(next, p);
      } catch (const std::exception&) {
        report.status = StraightenStatus::Diverged;
        break;
      }
      accepted = true;
    }

    path = std::move(next);
    energy = next_energy;
    ++iter;
    if (config.reproject_every > 0 && iter % config.reproject_every == 0) {
      reproject(path);
      energy = path_energy(path, p);
    }
    try {
      grad = path_gradient(path, p);
      grad_norm = grad.path_norm();
    } catch (const std::exception&) {
      report.status = StraightenStatus::Diverged;
      break;
    }
    if (!std::isfinite(grad_norm)) {
      report.status = StraightenStatus::Diverged;
      break;
    }
  }

  if (report.trace.empty() || report.trace.back().iter != iter)
    report.trace.push_back({iter, energy, grad_norm, max_rod_deviation(path)});
  report.final_path = std::move(path);
  report.iterations = iter;
  report.final_energy = energy;
  report.final_grad_norm = grad_norm;
  return report;
}

}  // namespace elastica
