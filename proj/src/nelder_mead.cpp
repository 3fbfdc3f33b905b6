#include "zdl/nelder_mead.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "zdl/errors.hpp"

namespace zdl {
namespace {

struct Vertex {
  std::vector<double> x;
  double f;
};

double evaluate(const std::function<double(std::span<const double>)>& objective, std::span<const double> x) {
  const double f = objective(x);
  return std::isnan(f) ? std::numeric_limits<double>::infinity() : f;
}

// One descent from `start`; returns iterations used.
int descend(const std::function<double(std::span<const double>)>& objective, std::vector<Vertex>& simplex,
            int budget, double tolerance, bool& converged) {
  const std::size_t dim = simplex.size() - 1;
  auto by_value = [](const Vertex& a, const Vertex& b) { return a.f < b.f; };
  std::vector<double> centroid(dim), trial(dim);

  auto point_along = [&](double coeff, const Vertex& worst) {
    for (std::size_t j = 0; j < dim; ++j) trial[j] = centroid[j] + coeff * (worst.x[j] - centroid[j]);
    return evaluate(objective, trial);
  };

  converged = false;
  int iter = 0;
  for (; iter < budget; ++iter) {
    std::sort(simplex.begin(), simplex.end(), by_value);
    const double best = simplex.front().f;
    const double worst_f = simplex.back().f;
    if (std::isfinite(worst_f) && worst_f - best <= tolerance * (1.0 + std::abs(best))) {
      converged = true;
      break;
    }

    std::fill(centroid.begin(), centroid.end(), 0.0);
    for (std::size_t v = 0; v < dim; ++v)
      for (std::size_t j = 0; j < dim; ++j) centroid[j] += simplex[v].x[j] / static_cast<double>(dim);

    Vertex& worst = simplex.back();
    const double reflected = point_along(-1.0, worst);
    if (reflected < simplex.front().f) {
      std::vector<double> reflected_x = trial;
      const double expanded = point_along(-2.0, worst);
      if (expanded < reflected) {
        worst = {trial, expanded};
      } else {
        worst = {std::move(reflected_x), reflected};
      }
    } else if (reflected < simplex[dim - 1].f) {
      worst = {trial, reflected};
    } else {
      const bool outside = reflected < worst.f;
      const double contracted = point_along(outside ? -0.5 : 0.5, worst);
      if (contracted < std::min(reflected, worst.f)) {
        worst = {trial, contracted};
      } else {
        for (std::size_t v = 1; v <= dim; ++v) {
          for (std::size_t j = 0; j < dim; ++j)
            simplex[v].x[j] = simplex[0].x[j] + 0.5 * (simplex[v].x[j] - simplex[0].x[j]);
          simplex[v].f = evaluate(objective, simplex[v].x);
        }
      }
    }
  }
  std::sort(simplex.begin(), simplex.end(), by_value);
  return iter;
}

std::vector<Vertex> initial_simplex(const std::function<double(std::span<const double>)>& objective,
                                    const std::vector<double>& start, const std::vector<double>& step) {
  std::vector<Vertex> simplex;
  simplex.push_back({start, evaluate(objective, start)});
  for (std::size_t j = 0; j < start.size(); ++j) {
    Vertex v{start, 0.0};
    v.x[j] += step[j];
    v.f = evaluate(objective, v.x);
    simplex.push_back(std::move(v));
  }
  return simplex;
}

}  // namespace

NelderMeadResult nelder_mead(const std::function<double(std::span<const double>)>& objective,
                             std::vector<double> start, std::vector<double> step, const NelderMeadOptions& options) {
  if (start.empty() || start.size() != step.size()) throw ParameterError("nelder_mead needs matching start and step");
  if (options.max_iterations <= 0) throw ParameterError("max_iterations must be positive");

  NelderMeadResult result;
  auto simplex = initial_simplex(objective, start, step);
  bool converged = false;
  result.iterations = descend(objective, simplex, options.max_iterations, options.tolerance, converged);

  if (converged && result.iterations < options.max_iterations) {
    // Restart with a fresh simplex a tenth the original size.
    std::vector<double> small(step.size());
    std::transform(step.begin(), step.end(), small.begin(), [](double s) { return 0.1 * s; });
    auto restart = initial_simplex(objective, simplex.front().x, small);
    result.iterations +=
        descend(objective, restart, options.max_iterations - result.iterations, options.tolerance, converged);
    if (restart.front().f <= simplex.front().f) simplex = std::move(restart);
  }

  result.x = simplex.front().x;
  result.value = simplex.front().f;
  result.converged = converged;
  return result;
}

}  // namespace zdl
