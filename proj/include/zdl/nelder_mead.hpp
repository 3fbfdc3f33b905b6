#pragma once

#include <functional>
#include <span>
#include <vector>

namespace zdl {

struct NelderMeadOptions {
  int max_iterations = 2000;
  // Stop when the simplex values agree to tolerance * (1 + |best|).
  double tolerance = 1e-9;
};

struct NelderMeadResult {
  std::vector<double> x;
  double value = 0.0;
  int iterations = 0;
  bool converged = false;
};

// Unconstrained derivative-free minimisation. `step` sets the initial
// simplex edge per coordinate. After convergence the search restarts once
// from the best vertex, which guards against a collapsed simplex.
NelderMeadResult nelder_mead(const std::function<double(std::span<const double>)>& objective,
                             std::vector<double> start, std::vector<double> step,
                             const NelderMeadOptions& options = {});

}  // namespace zdl
