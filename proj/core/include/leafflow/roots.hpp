#pragma once

#include <functional>
#include <vector>

namespace leafflow {

struct RootOptions {
  int grid_points = 10001;
  double bisect_tol = 1e-12;
};

// Sign-change bracketing on a uniform grid, bisection to tolerance and a
// single Newton polish step (derivative supplied by the caller).
std::vector<double> bracketed_roots(const std::function<double(double)>& f,
                                    const std::function<double(double)>& df,
                                    double a, double b,
                                    const RootOptions& opts = {});

// Even-multiplicity zeros leave no sign change; they are recovered as the
// critical points of f where f itself (nearly) vanishes.
std::vector<double> tangent_roots(const std::function<double(double)>& f,
                                  const std::function<double(double)>& df,
                                  double a, double b, double f_tol,
                                  const RootOptions& opts = {});

}  // namespace leafflow
