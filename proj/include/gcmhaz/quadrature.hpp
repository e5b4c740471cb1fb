#pragma once

#include <functional>

namespace gcmhaz {

struct QuadResult {
  double value;
  double error_bound;
};

// Adaptive Gauss-Kronrod (G7/K15) bisection on [a, b] to absolute
// tolerance abs_tol.  Integrands here are smooth, so this converges fast.
QuadResult integrate(const std::function<double(double)>& f, double a, double b,
                     double abs_tol = 1e-10);

}  // namespace gcmhaz
