#pragma once

#include <functional>

namespace annuli {

// Change of variables used to fold (0, +inf) onto a finite interval.
//   rational:    y = u / (1 - u),  u in (0, 1)
//   exponential: y = tan(u),       u in (0, pi/2)
enum class SemiInfiniteTransform { rational, exponential };

struct QuadratureConfig {
    double rel_tol = 1e-10;
    double abs_tol = 1e-14;
    int max_subdivisions = 2000;
    SemiInfiniteTransform semi_infinite_transform = SemiInfiniteTransform::rational;
};

struct IntegralResult {
    double value = 0.0;
    double error_estimate = 0.0;   // <= max(rel_tol*|value|, abs_tol) on success
    int subdivisions_used = 0;
};

using Integrand = std::function<double(double)>;

// Adaptive integration of f over (a, b) with an embedded 7-point Gauss /
// 15-point Kronrod pair per panel; the panel with the largest error is
// bisected until the summed error meets the tolerance. All nodes are
// interior, so integrands may blow up (integrably) at the endpoints.
// Throws NonConvergenceError when max_subdivisions is exhausted and
// DomainError when a sample is NaN or infinite.
IntegralResult integrate_interval(const Integrand& f, double a, double b,
                                  const QuadratureConfig& cfg = {});

// Integral of f over (0, +inf) via the configured transform.
IntegralResult integrate_semi_axis(const Integrand& f, const QuadratureConfig& cfg = {});

// Integral over S^{n-1} of a zonal function G(x) = g(theta):
//   omega_{n-2} * integral_0^pi g(theta) sin^{n-2}(theta) dtheta.
IntegralResult integrate_zonal(const Integrand& g, int n, const QuadratureConfig& cfg = {});

}  // namespace annuli
