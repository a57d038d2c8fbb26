#include "annuli/quadrature.hpp"

#include <cmath>
#include <cstddef>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <string>
#include <vector>

#include "annuli/errors.hpp"
#include "annuli/geometry.hpp"

namespace annuli {

namespace {

// 15-point Kronrod abscissae (positive half, descending) and weights,
// with the embedded 7-point Gauss weights sitting on the even-indexed
// abscissae.
constexpr double kXgk[8] = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144838258730, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};

constexpr double kWgk[8] = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};

constexpr double kWg[4] = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Panel {
    double a, b;
    double value;
    double err;
};

double sample(const Integrand& f, double x) {
    double y = f(x);
    if (!std::isfinite(y))
        throw DomainError("integrand returned a non-finite value at x = " + std::to_string(x), x);
    return y;
}

Panel evaluate_panel(const Integrand& f, double a, double b) {
    const double c = 0.5 * (a + b);
    const double h = 0.5 * (b - a);

    double fc = sample(f, c);
    double kronrod = kWgk[7] * fc;
    double gauss = kWg[3] * fc;
    for (int i = 0; i < 7; ++i) {
        double dx = h * kXgk[i];
        double fsum = sample(f, c - dx) + sample(f, c + dx);
        kronrod += kWgk[i] * fsum;
        if (i % 2 == 1) gauss += kWg[i / 2] * fsum;
    }
    kronrod *= h;
    gauss *= h;
    return {a, b, kronrod, std::abs(kronrod - gauss)};
}

// Neumaier-compensated sum, index order fixed for determinism.
double compensated_sum(const std::vector<Panel>& panels, double Panel::* field) {
    double sum = 0.0, comp = 0.0;
    for (const Panel& p : panels) {
        double x = p.*field;
        double t = sum + x;
        if (std::abs(sum) >= std::abs(x))
            comp += (sum - t) + x;
        else
            comp += (x - t) + sum;
        sum = t;
    }
    return sum + comp;
}

void validate_config(const QuadratureConfig& cfg) {
    if (!(cfg.rel_tol > 0.0) || !(cfg.abs_tol > 0.0))
        throw std::invalid_argument("quadrature tolerances must be positive");
    if (cfg.max_subdivisions < 1)
        throw std::invalid_argument("max_subdivisions must be >= 1");
}

}  // namespace

IntegralResult integrate_interval(const Integrand& f, double a, double b,
                                  const QuadratureConfig& cfg) {
    validate_config(cfg);
    if (!std::isfinite(a) || !std::isfinite(b) || !(a < b))
        throw std::invalid_argument("integrate_interval requires finite bounds with a < b");

    std::vector<Panel> panels;
    panels.reserve(64);
    panels.push_back(evaluate_panel(f, a, b));

    int subdivisions = 0;
    for (;;) {
        double total = compensated_sum(panels, &Panel::value);
        double total_err = compensated_sum(panels, &Panel::err);
        double tol = std::max(cfg.rel_tol * std::abs(total), cfg.abs_tol);
        if (total_err <= tol)
            return {total, total_err, subdivisions};
        if (subdivisions >= cfg.max_subdivisions)
            throw NonConvergenceError(
                "integrate_interval: " + std::to_string(cfg.max_subdivisions) +
                    " subdivisions exhausted (best estimate " + std::to_string(total) +
                    ", error estimate " + std::to_string(total_err) + ")",
                total, total_err);

        // Split the worst splittable panel; first index wins ties.
        std::size_t worst = panels.size();
        double worst_err = -1.0;
        for (std::size_t i = 0; i < panels.size(); ++i) {
            double mid = 0.5 * (panels[i].a + panels[i].b);
            bool splittable = mid > panels[i].a && mid < panels[i].b;
            if (splittable && panels[i].err > worst_err) {
                worst_err = panels[i].err;
                worst = i;
            }
        }
        if (worst == panels.size())
            throw NonConvergenceError(
                "integrate_interval: tolerance unreachable, no panel can be split further",
                total, total_err);

        double pa = panels[worst].a, pb = panels[worst].b;
        double mid = 0.5 * (pa + pb);
        panels[worst] = evaluate_panel(f, pa, mid);
        panels.insert(panels.begin() + static_cast<std::ptrdiff_t>(worst) + 1,
                      evaluate_panel(f, mid, pb));
        ++subdivisions;
    }
}

IntegralResult integrate_semi_axis(const Integrand& f, const QuadratureConfig& cfg) {
    switch (cfg.semi_infinite_transform) {
        case SemiInfiniteTransform::rational: {
            auto g = [&f](double u) {
                double om = 1.0 - u;
                return f(u / om) / (om * om);
            };
            return integrate_interval(g, 0.0, 1.0, cfg);
        }
        case SemiInfiniteTransform::exponential: {
            auto g = [&f](double u) {
                double y = std::tan(u);
                return f(y) * (1.0 + y * y);
            };
            return integrate_interval(g, 0.0, 0.5 * std::numbers::pi, cfg);
        }
    }
    throw std::invalid_argument("unknown semi-infinite transform");
}

IntegralResult integrate_zonal(const Integrand& g, int n, const QuadratureConfig& cfg) {
    if (n < 3 || n > kMaxDimension)
        throw std::invalid_argument("integrate_zonal requires 3 <= n <= " +
                                    std::to_string(kMaxDimension));
    double prefactor = unit_sphere_measure(n - 1);  // omega_{n-2}
    auto f = [&g, n](double theta) {
        return g(theta) * std::pow(std::sin(theta), n - 2);
    };
    IntegralResult res = integrate_interval(f, 0.0, std::numbers::pi, cfg);
    return {prefactor * res.value, prefactor * res.error_estimate, res.subdivisions_used};
}

}  // namespace annuli
