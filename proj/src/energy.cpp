#include "annuli/energy.hpp"

#include "annuli/format.hpp"

#include <cmath>
#include <stdexcept>

namespace annuli {

namespace {

constexpr double kLambdaRefuse = 1e-6;
constexpr double kLambdaTighten = 1e-3;

void check_matching(const Annulus& domain, const Annulus& target) {
    if (domain.n != target.n)
        throw std::invalid_argument("domain and target annuli must share the dimension n");
}

ReportMeta make_meta(const RadialProfile& p, double lambda, double a = 1.0, double b = 1.0) {
    return ReportMeta{p.domain.n, p.domain.inner, p.domain.outer,
                      p.target.inner, p.target.outer, lambda, p.tag, a, b};
}

}  // namespace

std::string energy_csv_header() {
    return "n,r,R,r_star,R_star,lambda,profile,a,b,energy,bound,relative_gap,quad_error";
}

std::string energy_csv_row(const EnergyReport& rep) {
    const ReportMeta& m = rep.meta;
    std::string row = std::to_string(m.n);
    for (double v : {m.r, m.R, m.r_star, m.R_star, m.lambda}) row += "," + fmt17(v);
    row += "," + m.profile;
    for (double v : {m.a, m.b, rep.energy, rep.bound, rep.relative_gap, rep.quadrature_error})
        row += "," + fmt17(v);
    return row;
}

SphereEnergy sphere_conformal_energy(double lambda, int n, const QuadratureConfig& cfg) {
    if (!(lambda > 0.0)) throw std::invalid_argument("lambda must be positive");
    auto g = [lambda, n](double theta) {
        return std::pow(conformal_gradient_norm_sq(theta, lambda, n), 0.5 * (n - 1));
    };
    IntegralResult res = integrate_zonal(g, n, cfg);
    double closed = std::pow(n - 1.0, 0.5 * (n - 1)) * unit_sphere_measure(n);
    return {res.value, closed, res.error_estimate};
}

EnergyReport quasiradial_energy(const SeparableMap& map, const QuadratureConfig& cfg) {
    const RadialProfile& p = map.profile;
    const int n = p.domain.n;
    const double lambda = map.lambda;
    if (!(lambda > 0.0)) throw std::invalid_argument("lambda must be positive");
    if (lambda < kLambdaRefuse)
        throw std::domain_error(
            "quasiradial_energy: lambda < 1e-6 is outside the evaluable range; "
            "the lambda -> 0 value is limit_energy");

    QuadratureConfig outer_cfg = cfg;
    if (lambda < kLambdaTighten) outer_cfg.rel_tol *= 1e-2;
    QuadratureConfig inner_cfg = outer_cfg;
    inner_cfg.rel_tol *= 0.1;
    inner_cfg.abs_tol *= 0.1;

    const double lam2 = lambda * lambda;
    double worst_inner_err = 0.0;
    auto outer_f = [&](double t) {
        double w = p.log_derivative(t);
        double w2 = w * w;
        auto inner_f = [&](double y) {
            double y2 = y * y;
            double u = lambda * (1.0 + y2) / (1.0 + lam2 * y2);
            double core = std::pow(w2 + (n - 1) * u * u, 0.5 * (n - 1));
            return core * std::pow(y, n - 2) / std::pow(1.0 + y2, n - 1);
        };
        IntegralResult inner = integrate_semi_axis(inner_f, inner_cfg);
        worst_inner_err = std::max(worst_inner_err, inner.error_estimate);
        return inner.value;
    };

    IntegralResult outer = integrate_interval(outer_f, p.domain.inner, p.domain.outer, outer_cfg);
    double prefactor = std::pow(2.0, n - 1) * unit_sphere_measure(n - 1);
    double energy = prefactor * outer.value;
    double quad_error =
        prefactor * (outer.error_estimate + p.domain.width() * worst_inner_err);
    double bound = dirichlet_infimum(p.domain, p.target);

    return {energy, bound, (energy - bound) / bound, quad_error, make_meta(p, lambda)};
}

EnergyReport radial_energy(const RadialProfile& profile, const QuadratureConfig& cfg) {
    const int n = profile.domain.n;
    auto f = [&profile, n](double t) {
        double w = profile.log_derivative(t);
        return std::pow(n - 1.0 + w * w, 0.5 * (n - 1));
    };
    IntegralResult res =
        integrate_interval(f, profile.domain.inner, profile.domain.outer, cfg);
    double omega = unit_sphere_measure(n);
    double energy = omega * res.value;
    double bound = dirichlet_infimum(profile.domain, profile.target);
    return {energy, bound, (energy - bound) / bound, omega * res.error_estimate,
            make_meta(profile, 1.0)};
}

double limit_energy(const RadialProfile& profile, const QuadratureConfig& cfg) {
    const int n = profile.domain.n;
    const double constant = std::pow(n - 1.0, 0.5 * (n - 1));
    auto f = [&profile, n, constant](double t) {
        double w = std::abs(profile.log_derivative(t));
        return constant + std::pow(w, n - 1);
    };
    IntegralResult res =
        integrate_interval(f, profile.domain.inner, profile.domain.outer, cfg);
    return unit_sphere_measure(n) * res.value;
}

EnergyReport combined_energy_separable(double a, double b, const SeparableMap& map,
                                       const QuadratureConfig& cfg) {
    if (!(a > 0.0) || !(b > 0.0))
        throw std::invalid_argument("combined energy weights a, b must be positive");
    const RadialProfile& p = map.profile;
    const int n = p.domain.n;

    SphereEnergy sphere = sphere_conformal_energy(map.lambda, n, cfg);
    auto f = [&p, n](double t) {
        return std::pow(std::abs(p.log_derivative(t)), n - 1);
    };
    IntegralResult radial_part =
        integrate_interval(f, p.domain.inner, p.domain.outer, cfg);

    double omega = unit_sphere_measure(n);
    double energy =
        a * a * p.domain.width() * sphere.value + b * b * omega * radial_part.value;
    double quad_error = a * a * p.domain.width() * sphere.quad_error +
                        b * b * omega * radial_part.error_estimate;
    double bound = combined_lower_bound(a, b, p.domain, p.target);
    return {energy, bound, (energy - bound) / bound, quad_error,
            make_meta(p, map.lambda, a, b)};
}

double combined_lower_bound(double a, double b, const Annulus& domain, const Annulus& target) {
    check_matching(domain, target);
    if (!(a > 0.0) || !(b > 0.0))
        throw std::invalid_argument("combined energy weights a, b must be positive");
    const int n = domain.n;
    const double nu = 1.0 / (n - 2);
    double sphere_term = a * a * std::pow(n - 1.0, 0.5 * (n - 1)) * domain.width();
    double radial_term = b * b / std::pow(n - 2.0, n - 2) * domain.outer * domain.inner /
                         std::pow(std::pow(domain.outer, nu) - std::pow(domain.inner, nu),
                                  n - 2) *
                         std::pow(target.log_ratio(), n - 1);
    return unit_sphere_measure(n) * (sphere_term + radial_term);
}

double dirichlet_infimum(const Annulus& domain, const Annulus& target) {
    return combined_lower_bound(1.0, 1.0, domain, target);
}

}  // namespace annuli
