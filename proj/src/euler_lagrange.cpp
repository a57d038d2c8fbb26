#include "annuli/euler_lagrange.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "annuli/errors.hpp"

namespace annuli {

namespace {

void check_n(int n) {
    if (n < 3 || n > kMaxDimension)
        throw std::invalid_argument("dimension n must lie in [3, " +
                                    std::to_string(kMaxDimension) + "]");
}

// Exponent in the general solution H = kappa exp(u(w)):
//   u(w) = -(n-2) w + (n-3) sqrt(n-1) arctan(w / sqrt(n-1)).
double solution_exponent(double w, int n) {
    double s = std::sqrt(n - 1.0);
    return -(n - 2.0) * w + (n - 3.0) * s * std::atan(w / s);
}

}  // namespace

double phi_of_w(double w, int n) {
    check_n(n);
    if (!(w >= 0.0)) throw std::invalid_argument("phi_of_w requires w >= 0");
    return w * std::pow(n - 1.0 + w * w, 0.5 * (n - 3));
}

double phi_of_w_derivative(double w, int n) {
    check_n(n);
    return std::pow(n - 1.0 + w * w, 0.5 * (n - 5)) * (n - 1.0 + (n - 2.0) * w * w);
}

double solve_w(double t, double tau, int n) {
    check_n(n);
    if (!(t > 0.0) || !(tau > 0.0))
        throw std::invalid_argument("solve_w requires t > 0 and tau > 0");

    const double target = tau / t;
    if (n == 3) return target;  // phi is the identity

    // phi(w) >= w (n-1)^{(n-3)/2} and phi(w) >= w^{n-2}, so either bound
    // inverts to an upper bound for the root; start from the smaller.
    const double b1 = target / std::pow(n - 1.0, 0.5 * (n - 3));
    const double b2 = std::pow(target, 1.0 / (n - 2));
    double lo = 0.0;
    double hi = std::max(b1, b2) + 1.0;
    double w = std::min(b1, b2);

    for (int it = 0; it < 200; ++it) {
        double f = phi_of_w(w, n) - target;
        if (std::abs(f) <= 1e-13 * target) return w;
        if (f > 0.0)
            hi = w;
        else
            lo = w;
        double next = w - f / phi_of_w_derivative(w, n);
        if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
        if (next == w) return w;  // stagnated at roundoff; residual is as small as it gets
        w = next;
    }
    throw NonConvergenceError("solve_w: Newton iteration limit reached", w,
                              std::abs(phi_of_w(w, n) - target));
}

double psi(double r, double R, double tau, int n) {
    check_n(n);
    if (!(0.0 < r && r < R))
        throw std::invalid_argument("psi requires 0 < r < R");
    double wr = solve_w(r, tau, n);
    double wR = solve_w(R, tau, n);
    double s = std::sqrt(n - 1.0);
    return (n - 2.0) * (wr - wR) + (n - 3.0) * s * (std::atan(wR / s) - std::atan(wr / s));
}

double solve_tau_star(const Annulus& domain, const Annulus& target) {
    if (domain.n != target.n)
        throw std::invalid_argument("domain and target annuli must share the dimension n");
    const int n = domain.n;
    const double r = domain.inner, R = domain.outer;
    const double L = target.log_ratio();

    // Seeds from the asymptotic forms: psi ~ tau (1/r - 1/R) (n-1)^{-(n-3)/2}
    // for small tau, psi ~ (n-2) tau^{1/(n-2)} (r^{-1/(n-2)} - R^{-1/(n-2)})
    // for large tau; expanded geometrically until the root is bracketed.
    const double nu = 1.0 / (n - 2);
    double lo = L * std::pow(n - 1.0, 0.5 * (n - 3)) / (1.0 / r - 1.0 / R);
    double hi = std::pow(
        L / ((n - 2.0) * (std::pow(r, -nu) - std::pow(R, -nu))), n - 2.0);

    for (int it = 0; psi(r, R, lo, n) >= L; ++it) {
        lo *= 0.5;
        if (it > 2000) throw NonConvergenceError("solve_tau_star: lower bracket", lo, L);
    }
    for (int it = 0; psi(r, R, hi, n) <= L; ++it) {
        hi *= 2.0;
        if (it > 2000) throw NonConvergenceError("solve_tau_star: upper bracket", hi, L);
    }

    double tau = 0.5 * (lo + hi);
    for (int it = 0; it < 500; ++it) {
        double res = psi(r, R, tau, n) - L;
        if (std::abs(res) <= 1e-12 * L) return tau;
        if (res > 0.0)
            hi = tau;
        else
            lo = tau;
        double next = 0.5 * (lo + hi);
        if (next == tau) return tau;
        tau = next;
    }
    throw NonConvergenceError("solve_tau_star: bisection iteration limit reached", tau,
                              std::abs(psi(r, R, tau, n) - L));
}

ELSolution build_radial_minimizer(const Annulus& domain, const Annulus& target) {
    const int n = domain.n;
    const double tau = solve_tau_star(domain, target);
    const double kappa = target.inner / std::exp(solution_exponent(solve_w(domain.inner, tau, n), n));

    auto eval = [kappa, tau, n](double t) {
        return kappa * std::exp(solution_exponent(solve_w(t, tau, n), n));
    };
    auto deriv = [eval, tau, n](double t) {
        double w = solve_w(t, tau, n);
        return w * eval(t) / t;  // from w = t H'/H
    };
    RadialProfile profile{domain, target, eval, deriv, Orientation::increasing, "el-minimizer"};

    double wr = solve_w(domain.inner, tau, n);
    double wR = solve_w(domain.outer, tau, n);
    double omega = unit_sphere_measure(n);
    double energy = omega * (domain.outer * std::pow(wR * wR + n - 1.0, 0.5 * (n - 1)) -
                             domain.inner * std::pow(wr * wr + n - 1.0, 0.5 * (n - 1)) -
                             tau * (n - 1.0) * (wR - wr));

    return ELSolution{domain, target, tau, kappa, profile, energy};
}

double ELSolution::w_at(double t) const { return solve_w(t, tau_star, domain.n); }

double minimal_radial_energy(const Annulus& domain, const Annulus& target) {
    const int n = domain.n;
    double tau = solve_tau_star(domain, target);
    double wr = solve_w(domain.inner, tau, n);
    double wR = solve_w(domain.outer, tau, n);
    return unit_sphere_measure(n) *
           (domain.outer * std::pow(wR * wR + n - 1.0, 0.5 * (n - 1)) -
            domain.inner * std::pow(wr * wr + n - 1.0, 0.5 * (n - 1)) -
            tau * (n - 1.0) * (wR - wr));
}

namespace {

double residual_from(double w, double wdot, double t, int n) {
    return w * w * w + (n - 1.0) * w + t * wdot * ((n - 1.0) + (n - 2.0) * w * w);
}

double residual_scale(double w, int n) {
    double aw = std::abs(w);
    return (n - 1.0) * aw + aw * aw * aw;
}

}  // namespace

double el_residual(const RadialProfile& profile, double t) {
    const int n = profile.domain.n;
    const double h = 1e-5 * t;
    double w = profile.log_derivative(t);
    double wdot = (profile.log_derivative(t + h) - profile.log_derivative(t - h)) / (2.0 * h);
    return residual_from(w, wdot, t, n);
}

double el_residual(const ELSolution& sol, double t) {
    const int n = sol.domain.n;
    double w = sol.w_at(t);
    double wdot = -(sol.tau_star / (t * t)) / phi_of_w_derivative(w, n);
    return residual_from(w, wdot, t, n);
}

double el_residual_scaled(const RadialProfile& profile, double t) {
    return el_residual(profile, t) /
           residual_scale(profile.log_derivative(t), profile.domain.n);
}

double el_residual_scaled(const ELSolution& sol, double t) {
    return el_residual(sol, t) / residual_scale(sol.w_at(t), sol.domain.n);
}

double max_scaled_residual(const ELSolution& sol, int grid_points) {
    double worst = 0.0;
    for (int i = 1; i <= grid_points; ++i) {
        double t = sol.domain.inner +
                   sol.domain.width() * i / (grid_points + 1.0);
        worst = std::max(worst, std::abs(el_residual_scaled(sol, t)));
    }
    return worst;
}

nlohmann::json el_solution_json(const ELSolution& sol, int grid_points) {
    return nlohmann::json{{"n", sol.domain.n},
                          {"r", sol.domain.inner},
                          {"R", sol.domain.outer},
                          {"r_star", sol.target.inner},
                          {"R_star", sol.target.outer},
                          {"tau_star", sol.tau_star},
                          {"kappa_star", sol.kappa_star},
                          {"energy_closed_form", sol.energy_closed_form},
                          {"residual_max", max_scaled_residual(sol, grid_points)}};
}

}  // namespace annuli
