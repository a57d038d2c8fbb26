#pragma once

#include <json.hpp>

#include "annuli/geometry.hpp"
#include "annuli/profiles.hpp"

namespace annuli {

// Stationary radial profile of the energy functional
//   H[H] = omega_{n-1} int_r^R (n-1 + w^2)^{(n-1)/2} dt,  w = t H'/H,
// determined by the first integral w (n-1+w^2)^{(n-3)/2} = tau/t together
// with the boundary correspondence H(r) = r_star, H(R) = R_star.
struct ELSolution {
    Annulus domain;
    Annulus target;
    double tau_star;            // multiplier solving psi(r, R, tau) = log(R_star/r_star)
    double kappa_star;          // scale fixing H(r) = r_star
    RadialProfile profile;      // H_*, strictly increasing
    double energy_closed_form;  // H[H_*] evaluated in closed form

    // w_*(t), strictly decreasing on [r, R].
    double w_at(double t) const;
};

// phi(w) = w (n-1 + w^2)^{(n-3)/2}, strictly increasing on [0, inf).
double phi_of_w(double w, int n);

// phi'(w) = (n-1 + w^2)^{(n-5)/2} (n-1 + (n-2) w^2) > 0.
double phi_of_w_derivative(double w, int n);

// Unique w > 0 with phi(w) = tau/t, found by bracketed, safeguarded
// Newton iteration; |phi(w) - tau/t| <= 1e-13 tau/t on return.
double solve_w(double t, double tau, int n);

// psi(r, R, tau) = (n-2)(w(r) - w(R))
//   + (n-3) sqrt(n-1) (arctan(w(R)/sqrt(n-1)) - arctan(w(r)/sqrt(n-1))),
// the achieved boundary log-ratio of the stationary profile; strictly
// increasing in tau.
double psi(double r, double R, double tau, int n);

// Unique tau with psi(r, R, tau) = log(R_star/r_star), located by
// geometric bracket expansion from the small/large-tau asymptotics and
// then bisection to 1e-12 relative residual.
double solve_tau_star(const Annulus& domain, const Annulus& target);

// Assembles the full stationary solution H_*.
ELSolution build_radial_minimizer(const Annulus& domain, const Annulus& target);

// H[H_*] in closed form:
//   omega_{n-1} [ R (w(R)^2+n-1)^{(n-1)/2} - r (w(r)^2+n-1)^{(n-1)/2}
//                 - tau_star (n-1) (w(R) - w(r)) ].
double minimal_radial_energy(const Annulus& domain, const Annulus& target);

// Residual of the stationarity equation
//   w^3 + (n-1) w + t w' ((n-1) + (n-2) w^2)
// at t; zero exactly for stationary profiles. The RadialProfile overload
// differentiates w by central differences (step 1e-5 t); the ELSolution
// overload uses the implicit derivative w' = -(tau/t^2)/phi'(w).
double el_residual(const RadialProfile& profile, double t);
double el_residual(const ELSolution& solution, double t);

// Residual divided by (n-1)|w| + |w|^3, the natural scale of the equation.
double el_residual_scaled(const RadialProfile& profile, double t);
double el_residual_scaled(const ELSolution& solution, double t);

// Largest |scaled residual| over a uniform interior grid.
double max_scaled_residual(const ELSolution& solution, int grid_points = 100);

// {n, r, R, r_star, R_star, tau_star, kappa_star, energy_closed_form,
//  residual_max}
nlohmann::json el_solution_json(const ELSolution& solution, int grid_points = 100);

}  // namespace annuli
