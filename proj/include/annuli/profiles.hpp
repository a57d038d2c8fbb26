#pragma once

#include <functional>
#include <string>
#include <vector>

#include "annuli/geometry.hpp"

namespace annuli {

enum class Orientation { increasing, decreasing };

// Radial profile H : [r, R] -> [r_star, R_star], a strictly monotone map
// between the radius intervals of the two annuli, with derivative access.
// eval and deriv are expected to be consistent; analytic constructors
// guarantee it, hand-rolled profiles are checked by the test suite.
struct RadialProfile {
    Annulus domain;
    Annulus target;
    std::function<double(double)> eval;
    std::function<double(double)> deriv;
    Orientation orientation;
    std::string tag;

    double operator()(double t) const { return eval(t); }
    double derivative(double t) const { return deriv(t); }

    // w(t) = t H'(t) / H(t), the logarithmic derivative driving every
    // energy integrand.
    double log_derivative(double t) const { return t * deriv(t) / eval(t); }
};

// alpha(t) = R^nu (t^nu - r^nu) / (t^nu (R^nu - r^nu)), nu = 1/(n-2);
// increases from 0 at t = r to 1 at t = R.
double alpha(double t, const Annulus& domain);

// d alpha / dt = nu (rR)^nu / (R^nu - r^nu) * t^{-nu-1}.
double alpha_derivative(double t, const Annulus& domain);

// The sharp boundary profiles
//   increasing: H(t) = r_star (R_star/r_star)^{alpha(t)}
//   decreasing: H(t) = R_star (r_star/R_star)^{alpha(t)}
// with closed-form derivatives.
RadialProfile make_boundary_profile(const Annulus& domain, const Annulus& target,
                                    Orientation orientation);

// Monotone piecewise-cubic interpolant through the given knots. Knot
// abscissae must strictly increase and span [r, R]; ordinates must be
// strictly monotone and span [r_star, R_star] (in either direction,
// which fixes the orientation). Rejects anything that would fail to be
// a homeomorphism of the radius intervals.
RadialProfile make_tabulated_profile(const std::vector<double>& knots_t,
                                     const std::vector<double>& knots_h,
                                     const Annulus& domain, const Annulus& target);

// Reads a two-column CSV with header "t,H" into a tabulated profile.
RadialProfile load_profile_csv(const std::string& path, const Annulus& domain,
                               const Annulus& target);

// The inversion H -> c/H, mapping the target interval (r_star, R_star)
// to (c/R_star, c/r_star) and flipping the orientation. Leaves every
// energy computed from w^2 unchanged.
RadialProfile invert_profile(const RadialProfile& profile, double c);

// Free-function form of RadialProfile::log_derivative.
double log_derivative(const RadialProfile& profile, double t);

}  // namespace annuli
