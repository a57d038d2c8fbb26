#pragma once

#include <string>

#include "annuli/geometry.hpp"
#include "annuli/profiles.hpp"
#include "annuli/quadrature.hpp"

namespace annuli {

// h(x) = H(|x|) Phi^lambda(x/|x|): a radial profile rotated through the
// conformal dilation family. lambda = 1 is the plain radial map.
struct SeparableMap {
    RadialProfile profile;
    double lambda = 1.0;
};

struct ReportMeta {
    int n = 0;
    double r = 0, R = 0, r_star = 0, R_star = 0;
    double lambda = 1.0;
    std::string profile;
    double a = 1.0, b = 1.0;
};

struct EnergyReport {
    double energy = 0.0;
    double bound = 0.0;          // applicable closed-form lower bound
    double relative_gap = 0.0;   // (energy - bound) / bound
    double quadrature_error = 0.0;
    ReportMeta meta;
};

std::string energy_csv_header();
std::string energy_csv_row(const EnergyReport& report);

struct SphereEnergy {
    double value = 0.0;        // quadrature of the sphere integral
    double closed_form = 0.0;  // (n-1)^{(n-1)/2} omega_{n-1}, lambda-free
    double quad_error = 0.0;
};

// integral over S^{n-1} of ||D Phi^lambda||^{n-1}; independent of lambda.
SphereEnergy sphere_conformal_energy(double lambda, int n, const QuadratureConfig& cfg = {});

// Energy of a separable map via the (t, y) double integral
//   2^{n-1} omega_{n-2} int_r^R int_0^inf
//     (w(t)^2 + (n-1) lambda^2 (1+y^2)^2 / (1+lambda^2 y^2)^2)^{(n-1)/2}
//     y^{n-2} (1+y^2)^{1-n} dy dt.
// Refuses lambda < 1e-6 (the lambda -> 0 value is limit_energy); for
// lambda in [1e-6, 1e-3) the relative tolerance is tightened by 100.
EnergyReport quasiradial_energy(const SeparableMap& map, const QuadratureConfig& cfg = {});

// Energy of the radial map lambda = 1:
//   omega_{n-1} int_r^R (n-1 + w(t)^2)^{(n-1)/2} dt.
EnergyReport radial_energy(const RadialProfile& profile, const QuadratureConfig& cfg = {});

// lambda -> 0 limit of the separable energy:
//   omega_{n-1} int_r^R ((n-1)^{(n-1)/2} + |w(t)|^{n-1}) dt.
// The limit statement requires n >= 4; n = 3 is accepted since every
// formula degenerates gracefully there (and the value then coincides
// with the radial energy).
double limit_energy(const RadialProfile& profile, const QuadratureConfig& cfg = {});

// Weighted split of the energy into spherical and radial parts. For
// separable maps this is
//   a^2 (R-r) * sphere integral + b^2 omega_{n-1} int |w|^{n-1} dt
// and is independent of lambda.
EnergyReport combined_energy_separable(double a, double b, const SeparableMap& map,
                                       const QuadratureConfig& cfg = {});

// Sharp lower bound for the combined energy:
//   omega_{n-1} (a^2 (n-1)^{(n-1)/2} (R-r)
//     + b^2/(n-2)^{n-2} * Rr/(R^{1/(n-2)} - r^{1/(n-2)})^{n-2}
//       * log^{n-1}(R_star/r_star)).
double combined_lower_bound(double a, double b, const Annulus& domain, const Annulus& target);

// Infimum of the plain energy over all admissible homeomorphisms; equals
// combined_lower_bound(1, 1, ...). Attained at n = 3, approached but not
// attained for n >= 4.
double dirichlet_infimum(const Annulus& domain, const Annulus& target);

}  // namespace annuli
