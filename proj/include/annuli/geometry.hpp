#pragma once

#include <variant>
#include <vector>

namespace annuli {

// Dimensions above 30 would push (n-1)^{(n-1)/2} style constants toward
// the edge of double range; reject them up front.
inline constexpr int kMaxDimension = 30;

// Guard band around the meridian poles inside which closed-form limit
// values replace the raw trigonometric formulas.
inline constexpr double kPoleGuard = 1e-8;

// Spherical shell {x in R^n : inner < |x| < outer}.
struct Annulus {
    int n;
    double inner;
    double outer;

    Annulus(int n, double inner, double outer);

    double width() const { return outer - inner; }
    double log_ratio() const;  // log(outer/inner)
};

// Point of the unit sphere S^{n-1} written as (cos theta, s sin theta)
// with meridian angle theta in [0, pi] and longitude s a unit vector in
// R^{n-1}.
struct ZonalPoint {
    double theta;
    std::vector<double> longitude;

    ZonalPoint(double theta, std::vector<double> longitude);

    int ambient_dimension() const { return static_cast<int>(longitude.size()) + 1; }

    // Cartesian coordinates (cos theta, s_1 sin theta, ..., s_{n-1} sin theta).
    std::vector<double> embed() const;
};

// Codomain of the stereographic projection: R^{n-1} extended by a
// tagged point at infinity (image of the south pole).
struct PointAtInfinity {};
using StereoPoint = std::variant<std::vector<double>, PointAtInfinity>;

bool is_infinity(const StereoPoint& p);

// Lanczos approximation of the gamma function for positive arguments;
// relative error below 1e-13 on [0.5, 20], which covers every half
// integer that arises for n <= kMaxDimension.
double gamma_lanczos(double x);

// omega_{n-1} = 2 pi^{n/2} / Gamma(n/2), the (n-1)-dimensional measure
// of the unit sphere in R^n. Requires 2 <= n <= kMaxDimension.
double unit_sphere_measure(int n);

// omega_{n-2} / omega_{n-1} = Gamma(n/2) / (sqrt(pi) Gamma((n-1)/2))
//                           = 1 / integral_0^pi sin^{n-2}(theta) dtheta.
// Requires 3 <= n <= kMaxDimension.
double zonal_measure_ratio(int n);

// phi(theta) = 2 arctan(lambda tan(theta/2)), the meridian action of the
// conformal dilation. Fixes both poles; strictly increasing on [0, pi];
// inverse is the same map with lambda -> 1/lambda.
double meridian_dilation(double theta, double lambda);

// Squared Hilbert-Schmidt norm of the dilation's differential at
// meridian angle theta: (n-1) sin^2(phi) / sin^2(theta), with the
// removable singularities filled in by their limits (n-1) lambda^2 at
// theta = 0 and (n-1) / lambda^2 at theta = pi.
double conformal_gradient_norm_sq(double theta, double lambda, int n);

// The dilation applied to a point: longitude is preserved, the meridian
// angle moves by meridian_dilation.
ZonalPoint conformal_map_point(const ZonalPoint& xi, double lambda);

// Stereographic projection through the south pole: xi -> s tan(theta/2),
// with the south pole mapping to the point at infinity.
StereoPoint stereographic_project(const ZonalPoint& xi);

// Inverse projection; n is the ambient dimension of the sphere.
ZonalPoint stereographic_inverse(const StereoPoint& u, int n);

// The dilation realized as projection -> scaling by lambda -> inverse
// projection. Cross-check path for conformal_map_point.
ZonalPoint conformal_map_via_projection(const ZonalPoint& xi, double lambda);

}  // namespace annuli
