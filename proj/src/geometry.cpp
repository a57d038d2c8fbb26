#include "annuli/geometry.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace annuli {

namespace {

constexpr double kPi = std::numbers::pi;

void check_dimension(int n, int lowest) {
    if (n < lowest)
        throw std::invalid_argument("dimension n must be >= " + std::to_string(lowest) +
                                    ", got " + std::to_string(n));
    if (n > kMaxDimension)
        throw std::invalid_argument("dimension n must be <= " + std::to_string(kMaxDimension) +
                                    ", got " + std::to_string(n));
}

void check_lambda(double lambda) {
    if (!(lambda > 0.0) || !std::isfinite(lambda))
        throw std::invalid_argument("conformal dilation parameter lambda must be positive");
}

void check_theta(double theta) {
    if (!(theta >= 0.0 && theta <= kPi))
        throw std::invalid_argument("meridian angle theta must lie in [0, pi]");
}

double norm(const std::vector<double>& v) {
    double s = 0.0;
    for (double x : v) s += x * x;
    return std::sqrt(s);
}

}  // namespace

Annulus::Annulus(int n_, double inner_, double outer_) : n(n_), inner(inner_), outer(outer_) {
    check_dimension(n, 3);
    if (!(inner > 0.0) || !std::isfinite(inner))
        throw std::invalid_argument("annulus inner radius must be positive and finite");
    if (!(outer > inner) || !std::isfinite(outer))
        throw std::invalid_argument("annulus requires inner < outer (got inner=" +
                                    std::to_string(inner) + ", outer=" + std::to_string(outer) + ")");
}

double Annulus::log_ratio() const { return std::log(outer / inner); }

ZonalPoint::ZonalPoint(double theta_, std::vector<double> longitude_)
    : theta(theta_), longitude(std::move(longitude_)) {
    check_theta(theta);
    if (longitude.size() < 2)
        throw std::invalid_argument("longitude vector must live in dimension >= 2");
    double len = norm(longitude);
    if (std::abs(len - 1.0) > 1e-9)
        throw std::invalid_argument("longitude vector must have unit norm");
}

std::vector<double> ZonalPoint::embed() const {
    std::vector<double> x(longitude.size() + 1);
    x[0] = std::cos(theta);
    double s = std::sin(theta);
    for (std::size_t i = 0; i < longitude.size(); ++i) x[i + 1] = longitude[i] * s;
    return x;
}

bool is_infinity(const StereoPoint& p) { return std::holds_alternative<PointAtInfinity>(p); }

double gamma_lanczos(double x) {
    // g = 7, 9-term coefficient set; relative error ~1e-15 for x > 0.
    static const double coeff[9] = {
        0.99999999999980993,      676.5203681218851,     -1259.1392167224028,
        771.32342877765313,       -176.61502916214059,   12.507343278686905,
        -0.13857109526572012,     9.9843695780195716e-6, 1.5056327351493116e-7};

    if (!(x > 0.0) || !std::isfinite(x))
        throw std::invalid_argument("gamma_lanczos requires a positive finite argument");

    if (x < 0.5) {
        // Reflection Gamma(x) Gamma(1-x) = pi / sin(pi x).
        return kPi / (std::sin(kPi * x) * gamma_lanczos(1.0 - x));
    }

    double z = x - 1.0;
    double a = coeff[0];
    for (int i = 1; i < 9; ++i) a += coeff[i] / (z + i);
    double t = z + 7.5;
    return std::sqrt(2.0 * kPi) * std::pow(t, z + 0.5) * std::exp(-t) * a;
}

double unit_sphere_measure(int n) {
    check_dimension(n, 2);
    return 2.0 * std::pow(kPi, 0.5 * n) / gamma_lanczos(0.5 * n);
}

double zonal_measure_ratio(int n) {
    check_dimension(n, 3);
    return gamma_lanczos(0.5 * n) / (std::sqrt(kPi) * gamma_lanczos(0.5 * (n - 1)));
}

double meridian_dilation(double theta, double lambda) {
    check_theta(theta);
    check_lambda(lambda);
    if (theta < kPoleGuard) return lambda * theta;          // phi ~ lambda theta near the north pole
    if (theta > kPi - kPoleGuard) return kPi - (kPi - theta) / lambda;
    return 2.0 * std::atan(lambda * std::tan(0.5 * theta));
}

double conformal_gradient_norm_sq(double theta, double lambda, int n) {
    check_theta(theta);
    check_lambda(lambda);
    check_dimension(n, 3);
    if (theta < kPoleGuard) return (n - 1) * lambda * lambda;
    if (theta > kPi - kPoleGuard) return (n - 1) / (lambda * lambda);
    // sin(phi)/sin(theta) = lambda (1 + y^2) / (1 + lambda^2 y^2) with
    // y = tan(theta/2); rational in y, no cancellation anywhere on (0, pi).
    double y = std::tan(0.5 * theta);
    double ratio = lambda * (1.0 + y * y) / (1.0 + lambda * lambda * y * y);
    return (n - 1) * ratio * ratio;
}

ZonalPoint conformal_map_point(const ZonalPoint& xi, double lambda) {
    return ZonalPoint(meridian_dilation(xi.theta, lambda), xi.longitude);
}

StereoPoint stereographic_project(const ZonalPoint& xi) {
    if (xi.theta == kPi) return PointAtInfinity{};
    double rho = std::tan(0.5 * xi.theta);
    std::vector<double> u(xi.longitude.size());
    for (std::size_t i = 0; i < u.size(); ++i) u[i] = xi.longitude[i] * rho;
    return u;
}

ZonalPoint stereographic_inverse(const StereoPoint& p, int n) {
    check_dimension(n, 3);
    if (is_infinity(p)) {
        std::vector<double> s(n - 1, 0.0);
        s[0] = 1.0;  // longitude is immaterial at a pole
        return ZonalPoint(kPi, std::move(s));
    }
    const auto& u = std::get<std::vector<double>>(p);
    if (static_cast<int>(u.size()) != n - 1)
        throw std::invalid_argument("stereographic_inverse: coordinate dimension must be n-1");
    double rho = norm(u);
    if (rho == 0.0) {
        std::vector<double> s(n - 1, 0.0);
        s[0] = 1.0;
        return ZonalPoint(0.0, std::move(s));
    }
    std::vector<double> s(u.size());
    for (std::size_t i = 0; i < u.size(); ++i) s[i] = u[i] / rho;
    return ZonalPoint(2.0 * std::atan(rho), std::move(s));
}

ZonalPoint conformal_map_via_projection(const ZonalPoint& xi, double lambda) {
    check_lambda(lambda);
    StereoPoint p = stereographic_project(xi);
    if (!is_infinity(p)) {
        auto& u = std::get<std::vector<double>>(p);
        for (double& c : u) c *= lambda;
    }
    return stereographic_inverse(p, xi.ambient_dimension());
}

}  // namespace annuli
