#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>
#include <vector>

#include "annuli/geometry.hpp"

using namespace annuli;

namespace {

constexpr double kPi = std::numbers::pi;

// Composite Simpson rule: an oracle independent of the adaptive engine.
template <typename F>
double simpson(F f, double a, double b, int panels) {
    double h = (b - a) / panels;
    double sum = f(a) + f(b);
    for (int i = 1; i < panels; ++i) sum += (i % 2 ? 4.0 : 2.0) * f(a + i * h);
    return sum * h / 3.0;
}

double uniform(std::mt19937_64& eng, double a, double b) {
    return a + (b - a) * ((eng() >> 11) * 0x1.0p-53);
}

std::vector<double> unit_vec(std::mt19937_64& eng, int dim) {
    std::vector<double> v(dim);
    double norm = 0.0;
    while (norm == 0.0) {
        norm = 0.0;
        for (double& c : v) {
            c = uniform(eng, -1.0, 1.0);
            norm += c * c;
        }
        norm = std::sqrt(norm);
    }
    for (double& c : v) c /= norm;
    return v;
}

double dist(const std::vector<double>& a, const std::vector<double>& b) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += (a[i] - b[i]) * (a[i] - b[i]);
    return std::sqrt(s);
}

}  // namespace

TEST_CASE("annulus invariants") {
    CHECK_NOTHROW(Annulus(3, 1.0, 2.0));
    CHECK_THROWS_AS(Annulus(2, 1.0, 2.0), std::invalid_argument);
    CHECK_THROWS_AS(Annulus(31, 1.0, 2.0), std::invalid_argument);
    CHECK_THROWS_AS(Annulus(3, 2.0, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(Annulus(3, 1.0, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(Annulus(3, 0.0, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(Annulus(3, -1.0, 1.0), std::invalid_argument);
}

TEST_CASE("gamma via Lanczos against std::tgamma") {
    for (double x = 0.5; x <= 20.0; x += 0.25)
        CHECK(std::abs(gamma_lanczos(x) - std::tgamma(x)) <= 1e-13 * std::tgamma(x));
    CHECK(gamma_lanczos(1.0) == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(gamma_lanczos(0.5) == doctest::Approx(std::sqrt(kPi)).epsilon(1e-14));
    CHECK_THROWS_AS(gamma_lanczos(0.0), std::invalid_argument);
    CHECK_THROWS_AS(gamma_lanczos(-1.5), std::invalid_argument);
}

TEST_CASE("unit sphere measures") {
    CHECK(unit_sphere_measure(2) == doctest::Approx(2.0 * kPi).epsilon(1e-13));
    CHECK(unit_sphere_measure(3) == doctest::Approx(4.0 * kPi).epsilon(1e-13));
    CHECK(unit_sphere_measure(4) == doctest::Approx(2.0 * kPi * kPi).epsilon(1e-13));
    CHECK_THROWS_AS(unit_sphere_measure(1), std::invalid_argument);
    CHECK_THROWS_AS(unit_sphere_measure(31), std::invalid_argument);
}

TEST_CASE("zonal measure ratio: closed values and quadrature oracle") {
    CHECK(zonal_measure_ratio(3) == doctest::Approx(0.5).epsilon(1e-13));
    CHECK(zonal_measure_ratio(4) == doctest::Approx(2.0 / kPi).epsilon(1e-13));
    CHECK_THROWS_AS(zonal_measure_ratio(2), std::invalid_argument);

    for (int n = 3; n <= 10; ++n) {
        double integral =
            simpson([n](double th) { return std::pow(std::sin(th), n - 2); }, 0.0, kPi, 4000);
        CHECK(zonal_measure_ratio(n) * integral == doctest::Approx(1.0).epsilon(1e-10));
    }
}

TEST_CASE("meridian dilation: fixed points, identity, hand value") {
    CHECK(meridian_dilation(kPi / 3.0, 1.0) == doctest::Approx(kPi / 3.0).epsilon(1e-15));
    CHECK(meridian_dilation(kPi, 7.5) == kPi);
    CHECK(meridian_dilation(0.0, 7.5) == 0.0);
    CHECK(meridian_dilation(kPi / 2.0, 2.0) ==
          doctest::Approx(2.0 * std::atan(2.0)).epsilon(1e-15));
    CHECK_THROWS_AS(meridian_dilation(-0.1, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(meridian_dilation(kPi + 0.1, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(meridian_dilation(1.0, 0.0), std::invalid_argument);
}

TEST_CASE("meridian dilation: strict monotonicity, inverse, composition") {
    std::mt19937_64 eng(41);
    for (int trial = 0; trial < 200; ++trial) {
        double lam = std::exp(uniform(eng, -2.5, 2.5));
        double mu = std::exp(uniform(eng, -2.5, 2.5));
        double th = uniform(eng, 0.0, kPi);
        double th2 = uniform(eng, 0.0, kPi);
        if (th > th2) std::swap(th, th2);
        if (th < th2) CHECK(meridian_dilation(th, lam) < meridian_dilation(th2, lam));
        CHECK(std::abs(meridian_dilation(meridian_dilation(th, lam), 1.0 / lam) - th) <=
              1e-12);
        double lhs = meridian_dilation(th, lam * mu);
        double rhs = meridian_dilation(meridian_dilation(th, mu), lam);
        CHECK(std::abs(lhs - rhs) <= 1e-12);
    }
}

TEST_CASE("conformal gradient norm: identity, pole limits, continuity") {
    for (int n : {3, 4, 7})
        CHECK(conformal_gradient_norm_sq(1.1, 1.0, n) ==
              doctest::Approx(n - 1.0).epsilon(1e-14));
    CHECK(conformal_gradient_norm_sq(0.0, 3.0, 4) == doctest::Approx(27.0));
    CHECK(conformal_gradient_norm_sq(kPi, 3.0, 4) == doctest::Approx(1.0 / 3.0));

    // deviation from the pole limit shrinks as theta = 10^-k approaches
    for (double lam : {0.3, 2.0, 9.0}) {
        double north = 3.0 * lam * lam;
        double south = 3.0 / (lam * lam);
        double prev_north = 1e300, prev_south = 1e300;
        for (int k = 2; k <= 9; ++k) {
            double eps = std::pow(10.0, -k);
            double dn = std::abs(conformal_gradient_norm_sq(eps, lam, 4) - north);
            double ds = std::abs(conformal_gradient_norm_sq(kPi - eps, lam, 4) - south);
            CHECK(dn <= prev_north + 1e-12);
            CHECK(ds <= prev_south + 1e-12);
            prev_north = dn;
            prev_south = ds;
        }
        CHECK(prev_north <= 1e-10 * north);
        CHECK(prev_south <= 1e-10 * south);
    }
}

TEST_CASE("conformal map point: identity, inverse roundtrip, hand value") {
    std::mt19937_64 eng(42);
    ZonalPoint xi(kPi / 2.0, {1.0, 0.0});
    ZonalPoint moved = conformal_map_point(xi, 2.0);
    CHECK(moved.theta == doctest::Approx(2.2142974355881810).epsilon(1e-12));
    CHECK(moved.longitude[0] == 1.0);

    for (int trial = 0; trial < 200; ++trial) {
        int n = 3 + static_cast<int>(eng() % 4);
        ZonalPoint p(uniform(eng, 0.0, kPi), unit_vec(eng, n - 1));
        double lam = std::exp(uniform(eng, -2.0, 2.0));
        ZonalPoint same = conformal_map_point(p, 1.0);
        CHECK(dist(same.embed(), p.embed()) <= 1e-15);
        ZonalPoint roundtrip = conformal_map_point(conformal_map_point(p, lam), 1.0 / lam);
        CHECK(dist(roundtrip.embed(), p.embed()) <= 1e-12);
    }
}

TEST_CASE("conformal map: zonal formula agrees with stereographic composition") {
    std::mt19937_64 eng(43);
    for (int trial = 0; trial < 500; ++trial) {
        int n = 3 + static_cast<int>(eng() % 4);
        ZonalPoint p(uniform(eng, 0.0, kPi), unit_vec(eng, n - 1));
        double lam = std::exp(uniform(eng, -2.0, 2.0));
        ZonalPoint a = conformal_map_point(p, lam);
        ZonalPoint b = conformal_map_via_projection(p, lam);
        CHECK(dist(a.embed(), b.embed()) <= 1e-12);
    }
}

TEST_CASE("stereographic projection: poles and roundtrip") {
    ZonalPoint north(0.0, {1.0, 0.0});
    auto u = stereographic_project(north);
    REQUIRE(!is_infinity(u));
    CHECK(std::get<std::vector<double>>(u)[0] == 0.0);

    ZonalPoint south(kPi, {1.0, 0.0});
    CHECK(is_infinity(stereographic_project(south)));
    ZonalPoint back = stereographic_inverse(stereographic_project(south), 3);
    CHECK(back.theta == doctest::Approx(kPi));

    std::mt19937_64 eng(44);
    for (int trial = 0; trial < 1000; ++trial) {
        int n = 3 + static_cast<int>(eng() % 4);
        ZonalPoint p(uniform(eng, 0.0, kPi), unit_vec(eng, n - 1));
        ZonalPoint rt = stereographic_inverse(stereographic_project(p), n);
        CHECK(dist(rt.embed(), p.embed()) <= 1e-12);

        std::vector<double> w = unit_vec(eng, n - 1);
        double rho = std::exp(uniform(eng, -3.0, 3.0));
        for (double& c : w) c *= rho;
        StereoPoint sp = w;
        StereoPoint rt2 = stereographic_project(stereographic_inverse(sp, n));
        REQUIRE(!is_infinity(rt2));
        CHECK(dist(std::get<std::vector<double>>(rt2), w) <= 1e-12 * (1.0 + rho));
    }
}

TEST_CASE("zonal point validation") {
    CHECK_THROWS_AS(ZonalPoint(-0.1, {1.0, 0.0}), std::invalid_argument);
    CHECK_THROWS_AS(ZonalPoint(0.1, {2.0, 0.0}), std::invalid_argument);
    CHECK_THROWS_AS(ZonalPoint(0.1, {1.0}), std::invalid_argument);
}
