#include "annuli/verification.hpp"

#include "annuli/format.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>
#include <random>
#include <sstream>

namespace annuli {

namespace {

constexpr double kPi = 3.14159265358979323846;

// Deterministic uniform draws; the raw engine output is mapped to [0,1)
// arithmetically so sequences do not depend on library distribution
// internals.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : eng_(seed) {}

    double uniform(double a, double b) {
        double u = (eng_() >> 11) * 0x1.0p-53;
        return a + (b - a) * u;
    }

    int uniform_int(int lo, int hi) {  // inclusive
        return lo + static_cast<int>(eng_() % static_cast<std::uint64_t>(hi - lo + 1));
    }

private:
    std::mt19937_64 eng_;
};

CheckResult check_le(std::string name, std::string anchor, double measured, double threshold) {
    return {std::move(name), std::move(anchor), measured <= threshold, measured, threshold};
}

CheckResult check_gt(std::string name, std::string anchor, double measured, double threshold) {
    return {std::move(name), std::move(anchor), measured > threshold, measured, threshold};
}

double embed_distance(const ZonalPoint& a, const ZonalPoint& b) {
    auto xa = a.embed(), xb = b.embed();
    double s = 0.0;
    for (std::size_t i = 0; i < xa.size(); ++i) s += (xa[i] - xb[i]) * (xa[i] - xb[i]);
    return std::sqrt(s);
}

std::vector<double> random_longitude(Rng& rng, int dim) {
    std::vector<double> s(dim);
    double norm = 0.0;
    while (norm == 0.0) {
        for (double& c : s) c = rng.uniform(-1.0, 1.0);
        norm = 0.0;
        for (double c : s) norm += c * c;
        norm = std::sqrt(norm);
    }
    for (double& c : s) c /= norm;
    return s;
}

double holder_radial_bound(const Annulus& domain, const Annulus& target) {
    const int n = domain.n;
    const double nu = 1.0 / (n - 2);
    return std::pow(target.log_ratio(), n - 1) / std::pow(n - 2.0, n - 2) * domain.outer *
           domain.inner /
           std::pow(std::pow(domain.outer, nu) - std::pow(domain.inner, nu), n - 2);
}

double holder_radial_integral(const RadialProfile& p, const QuadratureConfig& cfg,
                              double* err = nullptr) {
    const int n = p.domain.n;
    auto f = [&p, n](double t) { return std::pow(std::abs(p.log_derivative(t)), n - 1); };
    IntegralResult res = integrate_interval(f, p.domain.inner, p.domain.outer, cfg);
    if (err) *err = res.error_estimate;
    return res.value;
}

}  // namespace

bool SuiteReport::all_pass() const {
    return std::all_of(checks.begin(), checks.end(),
                       [](const CheckResult& c) { return c.pass; });
}

CheckResult check_power_mean_inequality(int samples, std::uint64_t seed) {
    if (samples < 1) throw std::invalid_argument("samples must be >= 1");
    Rng rng(seed);
    double worst = -1.0;  // largest scaled violation lhs - rhs
    auto probe = [&worst](double a, double b, double s) {
        double lhs = std::pow(a, s) - std::pow(b, s);
        double rhs = s * (a - b) * (std::pow(a, s - 1.0) + std::pow(b, s - 1.0));
        double scale = std::max({1.0, std::abs(lhs), std::abs(rhs)});
        worst = std::max(worst, (lhs - rhs) / scale);
    };
    probe(1.0, 1.0, 2.0);  // equal arguments
    probe(3.0, 0.0, 1.0);  // b = 0, s = 1
    probe(2.0, 1.0, 3.0);
    for (int i = 0; i < samples; ++i) {
        double x = rng.uniform(0.0, 10.0), y = rng.uniform(0.0, 10.0);
        probe(std::max(x, y), std::min(x, y), rng.uniform(1.0, 6.0));
    }
    return check_le("power-mean-inequality", "power difference inequality a^s - b^s",
                    worst, 1e-15);
}

SweepTable sweep_lambda(const RadialProfile& profile, const std::vector<double>& lambdas,
                        const QuadratureConfig& cfg) {
    if (lambdas.empty()) throw std::invalid_argument("sweep_lambda: empty lambda grid");
    const int n = profile.domain.n;

    SweepTable table;
    double limit = limit_energy(profile, cfg);
    double bound = dirichlet_infimum(profile.domain, profile.target);
    EnergyReport radial = radial_energy(profile, cfg);

    std::map<double, EnergyReport> cache;
    auto energy_at = [&](double lam) -> const EnergyReport& {
        auto it = cache.find(lam);
        if (it == cache.end())
            it = cache.emplace(lam, quasiradial_energy({profile, lam}, cfg)).first;
        return it->second;
    };

    for (double lam : lambdas) {
        const EnergyReport& rep = energy_at(lam);
        table.rows.push_back({lam, rep.energy, limit, bound,
                              (rep.energy - limit) / limit, rep.quadrature_error});
    }

    double worst_sym = 0.0;
    double min_above_limit = 1e300;
    double min_improvement = 1e300;
    double worst_consistency = 0.0;
    for (const SweepRow& row : table.rows) {
        const EnergyReport& e = energy_at(row.lambda);
        const EnergyReport& mirror = energy_at(1.0 / row.lambda);
        worst_sym = std::max(worst_sym, std::abs(e.energy - mirror.energy) / e.energy);
        min_above_limit = std::min(
            min_above_limit,
            e.energy - limit + e.quadrature_error + 1e-10 * limit);
        if (row.lambda != 1.0) {
            if (n >= 4)
                min_improvement = std::min(min_improvement,
                                           radial.energy - e.energy -
                                               (e.quadrature_error + radial.quadrature_error));
            else
                worst_consistency = std::max(
                    worst_consistency, std::abs(e.energy - radial.energy) / radial.energy);
        }
    }

    table.checks.push_back(check_le("sweep-reciprocal-symmetry",
                                    "energy invariance under lambda -> 1/lambda",
                                    worst_sym, 1e-8));
    table.checks.push_back(check_gt("sweep-above-limit",
                                    "lambda -> 0 limit is the infimum over the family",
                                    min_above_limit, 0.0));
    bool has_non_radial = std::any_of(table.rows.begin(), table.rows.end(),
                                      [](const SweepRow& r) { return r.lambda != 1.0; });
    if (has_non_radial) {
        if (n >= 4)
            table.checks.push_back(check_gt("sweep-below-radial",
                                            "strict quasiradial improvement over radial",
                                            min_improvement, 0.0));
        else
            table.checks.push_back(check_le("sweep-radial-consistency",
                                            "lambda-free energy in dimension 3",
                                            worst_consistency, 1e-8));
    }
    return table;
}

GapReport gap_report(const Annulus& domain, const Annulus& target,
                     const QuadratureConfig& cfg) {
    GapReport rep;
    rep.infimum = dirichlet_infimum(domain, target);
    ELSolution sol = build_radial_minimizer(domain, target);
    rep.minimal_radial = sol.energy_closed_form;
    EnergyReport mid = quasiradial_energy({sol.profile, 0.125}, cfg);
    rep.quasiradial_mid = mid.energy;

    if (domain.n >= 4) {
        double closed_form_slack = 1e-9 * (rep.minimal_radial + rep.infimum);
        rep.checks.push_back(check_gt("gap-positive",
                                      "radial minimum strictly above the infimum",
                                      rep.minimal_radial - rep.infimum - closed_form_slack,
                                      0.0));
        rep.checks.push_back(check_gt("gap-sandwich-lower",
                                      "quasiradial energy strictly above the infimum",
                                      rep.quasiradial_mid - rep.infimum -
                                          mid.quadrature_error,
                                      0.0));
        rep.checks.push_back(check_gt("gap-sandwich-upper",
                                      "quasiradial energy strictly below the radial minimum",
                                      rep.minimal_radial - rep.quasiradial_mid -
                                          (mid.quadrature_error + 1e-9 * rep.minimal_radial),
                                      0.0));
    } else {
        double dev = std::max(std::abs(rep.minimal_radial - rep.infimum),
                              std::abs(rep.quasiradial_mid - rep.infimum)) /
                     rep.infimum;
        rep.checks.push_back(check_le("gap-zero-consistency",
                                      "attained minimum in dimension 3", dev, 1e-8));
    }
    return rep;
}

RadialProfile make_perturbed_profile(const ELSolution& sol, std::uint64_t seed, int knots) {
    if (knots < 8) throw std::invalid_argument("make_perturbed_profile: too few knots");
    Rng rng(seed);
    const Annulus& dom = sol.domain;
    const double width = dom.width();

    double c[3];
    for (double& ci : c) ci = rng.uniform(-1.0, 1.0);

    auto bump = [&](double t) {
        double x = (t - dom.inner) / width;
        return c[0] * std::sin(kPi * x) + c[1] * std::sin(2.0 * kPi * x) +
               c[2] * std::sin(3.0 * kPi * x);
    };
    auto bump_deriv = [&](double t) {
        double x = (t - dom.inner) / width;
        return (c[0] * kPi * std::cos(kPi * x) + c[1] * 2.0 * kPi * std::cos(2.0 * kPi * x) +
                c[2] * 3.0 * kPi * std::cos(3.0 * kPi * x)) /
               width;
    };

    // eps keeps d/dt log H positive: |eps B'| <= 0.3 min(w/t).
    double min_w_over_t = 1e300, max_bd = 0.0;
    for (int i = 0; i <= 200; ++i) {
        double t = dom.inner + width * i / 200.0;
        min_w_over_t = std::min(min_w_over_t, sol.w_at(t) / t);
        max_bd = std::max(max_bd, std::abs(bump_deriv(t)));
    }
    double eps = 0.3 * min_w_over_t / max_bd;

    std::vector<double> ts(knots), hs(knots);
    for (int i = 0; i < knots; ++i) {
        double t = dom.inner + width * i / (knots - 1.0);
        ts[i] = t;
        hs[i] = sol.profile(t) * std::exp(eps * bump(t));
    }
    RadialProfile p = make_tabulated_profile(ts, hs, dom, sol.target);
    p.tag = "perturbed";
    return p;
}

SuiteReport run_suite(const SuiteConfig& cfg) {
    SuiteReport report;
    report.config = cfg;

    auto add = [&report, &cfg](CheckResult c) {
        if (!cfg.inject_fault.empty() && c.name == cfg.inject_fault) c.pass = false;
        report.checks.push_back(std::move(c));
    };

    Rng rng(cfg.seed);
    const QuadratureConfig& quad = cfg.quad;
    const double rr = cfg.domain.inner, RR = cfg.domain.outer;
    const double rs = cfg.target.inner, Rs = cfg.target.outer;

    // --- geometry --------------------------------------------------------
    {
        double worst = 0.0;
        for (int i = 0; i < 200; ++i) {
            double theta = rng.uniform(0.0, kPi);
            double lam = std::exp(rng.uniform(-2.0, 2.0));
            double mu = std::exp(rng.uniform(-2.0, 2.0));
            double inv = meridian_dilation(meridian_dilation(theta, lam), 1.0 / lam);
            worst = std::max(worst, std::abs(inv - theta));
            double composed = meridian_dilation(meridian_dilation(theta, mu), lam);
            worst = std::max(worst, std::abs(meridian_dilation(theta, lam * mu) - composed));
        }
        add(check_le("meridian-dilation-group-law",
                     "meridian dilations compose and invert as a one-parameter group",
                     worst, 1e-12));
    }
    {
        double worst = 0.0;
        for (int i = 0; i < 200; ++i) {
            int n = rng.uniform_int(3, 6);
            ZonalPoint xi(rng.uniform(0.0, kPi), random_longitude(rng, n - 1));
            double lam = std::exp(rng.uniform(-2.0, 2.0));
            worst = std::max(worst, embed_distance(conformal_map_point(xi, lam),
                                                   conformal_map_via_projection(xi, lam)));
        }
        add(check_le("conformal-map-construction-paths",
                     "zonal formula agrees with the stereographic composition",
                     worst, 1e-12));
    }
    {
        double worst = 0.0;
        for (double lam : {0.5, 3.0}) {
            for (int n : {3, 5}) {
                double north = (n - 1) * lam * lam;
                double south = (n - 1) / (lam * lam);
                for (double eps : {1e-7, 1e-9}) {
                    worst = std::max(worst, std::abs(conformal_gradient_norm_sq(eps, lam, n) -
                                                     north) / north);
                    worst = std::max(worst,
                                     std::abs(conformal_gradient_norm_sq(kPi - eps, lam, n) -
                                              south) / south);
                }
            }
        }
        add(check_le("gradient-norm-pole-continuity",
                     "removable singularities of the dilation gradient at the poles",
                     worst, 1e-10));
    }
    {
        double worst = 0.0;
        for (int n = 3; n <= 10; ++n) {
            auto f = [n](double th) { return std::pow(std::sin(th), n - 2); };
            IntegralResult s = integrate_interval(f, 0.0, kPi, quad);
            worst = std::max(worst, std::abs(zonal_measure_ratio(n) * s.value - 1.0));
        }
        add(check_le("zonal-ratio-vs-quadrature",
                     "sphere measure ratio equals the reciprocal sine-power integral",
                     worst, 1e-10));
    }

    // --- quadrature ------------------------------------------------------
    {
        struct Ref {
            std::function<IntegralResult(const QuadratureConfig&)> run;
            double exact;
        };
        std::vector<Ref> refs = {
            {[](const QuadratureConfig& c) {
                 return integrate_interval([](double t) { return t * t; }, 0.0, 1.0, c);
             },
             1.0 / 3.0},
            {[](const QuadratureConfig& c) {
                 return integrate_interval(
                     [](double th) { return std::sin(th) * std::sin(th); }, 0.0, kPi, c);
             },
             0.5 * kPi},
            {[](const QuadratureConfig& c) {
                 return integrate_semi_axis(
                     [](double y) {
                         return y * y / std::pow(1.0 + y * y, 3.0);
                     },
                     c);
             },
             kPi / 16.0}};
        double worst_increase = 0.0;
        for (const Ref& ref : refs) {
            QuadratureConfig c = quad;
            c.rel_tol = 1e-6;
            double prev = std::abs(ref.run(c).value - ref.exact);
            for (int k = 0; k < 8; ++k) {
                c.rel_tol *= 0.5;
                double disc = std::abs(ref.run(c).value - ref.exact);
                worst_increase =
                    std::max(worst_increase, (disc - prev) / std::abs(ref.exact));
                prev = disc;
            }
        }
        add(check_le("tolerance-halving-monotone", "plumbing", worst_increase, 1e-15));
    }
    {
        double worst = 0.0;
        for (int n = 4; n <= 10; ++n) {
            auto f = [n](double y) {
                return std::pow(y, n - 2) / std::pow(1.0 + y * y, n - 1);
            };
            QuadratureConfig c1 = quad;
            c1.semi_infinite_transform = SemiInfiniteTransform::rational;
            QuadratureConfig c2 = quad;
            c2.semi_infinite_transform = SemiInfiniteTransform::exponential;
            IntegralResult a = integrate_semi_axis(f, c1);
            IntegralResult b = integrate_semi_axis(f, c2);
            double allowance =
                10.0 * std::max(quad.rel_tol * std::abs(a.value), quad.abs_tol);
            worst = std::max(worst, std::abs(a.value - b.value) / allowance);
        }
        add(check_le("semi-infinite-transforms-agree", "plumbing", worst, 1.0));
    }
    {
        double worst = 0.0;
        for (int n = 3; n <= 10; ++n) {
            IntegralResult s = integrate_zonal([](double) { return 1.0; }, n, quad);
            worst = std::max(worst,
                             std::abs(s.value - unit_sphere_measure(n)) /
                                 unit_sphere_measure(n));
        }
        add(check_le("zonal-unit-measure", "total measure of the unit sphere",
                     worst, quad.rel_tol));
    }

    // --- profiles --------------------------------------------------------
    {
        double worst = 0.0;
        for (int n : {3, 4, 5}) {
            Annulus dom(n, rr, RR), tgt(n, rs, Rs);
            for (Orientation o : {Orientation::increasing, Orientation::decreasing}) {
                RadialProfile p = make_boundary_profile(dom, tgt, o);
                double ref = 0.0;
                for (int i = 0; i <= 50; ++i) {
                    double t = rr + (RR - rr) * i / 50.0;
                    double v = std::pow(t, (n - 1.0) / (n - 2.0)) * p.derivative(t) / p(t);
                    if (i == 0)
                        ref = v;
                    else
                        worst = std::max(worst, std::abs(v / ref - 1.0));
                }
            }
        }
        add(check_le("boundary-first-order-condition",
                     "sharp profiles make t^{(n-1)/(n-2)} H'/H constant", worst, 1e-9));
    }
    {
        double worst_eq = 0.0;
        double min_margin = 1e300;
        for (int n : {3, 4, 5}) {
            Annulus dom(n, rr, RR), tgt(n, rs, Rs);
            double bound = holder_radial_bound(dom, tgt);
            RadialProfile sharp = make_boundary_profile(dom, tgt, Orientation::increasing);
            worst_eq = std::max(
                worst_eq, std::abs(holder_radial_integral(sharp, quad) - bound) / bound);

            // competitor: perturbed stationary profile, still admissible
            ELSolution sol = build_radial_minimizer(dom, tgt);
            RadialProfile pert = make_perturbed_profile(sol, cfg.seed + n);
            double err = 0.0;
            double value = holder_radial_integral(pert, quad, &err);
            min_margin = std::min(min_margin, value - bound + err + 1e-10 * bound);
        }
        add(check_le("holder-bound-equality-boundary",
                     "log-derivative integral bound attained by the sharp profiles",
                     worst_eq, 1e-8));
        add(check_gt("holder-bound-dominance",
                     "log-derivative integral bound for admissible profiles",
                     min_margin, 0.0));
    }
    {
        Annulus dom = cfg.domain, tgt = cfg.target;
        RadialProfile inc = make_boundary_profile(dom, tgt, Orientation::increasing);
        RadialProfile dec = make_boundary_profile(dom, tgt, Orientation::decreasing);
        RadialProfile inv = invert_profile(inc, tgt.inner * tgt.outer);
        int mismatches = 0;
        for (const RadialProfile* p : {&inc, &dec, &inv}) {
            double want = p->orientation == Orientation::increasing ? 1.0 : -1.0;
            for (int i = 1; i <= 100; ++i) {
                double t = rr + (RR - rr) * i / 101.0;
                if (p->derivative(t) * want <= 0.0) ++mismatches;
            }
        }
        add(check_le("orientation-sign", "orientation flag matches the derivative sign",
                     mismatches, 0.0));
    }
    {
        Annulus dom = cfg.domain, tgt = cfg.target;
        std::vector<RadialProfile> profiles;
        profiles.push_back(make_boundary_profile(dom, tgt, Orientation::increasing));
        profiles.push_back(make_boundary_profile(dom, tgt, Orientation::decreasing));
        {
            RadialProfile h1 = profiles[0];
            std::vector<double> ts(50), hs(50);
            for (int i = 0; i < 50; ++i) {
                ts[i] = rr + (RR - rr) * i / 49.0;
                hs[i] = h1(ts[i]);
            }
            profiles.push_back(make_tabulated_profile(ts, hs, dom, tgt));
        }
        profiles.push_back(build_radial_minimizer(dom, tgt).profile);

        double worst = 0.0;
        for (const RadialProfile& p : profiles) {
            for (int i = 0; i < 1000; ++i) {
                double t = rng.uniform(rr + 0.01 * (RR - rr), RR - 0.01 * (RR - rr));
                double h = 1e-6 * t;
                double fd = (p(t + h) - p(t - h)) / (2.0 * h);
                worst = std::max(worst, std::abs(fd - p.derivative(t)) /
                                            std::abs(p.derivative(t)));
            }
        }
        add(check_le("profile-derivative-consistency",
                     "reported derivatives match finite differences", worst, 1e-6));
    }

    // --- energy ----------------------------------------------------------
    {
        double worst = 0.0;
        for (int n : {3, 4, 5, 6})
            for (double lam : {0.1, 0.5, 1.0, 2.0, 10.0}) {
                SphereEnergy s = sphere_conformal_energy(lam, n, quad);
                worst = std::max(worst, std::abs(s.value - s.closed_form) / s.closed_form);
            }
        add(check_le("sphere-energy-invariance",
                     "sphere energy of the conformal dilation is lambda-free",
                     worst, 1e-8));
    }
    {
        double worst = 0.0;
        for (int n = 4; n <= 8; ++n) {
            auto f = [n](double y) {
                return std::pow(y, n - 2) / std::pow(1.0 + y * y, n - 1);
            };
            double closed = std::sqrt(kPi) * gamma_lanczos(0.5 * (n - 1)) /
                            (std::pow(2.0, n - 1) * gamma_lanczos(0.5 * n));
            IntegralResult got = integrate_semi_axis(f, quad);
            worst = std::max(worst, std::abs(got.value - closed) / closed);
        }
        add(check_le("beta-integral-closed-form",
                     "rational sphere-measure integral in closed form", worst, 1e-10));
    }
    {
        RadialProfile h1 =
            make_boundary_profile(cfg.domain, cfg.target, Orientation::increasing);
        RadialProfile h2 =
            make_boundary_profile(cfg.domain, cfg.target, Orientation::decreasing);
        ELSolution sol = build_radial_minimizer(cfg.domain, cfg.target);
        double inf = dirichlet_infimum(cfg.domain, cfg.target);

        double min_dominance = 1e300;
        for (const RadialProfile* p : {&h1, &h2, &sol.profile})
            for (double lam : {0.125, 1.0, 8.0}) {
                EnergyReport e = quasiradial_energy({*p, lam}, quad);
                min_dominance =
                    std::min(min_dominance, (e.energy - inf + e.quadrature_error) / inf);
            }
        add(check_gt("lower-bound-dominance",
                     "every separable energy dominates the infimum constant",
                     min_dominance, -1e-10));

        double worst_sym = 0.0;
        for (double lam : {0.125, 0.5, 2.0, 8.0}) {
            EnergyReport a = quasiradial_energy({h1, lam}, quad);
            EnergyReport b = quasiradial_energy({h1, 1.0 / lam}, quad);
            worst_sym = std::max(worst_sym, std::abs(a.energy - b.energy) / a.energy);
        }
        add(check_le("lambda-symmetry", "energy invariance under lambda -> 1/lambda",
                     worst_sym, 1e-8));

        if (cfg.domain.n >= 4) {
            double min_margin = 1e300;
            for (const RadialProfile* p : {&sol.profile, &h1}) {
                EnergyReport radial = radial_energy(*p, quad);
                for (double lam : {0.5, 2.0}) {
                    EnergyReport e = quasiradial_energy({*p, lam}, quad);
                    double budget = e.quadrature_error + radial.quadrature_error;
                    min_margin =
                        std::min(min_margin, (radial.energy - e.energy) / (10.0 * budget));
                }
            }
            add(check_gt("quasiradial-strict-improvement",
                         "strict quasiradial improvement over radial", min_margin, 1.0));
        } else {
            double worst_dev = 0.0;
            EnergyReport radial = radial_energy(sol.profile, quad);
            for (double lam : {0.5, 2.0}) {
                EnergyReport e = quasiradial_energy({sol.profile, lam}, quad);
                worst_dev = std::max(worst_dev,
                                     std::abs(e.energy - radial.energy) / radial.energy);
            }
            add(check_le("quasiradial-strict-improvement",
                         "lambda-free energy in dimension 3", worst_dev, 1e-8));
        }

        {
            double limit = limit_energy(h1, quad);
            double prev_energy = 0.0, prev_err = 0.0;
            double worst_step = -1e300;
            double min_above = 1e300;
            double last_excess = 0.0;
            for (int k = 0; k <= 10; ++k) {
                EnergyReport e = quasiradial_energy({h1, std::pow(2.0, -k)}, quad);
                if (k > 0)
                    worst_step = std::max(worst_step,
                                          (e.energy - prev_energy -
                                           (e.quadrature_error + prev_err)) / limit);
                min_above = std::min(min_above, (e.energy - limit + e.quadrature_error +
                                                 1e-10 * limit) / limit);
                last_excess = (e.energy - limit) / limit;
                prev_energy = e.energy;
                prev_err = e.quadrature_error;
            }
            add(check_le("lambda-monotone-approach",
                         "energies decrease monotonically toward the limit value",
                         worst_step, 0.0));
            add(check_gt("lambda-limit-dominance",
                         "the limit value is never undercut", min_above, 0.0));
            add(check_le("lambda-limit-convergence",
                         "relative excess over the limit at lambda = 2^-10",
                         last_excess, 1e-3));
        }

        {
            double worst = 0.0;
            for (double lam : {1.0, 2.0}) {
                EnergyReport base = quasiradial_energy({h1, lam}, quad);
                EnergyReport flipped = quasiradial_energy(
                    {invert_profile(h1, cfg.target.inner * cfg.target.outer), lam}, quad);
                worst = std::max(worst,
                                 std::abs(base.energy - flipped.energy) / base.energy);
            }
            add(check_le("inversion-invariance",
                         "energy invariance under the target inversion H -> c/H",
                         worst, 1e-8));
        }

        {
            double worst = 0.0;
            for (const RadialProfile* p : {&h1, &h2})
                for (double a : {1.0, 2.0})
                    for (double b : {1.0, 3.0})
                        for (double lam : {0.5, 1.0, 4.0}) {
                            EnergyReport e = combined_energy_separable(a, b, {*p, lam}, quad);
                            worst = std::max(worst,
                                             std::abs(e.energy - e.bound) / e.bound);
                        }
            add(check_le("combined-equality-case",
                         "sharp profiles attain the combined-energy bound", worst, 1e-8));
        }
    }

    // --- stationary radial profile ---------------------------------------
    {
        int violations = 0;
        for (int i = 0; i < 1000; ++i) {
            int n = rng.uniform_int(3, 8);
            double r1 = rng.uniform(0.5, 2.0);
            double r2 = r1 + rng.uniform(0.1, 3.0);
            double tau1 = rng.uniform(1e-3, 10.0);
            double tau2 = tau1 * (1.0 + rng.uniform(0.1, 2.0));
            if (!(psi(r1, r2, tau2, n) > psi(r1, r2, tau1, n))) ++violations;
        }
        add(check_le("psi-monotone-in-tau",
                     "boundary log-ratio strictly increasing in the multiplier",
                     violations, 0.0));
    }
    {
        int violations = 0;
        double worst_roundtrip = 0.0, worst_scale = 0.0;
        for (int i = 0; i < 1000; ++i) {
            int n = rng.uniform_int(3, 8);
            double tau = std::exp(rng.uniform(-3.0, 3.0));
            double t1 = std::exp(rng.uniform(-1.0, 1.5));
            double t2 = t1 * (1.0 + rng.uniform(0.1, 2.0));
            double w1 = solve_w(t1, tau, n), w2 = solve_w(t2, tau, n);
            if (!(w2 < w1)) ++violations;
            worst_roundtrip = std::max(worst_roundtrip,
                                       std::abs(t1 * phi_of_w(w1, n) / tau - 1.0));
            double cc = std::exp(rng.uniform(-2.0, 2.0));
            worst_scale = std::max(worst_scale,
                                   std::abs(solve_w(cc * t1, cc * tau, n) - w1) / w1);
        }
        add(check_le("w-decreasing-in-t", "stationary log-derivative decreases along the radius",
                     violations, 0.0));
        add(check_le("w-defining-roundtrip", "first integral of the stationarity equation",
                     worst_roundtrip, 1e-12));
        add(check_le("w-scale-covariance", "the first integral depends on tau/t only",
                     worst_scale, 1e-12));
    }
    {
        double worst_first_integral = 0.0;
        double worst_residual = 0.0;
        double worst_closed_vs_quad = 0.0;
        for (int n : {3, 4, 5, 6}) {
            Annulus dom(n, rr, RR), tgt(n, rs, Rs);
            ELSolution sol = build_radial_minimizer(dom, tgt);
            for (int i = 1; i <= 100; ++i) {
                double t = rr + (RR - rr) * i / 101.0;
                worst_first_integral =
                    std::max(worst_first_integral,
                             std::abs(t * phi_of_w(sol.w_at(t), n) / sol.tau_star - 1.0));
            }
            worst_residual = std::max(worst_residual, max_scaled_residual(sol, 100));
            EnergyReport quad_energy = radial_energy(sol.profile, quad);
            worst_closed_vs_quad =
                std::max(worst_closed_vs_quad,
                         std::abs(quad_energy.energy - sol.energy_closed_form) /
                             sol.energy_closed_form);
        }
        add(check_le("el-first-integral", "first integral holds along the stationary profile",
                     worst_first_integral, 1e-10));
        add(check_le("el-residual-minimizer", "stationarity residual of the built profile",
                     worst_residual, 1e-8));
        add(check_le("closed-form-vs-quadrature",
                     "closed-form radial minimum agrees with quadrature",
                     worst_closed_vs_quad, 1e-8));
    }
    {
        ELSolution sol = build_radial_minimizer(cfg.domain, cfg.target);
        double min_margin = 1e300;
        for (int k = 0; k < 20; ++k) {
            RadialProfile pert = make_perturbed_profile(sol, cfg.seed + 1000 + k);
            EnergyReport e = radial_energy(pert, quad);
            double budget = e.quadrature_error + 1e-9 * sol.energy_closed_form;
            min_margin =
                std::min(min_margin, (e.energy - sol.energy_closed_form) / budget);
        }
        add(check_gt("radial-minimizer-optimality",
                     "monotone perturbations strictly increase the radial energy",
                     min_margin, 1.0));
    }
    {
        Annulus dom3(3, rr, RR), tgt3(3, rs, Rs);
        ELSolution sol = build_radial_minimizer(dom3, tgt3);
        RadialProfile h1 = make_boundary_profile(dom3, tgt3, Orientation::increasing);
        double sup = 0.0;
        for (int i = 0; i <= 200; ++i) {
            double t = rr + (RR - rr) * i / 200.0;
            sup = std::max(sup, std::abs(sol.profile(t) - h1(t)));
        }
        add(check_le("n3-coincidence-profile",
                     "dimension-3 stationary profile equals the sharp profile",
                     sup, 1e-9));
        double inf = dirichlet_infimum(dom3, tgt3);
        add(check_le("n3-coincidence-energy",
                     "dimension-3 radial minimum equals the infimum",
                     std::abs(sol.energy_closed_form - inf) / inf, 1e-9));
    }

    // --- theorem-level reports --------------------------------------------
    for (CheckResult c : gap_report(cfg.domain, cfg.target, quad).checks) add(std::move(c));
    add(check_power_mean_inequality(10000, cfg.seed));

    {
        RadialProfile h1 =
            make_boundary_profile(cfg.domain, cfg.target, Orientation::increasing);
        std::string a = sweep_csv(sweep_lambda(h1, {1.0, 2.0}, quad));
        std::string b = sweep_csv(sweep_lambda(h1, {1.0, 2.0}, quad));
        add(check_le("suite-determinism", "plumbing", a == b ? 0.0 : 1.0, 0.0));
    }

    return report;
}

std::string suite_table(const SuiteReport& report) {
    std::ostringstream out;
    char line[256];
    for (const CheckResult& c : report.checks) {
        std::snprintf(line, sizeof(line), "%-34s %s  measured=%-13.6g threshold=%-13.6g %s\n",
                      c.name.c_str(), c.pass ? "PASS" : "FAIL", c.measured, c.threshold,
                      c.anchor.c_str());
        out << line;
    }
    int failed = 0;
    for (const CheckResult& c : report.checks)
        if (!c.pass) ++failed;
    out << report.checks.size() << " checks, " << failed << " failed\n";
    return out.str();
}

nlohmann::json suite_json(const SuiteReport& report) {
    nlohmann::json checks = nlohmann::json::array();
    for (const CheckResult& c : report.checks)
        checks.push_back({{"name", c.name},
                          {"anchor", c.anchor},
                          {"pass", c.pass},
                          {"measured", c.measured},
                          {"threshold", c.threshold}});
    return nlohmann::json{
        {"config",
         {{"n", report.config.domain.n},
          {"r", report.config.domain.inner},
          {"R", report.config.domain.outer},
          {"r_star", report.config.target.inner},
          {"R_star", report.config.target.outer},
          {"rel_tol", report.config.quad.rel_tol},
          {"abs_tol", report.config.quad.abs_tol},
          {"seed", report.config.seed},
          {"inject_fault", report.config.inject_fault}}},
        {"checks", checks},
        {"all_pass", report.all_pass()}};
}

std::string sweep_csv(const SweepTable& table) {
    std::string out = "lambda,energy,limit_energy,bound,relative_excess\n";
    for (const SweepRow& row : table.rows) {
        out += fmt17(row.lambda) + "," + fmt17(row.energy) + "," + fmt17(row.limit_energy) +
               "," + fmt17(row.bound) + "," + fmt17(row.relative_excess) + "\n";
    }
    return out;
}

}  // namespace annuli
